//! Numerical toolkit for unstable quantum states.
//!
//! Three descriptions of the same physics live here, tied together by
//! complex pole data:
//!
//! * [`radial`] / [`poles`] / [`resonance`] — potential scattering:
//!   partial-wave S-matrices for piecewise-constant potentials, pole
//!   location in the complex momentum plane, Breit-Wigner line shapes.
//! * [`veltman`] — a toy field theory with an unstable scalar: one-loop
//!   self-energy, Dyson resummation, the dressed propagator's complex
//!   pole, and Ward-identity checks for vector propagators.
//! * [`gamow`] — complex-mass algebra, semigroup time evolution and the
//!   quadrature survival amplitude of a truncated Lorentzian density.
//!
//! The crate is `no_std` (with `alloc`); IO and the CLI live in the
//! companion `respoles-cli` crate. Internal units are `hbar = 1`,
//! `2m = 1`, so `E = k^2`.
#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod gamow;
pub mod numerics;
pub mod poles;
pub mod radial;
pub mod resonance;
pub mod veltman;
