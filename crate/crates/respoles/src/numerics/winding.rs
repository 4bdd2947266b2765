//! Argument-principle zero counting on rectangular regions.

use num_complex::Complex64;

use super::{ComplexRegion, NumericsError};
// Needed for float math without `std` in the crate graph; when a
// dependent crate links `std`, the inherent methods shadow these.
#[allow(unused_imports)]
use num_traits::Float;

const INIT_SAMPLES_PER_EDGE: usize = 16;
const MAX_DEPTH: u32 = 44;
// accept a segment once the phase change is unambiguous
const MAX_PHASE_STEP: f64 = core::f64::consts::FRAC_PI_2;

fn phase_change<F: Fn(Complex64) -> Complex64>(
    f: &F,
    z1: Complex64,
    f1: Complex64,
    z2: Complex64,
    f2: Complex64,
    depth: u32,
) -> Result<f64, NumericsError> {
    if f1.norm() < 1e-280 || f2.norm() < 1e-280 {
        return Err(NumericsError::BoundaryNearZero { min_modulus: f1.norm().min(f2.norm()) });
    }
    let dphi = (f2 / f1).arg();
    if dphi.abs() <= MAX_PHASE_STEP {
        return Ok(dphi);
    }
    if depth >= MAX_DEPTH {
        return Err(NumericsError::BoundaryNearZero { min_modulus: f1.norm().min(f2.norm()) });
    }
    let zm = 0.5 * (z1 + z2);
    let fm = f(zm);
    Ok(phase_change(f, z1, f1, zm, fm, depth + 1)? + phase_change(f, zm, fm, z2, f2, depth + 1)?)
}

/// Number of zeros (with multiplicity) of an analytic map inside a
/// rectangular region, certified by the winding number of f along the
/// boundary. The boundary phase integral is accumulated over adaptively
/// refined samples and must land within 0.1 of an integer.
pub fn count_zeros<F: Fn(Complex64) -> Complex64>(f: F, region: &ComplexRegion) -> Result<u32, NumericsError> {
    let corners = region.corners();
    let mut total = 0.0;
    for e in 0..4 {
        let a = corners[e];
        let b = corners[(e + 1) % 4];
        let mut prev_z = a;
        let mut prev_f = f(a);
        for i in 1..=INIT_SAMPLES_PER_EDGE {
            let t = i as f64 / INIT_SAMPLES_PER_EDGE as f64;
            let z = a + t * (b - a);
            let fz = f(z);
            total += phase_change(&f, prev_z, prev_f, z, fz, 0)?;
            prev_z = z;
            prev_f = fz;
        }
    }
    let winding = total / (2.0 * core::f64::consts::PI);
    let rounded = winding.round();
    if (winding - rounded).abs() > 0.1 {
        return Err(NumericsError::WindingAmbiguous { winding });
    }
    if rounded < -0.5 {
        return Err(NumericsError::WindingAmbiguous { winding });
    }
    Ok(rounded as u32)
}
