//! Shared numerical kernels: spherical Bessel/Hankel functions,
//! adaptive and principal-value quadrature, damped complex Newton,
//! argument-principle zero counting and nonlinear least squares.

mod bessel;
mod lsq;
mod quad;
mod roots;
mod winding;

pub use bessel::{ric_h_out, ric_h_out_deriv, ric_j, ric_j_deriv, ric_y, ric_y_deriv, spherical_hankel_out};
pub use lsq::{least_squares_fit, FitResult};
pub use quad::{adaptive_quadrature, adaptive_quadrature_complex, integrate_to_infinity, principal_value_quadrature};
pub use roots::{newton_complex, RootResult};
pub use winding::count_zeros;

use core::fmt;
use num_complex::Complex64;

/// Default absolute tolerance on |f| for root finding.
pub const ROOT_TOL: f64 = 1e-12;
/// Default absolute tolerance for quadrature.
pub const QUAD_TOL: f64 = 1e-10;

/// Rectangular search window in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexRegion {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl ComplexRegion {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self, NumericsError> {
        if !(re_min < re_max && im_min < im_max)
            || !(re_min.is_finite() && re_max.is_finite() && im_min.is_finite() && im_max.is_finite())
        {
            return Err(NumericsError::Domain("ComplexRegion bounds must be finite with min < max"));
        }
        Ok(Self { re_min, re_max, im_min, im_max })
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.re > self.re_min && z.re < self.re_max && z.im > self.im_min && z.im < self.im_max
    }

    /// Corners in counter-clockwise order starting at the lower left.
    pub fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.re_min, self.im_min),
            Complex64::new(self.re_max, self.im_min),
            Complex64::new(self.re_max, self.im_max),
            Complex64::new(self.re_min, self.im_max),
        ]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum NumericsError {
    /// Input outside the operation's domain.
    Domain(&'static str),
    /// Quadrature failed to reach the requested tolerance; carries the
    /// best estimate and the error estimate actually achieved.
    QuadratureNonConvergence { best: Complex64, err_estimate: f64 },
    /// Newton iteration diverged or stalled.
    RootNonConvergence { last: Complex64, residual: f64, iterations: usize },
    /// Winding integral too far from an integer to certify a count.
    WindingAmbiguous { winding: f64 },
    /// |f| on the region boundary came within tolerance of zero;
    /// the region must be enlarged or shifted.
    BoundaryNearZero { min_modulus: f64 },
    /// Normal equations singular (degenerate model or parameters).
    SingularNormalEquations,
    /// Least-squares iteration did not converge; carries the best point.
    FitNonConvergence { rms_residual: f64, iterations: usize },
}

impl fmt::Display for NumericsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumericsError::Domain(msg) => write!(f, "domain error: {msg}"),
            NumericsError::QuadratureNonConvergence { best, err_estimate } => {
                write!(f, "quadrature did not converge (best {best}, err ~{err_estimate:e})")
            }
            NumericsError::RootNonConvergence { last, residual, iterations } => {
                write!(f, "root search did not converge after {iterations} iterations (last {last}, |f| = {residual:e})")
            }
            NumericsError::WindingAmbiguous { winding } => {
                write!(f, "winding number {winding} too far from an integer")
            }
            NumericsError::BoundaryNearZero { min_modulus } => {
                write!(f, "|f| reached {min_modulus:e} on the region boundary; enlarge the region")
            }
            NumericsError::SingularNormalEquations => write!(f, "singular normal equations"),
            NumericsError::FitNonConvergence { rms_residual, iterations } => {
                write!(f, "fit did not converge after {iterations} iterations (rms {rms_residual:e})")
            }
        }
    }
}

impl core::error::Error for NumericsError {}
