//! Adaptive Simpson quadrature, semi-infinite transforms and Cauchy
//! principal values.

use num_complex::Complex64;

use super::NumericsError;

const MAX_DEPTH: u32 = 60;

struct Budget {
    evals_left: i64,
}

fn simpson(fa: Complex64, fm: Complex64, fb: Complex64, h: f64) -> Complex64 {
    (fa + 4.0 * fm + fb) * (h / 6.0)
}

#[allow(clippy::too_many_arguments)]
fn adapt<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    fa: Complex64,
    fm: Complex64,
    fb: Complex64,
    whole: Complex64,
    tol: f64,
    depth: u32,
    budget: &mut Budget,
) -> Result<Complex64, f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    budget.evals_left -= 2;
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let delta = left + right - whole;
    if delta.norm() <= 15.0 * tol || (b - a) < 1e-15 * (a.abs() + b.abs() + 1.0) {
        return Ok(left + right + delta / 15.0);
    }
    if depth >= MAX_DEPTH || budget.evals_left <= 0 {
        return Err(delta.norm() / 15.0);
    }
    let hl = adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, budget);
    let hr = adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, budget);
    match (hl, hr) {
        (Ok(x), Ok(y)) => Ok(x + y),
        (Ok(_), Err(e)) | (Err(e), Ok(_)) => Err(e),
        (Err(e1), Err(e2)) => Err(e1 + e2),
    }
}

/// Adaptive Simpson integral of a complex-valued integrand over [a, b]
/// with absolute error tolerance `tol`.
pub fn adaptive_quadrature_complex<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<Complex64, NumericsError> {
    if !(tol > 0.0) {
        return Err(NumericsError::Domain("quadrature tolerance must be positive"));
    }
    if a == b {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut budget = Budget { evals_left: 4_000_000 };
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(fa, fm, fb, b - a);
    adapt(&f, a, b, fa, fm, fb, whole, tol, 0, &mut budget)
        .map_err(|err_estimate| NumericsError::QuadratureNonConvergence {
            best: whole,
            err_estimate,
        })
}

/// Real-valued convenience wrapper around [`adaptive_quadrature_complex`].
pub fn adaptive_quadrature<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64, NumericsError> {
    adaptive_quadrature_complex(|x| Complex64::new(f(x), 0.0), a, b, tol).map(|v| v.re)
}

/// Integral over [a, +inf) via the substitution x = a + t/(1-t).
///
/// The integrand must decay at least algebraically faster than 1/x^2.
pub fn integrate_to_infinity<F: Fn(f64) -> Complex64>(f: F, a: f64, tol: f64) -> Result<Complex64, NumericsError> {
    let g = move |t: f64| {
        if t >= 1.0 {
            return Complex64::new(0.0, 0.0);
        }
        let om = 1.0 - t;
        let v = f(a + t / om) / (om * om);
        if v.re.is_finite() && v.im.is_finite() {
            v
        } else {
            Complex64::new(0.0, 0.0)
        }
    };
    adaptive_quadrature_complex(g, 0.0, 1.0, tol)
}

/// Cauchy principal value of ∫_a^b f(x) dx where f has a simple pole at
/// c, by symmetric excision around the pole plus the smooth remainder.
pub fn principal_value_quadrature<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    c: f64,
    tol: f64,
) -> Result<f64, NumericsError> {
    if !(a < c && c < b) {
        return Err(NumericsError::Domain("principal-value singularity must lie strictly inside (a, b)"));
    }
    let h = (c - a).min(b - c);
    // f(c+u) + f(c-u) is finite for a simple pole, but evaluating f
    // at distance u from the pole loses ~eps/u^2 to cancellation, so
    // stop at u_min and close the gap with an extrapolated trapezoid.
    let u_min = h * 1e-4;
    let s = |u: f64| f(c + u) + f(c - u);
    let sym = adaptive_quadrature(s, u_min, h, tol)?;
    let gap = u_min * (3.0 * s(u_min) - s(2.0 * u_min)) / 2.0;
    let sym = sym + gap;
    let rest = if c - a <= b - c {
        adaptive_quadrature(&f, c + h, b, tol)?
    } else {
        adaptive_quadrature(&f, a, c - h, tol)?
    };
    Ok(sym + rest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use core::f64::consts::PI;

    #[test]
    fn polynomial_exact_third() {
        let v = adaptive_quadrature(|x| x * x, 0.0, 1.0, 1e-12).unwrap();
        assert_relative_eq!(v, 1.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn exponential_tail() {
        let v = integrate_to_infinity(|x| Complex64::new((-x).exp(), 0.0), 0.0, 1e-12).unwrap();
        assert_relative_eq!(v.re, 1.0, epsilon = 1e-10);
        assert_relative_eq!(v.im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn lorentzian_threshold_deficit() {
        // ∫_0^∞ (Γ/2π)/((E-E0)^2 + Γ^2/4) dE with E0 = 1, Γ = 0.05.
        // Closed form: (1/π)(π/2 + atan(2 E0/Γ)).
        let e0 = 1.0;
        let g = 0.05;
        let v = integrate_to_infinity(
            |e| Complex64::new((g / (2.0 * PI)) / ((e - e0).powi(2) + g * g / 4.0), 0.0),
            0.0,
            1e-11,
        )
        .unwrap();
        let want = (PI / 2.0 + (2.0 * e0 / g).atan()) / PI;
        assert_relative_eq!(v.re, want, epsilon = 1e-9);
        assert!((1.0 - v.re) > 0.0, "threshold deficit must be positive");
    }

    #[test]
    fn pv_odd_symmetry() {
        let v = principal_value_quadrature(|x| 1.0 / x, -1.0, 1.0, 0.0, 1e-11).unwrap();
        assert!(v.abs() < 1e-10, "PV ∫ dx/x over symmetric interval = 0, got {v}");
    }

    #[test]
    fn pv_symmetric_about_pole() {
        let v = principal_value_quadrature(|x| 1.0 / (x - 1.0), 0.0, 2.0, 1.0, 1e-11).unwrap();
        assert!(v.abs() < 1e-10);
    }

    #[test]
    fn pv_with_polynomial_part() {
        // x/(x-1) = 1 + 1/(x-1) so PV over [0,2] is 2
        let v = principal_value_quadrature(|x| x / (x - 1.0), 0.0, 2.0, 1.0, 1e-11).unwrap();
        assert_relative_eq!(v, 2.0, epsilon = 1e-9);
    }

    #[test]
    fn pole_outside_rejected() {
        assert!(principal_value_quadrature(|x| 1.0 / x, 1.0, 2.0, 0.5, 1e-10).is_err());
    }

    #[test]
    fn conservative_error_estimates() {
        // measured error <= requested tolerance on closed-form integrals
        let cases: [(fn(f64) -> f64, f64, f64, f64); 3] = [
            (|x| x.sin(), 0.0, PI, 2.0),
            (|x| (5.0 * x).cos(), 0.0, 1.0, (5.0f64).sin() / 5.0),
            (|x| x.exp(), 0.0, 1.0, core::f64::consts::E - 1.0),
        ];
        for (f, a, b, want) in cases {
            for &tol in &[1e-6, 1e-9, 1e-12] {
                let v = adaptive_quadrature(f, a, b, tol).unwrap();
                assert!((v - want).abs() <= tol, "err {:e} > tol {tol:e}", (v - want).abs());
            }
        }
    }
}
