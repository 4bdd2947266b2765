//! Riccati-Bessel and spherical Hankel functions of complex argument.
//!
//! Conventions: `ric_j(l, z) = z j_l(z)`, `ric_y(l, z) = -z y_l(z)` and
//! `ric_h_out(l, z) = z h_l^(1)(z) = ric_j - i ric_y`, so that at l = 0
//! the three are `sin z`, `cos z` and `-i e^{iz}`.

use alloc::vec;
use num_complex::Complex64;

use super::NumericsError;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn check_arg(z: Complex64) -> Result<(), NumericsError> {
    if z.norm() < 1e-300 {
        return Err(NumericsError::Domain("Bessel argument must be nonzero"));
    }
    Ok(())
}

/// z j_l(z) by power series, accurate for |z| up to order-of-l.
fn ric_j_series(l: u32, z: Complex64) -> Complex64 {
    // j_l(z) = z^l sum_k (-z^2/2)^k / (k! (2l+2k+1)!!)
    let mut dfact = 1.0;
    for n in 0..=l {
        dfact *= (2 * n + 1) as f64;
    }
    let mut term = z.powu(l) / dfact;
    let mut sum = term;
    let z2h = -z * z * 0.5;
    for k in 0..200u32 {
        term = term * z2h / ((k + 1) as f64 * (2 * l + 2 * k + 3) as f64);
        sum += term;
        if term.norm() < 1e-17 * sum.norm() + 1e-300 {
            break;
        }
    }
    z * sum
}

fn ric_j_seq(l_max: u32, z: Complex64) -> alloc::vec::Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); (l_max + 2) as usize];
    // index shifted by one: out[0] holds l = -1
    if z.norm() < (l_max as f64) + 2.0 {
        out[0] = z.cos();
        for l in 0..=l_max {
            out[(l + 1) as usize] = ric_j_series(l, z);
        }
    } else {
        // upward recurrence, stable here since |z| exceeds the order
        out[0] = z.cos();
        out[1] = z.sin();
        for l in 1..=l_max {
            let idx = (l + 1) as usize;
            out[idx] = (2.0 * l as f64 - 1.0) / z * out[idx - 1] - out[idx - 2];
        }
    }
    out
}

fn ric_y_seq(l_max: u32, z: Complex64) -> alloc::vec::Vec<Complex64> {
    // ric_y grows with l, so upward recurrence is stable everywhere
    let mut out = vec![Complex64::new(0.0, 0.0); (l_max + 2) as usize];
    out[0] = -z.sin(); // l = -1
    out[1] = z.cos();
    for l in 1..=l_max {
        let idx = (l + 1) as usize;
        out[idx] = (2.0 * l as f64 - 1.0) / z * out[idx - 1] - out[idx - 2];
    }
    out
}

/// Riccati-Bessel function of the first kind, z j_l(z).
pub fn ric_j(l: u32, z: Complex64) -> Complex64 {
    ric_j_seq(l, z)[(l + 1) as usize]
}

/// d/dz of `ric_j`.
pub fn ric_j_deriv(l: u32, z: Complex64) -> Complex64 {
    let seq = ric_j_seq(l, z);
    seq[l as usize] - (l as f64) / z * seq[(l + 1) as usize]
}

/// Riccati-Bessel function of the second kind, -z y_l(z).
pub fn ric_y(l: u32, z: Complex64) -> Complex64 {
    ric_y_seq(l, z)[(l + 1) as usize]
}

/// d/dz of `ric_y`.
pub fn ric_y_deriv(l: u32, z: Complex64) -> Complex64 {
    let seq = ric_y_seq(l, z);
    seq[l as usize] - (l as f64) / z * seq[(l + 1) as usize]
}

/// Outgoing Riccati-Hankel function, z h_l^(1)(z).
pub fn ric_h_out(l: u32, z: Complex64) -> Complex64 {
    // -i e^{iz} at l = 0; recurrence seeds from the closed forms,
    // always stable (dominant solution).
    let mut fm = (I * z).exp(); // l = -1
    let mut f = -I * fm; // l = 0
    for n in 1..=l {
        let next = (2.0 * n as f64 - 1.0) / z * f - fm;
        fm = f;
        f = next;
    }
    f
}

/// d/dz of `ric_h_out`.
pub fn ric_h_out_deriv(l: u32, z: Complex64) -> Complex64 {
    let below = if l == 0 { (I * z).exp() } else { ric_h_out(l - 1, z) };
    below - (l as f64) / z * ric_h_out(l, z)
}

/// Outgoing spherical Hankel function h_l^(1)(z).
pub fn spherical_hankel_out(l: u32, z: Complex64) -> Result<Complex64, NumericsError> {
    check_arg(z)?;
    Ok(ric_h_out(l, z) / z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn h0_closed_form_real_axis() {
        for &x in &[0.3, 1.0, 2.7, 9.4] {
            let z = c(x, 0.0);
            let got = spherical_hankel_out(0, z).unwrap();
            let want = -I * (I * z).exp() / z;
            assert_relative_eq!(got.re, want.re, max_relative = 1e-14);
            assert_relative_eq!(got.im, want.im, max_relative = 1e-14);
        }
    }

    #[test]
    fn h1_matches_series_oracle_at_i() {
        // independent oracle: h_1 = j_1 + i y_1 with j_1, y_1 from
        // closed trigonometric forms
        let z = c(0.0, 1.0);
        let j1 = z.sin() / (z * z) - z.cos() / z;
        let y1 = -z.cos() / (z * z) - z.sin() / z;
        let want = j1 + I * y1;
        let got = spherical_hankel_out(1, z).unwrap();
        assert!((got - want).norm() < 1e-12, "got {got}, want {want}");
    }

    #[test]
    fn wronskian_identity_l2() {
        // W{ric_j, ric_y} = ric_j ric_y' - ric_j' ric_y = -1
        let z = c(3.0, 0.5);
        for l in 0..=4u32 {
            let w = ric_j(l, z) * ric_y_deriv(l, z) - ric_j_deriv(l, z) * ric_y(l, z);
            assert!((w - c(-1.0, 0.0)).norm() < 1e-10, "l={l}: W = {w}");
        }
    }

    #[test]
    fn hankel_recurrence_consistency() {
        let z = c(1.3, -0.4);
        for l in 1..5u32 {
            let lhs = ric_h_out(l + 1, z) + ric_h_out(l - 1, z);
            let rhs = (2.0 * l as f64 + 1.0) / z * ric_h_out(l, z);
            assert!((lhs - rhs).norm() < 1e-10 * rhs.norm());
        }
    }

    #[test]
    fn series_and_recurrence_join_smoothly() {
        // evaluate ric_j just below and above the switch radius
        for l in 0..=4u32 {
            let z_lo = c(l as f64 + 1.9, 0.3);
            let z_hi = c(l as f64 + 2.1, 0.3);
            // relation ric_j(l-1) + ric_j(l+1) = (2l+1)/z ric_j(l)
            for &z in &[z_lo, z_hi] {
                if l == 0 {
                    continue;
                }
                let lhs = ric_j(l - 1, z) + ric_j(l + 1, z);
                let rhs = (2.0 * l as f64 + 1.0) / z * ric_j(l, z);
                assert!((lhs - rhs).norm() < 1e-11 * (1.0 + rhs.norm()));
            }
        }
    }

    #[test]
    fn zero_argument_rejected() {
        assert!(spherical_hankel_out(0, c(0.0, 0.0)).is_err());
    }
}
