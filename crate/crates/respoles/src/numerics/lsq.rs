//! Damped Gauss-Newton (Levenberg-Marquardt) nonlinear least squares
//! for small dense problems.

use alloc::vec;
use alloc::vec::Vec;

use super::NumericsError;
// Needed for float math without `std` in the crate graph; when a
// dependent crate links `std`, the inherent methods shadow these.
#[allow(unused_imports)]
use num_traits::Float;

const MAX_ITER: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub params: Vec<f64>,
    /// (J^T J)^-1 scaled by the residual variance.
    pub covariance: Vec<Vec<f64>>,
    pub rms_residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Solve A x = b in place by Gaussian elimination with partial pivoting.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Result<Vec<f64>, NumericsError> {
    let n = b.len();
    for col in 0..n {
        let mut piv = col;
        for r in col + 1..n {
            if a[r][col].abs() > a[piv][col].abs() {
                piv = r;
            }
        }
        if a[piv][col].abs() < 1e-300 {
            return Err(NumericsError::SingularNormalEquations);
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let factor = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= factor * a[col][c];
            }
            b[r] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for c in row + 1..n {
            s -= a[row][c] * x[c];
        }
        x[row] = s / a[row][row];
    }
    Ok(x)
}

fn invert(a: &[Vec<f64>]) -> Result<Vec<Vec<f64>>, NumericsError> {
    let n = a.len();
    let mut inv = vec![vec![0.0; n]; n];
    for col in 0..n {
        let mut e = vec![0.0; n];
        e[col] = 1.0;
        let x = solve(a.to_vec(), e)?;
        for row in 0..n {
            inv[row][col] = x[row];
        }
    }
    Ok(inv)
}

fn sum_sq<M: Fn(f64, &[f64]) -> f64>(model: &M, xs: &[f64], ys: &[f64], p: &[f64]) -> f64 {
    xs.iter().zip(ys).map(|(&x, &y)| (y - model(x, p)).powi(2)).sum()
}

fn jacobian<M: Fn(f64, &[f64]) -> f64>(model: &M, xs: &[f64], p: &[f64]) -> Vec<Vec<f64>> {
    let n = p.len();
    let mut j = vec![vec![0.0; n]; xs.len()];
    let mut pw = p.to_vec();
    for c in 0..n {
        let h = 1e-7 * p[c].abs().max(1.0);
        pw[c] = p[c] + h;
        let up: Vec<f64> = xs.iter().map(|&x| model(x, &pw)).collect();
        pw[c] = p[c] - h;
        let dn: Vec<f64> = xs.iter().map(|&x| model(x, &pw)).collect();
        pw[c] = p[c];
        for (r, row) in j.iter_mut().enumerate() {
            row[c] = (up[r] - dn[r]) / (2.0 * h);
        }
    }
    j
}

/// Local least-squares minimizer of sum_i (y_i - model(x_i, p))^2
/// starting from `p0`, by Levenberg-Marquardt with a numerical
/// Jacobian. The residual at the solution never exceeds the residual
/// at `p0`.
pub fn least_squares_fit<M: Fn(f64, &[f64]) -> f64>(
    model: M,
    xs: &[f64],
    ys: &[f64],
    p0: &[f64],
) -> Result<FitResult, NumericsError> {
    let m = xs.len();
    let n = p0.len();
    if m != ys.len() {
        return Err(NumericsError::Domain("x and y sample counts differ"));
    }
    if m <= n {
        return Err(NumericsError::Domain("need more samples than parameters"));
    }
    let mut p = p0.to_vec();
    let mut cost = sum_sq(&model, xs, ys, &p);
    let mut lambda = 1e-3;
    let mut converged = false;
    let mut iterations = 0;
    for it in 0..MAX_ITER {
        iterations = it + 1;
        let j = jacobian(&model, xs, &p);
        // normal equations J^T J + lambda diag(J^T J)
        let mut jtj = vec![vec![0.0; n]; n];
        let mut jtr = vec![0.0; n];
        for i in 0..m {
            let ri = ys[i] - model(xs[i], &p);
            for a in 0..n {
                jtr[a] += j[i][a] * ri;
                for b in 0..n {
                    jtj[a][b] += j[i][a] * j[i][b];
                }
            }
        }
        let mut accepted = false;
        for _ in 0..30 {
            let mut lhs = jtj.clone();
            for a in 0..n {
                lhs[a][a] += lambda * jtj[a][a].max(1e-12);
            }
            let step = solve(lhs, jtr.clone())?;
            let trial: Vec<f64> = p.iter().zip(&step).map(|(&pi, &si)| pi + si).collect();
            let trial_cost = sum_sq(&model, xs, ys, &trial);
            if trial_cost <= cost {
                let step_norm: f64 = step.iter().map(|s| s * s).sum::<f64>().sqrt();
                let improvement = cost - trial_cost;
                p = trial;
                cost = trial_cost;
                lambda = (lambda * 0.3).max(1e-14);
                accepted = true;
                if improvement <= 1e-15 * (cost + 1e-30) || step_norm < 1e-13 {
                    converged = true;
                }
                break;
            }
            lambda *= 10.0;
            if lambda > 1e12 {
                break;
            }
        }
        if !accepted {
            // cannot improve further from here: treat as converged if
            // the gradient is already tiny, otherwise report failure
            let grad_norm: f64 = jtr.iter().map(|g| g * g).sum::<f64>().sqrt();
            if grad_norm < 1e-8 * (1.0 + cost) {
                converged = true;
            }
            break;
        }
        if converged {
            break;
        }
    }
    let rms = (cost / m as f64).sqrt();
    if !converged {
        return Err(NumericsError::FitNonConvergence { rms_residual: rms, iterations });
    }
    let j = jacobian(&model, xs, &p);
    let mut jtj = vec![vec![0.0; n]; n];
    for row in &j {
        for a in 0..n {
            for b in 0..n {
                jtj[a][b] += row[a] * row[b];
            }
        }
    }
    let sigma2 = cost / (m - n) as f64;
    let covariance = invert(&jtj)?
        .into_iter()
        .map(|row| row.into_iter().map(|v| v * sigma2).collect())
        .collect();
    Ok(FitResult { params: p, covariance, rms_residual: rms, iterations, converged })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn self_fit_recovers_generating_parameters() {
        let model = |x: f64, p: &[f64]| p[0] * (-p[1] * x).exp() + p[2];
        let truth = [2.0, 0.7, 0.3];
        let xs: Vec<f64> = (0..40).map(|i| i as f64 * 0.1).collect();
        let ys: Vec<f64> = xs.iter().map(|&x| model(x, &truth)).collect();
        let fit = least_squares_fit(model, &xs, &ys, &[1.5, 1.0, 0.0]).unwrap();
        for (got, want) in fit.params.iter().zip(&truth) {
            assert!((got - want).abs() < 1e-9, "got {got}, want {want}");
        }
        assert!(fit.converged);
    }

    #[test]
    fn constant_model_exact() {
        let model = |_x: f64, p: &[f64]| p[0];
        let xs = [0.0, 1.0, 2.0, 3.0];
        let ys = [5.0, 5.0, 5.0, 5.0];
        let fit = least_squares_fit(model, &xs, &ys, &[0.0]).unwrap();
        assert!((fit.params[0] - 5.0).abs() < 1e-12);
        assert!(fit.rms_residual < 1e-12);
    }

    #[test]
    fn residual_never_worse_than_start() {
        let model = |x: f64, p: &[f64]| p[0] * x + p[1];
        let xs: Vec<f64> = (0..20).map(|i| i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|&x| 3.0 * x - 1.0 + (x * 12.9898).sin() * 0.1).collect();
        let p0 = [0.0, 0.0];
        let start = sum_sq(&model, &xs, &ys, &p0);
        let fit = least_squares_fit(model, &xs, &ys, &p0).unwrap();
        assert!(fit.rms_residual.powi(2) * xs.len() as f64 <= start);
    }

    #[test]
    fn underdetermined_rejected() {
        let model = |x: f64, p: &[f64]| p[0] * x + p[1] + p[2];
        assert!(least_squares_fit(model, &[1.0, 2.0], &[1.0, 2.0], &[0.0, 0.0, 0.0]).is_err());
    }
}
