//! Breit-Wigner line shapes: evaluation, fitting of sampled cross
//! sections, and a report on how far a true resonance's line shape
//! deviates from the ideal Lorentzian away from the peak.

use alloc::vec::Vec;
use core::fmt;

use crate::numerics::{least_squares_fit, NumericsError};
// Needed for float math without `std` in the crate graph; when a
// dependent crate links `std`, the inherent methods shadow these.
#[allow(unused_imports)]
use num_traits::Float;

/// Dimensionless Breit-Wigner line shape, normalized to 1 at the peak:
/// (Gamma/2)^2 / ((E - E0)^2 + (Gamma/2)^2).
pub fn bw_value(e: f64, e0: f64, gamma: f64) -> f64 {
    let half = 0.5 * gamma;
    half * half / ((e - e0) * (e - e0) + half * half)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BreitWignerFit {
    pub e0: f64,
    pub gamma: f64,
    pub amplitude: f64,
    /// Linear background coefficients (b0 + b1 * E).
    pub background: [f64; 2],
    pub e0_stderr: f64,
    pub gamma_stderr: f64,
    pub rms_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ResonanceError {
    /// Fewer than the minimum number of samples, or mismatched arrays.
    BadInput(&'static str),
    /// The sampled maximum is at an endpoint: no interior peak to fit.
    NoInteriorPeak,
    Numerics(NumericsError),
}

impl fmt::Display for ResonanceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResonanceError::BadInput(m) => write!(f, "bad fit input: {m}"),
            ResonanceError::NoInteriorPeak => write!(f, "sampled maximum lies at an endpoint; no interior peak"),
            ResonanceError::Numerics(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ResonanceError {}

impl From<NumericsError> for ResonanceError {
    fn from(e: NumericsError) -> Self {
        ResonanceError::Numerics(e)
    }
}

/// Fit A * BW(E; E0, Gamma) + b0 + b1 E to sampled data.
///
/// Initial guesses come from the sample maximum and its full width at
/// half maximum; the linear background starts at zero.
pub fn fit_breit_wigner(energies: &[f64], values: &[f64]) -> Result<BreitWignerFit, ResonanceError> {
    if energies.len() != values.len() {
        return Err(ResonanceError::BadInput("energy and value arrays differ in length"));
    }
    if energies.len() < 8 {
        return Err(ResonanceError::BadInput("need at least 8 samples"));
    }
    if energies.windows(2).any(|w| w[1] <= w[0]) {
        return Err(ResonanceError::BadInput("energies must be strictly increasing"));
    }
    let (i_max, &v_max) = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .unwrap();
    if i_max == 0 || i_max == values.len() - 1 {
        return Err(ResonanceError::NoInteriorPeak);
    }
    let e_peak = energies[i_max];
    // FWHM estimate: first half-maximum crossings on either side
    let half = 0.5 * v_max;
    let left = (0..i_max)
        .rev()
        .find(|&i| values[i] <= half)
        .map(|i| energies[i])
        .unwrap_or(energies[0]);
    let right = (i_max..values.len())
        .find(|&i| values[i] <= half)
        .map(|i| energies[i])
        .unwrap_or(*energies.last().unwrap());
    let width = (right - left).max(energies[1] - energies[0]);

    let model = |e: f64, p: &[f64]| p[2] * bw_value(e, p[0], p[1].abs()) + p[3] + p[4] * e;
    let p0 = [e_peak, width, v_max, 0.0, 0.0];
    let fit = least_squares_fit(&model, energies, values, &p0)?;
    Ok(BreitWignerFit {
        e0: fit.params[0],
        gamma: fit.params[1].abs(),
        amplitude: fit.params[2],
        background: [fit.params[3], fit.params[4]],
        e0_stderr: fit.covariance[0][0].max(0.0).sqrt(),
        gamma_stderr: fit.covariance[1][1].max(0.0).sqrt(),
        rms_residual: fit.rms_residual,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniversalityRow {
    /// Fit window half-width, in units of Gamma.
    pub window_halfwidth: f64,
    pub e0_deviation: f64,
    pub gamma_deviation: f64,
    pub rms_residual: f64,
}

/// Fit the same sampled line shape over nested windows centered on the
/// peak and report how the recovered parameters drift from the pole
/// prediction as the window grows.
///
/// `windows` are half-widths in units of `gamma_pole`; each window must
/// still contain at least 8 samples.
pub fn universality_report(
    energies: &[f64],
    values: &[f64],
    e0_pole: f64,
    gamma_pole: f64,
    windows: &[f64],
) -> Result<Vec<UniversalityRow>, ResonanceError> {
    if gamma_pole <= 0.0 {
        return Err(ResonanceError::BadInput("gamma_pole must be positive"));
    }
    let mut rows = Vec::with_capacity(windows.len());
    for &w in windows {
        if w <= 0.0 {
            return Err(ResonanceError::BadInput("window half-widths must be positive"));
        }
        let lo = e0_pole - w * gamma_pole;
        let hi = e0_pole + w * gamma_pole;
        let mut es = Vec::new();
        let mut vs = Vec::new();
        for (e, v) in energies.iter().zip(values) {
            if *e >= lo && *e <= hi {
                es.push(*e);
                vs.push(*v);
            }
        }
        let fit = fit_breit_wigner(&es, &vs)?;
        rows.push(UniversalityRow {
            window_halfwidth: w,
            e0_deviation: fit.e0 - e0_pole,
            gamma_deviation: fit.gamma - gamma_pole,
            rms_residual: fit.rms_residual,
        });
    }
    Ok(rows)
}
