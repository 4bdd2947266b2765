//! An unstable scalar coupled to a pair of light stable scalars: the
//! once-renormalized self-energy from a twice-subtracted dispersion
//! integral, the Dyson-resummed propagator and its second-sheet pole,
//! and gauge-propagator Ward-identity diagnostics for the complex-mass
//! prescription.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
use num_complex::Complex64;
// Needed for float math without `std` in the crate graph; when a
// dependent crate links `std`, the inherent methods shadow these.
#[allow(unused_imports)]
use num_traits::Float;

use crate::numerics::{
    integrate_to_infinity, newton_complex, principal_value_quadrature, NumericsError, ROOT_TOL,
};

/// Tolerance used by the internal dispersion integrals.
const DISP_TOL: f64 = 1e-12;
/// Relative step for the five-point derivative of the subtracted
/// self-energy at the renormalization point.
const DERIV_STEP: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub enum VeltmanError {
    Domain(&'static str),
    Numerics(NumericsError),
    /// The dressed denominator is numerically zero at the requested point.
    SingularPropagator { s: Complex64 },
    /// The refined pole disagrees with the narrow-width estimate.
    PoleImplausible { s_pole: Complex64, expected_im: f64 },
}

impl fmt::Display for VeltmanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VeltmanError::Domain(m) => write!(f, "domain error: {m}"),
            VeltmanError::Numerics(e) => write!(f, "{e}"),
            VeltmanError::SingularPropagator { s } => {
                write!(f, "dressed propagator is singular at s = {s}")
            }
            VeltmanError::PoleImplausible { s_pole, expected_im } => write!(
                f,
                "refined pole {s_pole} is inconsistent with the narrow-width estimate Im s = {expected_im}"
            ),
        }
    }
}

impl core::error::Error for VeltmanError {}

impl From<NumericsError> for VeltmanError {
    fn from(e: NumericsError) -> Self {
        VeltmanError::Numerics(e)
    }
}

/// Which Riemann sheet of the self-energy to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sheet {
    First,
    Second,
}

/// A heavy scalar of mass M decaying into two light scalars of mass m
/// with coupling g; requires M > 2m so the decay channel is open.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VeltmanModel {
    pub big_mass: f64,
    pub small_mass: f64,
    pub coupling: f64,
}

impl VeltmanModel {
    pub fn new(big_mass: f64, small_mass: f64, coupling: f64) -> Result<Self, VeltmanError> {
        if !(big_mass > 0.0 && small_mass > 0.0 && coupling != 0.0)
            || !big_mass.is_finite()
            || !small_mass.is_finite()
            || !coupling.is_finite()
        {
            return Err(VeltmanError::Domain("masses must be positive and the coupling nonzero"));
        }
        if big_mass <= 2.0 * small_mass {
            return Err(VeltmanError::Domain("the decay channel requires M > 2m"));
        }
        Ok(VeltmanModel { big_mass, small_mass, coupling })
    }

    /// Two-body threshold s = 4 m^2.
    pub fn threshold(&self) -> f64 {
        4.0 * self.small_mass * self.small_mass
    }

    /// Absorptive part of the self-energy on the real axis:
    /// I2(s) = (g^2 / 32 pi) sqrt(1 - 4 m^2 / s) for s above threshold,
    /// zero below.
    pub fn spectral_function(&self, s: f64) -> f64 {
        let thr = self.threshold();
        if s <= thr {
            return 0.0;
        }
        self.coupling * self.coupling / (32.0 * PI) * (1.0 - thr / s).sqrt()
    }

    /// Analytic continuation of the spectral function to complex s
    /// (principal branch of the square root).
    pub fn spectral_function_continued(&self, s: Complex64) -> Complex64 {
        let thr = self.threshold();
        self.coupling * self.coupling / (32.0 * PI) * (1.0 - thr / s).sqrt()
    }
}

/// Renormalized self-energy built from a twice-subtracted dispersion
/// integral over the spectral function, with the subtraction constants
/// fixed so that Re Sigma and Re Sigma' vanish at s = M^2 (on-shell
/// mass and unit residue).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelfEnergyModel {
    pub model: VeltmanModel,
    alpha: f64,
    beta: f64,
}

impl SelfEnergyModel {
    pub fn new(model: VeltmanModel) -> Result<Self, VeltmanError> {
        let m2 = model.big_mass * model.big_mass;
        let h = DERIV_STEP * m2;
        // five-point stencil for d/ds Re Sigma_0 at s = M^2
        let f = |s: f64| unrenormalized_real(&model, s);
        let center = f(m2)?;
        let d = (-f(m2 + 2.0 * h)? + 8.0 * f(m2 + h)? - 8.0 * f(m2 - h)? + f(m2 - 2.0 * h)?)
            / (12.0 * h);
        let beta = -d;
        let alpha = -center - beta * m2;
        Ok(SelfEnergyModel { model, alpha, beta })
    }

    /// Subtraction constants (alpha, beta) of the renormalization
    /// polynomial alpha + beta s.
    pub fn subtraction_constants(&self) -> (f64, f64) {
        (self.alpha, self.beta)
    }

    /// Renormalized self-energy at complex s. On the real axis above
    /// threshold the first-sheet boundary value from above
    /// (Re Sigma - i I2) is returned; the second sheet continues the
    /// function through the cut from below.
    pub fn self_energy(&self, s: Complex64, sheet: Sheet) -> Result<Complex64, VeltmanError> {
        let model = &self.model;
        let poly = self.alpha + self.beta * s.re;
        let base = if s.im == 0.0 {
            let re = unrenormalized_real(model, s.re)? + poly;
            let im = -model.spectral_function(s.re);
            Complex64::new(re, im)
        } else {
            unrenormalized_complex(model, s)? + Complex64::new(self.alpha, 0.0) + self.beta * s
        };
        match sheet {
            Sheet::First => Ok(base),
            Sheet::Second => {
                Ok(base - 2.0 * Complex64::i() * model.spectral_function_continued(s))
            }
        }
    }

    /// Ratio Sigma(s) / (s - M^2): the expansion parameter of the
    /// geometric bubble-sum that the dressed propagator resums.
    pub fn dyson_factor(&self, s: Complex64) -> Result<Complex64, VeltmanError> {
        let m2 = self.model.big_mass * self.model.big_mass;
        let denom = s - m2;
        if denom.norm() < 1e-14 {
            return Err(VeltmanError::SingularPropagator { s });
        }
        Ok(self.self_energy(s, Sheet::First)? / denom)
    }
}

fn disp_kernel(model: &VeltmanModel, sp: f64) -> f64 {
    model.spectral_function(sp) / (sp * sp)
}

/// Twice-subtracted dispersion integral at real s off the cut interior:
/// Sigma_0(s) = -(s^2 / pi) * PV integral over [4m^2, inf) of
/// I2(s') / (s'^2 (s' - s)) ds'. Above threshold this is the real
/// (principal-value) part.
fn unrenormalized_real(model: &VeltmanModel, s: f64) -> Result<f64, VeltmanError> {
    let thr = model.threshold();
    let integral = if s > thr {
        // split at a finite cut containing the PV singularity
        let b = 2.0 * s + 10.0 * thr.max(1.0);
        let pv =
            principal_value_quadrature(|sp| disp_kernel(model, sp) / (sp - s), thr, b, s, DISP_TOL)?;
        let tail =
            integrate_to_infinity(|sp| Complex64::new(disp_kernel(model, sp) / (sp - s), 0.0), b, DISP_TOL)?;
        pv + tail.re
    } else {
        integrate_to_infinity(
            |sp| Complex64::new(disp_kernel(model, sp) / (sp - s), 0.0),
            thr,
            DISP_TOL,
        )?
        .re
    };
    Ok(-(s * s / PI) * integral)
}

/// Same dispersion integral at complex s. No principal value is needed
/// off the axis, but close to the cut the kernel is nearly singular,
/// so the pole is subtracted analytically on a finite window around it.
fn unrenormalized_complex(model: &VeltmanModel, s: Complex64) -> Result<Complex64, VeltmanError> {
    let thr = model.threshold();
    let integral = if s.re > thr {
        let b = 2.0 * s.re + 10.0 * thr.max(1.0);
        let c = model.spectral_function(s.re) / (s.re * s.re);
        let smooth = crate::numerics::adaptive_quadrature_complex(
            |sp| (disp_kernel(model, sp) - c) / (sp - s),
            thr,
            b,
            DISP_TOL,
        )?;
        let analytic = c * ((b - s) / (thr - s)).ln();
        let tail = integrate_to_infinity(|sp| disp_kernel(model, sp) / (sp - s), b, DISP_TOL)?;
        smooth + analytic + tail
    } else {
        integrate_to_infinity(|sp| disp_kernel(model, sp) / (sp - s), thr, DISP_TOL)?
    };
    Ok(-(s * s / PI) * integral)
}

/// Dressed propagator 1 / (s - M^2 - Sigma(s)) for an arbitrary
/// self-energy map, so alternative approximants can be compared.
pub fn dressed_propagator<F>(s: Complex64, mass_squared: f64, sigma: F) -> Result<Complex64, VeltmanError>
where
    F: Fn(Complex64) -> Result<Complex64, VeltmanError>,
{
    let denom = s - mass_squared - sigma(s)?;
    if denom.norm() < 1e-14 {
        return Err(VeltmanError::SingularPropagator { s });
    }
    Ok(1.0 / denom)
}

/// Location and residual of the complex pole of the dressed propagator
/// on the second sheet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPole {
    pub mass: crate::gamow::ComplexMass,
    pub residual: f64,
}

impl ComplexPole {
    pub fn s_pole(&self) -> Complex64 {
        self.mass.mass_squared()
    }

    /// Effective width Gamma = -Im s_pole / M.
    pub fn width(&self) -> f64 {
        self.mass.pole_width()
    }
}

/// Newton refinement of the second-sheet zero of s - M^2 - Sigma_II(s),
/// seeded by the narrow-width estimate s = M^2 - i I2(M^2). The result
/// is sanity-checked against that estimate.
pub fn find_complex_pole(se: &SelfEnergyModel) -> Result<ComplexPole, VeltmanError> {
    let m = se.model.big_mass;
    let m2 = m * m;
    let i2 = se.model.spectral_function(m2);
    let f = |s: Complex64| -> Complex64 {
        match se.self_energy(s, Sheet::Second) {
            Ok(sig) => s - m2 - sig,
            Err(_) => Complex64::new(f64::NAN, f64::NAN),
        }
    };
    let seed = Complex64::new(m2, -i2);
    let root = newton_complex(&f, None::<fn(Complex64) -> Complex64>, seed, ROOT_TOL)?;
    let s_pole = root.location;
    if s_pole.im >= 0.0 || (s_pole.im + i2).abs() > 0.05 * i2 || (s_pole.re - m2).abs() > 0.05 * m2 {
        return Err(VeltmanError::PoleImplausible { s_pole, expected_im: -i2 });
    }
    let mass = crate::gamow::ComplexMass::from_mass_squared(s_pole)
        .map_err(|_| VeltmanError::PoleImplausible { s_pole, expected_im: -i2 })?;
    Ok(ComplexPole { mass, residual: root.residual_norm })
}

// ---------------------------------------------------------------------------
// Gauge-propagator Ward identities in the complex-mass prescription.
// Metric signature (+, -, -, -).
// ---------------------------------------------------------------------------

/// Minkowski square q^mu q_mu with signature (+, -, -, -).
pub fn minkowski_square(q: &[f64; 4]) -> f64 {
    q[0] * q[0] - q[1] * q[1] - q[2] * q[2] - q[3] * q[3]
}

fn metric(mu: usize, nu: usize) -> f64 {
    if mu != nu {
        0.0
    } else if mu == 0 {
        1.0
    } else {
        -1.0
    }
}

fn lower(q: &[f64; 4], mu: usize) -> f64 {
    if mu == 0 {
        q[0]
    } else {
        -q[mu]
    }
}

pub type PropagatorTensor = [[Complex64; 4]; 4];

/// Kinematics and parameters of one vector-propagator evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeConfig {
    pub xi: f64,
    pub mass: f64,
    pub width: f64,
    pub q: [f64; 4],
}

impl GaugeConfig {
    pub fn new(xi: f64, mass: f64, width: f64, q: [f64; 4]) -> Result<Self, VeltmanError> {
        if !xi.is_finite() || !(mass > 0.0) || !(width >= 0.0) || q.iter().any(|c| !c.is_finite()) {
            return Err(VeltmanError::Domain(
                "gauge config needs finite xi and q, M > 0 and Gamma >= 0",
            ));
        }
        Ok(GaugeConfig { xi, mass, width, q })
    }

    /// Complex mass squared M^2 - i M Gamma.
    pub fn complex_mass_squared(&self) -> Complex64 {
        Complex64::new(self.mass * self.mass, -self.mass * self.width)
    }
}

fn tensor(cfg: &GaugeConfig, main_denom: Complex64, gauge_denom: Complex64) -> Result<PropagatorTensor, VeltmanError> {
    if main_denom.norm() < 1e-12 || gauge_denom.norm() < 1e-12 {
        return Err(VeltmanError::SingularPropagator {
            s: Complex64::new(minkowski_square(&cfg.q), 0.0),
        });
    }
    let mut d = [[Complex64::new(0.0, 0.0); 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            let num = -metric(mu, nu)
                + (1.0 - cfg.xi) * lower(&cfg.q, mu) * lower(&cfg.q, nu) / gauge_denom;
            d[mu][nu] = Complex64::i() * num / main_denom;
        }
    }
    Ok(d)
}

/// Massive vector propagator in a general R_xi-type gauge with a real
/// mass: i (-g_{mu nu} + (1 - xi) q_mu q_nu / (q^2 - xi M^2)) / (q^2 - M^2).
/// The width in the config is ignored.
pub fn stable_vector_propagator(cfg: &GaugeConfig) -> Result<PropagatorTensor, VeltmanError> {
    let q2 = Complex64::new(minkowski_square(&cfg.q), 0.0);
    let m2 = cfg.mass * cfg.mass;
    tensor(cfg, q2 - m2, q2 - cfg.xi * m2)
}

/// Complex mass inserted only in the resonant denominator; the gauge
/// term keeps the real mass. This choice breaks the Ward identity at
/// order Gamma.
pub fn naive_unstable_propagator(cfg: &GaugeConfig) -> Result<PropagatorTensor, VeltmanError> {
    let q2 = Complex64::new(minkowski_square(&cfg.q), 0.0);
    tensor(cfg, q2 - cfg.complex_mass_squared(), q2 - cfg.xi * cfg.mass * cfg.mass)
}

/// Complex mass used consistently in both denominators; the Ward
/// identity then holds exactly with the complex mass.
pub fn corrected_unstable_propagator(cfg: &GaugeConfig) -> Result<PropagatorTensor, VeltmanError> {
    let q2 = Complex64::new(minkowski_square(&cfg.q), 0.0);
    let m2c = cfg.complex_mass_squared();
    tensor(cfg, q2 - m2c, q2 - cfg.xi * m2c)
}

/// Max-norm over nu of q^mu D_{mu nu} + i xi q_nu / (q^2 - xi Mc^2)
/// with Mc^2 = M^2 - i M Gamma: the complex-mass Ward contraction.
/// Zero (to rounding) certifies the identity.
pub fn ward_residual(d: &PropagatorTensor, cfg: &GaugeConfig) -> f64 {
    let q2 = minkowski_square(&cfg.q);
    let gauge_denom = q2 - cfg.xi * cfg.complex_mass_squared();
    let mut worst = 0.0f64;
    for nu in 0..4 {
        let mut contraction = Complex64::new(0.0, 0.0);
        for mu in 0..4 {
            contraction += cfg.q[mu] * d[mu][nu];
        }
        let expected = -Complex64::i() * cfg.xi * lower(&cfg.q, nu) / gauge_denom;
        worst = worst.max((contraction - expected).norm());
    }
    worst
}

/// Ward residuals of the three prescriptions at one kinematic point.
/// The stable form is judged against the zero-width identity; the two
/// unstable forms against the complex-mass identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WardReport {
    pub xi: f64,
    pub q2: f64,
    pub stable: f64,
    pub naive: f64,
    pub corrected: f64,
}

pub fn ward_report(cfg: &GaugeConfig) -> Result<WardReport, VeltmanError> {
    let stable_cfg = GaugeConfig { width: 0.0, ..*cfg };
    Ok(WardReport {
        xi: cfg.xi,
        q2: minkowski_square(&cfg.q),
        stable: ward_residual(&stable_vector_propagator(&stable_cfg)?, &stable_cfg),
        naive: ward_residual(&naive_unstable_propagator(cfg)?, cfg),
        corrected: ward_residual(&corrected_unstable_propagator(cfg)?, cfg),
    })
}

/// Tabulated comparison of the truncated bubble sum against the closed
/// Dyson form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DysonRow {
    pub order: u32,
    pub partial_sum: Complex64,
    pub dressed: Complex64,
    pub deviation: f64,
}

/// Partial sums of the geometric bubble series
/// (1/(s - M^2)) * sum_{n<=N} (Sigma/(s - M^2))^n against the dressed
/// propagator, at a point where the series converges.
pub fn dyson_table(
    se: &SelfEnergyModel,
    s: Complex64,
    max_order: u32,
) -> Result<Vec<DysonRow>, VeltmanError> {
    let m2 = se.model.big_mass * se.model.big_mass;
    let factor = se.dyson_factor(s)?;
    if factor.norm() >= 1.0 {
        return Err(VeltmanError::Domain("bubble series diverges at this s; move off resonance"));
    }
    let free = 1.0 / (s - m2);
    let dressed = dressed_propagator(s, m2, |z| se.self_energy(z, Sheet::First))?;
    let mut rows = Vec::with_capacity(max_order as usize + 1);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut term = free;
    for n in 0..=max_order {
        sum += term;
        term *= factor;
        rows.push(DysonRow { order: n, partial_sum: sum, dressed, deviation: (sum - dressed).norm() });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model() -> VeltmanModel {
        VeltmanModel::new(1.0, 0.2, 0.3).unwrap()
    }

    #[test]
    fn model_validation() {
        assert!(VeltmanModel::new(0.3, 0.2, 0.3).is_err());
        assert!(VeltmanModel::new(1.0, -0.2, 0.3).is_err());
        assert!(VeltmanModel::new(1.0, 0.2, 0.0).is_err());
        assert!(VeltmanModel::new(1.0, 0.2, 0.3).is_ok());
    }

    #[test]
    fn spectral_function_values() {
        let m = model();
        assert_eq!(m.spectral_function(0.1), 0.0);
        assert_eq!(m.spectral_function(0.16), 0.0);
        // (g^2/32 pi) sqrt(1 - 0.16) at s = M^2 = 1
        let expect = 0.09 / (32.0 * PI) * (0.84f64).sqrt();
        assert!((m.spectral_function(1.0) - expect).abs() < 1e-18);
        assert!((expect - 8.21e-4).abs() < 1e-5);
        // continuation agrees on the real axis above threshold
        let c = m.spectral_function_continued(Complex64::new(1.0, 0.0));
        assert!((c.re - expect).abs() < 1e-18 && c.im.abs() < 1e-18);
    }

    #[test]
    fn renormalization_conditions_hold() {
        let se = SelfEnergyModel::new(model()).unwrap();
        let m2 = 1.0;
        let sig = se.self_energy(Complex64::new(m2, 0.0), Sheet::First).unwrap();
        assert!(sig.re.abs() < 1e-9, "Re Sigma(M^2) = {}", sig.re);
        // derivative of the real part vanishes at M^2
        let h = 1e-4;
        let f = |s: f64| se.self_energy(Complex64::new(s, 0.0), Sheet::First).unwrap().re;
        let d = (f(m2 + h) - f(m2 - h)) / (2.0 * h);
        assert!(d.abs() < 1e-5, "Re Sigma'(M^2) = {d}");
    }

    #[test]
    fn boundary_value_is_cut_limit() {
        let se = SelfEnergyModel::new(model()).unwrap();
        let s = 1.3;
        let on_axis = se.self_energy(Complex64::new(s, 0.0), Sheet::First).unwrap();
        // limit from above via small positive imaginary parts
        let eps1 = se.self_energy(Complex64::new(s, 1e-5), Sheet::First).unwrap();
        let eps2 = se.self_energy(Complex64::new(s, 5e-6), Sheet::First).unwrap();
        // Richardson extrapolation to the axis
        let limit = 2.0 * eps2 - eps1;
        assert!((on_axis - limit).norm() < 1e-7, "axis {on_axis}, limit {limit}");
        // imaginary part is exactly -I2 by construction
        assert!((on_axis.im + model().spectral_function(s)).abs() < 1e-18);
    }

    #[test]
    fn schwarz_reflection_on_first_sheet() {
        let se = SelfEnergyModel::new(model()).unwrap();
        for &(re, im) in &[(0.8, 0.3), (1.2, 0.05), (2.0, 1.0)] {
            let up = se.self_energy(Complex64::new(re, im), Sheet::First).unwrap();
            let down = se.self_energy(Complex64::new(re, -im), Sheet::First).unwrap();
            assert!((up - down.conj()).norm() < 1e-10);
        }
    }

    #[test]
    fn second_sheet_continues_through_cut() {
        let se = SelfEnergyModel::new(model()).unwrap();
        let s = 1.1;
        let eps = 1e-6;
        let above = se.self_energy(Complex64::new(s, eps), Sheet::First).unwrap();
        let below = se.self_energy(Complex64::new(s, -eps), Sheet::Second).unwrap();
        // crossing the cut downward must be smooth on the second sheet
        assert!((above - below).norm() < 1e-4 * above.norm());
        // whereas the first sheet jumps by 2i I2 across the cut
        let first_below = se.self_energy(Complex64::new(s, -eps), Sheet::First).unwrap();
        let jump = (above - first_below).norm();
        assert!((jump - 2.0 * model().spectral_function(s)).abs() < 1e-6);
    }

    #[test]
    fn complex_pole_matches_narrow_width_estimate() {
        let se = SelfEnergyModel::new(model()).unwrap();
        let pole = find_complex_pole(&se).unwrap();
        let i2 = model().spectral_function(1.0);
        let s_pole = pole.s_pole();
        assert!(s_pole.im < 0.0);
        assert!(((-s_pole.im) / i2 - 1.0).abs() < 0.05, "Im s_pole = {}", s_pole.im);
        assert!((s_pole.re - 1.0).abs() < 0.01);
        assert!((pole.width() - i2 / 1.0).abs() < 0.05 * i2);
        assert!(pole.residual < 1e-10);
    }

    #[test]
    fn dyson_series_converges_to_dressed_form() {
        let se = SelfEnergyModel::new(model()).unwrap();
        let s = Complex64::new(1.5, 0.2);
        let rows = dyson_table(&se, s, 8).unwrap();
        assert!(rows[0].deviation > rows[8].deviation);
        assert!(rows[8].deviation < 1e-12 * rows[8].dressed.norm());
        // deviations shrink geometrically
        for w in rows.windows(2) {
            assert!(w[1].deviation <= w[0].deviation);
        }
        // on top of the resonance the expansion parameter exceeds one
        let m2 = 1.0;
        let s_res = Complex64::new(m2 + 1e-6, 0.0);
        assert!(dyson_table(&se, s_res, 3).is_err());
    }

    #[test]
    fn ward_identities() {
        let q = [1.3, 0.4, -0.2, 0.3];
        let (mass, width) = (1.0, 0.05);
        for &xi in &[0.5, 1.0, 3.0] {
            let cfg = GaugeConfig::new(xi, mass, width, q).unwrap();
            let report = ward_report(&cfg).unwrap();
            assert!(report.stable < 1e-14, "stable residual {}", report.stable);
            assert!(report.corrected < 1e-14, "corrected residual {}", report.corrected);
            // the naive insertion violates the identity at order Gamma,
            // except at xi = 1 where the gauge term drops out entirely
            if xi != 1.0 {
                assert!(report.naive > 1e-3, "naive residual {}", report.naive);
            }
        }
        // the violation scales linearly with the width
        let r1 = ward_report(&GaugeConfig::new(2.0, mass, 0.01, q).unwrap()).unwrap().naive;
        let r2 = ward_report(&GaugeConfig::new(2.0, mass, 0.02, q).unwrap()).unwrap().naive;
        assert!((r2 / r1 - 2.0).abs() < 0.2);
        // Feynman-like gauge xi = 1 kills the gauge term entirely
        let cfg1 = GaugeConfig::new(1.0, mass, width, q).unwrap();
        let d = naive_unstable_propagator(&cfg1).unwrap();
        assert!(ward_residual(&d, &cfg1) < 1e-14);
    }

    #[test]
    fn width_zero_reductions_and_tensor_symmetry() {
        let q = [1.3, 0.4, -0.2, 0.3];
        let cfg0 = GaugeConfig::new(2.0, 1.0, 0.0, q).unwrap();
        let stable = stable_vector_propagator(&cfg0).unwrap();
        let naive = naive_unstable_propagator(&cfg0).unwrap();
        let corrected = corrected_unstable_propagator(&cfg0).unwrap();
        for mu in 0..4 {
            for nu in 0..4 {
                assert!((stable[mu][nu] - naive[mu][nu]).norm() < 1e-15);
                assert!((stable[mu][nu] - corrected[mu][nu]).norm() < 1e-15);
                // all three tensors are symmetric in mu <-> nu
                assert!((stable[mu][nu] - stable[nu][mu]).norm() < 1e-15);
            }
        }
        // on-pole evaluation is refused
        let q_pole = [1.0, 0.0, 0.0, 0.0];
        let on_pole = GaugeConfig::new(2.0, 1.0, 0.0, q_pole).unwrap();
        assert!(matches!(
            stable_vector_propagator(&on_pole),
            Err(VeltmanError::SingularPropagator { .. })
        ));
    }

    #[test]
    fn width_from_pole_matches_decay_rate_formula() {
        // Gamma = I2(M^2) / M is the tree-level decay rate; the pole
        // width must land on it for weak coupling
        let se = SelfEnergyModel::new(model()).unwrap();
        let pole = find_complex_pole(&se).unwrap();
        let rate = model().spectral_function(1.0) / 1.0;
        assert!((pole.width() / rate - 1.0).abs() < 0.02);
    }
}
