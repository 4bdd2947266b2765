//! Gamow states: complex-mass bookkeeping, forward-semigroup time
//! evolution, and the survival amplitude of a truncated-Lorentzian
//! energy density with a semibounded spectrum.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI, TAU};
use core::fmt;
use num_complex::Complex64;

use crate::numerics::{integrate_to_infinity, NumericsError, QUAD_TOL};
// Needed for float math without `std` in the crate graph; when a
// dependent crate links `std`, the inherent methods shadow these.
#[allow(unused_imports)]
use num_traits::Float;

#[derive(Debug, Clone, PartialEq)]
pub enum GamowError {
    Domain(&'static str),
    /// Forward-semigroup evolution is defined for t >= 0 only.
    NegativeTime { t: f64 },
    Numerics(NumericsError),
}

impl fmt::Display for GamowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GamowError::Domain(m) => write!(f, "domain error: {m}"),
            GamowError::NegativeTime { t } => {
                write!(f, "evolution requested at t = {t}; the decay semigroup only acts forward in time")
            }
            GamowError::Numerics(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for GamowError {}

impl From<NumericsError> for GamowError {
    fn from(e: NumericsError) -> Self {
        GamowError::Numerics(e)
    }
}

/// Complex mass squared s_R of an unstable (or stable, when the width
/// vanishes) state, with two equivalent parameterizations:
/// s_R = M^2 - i M Gamma = (E_R - i Gamma_R / 2)^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMass {
    s: Complex64,
}

impl ComplexMass {
    /// Build from the (M, Gamma) view: s_R = M^2 - i M Gamma.
    pub fn from_pole_mass(m: f64, gamma: f64) -> Result<Self, GamowError> {
        if !(m > 0.0) || !m.is_finite() {
            return Err(GamowError::Domain("mass must be positive and finite"));
        }
        if !(gamma >= 0.0) || !gamma.is_finite() {
            return Err(GamowError::Domain("width must be nonnegative and finite"));
        }
        Ok(ComplexMass { s: Complex64::new(m * m, -m * gamma) })
    }

    /// Build from the (E_R, Gamma_R) view: s_R = (E_R - i Gamma_R / 2)^2.
    pub fn from_energy_width(e_r: f64, gamma_r: f64) -> Result<Self, GamowError> {
        if !(e_r > 0.0) || !e_r.is_finite() {
            return Err(GamowError::Domain("resonance energy must be positive and finite"));
        }
        if !(gamma_r >= 0.0) || !gamma_r.is_finite() {
            return Err(GamowError::Domain("width must be nonnegative and finite"));
        }
        if gamma_r >= 2.0 * e_r {
            return Err(GamowError::Domain("width must satisfy Gamma_R < 2 E_R"));
        }
        let z = Complex64::new(e_r, -0.5 * gamma_r);
        Ok(ComplexMass { s: z * z })
    }

    /// Build from the complex mass squared directly; Im s_R > 0 would
    /// describe a state that grows in time and is rejected.
    pub fn from_mass_squared(s: Complex64) -> Result<Self, GamowError> {
        if !(s.re > 0.0) || s.im > 0.0 || !s.re.is_finite() || !s.im.is_finite() {
            return Err(GamowError::Domain("mass squared must have Re s > 0 and Im s <= 0"));
        }
        Ok(ComplexMass { s })
    }

    pub fn mass_squared(&self) -> Complex64 {
        self.s
    }

    /// Pole mass M = sqrt(Re s_R) of the (M, Gamma) view.
    pub fn pole_mass(&self) -> f64 {
        self.s.re.sqrt()
    }

    /// Width Gamma = -Im s_R / M of the (M, Gamma) view.
    pub fn pole_width(&self) -> f64 {
        -self.s.im / self.pole_mass()
    }

    /// Complex energy E_R - i Gamma_R / 2, the principal square root of
    /// s_R in the right half plane.
    pub fn complex_energy(&self) -> Complex64 {
        self.s.sqrt()
    }

    /// Resonance energy E_R of the (E_R, Gamma_R) view.
    pub fn energy(&self) -> f64 {
        self.complex_energy().re
    }

    /// Width Gamma_R of the (E_R, Gamma_R) view.
    pub fn width(&self) -> f64 {
        -2.0 * self.complex_energy().im
    }

    /// Mean lifetime 1 / Gamma_R; infinite for a stable state.
    pub fn lifetime(&self) -> f64 {
        1.0 / self.width()
    }
}

/// Convert between the three equivalent descriptions of a complex
/// mass. This is simply a named alias for the squared-form constructor:
/// build from whichever view is at hand with the `ComplexMass`
/// constructors, then read off the other views.
pub fn mass_convert(s: Complex64) -> Result<ComplexMass, GamowError> {
    ComplexMass::from_mass_squared(s)
}

/// A Gamow ket: a complex-energy eigenvector labelled by the inert
/// quantum numbers spin `j` and azimuthal component `b`, with a complex
/// coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GamowState {
    pub mass: ComplexMass,
    pub j: u32,
    pub b: i32,
    pub norm: Complex64,
}

impl GamowState {
    pub fn new(mass: ComplexMass, j: u32, b: i32) -> Result<Self, GamowError> {
        if b.unsigned_abs() > j {
            return Err(GamowError::Domain("|b| must not exceed j"));
        }
        Ok(GamowState { mass, j, b, norm: Complex64::new(1.0, 0.0) })
    }
}

/// Forward semigroup evolution: multiplies the amplitude by
/// exp(-i E_R t) exp(-Gamma_R t / 2). Only t >= 0 is admitted; the
/// decaying Gamow ket has no unitary inverse evolution.
pub fn semigroup_evolve(state: &GamowState, t: f64) -> Result<GamowState, GamowError> {
    if !(t >= 0.0) {
        return Err(GamowError::NegativeTime { t });
    }
    let phase = (-Complex64::i() * state.mass.complex_energy() * t).exp();
    Ok(GamowState { norm: state.norm * phase, ..*state })
}

/// Apply the mass-squared operator: the Gamow ket is an eigenvector,
/// so the result is its eigenvalue s_R.
pub fn mass_squared_apply(state: &GamowState) -> Complex64 {
    state.mass.mass_squared()
}

/// Truncated Lorentzian energy density on the physical spectrum
/// [0, inf): rho(E) = N / ((E - E_R)^2 + b^2) with b = Gamma_R / 2 and
/// N chosen so that the total weight is one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyDensity {
    e_r: f64,
    b: f64,
    norm: f64,
}

impl EnergyDensity {
    pub fn new(mass: &ComplexMass) -> Result<Self, GamowError> {
        let e_r = mass.energy();
        let b = 0.5 * mass.width();
        if !(b > 0.0) {
            return Err(GamowError::Domain("a stable state has no Lorentzian energy density"));
        }
        let norm = b / (FRAC_PI_2 + (e_r / b).atan());
        Ok(EnergyDensity { e_r, b, norm })
    }

    /// Density value; zero below threshold.
    pub fn value(&self, e: f64) -> f64 {
        if e < 0.0 {
            return 0.0;
        }
        let u = e - self.e_r;
        self.norm / (u * u + self.b * self.b)
    }

    /// Analytic continuation of the Lorentzian kernel to complex E
    /// (without the threshold cutoff).
    fn kernel(&self, e: Complex64) -> Complex64 {
        let u = e - self.e_r;
        self.norm / (u * u + self.b * self.b)
    }

    /// Derivatives of the kernel up to third order at real E, used by
    /// the asymptotic tail of the survival integral.
    fn kernel_derivs(&self, e: f64) -> [f64; 4] {
        let u = e - self.e_r;
        let d = u * u + self.b * self.b;
        let n = self.norm;
        [
            n / d,
            -2.0 * n * u / (d * d),
            n * (8.0 * u * u - 2.0 * d) / (d * d * d),
            24.0 * n * u * (self.b * self.b - u * u) / (d * d * d * d),
        ]
    }
}

/// Survival amplitude I(t) = integral over [0, inf) of rho(E) e^{-iEt}.
///
/// The head [0, X] is integrated by 10-point Gauss-Legendre panels
/// sized to resolve both the Lorentzian peak and the e^{-iEt}
/// oscillation; the tail beyond X is summed by a four-term integration
/// by parts in 1/(it), which converges because rho is smooth and
/// algebraically decaying there.
pub fn survival_amplitude(density: &EnergyDensity, t: f64) -> Result<Complex64, GamowError> {
    if !(t >= 0.0) {
        return Err(GamowError::NegativeTime { t });
    }
    if t == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let (e_r, b) = (density.e_r, density.b);
    let gamma = 2.0 * b;
    // cut point: far enough out that the IBP series in 1/(t * (E - E_R))
    // is deep in its asymptotic regime
    let x_cut = e_r + gamma * (1000.0f64).max(100.0 / (t * gamma)).min(1e6);
    let h = (0.5 * b).min(TAU / (8.0 * t));

    // 10-point Gauss-Legendre nodes/weights on [-1, 1]
    const GL_X: [f64; 5] = [
        0.148874338981631211,
        0.433395394129247191,
        0.679409568299024406,
        0.865063366688984511,
        0.973906528517171720,
    ];
    const GL_W: [f64; 5] = [
        0.295524224714752870,
        0.269266719309996355,
        0.219086362515982044,
        0.149451349150580593,
        0.066671344308688138,
    ];

    let mut head = Complex64::new(0.0, 0.0);
    let mut a = 0.0f64;
    while a < x_cut {
        let bb = (a + h).min(x_cut);
        let mid = 0.5 * (a + bb);
        let half = 0.5 * (bb - a);
        let mut panel = Complex64::new(0.0, 0.0);
        for i in 0..5 {
            for &sgn in &[-1.0, 1.0] {
                let e = mid + sgn * half * GL_X[i];
                let val = density.value(e) * (-Complex64::i() * e * t).exp();
                panel += GL_W[i] * val;
            }
        }
        head += half * panel;
        a = bb;
    }

    // tail: integral over [X, inf) of rho e^{-iEt}
    //   = e^{-iXt} * sum_{n=0..3} rho^(n)(X) / (it)^{n+1} + remainder
    let derivs = density.kernel_derivs(x_cut);
    let it = Complex64::i() * t;
    let mut tail = Complex64::new(0.0, 0.0);
    let mut pow = it;
    for d in derivs {
        tail += d / pow;
        pow *= it;
    }
    tail *= (-Complex64::i() * x_cut * t).exp();

    Ok(head + tail)
}

/// Exact alternative evaluation of the survival amplitude by rotating
/// the integration contour onto the negative imaginary energy axis:
/// I(t) = (pi N / b) e^{-i E_R t} e^{-b t} - i * integral over [0, inf)
/// of rho(-iu) e^{-ut} du. Used as an independent cross-check.
pub fn survival_amplitude_rotated(density: &EnergyDensity, t: f64) -> Result<Complex64, GamowError> {
    if !(t > 0.0) {
        return Err(GamowError::Domain("contour rotation requires t > 0"));
    }
    let pole = PI * density.norm / density.b
        * (-Complex64::i() * density.e_r * t).exp()
        * (-density.b * t).exp();
    let background = integrate_to_infinity(
        |u| density.kernel(Complex64::new(0.0, -u)) * (-u * t).exp(),
        0.0,
        QUAD_TOL,
    )?;
    Ok(pole - Complex64::i() * background)
}

/// Sampled survival probability |I(t)|^2 alongside the pure
/// exponential e^{-Gamma_R t} it shadows at intermediate times.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurvivalRow {
    pub t: f64,
    pub probability: f64,
    pub exponential: f64,
}

/// Tabulate |I(t)|^2 against the exponential law on the given times.
pub fn survival_table(mass: &ComplexMass, times: &[f64]) -> Result<Vec<SurvivalRow>, GamowError> {
    let density = EnergyDensity::new(mass)?;
    let mut rows = Vec::with_capacity(times.len());
    for &t in times {
        let amp = survival_amplitude(&density, t)?;
        rows.push(SurvivalRow {
            t,
            probability: amp.norm_sqr(),
            exponential: (-mass.width() * t).exp(),
        });
    }
    Ok(rows)
}
