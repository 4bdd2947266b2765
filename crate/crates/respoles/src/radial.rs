//! Piecewise-constant spherical potentials and partial-wave scattering.
//!
//! Internal units: `hbar = 1`, `2m = 1`, so `E = k^2`. The regular
//! solution is propagated through the segments by transfer matrices in
//! a Riccati-Bessel basis and matched at the outermost radius (where
//! the potential vanishes exactly) to incoming/outgoing spherical
//! waves.

use alloc::vec::Vec;
use core::fmt;
use num_complex::Complex64;

use crate::numerics::{ric_h_out, ric_h_out_deriv, ric_j, ric_j_deriv, ric_y, ric_y_deriv};
// Needed for float math without `std` in the crate graph; when a
// dependent crate links `std`, the inherent methods shadow these.
#[allow(unused_imports)]
use num_traits::Float;

/// Local momenta below this modulus are perturbed (E shifted by
/// [`DEGENERACY_SHIFT`]) to avoid the kappa -> 0 basis degeneracy.
pub const DEGENERACY_EPS: f64 = 1e-9;
pub const DEGENERACY_SHIFT: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub outer_radius: f64,
    pub height: f64,
}

/// Piecewise-constant radial potential; identically zero beyond the
/// last segment radius. An empty segment list is the free particle.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialSpec {
    segments: Vec<Segment>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RadialError {
    InvalidPotential(&'static str),
    Domain(&'static str),
}

impl fmt::Display for RadialError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RadialError::InvalidPotential(m) => write!(f, "invalid potential: {m}"),
            RadialError::Domain(m) => write!(f, "domain error: {m}"),
        }
    }
}

impl core::error::Error for RadialError {}

impl PotentialSpec {
    pub fn new(segments: &[(f64, f64)]) -> Result<Self, RadialError> {
        let mut prev = 0.0;
        for &(r, v) in segments {
            if !(r > prev) || !r.is_finite() {
                return Err(RadialError::InvalidPotential("radii must be strictly increasing and positive"));
            }
            if !v.is_finite() {
                return Err(RadialError::InvalidPotential("heights must be finite"));
            }
            prev = r;
        }
        Ok(Self {
            segments: segments.iter().map(|&(r, v)| Segment { outer_radius: r, height: v }).collect(),
        })
    }

    pub fn free() -> Self {
        Self { segments: Vec::new() }
    }

    pub fn is_free(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Outermost radius; 0 for the free particle.
    pub fn matching_radius(&self) -> f64 {
        self.segments.last().map_or(0.0, |s| s.outer_radius)
    }

    pub fn value_at(&self, r: f64) -> f64 {
        for s in &self.segments {
            if r < s.outer_radius {
                return s.height;
            }
        }
        0.0
    }
}

/// Momentum/energy pair in internal units (E = k^2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kinematics {
    pub k: Complex64,
    pub energy: Complex64,
}

impl Kinematics {
    pub fn from_momentum(k: Complex64) -> Self {
        Self { k, energy: k * k }
    }

    /// Physical energy hbar^2 k^2 / (2 m) for explicitly supplied
    /// constants.
    pub fn physical_energy(&self, hbar: f64, mass: f64) -> Complex64 {
        self.energy * (hbar * hbar / (2.0 * mass))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialWaveResult {
    pub l: u32,
    pub k: Complex64,
    pub s_matrix: Complex64,
    /// Defined only for real k > 0.
    pub phase_shift: Option<f64>,
    /// (4 pi / k^2)(2l+1) sin^2(delta_l); real k only.
    pub cross_section_l: Option<f64>,
}

/// Regular solution (value, radial derivative) at the matching radius,
/// normalized so that both are analytic in E = k^2.
fn regular_solution(pot: &PotentialSpec, l: u32, energy: Complex64) -> (Complex64, Complex64) {
    let segs = pot.segments();
    let mut energy = energy;
    // keep every local momentum away from the basis degeneracy
    loop {
        let near = segs.iter().any(|s| (energy - s.height).sqrt().norm() < DEGENERACY_EPS);
        if !near {
            break;
        }
        energy += Complex64::new(DEGENERACY_SHIFT, DEGENERACY_SHIFT);
    }

    let kappa0 = (energy - segs[0].height).sqrt();
    let r1 = segs[0].outer_radius;
    // u = ric_j(kappa r) / kappa^{l+1} is even in kappa, hence analytic in E
    let scale = kappa0.powu(l + 1);
    let mut u = ric_j(l, kappa0 * r1) / scale;
    let mut du = kappa0 * ric_j_deriv(l, kappa0 * r1) / scale;

    for w in segs.windows(2) {
        let (inner, outer) = (w[0], w[1]);
        let kappa = (energy - outer.height).sqrt();
        let za = kappa * inner.outer_radius;
        let zb = kappa * outer.outer_radius;
        let (ja, ya) = (ric_j(l, za), ric_y(l, za));
        let (dja, dya) = (kappa * ric_j_deriv(l, za), kappa * ric_y_deriv(l, za));
        // solve [ja ya; dja dya] c = (u, du); Wronskian ric_j ric_y' - ric_j' ric_y = -1
        let det = ja * dya - ya * dja; // = -kappa
        let c1 = (u * dya - du * ya) / det;
        let c2 = (du * ja - u * dja) / det;
        u = c1 * ric_j(l, zb) + c2 * ric_y(l, zb);
        du = kappa * (c1 * ric_j_deriv(l, zb) + c2 * ric_y_deriv(l, zb));
    }
    // under very tall barriers u grows like e^{|kappa| r}; rescale by a
    // common real factor (leaves S and pole locations unchanged) so the
    // downstream complex division cannot overflow
    let m = u.norm().max(du.norm());
    if m > 1e150 {
        u /= m;
        du /= m;
    }
    (u, du)
}

/// Jost-type denominator of the partial-wave S-matrix: the matching
/// determinant against the outgoing wave. Zeros in k are the poles of
/// S_l; the function is analytic in k away from k = 0.
pub fn jost_denominator(pot: &PotentialSpec, l: u32, k: Complex64) -> Complex64 {
    if pot.is_free() {
        // no interior region: match the free regular solution; the
        // resulting determinant is a nonvanishing constant
        return Complex64::new(0.0, -1.0);
    }
    let r = pot.matching_radius();
    let (u, du) = regular_solution(pot, l, k * k);
    du * ric_h_out(l, k * r) - u * k * ric_h_out_deriv(l, k * r)
}

fn jost_numerator(pot: &PotentialSpec, l: u32, k: Complex64) -> Complex64 {
    let r = pot.matching_radius();
    let (u, du) = regular_solution(pot, l, k * k);
    // incoming Riccati-Hankel: ric_j + i ric_y
    let h_in = ric_j(l, k * r) + Complex64::new(0.0, 1.0) * ric_y(l, k * r);
    let dh_in = ric_j_deriv(l, k * r) + Complex64::new(0.0, 1.0) * ric_y_deriv(l, k * r);
    du * h_in - u * k * dh_in
}

/// Partial-wave S-matrix element S_l(k).
pub fn s_matrix(pot: &PotentialSpec, l: u32, k: Complex64) -> Result<Complex64, RadialError> {
    if k.norm() < 1e-300 {
        return Err(RadialError::Domain("momentum must be nonzero"));
    }
    if pot.is_free() {
        return Ok(Complex64::new(1.0, 0.0));
    }
    Ok(-jost_numerator(pot, l, k) / jost_denominator(pot, l, k))
}

/// Phase shift delta_l(k) for real k > 0, principal branch in
/// (-pi/2, pi/2]. Use [`phase_shift_scan`] for a continuous branch.
pub fn phase_shift(pot: &PotentialSpec, l: u32, k: f64) -> Result<f64, RadialError> {
    if !(k > 0.0) {
        return Err(RadialError::Domain("phase shift requires real k > 0"));
    }
    let s = s_matrix(pot, l, Complex64::new(k, 0.0))?;
    Ok(0.5 * s.arg())
}

/// Phase shifts over a k-grid, unwrapped to a continuous branch
/// anchored at the first grid point's principal value.
pub fn phase_shift_scan(pot: &PotentialSpec, l: u32, ks: &[f64]) -> Result<Vec<f64>, RadialError> {
    let mut out = Vec::with_capacity(ks.len());
    let mut offset = 0.0;
    let mut prev: Option<f64> = None;
    for &k in ks {
        let raw = phase_shift(pot, l, k)?;
        if let Some(p) = prev {
            let mut d = raw + offset - p;
            while d > core::f64::consts::FRAC_PI_2 {
                offset -= core::f64::consts::PI;
                d -= core::f64::consts::PI;
            }
            while d < -core::f64::consts::FRAC_PI_2 {
                offset += core::f64::consts::PI;
                d += core::f64::consts::PI;
            }
        }
        let val = raw + offset;
        prev = Some(val);
        out.push(val);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossSectionRow {
    pub energy: f64,
    /// Partial cross sections for l = 0..=l_max.
    pub sigma_l: Vec<f64>,
    pub sigma_total: f64,
}

/// Partial and total cross sections over an energy grid:
/// sigma_l = (4 pi / k^2)(2l+1) sin^2 delta_l with k = sqrt(E).
pub fn cross_section(pot: &PotentialSpec, l_max: u32, e_grid: &[f64]) -> Result<Vec<CrossSectionRow>, RadialError> {
    if e_grid.iter().any(|&e| !(e > 0.0)) {
        return Err(RadialError::Domain("energies must be positive"));
    }
    let ks: Vec<f64> = e_grid.iter().map(|&e| e.sqrt()).collect();
    let mut per_l = Vec::with_capacity((l_max + 1) as usize);
    for l in 0..=l_max {
        per_l.push(phase_shift_scan(pot, l, &ks)?);
    }
    let mut rows = Vec::with_capacity(e_grid.len());
    for (i, &e) in e_grid.iter().enumerate() {
        let k2 = e;
        let mut sigma_l = Vec::with_capacity((l_max + 1) as usize);
        let mut total = 0.0;
        for l in 0..=l_max {
            let d = per_l[l as usize][i];
            let s = (4.0 * core::f64::consts::PI / k2) * (2.0 * l as f64 + 1.0) * d.sin().powi(2);
            sigma_l.push(s);
            total += s;
        }
        rows.push(CrossSectionRow { energy: e, sigma_l, sigma_total: total });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::vec;

    fn well(depth: f64, radius: f64) -> PotentialSpec {
        PotentialSpec::new(&[(radius, -depth)]).unwrap()
    }

    #[test]
    fn free_particle_trivial() {
        let pot = PotentialSpec::free();
        let s = s_matrix(&pot, 0, Complex64::new(1.3, 0.0)).unwrap();
        assert!((s - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        assert!(phase_shift(&pot, 2, 0.7).unwrap().abs() < 1e-14);
    }

    #[test]
    fn unitarity_on_real_axis() {
        let pot = PotentialSpec::new(&[(1.0, -2.0), (1.4, 4.0)]).unwrap();
        for l in 0..=4u32 {
            for i in 1..=60 {
                let k = 0.1 + 0.15 * i as f64;
                let s = s_matrix(&pot, l, Complex64::new(k, 0.0)).unwrap();
                assert!((s.norm() - 1.0).abs() < 1e-10, "l={l} k={k}: |S|={}", s.norm());
            }
        }
    }

    #[test]
    fn symmetry_relations_at_complex_k() {
        let pot = PotentialSpec::new(&[(0.8, -3.0), (1.5, 2.0)]).unwrap();
        let samples = [
            Complex64::new(0.7, 0.2),
            Complex64::new(1.9, -0.3),
            Complex64::new(0.4, -0.6),
        ];
        for &k in &samples {
            for l in 0..=2u32 {
                let s_k = s_matrix(&pot, l, k).unwrap();
                let s_mk = s_matrix(&pot, l, -k).unwrap();
                assert!((s_k * s_mk - 1.0).norm() < 1e-8, "S(k)S(-k)=1 failed at l={l} k={k}");
                let s_conj = s_matrix(&pot, l, -k.conj()).unwrap();
                assert!((s_k.conj() - s_conj).norm() < 1e-8 * s_k.norm().max(1.0));
            }
        }
    }

    /// Independent oracle: fixed-step RK4 integration of the radial
    /// equation u'' = (V + l(l+1)/r^2 - E) u from r ~ 0, matched to
    /// the free basis at the outer radius.
    fn phase_shift_ode_oracle(pot: &PotentialSpec, l: u32, k: f64) -> f64 {
        let r_end = pot.matching_radius();
        let r0: f64 = 1e-6;
        let e = k * k;
        let mut u = r0.powi(l as i32 + 1);
        let mut v = (l as f64 + 1.0) * r0.powi(l as i32);
        let mut r = r0;
        // integrate segment by segment so RK4 never straddles a
        // potential discontinuity
        let mut boundaries: Vec<f64> = pot.segments().iter().map(|s| s.outer_radius).collect();
        boundaries.insert(0, r0);
        for w in boundaries.windows(2) {
            let (ra, rb) = (w[0], w[1]);
            let vpot = pot.value_at(0.5 * (ra + rb));
            let n_steps = 20_000;
            let h = (rb - ra) / n_steps as f64;
            let rhs = |r: f64, u: f64, v: f64| -> (f64, f64) {
                let w = vpot + (l * (l + 1)) as f64 / (r * r) - e;
                (v, w * u)
            };
            for _ in 0..n_steps {
                let (k1u, k1v) = rhs(r, u, v);
                let (k2u, k2v) = rhs(r + 0.5 * h, u + 0.5 * h * k1u, v + 0.5 * h * k1v);
                let (k3u, k3v) = rhs(r + 0.5 * h, u + 0.5 * h * k2u, v + 0.5 * h * k2v);
                let (k4u, k4v) = rhs(r + h, u + h * k3u, v + h * k3v);
                u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
                v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
                r += h;
            }
            r = rb;
        }
        // tan(delta) from log-derivative matching against ric_j, ric_y
        let z = Complex64::new(k * r_end, 0.0);
        let (j, y) = (ric_j(l, z).re, ric_y(l, z).re);
        let (dj, dy) = (k * ric_j_deriv(l, z).re, k * ric_y_deriv(l, z).re);
        let gamma = v / u;
        // exterior u = cos(d) ric_j + sin(d) ric_y (ric_y = -x y_l)
        let t = (dj - gamma * j) / (gamma * y - dy);
        t.atan()
    }

    #[test]
    fn transfer_matrix_agrees_with_ode_integration() {
        let pot = PotentialSpec::new(&[(1.0, -2.0), (1.5, 1.0)]).unwrap();
        for l in 0..=2u32 {
            for &k in &[0.4, 0.9, 1.7, 2.6] {
                let d_tm = phase_shift(&pot, l, k).unwrap();
                let d_ode = phase_shift_ode_oracle(&pot, l, k);
                // compare modulo pi (principal branches may differ)
                let mut diff = d_tm - d_ode;
                while diff > core::f64::consts::FRAC_PI_2 {
                    diff -= core::f64::consts::PI;
                }
                while diff < -core::f64::consts::FRAC_PI_2 {
                    diff += core::f64::consts::PI;
                }
                assert!(diff.abs() < 1e-8, "l={l} k={k}: tm={d_tm} ode={d_ode}");
            }
        }
    }

    #[test]
    fn hard_sphere_limit() {
        // very tall barrier over [0, R]: delta_0 -> -kR; the residual
        // correction is O(k/kappa_barrier) ~ 2e-3 at this height
        let r = 1.0;
        let pot = PotentialSpec::new(&[(r, 4e5)]).unwrap();
        let k = 1.3;
        let d = phase_shift(&pot, 0, k).unwrap();
        let want = -k * r;
        let mut diff = d - want;
        while diff > core::f64::consts::FRAC_PI_2 {
            diff -= core::f64::consts::PI;
        }
        while diff < -core::f64::consts::FRAC_PI_2 {
            diff += core::f64::consts::PI;
        }
        assert!(diff.abs() < 5e-3, "delta_0 = {d}, hard-sphere -kR = {want}");
    }

    #[test]
    fn phase_scan_continuous() {
        let pot = well(2.0, 2.0);
        let ks: Vec<f64> = (1..=400).map(|i| 0.01 * i as f64).collect();
        let ds = phase_shift_scan(&pot, 0, &ks).unwrap();
        for w in ds.windows(2) {
            assert!((w[1] - w[0]).abs() < core::f64::consts::FRAC_PI_2);
        }
    }

    #[test]
    fn cross_section_free_zero_and_errors() {
        let rows = cross_section(&PotentialSpec::free(), 2, &[0.5, 1.0]).unwrap();
        for row in rows {
            assert!(row.sigma_total.abs() < 1e-20);
        }
        assert!(cross_section(&well(2.0, 1.0), 0, &[-1.0]).is_err());
    }

    #[test]
    fn invalid_potentials_rejected() {
        assert!(PotentialSpec::new(&[(1.0, -2.0), (0.5, 1.0)]).is_err());
        assert!(PotentialSpec::new(&[(0.0, 1.0)]).is_err());
        assert!(PotentialSpec::new(&[(1.0, f64::INFINITY)]).is_err());
    }

    #[test]
    fn kinematics_conversion() {
        let kin = Kinematics::from_momentum(Complex64::new(2.0, 0.0));
        assert!((kin.energy.re - 4.0).abs() < 1e-15);
        // E = hbar^2 k^2 / (2m)
        let e = kin.physical_energy(1.0545718e-34, 9.10938e-31);
        assert!(e.re > 0.0);
    }

    #[test]
    fn levinson_consistency_one_bound_state() {
        // well with one l=0 bound state: delta(0+) - delta(inf) = pi
        let pot = well(2.0, 2.0);
        // finite grid endpoints cost O(a k_min) at the low end and the
        // Born tail ~ -(1/2k)∫V dr at the high end
        let mut ks: Vec<f64> = (1..=6000).map(|i| 0.0025 * i as f64).collect();
        ks.extend((1..=900).map(|i| 15.0 + 0.05 * i as f64));
        let ds = phase_shift_scan(&pot, 0, &ks).unwrap();
        let diff = ds[0] - ds[ds.len() - 1];
        assert!((diff - core::f64::consts::PI).abs() < 0.06, "Levinson: got {diff}");
    }

    #[test]
    fn cross_section_row_shape() {
        let pot = well(2.0, 1.0);
        let rows = cross_section(&pot, 3, &[0.3, 0.6, 1.2]).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0].sigma_l.len(), 4);
        let sum: f64 = rows[0].sigma_l.iter().sum();
        assert!((sum - rows[0].sigma_total).abs() < 1e-12);
        let _ = vec![0.0];
    }
}
