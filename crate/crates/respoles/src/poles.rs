//! S-matrix poles in the complex momentum plane: location, refinement,
//! classification and completeness certification.
//!
//! Bound states sit on the positive imaginary axis, virtual states on
//! the negative imaginary axis, and resonances in the lower half plane
//! off the axis, in conjugate-reflected pairs (k, -conj(k)).

use alloc::vec::Vec;
use core::fmt;
use num_complex::Complex64;

use crate::numerics::{count_zeros, newton_complex, ComplexRegion, NumericsError, ROOT_TOL};
use crate::radial::{jost_denominator, PotentialSpec, RadialError};

/// Half-width of the dead band around the imaginary axis used when
/// classifying poles.
pub const CLASSIFY_DEAD_BAND: f64 = 1e-10;

const SEED_GRID: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoleKind {
    Bound,
    Resonance,
    Virtual,
}

impl fmt::Display for PoleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PoleKind::Bound => write!(f, "bound"),
            PoleKind::Resonance => write!(f, "resonance"),
            PoleKind::Virtual => write!(f, "virtual"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleRecord {
    pub k_pole: Complex64,
    /// Complex energy, = k_pole^2 in internal units.
    pub e_pole: Complex64,
    pub kind: PoleKind,
    pub residual: f64,
    pub partial_wave: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PolesError {
    Radial(RadialError),
    Numerics(NumericsError),
    /// Refined pole count disagrees with the argument-principle count.
    CountMismatch { winding: u32, refined: usize, region: ComplexRegion },
    /// Pole sits within the dead band of a classification boundary.
    AmbiguousClassification { k: Complex64 },
    NotAResonance { kind: PoleKind },
}

impl fmt::Display for PolesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolesError::Radial(e) => write!(f, "{e}"),
            PolesError::Numerics(e) => write!(f, "{e}"),
            PolesError::CountMismatch { winding, refined, region } => write!(
                f,
                "pole count mismatch in [{}, {}] x [{}, {}]: winding {winding}, refined {refined}",
                region.re_min, region.re_max, region.im_min, region.im_max
            ),
            PolesError::AmbiguousClassification { k } => {
                write!(f, "pole at k = {k} within classification dead band; refine further")
            }
            PolesError::NotAResonance { kind } => write!(f, "expected a resonance pole, got {kind}"),
        }
    }
}

impl core::error::Error for PolesError {}

impl From<NumericsError> for PolesError {
    fn from(e: NumericsError) -> Self {
        PolesError::Numerics(e)
    }
}

impl From<RadialError> for PolesError {
    fn from(e: RadialError) -> Self {
        PolesError::Radial(e)
    }
}

/// Classify a pole momentum as bound / resonance / virtual with a dead
/// band around the axis tests.
pub fn classify(k: Complex64) -> Result<PoleKind, PolesError> {
    let db = CLASSIFY_DEAD_BAND;
    if k.re.abs() <= db {
        if k.im > db {
            return Ok(PoleKind::Bound);
        }
        if k.im < -db {
            return Ok(PoleKind::Virtual);
        }
        return Err(PolesError::AmbiguousClassification { k });
    }
    if k.im < -db {
        return Ok(PoleKind::Resonance);
    }
    Err(PolesError::AmbiguousClassification { k })
}

/// Breit-Wigner parameters predicted by a resonance pole:
/// E0 = Re E_pole, Gamma = -2 Im E_pole.
pub fn pole_to_breit_wigner(pole: &PoleRecord) -> Result<(f64, f64), PolesError> {
    if pole.kind != PoleKind::Resonance {
        return Err(PolesError::NotAResonance { kind: pole.kind });
    }
    Ok((pole.e_pole.re, -2.0 * pole.e_pole.im))
}

/// All poles of S_l(k) inside `region`: local minima of the matching
/// denominator on a coarse grid seed Newton refinements, and the final
/// count is certified against the argument-principle winding number.
pub fn find_poles(pot: &PotentialSpec, l: u32, region: &ComplexRegion) -> Result<Vec<PoleRecord>, PolesError> {
    let denom = |k: Complex64| jost_denominator(pot, l, k);
    let winding = count_zeros(&denom, region)?;

    let mut found: Vec<Complex64> = Vec::new();
    // Retry with progressively finer seed grids: very narrow resonances
    // can hide between coarse grid nodes.
    for refine in 0..4 {
        if winding == 0 {
            break;
        }
        found.clear();
        let n = SEED_GRID << refine;
        let dx = (region.re_max - region.re_min) / n as f64;
        let dy = (region.im_max - region.im_min) / n as f64;
        let mut grid = Vec::with_capacity((n + 1) * (n + 1));
        for j in 0..=n {
            for i in 0..=n {
                let k = Complex64::new(region.re_min + i as f64 * dx, region.im_min + j as f64 * dy);
                grid.push(denom(k).norm());
            }
        }
        let at = |i: usize, j: usize| grid[j * (n + 1) + i];
        for j in 1..n {
            for i in 1..n {
                let v = at(i, j);
                let is_min = (i - 1..=i + 1).all(|ii| (j - 1..=j + 1).all(|jj| v <= at(ii, jj)));
                if !is_min {
                    continue;
                }
                let seed = Complex64::new(region.re_min + i as f64 * dx, region.im_min + j as f64 * dy);
                let Ok(root) = newton_complex(&denom, None::<fn(Complex64) -> Complex64>, seed, ROOT_TOL) else {
                    continue;
                };
                if !region.contains(root.location) {
                    continue;
                }
                let dup = found.iter().any(|&z| (z - root.location).norm() < 1e-8);
                if !dup {
                    found.push(root.location);
                }
            }
        }
        if found.len() == winding as usize {
            break;
        }
    }
    if found.len() != winding as usize {
        return Err(PolesError::CountMismatch { winding, refined: found.len(), region: *region });
    }
    // deterministic ordering: by Re k, then Im k
    found.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));

    let mut records = Vec::with_capacity(found.len());
    for k in found {
        let kind = classify(k)?;
        records.push(PoleRecord {
            k_pole: k,
            e_pole: k * k,
            kind,
            residual: denom(k).norm(),
            partial_wave: l,
        });
    }
    Ok(records)
}
