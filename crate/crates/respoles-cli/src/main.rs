//! Command-line front end: reads a TOML run configuration, dispatches
//! to the analysis library, and writes a deterministic table or report.

mod config;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use config::*;
use respoles::gamow::{semigroup_evolve, survival_table, ComplexMass, GamowState};
use respoles::numerics::ComplexRegion;
use respoles::poles::{find_poles, pole_to_breit_wigner, PoleKind, PolesError};
use respoles::radial::cross_section;
use respoles::resonance::fit_breit_wigner;
use respoles::veltman::{
    dressed_propagator, find_complex_pole, ward_report, GaugeConfig, SelfEnergyModel, Sheet,
    VeltmanError, VeltmanModel,
};

/// Exit codes: 0 success, 2 config error, 3 numerical failure,
/// 4 consistency-check failure.
const EXIT_CONFIG: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;
const EXIT_CONSISTENCY: u8 = 4;

#[derive(Parser)]
#[command(name = "respoles", version, about = "Resonance-analysis toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Path to the TOML run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Progress messages on stderr.
    #[arg(long)]
    verbose: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Partial-wave cross-section table over an energy grid.
    Xsec(RunArgs),
    /// S-matrix poles in a complex-momentum search region.
    Poles(RunArgs),
    /// Breit-Wigner fit of a sampled cross section, optionally
    /// compared against the pole position.
    Fit(RunArgs),
    /// Decay table: semigroup law versus quadrature survival amplitude.
    Gamow(RunArgs),
    /// Ward-identity residuals of the three vector-propagator forms.
    Ward(RunArgs),
    /// Dressed-propagator magnitude on a real-s grid plus its complex pole.
    Dyson(RunArgs),
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn config(msg: impl Into<String>) -> Self {
        Failure { code: EXIT_CONFIG, message: msg.into() }
    }

    fn numerical(msg: impl Into<String>) -> Self {
        Failure { code: EXIT_NUMERICAL, message: msg.into() }
    }

    fn consistency(msg: impl Into<String>) -> Self {
        Failure { code: EXIT_CONSISTENCY, message: msg.into() }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::config(e.to_string())
    }
}

/// Full-precision decimal (17 significant digits) for regression diffs.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (args, result) = match &cli.command {
        Command::Xsec(a) => (a, cmd_xsec(a)),
        Command::Poles(a) => (a, cmd_poles(a)),
        Command::Fit(a) => (a, cmd_fit(a)),
        Command::Gamow(a) => (a, cmd_gamow(a)),
        Command::Ward(a) => (a, cmd_ward(a)),
        Command::Dyson(a) => (a, cmd_dyson(a)),
    };
    match result {
        Ok(output) => {
            // output is assembled fully in memory and written once, so
            // no failure can leave a partial file behind
            if let Some(path) = &args.out {
                if let Err(e) = std::fs::write(path, output) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(EXIT_NUMERICAL);
                }
            } else {
                print!("{output}");
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn progress(args: &RunArgs, msg: &str) {
    if args.verbose {
        eprintln!("{msg}");
    }
}

fn cmd_xsec(args: &RunArgs) -> Result<String, Failure> {
    let cfg: XsecConfig = load(&args.config)?;
    let pot = cfg.potential.build()?;
    let grid = cfg.energy_grid.build()?;
    progress(args, &format!("cross section: {} energies, l <= {}", grid.len(), cfg.l_max));
    let rows = cross_section(&pot, cfg.l_max, &grid)
        .map_err(|e| Failure::numerical(e.to_string()))?;
    let mut out = String::new();
    write!(out, "E").unwrap();
    for l in 0..=cfg.l_max {
        write!(out, " sigma_l{l}").unwrap();
    }
    writeln!(out, " sigma_total").unwrap();
    for row in rows {
        write!(out, "{}", num(row.energy)).unwrap();
        for s in &row.sigma_l {
            write!(out, " {}", num(*s)).unwrap();
        }
        writeln!(out, " {}", num(row.sigma_total)).unwrap();
    }
    Ok(out)
}

fn region_from(r: [f64; 4]) -> Result<ComplexRegion, Failure> {
    ComplexRegion::new(r[0], r[1], r[2], r[3]).map_err(|e| Failure::config(e.to_string()))
}

fn cmd_poles(args: &RunArgs) -> Result<String, Failure> {
    let cfg: PolesConfig = load(&args.config)?;
    let pot = cfg.potential.build()?;
    let region = region_from(cfg.region)?;
    progress(args, "searching for poles");
    let poles = find_poles(&pot, cfg.partial_wave, &region).map_err(|e| match e {
        PolesError::CountMismatch { .. } => Failure::consistency(e.to_string()),
        other => Failure::numerical(other.to_string()),
    })?;
    let mut out = String::new();
    writeln!(out, "# pole report: partial wave l = {}", cfg.partial_wave).unwrap();
    writeln!(
        out,
        "# region: re_k in [{}, {}], im_k in [{}, {}]",
        num(cfg.region[0]),
        num(cfg.region[1]),
        num(cfg.region[2]),
        num(cfg.region[3])
    )
    .unwrap();
    writeln!(out, "count {}", poles.len()).unwrap();
    for p in &poles {
        writeln!(
            out,
            "pole kind={} k_re={} k_im={} e_re={} e_im={} residual={}",
            p.kind,
            num(p.k_pole.re),
            num(p.k_pole.im),
            num(p.e_pole.re),
            num(p.e_pole.im),
            num(p.residual)
        )
        .unwrap();
    }
    Ok(out)
}

/// Deterministic standard-normal deviates via Box-Muller over a seeded
/// ChaCha stream.
fn gaussian_noise(seed: u64, n: usize) -> Vec<f64> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
        let u2: f64 = rng.gen_range(0.0..1.0);
        let r = (-2.0 * u1.ln()).sqrt();
        let th = std::f64::consts::TAU * u2;
        out.push(r * th.cos());
        if out.len() < n {
            out.push(r * th.sin());
        }
    }
    out
}

fn cmd_fit(args: &RunArgs) -> Result<String, Failure> {
    let cfg: FitConfig = load(&args.config)?;
    if cfg.noise_sigma < 0.0 {
        return Err(Failure::config("noise_sigma must be nonnegative"));
    }
    let pot = cfg.potential.build()?;
    let grid = cfg.energy_grid.build()?;
    progress(args, "sampling cross section");
    let rows = cross_section(&pot, cfg.l_max, &grid)
        .map_err(|e| Failure::numerical(e.to_string()))?;
    let mut values: Vec<f64> = rows.iter().map(|r| r.sigma_total).collect();
    if cfg.noise_sigma > 0.0 {
        for (v, n) in values.iter_mut().zip(gaussian_noise(cfg.seed, grid.len())) {
            *v += cfg.noise_sigma * n;
        }
    }
    progress(args, "fitting line shape");
    let fit = fit_breit_wigner(&grid, &values).map_err(|e| Failure::numerical(e.to_string()))?;
    let mut out = String::new();
    writeln!(out, "# line-shape fit").unwrap();
    writeln!(out, "e0 {}", num(fit.e0)).unwrap();
    writeln!(out, "gamma {}", num(fit.gamma)).unwrap();
    writeln!(out, "amplitude {}", num(fit.amplitude)).unwrap();
    writeln!(out, "background_b0 {}", num(fit.background[0])).unwrap();
    writeln!(out, "background_b1 {}", num(fit.background[1])).unwrap();
    writeln!(out, "e0_stderr {}", num(fit.e0_stderr)).unwrap();
    writeln!(out, "gamma_stderr {}", num(fit.gamma_stderr)).unwrap();
    writeln!(out, "rms_residual {}", num(fit.rms_residual)).unwrap();
    if let Some(r) = cfg.pole_region {
        progress(args, "locating resonance pole for comparison");
        let region = region_from(r)?;
        let poles = find_poles(&pot, 0, &region).map_err(|e| match e {
            PolesError::CountMismatch { .. } => Failure::consistency(e.to_string()),
            other => Failure::numerical(other.to_string()),
        })?;
        let res = poles
            .iter()
            .find(|p| p.kind == PoleKind::Resonance && p.k_pole.re > 0.0)
            .ok_or_else(|| Failure::consistency("no resonance pole in the comparison region"))?;
        let (e0_pole, gamma_pole) = pole_to_breit_wigner(res).unwrap();
        writeln!(out, "# pole comparison").unwrap();
        writeln!(out, "pole_e0 {}", num(e0_pole)).unwrap();
        writeln!(out, "pole_gamma {}", num(gamma_pole)).unwrap();
        writeln!(out, "e0_diff_over_gamma {}", num((fit.e0 - e0_pole) / gamma_pole)).unwrap();
        writeln!(out, "gamma_diff_over_gamma {}", num((fit.gamma - gamma_pole) / gamma_pole))
            .unwrap();
    }
    Ok(out)
}

fn cmd_gamow(args: &RunArgs) -> Result<String, Failure> {
    let cfg: GamowConfig = load(&args.config)?;
    let times = cfg.time_grid.build()?;
    if times.iter().any(|&t| t < 0.0) {
        return Err(Failure::config(
            "time grid contains negative values; decay evolution is defined for t >= 0 only",
        ));
    }
    let mass = ComplexMass::from_energy_width(cfg.resonance_energy, cfg.width)
        .map_err(|e| Failure::config(e.to_string()))?;
    let state = GamowState::new(mass, 0, 0).map_err(|e| Failure::config(e.to_string()))?;
    progress(args, &format!("decay table over {} times", times.len()));
    let survival =
        survival_table(&mass, &times).map_err(|e| Failure::numerical(e.to_string()))?;
    let mut out = String::new();
    writeln!(out, "t semigroup_p survival_p ratio").unwrap();
    for row in survival {
        let evolved = semigroup_evolve(&state, row.t)
            .map_err(|e| Failure::numerical(e.to_string()))?;
        let semi = evolved.norm.norm_sqr();
        writeln!(
            out,
            "{} {} {} {}",
            num(row.t),
            num(semi),
            num(row.probability),
            num(row.probability / semi)
        )
        .unwrap();
    }
    Ok(out)
}

fn cmd_ward(args: &RunArgs) -> Result<String, Failure> {
    let cfg: WardConfig = load(&args.config)?;
    if !(cfg.pass_tolerance > 0.0) {
        return Err(Failure::config("pass_tolerance must be positive"));
    }
    if cfg.points.is_empty() {
        return Err(Failure::config("at least one sample point is required"));
    }
    let mut out = String::new();
    writeln!(out, "# Ward-identity residuals, pass tolerance {}", num(cfg.pass_tolerance))
        .unwrap();
    writeln!(out, "q0 q1 q2 q3 xi width stable naive corrected stable_ok naive_ok corrected_ok")
        .unwrap();
    for p in &cfg.points {
        let gc = GaugeConfig::new(p.xi, cfg.mass, p.width, p.q)
            .map_err(|e| Failure::config(e.to_string()))?;
        let rep = ward_report(&gc).map_err(|e| Failure::numerical(e.to_string()))?;
        let flag = |r: f64| if r < cfg.pass_tolerance { "pass" } else { "fail" };
        writeln!(
            out,
            "{} {} {} {} {} {} {} {} {} {} {} {}",
            num(p.q[0]),
            num(p.q[1]),
            num(p.q[2]),
            num(p.q[3]),
            num(p.xi),
            num(p.width),
            num(rep.stable),
            num(rep.naive),
            num(rep.corrected),
            flag(rep.stable),
            flag(rep.naive),
            flag(rep.corrected)
        )
        .unwrap();
    }
    Ok(out)
}

fn cmd_dyson(args: &RunArgs) -> Result<String, Failure> {
    let cfg: DysonConfig = load(&args.config)?;
    let model = VeltmanModel::new(cfg.big_mass, cfg.small_mass, cfg.coupling)
        .map_err(|e| Failure::config(e.to_string()))?;
    progress(args, "calibrating self-energy subtractions");
    let se = SelfEnergyModel::new(model).map_err(|e| Failure::numerical(e.to_string()))?;
    progress(args, "locating complex pole");
    let pole = find_complex_pole(&se).map_err(|e| match e {
        VeltmanError::PoleImplausible { .. } => Failure::consistency(e.to_string()),
        other => Failure::numerical(other.to_string()),
    })?;
    let grid = cfg.s_grid.build()?;
    let m2 = cfg.big_mass * cfg.big_mass;
    let m_small2 = cfg.small_mass * cfg.small_mass;
    let mut out = String::new();
    writeln!(out, "# dressed propagator magnitude and complex pole").unwrap();
    writeln!(out, "pole_s_re {}", num(pole.s_pole().re)).unwrap();
    writeln!(out, "pole_s_im {}", num(pole.s_pole().im)).unwrap();
    writeln!(out, "pole_width {}", num(pole.width())).unwrap();
    writeln!(out, "pole_residual {}", num(pole.residual)).unwrap();
    writeln!(out, "s abs_dressed abs_stable").unwrap();
    for &s in &grid {
        let sc = Complex64::new(s, 0.0);
        let dressed = dressed_propagator(sc, m2, |z| se.self_energy(z, Sheet::First))
            .map_err(|e| Failure::numerical(e.to_string()))?;
        // stable comparison: free propagator with its pole at the
        // light mass squared
        let stable = dressed_propagator(sc, m_small2, |_| Ok(Complex64::new(0.0, 0.0)))
            .map_err(|e| Failure::numerical(e.to_string()))?;
        writeln!(out, "{} {} {}", num(s), num(dressed.norm()), num(stable.norm())).unwrap();
    }
    Ok(out)
}
