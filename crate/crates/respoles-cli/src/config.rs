//! TOML run configurations: one schema per subcommand, strict keys,
//! mandatory `version` field.

use serde::Deserialize;

pub const CONFIG_VERSION: u32 = 1;

#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

/// A potential given as (outer_radius, height) pairs; an empty list is
/// the free particle.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialConfig {
    pub segments: Vec<[f64; 2]>,
}

impl PotentialConfig {
    pub fn build(&self) -> Result<respoles::radial::PotentialSpec, ConfigError> {
        let pairs: Vec<(f64, f64)> = self.segments.iter().map(|s| (s[0], s[1])).collect();
        respoles::radial::PotentialSpec::new(&pairs).map_err(|e| ConfigError(e.to_string()))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl GridConfig {
    pub fn build(&self) -> Result<Vec<f64>, ConfigError> {
        if !(self.min < self.max) || self.points < 2 {
            return Err(ConfigError("grid needs min < max and at least 2 points".into()));
        }
        let n = self.points;
        Ok((0..n)
            .map(|i| self.min + (self.max - self.min) * i as f64 / (n - 1) as f64)
            .collect())
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XsecConfig {
    pub potential: PotentialConfig,
    pub l_max: u32,
    pub energy_grid: GridConfig,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolesConfig {
    pub potential: PotentialConfig,
    pub partial_wave: u32,
    /// Search rectangle in the complex momentum plane:
    /// [re_min, re_max, im_min, im_max].
    pub region: [f64; 4],
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitConfig {
    pub potential: PotentialConfig,
    pub l_max: u32,
    pub energy_grid: GridConfig,
    /// Standard deviation of synthetic Gaussian noise added to the
    /// sampled cross section; zero disables it.
    pub noise_sigma: f64,
    /// Seed for the noise stream; mandatory so runs are reproducible.
    pub seed: u64,
    /// Optional pole-comparison block: search rectangle for the
    /// resonance pole in the momentum plane.
    pub pole_region: Option<[f64; 4]>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GamowConfig {
    pub resonance_energy: f64,
    pub width: f64,
    pub time_grid: GridConfig,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WardPoint {
    pub q: [f64; 4],
    pub xi: f64,
    pub width: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WardConfig {
    pub mass: f64,
    pub points: Vec<WardPoint>,
    pub pass_tolerance: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DysonConfig {
    pub big_mass: f64,
    pub small_mass: f64,
    pub coupling: f64,
    pub s_grid: GridConfig,
}

pub fn load<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
    let mut table: toml::Value =
        toml::from_str(&text).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
    let version = table
        .get("version")
        .and_then(|v| v.as_integer())
        .ok_or_else(|| ConfigError("missing required key `version`".into()))?;
    if version != CONFIG_VERSION as i64 {
        return Err(ConfigError(format!(
            "unsupported config version {version}; this build reads version {CONFIG_VERSION}"
        )));
    }
    if let Some(t) = table.as_table_mut() {
        t.remove("version");
    }
    table.try_into().map_err(|e| ConfigError(format!("{}: {e}", path.display())))
}
