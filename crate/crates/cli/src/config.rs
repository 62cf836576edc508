use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use shadowrank::geometry::GeometrySpec;

use crate::CliError;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_TAUS: [f64; 4] = [1e-3, 1e-6, 1e-9, 1e-12];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    DiscsMethods,
    DiscsScaling,
    SlantedSquares,
    Planar2d3d,
    QuasiPlanarSlab,
    ParallelLines,
    LineModes,
    Custom,
}

impl Experiment {
    pub const ALL: [Experiment; 8] = [
        Self::DiscsMethods,
        Self::DiscsScaling,
        Self::SlantedSquares,
        Self::Planar2d3d,
        Self::QuasiPlanarSlab,
        Self::ParallelLines,
        Self::LineModes,
        Self::Custom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::DiscsMethods => "discs-methods",
            Self::DiscsScaling => "discs-scaling",
            Self::SlantedSquares => "slanted-squares",
            Self::Planar2d3d => "planar-2d3d",
            Self::QuasiPlanarSlab => "quasi-planar-slab",
            Self::ParallelLines => "parallel-lines",
            Self::LineModes => "line-modes",
            Self::Custom => "custom",
        }
    }

    /// Geometry sweep used when the config lists no cases.
    pub fn default_cases(self, full: bool) -> Vec<GeometrySpec> {
        use std::f64::consts::FRAC_PI_4;
        let pick = |desk: &[f64], big: &[f64]| if full { big.to_vec() } else { desk.to_vec() };
        match self {
            Self::DiscsMethods => pick(&[2.5, 5.0, 10.0], &[2.5, 5.0, 10.0, 64.0])
                .into_iter()
                .map(|a| GeometrySpec::discs(a, a))
                .collect(),
            Self::DiscsScaling => pick(&[4.0, 8.0, 16.0], &[4.0, 8.0, 16.0, 32.0])
                .into_iter()
                .map(|a| GeometrySpec::discs(a, 2.0 * a))
                .collect(),
            Self::SlantedSquares => pick(&[8.0, 16.0], &[8.0, 16.0, 30.0])
                .into_iter()
                .map(|a| GeometrySpec::slanted(a, a, FRAC_PI_4))
                .collect(),
            Self::Planar2d3d => pick(&[4.0, 8.0], &[4.0, 8.0, 16.0, 30.0])
                .into_iter()
                .flat_map(|a| [GeometrySpec::coplanar(a).with_dim(3), GeometrySpec::coplanar(a).with_dim(2)])
                .collect(),
            Self::QuasiPlanarSlab => {
                let a = if full { 8.0 } else { 4.0 };
                [0.25, 0.5].into_iter().map(|h| GeometrySpec::plate_and_frame(a, h)).collect()
            }
            Self::ParallelLines => {
                pick(&[16.0, 32.0], &[16.0, 32.0, 400.0]).into_iter().map(|a| GeometrySpec::lines(a, a, 0.0)).collect()
            }
            Self::LineModes => {
                pick(&[16.0], &[16.0, 400.0]).into_iter().map(|a| GeometrySpec::lines(a, a, 0.0)).collect()
            }
            Self::Custom => Vec::new(),
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Self::ALL.into_iter().find(|e| e.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Self::ALL.iter().map(|e| e.name()).collect();
            CliError::Config(format!("unknown experiment '{s}', valid experiments: {}", names.join(", ")))
        })
    }
}

/// Singular value solver selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodChoice {
    /// Dense below [`AUTO_DENSE_ENTRIES`] block entries, randomized above.
    #[default]
    Auto,
    Dense,
    Randomized,
}

pub const AUTO_DENSE_ENTRIES: usize = 1500 * 1500;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: String,
    /// Replaces the experiment's default geometry sweep.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cases: Vec<GeometrySpec>,
    #[serde(default = "default_taus")]
    pub taus: Vec<f64>,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default = "default_true")]
    pub plot: bool,
    #[serde(default)]
    pub method: MethodChoice,
    /// Remainder group size; `None` runs up to the rank at the smallest tau.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub remainder_count: Option<usize>,
    /// Edge band width in wavelengths.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub band_width: Option<f64>,
    #[serde(default)]
    pub smoothing: bool,
    #[serde(default)]
    pub full: bool,
}

fn default_taus() -> Vec<f64> {
    DEFAULT_TAUS.to_vec()
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

fn default_true() -> bool {
    true
}

impl ExperimentConfig {
    pub fn new(experiment: Experiment) -> Self {
        Self {
            experiment: experiment.name().to_string(),
            cases: Vec::new(),
            taus: default_taus(),
            seed: DEFAULT_SEED,
            out: None,
            plot: true,
            method: MethodChoice::Auto,
            remainder_count: None,
            band_width: None,
            smoothing: false,
            full: false,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn experiment(&self) -> Result<Experiment, CliError> {
        self.experiment.parse()
    }

    pub fn resolved_cases(&self) -> Result<Vec<GeometrySpec>, CliError> {
        let cases =
            if self.cases.is_empty() { self.experiment()?.default_cases(self.full) } else { self.cases.clone() };
        if cases.is_empty() {
            return Err(CliError::Config(format!("experiment '{}' needs a non-empty 'cases' list", self.experiment)));
        }
        for c in &cases {
            c.validate().map_err(|e| CliError::Config(e.to_string()))?;
        }
        Ok(cases)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.experiment()?;
        if self.taus.is_empty() || self.taus.iter().any(|t| !(*t > 0.0 && *t < 1.0)) {
            return Err(CliError::Config("taus must be a non-empty list of values in (0, 1)".into()));
        }
        if let Some(w) = self.band_width {
            if !(w > 0.0 && w.is_finite()) {
                return Err(CliError::Config("band_width must be positive".into()));
            }
        }
        self.resolved_cases().map(|_| ())
    }

    pub fn min_tau(&self) -> f64 {
        self.taus.iter().cloned().fold(1.0, f64::min)
    }

    pub fn out_dir(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| PathBuf::from("out")).join(&self.experiment)
    }
}
