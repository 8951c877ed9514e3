use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use stabglue::antype::QuiverSpec;
use stabglue::complex::ExactComplex;
use stabglue::family::Grid;
use stabglue::geometry::RegionParams;
use stabglue::scalar::{int, parse_rational, rat, Rational};
use stabglue::stability::CentralCharge;

/// Largest corpus dimension accepted on the command line.
pub const MAX_CORPUS_DIM: usize = 6;
/// Largest number of path steps.
pub const MAX_PATH_STEPS: usize = 256;
/// Largest number of grid points along one axis.
pub const MAX_GRID_AXIS: usize = 64;
/// Largest number of kernel samples per angle.
pub const MAX_SAMPLES: usize = 10_000_000;
/// Largest absolute corpus shift.
pub const MAX_SHIFT: i64 = 4;

/// An invalid configuration; reported with exit code 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn invalid(msg: impl Into<String>) -> ConfigError {
    ConfigError(msg.into())
}

/// The quiver and the charge used by the single-object HN dump.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    /// Number of vertices of the linear quiver.
    pub vertices: usize,
    /// Charge literal, one complex number per simple module.
    pub charge: String,
}

/// Parameters of the admissible region.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionConfig {
    /// Offset of the first half-plane.
    pub eps1: String,
    /// Offset of the second half-plane.
    pub eps2: String,
}

/// A rectangular scan grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    /// Smallest β.
    pub beta_min: String,
    /// Smallest ω.
    pub omega_min: String,
    /// Spacing along both axes.
    pub step: String,
    /// Number of β values.
    pub beta_count: usize,
    /// Number of ω values.
    pub omega_count: usize,
}

/// Everything a run depends on.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    /// Model for `hn`.
    pub model: ModelConfig,
    /// Charge of the point object of `D^b(k)`.
    pub point_charge: String,
    /// Largest total dimension of corpus objects.
    pub corpus_cap: usize,
    /// Smallest corpus shift.
    pub shift_min: i64,
    /// Largest corpus shift.
    pub shift_max: i64,
    /// Admissible region.
    pub region: RegionConfig,
    /// Scan grid.
    pub grid: GridConfig,
    /// Number of path steps.
    pub path_steps: usize,
    /// Deformation radius.
    pub eps: String,
    /// Seed of the kernel sampler.
    pub seed: u64,
    /// Kernel samples per angle.
    pub samples: usize,
    /// Path of the JSON report.
    pub report: PathBuf,
    /// Optional path of the CSV table written by `scan`.
    pub csv: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            model: ModelConfig {
                vertices: 2,
                charge: "[-1+i, i]".into(),
            },
            point_charge: "i".into(),
            corpus_cap: 3,
            shift_min: -2,
            shift_max: 2,
            region: RegionConfig {
                eps1: "1/3".into(),
                eps2: "-1/2".into(),
            },
            grid: GridConfig {
                beta_min: "1/2".into(),
                omega_min: "1/2".into(),
                step: "1/64".into(),
                beta_count: 8,
                omega_count: 8,
            },
            path_steps: 64,
            eps: "1/16".into(),
            seed: 7,
            samples: 100_000,
            report: PathBuf::from("report.json"),
            csv: None,
        }
    }
}

/// Parsed and range-checked configuration values.
#[derive(Clone, Debug)]
pub struct Validated {
    pub quiver: QuiverSpec,
    pub model_charge: CentralCharge,
    pub point_charge: ExactComplex,
    pub region: RegionParams,
    pub grid: Grid,
    pub eps: Rational,
}

fn rational(field: &str, text: &str) -> Result<Rational, ConfigError> {
    parse_rational(text).map_err(|e| invalid(format!("{field}: {e}")))
}

impl RunConfig {
    /// Reads a JSON configuration file.
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Parses the textual form.
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| invalid(format!("bad configuration: {e}")))
    }

    /// The textual form.
    #[cfg(test)]
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configuration serializes")
    }

    /// Corpus shifts.
    pub fn shifts(&self) -> RangeInclusive<i64> {
        self.shift_min..=self.shift_max
    }

    /// Parses every literal and checks every bound.
    pub fn validate(&self) -> Result<Validated, ConfigError> {
        let quiver = QuiverSpec::new(self.model.vertices)
            .map_err(|e| invalid(format!("model.vertices: {e}")))?;
        let model_charge: CentralCharge = self
            .model
            .charge
            .parse()
            .map_err(|e| invalid(format!("model.charge: {e}")))?;
        if model_charge.rank() != self.model.vertices {
            return Err(invalid(format!(
                "model.charge has {} entries for {} vertices",
                model_charge.rank(),
                self.model.vertices
            )));
        }
        let point_charge: ExactComplex = self
            .point_charge
            .parse()
            .map_err(|e| invalid(format!("point_charge: {e}")))?;
        if !(1..=MAX_CORPUS_DIM).contains(&self.corpus_cap) {
            return Err(invalid(format!(
                "corpus_cap must lie in 1..={MAX_CORPUS_DIM}"
            )));
        }
        if self.shift_min > self.shift_max
            || self.shift_min < -MAX_SHIFT
            || self.shift_max > MAX_SHIFT
        {
            return Err(invalid(format!(
                "corpus shifts must form a range inside -{MAX_SHIFT}..={MAX_SHIFT}"
            )));
        }
        let region = RegionParams::new(
            rational("region.eps1", &self.region.eps1)?,
            rational("region.eps2", &self.region.eps2)?,
        )
        .map_err(|e| invalid(format!("region: {e}")))?;
        let step = rational("grid.step", &self.grid.step)?;
        if step <= int(0) {
            return Err(invalid("grid.step must be positive"));
        }
        for (name, count) in [
            ("grid.beta_count", self.grid.beta_count),
            ("grid.omega_count", self.grid.omega_count),
        ] {
            if !(1..=MAX_GRID_AXIS).contains(&count) {
                return Err(invalid(format!("{name} must lie in 1..={MAX_GRID_AXIS}")));
            }
        }
        let omega_min = rational("grid.omega_min", &self.grid.omega_min)?;
        if omega_min <= int(0) {
            return Err(invalid("grid.omega_min must be positive"));
        }
        let grid = Grid {
            beta_min: rational("grid.beta_min", &self.grid.beta_min)?,
            beta_step: step.clone(),
            beta_count: self.grid.beta_count,
            omega_min,
            omega_step: step,
            omega_count: self.grid.omega_count,
        };
        if !(2..=MAX_PATH_STEPS).contains(&self.path_steps) {
            return Err(invalid(format!(
                "path_steps must lie in 2..={MAX_PATH_STEPS}"
            )));
        }
        let eps = rational("eps", &self.eps)?;
        if eps <= int(0) || eps >= rat(1, 8) {
            return Err(invalid("eps must lie strictly between 0 and 1/8"));
        }
        if !(1..=MAX_SAMPLES).contains(&self.samples) {
            return Err(invalid(format!("samples must lie in 1..={MAX_SAMPLES}")));
        }
        Ok(Validated {
            quiver,
            model_charge,
            point_charge,
            region,
            grid,
            eps,
        })
    }
}
