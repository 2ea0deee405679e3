//! Experiment configuration files.
//!
//! Configs are TOML: top-level run settings plus `[model]`, `[scheme]`,
//! `[norm]`, `[target]` and `[output]` tables. See the README for the full
//! grammar.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::environments::{BaseLaw, WeightModel};
use crate::error::{Error, Result};
use crate::quenched::{Divisor, EmpiricalDistribution, Normalization};
use crate::selectors::{SchemeFamily, SubsetGround, SubsetSize};
use crate::theory::TargetLaw;

pub const DEFAULT_EPSILON: f64 = 0.05;
pub const DEFAULT_N_ENV: usize = 50;
pub const DEFAULT_N_SEL: usize = 2000;
pub const DEFAULT_BL_STEP: f64 = 0.05;
pub const DEFAULT_ORACLE_SIZE: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "default_name")]
    pub name: String,
    #[serde(default)]
    pub experiment: ExperimentKind,
    pub seed: u64,
    pub sizes: Vec<usize>,
    #[serde(default = "default_n_env")]
    pub n_env: usize,
    #[serde(default = "default_n_sel")]
    pub n_sel: usize,
    #[serde(default = "default_metrics")]
    pub metrics: Vec<Metric>,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    #[serde(default = "default_cf_grid")]
    pub cf_grid: Vec<f64>,
    #[serde(default = "default_bl_step")]
    pub bl_step: f64,
    pub model: Option<ModelSpec>,
    pub scheme: SchemeSpec,
    #[serde(default)]
    pub norm: NormSpec,
    #[serde(default)]
    pub target: TargetSpec,
    pub output: Option<OutputSpec>,
}

fn default_name() -> String {
    "experiment".into()
}
fn default_n_env() -> usize {
    DEFAULT_N_ENV
}
fn default_n_sel() -> usize {
    DEFAULT_N_SEL
}
fn default_metrics() -> Vec<Metric> {
    vec![Metric::Ks, Metric::W1]
}
fn default_epsilon() -> f64 {
    DEFAULT_EPSILON
}
fn default_cf_grid() -> Vec<f64> {
    vec![0.25, 0.5, 1.0, 2.0]
}
fn default_bl_step() -> f64 {
    DEFAULT_BL_STEP
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    /// Two-level Monte Carlo: environments outside, selections inside.
    #[default]
    Quenched,
    /// Exact `L(N)` per size, no sampling.
    Lambda,
}

/// Per-environment statistic recorded in the result rows.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Metric {
    W1,
    Ks,
    /// Bank-maximum lower bound on the bounded-Lipschitz distance.
    Bl,
    Cf,
    /// `int max(x - theta, 0) d mu_w`.
    Hinge(f64),
    /// Exact `L` of the scheme; used by lambda experiments.
    L,
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Metric::W1 => f.write_str("w1"),
            Metric::Ks => f.write_str("ks"),
            Metric::Bl => f.write_str("bl"),
            Metric::Cf => f.write_str("cf"),
            Metric::Hinge(theta) => write!(f, "hinge:{theta}"),
            Metric::L => f.write_str("L"),
        }
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "w1" => Ok(Metric::W1),
            "ks" => Ok(Metric::Ks),
            "bl" => Ok(Metric::Bl),
            "cf" => Ok(Metric::Cf),
            "L" => Ok(Metric::L),
            _ => match s.strip_prefix("hinge:").map(str::parse::<f64>) {
                Some(Ok(theta)) if theta.is_finite() => Ok(Metric::Hinge(theta)),
                _ => Err(Error::UnknownMetric(s.to_string())),
            },
        }
    }
}

impl TryFrom<String> for Metric {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Metric> for String {
    fn from(m: Metric) -> String {
        m.to_string()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ModelSpec {
    /// `base` is a law name; `p` defaults to `inf` (bounded laws only) and
    /// `k` to the exact moment `E|w|^p`.
    Iid {
        base: String,
        #[serde(default = "infinity")]
        p: f64,
        k: Option<f64>,
    },
    Sphere,
    SimplexEq,
    SimplexLe,
    LayeredStable {
        alpha: f64,
        tau: f64,
        #[serde(default = "one")]
        kappa: f64,
        #[serde(default)]
        beta: f64,
    },
    PointMass {
        value: f64,
    },
}

fn infinity() -> f64 {
    f64::INFINITY
}
fn one() -> f64 {
    1.0
}

impl ModelSpec {
    pub fn build(&self) -> Result<WeightModel> {
        let model = match self {
            ModelSpec::Iid { base, p, k } => {
                let base: BaseLaw = base.parse().map_err(config_err)?;
                let k = k.unwrap_or_else(|| if p.is_finite() { base.abs_moment(*p) } else { 1.0 });
                WeightModel::IidMoment { base, p: *p, k }
            }
            ModelSpec::Sphere => WeightModel::SphereUniform,
            ModelSpec::SimplexEq => WeightModel::SimplexEq,
            ModelSpec::SimplexLe => WeightModel::SimplexLe,
            &ModelSpec::LayeredStable { alpha, tau, kappa, beta } => WeightModel::LayeredStable { alpha, tau, kappa, beta },
            &ModelSpec::PointMass { value } => WeightModel::PointMass { value },
        };
        model.validate().map_err(config_err)?;
        Ok(model)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SchemeSpec {
    /// Up-right paths on the `N x floor(aspect N)` grid.
    Path {
        #[serde(default = "one")]
        aspect: f64,
    },
    /// Paths on the `N x N` grid through `(ceil(a N), ceil(b N))` for each
    /// `[a, b]` in `waypoints`.
    PathThrough { waypoints: Vec<[f64; 2]> },
    /// Paths on the `N x N` grid avoiding a central square of side
    /// `floor(beta N)`.
    PathAvoid { beta: f64 },
    /// `m`-subsets of `{1..n}` with `n = round(N^ground_exponent)`.
    Subset {
        #[serde(default = "one")]
        ground_exponent: f64,
        m: SubsetCount,
    },
    /// Permutation matrices on the `N x N` grid.
    Permutation,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubsetCount {
    Fixed(usize),
    /// `"path-length"` (`2N - 1`) or `"N^e"` for `round(N^e)`.
    Named(String),
}

impl SchemeSpec {
    pub fn family(&self) -> Result<SchemeFamily> {
        Ok(match self {
            &SchemeSpec::Path { aspect } => SchemeFamily::Path { aspect },
            SchemeSpec::PathThrough { waypoints } => {
                SchemeFamily::PathThrough { fractions: waypoints.iter().map(|w| (w[0], w[1])).collect() }
            }
            &SchemeSpec::PathAvoid { beta } => SchemeFamily::PathAvoid { beta },
            SchemeSpec::Subset { ground_exponent, m } => {
                let size = match m {
                    SubsetCount::Fixed(k) => SubsetSize::Fixed(*k),
                    SubsetCount::Named(s) if s == "path-length" => SubsetSize::PathLength,
                    SubsetCount::Named(s) => match s.strip_prefix("N^").map(str::parse::<f64>) {
                        Some(Ok(e)) => SubsetSize::Power(e),
                        _ => return Err(Error::Config(format!("subset size {s:?} is not a count, \"path-length\" or \"N^e\""))),
                    },
                };
                SchemeFamily::Subset { ground: SubsetGround { exponent: *ground_exponent }, size }
            }
            SchemeSpec::Permutation => SchemeFamily::Permutation,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormSpec {
    #[serde(default = "two")]
    pub alpha: f64,
    /// `"m-power"` divides by `m^{1/alpha}`, `"unit"` leaves the sum alone.
    #[serde(default = "m_power")]
    pub divisor: String,
    /// When set, divide by `m^exponent` instead.
    pub exponent: Option<f64>,
    #[serde(default = "yes")]
    pub center: bool,
}

fn two() -> f64 {
    2.0
}
fn m_power() -> String {
    "m-power".into()
}
fn yes() -> bool {
    true
}

impl Default for NormSpec {
    fn default() -> Self {
        NormSpec { alpha: 2.0, divisor: m_power(), exponent: None, center: true }
    }
}

impl NormSpec {
    /// The normalization for selections of size `m`.
    pub fn at(&self, m: usize) -> Result<Normalization> {
        let divisor = match (self.exponent, self.divisor.as_str()) {
            (Some(e), _) => Divisor::Explicit((m as f64).powf(e)),
            (None, "m-power") => Divisor::MPower,
            (None, "unit") => Divisor::Unit,
            (None, other) => return Err(Error::Config(format!("unknown divisor {other:?}"))),
        };
        Normalization::new(self.alpha, divisor, self.center).map_err(config_err)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TargetSpec {
    #[default]
    Normal,
    Gamma { shape: u32 },
    /// `m`-fold convolution of `base`, represented by an oracle sample.
    Convolution {
        base: String,
        m: usize,
        #[serde(default = "oracle_size")]
        oracle_size: usize,
    },
    /// Layered stable law at finite `n`; `n` defaults to the selection size.
    StableFiniteN {
        alpha: f64,
        tau: f64,
        #[serde(default = "one")]
        kappa: f64,
        #[serde(default)]
        beta: f64,
        n: Option<usize>,
    },
}

fn oracle_size() -> usize {
    DEFAULT_ORACLE_SIZE
}

impl TargetSpec {
    /// The target for selections of size `m`.
    pub fn build<R: Rng + ?Sized>(&self, m: usize, rng: &mut R) -> Result<TargetLaw> {
        match self {
            TargetSpec::Normal => Ok(TargetLaw::Normal01),
            TargetSpec::Gamma { shape } => TargetLaw::gamma(*shape).map_err(config_err),
            TargetSpec::Convolution { base, m: power, oracle_size } => {
                let law: BaseLaw = base.parse().map_err(config_err)?;
                if *oracle_size == 0 {
                    return Err(Error::Config("oracle_size must be positive".into()));
                }
                let xs = (0..*oracle_size).map(|_| law.sample(rng)).collect();
                TargetLaw::convolution_power(&EmpiricalDistribution::new(xs)?, *power, rng).map_err(config_err)
            }
            &TargetSpec::StableFiniteN { alpha, tau, kappa, beta, n } => {
                TargetLaw::stable_finite_n(alpha, tau, kappa, beta, n.unwrap_or(m)).map_err(config_err)
            }
        }
    }

    /// Whether the target depends on the random oracle stream.
    pub fn is_random(&self) -> bool {
        matches!(self, TargetSpec::Convolution { .. })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub path: PathBuf,
    pub format: Option<OutputFormat>,
}

impl OutputSpec {
    /// Explicit format, else from the extension, else CSV.
    pub fn resolved_format(&self) -> OutputFormat {
        self.format.unwrap_or_else(|| match self.path.extension().and_then(|e| e.to_str()) {
            Some("json") => OutputFormat::Json,
            _ => OutputFormat::Csv,
        })
    }
}

fn config_err(e: Error) -> Error {
    match e {
        Error::Parameter(msg) => Error::Config(msg),
        other => other,
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let config: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Config(msg));
        if self.sizes.is_empty() {
            return fail("sizes must not be empty".into());
        }
        if self.sizes.windows(2).any(|w| w[0] >= w[1]) {
            return fail(format!("sizes must be strictly increasing, got {:?}", self.sizes));
        }
        if self.sizes[0] == 0 {
            return fail("sizes must be positive".into());
        }
        self.scheme.family()?;
        match self.experiment {
            ExperimentKind::Lambda => {
                if self.sizes.len() < 3 {
                    return fail("a lambda experiment needs at least 3 sizes".into());
                }
            }
            ExperimentKind::Quenched => {
                if self.n_env == 0 || self.n_sel == 0 {
                    return fail("n_env and n_sel must be at least 1".into());
                }
                if !(self.epsilon > 0.0) {
                    return fail(format!("epsilon must be positive, got {}", self.epsilon));
                }
                if self.metrics.is_empty() {
                    return fail("metrics must not be empty".into());
                }
                if self.metrics.contains(&Metric::L) {
                    return fail("metric L is only available in lambda experiments".into());
                }
                if !(self.bl_step > 0.0) {
                    return fail(format!("bl_step must be positive, got {}", self.bl_step));
                }
                if self.cf_grid.iter().any(|t| !t.is_finite()) {
                    return fail("cf_grid entries must be finite".into());
                }
                match &self.model {
                    Some(model) => {
                        model.build()?;
                    }
                    None => return fail("quenched experiments need a [model] table".into()),
                }
                self.norm.at(1)?;
            }
        }
        Ok(())
    }

    /// The weight model; present in every validated quenched config.
    pub fn weight_model(&self) -> Result<WeightModel> {
        self.model
            .as_ref()
            .ok_or_else(|| Error::Config("missing [model] table".into()))?
            .build()
    }
}
