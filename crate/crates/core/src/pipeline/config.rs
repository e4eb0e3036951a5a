use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::centrality::{ClosenessMode, DEFAULT_FIT_RANGE};
use crate::{Error, Result};

pub const DEFAULT_SHUFFLES: usize = 1000;
pub const DEFAULT_THRESHOLDS: &str = "0.1:0.7:0.1";
/// Threshold used for the single-graph centrality tables.
pub const ANALYSIS_THRESHOLD: f64 = 0.7;

/// Everything a pipeline run depends on besides the input files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub prices: PathBuf,
    pub meta: Option<PathBuf>,
    pub thresholds: Vec<f64>,
    pub shuffles: usize,
    pub seed: u64,
    pub closeness: ClosenessMode,
    pub fit_range: (f64, f64),
    pub out: PathBuf,
}

impl PipelineConfig {
    /// Defaults for everything but the required inputs.
    pub fn new(prices: impl Into<PathBuf>, seed: u64, out: impl Into<PathBuf>) -> Self {
        Self {
            prices: prices.into(),
            meta: None,
            thresholds: parse_thresholds(DEFAULT_THRESHOLDS).expect("default thresholds parse"),
            shuffles: DEFAULT_SHUFFLES,
            seed,
            closeness: ClosenessMode::Sum,
            fit_range: DEFAULT_FIT_RANGE,
            out: out.into(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.shuffles == 0 {
            return Err(Error::invalid("shuffles must be at least 1"));
        }
        if let Some(&t) = self.thresholds.iter().find(|t| !(0.0..=2.0).contains(*t)) {
            return Err(Error::ThresholdOutOfRange(t));
        }
        if self.thresholds.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::UnsortedThresholds);
        }
        let (lo, hi) = self.fit_range;
        if !(0.0 <= lo && lo < hi && hi <= 1.0) {
            return Err(Error::invalid(format!(
                "fit range ({lo}, {hi}) must satisfy 0 ≤ lo < hi ≤ 1"
            )));
        }
        Ok(())
    }
}

/// Parses `start:stop:step` (inclusive of `stop`) or a comma-separated list.
/// Range values are rounded to 1e-9 so `0.1:0.7:0.1` yields `0.3`, not
/// `0.30000000000000004`.
pub fn parse_thresholds(spec: &str) -> Result<Vec<f64>> {
    let bad = || Error::invalid(format!("cannot parse thresholds {spec:?}"));
    let spec = spec.trim();
    if spec.contains(':') {
        let parts: Vec<f64> = spec
            .split(':')
            .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let [start, stop, step] = parts[..] else {
            return Err(bad());
        };
        if step.is_nan() || step <= 0.0 || stop < start {
            return Err(bad());
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        Ok((0..count)
            .map(|i| ((start + i as f64 * step) * 1e9).round() / 1e9)
            .collect())
    } else {
        spec.split(',')
            .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
            .collect()
    }
}

/// Parses `lo,hi`.
pub fn parse_fit_range(spec: &str) -> Result<(f64, f64)> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    match parts[..] {
        [lo, hi] => match (lo.parse(), hi.parse()) {
            (Ok(lo), Ok(hi)) => Ok((lo, hi)),
            _ => Err(Error::invalid(format!("cannot parse fit range {spec:?}"))),
        },
        _ => Err(Error::invalid(format!(
            "fit range must be lo,hi, got {spec:?}"
        ))),
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
enum ThresholdSetting {
    Spec(String),
    List(Vec<f64>),
}

/// Config with every field optional, as read from a `key = value` file or
/// assembled from command-line flags. Later layers override earlier ones.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    pub prices: Option<PathBuf>,
    pub meta: Option<PathBuf>,
    #[serde(default, deserialize_with = "de_thresholds")]
    pub thresholds: Option<Vec<f64>>,
    pub shuffles: Option<usize>,
    pub seed: Option<u64>,
    pub closeness: Option<ClosenessMode>,
    pub fit_range: Option<(f64, f64)>,
    pub out: Option<PathBuf>,
}

fn de_thresholds<'de, D: serde::Deserializer<'de>>(
    d: D,
) -> std::result::Result<Option<Vec<f64>>, D::Error> {
    match ThresholdSetting::deserialize(d)? {
        ThresholdSetting::List(v) => Ok(Some(v)),
        ThresholdSetting::Spec(s) => parse_thresholds(&s)
            .map(Some)
            .map_err(serde::de::Error::custom),
    }
}

impl PartialConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::invalid(format!("config: {e}")))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }

    /// Fields set in `over` win.
    pub fn merge(self, over: PartialConfig) -> Self {
        Self {
            prices: over.prices.or(self.prices),
            meta: over.meta.or(self.meta),
            thresholds: over.thresholds.or(self.thresholds),
            shuffles: over.shuffles.or(self.shuffles),
            seed: over.seed.or(self.seed),
            closeness: over.closeness.or(self.closeness),
            fit_range: over.fit_range.or(self.fit_range),
            out: over.out.or(self.out),
        }
    }

    /// Fills defaults; `prices`, `seed` and `out` are required.
    pub fn resolve(self) -> Result<PipelineConfig> {
        let prices = self
            .prices
            .ok_or_else(|| Error::invalid("missing prices path"))?;
        let seed = self.seed.ok_or_else(|| {
            Error::invalid("missing seed: runs must be reproducible, pass an explicit seed")
        })?;
        let out = self
            .out
            .ok_or_else(|| Error::invalid("missing output directory"))?;
        let mut cfg = PipelineConfig::new(prices, seed, out);
        cfg.meta = self.meta;
        if let Some(t) = self.thresholds {
            cfg.thresholds = t;
        }
        if let Some(s) = self.shuffles {
            cfg.shuffles = s;
        }
        if let Some(c) = self.closeness {
            cfg.closeness = c;
        }
        if let Some(f) = self.fit_range {
            cfg.fit_range = f;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}
