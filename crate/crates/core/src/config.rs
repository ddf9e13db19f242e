//! Experiment configuration: file parsing, flag precedence, and conversion
//! into policies and models.
//!
//! Configs load from TOML (the native format; `theta = inf` is valid TOML)
//! or JSON when the file starts with `{`. Unknown keys are rejected in both
//! formats. Command-line flags override file values, which override the
//! built-in defaults.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::predictor::{IndexOrder, PhaseConfig};
use crate::scheduler::{CachePolicy, HistorySource, ReconstructionBase};
use crate::simulator::{Family, FamilyParams, TrajectoryModel, DEFAULT_DEGREE, DEFAULT_SINUSOIDS};
use crate::tensor::{EPS_DIV, EPS_NORM};

/// Everything a run needs: scheduling policy, synthetic model, seed, and
/// output options. Serializes losslessly through TOML.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    /// Total denoising steps `T`.
    pub steps: usize,
    /// Cache interval `N`.
    pub interval: usize,
    /// Gate threshold (`inf` disables skipping).
    pub theta: f64,
    /// Stability sensitivity.
    pub lambda: f64,
    /// Early-phase weight on the newest residual; the second weight is
    /// derived as `1 - alpha1`.
    pub alpha1: f64,
    /// Late-phase velocity coefficient.
    pub beta: f64,
    /// Early/mid phase boundary as a fraction of `T`.
    pub early_frac: f64,
    /// Mid/late phase boundary as a fraction of `T`.
    pub late_frac: f64,
    /// Unconditional full computations at the start.
    pub warmup: usize,
    /// Residual history capacity.
    pub history_capacity: usize,
    /// Baseline extrapolation order.
    pub taylor_order: usize,
    /// Gate indicator variant.
    pub tsi_variant: crate::gate::TsiVariant,
    /// Whether predicted residuals refill history.
    pub history_source: HistorySource,
    /// Reconstruction base at predicted steps.
    pub reconstruction_base: ReconstructionBase,
    /// Numerator operand ordering of the [2/1] predictor.
    pub index_order: IndexOrder,
    /// Division guard.
    pub eps_div: f64,
    /// Norm guard.
    pub eps_norm: f64,
    /// Synthetic trajectory family.
    pub family: Family,
    /// Feature dimension.
    pub dim: usize,
    /// Seed for model parameters.
    pub seed: u64,
    /// Polynomial degree (polynomial family).
    pub degree: usize,
    /// Sinusoid count (smooth-random and phase-composite families).
    pub sinusoids: usize,
    /// Explicit amplitudes; drawn from the seed when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<Vec<f64>>,
    /// Explicit offsets; drawn from the seed when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offsets: Option<Vec<f64>>,
    /// Explicit pole/decay rates; drawn from the seed when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poles: Option<Vec<f64>>,
    /// Output directory for emitted files.
    pub out: String,
    /// Also print machine-readable JSON to stdout.
    pub json: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            steps: 20,
            interval: 4,
            theta: 1.0,
            lambda: 10.0,
            alpha1: 0.7,
            beta: 0.1,
            early_frac: 0.7,
            late_frac: 0.2,
            warmup: 3,
            history_capacity: 3,
            taylor_order: 2,
            tsi_variant: crate::gate::TsiVariant::Alignment,
            history_source: HistorySource::Any,
            reconstruction_base: ReconstructionBase::CurrentInput,
            index_order: IndexOrder::AsPrinted,
            eps_div: EPS_DIV,
            eps_norm: EPS_NORM,
            family: Family::Rational,
            dim: 64,
            seed: 0,
            degree: DEFAULT_DEGREE,
            sinusoids: DEFAULT_SINUSOIDS,
            amplitudes: None,
            offsets: None,
            poles: None,
            out: "out".to_string(),
            json: false,
        }
    }
}

/// Config-related failure with the offending detail.
#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot parse config file {path}: {message}")]
    Parse { path: String, message: String },
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

impl ExperimentConfig {
    /// Load a config file. JSON is detected by a leading `{`; everything
    /// else parses as TOML.
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text).map_err(|message| ConfigError::Parse {
            path: path.display().to_string(),
            message,
        })
    }

    /// Parse config text (TOML, or JSON when it starts with `{`).
    pub fn parse(text: &str) -> Result<Self, String> {
        if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(|e| e.to_string())
        } else {
            toml::from_str(text).map_err(|e| e.to_string())
        }
    }

    /// Serialize to TOML; `parse` of the output reproduces the config.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Build the scheduling policy described by this config.
    pub fn to_policy(&self) -> crate::error::Result<CachePolicy> {
        let phase = PhaseConfig::new(self.early_frac, self.late_frac, self.alpha1, self.beta)?;
        let policy = CachePolicy {
            total_steps: self.steps,
            interval: self.interval,
            theta: self.theta,
            lambda: self.lambda,
            phase,
            tsi_variant: self.tsi_variant,
            warmup: self.warmup,
            history_capacity: self.history_capacity,
            taylor_order: self.taylor_order,
            history_source: self.history_source,
            reconstruction_base: self.reconstruction_base,
            index_order: self.index_order,
            eps_div: self.eps_div,
            eps_norm: self.eps_norm,
        };
        policy.validate()?;
        Ok(policy)
    }

    /// Build the synthetic model described by this config.
    pub fn to_model(&self) -> crate::error::Result<TrajectoryModel> {
        let params = FamilyParams {
            amplitudes: self.amplitudes.clone(),
            offsets: self.offsets.clone(),
            poles: self.poles.clone(),
            degree: Some(self.degree),
            sinusoids: Some(self.sinusoids),
        };
        TrajectoryModel::with_params(self.family, self.dim, self.seed, self.steps, &params)
    }
}

/// Optional per-key overrides collected from command-line flags.
/// Precedence is flag > file > default.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub steps: Option<usize>,
    pub interval: Option<usize>,
    pub theta: Option<f64>,
    pub lambda: Option<f64>,
    pub alpha1: Option<f64>,
    pub beta: Option<f64>,
    pub family: Option<Family>,
    pub degree: Option<usize>,
    pub dim: Option<usize>,
    pub seed: Option<u64>,
    pub taylor_order: Option<usize>,
    pub tsi_variant: Option<crate::gate::TsiVariant>,
    pub history_source: Option<HistorySource>,
    pub out: Option<String>,
    pub json: bool,
}

impl Overrides {
    /// Apply the overrides on top of a base config.
    pub fn apply(&self, mut cfg: ExperimentConfig) -> ExperimentConfig {
        macro_rules! set {
            ($field:ident) => {
                if let Some(v) = self.$field.clone() {
                    cfg.$field = v;
                }
            };
        }
        set!(steps);
        set!(interval);
        set!(theta);
        set!(lambda);
        set!(alpha1);
        set!(beta);
        set!(family);
        set!(degree);
        set!(dim);
        set!(seed);
        set!(taylor_order);
        set!(tsi_variant);
        set!(history_source);
        set!(out);
        if self.json {
            cfg.json = true;
        }
        cfg
    }
}
