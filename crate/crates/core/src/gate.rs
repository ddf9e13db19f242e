//! Trajectory stability indicator and the skip/compute decision rule.
//!
//! The indicator is computed from the three newest cached residuals. Writing
//! `u1` for the unit-normalized difference of the two newest residuals and
//! `u2` for the unit-normalized difference of the older pair:
//!
//! * [`TsiVariant::Raw`] is `0.5 * ||u1 - u2||`, bounded by `[0, 1]` for unit
//!   inputs — small when consecutive residual changes point the same way.
//! * [`TsiVariant::Alignment`] is `1 + u1·u2`, bounded by `[0, 2]` — large
//!   when consecutive residual changes point the same way. For unit vectors
//!   it equals `2 - 0.5*||u1 - u2||²`.
//!
//! The alignment form is the default: it grows with stability, so the rule
//! "skip when the indicator is at least θ" works with thresholds up to 2,
//! and it degrades gracefully on stalled trajectories (a zero unit diff
//! contributes a zero dot product, pinning the value at 1). Raw is retained
//! for fidelity checks against the difference-norm formulation.
//!
//! Both variants clamp the final value into their stated range, so ulp-level
//! rounding in the normalizations can never leak an out-of-range indicator.

use crate::error::Result;
use crate::tensor::{self, dot, l2_norm, normalized, FeatureTensor, EPS_NORM};

/// Which indicator formula gates the skip decision.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize, clap::ValueEnum,
)]
#[serde(rename_all = "kebab-case")]
pub enum TsiVariant {
    /// Half the norm of the difference of unit residual-diffs; range [0, 1].
    Raw,
    /// One plus the dot product of unit residual-diffs; range [0, 2].
    #[default]
    Alignment,
}

/// What the scheduler does at a step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GateAction {
    FullCompute,
    Predict,
}

/// Why the action was chosen. `Predict` always pairs with `ThresholdPass`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GateReason {
    WarmUp,
    IntervalStart,
    ThresholdPass,
    ThresholdFail,
    InsufficientHistory,
}

/// Outcome of the gate at one step. `tsi_value` is present whenever three
/// residuals were available to evaluate the indicator, even on steps where
/// the decision was forced (warm-up, interval start).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateDecision {
    pub action: GateAction,
    pub tsi_value: Option<f64>,
    pub reason: GateReason,
}

impl GateDecision {
    pub fn forced_full(reason: GateReason, tsi_value: Option<f64>) -> Self {
        Self {
            action: GateAction::FullCompute,
            tsi_value,
            reason,
        }
    }

    pub fn is_predict(&self) -> bool {
        self.action == GateAction::Predict
    }
}

/// Unit-normalized residual difference `(r_new - r_old)/||r_new - r_old||`;
/// the zero tensor when the difference norm is below [`EPS_NORM`].
pub fn unit_diff(r_new: &FeatureTensor, r_old: &FeatureTensor) -> Result<FeatureTensor> {
    unit_diff_guarded(r_new, r_old, EPS_NORM)
}

/// [`unit_diff`] with an explicit norm guard.
pub fn unit_diff_guarded(
    r_new: &FeatureTensor,
    r_old: &FeatureTensor,
    eps_norm: f64,
) -> Result<FeatureTensor> {
    let diff = tensor::sub(r_new, r_old)?;
    Ok(normalized(&diff, eps_norm))
}

/// Stability indicator from three residuals ordered oldest (`r3`) to newest
/// (`r1`).
pub fn tsi(
    r3: &FeatureTensor,
    r2: &FeatureTensor,
    r1: &FeatureTensor,
    variant: TsiVariant,
) -> Result<f64> {
    tsi_guarded(r3, r2, r1, variant, EPS_NORM)
}

/// [`tsi`] with an explicit norm guard.
pub fn tsi_guarded(
    r3: &FeatureTensor,
    r2: &FeatureTensor,
    r1: &FeatureTensor,
    variant: TsiVariant,
    eps_norm: f64,
) -> Result<f64> {
    let u1 = unit_diff_guarded(r1, r2, eps_norm)?;
    let u2 = unit_diff_guarded(r2, r3, eps_norm)?;
    let value = match variant {
        TsiVariant::Raw => {
            let d = tensor::sub(&u1, &u2)?;
            (0.5 * l2_norm(&d)).clamp(0.0, 1.0)
        }
        TsiVariant::Alignment => 1.0 + dot(&u1, &u2)?.clamp(-1.0, 1.0),
    };
    Ok(value)
}

/// Threshold rule: predict when `tsi_value >= theta` (ties skip), otherwise
/// run the full computation.
pub fn decide(tsi_value: f64, theta: f64) -> GateDecision {
    if tsi_value >= theta {
        GateDecision {
            action: GateAction::Predict,
            tsi_value: Some(tsi_value),
            reason: GateReason::ThresholdPass,
        }
    } else {
        GateDecision {
            action: GateAction::FullCompute,
            tsi_value: Some(tsi_value),
            reason: GateReason::ThresholdFail,
        }
    }
}
