//! Residual forecasting: stability factor, adaptive coefficients, the [2/1]
//! rational predictor and its general-order form, step-aware phase dispatch,
//! output reconstruction, and a polynomial-extrapolation baseline.
//!
//! # Conventions
//!
//! Residual histories are ordered oldest → newest. For the three-point
//! predictors the arguments are named `r3` (oldest), `r2`, `r1` (newest),
//! matching the age of the cached residuals relative to the step being
//! predicted.
//!
//! The [2/1] form is evaluated per element as
//!
//! ```text
//! (b0 * r3 + b1 * r2) / (1 + a1 * r1)
//! ```
//!
//! with the numerator accumulated fully, then the denominator, then one
//! guarded division. [`rational_predict`] follows the same accumulation
//! order, so the specialized and general paths agree bit-for-bit when given
//! the coefficients produced by [`adaptive_coefficients`].
//!
//! `b0` weights the *oldest* cached residual. [`IndexOrder::NewestFirst`]
//! swaps the roles of `r3` and `r1` for the alternate reading in which the
//! largest weight lands on the most recent residual; the stability factor is
//! always computed from the two newest residuals regardless of order.

use crate::error::{Error, Result};
use crate::tensor::{
    self, guard_denominator, l2_norm, FeatureTensor, EPS_DIV, EPS_NORM,
};

/// Which residual receives the leading numerator weight in the [2/1] form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndexOrder {
    /// `b0` multiplies the oldest cached residual.
    #[default]
    AsPrinted,
    /// `b0` multiplies the newest cached residual.
    NewestFirst,
}

/// Coefficients of the adaptive [2/1] predictor, with the stability factor
/// and sensitivity that produced them recorded for auditability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PadeCoefficients {
    pub b0: f64,
    pub b1: f64,
    pub a1: f64,
    pub sigma: f64,
    pub lambda: f64,
}

/// Explicit coefficients for the general-order rational predictor.
///
/// For a history of length `k`, `numerator` holds `b0..=bm` (nonempty) and
/// `denominator` holds the trailing weights, so
/// `numerator.len() + denominator.len() == k`. `denominator[j]` multiplies
/// `history[numerator.len() + j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalCoeffs {
    pub numerator: Vec<f64>,
    pub denominator: Vec<f64>,
}

impl RationalCoeffs {
    pub fn new(numerator: Vec<f64>, denominator: Vec<f64>) -> Self {
        Self {
            numerator,
            denominator,
        }
    }

    /// The [2/1] layout corresponding to [`adaptive_coefficients`] output.
    pub fn from_pade(c: &PadeCoefficients) -> Self {
        Self {
            numerator: vec![c.b0, c.b1],
            denominator: vec![c.a1],
        }
    }

    fn validate(&self, history_len: usize) -> Result<()> {
        if self.numerator.is_empty()
            || history_len < 2
            || self.numerator.len() + self.denominator.len() != history_len
        {
            return Err(Error::CoeffArityMismatch {
                numerator: self.numerator.len(),
                denominator: self.denominator.len(),
                history: history_len,
            });
        }
        Ok(())
    }
}

/// Three-phase partition of diffusion time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Phase {
    /// High-noise steps: recency-weighted averaging of the two newest residuals.
    Early,
    /// Plain [2/1] prediction.
    Mid,
    /// [2/1] prediction plus a first-difference velocity term.
    Late,
}

/// Phase boundaries and per-phase weights for step-aware prediction.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PhaseConfig {
    /// Diffusion times above `early_frac * T` use the early rule.
    pub early_frac: f64,
    /// Diffusion times below `late_frac * T` use the late rule.
    pub late_frac: f64,
    /// Weight on the newest residual in the early phase.
    pub alpha1: f64,
    /// Weight on the second-newest residual; `alpha1 + alpha2 = 1`.
    pub alpha2: f64,
    /// Velocity-term coefficient in the late phase.
    pub beta: f64,
}

impl PhaseConfig {
    /// Build a config with `alpha2` derived as `1 - alpha1`.
    pub fn new(early_frac: f64, late_frac: f64, alpha1: f64, beta: f64) -> Result<Self> {
        Self::with_weights(early_frac, late_frac, alpha1, 1.0 - alpha1, beta)
    }

    /// Build a config with both alphas given; their sum must be 1.
    pub fn with_weights(
        early_frac: f64,
        late_frac: f64,
        alpha1: f64,
        alpha2: f64,
        beta: f64,
    ) -> Result<Self> {
        if !(0.0 < early_frac && early_frac < 1.0) {
            return Err(Error::OutOfRange {
                name: "early_frac",
                value: early_frac,
                min: 0.0,
                max: 1.0,
            });
        }
        if !(0.0 < late_frac && late_frac < early_frac) {
            return Err(Error::OutOfRange {
                name: "late_frac",
                value: late_frac,
                min: 0.0,
                max: early_frac,
            });
        }
        if !(0.0..=1.0).contains(&alpha1) {
            return Err(Error::OutOfRange {
                name: "alpha1",
                value: alpha1,
                min: 0.0,
                max: 1.0,
            });
        }
        if (alpha1 + alpha2 - 1.0).abs() > 1e-12 {
            return Err(Error::OutOfRange {
                name: "alpha1 + alpha2",
                value: alpha1 + alpha2,
                min: 1.0,
                max: 1.0,
            });
        }
        if !beta.is_finite() {
            return Err(Error::OutOfRange {
                name: "beta",
                value: beta,
                min: f64::MIN,
                max: f64::MAX,
            });
        }
        Ok(Self {
            early_frac,
            late_frac,
            alpha1,
            alpha2,
            beta,
        })
    }
}

impl Default for PhaseConfig {
    fn default() -> Self {
        Self {
            early_frac: 0.7,
            late_frac: 0.2,
            alpha1: 0.7,
            alpha2: 0.3,
            beta: 0.1,
        }
    }
}

/// Result of a step-aware prediction: the forecast residual, the phase that
/// produced it, and the [2/1] coefficients when that path ran.
#[derive(Debug, Clone)]
pub struct StepAwarePrediction {
    pub residual: FeatureTensor,
    pub phase: Phase,
    pub pade: Option<PadeCoefficients>,
}

/// Stability factor `exp(-lambda * ||r_prev - r_prev2|| / ||r_prev + r_prev2||)`.
///
/// `r_prev` is the newest cached residual, `r_prev2` the one before it. The
/// sum norm in the denominator is floored at [`EPS_NORM`]. The result lies in
/// `(0, 1]` and equals 1 exactly when the two residuals are elementwise equal.
pub fn stability_factor(
    r_prev: &FeatureTensor,
    r_prev2: &FeatureTensor,
    lambda: f64,
) -> Result<f64> {
    stability_factor_guarded(r_prev, r_prev2, lambda, EPS_NORM)
}

/// [`stability_factor`] with an explicit norm guard.
pub fn stability_factor_guarded(
    r_prev: &FeatureTensor,
    r_prev2: &FeatureTensor,
    lambda: f64,
    eps_norm: f64,
) -> Result<f64> {
    if !lambda.is_finite() || lambda <= 0.0 {
        return Err(Error::OutOfRange {
            name: "lambda",
            value: lambda,
            min: f64::MIN_POSITIVE,
            max: f64::MAX,
        });
    }
    let diff = tensor::sub(r_prev, r_prev2)?;
    let sum = tensor::add(r_prev, r_prev2)?;
    let ratio = l2_norm(&diff) / l2_norm(&sum).max(eps_norm);
    Ok((-lambda * ratio).exp())
}

/// Adaptive [2/1] coefficients `(2σ, -σ, σ/λ)`.
///
/// `sigma` must lie in `[0, 1]`; zero is accepted so the analytical limit of
/// a fully damped predictor (zero output) is expressible.
pub fn adaptive_coefficients(sigma: f64, lambda: f64) -> Result<PadeCoefficients> {
    if !(0.0..=1.0).contains(&sigma) {
        return Err(Error::OutOfRange {
            name: "sigma",
            value: sigma,
            min: 0.0,
            max: 1.0,
        });
    }
    if !lambda.is_finite() || lambda <= 0.0 {
        return Err(Error::OutOfRange {
            name: "lambda",
            value: lambda,
            min: f64::MIN_POSITIVE,
            max: f64::MAX,
        });
    }
    Ok(PadeCoefficients {
        b0: 2.0 * sigma,
        b1: -sigma,
        a1: sigma / lambda,
        sigma,
        lambda,
    })
}

/// Adaptive [2/1] prediction from three cached residuals (oldest → newest).
///
/// Computes the stability factor from `r1` and `r2`, derives coefficients,
/// and evaluates `(b0*r3 + b1*r2)/(1 + a1*r1)` elementwise with the guarded
/// division rule.
pub fn pade21_predict(
    r3: &FeatureTensor,
    r2: &FeatureTensor,
    r1: &FeatureTensor,
    lambda: f64,
) -> Result<(FeatureTensor, PadeCoefficients)> {
    pade21_predict_configured(r3, r2, r1, lambda, IndexOrder::AsPrinted, EPS_DIV, EPS_NORM)
}

/// [`pade21_predict`] with explicit index order and guards.
pub fn pade21_predict_configured(
    r3: &FeatureTensor,
    r2: &FeatureTensor,
    r1: &FeatureTensor,
    lambda: f64,
    order: IndexOrder,
    eps_div: f64,
    eps_norm: f64,
) -> Result<(FeatureTensor, PadeCoefficients)> {
    tensor::check_same_shape(r3, r2)?;
    tensor::check_same_shape(r2, r1)?;
    let sigma = stability_factor_guarded(r1, r2, lambda, eps_norm)?;
    let coeffs = adaptive_coefficients(sigma, lambda)?;
    let (lead, trail) = match order {
        IndexOrder::AsPrinted => (r3, r1),
        IndexOrder::NewestFirst => (r1, r3),
    };
    let data = lead
        .data()
        .iter()
        .zip(r2.data())
        .zip(trail.data())
        .map(|((&x_lead, &x_mid), &x_trail)| {
            let num = coeffs.b0 * x_lead + coeffs.b1 * x_mid;
            let den = 1.0 + coeffs.a1 * x_trail;
            num / guard_denominator(den, eps_div)
        })
        .collect();
    Ok((
        FeatureTensor::from_parts(data, r3.shape().to_vec()),
        coeffs,
    ))
}

/// General-order rational prediction over a history ordered oldest → newest:
/// `(Σ_i b_i·h[i]) / (1 + Σ_j a_j·h[m+1+j])` elementwise, guarded division.
pub fn rational_predict(history: &[FeatureTensor], coeffs: &RationalCoeffs) -> Result<FeatureTensor> {
    rational_predict_guarded(history, coeffs, EPS_DIV)
}

/// [`rational_predict`] with an explicit division guard.
pub fn rational_predict_guarded(
    history: &[FeatureTensor],
    coeffs: &RationalCoeffs,
    eps_div: f64,
) -> Result<FeatureTensor> {
    coeffs.validate(history.len())?;
    for pair in history.windows(2) {
        tensor::check_same_shape(&pair[0], &pair[1])?;
    }
    let len = history[0].len();
    let m1 = coeffs.numerator.len();
    let mut data = Vec::with_capacity(len);
    for e in 0..len {
        let mut num = coeffs.numerator[0] * history[0].data()[e];
        for (i, &b) in coeffs.numerator.iter().enumerate().skip(1) {
            num += b * history[i].data()[e];
        }
        let mut den = 1.0;
        for (j, &a) in coeffs.denominator.iter().enumerate() {
            den += a * history[m1 + j].data()[e];
        }
        data.push(num / guard_denominator(den, eps_div));
    }
    Ok(FeatureTensor::from_parts(data, history[0].shape().to_vec()))
}

/// Reconstruct an output feature from a base feature and a forecast residual.
pub fn reconstruct_output(
    prev_feature: &FeatureTensor,
    predicted_residual: &FeatureTensor,
) -> Result<FeatureTensor> {
    tensor::add(prev_feature, predicted_residual)
}

/// Phase selection for diffusion time `t` of `total` steps.
///
/// Literal boundary rule: early is `t > early_frac*T`, late is
/// `t < late_frac*T`, the middle band is inclusive on both ends.
pub fn phase_for(t: usize, total: usize, cfg: &PhaseConfig) -> Phase {
    let tf = t as f64;
    let tt = total as f64;
    if tf > cfg.early_frac * tt {
        Phase::Early
    } else if tf < cfg.late_frac * tt {
        Phase::Late
    } else {
        Phase::Mid
    }
}

/// Step-aware residual prediction.
///
/// `r3` (oldest) may be absent in the early phase, which only combines the
/// two newest residuals; the mid and late phases require all three.
/// `t` is the diffusion time (high at the start of sampling) and must lie in
/// `[0, total)`.
pub fn step_aware_predict(
    r3: Option<&FeatureTensor>,
    r2: &FeatureTensor,
    r1: &FeatureTensor,
    t: usize,
    total: usize,
    cfg: &PhaseConfig,
    lambda: f64,
) -> Result<StepAwarePrediction> {
    step_aware_predict_configured(
        r3,
        r2,
        r1,
        t,
        total,
        cfg,
        lambda,
        IndexOrder::AsPrinted,
        EPS_DIV,
        EPS_NORM,
    )
}

/// [`step_aware_predict`] with explicit index order and guards.
#[allow(clippy::too_many_arguments)]
pub fn step_aware_predict_configured(
    r3: Option<&FeatureTensor>,
    r2: &FeatureTensor,
    r1: &FeatureTensor,
    t: usize,
    total: usize,
    cfg: &PhaseConfig,
    lambda: f64,
    order: IndexOrder,
    eps_div: f64,
    eps_norm: f64,
) -> Result<StepAwarePrediction> {
    if t >= total {
        return Err(Error::StepOutOfRange { step: t, total });
    }
    let phase = phase_for(t, total, cfg);
    match phase {
        Phase::Early => {
            let residual = tensor::scale_add(cfg.alpha1, r1, cfg.alpha2, r2)?;
            Ok(StepAwarePrediction {
                residual,
                phase,
                pade: None,
            })
        }
        Phase::Mid | Phase::Late => {
            let r3 = r3.ok_or(Error::InsufficientHistory {
                needed: 3,
                available: 2,
            })?;
            let (pade, coeffs) =
                pade21_predict_configured(r3, r2, r1, lambda, order, eps_div, eps_norm)?;
            let residual = if phase == Phase::Late {
                // Velocity correction: beta * (r1 - r2) on top of the rational forecast.
                let velocity = tensor::sub(r1, r2)?;
                tensor::scale_add(1.0, &pade, cfg.beta, &velocity)?
            } else {
                pade
            };
            Ok(StepAwarePrediction {
                residual,
                phase,
                pade: Some(coeffs),
            })
        }
    }
}

/// One-step-ahead polynomial extrapolation via backward differences at the
/// newest point of a unit-spaced history (oldest → newest).
///
/// Order 1: `2*h[n-1] - h[n-2]`. Order 2: `3*h[n-1] - 3*h[n-2] + h[n-3]`.
/// Exact on sequences polynomial in the index of degree at most the order.
pub fn taylor_predict(history: &[FeatureTensor], order: usize) -> Result<FeatureTensor> {
    if !(1..=2).contains(&order) {
        return Err(Error::UnsupportedOrder { order });
    }
    if history.len() < order + 1 {
        return Err(Error::InsufficientHistory {
            needed: order + 1,
            available: history.len(),
        });
    }
    for pair in history.windows(2) {
        tensor::check_same_shape(&pair[0], &pair[1])?;
    }
    let n = history.len();
    let newest = &history[n - 1];
    let data = match order {
        1 => {
            let prev = &history[n - 2];
            newest
                .data()
                .iter()
                .zip(prev.data())
                .map(|(&a, &b)| 2.0 * a - b)
                .collect()
        }
        2 => {
            let prev = &history[n - 2];
            let prev2 = &history[n - 3];
            newest
                .data()
                .iter()
                .zip(prev.data())
                .zip(prev2.data())
                .map(|((&a, &b), &c)| 3.0 * a - 3.0 * b + c)
                .collect()
        }
        _ => unreachable!(),
    };
    Ok(FeatureTensor::from_parts(data, newest.shape().to_vec()))
}
