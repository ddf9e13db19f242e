//! Cache-interval scheduling of a denoising loop.
//!
//! A run iterates loop steps `s = 0..T`. Diffusion time is `t = T-1-s`, so
//! `s = 0` is the highest-noise step. At each step the scheduler either calls
//! the model (warm-up steps, interval starts, and steps where the gate votes
//! for fidelity) or forecasts the block residual from history and
//! reconstructs the output. The latent always advances by the explicit Euler
//! update `x_{s+1} = x_s + y_s / T`, so a run with an impassable threshold is
//! bit-identical to the ground-truth trajectory.
//!
//! Residuals are whole-block: output minus input of the modelled block. Full
//! computations always push their residual into history; predicted residuals
//! are admitted too under [`HistorySource::Any`] (the default, which keeps
//! the gate evaluable inside an interval) and withheld under
//! [`HistorySource::ComputedOnly`].

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::gate::{self, GateDecision, GateReason, TsiVariant};
use crate::predictor::{
    reconstruct_output, step_aware_predict_configured, taylor_predict, IndexOrder, Phase,
    PhaseConfig,
};
use crate::tensor::{self, FeatureTensor, EPS_DIV, EPS_NORM};

/// Where predicted residuals are allowed to live.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum HistorySource {
    /// Computed and predicted residuals both enter the rolling history.
    #[default]
    Any,
    /// Only computed residuals enter history (ablation mode).
    #[serde(rename = "computed")]
    #[clap(name = "computed")]
    ComputedOnly,
}

/// Base feature for output reconstruction at predicted steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ReconstructionBase {
    /// Add the forecast residual to the current step's block input.
    #[default]
    CurrentInput,
    /// Add the forecast residual to the previous step's output feature.
    PreviousOutput,
}

/// All scheduling tunables.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CachePolicy {
    /// Total denoising steps `T`.
    pub total_steps: usize,
    /// Cache interval `N`: step indices divisible by `N` always compute.
    pub interval: usize,
    /// Gate threshold; `+inf` disables skipping, `-inf` always skips.
    pub theta: f64,
    /// Stability sensitivity for the adaptive coefficients.
    pub lambda: f64,
    /// Phase boundaries and weights for step-aware prediction.
    pub phase: PhaseConfig,
    /// Indicator formula used by the gate.
    pub tsi_variant: TsiVariant,
    /// Unconditional full computations at the start of the run.
    pub warmup: usize,
    /// Rolling residual history capacity `k`.
    pub history_capacity: usize,
    /// Extrapolation order for the baseline scheduler.
    pub taylor_order: usize,
    /// Whether predicted residuals refill the history.
    pub history_source: HistorySource,
    /// Base feature for reconstruction at predicted steps.
    pub reconstruction_base: ReconstructionBase,
    /// Operand ordering of the [2/1] numerator.
    pub index_order: IndexOrder,
    /// Denominator guard for rational evaluation.
    pub eps_div: f64,
    /// Norm guard for normalizations and the stability factor.
    pub eps_norm: f64,
}

impl Default for CachePolicy {
    fn default() -> Self {
        Self {
            total_steps: 20,
            interval: 4,
            theta: 1.0,
            lambda: 10.0,
            phase: PhaseConfig::default(),
            tsi_variant: TsiVariant::Alignment,
            warmup: 3,
            history_capacity: 3,
            taylor_order: 2,
            history_source: HistorySource::Any,
            reconstruction_base: ReconstructionBase::CurrentInput,
            index_order: IndexOrder::AsPrinted,
            eps_div: EPS_DIV,
            eps_norm: EPS_NORM,
        }
    }
}

impl CachePolicy {
    /// Check construction invariants. The indicator and the [2/1] predictor
    /// both need three residuals, hence the warm-up and capacity floors.
    pub fn validate(&self) -> Result<()> {
        let fail = |reason: &str| Err(Error::InvalidPolicy(reason.to_string()));
        if self.total_steps == 0 {
            return fail("total_steps must be positive");
        }
        if self.interval == 0 {
            return fail("interval must be positive");
        }
        if self.warmup < 3 {
            return fail("warmup must be at least 3");
        }
        if self.total_steps < self.warmup {
            return fail("total_steps must be at least warmup");
        }
        if self.history_capacity < 3 {
            return fail("history_capacity must be at least 3");
        }
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return fail("lambda must be positive and finite");
        }
        if self.theta.is_nan() {
            return fail("theta must not be NaN");
        }
        if !(1..=2).contains(&self.taylor_order) {
            return fail("taylor_order must be 1 or 2");
        }
        let pos_finite = |x: f64| x.is_finite() && x > 0.0;
        if !pos_finite(self.eps_div) || !pos_finite(self.eps_norm) {
            return fail("guard epsilons must be positive and finite");
        }
        Ok(())
    }
}

/// Whether a cached residual came from the model or the predictor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResidualOrigin {
    Computed,
    Predicted,
}

/// One cached residual with its step label and origin tag.
#[derive(Debug, Clone)]
pub struct ResidualEntry {
    pub residual: FeatureTensor,
    pub step: usize,
    pub origin: ResidualOrigin,
}

/// Rolling buffer of the `k` most recent residuals, newest last. Pushing at
/// capacity evicts the oldest entry; step labels must strictly increase and
/// shapes must stay homogeneous.
#[derive(Debug, Clone)]
pub struct ResidualHistory {
    entries: VecDeque<ResidualEntry>,
    capacity: usize,
}

impl ResidualHistory {
    pub fn new(capacity: usize) -> Self {
        assert!(capacity >= 1, "history capacity must be positive");
        Self {
            entries: VecDeque::with_capacity(capacity),
            capacity,
        }
    }

    pub fn push(&mut self, entry: ResidualEntry) -> Result<()> {
        if let Some(newest) = self.entries.back() {
            tensor::check_same_shape(&newest.residual, &entry.residual)?;
            if entry.step <= newest.step {
                return Err(Error::NonMonotonicStep {
                    step: entry.step,
                    last: newest.step,
                });
            }
        }
        if self.entries.len() == self.capacity {
            self.entries.pop_front();
        }
        self.entries.push_back(entry);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn newest(&self) -> Option<&ResidualEntry> {
        self.entries.back()
    }

    pub fn entries(&self) -> impl Iterator<Item = &ResidualEntry> {
        self.entries.iter()
    }

    /// The three newest residuals ordered oldest → newest.
    pub fn recent3(&self) -> Option<(&FeatureTensor, &FeatureTensor, &FeatureTensor)> {
        let n = self.entries.len();
        if n < 3 {
            return None;
        }
        Some((
            &self.entries[n - 3].residual,
            &self.entries[n - 2].residual,
            &self.entries[n - 1].residual,
        ))
    }
}

/// Anything that can stand in for the full block computation.
///
/// Implementations must be deterministic in `(input, step)` for a fixed
/// construction and count every successful evaluation.
pub trait ModelCall {
    fn evaluate(&mut self, input: &FeatureTensor, step: usize) -> Result<FeatureTensor>;
    fn calls(&self) -> u64;
}

/// Per-step record of what the scheduler did.
///
/// The three trailing metric fields compare the step against the oracle
/// trajectory and are filled by the metrics layer after the run.
#[derive(Debug, Clone)]
pub struct StepTrace {
    pub step: usize,
    /// Diffusion time `T-1-step`.
    pub diffusion_t: usize,
    pub decision: GateDecision,
    /// Stability factor, present when the [2/1] path produced the step.
    pub sigma: Option<f64>,
    /// Phase of the step-aware predictor, present at predicted steps.
    pub phase: Option<Phase>,
    pub predicted: bool,
    pub full_evals_so_far: usize,
    pub output_error_l2: Option<f64>,
    pub output_cosine: Option<f64>,
    pub residual_cosine: Option<f64>,
}

/// Full-evaluation accounting for a run.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ComputeStats {
    pub full_evals: usize,
    pub predicted: usize,
    /// `T / full_evals` — the desk-scale stand-in for latency speedup.
    pub compute_ratio: f64,
}

/// Everything a run produces.
#[derive(Debug, Clone)]
pub struct RunResult {
    pub traces: Vec<StepTrace>,
    pub inputs: Vec<FeatureTensor>,
    pub outputs: Vec<FeatureTensor>,
    pub residuals: Vec<FeatureTensor>,
    pub stats: ComputeStats,
}

fn tsi_probe(history: &ResidualHistory, policy: &CachePolicy) -> Result<Option<f64>> {
    match history.recent3() {
        Some((r3, r2, r1)) => Ok(Some(gate::tsi_guarded(
            r3,
            r2,
            r1,
            policy.tsi_variant,
            policy.eps_norm,
        )?)),
        None => Ok(None),
    }
}

/// Run the gated Padé-style scheduler.
pub fn run<M: ModelCall + ?Sized>(
    policy: &CachePolicy,
    model: &mut M,
    x0: &FeatureTensor,
) -> Result<RunResult> {
    policy.validate()?;
    let total = policy.total_steps;
    let delta = 1.0 / total as f64;
    let mut history = ResidualHistory::new(policy.history_capacity);
    let mut traces = Vec::with_capacity(total);
    let mut inputs = Vec::with_capacity(total);
    let mut outputs: Vec<FeatureTensor> = Vec::with_capacity(total);
    let mut residuals = Vec::with_capacity(total);
    let mut full_evals = 0usize;
    let mut x = x0.clone();

    for step in 0..total {
        let decision = if step < policy.warmup {
            GateDecision::forced_full(GateReason::WarmUp, tsi_probe(&history, policy)?)
        } else if step % policy.interval == 0 {
            GateDecision::forced_full(GateReason::IntervalStart, tsi_probe(&history, policy)?)
        } else {
            match tsi_probe(&history, policy)? {
                Some(value) => gate::decide(value, policy.theta),
                None => GateDecision::forced_full(GateReason::InsufficientHistory, None),
            }
        };

        let (output, residual, sigma, phase) = if decision.is_predict() {
            let (r3, r2, r1) = history
                .recent3()
                .expect("gate only passes with three residuals");
            let t = total - 1 - step;
            let prediction = step_aware_predict_configured(
                Some(r3),
                r2,
                r1,
                t,
                total,
                &policy.phase,
                policy.lambda,
                policy.index_order,
                policy.eps_div,
                policy.eps_norm,
            )?;
            let base = match policy.reconstruction_base {
                ReconstructionBase::CurrentInput => &x,
                ReconstructionBase::PreviousOutput => outputs
                    .last()
                    .expect("step 0 is always a warm-up computation"),
            };
            let output = reconstruct_output(base, &prediction.residual)?;
            let sigma = prediction.pade.map(|c| c.sigma);
            (output, prediction.residual, sigma, Some(prediction.phase))
        } else {
            let output = model.evaluate(&x, step)?;
            full_evals += 1;
            let residual = tensor::sub(&output, &x)?;
            (output, residual, None, None)
        };

        let admit = !decision.is_predict() || policy.history_source == HistorySource::Any;
        if admit {
            history.push(ResidualEntry {
                residual: residual.clone(),
                step,
                origin: if decision.is_predict() {
                    ResidualOrigin::Predicted
                } else {
                    ResidualOrigin::Computed
                },
            })?;
        }

        traces.push(StepTrace {
            step,
            diffusion_t: total - 1 - step,
            decision,
            sigma,
            phase,
            predicted: decision.is_predict(),
            full_evals_so_far: full_evals,
            output_error_l2: None,
            output_cosine: None,
            residual_cosine: None,
        });
        let next = tensor::scale_add(1.0, &x, delta, &output)?;
        inputs.push(x);
        outputs.push(output);
        residuals.push(residual);
        x = next;
    }

    let predicted = total - full_evals;
    Ok(RunResult {
        traces,
        inputs,
        outputs,
        residuals,
        stats: ComputeStats {
            full_evals,
            predicted,
            compute_ratio: total as f64 / full_evals as f64,
        },
    })
}

/// Baseline scheduler: identical warm-up and interval structure, but the
/// gate is bypassed — every other step extrapolates the raw output features
/// with backward differences of the policy's `taylor_order`.
pub fn run_taylor_baseline<M: ModelCall + ?Sized>(
    policy: &CachePolicy,
    model: &mut M,
    x0: &FeatureTensor,
) -> Result<RunResult> {
    policy.validate()?;
    let total = policy.total_steps;
    let order = policy.taylor_order;
    let delta = 1.0 / total as f64;
    let mut traces = Vec::with_capacity(total);
    let mut inputs = Vec::with_capacity(total);
    let mut outputs: Vec<FeatureTensor> = Vec::with_capacity(total);
    let mut residuals = Vec::with_capacity(total);
    let mut full_evals = 0usize;
    let mut x = x0.clone();

    for step in 0..total {
        let forced_reason = if step < policy.warmup {
            Some(GateReason::WarmUp)
        } else if step % policy.interval == 0 {
            Some(GateReason::IntervalStart)
        } else if outputs.len() < order + 1 {
            Some(GateReason::InsufficientHistory)
        } else {
            None
        };

        let (decision, output) = match forced_reason {
            Some(reason) => {
                let output = model.evaluate(&x, step)?;
                full_evals += 1;
                (GateDecision::forced_full(reason, None), output)
            }
            None => {
                let window = &outputs[step - (order + 1)..step];
                let output = taylor_predict(window, order)?;
                (
                    GateDecision {
                        action: gate::GateAction::Predict,
                        tsi_value: None,
                        reason: GateReason::ThresholdPass,
                    },
                    output,
                )
            }
        };

        let residual = tensor::sub(&output, &x)?;
        traces.push(StepTrace {
            step,
            diffusion_t: total - 1 - step,
            decision,
            sigma: None,
            phase: None,
            predicted: decision.is_predict(),
            full_evals_so_far: full_evals,
            output_error_l2: None,
            output_cosine: None,
            residual_cosine: None,
        });
        let next = tensor::scale_add(1.0, &x, delta, &output)?;
        inputs.push(x);
        outputs.push(output);
        residuals.push(residual);
        x = next;
    }

    let predicted = total - full_evals;
    Ok(RunResult {
        traces,
        inputs,
        outputs,
        residuals,
        stats: ComputeStats {
            full_evals,
            predicted,
            compute_ratio: total as f64 / full_evals as f64,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulator::{oracle_trajectory, Family, TrajectoryModel};

    fn t(values: &[f64]) -> FeatureTensor {
        FeatureTensor::from_vec(values.to_vec()).unwrap()
    }

    /// Model whose output is `u + s*v`, ignoring the input entirely.
    struct LinearOutputModel {
        u: Vec<f64>,
        v: Vec<f64>,
        calls: u64,
    }

    impl ModelCall for LinearOutputModel {
        fn evaluate(&mut self, _input: &FeatureTensor, step: usize) -> Result<FeatureTensor> {
            self.calls += 1;
            let s = step as f64;
            FeatureTensor::from_vec(
                self.u
                    .iter()
                    .zip(&self.v)
                    .map(|(&u, &v)| u + s * v)
                    .collect(),
            )
        }

        fn calls(&self) -> u64 {
            self.calls
        }
    }

    fn policy(total: usize, interval: usize, theta: f64) -> CachePolicy {
        CachePolicy {
            total_steps: total,
            interval,
            theta,
            ..CachePolicy::default()
        }
    }

    #[test]
    fn history_evicts_oldest_at_capacity() {
        let mut h = ResidualHistory::new(3);
        for (step, v) in [(2usize, 1.0), (5, 2.0), (9, 3.0)] {
            h.push(ResidualEntry {
                residual: t(&[v]),
                step,
                origin: ResidualOrigin::Computed,
            })
            .unwrap();
        }
        assert_eq!(h.len(), 3);
        assert_eq!(h.newest().unwrap().step, 9);
        h.push(ResidualEntry {
            residual: t(&[4.0]),
            step: 11,
            origin: ResidualOrigin::Predicted,
        })
        .unwrap();
        assert_eq!(h.len(), 3);
        assert_eq!(h.entries().next().unwrap().step, 5);
    }

    #[test]
    fn history_rejects_shape_and_step_violations() {
        let mut h = ResidualHistory::new(3);
        h.push(ResidualEntry {
            residual: t(&[1.0]),
            step: 4,
            origin: ResidualOrigin::Computed,
        })
        .unwrap();
        let err = h
            .push(ResidualEntry {
                residual: t(&[1.0, 2.0]),
                step: 5,
                origin: ResidualOrigin::Computed,
            })
            .unwrap_err();
        assert!(matches!(err, Error::ShapeMismatch { .. }));
        let err = h
            .push(ResidualEntry {
                residual: t(&[1.0]),
                step: 4,
                origin: ResidualOrigin::Computed,
            })
            .unwrap_err();
        assert!(matches!(err, Error::NonMonotonicStep { .. }));
    }

    #[test]
    fn hand_trace_t8_always_pass() {
        // T=8, N=4, warmup=3, theta=-inf: full computes at {0,1,2,4} only.
        let p = CachePolicy {
            total_steps: 8,
            ..policy(8, 4, f64::NEG_INFINITY)
        };
        let mut model = TrajectoryModel::new(Family::SmoothRandom, 8, 3, 8).unwrap();
        let result = run(&p, &mut model, &FeatureTensor::zeros(8).unwrap()).unwrap();
        let full_steps: Vec<usize> = result
            .traces
            .iter()
            .filter(|tr| !tr.predicted)
            .map(|tr| tr.step)
            .collect();
        assert_eq!(full_steps, vec![0, 1, 2, 4]);
        assert_eq!(result.stats.full_evals, 4);
        assert_eq!(result.stats.predicted, 4);
        assert_eq!(result.stats.compute_ratio, 2.0);
        assert_eq!(model.calls(), 4);
    }

    #[test]
    fn hand_trace_t20_always_pass() {
        let p = policy(20, 4, f64::NEG_INFINITY);
        let mut model = TrajectoryModel::new(Family::Rational, 4, 0, 20).unwrap();
        let result = run(&p, &mut model, &FeatureTensor::zeros(4).unwrap()).unwrap();
        let full_steps: Vec<usize> = result
            .traces
            .iter()
            .filter(|tr| !tr.predicted)
            .map(|tr| tr.step)
            .collect();
        assert_eq!(full_steps, vec![0, 1, 2, 4, 8, 12, 16]);
        assert_eq!(result.stats.full_evals, 7);
        assert!((result.stats.compute_ratio - 20.0 / 7.0).abs() < 1e-12);
    }

    #[test]
    fn infinite_theta_matches_oracle_bit_exactly() {
        let p = policy(20, 4, f64::INFINITY);
        let mut model = TrajectoryModel::new(Family::SmoothRandom, 16, 77, 20).unwrap();
        let x0 = FeatureTensor::zeros(16).unwrap();
        let result = run(&p, &mut model, &x0).unwrap();
        assert_eq!(result.stats.full_evals, 20);
        assert_eq!(result.stats.predicted, 0);

        let oracle = oracle_trajectory(&model, &x0, 20).unwrap();
        for (got, want) in result.outputs.iter().zip(&oracle.outputs) {
            assert_eq!(got, want);
        }
        for (got, want) in result.inputs.iter().zip(&oracle.inputs) {
            assert_eq!(got, want);
        }
    }

    #[test]
    fn accounting_holds_across_thetas() {
        for theta in [f64::NEG_INFINITY, 0.7, 1.0, 1.3, f64::INFINITY] {
            let p = policy(20, 4, theta);
            let mut model = TrajectoryModel::new(Family::SmoothRandom, 8, 5, 20).unwrap();
            let result = run(&p, &mut model, &FeatureTensor::zeros(8).unwrap()).unwrap();
            assert_eq!(result.stats.full_evals + result.stats.predicted, 20);
            assert_eq!(model.calls() as usize, result.stats.full_evals);
            // Warm-up and interval starts are always computed.
            for tr in &result.traces {
                if tr.step < 3 || tr.step % 4 == 0 {
                    assert!(!tr.predicted, "step {} must be computed", tr.step);
                }
            }
        }
    }

    #[test]
    fn identical_runs_are_identical() {
        let p = policy(20, 4, 1.0);
        let x0 = FeatureTensor::zeros(8).unwrap();
        let mut m1 = TrajectoryModel::new(Family::PhaseComposite, 8, 42, 20).unwrap();
        let mut m2 = TrajectoryModel::new(Family::PhaseComposite, 8, 42, 20).unwrap();
        let a = run(&p, &mut m1, &x0).unwrap();
        let b = run(&p, &mut m2, &x0).unwrap();
        assert_eq!(a.outputs, b.outputs);
        for (ta, tb) in a.traces.iter().zip(&b.traces) {
            assert_eq!(ta.decision, tb.decision);
            assert_eq!(ta.sigma, tb.sigma);
        }
    }

    #[test]
    fn taylor_baseline_interval_structure() {
        // T=20, N=5, warmup=3: full at {0,1,2,5,10,15}.
        let p = CachePolicy {
            interval: 5,
            ..policy(20, 5, 1.0)
        };
        let mut model = TrajectoryModel::new(Family::Exponential, 4, 9, 20).unwrap();
        let result = run_taylor_baseline(&p, &mut model, &FeatureTensor::zeros(4).unwrap()).unwrap();
        let full_steps: Vec<usize> = result
            .traces
            .iter()
            .filter(|tr| !tr.predicted)
            .map(|tr| tr.step)
            .collect();
        assert_eq!(full_steps, vec![0, 1, 2, 5, 10, 15]);
        assert_eq!(result.stats.full_evals, 6);
    }

    #[test]
    fn taylor_baseline_exact_on_constant_outputs() {
        let p = policy(12, 4, 1.0);
        let mut model = LinearOutputModel {
            u: vec![3.0, -1.0],
            v: vec![0.0, 0.0],
            calls: 0,
        };
        let x0 = FeatureTensor::zeros(2).unwrap();
        let result = run_taylor_baseline(&p, &mut model, &x0).unwrap();
        for out in &result.outputs {
            assert!(out.max_abs_diff(&t(&[3.0, -1.0])).unwrap() < 1e-12);
        }
    }

    #[test]
    fn taylor_baseline_order1_exact_on_linear_outputs() {
        let p = CachePolicy {
            taylor_order: 1,
            ..policy(16, 4, 1.0)
        };
        let mut model = LinearOutputModel {
            u: vec![1.0],
            v: vec![0.5],
            calls: 0,
        };
        let x0 = FeatureTensor::zeros(1).unwrap();
        let result = run_taylor_baseline(&p, &mut model, &x0).unwrap();
        for (s, out) in result.outputs.iter().enumerate() {
            let expected = 1.0 + 0.5 * s as f64;
            assert!(
                (out.data()[0] - expected).abs() < 1e-9,
                "step {s}: {} vs {expected}",
                out.data()[0]
            );
        }
    }

    #[test]
    fn policy_validation_catches_violations() {
        let bad = [
            CachePolicy {
                warmup: 2,
                ..CachePolicy::default()
            },
            CachePolicy {
                total_steps: 2,
                ..CachePolicy::default()
            },
            CachePolicy {
                interval: 0,
                ..CachePolicy::default()
            },
            CachePolicy {
                taylor_order: 3,
                ..CachePolicy::default()
            },
            CachePolicy {
                theta: f64::NAN,
                ..CachePolicy::default()
            },
        ];
        for p in bad {
            assert!(p.validate().is_err(), "expected rejection: {p:?}");
        }
        assert!(CachePolicy::default().validate().is_ok());
    }

    #[test]
    fn computed_only_mode_freezes_history_inside_interval() {
        let p = CachePolicy {
            history_source: HistorySource::ComputedOnly,
            ..policy(20, 4, f64::NEG_INFINITY)
        };
        let mut model = TrajectoryModel::new(Family::Rational, 4, 2, 20).unwrap();
        let result = run(&p, &mut model, &FeatureTensor::zeros(4).unwrap()).unwrap();
        // Same interval structure as the default mode under theta = -inf.
        assert_eq!(result.stats.full_evals, 7);
    }
}
