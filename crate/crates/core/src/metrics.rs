//! Error and similarity metrics against the oracle trajectory, compute
//! accounting, and a two-component PCA projection for trajectory plots.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use crate::scheduler::{RunResult, StepTrace};
use crate::simulator::OracleTrajectory;
use crate::tensor::{self, cosine_similarity, l2_norm, FeatureTensor, EPS_NORM};

/// Relative L2 error `‖pred - truth‖ / max(‖truth‖, EPS_NORM)`.
pub fn relative_l2(pred: &FeatureTensor, truth: &FeatureTensor) -> Result<f64> {
    let diff = tensor::sub(pred, truth)?;
    Ok(l2_norm(&diff) / l2_norm(truth).max(EPS_NORM))
}

/// PSNR in decibels over two aligned sequences of tensors.
///
/// The peak is the dynamic range (max − min) of the truth sequence, since
/// feature tensors have no natural fixed peak. Zero and near-zero MSE cap at
/// 99 dB, and the cap also bounds the formula from above so the scale stays
/// monotone in MSE. A degenerate zero-range truth with nonzero error floors
/// at −99 dB.
pub fn psnr(pred: &[FeatureTensor], truth: &[FeatureTensor]) -> Result<f64> {
    psnr_with_peak(pred, truth).map(|(db, _)| db)
}

/// [`psnr`] that also reports the peak (dynamic range) it used.
pub fn psnr_with_peak(pred: &[FeatureTensor], truth: &[FeatureTensor]) -> Result<(f64, f64)> {
    if pred.is_empty() || truth.is_empty() {
        return Err(Error::EmptySequence);
    }
    if pred.len() != truth.len() {
        return Err(Error::LengthMismatch {
            left: pred.len(),
            right: truth.len(),
        });
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut sq_sum = 0.0;
    let mut count = 0usize;
    for (p, t) in pred.iter().zip(truth) {
        tensor::check_same_shape(p, t)?;
        for (&pv, &tv) in p.data().iter().zip(t.data()) {
            lo = lo.min(tv);
            hi = hi.max(tv);
            let d = pv - tv;
            sq_sum += d * d;
            count += 1;
        }
    }
    let peak = hi - lo;
    let mse = sq_sum / count as f64;
    let peak2 = peak * peak;
    let db = if mse <= 1e-12 * peak2 {
        99.0
    } else if peak2 == 0.0 {
        -99.0
    } else {
        (10.0 * (peak2 / mse).log10()).min(99.0)
    };
    Ok((db, peak))
}

/// Per-step cosine similarity of a scheduled run against the oracle, for
/// residuals and for raw output features.
#[derive(Debug, Clone, Serialize)]
pub struct SimilarityCurves {
    pub residual: Vec<f64>,
    pub raw: Vec<f64>,
}

/// Compare a run's residuals and outputs against the oracle schedule,
/// step by step.
pub fn similarity_curves(run: &RunResult, oracle: &OracleTrajectory) -> Result<SimilarityCurves> {
    if run.outputs.len() != oracle.outputs.len() {
        return Err(Error::LengthMismatch {
            left: run.outputs.len(),
            right: oracle.outputs.len(),
        });
    }
    let mut residual = Vec::with_capacity(run.outputs.len());
    let mut raw = Vec::with_capacity(run.outputs.len());
    for s in 0..run.outputs.len() {
        residual.push(cosine_similarity(&run.residuals[s], &oracle.residuals[s])?);
        raw.push(cosine_similarity(&run.outputs[s], &oracle.outputs[s])?);
    }
    Ok(SimilarityCurves { residual, raw })
}

/// Two-component PCA of a sequence of equally shaped tensors.
///
/// Mean-centers the points, extracts the top two principal directions by
/// power iteration with projection deflation (tolerance 1e-9, at most 1000
/// iterations), fixes each direction's sign so its largest-magnitude
/// component is positive, and returns the per-point 2-D coordinates.
/// Identical points (zero total variance) project to all-zero coordinates.
pub fn pca_project(points: &[FeatureTensor]) -> Result<Vec<(f64, f64)>> {
    let decomposition = Pca2::fit(points)?;
    Ok(decomposition.coordinates())
}

/// Two-component principal decomposition behind [`pca_project`], exposed so
/// the directions and eigenvalues can be checked against independent
/// eigensolvers.
#[derive(Debug, Clone)]
pub struct Pca2 {
    /// Mean-centered data rows.
    centered: Vec<Vec<f64>>,
    /// Two unit principal directions (all-zero when variance is exhausted).
    pub directions: [Vec<f64>; 2],
    /// Variances captured by each direction, non-increasing.
    pub eigenvalues: [f64; 2],
}

impl Pca2 {
    /// Fit the decomposition to at least three equally shaped points.
    pub fn fit(points: &[FeatureTensor]) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::DegenerateData(format!(
                "need at least 3 points for a trajectory projection, got {}",
                points.len()
            )));
        }
        for pair in points.windows(2) {
            tensor::check_same_shape(&pair[0], &pair[1])?;
        }
        let n = points.len();
        let dim = points[0].len();
        let inv_n = 1.0 / n as f64;

        let mut mean = vec![0.0; dim];
        for p in points {
            for (m, &v) in mean.iter_mut().zip(p.data()) {
                *m += v * inv_n;
            }
        }
        let centered: Vec<Vec<f64>> = points
            .iter()
            .map(|p| p.data().iter().zip(&mean).map(|(&v, &m)| v - m).collect())
            .collect();

        let total_variance: f64 = centered
            .iter()
            .flat_map(|row| row.iter().map(|v| v * v))
            .sum::<f64>()
            * inv_n;
        if total_variance <= 1e-24 {
            return Ok(Self {
                centered,
                directions: [vec![0.0; dim], vec![0.0; dim]],
                eigenvalues: [0.0, 0.0],
            });
        }

        // Matrix-free covariance product: C v = (1/n) Σ y (y·v).
        let cov_apply = |v: &[f64]| -> Vec<f64> {
            let mut out = vec![0.0; dim];
            for row in &centered {
                let proj: f64 = row.iter().zip(v).map(|(&y, &vi)| y * vi).sum();
                for (o, &y) in out.iter_mut().zip(row) {
                    *o += y * proj * inv_n;
                }
            }
            out
        };

        let mut directions = [vec![0.0; dim], vec![0.0; dim]];
        let mut eigenvalues = [0.0f64; 2];
        let mut found: Vec<Vec<f64>> = Vec::with_capacity(2);
        // Deflation leaves rounding residue of order 1e-16 * lambda_1 in the
        // removed directions; anything below this floor is variance that the
        // data cannot actually resolve, not a real component.
        let dead_floor = total_variance * 1e-14;
        for comp in 0..2 {
            // Deterministic pseudo-random start so a fixed start vector can
            // never sit exactly orthogonal to the dominant direction of some
            // structured input.
            let mut rng = SplitMix64::new(0x5eed + comp as u64);
            let mut v: Vec<f64> = (0..dim).map(|_| rng.uniform(-1.0, 1.0)).collect();
            orthogonalize(&mut v, &found);
            if normalize_in_place(&mut v) < EPS_NORM {
                continue;
            }
            let mut dead = false;
            for _ in 0..1000 {
                let mut next = cov_apply(&v);
                orthogonalize(&mut next, &found);
                if normalize_in_place(&mut next) < dead_floor {
                    dead = true;
                    break;
                }
                let delta: f64 = next
                    .iter()
                    .zip(&v)
                    .map(|(&a, &b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt();
                v = next;
                if delta <= 1e-9 {
                    break;
                }
            }
            if dead {
                continue;
            }
            fix_sign(&mut v);
            let cv = cov_apply(&v);
            eigenvalues[comp] = v.iter().zip(&cv).map(|(&a, &b)| a * b).sum();
            directions[comp] = v.clone();
            found.push(v);
        }

        Ok(Self {
            centered,
            directions,
            eigenvalues,
        })
    }

    /// Per-point coordinates along the two principal directions.
    pub fn coordinates(&self) -> Vec<(f64, f64)> {
        self.centered
            .iter()
            .map(|row| {
                let p1: f64 = row
                    .iter()
                    .zip(&self.directions[0])
                    .map(|(&y, &d)| y * d)
                    .sum();
                let p2: f64 = row
                    .iter()
                    .zip(&self.directions[1])
                    .map(|(&y, &d)| y * d)
                    .sum();
                (p1, p2)
            })
            .collect()
    }
}

fn orthogonalize(v: &mut [f64], basis: &[Vec<f64>]) {
    for b in basis {
        let coeff: f64 = b.iter().zip(v.iter()).map(|(&bi, &vi)| bi * vi).sum();
        for (vi, &bi) in v.iter_mut().zip(b) {
            *vi -= coeff * bi;
        }
    }
}

fn normalize_in_place(v: &mut [f64]) -> f64 {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
    norm
}

/// Flip `v` so its largest-magnitude component is positive.
fn fix_sign(v: &mut [f64]) {
    let mut idx = 0;
    let mut best = 0.0;
    for (i, &x) in v.iter().enumerate() {
        if x.abs() > best {
            best = x.abs();
            idx = i;
        }
    }
    if v[idx] < 0.0 {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

/// Experiment identity attached to a report so comparisons can verify they
/// are looking at the same run setup.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportMeta {
    pub method: String,
    pub family: String,
    pub total_steps: usize,
    pub dim: usize,
    pub seed: u64,
    /// Gate threshold; infinite thresholds serialize as `"inf"`/`"-inf"`
    /// strings since JSON numbers cannot carry them.
    #[serde(serialize_with = "serialize_extended_real")]
    pub theta: f64,
    pub lambda: f64,
    /// Dynamic range used as the PSNR peak.
    pub psnr_peak: f64,
}

fn serialize_extended_real<S: serde::Serializer>(
    v: &f64,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else if *v > 0.0 {
        s.serialize_str("inf")
    } else if *v < 0.0 {
        s.serialize_str("-inf")
    } else {
        s.serialize_str("nan")
    }
}

/// Per-step quality metrics versus the oracle, plus temporal similarity of
/// consecutive residuals/outputs within the run itself (index 0 has no
/// predecessor and reports 0 by convention).
#[derive(Debug, Clone, Serialize)]
pub struct PerStepMetrics {
    pub step: usize,
    pub output_rel_l2: f64,
    pub output_cosine: f64,
    pub residual_cosine_vs_prev: f64,
    pub raw_cosine_vs_prev: f64,
}

/// Whole-run summary.
#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub final_rel_l2: f64,
    pub mean_rel_l2: f64,
    pub psnr_db: f64,
    pub compute_ratio: f64,
    pub skip_count: usize,
}

/// Quality report for one scheduled run against its oracle.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub meta: ReportMeta,
    pub summary: RunSummary,
    pub per_step: Vec<PerStepMetrics>,
}

impl RunReport {
    /// Pretty JSON rendering with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Per-step metrics as CSV with 9-significant-digit values.
    pub fn per_step_csv(&self) -> String {
        let mut out = String::from(
            "step,output_rel_l2,output_cosine,residual_cosine_vs_prev,raw_cosine_vs_prev\n",
        );
        for row in &self.per_step {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                row.step,
                crate::fmt::sig9(row.output_rel_l2),
                crate::fmt::sig9(row.output_cosine),
                crate::fmt::sig9(row.residual_cosine_vs_prev),
                crate::fmt::sig9(row.raw_cosine_vs_prev),
            ));
        }
        out
    }
}

/// Identity of a report used when building [`ReportMeta`].
pub struct RunIdentity {
    pub method: String,
    pub family: String,
    pub dim: usize,
    pub seed: u64,
    pub theta: f64,
    pub lambda: f64,
}

/// Evaluate a run against the oracle trajectory.
pub fn evaluate_run(
    run: &RunResult,
    oracle: &OracleTrajectory,
    identity: RunIdentity,
) -> Result<RunReport> {
    let total = run.outputs.len();
    if total != oracle.outputs.len() {
        return Err(Error::LengthMismatch {
            left: total,
            right: oracle.outputs.len(),
        });
    }
    if total == 0 {
        return Err(Error::EmptySequence);
    }
    let mut per_step = Vec::with_capacity(total);
    let mut rel_sum = 0.0;
    for s in 0..total {
        let output_rel_l2 = relative_l2(&run.outputs[s], &oracle.outputs[s])?;
        let output_cosine = cosine_similarity(&run.outputs[s], &oracle.outputs[s])?;
        let residual_cosine_vs_prev = if s == 0 {
            0.0
        } else {
            cosine_similarity(&run.residuals[s], &run.residuals[s - 1])?
        };
        let raw_cosine_vs_prev = if s == 0 {
            0.0
        } else {
            cosine_similarity(&run.outputs[s], &run.outputs[s - 1])?
        };
        rel_sum += output_rel_l2;
        per_step.push(PerStepMetrics {
            step: s,
            output_rel_l2,
            output_cosine,
            residual_cosine_vs_prev,
            raw_cosine_vs_prev,
        });
    }
    let (psnr_db, peak) = psnr_with_peak(&run.outputs, &oracle.outputs)?;
    let summary = RunSummary {
        final_rel_l2: per_step[total - 1].output_rel_l2,
        mean_rel_l2: rel_sum / total as f64,
        psnr_db,
        compute_ratio: run.stats.compute_ratio,
        skip_count: run.stats.predicted,
    };
    Ok(RunReport {
        meta: ReportMeta {
            method: identity.method,
            family: identity.family,
            total_steps: total,
            dim: identity.dim,
            seed: identity.seed,
            theta: identity.theta,
            lambda: identity.lambda,
            psnr_peak: peak,
        },
        summary,
        per_step,
    })
}

/// Copy the per-step oracle comparisons into the scheduler's step traces.
pub fn annotate_traces(
    traces: &mut [StepTrace],
    run: &RunResult,
    oracle: &OracleTrajectory,
) -> Result<()> {
    if traces.len() != oracle.outputs.len() {
        return Err(Error::LengthMismatch {
            left: traces.len(),
            right: oracle.outputs.len(),
        });
    }
    for (s, trace) in traces.iter_mut().enumerate() {
        trace.output_error_l2 = Some(relative_l2(&run.outputs[s], &oracle.outputs[s])?);
        trace.output_cosine = Some(cosine_similarity(&run.outputs[s], &oracle.outputs[s])?);
        trace.residual_cosine = Some(cosine_similarity(
            &run.residuals[s],
            &oracle.residuals[s],
        )?);
    }
    Ok(())
}

/// Mean and median of a batch of per-seed values (comparison deltas,
/// per-seed errors).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BatchStats {
    pub mean: f64,
    pub median: f64,
}

/// Aggregate a batch of values. The median of an even-length batch is the
/// midpoint of the two central order statistics.
pub fn batch_stats(values: &[f64]) -> Result<BatchStats> {
    if values.is_empty() {
        return Err(Error::EmptySequence);
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    let n = sorted.len();
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    };
    Ok(BatchStats { mean, median })
}

/// Which method won a metric (lower error / higher PSNR).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Winner {
    Pade,
    Taylor,
    Tie,
}

fn winner_lower(pade: f64, taylor: f64) -> Winner {
    if pade < taylor {
        Winner::Pade
    } else if taylor < pade {
        Winner::Taylor
    } else {
        Winner::Tie
    }
}

/// Side-by-side deltas between a rational-predictor run and the polynomial
/// baseline on the identical experiment (deltas are pade − taylor).
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonSummary {
    pub final_rel_l2_delta: f64,
    pub mean_rel_l2_delta: f64,
    pub psnr_delta: f64,
    pub compute_ratio_delta: f64,
    pub winner_final: Winner,
    pub winner_mean: Winner,
    pub winner_psnr: Winner,
}

/// Compare two reports from the same experiment configuration.
pub fn compare_runs(pade: &RunReport, taylor: &RunReport) -> Result<ComparisonSummary> {
    let same = pade.meta.total_steps == taylor.meta.total_steps
        && pade.meta.dim == taylor.meta.dim
        && pade.meta.seed == taylor.meta.seed
        && pade.meta.family == taylor.meta.family;
    if !same {
        return Err(Error::ConfigMismatch(format!(
            "{}/{}-step seed {} vs {}/{}-step seed {}",
            pade.meta.family,
            pade.meta.total_steps,
            pade.meta.seed,
            taylor.meta.family,
            taylor.meta.total_steps,
            taylor.meta.seed,
        )));
    }
    Ok(ComparisonSummary {
        final_rel_l2_delta: pade.summary.final_rel_l2 - taylor.summary.final_rel_l2,
        mean_rel_l2_delta: pade.summary.mean_rel_l2 - taylor.summary.mean_rel_l2,
        psnr_delta: pade.summary.psnr_db - taylor.summary.psnr_db,
        compute_ratio_delta: pade.summary.compute_ratio - taylor.summary.compute_ratio,
        winner_final: winner_lower(pade.summary.final_rel_l2, taylor.summary.final_rel_l2),
        winner_mean: winner_lower(pade.summary.mean_rel_l2, taylor.summary.mean_rel_l2),
        winner_psnr: winner_lower(taylor.summary.psnr_db, pade.summary.psnr_db),
    })
}
