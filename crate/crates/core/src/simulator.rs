//! Deterministic synthetic denoising backends.
//!
//! Each model produces a step-dependent residual `R*(s)` in closed form and
//! answers block evaluations as `y = x + R*(s)`. Residuals depend on the step
//! only, never on the input, so the ground-truth trajectory is cheap to
//! compute and any deviation of a scheduled run from the oracle is
//! attributable to the residual predictor rather than to compounded latent
//! drift inside the model itself.
//!
//! Family parameters are drawn once from the seed: amplitudes in `[-1, 1]`,
//! decay/pole rates in `[0.1, 1]`, sinusoid frequencies in `[0.1, π/4]`
//! (below Nyquist at unit step spacing, so sampled trajectories stay smooth).
//! Polynomial coefficients for power `j` are scaled by `(2/T)^j` to keep
//! values O(1) across the schedule.

use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use crate::scheduler::ModelCall;
use crate::tensor::{self, FeatureTensor};

/// Synthetic residual family.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize, clap::ValueEnum,
)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `a / (1 + c*s) + b` per element, `c > 0`.
    Rational,
    /// `a * exp(-c*s)` per element.
    Exponential,
    /// `Σ_j p_j * s^j` per element, degree configurable.
    Polynomial,
    /// Sum of seeded sinusoids per element.
    SmoothRandom,
    /// Fast-varying early segment, smooth rational mid, slow linear late.
    PhaseComposite,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Rational => "rational",
            Family::Exponential => "exponential",
            Family::Polynomial => "polynomial",
            Family::SmoothRandom => "smooth-random",
            Family::PhaseComposite => "phase-composite",
        }
    }
}

/// Optional explicit parameters; anything left `None` is drawn from the seed.
#[derive(Debug, Clone, Default)]
pub struct FamilyParams {
    /// Amplitudes `a` (rational, exponential). Length must equal `dim`.
    pub amplitudes: Option<Vec<f64>>,
    /// Offsets `b` (rational). Length must equal `dim`.
    pub offsets: Option<Vec<f64>>,
    /// Pole/decay rates `c` (rational, exponential); must be positive.
    pub poles: Option<Vec<f64>>,
    /// Polynomial degree.
    pub degree: Option<usize>,
    /// Sinusoid count for the smooth-random family.
    pub sinusoids: Option<usize>,
}

/// Default polynomial degree.
pub const DEFAULT_DEGREE: usize = 3;
/// Default sinusoid count.
pub const DEFAULT_SINUSOIDS: usize = 4;

#[derive(Debug, Clone)]
enum FamilyKind {
    Rational {
        a: Vec<f64>,
        b: Vec<f64>,
        c: Vec<f64>,
    },
    Exponential {
        a: Vec<f64>,
        c: Vec<f64>,
    },
    Polynomial {
        // coeffs[i] holds p_0..p_d for element i.
        coeffs: Vec<Vec<f64>>,
    },
    SmoothRandom {
        // amp/omega/phi[i] hold the per-sinusoid parameters for element i.
        amp: Vec<Vec<f64>>,
        omega: Vec<Vec<f64>>,
        phi: Vec<Vec<f64>>,
    },
    PhaseComposite {
        early_amp: Vec<Vec<f64>>,
        early_omega: Vec<Vec<f64>>,
        early_phi: Vec<Vec<f64>>,
        mid_a: Vec<f64>,
        mid_b: Vec<f64>,
        mid_c: Vec<f64>,
        late_base: Vec<f64>,
        late_slope: Vec<f64>,
    },
}

/// Deterministic synthetic model: a pure function of `(step, seed, params)`
/// plus an invocation counter.
#[derive(Debug, Clone)]
pub struct TrajectoryModel {
    family: Family,
    dim: usize,
    seed: u64,
    total_steps: usize,
    kind: FamilyKind,
    calls: u64,
}

impl TrajectoryModel {
    /// Build a model with all parameters drawn from the seed.
    pub fn new(family: Family, dim: usize, seed: u64, total_steps: usize) -> Result<Self> {
        Self::with_params(family, dim, seed, total_steps, &FamilyParams::default())
    }

    /// Build a model, honouring any explicitly supplied parameters.
    pub fn with_params(
        family: Family,
        dim: usize,
        seed: u64,
        total_steps: usize,
        params: &FamilyParams,
    ) -> Result<Self> {
        if dim == 0 || total_steps == 0 {
            return Err(Error::InvalidPolicy(
                "model dim and total_steps must be positive".into(),
            ));
        }
        let mut rng = SplitMix64::new(seed);
        #[derive(PartialEq)]
        enum Bound {
            Free,
            Positive,
            NonNegative,
        }
        let take = |explicit: &Option<Vec<f64>>,
                    rng: &mut SplitMix64,
                    lo: f64,
                    hi: f64,
                    bound: Bound|
         -> Result<Vec<f64>> {
            match explicit {
                Some(values) => {
                    if values.len() != dim {
                        return Err(Error::LengthMismatch {
                            left: values.len(),
                            right: dim,
                        });
                    }
                    let floor_ok = |v: f64| match bound {
                        Bound::Free => true,
                        Bound::Positive => v > 0.0,
                        Bound::NonNegative => v >= 0.0,
                    };
                    if let Some(&bad) = values.iter().find(|v| !floor_ok(**v)) {
                        return Err(Error::OutOfRange {
                            name: "pole rate",
                            value: bad,
                            min: if bound == Bound::Positive {
                                f64::MIN_POSITIVE
                            } else {
                                0.0
                            },
                            max: f64::MAX,
                        });
                    }
                    Ok(values.clone())
                }
                None => Ok(rng.uniform_vec(dim, lo, hi)),
            }
        };

        let kind = match family {
            Family::Rational => {
                let a = take(&params.amplitudes, &mut rng, -1.0, 1.0, Bound::Free)?;
                let b = take(&params.offsets, &mut rng, -1.0, 1.0, Bound::Free)?;
                // Positive rates keep the pole at s = -1/c outside the schedule.
                let c = take(&params.poles, &mut rng, 0.1, 1.0, Bound::Positive)?;
                FamilyKind::Rational { a, b, c }
            }
            Family::Exponential => {
                let a = take(&params.amplitudes, &mut rng, -1.0, 1.0, Bound::Free)?;
                // Zero decay (a constant residual) is a legitimate edge case.
                let c = take(&params.poles, &mut rng, 0.1, 1.0, Bound::NonNegative)?;
                FamilyKind::Exponential { a, c }
            }
            Family::Polynomial => {
                let degree = params.degree.unwrap_or(DEFAULT_DEGREE);
                let base = 2.0 / total_steps as f64;
                let coeffs = (0..dim)
                    .map(|_| {
                        (0..=degree)
                            .map(|j| rng.uniform(-1.0, 1.0) * base.powi(j as i32))
                            .collect()
                    })
                    .collect();
                FamilyKind::Polynomial { coeffs }
            }
            Family::SmoothRandom => {
                let m = params.sinusoids.unwrap_or(DEFAULT_SINUSOIDS);
                let mut amp = Vec::with_capacity(dim);
                let mut omega = Vec::with_capacity(dim);
                let mut phi = Vec::with_capacity(dim);
                for _ in 0..dim {
                    amp.push(rng.uniform_vec(m, -1.0, 1.0));
                    omega.push(rng.uniform_vec(m, 0.1, std::f64::consts::FRAC_PI_4));
                    phi.push(rng.uniform_vec(m, 0.0, std::f64::consts::TAU));
                }
                FamilyKind::SmoothRandom { amp, omega, phi }
            }
            Family::PhaseComposite => {
                let m = params.sinusoids.unwrap_or(DEFAULT_SINUSOIDS);
                let mut early_amp = Vec::with_capacity(dim);
                let mut early_omega = Vec::with_capacity(dim);
                let mut early_phi = Vec::with_capacity(dim);
                for _ in 0..dim {
                    early_amp.push(rng.uniform_vec(m, -1.0, 1.0));
                    early_omega.push(rng.uniform_vec(
                        m,
                        std::f64::consts::FRAC_PI_4,
                        std::f64::consts::FRAC_PI_2,
                    ));
                    early_phi.push(rng.uniform_vec(m, 0.0, std::f64::consts::TAU));
                }
                FamilyKind::PhaseComposite {
                    early_amp,
                    early_omega,
                    early_phi,
                    mid_a: rng.uniform_vec(dim, -1.0, 1.0),
                    mid_b: rng.uniform_vec(dim, -1.0, 1.0),
                    mid_c: rng.uniform_vec(dim, 0.1, 1.0),
                    late_base: rng.uniform_vec(dim, -1.0, 1.0),
                    late_slope: rng.uniform_vec(dim, -0.02, 0.02),
                }
            }
        };
        Ok(Self {
            family,
            dim,
            seed,
            total_steps,
            kind,
            calls: 0,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn total_steps(&self) -> usize {
        self.total_steps
    }

    /// Closed-form residual `R*(step)`.
    pub fn residual_at(&self, step: usize) -> Result<FeatureTensor> {
        if step >= self.total_steps {
            return Err(Error::StepOutOfRange {
                step,
                total: self.total_steps,
            });
        }
        let s = step as f64;
        let data: Vec<f64> = match &self.kind {
            FamilyKind::Rational { a, b, c } => (0..self.dim)
                .map(|i| a[i] / (1.0 + c[i] * s) + b[i])
                .collect(),
            FamilyKind::Exponential { a, c } => {
                (0..self.dim).map(|i| a[i] * (-c[i] * s).exp()).collect()
            }
            FamilyKind::Polynomial { coeffs } => (0..self.dim)
                .map(|i| {
                    // Horner evaluation, highest power first.
                    coeffs[i]
                        .iter()
                        .rev()
                        .fold(0.0, |acc, &p| acc * s + p)
                })
                .collect(),
            FamilyKind::SmoothRandom { amp, omega, phi } => (0..self.dim)
                .map(|i| {
                    amp[i]
                        .iter()
                        .zip(&omega[i])
                        .zip(&phi[i])
                        .map(|((&a, &w), &p)| a * (w * s + p).sin())
                        .sum()
                })
                .collect(),
            FamilyKind::PhaseComposite {
                early_amp,
                early_omega,
                early_phi,
                mid_a,
                mid_b,
                mid_c,
                late_base,
                late_slope,
            } => {
                let total = self.total_steps as f64;
                if s < 0.3 * total {
                    (0..self.dim)
                        .map(|i| {
                            early_amp[i]
                                .iter()
                                .zip(&early_omega[i])
                                .zip(&early_phi[i])
                                .map(|((&a, &w), &p)| a * (w * s + p).sin())
                                .sum()
                        })
                        .collect()
                } else if s < 0.7 * total {
                    let s0 = (0.3 * total).ceil();
                    (0..self.dim)
                        .map(|i| mid_a[i] / (1.0 + mid_c[i] * (s - s0)) + mid_b[i])
                        .collect()
                } else {
                    let s1 = (0.7 * total).ceil();
                    (0..self.dim)
                        .map(|i| late_base[i] + late_slope[i] * (s - s1))
                        .collect()
                }
            }
        };
        FeatureTensor::new(data, vec![self.dim])
    }
}

impl ModelCall for TrajectoryModel {
    fn evaluate(&mut self, input: &FeatureTensor, step: usize) -> Result<FeatureTensor> {
        if input.len() != self.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                got: input.len(),
            });
        }
        let residual = self.residual_at(step)?;
        self.calls += 1;
        tensor::add(input, &residual)
    }

    fn calls(&self) -> u64 {
        self.calls
    }
}

/// Ground-truth full-computation run: inputs, outputs and residuals for every
/// step under the same explicit Euler latent update the scheduler uses.
#[derive(Debug, Clone)]
pub struct OracleTrajectory {
    pub inputs: Vec<FeatureTensor>,
    pub outputs: Vec<FeatureTensor>,
    pub residuals: Vec<FeatureTensor>,
}

/// Run the model at every step without any gating or prediction.
pub fn oracle_trajectory(
    model: &TrajectoryModel,
    x0: &FeatureTensor,
    total_steps: usize,
) -> Result<OracleTrajectory> {
    if x0.len() != model.dim() {
        return Err(Error::DimMismatch {
            expected: model.dim(),
            got: x0.len(),
        });
    }
    if total_steps == 0 || total_steps > model.total_steps() {
        return Err(Error::StepOutOfRange {
            step: total_steps,
            total: model.total_steps(),
        });
    }
    let delta = 1.0 / total_steps as f64;
    let mut inputs = Vec::with_capacity(total_steps);
    let mut outputs = Vec::with_capacity(total_steps);
    let mut residuals = Vec::with_capacity(total_steps);
    let mut x = x0.clone();
    for step in 0..total_steps {
        let residual = model.residual_at(step)?;
        let y = tensor::add(&x, &residual)?;
        let next = tensor::scale_add(1.0, &x, delta, &y)?;
        inputs.push(x);
        outputs.push(y);
        residuals.push(residual);
        x = next;
    }
    Ok(OracleTrajectory {
        inputs,
        outputs,
        residuals,
    })
}
