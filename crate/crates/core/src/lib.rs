//! Stability-gated rational residual forecasting for iterative denoising
//! loops.
//!
//! Iterative samplers spend almost all of their time re-evaluating a large
//! model whose block output changes slowly between steps. This crate skips
//! those evaluations when the trajectory is stable: it caches whole-block
//! *residuals* (block output minus block input), gates each step on a
//! trajectory-stableness indicator computed from the three newest residuals,
//! and forecasts skipped residuals with an adaptive `[2/1]` rational
//! predictor whose coefficients are damped by an exponential stability
//! factor. A three-phase dispatcher switches between recency-weighted
//! averaging (early, high noise), the plain rational forecast (mid), and a
//! velocity-corrected forecast (late).
//!
//! Everything is verified against deterministic synthetic denoising
//! backends whose ground truth is closed-form, with a polynomial
//! (backward-difference) extrapolation baseline for comparison.
//!
//! # Modules
//!
//! - [`tensor`] — dense f64 feature vectors and guarded elementwise math
//! - [`predictor`] — stability factor, adaptive coefficients, rational and
//!   polynomial forecasting, step-aware dispatch
//! - [`gate`] — trajectory-stableness indicator and the skip/compute rule
//! - [`scheduler`] — the cache-interval loop orchestrating model calls,
//!   history, gating, and prediction
//! - [`simulator`] — seeded synthetic trajectory families and the oracle
//! - [`metrics`] — error/similarity metrics, PSNR, PCA trajectory projection
//! - [`config`] / [`cli`] — experiment configuration and the command-line
//!   front end
//!
//! # Quick start
//!
//! ```
//! use padecast::scheduler::{run, CachePolicy};
//! use padecast::simulator::{oracle_trajectory, Family, TrajectoryModel};
//! use padecast::tensor::FeatureTensor;
//!
//! let policy = CachePolicy::default(); // T=20, N=4, theta=1.0, lambda=10
//! let mut model = TrajectoryModel::new(Family::Rational, 64, 0, 20)?;
//! let x0 = FeatureTensor::zeros(64)?;
//!
//! let result = run(&policy, &mut model, &x0)?;
//! let oracle = oracle_trajectory(&model, &x0, 20)?;
//! assert_eq!(result.stats.full_evals + result.stats.predicted, 20);
//! # Ok::<(), padecast::Error>(())
//! ```
//!
//! The `padecast` binary wraps the same machinery behind `simulate`,
//! `compare`, and `sweep` subcommands; see the crate examples for library
//! usage per capability.

pub mod cli;
pub mod config;
pub mod error;
pub mod fmt;
pub mod gate;
pub mod metrics;
pub mod predictor;
pub mod rng;
pub mod scheduler;
pub mod simulator;
pub mod tensor;

pub use error::{Error, Result};
pub use tensor::FeatureTensor;
