//! Sensitivity sweep: how lambda shapes the stability factor and, through
//! it, the forecast quality.
//!
//! ```text
//! cargo run --example sweep_lambda
//! ```
//!
//! The stability factor is exp(-lambda * relative residual change), so for
//! any fixed pair of unequal residuals it falls strictly as lambda grows:
//! larger lambda damps the predictor harder on the same evidence.

use padecast::metrics::{evaluate_run, RunIdentity};
use padecast::predictor::stability_factor;
use padecast::scheduler::{run, CachePolicy};
use padecast::simulator::{oracle_trajectory, Family, TrajectoryModel};
use padecast::tensor::FeatureTensor;

fn main() -> padecast::Result<()> {
    // Probe pair: residuals whose relative change is 1/3.
    let r_prev = FeatureTensor::from_vec(vec![2.0, 0.0])?;
    let r_prev2 = FeatureTensor::from_vec(vec![1.0, 0.0])?;
    println!("stability factor on a fixed probe pair (diff/sum norm = 1/3):");
    for lambda in [5.0, 10.0, 15.0] {
        println!(
            "  lambda {:>4}: sigma = {:.6}",
            lambda,
            stability_factor(&r_prev, &r_prev2, lambda)?
        );
    }

    let seed = 8;
    println!();
    println!("lambda  skips  ratio   final rel L2   PSNR (dB)");
    for lambda in [5.0, 10.0, 15.0] {
        let policy = CachePolicy {
            lambda,
            ..CachePolicy::default()
        };
        let mut model = TrajectoryModel::new(Family::Exponential, 64, seed, policy.total_steps)?;
        let x0 = FeatureTensor::zeros(64)?;
        let result = run(&policy, &mut model, &x0)?;
        let oracle = oracle_trajectory(&model, &x0, policy.total_steps)?;
        let report = evaluate_run(
            &result,
            &oracle,
            RunIdentity {
                method: "pade".into(),
                family: "exponential".into(),
                dim: 64,
                seed,
                theta: policy.theta,
                lambda,
            },
        )?;
        println!(
            "{:>6}  {:>5}  {:.3}   {:>12.6e}  {:>8.2}",
            lambda,
            report.summary.skip_count,
            report.summary.compute_ratio,
            report.summary.final_rel_l2,
            report.summary.psnr_db,
        );
    }
    Ok(())
}
