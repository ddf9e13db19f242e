//! Gate-threshold sweep: how the skip count and quality trade off as the
//! stability bar rises.
//!
//! ```text
//! cargo run --example sweep_theta
//! ```
//!
//! Higher thresholds demand more directional consistency from the residual
//! trajectory before a step may be skipped, so skips fall (and fidelity
//! rises) as theta grows.

use padecast::metrics::{evaluate_run, RunIdentity};
use padecast::scheduler::{run, CachePolicy};
use padecast::simulator::{oracle_trajectory, Family, TrajectoryModel};
use padecast::tensor::FeatureTensor;

fn main() -> padecast::Result<()> {
    let seed = 3;
    println!("theta  skips  ratio   final rel L2   PSNR (dB)");
    for theta in [0.7, 1.0, 1.3] {
        let policy = CachePolicy {
            theta,
            ..CachePolicy::default()
        };
        let mut model = TrajectoryModel::new(Family::SmoothRandom, 64, seed, policy.total_steps)?;
        let x0 = FeatureTensor::zeros(64)?;
        let result = run(&policy, &mut model, &x0)?;
        let oracle = oracle_trajectory(&model, &x0, policy.total_steps)?;
        let report = evaluate_run(
            &result,
            &oracle,
            RunIdentity {
                method: "pade".into(),
                family: "smooth-random".into(),
                dim: 64,
                seed,
                theta,
                lambda: policy.lambda,
            },
        )?;
        println!(
            "{:>5}  {:>5}  {:.3}   {:>12.6e}  {:>8.2}",
            theta,
            report.summary.skip_count,
            report.summary.compute_ratio,
            report.summary.final_rel_l2,
            report.summary.psnr_db,
        );
    }
    Ok(())
}
