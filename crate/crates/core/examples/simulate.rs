//! End-to-end gated run on a synthetic rational trajectory.
//!
//! ```text
//! cargo run --example simulate
//! ```
//!
//! Prints the per-step decision log (which steps ran the model, which were
//! forecast, and why) followed by compute accounting and error metrics
//! against the ground-truth trajectory.

use padecast::metrics::{evaluate_run, RunIdentity};
use padecast::scheduler::{run, CachePolicy};
use padecast::simulator::{oracle_trajectory, Family, TrajectoryModel};
use padecast::tensor::FeatureTensor;

fn main() -> padecast::Result<()> {
    let policy = CachePolicy::default(); // T=20, N=4, warmup=3, theta=1.0
    let mut model = TrajectoryModel::new(Family::Rational, 64, 0, policy.total_steps)?;
    let x0 = FeatureTensor::zeros(64)?;

    let result = run(&policy, &mut model, &x0)?;
    let oracle = oracle_trajectory(&model, &x0, policy.total_steps)?;

    println!("step  t   action   reason                tsi        sigma");
    for trace in &result.traces {
        println!(
            "{:>4} {:>3}  {:<8} {:<20} {:<10} {}",
            trace.step,
            trace.diffusion_t,
            if trace.predicted { "predict" } else { "full" },
            format!("{:?}", trace.decision.reason),
            trace
                .decision
                .tsi_value
                .map(|v| format!("{v:.4}"))
                .unwrap_or_else(|| "-".into()),
            trace
                .sigma
                .map(|v| format!("{v:.4}"))
                .unwrap_or_else(|| "-".into()),
        );
    }

    let report = evaluate_run(
        &result,
        &oracle,
        RunIdentity {
            method: "pade".into(),
            family: "rational".into(),
            dim: 64,
            seed: 0,
            theta: policy.theta,
            lambda: policy.lambda,
        },
    )?;
    println!();
    println!(
        "full evals: {} / {}   compute ratio: {:.3}",
        result.stats.full_evals, policy.total_steps, result.stats.compute_ratio
    );
    println!(
        "final rel L2: {:.6}   mean rel L2: {:.6}   PSNR: {:.2} dB",
        report.summary.final_rel_l2, report.summary.mean_rel_l2, report.summary.psnr_db
    );
    Ok(())
}
