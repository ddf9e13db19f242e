//! Rational residual forecasting versus polynomial extrapolation of raw
//! features, on the same trajectory with the same skip schedule.
//!
//! ```text
//! cargo run --example compare_taylor
//! ```
//!
//! The gate threshold is set to negative infinity so both schedulers
//! predict at exactly the same steps; any quality difference is purely the
//! predictors'.

use padecast::metrics::{compare_runs, evaluate_run, RunIdentity, Winner};
use padecast::scheduler::{run, run_taylor_baseline, CachePolicy};
use padecast::simulator::{oracle_trajectory, Family, TrajectoryModel};
use padecast::tensor::FeatureTensor;

fn main() -> padecast::Result<()> {
    let policy = CachePolicy {
        theta: f64::NEG_INFINITY,
        taylor_order: 2,
        ..CachePolicy::default()
    };
    let seed = 5;
    let model = TrajectoryModel::new(Family::Rational, 64, seed, policy.total_steps)?;
    let x0 = FeatureTensor::zeros(64)?;
    let oracle = oracle_trajectory(&model, &x0, policy.total_steps)?;

    let identity = |method: &str| RunIdentity {
        method: method.into(),
        family: "rational".into(),
        dim: 64,
        seed,
        theta: policy.theta,
        lambda: policy.lambda,
    };

    let mut pade_model = model.clone();
    let pade_run = run(&policy, &mut pade_model, &x0)?;
    let pade = evaluate_run(&pade_run, &oracle, identity("pade"))?;

    let mut taylor_model = model.clone();
    let taylor_run = run_taylor_baseline(&policy, &mut taylor_model, &x0)?;
    let taylor = evaluate_run(&taylor_run, &oracle, identity("taylor"))?;

    println!("method  skips  ratio   final rel L2   mean rel L2   PSNR (dB)");
    for report in [&pade, &taylor] {
        println!(
            "{:<7} {:>5}  {:.3}   {:>12.6e}  {:>12.6e}  {:>8.2}",
            report.meta.method,
            report.summary.skip_count,
            report.summary.compute_ratio,
            report.summary.final_rel_l2,
            report.summary.mean_rel_l2,
            report.summary.psnr_db,
        );
    }

    let comparison = compare_runs(&pade, &taylor)?;
    println!();
    match comparison.winner_final {
        Winner::Pade => println!(
            "rational forecasting wins on final error by {:.3e}",
            -comparison.final_rel_l2_delta
        ),
        Winner::Taylor => println!(
            "polynomial baseline wins on final error by {:.3e}",
            comparison.final_rel_l2_delta
        ),
        Winner::Tie => println!("dead heat on final error"),
    }
    Ok(())
}
