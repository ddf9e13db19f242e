//! Residual versus raw-feature similarity against the ground-truth
//! schedule, per step.
//!
//! ```text
//! cargo run --example similarity_curves
//! ```
//!
//! Two curves are emitted: the cosine between the run's residual and the
//! true residual at each step, and the same for the output features. Full
//! computations pin the residual curve to exactly 1 (the model was actually
//! called), so the curves show where forecasts degrade and how interval
//! anchors and the gate pull the trajectory back.

use padecast::metrics::similarity_curves;
use padecast::scheduler::{run, CachePolicy};
use padecast::simulator::{oracle_trajectory, Family, TrajectoryModel};
use padecast::tensor::FeatureTensor;

fn main() -> padecast::Result<()> {
    let policy = CachePolicy {
        theta: 0.7,
        ..CachePolicy::default()
    };
    let mut model = TrajectoryModel::new(Family::Exponential, 64, 4, policy.total_steps)?;
    let x0 = FeatureTensor::zeros(64)?;
    let result = run(&policy, &mut model, &x0)?;
    let oracle = oracle_trajectory(&model, &x0, policy.total_steps)?;
    let curves = similarity_curves(&result, &oracle)?;

    println!("step  action    cos(residual, oracle)  cos(output, oracle)");
    for (step, trace) in result.traces.iter().enumerate() {
        println!(
            "{:>4}  {:<8}  {:>20.9}  {:>19.9}",
            step,
            if trace.predicted { "predict" } else { "full" },
            curves.residual[step],
            curves.raw[step],
        );
    }

    let worst_residual = curves
        .residual
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    let worst_output = curves.raw.iter().cloned().fold(f64::INFINITY, f64::min);
    println!();
    println!(
        "{} forecast steps; worst residual cosine {:.6}, worst output cosine {:.6}",
        result.stats.predicted, worst_residual, worst_output
    );
    println!("full-compute steps hold the residual curve at exactly 1");
    Ok(())
}
