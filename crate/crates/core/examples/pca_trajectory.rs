//! Joint PCA projection of a gated run and its ground-truth trajectory,
//! the 2-D picture of how far the cached run drifts.
//!
//! ```text
//! cargo run --example pca_trajectory
//! ```
//!
//! Both output sequences are embedded in one principal plane (fit on their
//! union), so the printed coordinates are directly comparable per step.

use padecast::metrics::pca_project;
use padecast::scheduler::{run, CachePolicy};
use padecast::simulator::{oracle_trajectory, Family, TrajectoryModel};
use padecast::tensor::FeatureTensor;

fn main() -> padecast::Result<()> {
    let policy = CachePolicy {
        theta: 0.7, // aggressive skipping to make drift visible
        ..CachePolicy::default()
    };
    let mut model = TrajectoryModel::new(Family::PhaseComposite, 64, 21, policy.total_steps)?;
    let x0 = FeatureTensor::zeros(64)?;
    let result = run(&policy, &mut model, &x0)?;
    let oracle = oracle_trajectory(&model, &x0, policy.total_steps)?;

    let total = policy.total_steps;
    let mut joint = Vec::with_capacity(2 * total);
    joint.extend(oracle.outputs.iter().cloned());
    joint.extend(result.outputs.iter().cloned());
    let coords = pca_project(&joint)?;
    let (oracle_coords, run_coords) = coords.split_at(total);

    println!("step  action    oracle (p1, p2)          gated run (p1, p2)       drift");
    for step in 0..total {
        let (op1, op2) = oracle_coords[step];
        let (rp1, rp2) = run_coords[step];
        let drift = ((rp1 - op1).powi(2) + (rp2 - op2).powi(2)).sqrt();
        println!(
            "{:>4}  {:<8} ({:>9.4}, {:>9.4})   ({:>9.4}, {:>9.4})   {:.5}",
            step,
            if result.traces[step].predicted {
                "predict"
            } else {
                "full"
            },
            op1,
            op2,
            rp1,
            rp2,
            drift
        );
    }
    println!();
    println!(
        "{} of {} steps were forecast; drift resets where the gate forces full computes",
        result.stats.predicted, total
    );
    Ok(())
}
