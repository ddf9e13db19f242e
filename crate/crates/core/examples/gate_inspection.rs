//! The stability indicator on trajectories of different character, and the
//! decisions a threshold turns them into.
//!
//! ```text
//! cargo run --example gate_inspection
//! ```
//!
//! The alignment indicator reads the angle between consecutive residual
//! *changes*: colinear changes score 2 (stable), orthogonal 1, reversals 0.

use padecast::gate::{decide, tsi, GateAction, TsiVariant};
use padecast::simulator::{Family, TrajectoryModel};
use padecast::tensor::FeatureTensor;

fn t(values: &[f64]) -> FeatureTensor {
    FeatureTensor::from_vec(values.to_vec()).unwrap()
}

fn main() -> padecast::Result<()> {
    println!("hand-built residual triples (oldest, middle, newest):");
    let cases: [(&str, FeatureTensor, FeatureTensor, FeatureTensor); 3] = [
        ("steady march", t(&[0.0]), t(&[1.0]), t(&[2.0])),
        ("reversal", t(&[0.0]), t(&[1.0]), t(&[0.0])),
        ("right turn", t(&[0.0, 0.0]), t(&[1.0, 0.0]), t(&[1.0, 1.0])),
    ];
    for (label, r3, r2, r1) in &cases {
        let raw = tsi(r3, r2, r1, TsiVariant::Raw)?;
        let alignment = tsi(r3, r2, r1, TsiVariant::Alignment)?;
        println!("  {label:<13} raw = {raw:.5}   alignment = {alignment:.5}");
    }

    println!();
    println!("alignment indicator along synthetic trajectories (theta = 1.0):");
    for family in [Family::Rational, Family::SmoothRandom, Family::PhaseComposite] {
        let model = TrajectoryModel::new(family, 32, 12, 20)?;
        let mut skip = 0;
        let mut values = Vec::new();
        for s in 3..20 {
            let r3 = model.residual_at(s - 3)?;
            let r2 = model.residual_at(s - 2)?;
            let r1 = model.residual_at(s - 1)?;
            let value = tsi(&r3, &r2, &r1, TsiVariant::Alignment)?;
            if decide(value, 1.0).action == GateAction::Predict {
                skip += 1;
            }
            values.push(value);
        }
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
        println!(
            "  {:<16} mean {mean:.3}, min {min:.3} -> gate would skip {skip}/17 steps",
            format!("{family:?}"),
        );
    }
    Ok(())
}
