//! Guided tour of the forecasting primitives on hand-sized inputs.
//!
//! ```text
//! cargo run --example predictor_basics
//! ```

use padecast::predictor::{
    adaptive_coefficients, pade21_predict, rational_predict, reconstruct_output,
    stability_factor, step_aware_predict, taylor_predict, PhaseConfig, RationalCoeffs,
};
use padecast::tensor::FeatureTensor;

fn t(values: &[f64]) -> FeatureTensor {
    FeatureTensor::from_vec(values.to_vec()).unwrap()
}

fn main() -> padecast::Result<()> {
    // The stability factor compares the two newest cached residuals:
    // identical residuals give 1, a sign flip drives it to nearly 0.
    let steady = stability_factor(&t(&[1.0, 1.0]), &t(&[1.0, 1.0]), 10.0)?;
    let flipped = stability_factor(&t(&[1.0, 0.0]), &t(&[0.0, 1.0]), 10.0)?;
    println!("stability factor, steady pair:  {steady}");
    println!("stability factor, rotated pair: {flipped:e}");

    // Coefficients scale linearly with the factor: (2s, -s, s/lambda).
    let coeffs = adaptive_coefficients(1.0, 10.0)?;
    println!(
        "coefficients at sigma=1, lambda=10: b0={}, b1={}, a1={}",
        coeffs.b0, coeffs.b1, coeffs.a1
    );

    // [2/1] forecast from three cached residuals (oldest first).
    let (forecast, diag) = pade21_predict(&t(&[4.0]), &t(&[2.0]), &t(&[2.0]), 10.0)?;
    println!(
        "pade21([4],[2],[2]) = {:?} (sigma = {})",
        forecast.data(),
        diag.sigma
    );

    // The general rational form with the same coefficient layout agrees
    // with the specialized path bit for bit.
    let general = rational_predict(
        &[t(&[4.0]), t(&[2.0]), t(&[2.0])],
        &RationalCoeffs::from_pade(&diag),
    )?;
    assert_eq!(forecast, general);
    println!("general rational form agrees exactly");

    // Step-aware dispatch: the same history forecasts differently by phase.
    let phase_cfg = PhaseConfig::default();
    let history = (t(&[0.9]), t(&[1.0]), t(&[1.1]));
    for (label, diffusion_t) in [("early", 18), ("mid", 10), ("late", 1)] {
        let prediction = step_aware_predict(
            Some(&history.0),
            &history.1,
            &history.2,
            diffusion_t,
            20,
            &phase_cfg,
            10.0,
        )?;
        println!(
            "t={diffusion_t:<2} ({label:<5}) -> residual {:?} via {:?}",
            prediction.residual.data(),
            prediction.phase
        );
    }

    // Reconstruction adds the forecast residual onto the block input.
    let output = reconstruct_output(&t(&[10.0]), &t(&[0.5]))?;
    println!("reconstructed output: {:?}", output.data());

    // The polynomial baseline is exact on sequences of its own degree and
    // drifts on anything rational.
    let quadratic = [t(&[0.0]), t(&[1.0]), t(&[4.0])];
    println!(
        "taylor order 2 on 0,1,4 (s^2): {:?}",
        taylor_predict(&quadratic, 2)?.data()
    );
    let rational_seq = [t(&[1.0]), t(&[0.5]), t(&[1.0 / 3.0])];
    println!(
        "taylor order 2 on 1/(1+s):     {:?} (true next value 0.25)",
        taylor_predict(&rational_seq, 2)?.data()
    );
    let (pade_next, _) = pade21_predict(&rational_seq[0], &rational_seq[1], &rational_seq[2], 10.0)?;
    println!("pade21 on the same history:    {:?}", pade_next.data());
    Ok(())
}
