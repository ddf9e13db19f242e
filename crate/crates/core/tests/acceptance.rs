//! Acceptance suite: one test per release criterion, each printing a
//! PASS line with its measured values (visible under `--nocapture`).
//!
//! Run with:
//!
//! ```text
//! cargo test --test acceptance -- --nocapture
//! ```

use std::time::Instant;

use padecast::config::ExperimentConfig;
use padecast::cli::{cmd_simulate, cmd_sweep, SweepAxis};
use padecast::gate::{tsi, TsiVariant};
use padecast::metrics::{pca_project, relative_l2, Pca2};
use padecast::predictor::{
    adaptive_coefficients, pade21_predict, rational_predict, stability_factor, taylor_predict,
    RationalCoeffs,
};
use padecast::rng::SplitMix64;
use padecast::scheduler::{run, run_taylor_baseline, CachePolicy};
use padecast::simulator::{oracle_trajectory, Family, TrajectoryModel};
use padecast::tensor::{cosine_similarity, scale_add, sub, FeatureTensor};

fn tensor(values: &[f64]) -> FeatureTensor {
    FeatureTensor::from_vec(values.to_vec()).unwrap()
}

fn random_tensor(rng: &mut SplitMix64, dim: usize, lo: f64, hi: f64) -> FeatureTensor {
    FeatureTensor::from_vec(rng.uniform_vec(dim, lo, hi)).unwrap()
}

#[test]
fn criterion_01_formula_fidelity() {
    let start = Instant::now();

    let ones = tensor(&[1.0]);
    let (pade, _) = pade21_predict(&ones, &ones, &ones, 10.0).unwrap();
    let pade_value = pade.data()[0];
    assert!(
        (pade_value - 0.909_090_909).abs() < 1e-9,
        "pade21 on ones: {pade_value}"
    );

    let sigma = stability_factor(&tensor(&[1.0, 0.0]), &tensor(&[0.0, 1.0]), 10.0).unwrap();
    assert!(
        (sigma - 4.539_99e-5).abs() < 1e-9,
        "stability factor: {sigma}"
    );

    let coeffs = adaptive_coefficients(1.0, 10.0).unwrap();
    assert_eq!(
        (coeffs.b0, coeffs.b1, coeffs.a1),
        (2.0, -1.0, 0.1),
        "adaptive coefficients must be exact"
    );

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "runtime budget: {elapsed:?}");
    println!(
        "criterion 01 formula fidelity: PASS (pade={pade_value:.9}, sigma={sigma:.6e}, \
         coeffs=({},{},{}), {elapsed:?})",
        coeffs.b0, coeffs.b1, coeffs.a1
    );
}

#[test]
fn criterion_02_pade_rational_consistency() {
    let start = Instant::now();
    let mut rng = SplitMix64::new(0x0202);
    let lambda = 10.0;
    for trial in 0..1000 {
        let r3 = random_tensor(&mut rng, 32, -2.0, 2.0);
        let r2 = random_tensor(&mut rng, 32, -2.0, 2.0);
        let r1 = random_tensor(&mut rng, 32, -2.0, 2.0);
        let (specialized, coeffs) = pade21_predict(&r3, &r2, &r1, lambda).unwrap();
        let general = rational_predict(
            &[r3, r2, r1],
            &RationalCoeffs::from_pade(&coeffs),
        )
        .unwrap();
        for (e, (&a, &b)) in specialized.data().iter().zip(general.data()).enumerate() {
            assert!(
                a == b,
                "trial {trial} element {e}: {a:?} != {b:?} (0 ulp required)"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "runtime budget: {elapsed:?}");
    println!(
        "criterion 02 pade/rational consistency: PASS (1000 triples, dim 32, 0 ulp, {elapsed:?})"
    );
}

#[test]
fn criterion_03_stability_factor_properties() {
    let mut rng = SplitMix64::new(0x0303);
    let lambda = 10.0;

    for _ in 0..10_000 {
        let a = random_tensor(&mut rng, 16, -3.0, 3.0);
        let b = random_tensor(&mut rng, 16, -3.0, 3.0);
        let sigma = stability_factor(&a, &b, lambda).unwrap();
        assert!(sigma > 0.0 && sigma <= 1.0, "sigma out of range: {sigma}");
        // Random pairs are distinct with probability 1.
        assert!(sigma < 1.0, "sigma hit 1 on unequal inputs");
    }

    // Equality is the only way to reach exactly 1.
    let r = tensor(&[0.3, -0.7, 2.0]);
    assert_eq!(stability_factor(&r, &r, lambda).unwrap(), 1.0);

    // Scale invariance: the norm ratio is homogeneous of degree zero.
    let mut max_dev: f64 = 0.0;
    for _ in 0..200 {
        let a = random_tensor(&mut rng, 16, -3.0, 3.0);
        let b = random_tensor(&mut rng, 16, -3.0, 3.0);
        let base = stability_factor(&a, &b, lambda).unwrap();
        for c in [-3.0, 0.5, 10.0] {
            let ca = scale_add(c, &a, 0.0, &a).unwrap();
            let cb = scale_add(c, &b, 0.0, &b).unwrap();
            let scaled = stability_factor(&ca, &cb, lambda).unwrap();
            max_dev = max_dev.max((scaled - base).abs());
        }
    }
    assert!(max_dev <= 1e-12, "scale invariance deviation {max_dev:.3e}");
    println!(
        "criterion 03 stability factor properties: PASS (10^4 pairs in (0,1], \
         scale-invariance dev {max_dev:.3e})"
    );
}

#[test]
#[allow(clippy::approx_constant)] // 0.70711 is the pinned hand-derived value
fn criterion_04_tsi_properties() {
    let mut rng = SplitMix64::new(0x0404);
    let mut max_identity_dev: f64 = 0.0;
    for _ in 0..1000 {
        let r3 = random_tensor(&mut rng, 32, -2.0, 2.0);
        let r2 = random_tensor(&mut rng, 32, -2.0, 2.0);
        let r1 = random_tensor(&mut rng, 32, -2.0, 2.0);
        let raw = tsi(&r3, &r2, &r1, TsiVariant::Raw).unwrap();
        let alignment = tsi(&r3, &r2, &r1, TsiVariant::Alignment).unwrap();
        assert!((0.0..=1.0).contains(&raw), "raw out of range: {raw}");
        assert!(
            (0.0..=2.0).contains(&alignment),
            "alignment out of range: {alignment}"
        );
        let d1 = sub(&r1, &r2).unwrap();
        let d2 = sub(&r2, &r3).unwrap();
        let expected = 1.0 + cosine_similarity(&d1, &d2).unwrap();
        max_identity_dev = max_identity_dev.max((alignment - expected).abs());
    }
    assert!(
        max_identity_dev <= 1e-9,
        "alignment identity deviation {max_identity_dev:.3e}"
    );

    // Hand-derived cases: colinear, reversal, orthogonal residual diffs.
    let colinear = (tensor(&[0.0]), tensor(&[1.0]), tensor(&[2.0]));
    assert_eq!(tsi(&colinear.0, &colinear.1, &colinear.2, TsiVariant::Raw).unwrap(), 0.0);
    assert_eq!(
        tsi(&colinear.0, &colinear.1, &colinear.2, TsiVariant::Alignment).unwrap(),
        2.0
    );
    let reversal = (tensor(&[0.0]), tensor(&[1.0]), tensor(&[0.0]));
    assert_eq!(tsi(&reversal.0, &reversal.1, &reversal.2, TsiVariant::Raw).unwrap(), 1.0);
    assert_eq!(
        tsi(&reversal.0, &reversal.1, &reversal.2, TsiVariant::Alignment).unwrap(),
        0.0
    );
    let orthogonal = (
        tensor(&[0.0, 0.0]),
        tensor(&[1.0, 0.0]),
        tensor(&[1.0, 1.0]),
    );
    let raw = tsi(&orthogonal.0, &orthogonal.1, &orthogonal.2, TsiVariant::Raw).unwrap();
    assert!((raw - 0.707_11).abs() < 1e-5, "orthogonal raw: {raw}");
    let alignment = tsi(&orthogonal.0, &orthogonal.1, &orthogonal.2, TsiVariant::Alignment).unwrap();
    assert!((alignment - 1.0).abs() < 1e-9, "orthogonal alignment: {alignment}");

    println!(
        "criterion 04 TSI properties: PASS (1000 triples in range, identity dev \
         {max_identity_dev:.3e}, hand cases exact)"
    );
}

#[test]
fn criterion_05_taylor_polynomial_exactness() {
    let mut worst: f64 = 0.0;
    for order in [1usize, 2] {
        let mut rng = SplitMix64::new(0x0505 + order as u64);
        for trial in 0..100 {
            let degree = (rng.next_u64() as usize) % (order + 1);
            let dim = 4;
            // Per-element polynomial coefficients in [-1, 1].
            let coeffs: Vec<Vec<f64>> = (0..dim)
                .map(|_| rng.uniform_vec(degree + 1, -1.0, 1.0))
                .collect();
            let eval = |s: f64| -> FeatureTensor {
                FeatureTensor::from_vec(
                    coeffs
                        .iter()
                        .map(|c| c.iter().rev().fold(0.0, |acc, &p| acc * s + p))
                        .collect(),
                )
                .unwrap()
            };
            let len = order + 1 + (trial % 3);
            let history: Vec<FeatureTensor> = (0..len).map(|s| eval(s as f64)).collect();
            let predicted = taylor_predict(&history, order).unwrap();
            // Independent oracle: direct polynomial evaluation at the next point.
            let expected = eval(len as f64);
            let err = predicted.max_abs_diff(&expected).unwrap();
            worst = worst.max(err);
            assert!(
                err < 1e-9,
                "order {order} trial {trial} degree {degree}: error {err:.3e}"
            );
        }
    }
    println!("criterion 05 taylor exactness: PASS (200 seeded polynomials, worst {worst:.3e})");
}

#[test]
fn criterion_06_scheduler_accounting_and_oracle_equivalence() {
    // Accounting across a spread of thresholds.
    for theta in [f64::NEG_INFINITY, 0.0, 0.7, 1.0, 1.3, f64::INFINITY] {
        let policy = CachePolicy {
            theta,
            ..CachePolicy::default()
        };
        let mut model = TrajectoryModel::new(Family::SmoothRandom, 32, 11, 20).unwrap();
        let result = run(&policy, &mut model, &FeatureTensor::zeros(32).unwrap()).unwrap();
        assert_eq!(
            result.stats.full_evals + result.stats.predicted,
            20,
            "accounting at theta {theta}"
        );
    }

    // Hand-traced example: T=8, N=4, warmup=3, always-pass gate.
    let policy = CachePolicy {
        total_steps: 8,
        theta: f64::NEG_INFINITY,
        ..CachePolicy::default()
    };
    let mut model = TrajectoryModel::new(Family::Exponential, 8, 2, 8).unwrap();
    let result = run(&policy, &mut model, &FeatureTensor::zeros(8).unwrap()).unwrap();
    let full_steps: Vec<usize> = result
        .traces
        .iter()
        .filter(|tr| !tr.predicted)
        .map(|tr| tr.step)
        .collect();
    assert_eq!(full_steps, vec![0, 1, 2, 4]);
    assert_eq!(result.stats.full_evals, 4);

    // Impassable gate reproduces the oracle bit for bit.
    let policy = CachePolicy {
        theta: f64::INFINITY,
        ..CachePolicy::default()
    };
    let x0 = FeatureTensor::zeros(64).unwrap();
    let mut model = TrajectoryModel::new(Family::PhaseComposite, 64, 13, 20).unwrap();
    let result = run(&policy, &mut model, &x0).unwrap();
    let oracle = oracle_trajectory(&model, &x0, 20).unwrap();
    for (s, (got, want)) in result.outputs.iter().zip(&oracle.outputs).enumerate() {
        assert_eq!(got, want, "output differs from oracle at step {s}");
    }

    println!(
        "criterion 06 scheduler accounting: PASS (F+P=T, hand trace {{0,1,2,4}}, \
         theta=inf bit-exact vs oracle)"
    );
}

#[test]
fn criterion_07_threshold_monotonicity() {
    let start = Instant::now();
    let thetas = [0.7, 1.0, 1.3];
    let mut rows = Vec::new();
    for seed in 0..20u64 {
        let mut skips = Vec::with_capacity(3);
        for &theta in &thetas {
            let policy = CachePolicy {
                theta,
                tsi_variant: TsiVariant::Alignment,
                ..CachePolicy::default()
            };
            let mut model = TrajectoryModel::new(Family::SmoothRandom, 64, seed, 20).unwrap();
            let result = run(&policy, &mut model, &FeatureTensor::zeros(64).unwrap()).unwrap();
            skips.push(result.stats.predicted);
        }
        assert!(
            skips[0] >= skips[1] && skips[1] >= skips[2],
            "seed {seed}: skip counts {skips:?} not non-increasing in theta"
        );
        rows.push(skips);
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "runtime budget: {elapsed:?}");
    let mean = |i: usize| rows.iter().map(|r| r[i] as f64).sum::<f64>() / rows.len() as f64;
    println!(
        "criterion 07 threshold monotonicity: PASS (20 seeds, mean skips {:.2}/{:.2}/{:.2} \
         at theta 0.7/1.0/1.3, {elapsed:?})",
        mean(0),
        mean(1),
        mean(2)
    );
}

#[test]
fn criterion_08_pade_vs_taylor_benchmark() {
    let start = Instant::now();
    let policy = CachePolicy {
        theta: f64::NEG_INFINITY,
        taylor_order: 2,
        ..CachePolicy::default()
    };
    assert_eq!(policy.total_steps, 20);
    assert_eq!(policy.interval, 4);
    assert_eq!(policy.warmup, 3);

    let seeds = 100u64;
    let mut pade_errors = Vec::with_capacity(seeds as usize);
    let mut taylor_errors = Vec::with_capacity(seeds as usize);
    let mut pade_wins = 0usize;
    for seed in 0..seeds {
        let model = TrajectoryModel::new(Family::Rational, 64, seed, 20).unwrap();
        let x0 = FeatureTensor::zeros(64).unwrap();
        let mut pade_model = model.clone();
        let mut taylor_model = model.clone();
        let pade_run = run(&policy, &mut pade_model, &x0).unwrap();
        let taylor_run = run_taylor_baseline(&policy, &mut taylor_model, &x0).unwrap();
        // Identical prediction step sets by construction.
        for (a, b) in pade_run.traces.iter().zip(&taylor_run.traces) {
            assert_eq!(a.predicted, b.predicted, "step sets diverged");
        }
        let oracle = oracle_trajectory(&model, &x0, 20).unwrap();
        let pade_err = relative_l2(&pade_run.outputs[19], &oracle.outputs[19]).unwrap();
        let taylor_err = relative_l2(&taylor_run.outputs[19], &oracle.outputs[19]).unwrap();
        pade_errors.push(pade_err);
        taylor_errors.push(taylor_err);
        if pade_err <= taylor_err {
            pade_wins += 1;
        }
    }
    let pade_stats = padecast::metrics::batch_stats(&pade_errors).unwrap();
    let taylor_stats = padecast::metrics::batch_stats(&taylor_errors).unwrap();
    // Independent re-summation of the aggregate.
    let resummed: f64 = pade_errors.iter().sum::<f64>() / pade_errors.len() as f64;
    assert!((pade_stats.mean - resummed).abs() < 1e-12 * (1.0 + resummed));

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "runtime budget: {elapsed:?}");
    assert!(
        pade_stats.mean <= taylor_stats.mean,
        "mean final rel L2: pade {:.6e} vs taylor {:.6e}",
        pade_stats.mean,
        taylor_stats.mean
    );
    println!(
        "criterion 08 pade vs taylor benchmark: PASS (100 rational trajectories, mean final \
         rel L2 pade {:.4e} <= taylor {:.4e}, medians {:.4e} vs {:.4e}, pade wins \
         {pade_wins}/100, {elapsed:?})",
        pade_stats.mean, taylor_stats.mean, pade_stats.median, taylor_stats.median
    );
}

#[test]
fn criterion_09_lambda_sweep() {
    // Fixed probe pair with nonequal residuals: sigma must fall as lambda
    // grows, by monotonicity of exp.
    let r_prev = tensor(&[2.0, 0.0]);
    let r_prev2 = tensor(&[1.0, 0.0]);
    let sigmas: Vec<f64> = [5.0, 10.0, 15.0]
        .iter()
        .map(|&l| stability_factor(&r_prev, &r_prev2, l).unwrap())
        .collect();
    assert!(
        sigmas[0] - sigmas[1] > 1e-12 && sigmas[1] - sigmas[2] > 1e-12,
        "sigma not strictly decreasing: {sigmas:?}"
    );

    let dir = tempfile::tempdir().unwrap();
    let cfg = ExperimentConfig {
        out: dir.path().display().to_string(),
        ..Default::default()
    };
    let artifacts = cmd_sweep(&cfg, SweepAxis::Lambda, &[5.0, 10.0, 15.0]).unwrap();
    assert_eq!(artifacts.rows.len(), 3);
    let csv = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 4, "header plus three rows");
    assert_eq!(lines[0], "value,skip_count,compute_ratio,final_rel_l2,psnr");

    println!(
        "criterion 09 lambda sweep: PASS (sigma {:.6}/{:.6}/{:.6} strictly decreasing, \
         3 rows emitted)",
        sigmas[0], sigmas[1], sigmas[2]
    );
}

#[test]
fn criterion_10_determinism() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    let cfg = |out: &std::path::Path| ExperimentConfig {
        seed: 424242,
        family: Family::SmoothRandom,
        out: out.display().to_string(),
        ..Default::default()
    };
    cmd_simulate(&cfg(dir_a.path())).unwrap();
    cmd_simulate(&cfg(dir_b.path())).unwrap();
    for file in ["trace.csv", "report.json", "pca.csv"] {
        let a = std::fs::read(dir_a.path().join(file)).unwrap();
        let b = std::fs::read(dir_b.path().join(file)).unwrap();
        assert_eq!(a, b, "{file} not byte-identical across runs");
        assert!(!a.is_empty());
    }
    println!("criterion 10 determinism: PASS (trace.csv, report.json, pca.csv byte-identical)");
}

#[test]
fn criterion_11_pca_against_brute_force() {
    // Rank-1 data: second component must vanish.
    let line: Vec<FeatureTensor> = (0..5)
        .map(|i| tensor(&[i as f64, 2.0 * i as f64, -0.5 * i as f64]))
        .collect();
    for (_, p2) in pca_project(&line).unwrap() {
        assert!(p2.abs() < 1e-9, "rank-1 p2 = {p2}");
    }

    // Random low-dimensional data with per-axis scaling for an eigengap.
    let mut worst: f64 = 0.0;
    for (seed, dim) in [(1u64, 2usize), (2, 3), (3, 4), (4, 6), (5, 8)] {
        let mut rng = SplitMix64::new(seed);
        let points: Vec<FeatureTensor> = (0..12)
            .map(|_| {
                FeatureTensor::from_vec(
                    (0..dim)
                        .map(|j| rng.uniform(-1.0, 1.0) * (1.0 + 2.0 * j as f64))
                        .collect(),
                )
                .unwrap()
            })
            .collect();

        let pca = Pca2::fit(&points).unwrap();
        let coords = pca.coordinates();

        let (eigenvalues, eigenvectors, centered) = brute_force_top2(&points);
        // The comparison is only meaningful with separated eigenvalues.
        assert!(
            eigenvalues[0] - eigenvalues[1] > 1e-3 * eigenvalues[0],
            "seed {seed}: oracle eigengap too small: {eigenvalues:?}"
        );
        if dim > 2 {
            assert!(
                eigenvalues[1] - eigenvalues[2] > 1e-3 * eigenvalues[0],
                "seed {seed}: oracle second gap too small: {eigenvalues:?}"
            );
        }

        #[allow(clippy::needless_range_loop)]
        for comp in 0..2 {
            let oracle_proj: Vec<f64> = centered
                .iter()
                .map(|row| row.iter().zip(&eigenvectors[comp]).map(|(&y, &v)| y * v).sum())
                .collect();
            let mine: Vec<f64> = coords
                .iter()
                .map(|&(p1, p2)| if comp == 0 { p1 } else { p2 })
                .collect();
            // Sign of an eigenvector is arbitrary; compare up to a flip.
            let dev_plus = oracle_proj
                .iter()
                .zip(&mine)
                .map(|(&a, &b)| (a - b).abs())
                .fold(0.0, f64::max);
            let dev_minus = oracle_proj
                .iter()
                .zip(&mine)
                .map(|(&a, &b)| (a + b).abs())
                .fold(0.0, f64::max);
            let dev = dev_plus.min(dev_minus);
            worst = worst.max(dev);
            assert!(
                dev < 1e-6,
                "seed {seed} component {comp}: projection deviation {dev:.3e}"
            );
        }
    }
    println!(
        "criterion 11 PCA correctness: PASS (rank-1 p2 ~ 0, brute-force match worst \
         {worst:.3e} over 5 datasets)"
    );
}

/// Independent oracle for criterion 11: dense covariance + cyclic Jacobi
/// eigendecomposition, no code shared with the power-iteration path.
#[allow(clippy::needless_range_loop)]
fn brute_force_top2(points: &[FeatureTensor]) -> (Vec<f64>, Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let n = points.len();
    let dim = points[0].len();
    let mut mean = vec![0.0; dim];
    for p in points {
        for (m, &v) in mean.iter_mut().zip(p.data()) {
            *m += v / n as f64;
        }
    }
    let centered: Vec<Vec<f64>> = points
        .iter()
        .map(|p| p.data().iter().zip(&mean).map(|(&v, &m)| v - m).collect())
        .collect();
    let mut cov = vec![vec![0.0; dim]; dim];
    for row in &centered {
        for i in 0..dim {
            for j in 0..dim {
                cov[i][j] += row[i] * row[j] / n as f64;
            }
        }
    }
    let (eigenvalues, eigenvectors) = jacobi_eigen(cov);
    (eigenvalues, eigenvectors, centered)
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. Returns
/// eigenvalues in descending order with matching eigenvectors (rows).
#[allow(clippy::needless_range_loop)]
fn jacobi_eigen(mut a: Vec<Vec<f64>>) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for _sweep in 0..200 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[i][j] * a[i][j];
            }
        }
        if off < 1e-28 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k][p];
                    let vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut pairs: Vec<(f64, Vec<f64>)> = (0..n)
        .map(|k| (a[k][k], (0..n).map(|i| v[i][k]).collect()))
        .collect();
    pairs.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap());
    let eigenvalues = pairs.iter().map(|p| p.0).collect();
    let eigenvectors = pairs.into_iter().map(|p| p.1).collect();
    (eigenvalues, eigenvectors)
}
