use std::f64::consts::PI;

use proptest::prelude::*;
use trivar::angle::wrap;
use trivar::synth::{random_rotation, random_smooth_states, RandomPathSpec};
use trivar::*;

fn spec(n: usize, carrier: f64) -> RandomPathSpec<f64> {
    RandomPathSpec {
        n_samples: n,
        duration: n as f64,
        carrier,
        lambda_range: (0.1, 0.9),
        modulation: 1.0,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn synthesize_then_extract_recovers_paths(seed in 0u64..10_000, carrier in 0.03f64..0.3) {
        let truth = random_smooth_states(&spec(512, carrier), seed).unwrap();
        let xp = ellipse_synthesize(&truth.states, 1.0).unwrap();
        let dec = ellipse_extract(&xp, &ExtractOptions::default());
        let edge = edge_flags(512, 0.05);
        for (i, (s, t)) in dec.ellipse.states.iter().zip(&truth.states).enumerate() {
            if edge[i] {
                continue;
            }
            prop_assert!((s.kappa - t.kappa).abs() < 1e-8);
            prop_assert!((s.lambda - t.lambda).abs() < 1e-8);
            prop_assert!(wrap(s.alpha - t.alpha).abs() < 1e-6);
            prop_assert!((s.beta - t.beta).abs() < 1e-6);
            // (theta, phi) and (theta + pi, phi + pi) describe the same ellipse
            let dt = wrap(s.theta - t.theta);
            let dp = wrap(s.phi - t.phi);
            let same = dt.abs() < 1e-6 && dp.abs() < 1e-6;
            let flipped = wrap(dt - PI).abs() < 1e-6 && wrap(dp - PI).abs() < 1e-6;
            prop_assert!(same || flipped, "theta {dt}, phi {dp}");
        }
    }

    #[test]
    fn extracted_rates_track_ground_truth(seed in 0u64..10_000) {
        let truth = random_smooth_states(&spec(1024, 0.15), seed).unwrap();
        let xp = ellipse_synthesize(&truth.states, 1.0).unwrap();
        let dec = ellipse_extract(&xp, &ExtractOptions::default());
        let rates = ellipse_rates(&dec.ellipse, 1.0, DerivativeScheme::Central4);
        let edge = edge_flags(1024, 0.05);
        for i in (0..1024).filter(|&i| !edge[i]) {
            let (r, t) = (&rates.rates[i], &truth.rates[i]);
            prop_assert!((r.dkappa_rel - t.dkappa_rel).abs() < 1e-6);
            prop_assert!((r.dlambda - t.dlambda).abs() < 1e-6);
            prop_assert!((r.omega_phi - t.omega_phi).abs() < 1e-6);
            prop_assert!((r.omega_theta - t.omega_theta).abs() < 1e-6);
            prop_assert!((r.omega_alpha - t.omega_alpha).abs() < 1e-6);
            prop_assert!((r.omega_beta - t.omega_beta).abs() < 1e-6);
        }
    }

    #[test]
    fn normal_is_orthogonal_and_scaled(seed in 0u64..10_000) {
        let truth = random_smooth_states(&spec(256, 0.2), seed).unwrap();
        let xp = ellipse_synthesize(&truth.states, 1.0).unwrap();
        let nv = normal_vector(&xp, 1e-6);
        for (i, x) in xp.samples().iter().enumerate() {
            let nh = nv.n_hat[i];
            let re: f64 = (0..3).map(|k| nh[k] * x[k].re).sum();
            let im: f64 = (0..3).map(|k| nh[k] * x[k].im).sum();
            prop_assert!(re.abs() < 1e-12 && im.abs() < 1e-12);
            let s = &truth.states[i];
            prop_assert!((nv.mag[i] - s.a * s.b).abs() < 1e-12 * (1.0 + s.a * s.b));
            let tn = s.unit_normal();
            let c: f64 = (0..3).map(|k| tn[k] * nh[k]).sum();
            prop_assert!((c - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn moments_are_frame_invariant(seed in 0u64..10_000, rot_seed in 0u64..10_000) {
        let truth = random_smooth_states(&spec(256, 0.12), seed).unwrap();
        let xp = ellipse_synthesize(&truth.states, 1.0).unwrap();
        let rot = random_rotation::<f64>(rot_seed);
        let cfg = AnalysisConfig::default();
        let a = analyze(&xp, &cfg).unwrap();
        let b = analyze(&rotate_frame(&xp, &rot).unwrap(), &cfg).unwrap();
        for i in 0..256 {
            prop_assert!((a.moments.omega_x[i] - b.moments.omega_x[i]).abs() < 1e-10);
            prop_assert!((a.moments.sigma2_x[i] - b.moments.sigma2_x[i]).abs() < 1e-10);
            prop_assert!((a.bandwidth.term_precession[i] - b.bandwidth.term_precession[i]).abs() < 1e-10);
            prop_assert!((a.bandwidth.term_normal[i] - b.bandwidth.term_normal[i]).abs() < 1e-10);
        }
        prop_assert!((a.global_spectral.mean_freq - b.global_spectral.mean_freq).abs() < 1e-12);
    }

    #[test]
    fn transform_keeps_real_part_and_is_analytic(seed in 0u64..10_000, n in 16usize..300) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let samples: Vec<[f64; 3]> = (0..n)
            .map(|_| [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)])
            .collect();
        let x = RealSignal3::new(samples, 0.25).unwrap();
        let xp = analytic_transform(&x);
        for (a, b) in xp.real_part().iter().zip(x.samples()) {
            prop_assert_eq!(a, b);
        }
        prop_assert!(hilbert_check(&xp) < 1e-10);
    }
}

#[test]
fn linear_precession_rate_is_recovered() {
    let w_theta = 0.004;
    let states: Vec<_> = (0..600)
        .map(|t| {
            let t = t as f64;
            EllipseState::from_axes(2.0, 1.0, 0.1 + w_theta * t, 0.2 * t, 0.7, 1.1)
        })
        .collect();
    let xp = ellipse_synthesize(&states, 1.0).unwrap();
    let dec = ellipse_extract(&xp, &ExtractOptions::default());
    let rates = ellipse_rates(&dec.ellipse, 1.0, DerivativeScheme::Central4);
    let edge = edge_flags(600, 0.05);
    for (i, r) in rates.rates.iter().enumerate() {
        if !edge[i] {
            assert!((r.omega_theta - w_theta).abs() < 1e-6);
            assert!((r.omega_phi - 0.2).abs() < 1e-8);
            assert!(r.omega_alpha.abs() < 1e-8 && r.omega_beta.abs() < 1e-8);
        }
    }
}

#[test]
fn single_precision_pipeline_runs() {
    let states: Vec<EllipseState<f32>> = (0..512)
        .map(|t| EllipseState::from_axes(3.0, 2.0, 1.0, 0.1 * t as f32, 0.5, 0.8))
        .collect();
    let xp: AnalyticSignal3F32 = ellipse_synthesize(&states, 1.0).unwrap();
    let a: AnalysisF32 = analyze(&xp, &AnalysisConfig::default()).unwrap();
    let edge = edge_flags(512, 0.05);
    for i in (0..512).filter(|&i| !edge[i]) {
        assert!((a.moments.omega_x[i] - 0.1).abs() < 1e-3);
        assert!((a.decomposition.ellipse.states[i].a - 3.0).abs() < 1e-4);
    }
    let x = xp.to_real().unwrap();
    let again = analyze_real(&x, &AnalysisConfig::default()).unwrap();
    let s = again.spectrum.unwrap();
    assert!((s.normalization() - 1.0).abs() < 1e-5);
}
