use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use trivar::synth::random_rotation;
use trivar::*;

fn sign_changes(h: &[f64]) -> usize {
    // ignore the vanishing tails where round-off could flip signs
    let scale = h.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let sig: Vec<f64> = h
        .iter()
        .copied()
        .filter(|v| v.abs() > 1e-9 * scale)
        .collect();
    sig.windows(2).filter(|w| w[0] * w[1] < 0.0).count()
}

/// In-band energy by direct quadrature of the taper's spectrum on a fine
/// grid, independent of the autocorrelation formula used by the library.
fn in_band_energy(h: &[f64], w: f64) -> f64 {
    let m = 4000;
    let mut acc = 0.0;
    for j in 0..=m {
        let f = -w + 2.0 * w * j as f64 / m as f64;
        let (mut re, mut im) = (0.0, 0.0);
        for (n, v) in h.iter().enumerate() {
            let a = -2.0 * PI * f * n as f64;
            re += v * a.cos();
            im += v * a.sin();
        }
        let weight = if j == 0 || j == m { 0.5 } else { 1.0 };
        acc += weight * (re * re + im * im);
    }
    acc * 2.0 * w / m as f64
}

#[test]
fn reference_tapers_are_orthonormal_and_concentrated() {
    let set = slepian_tapers::<f64>(800, 2.0, 3).unwrap();
    assert_eq!(set.len(), 3);
    assert_eq!(set.taper_len(), 800);
    for j in 0..3 {
        for k in 0..3 {
            let d: f64 = set.tapers[j]
                .iter()
                .zip(&set.tapers[k])
                .map(|(a, b)| a * b)
                .sum();
            let e = if j == k { 1.0 } else { 0.0 };
            assert!((d - e).abs() < 1e-10, "{j} {k} {d}");
        }
    }
    for (k, h) in set.tapers.iter().enumerate() {
        assert_eq!(sign_changes(h), k, "taper {k}");
        assert!(h.iter().find(|v| v.abs() > 0.0).unwrap() > &0.0);
        let oracle = in_band_energy(h, 2.0 / 800.0);
        assert!(
            (oracle - set.concentrations[k]).abs() < 1e-6,
            "{oracle} {}",
            set.concentrations[k]
        );
        assert!(set.concentrations[k] > 0.9 && set.concentrations[k] < 1.0);
    }
    assert!(set.concentrations.windows(2).all(|w| w[0] > w[1]));
}

#[test]
fn wider_bandwidths_keep_structure() {
    for (n, p) in [(256usize, 2.0f64), (512, 3.0), (1000, 4.0), (64, 2.5)] {
        let k = (2.0 * p - 1.0) as usize;
        let set = slepian_tapers::<f64>(n, p, k).unwrap();
        for (j, h) in set.tapers.iter().enumerate() {
            assert_eq!(sign_changes(h), j);
            for (i, g) in set.tapers.iter().enumerate() {
                let d: f64 = h.iter().zip(g).map(|(a, b)| a * b).sum();
                assert!((d - if i == j { 1.0 } else { 0.0 }).abs() < 1e-10);
            }
        }
        if n >= 256 {
            assert!(set.concentrations.iter().all(|&c| c > 0.9));
        }
    }
}

#[test]
fn cosine_peaks_at_carrier() {
    let n = 512;
    let w0 = 2.0 * PI * 40.0 / n as f64;
    let x: Vec<[f64; 3]> = (0..n).map(|t| [0.0, (w0 * t as f64).cos(), 0.0]).collect();
    let x = RealSignal3::new(x, 1.0).unwrap();
    let tapers = slepian_tapers::<f64>(n, 2.0, 3).unwrap();
    let s = multitaper_joint_spectrum(&x, &tapers, 8).unwrap();
    let bw = 2.0 * PI * 2.0 / n as f64;
    assert!((s.peak_frequency() - w0).abs() < 2.0 * PI / (8.0 * n as f64));
    assert!((s.moments.mean_freq - w0).abs() < bw);
    assert!((s.normalization() - 1.0).abs() < 1e-10);
    // energy outside the taper band is bounded by the tapers' leakage
    let outside: f64 = s
        .freqs
        .iter()
        .zip(&s.values)
        .filter(|(f, _)| (**f - w0).abs() > 1.5 * bw)
        .map(|(_, v)| *v)
        .sum::<f64>()
        * (s.freqs[1] - s.freqs[0])
        / (2.0 * PI);
    let leakage = 1.0 - tapers.concentrations.iter().sum::<f64>() / 3.0;
    assert!(outside < leakage, "{outside} {leakage}");
}

#[test]
fn white_noise_spectrum_is_flat() {
    let n = 2048;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let x: Vec<[f64; 3]> = (0..n)
        .map(|_| {
            [
                StandardNormal.sample(&mut rng),
                StandardNormal.sample(&mut rng),
                StandardNormal.sample(&mut rng),
            ]
        })
        .collect();
    let x = RealSignal3::new(x, 1.0).unwrap();
    let tapers = slepian_tapers::<f64>(n, 4.0, 7).unwrap();
    let s = multitaper_joint_spectrum(&x, &tapers, 1).unwrap();
    // smooth over 32 bins, skip the bins next to zero and Nyquist
    let inner = &s.values[16..s.len() - 16];
    let smoothed: Vec<f64> = inner
        .chunks(32)
        .map(|c| c.iter().sum::<f64>() / c.len() as f64)
        .collect();
    let (lo, hi) = smoothed
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(a, b), &v| (a.min(v), b.max(v)));
    assert!(hi / lo < 10.0, "{}", hi / lo);
}

#[test]
fn multitaper_estimate_ignores_frame() {
    let n = 400;
    let x: Vec<[f64; 3]> = (0..n)
        .map(|t| {
            let t = t as f64;
            [
                (0.3 * t).cos(),
                0.5 * (0.11 * t).sin(),
                (0.02 * t).cos() * (0.4 * t).sin(),
            ]
        })
        .collect();
    let x = RealSignal3::new(x, 0.5).unwrap();
    let tapers = slepian_tapers::<f64>(n, 3.0, 5).unwrap();
    let a = multitaper_joint_spectrum(&x, &tapers, 4).unwrap();
    for seed in 0..5 {
        let rot = random_rotation::<f64>(seed);
        let b = multitaper_joint_spectrum(&x.rotate_frame(&rot).unwrap(), &tapers, 4).unwrap();
        for (u, v) in a.values.iter().zip(&b.values) {
            assert!((u - v).abs() < 1e-10);
        }
    }
}

#[test]
fn spectrum_rejects_bad_input() {
    let tapers = slepian_tapers::<f64>(128, 2.0, 3).unwrap();
    let zero = RealSignal3::new(vec![[1.0, 2.0, 3.0]; 128], 1.0).unwrap();
    assert_eq!(
        multitaper_joint_spectrum(&zero, &tapers, 2).unwrap_err(),
        Error::ZeroEnergy
    );
    let short = RealSignal3::new(vec![[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]].repeat(50), 1.0).unwrap();
    assert!(matches!(
        multitaper_joint_spectrum(&short, &tapers, 2),
        Err(Error::LengthMismatch {
            expected: 100,
            actual: 128
        })
    ));
}
