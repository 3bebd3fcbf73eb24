//! Real three-component series, their analytic extension, and derivative
//! estimation on analytic signals.

use num_complex::Complex;

use crate::derivative::{self, DerivativeScheme};
use crate::{fourier, Error, Result, Scalar};

/// Shortest series accepted by the analytic transform.
pub const MIN_SAMPLES: usize = 8;

/// Default fraction of the record flagged as edge-affected on each end.
pub const DEFAULT_EDGE_FRACTION: f64 = 0.05;

/// A real-valued three-component series sampled uniformly.
///
/// The per-component mean is removed on construction and kept as metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSignal3<T> {
    samples: Vec<[T; 3]>,
    dt: T,
    means: [T; 3],
}

impl<T: Scalar> RealSignal3<T> {
    pub fn new(samples: Vec<[T; 3]>, dt: T) -> Result<Self> {
        validate_dt(dt)?;
        if samples.len() < MIN_SAMPLES {
            return Err(Error::TooShort {
                len: samples.len(),
                min: MIN_SAMPLES,
            });
        }
        for (i, s) in samples.iter().enumerate() {
            for (c, v) in s.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonFinite {
                        index: i,
                        component: c,
                    });
                }
            }
        }
        let n = T::of_usize(samples.len());
        let mut means = [T::zero(); 3];
        for s in &samples {
            for c in 0..3 {
                means[c] = means[c] + s[c];
            }
        }
        for m in means.iter_mut() {
            *m = *m / n;
        }
        let samples = samples
            .into_iter()
            .map(|s| [s[0] - means[0], s[1] - means[1], s[2] - means[2]])
            .collect();
        Ok(Self { samples, dt, means })
    }

    /// Builds a series from three equal-length component slices.
    pub fn from_components(x: &[T], y: &[T], z: &[T], dt: T) -> Result<Self> {
        if y.len() != x.len() || z.len() != x.len() {
            return Err(Error::LengthMismatch {
                expected: x.len(),
                actual: if y.len() != x.len() { y.len() } else { z.len() },
            });
        }
        let samples = (0..x.len()).map(|i| [x[i], y[i], z[i]]).collect();
        Self::new(samples, dt)
    }

    /// Demeaned samples.
    pub fn samples(&self) -> &[[T; 3]] {
        &self.samples
    }

    pub fn dt(&self) -> T {
        self.dt
    }

    /// Means removed from each component at construction.
    pub fn means(&self) -> [T; 3] {
        self.means
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn component(&self, c: usize) -> Vec<T> {
        self.samples.iter().map(|s| s[c]).collect()
    }

    pub(crate) fn from_parts(samples: Vec<[T; 3]>, dt: T, means: [T; 3]) -> Self {
        Self { samples, dt, means }
    }
}

/// A length-N series of complex 3-vectors.
///
/// Values produced by [`analytic_transform`] have a one-sided spectrum;
/// values produced by ellipse synthesis are analytic only to the extent the
/// prescribed modulation is slow compared with the carrier.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticSignal3<T> {
    samples: Vec<[Complex<T>; 3]>,
    dt: T,
}

impl<T: Scalar> AnalyticSignal3<T> {
    pub fn new(samples: Vec<[Complex<T>; 3]>, dt: T) -> Result<Self> {
        validate_dt(dt)?;
        if samples.is_empty() {
            return Err(Error::TooShort { len: 0, min: 1 });
        }
        for (i, s) in samples.iter().enumerate() {
            for (c, v) in s.iter().enumerate() {
                if !v.re.is_finite() || !v.im.is_finite() {
                    return Err(Error::NonFinite {
                        index: i,
                        component: c,
                    });
                }
            }
        }
        Ok(Self { samples, dt })
    }

    pub fn samples(&self) -> &[[Complex<T>; 3]] {
        &self.samples
    }

    pub fn dt(&self) -> T {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// The real trajectory `Re{x+}`.
    pub fn real_part(&self) -> Vec<[T; 3]> {
        self.samples
            .iter()
            .map(|s| [s[0].re, s[1].re, s[2].re])
            .collect()
    }

    pub fn imag_part(&self) -> Vec<[T; 3]> {
        self.samples
            .iter()
            .map(|s| [s[0].im, s[1].im, s[2].im])
            .collect()
    }

    /// Instantaneous power `||x+(t)||^2`.
    pub fn power(&self) -> Vec<T> {
        self.samples.iter().map(|s| norm_sqr3(s)).collect()
    }

    pub fn component(&self, c: usize) -> Vec<Complex<T>> {
        self.samples.iter().map(|s| s[c]).collect()
    }

    /// Canonical amplitude of each component, `|x+|`, `|y+|`, `|z+|`.
    pub fn amplitudes(&self) -> Vec<[T; 3]> {
        self.samples
            .iter()
            .map(|s| [s[0].norm(), s[1].norm(), s[2].norm()])
            .collect()
    }

    /// Canonical phase of each component.
    pub fn phases(&self) -> Vec<[T; 3]> {
        self.samples
            .iter()
            .map(|s| [s[0].arg(), s[1].arg(), s[2].arg()])
            .collect()
    }

    /// The real part as a [`RealSignal3`] (demeaning again, which is a no-op
    /// for zero-mean input).
    pub fn to_real(&self) -> Result<RealSignal3<T>> {
        RealSignal3::new(self.real_part(), self.dt)
    }

    pub(crate) fn from_parts(samples: Vec<[Complex<T>; 3]>, dt: T) -> Self {
        Self { samples, dt }
    }
}

pub(crate) fn norm_sqr3<T: Scalar>(v: &[Complex<T>; 3]) -> T {
    v[0].norm_sqr() + v[1].norm_sqr() + v[2].norm_sqr()
}

fn validate_dt<T: Scalar>(dt: T) -> Result<()> {
    if dt.is_finite() && dt > T::zero() {
        Ok(())
    } else {
        Err(Error::InvalidSampleInterval)
    }
}

/// Weight applied to DFT bin `k` by the discrete analytic operator:
/// 1 at zero frequency and at Nyquist, 2 for positive and 0 for negative
/// frequencies.
fn analytic_weight(k: usize, n: usize) -> f64 {
    if k == 0 || 2 * k == n {
        1.0
    } else if 2 * k < n {
        2.0
    } else {
        0.0
    }
}

/// Analytic extension of a real three-component series via the
/// frequency-domain analytic operator.
pub fn analytic_transform<T: Scalar>(x: &RealSignal3<T>) -> AnalyticSignal3<T> {
    let n = x.len();
    let mut out = vec![[Complex::new(T::zero(), T::zero()); 3]; n];
    for c in 0..3 {
        let mut buf: Vec<Complex<T>> = x
            .samples()
            .iter()
            .map(|s| Complex::new(s[c], T::zero()))
            .collect();
        fourier::forward(&mut buf);
        for (k, v) in buf.iter_mut().enumerate() {
            *v = *v * T::of(analytic_weight(k, n));
        }
        fourier::inverse(&mut buf);
        for (i, v) in buf.into_iter().enumerate() {
            // the real part is the input by construction; keep it bit-exact
            out[i][c] = Complex::new(x.samples()[i][c], v.im);
        }
    }
    AnalyticSignal3::from_parts(out, x.dt())
}

/// Applies the discrete Hilbert operator `-i sgn(omega)` to one complex
/// component, treating the Nyquist bin as a positive frequency.
fn hilbert_component<T: Scalar>(f: &[Complex<T>]) -> Vec<Complex<T>> {
    let n = f.len();
    let mut buf = f.to_vec();
    fourier::forward(&mut buf);
    let minus_i = Complex::new(T::zero(), -T::one());
    for (k, v) in buf.iter_mut().enumerate() {
        let idx = fourier::signed_index(k, n);
        *v = match idx.signum() {
            1 => *v * minus_i,
            -1 => -(*v * minus_i),
            _ => Complex::new(T::zero(), T::zero()),
        };
    }
    fourier::inverse(&mut buf);
    buf
}

/// Hilbert transform of each component of an analytic signal.
pub fn hilbert<T: Scalar>(xp: &AnalyticSignal3<T>) -> AnalyticSignal3<T> {
    let comps: Vec<Vec<Complex<T>>> = (0..3)
        .map(|c| hilbert_component(&xp.component(c)))
        .collect();
    let samples = (0..xp.len())
        .map(|i| [comps[0][i], comps[1][i], comps[2][i]])
        .collect();
    AnalyticSignal3::from_parts(samples, xp.dt())
}

/// Self-test residual `max |H{x+} + i x+| / max |x+|`, which vanishes for a
/// signal with a one-sided spectrum. Zero input gives zero.
pub fn hilbert_check<T: Scalar>(xp: &AnalyticSignal3<T>) -> T {
    let h = hilbert(xp);
    let i = Complex::new(T::zero(), T::one());
    let mut num = T::zero();
    let mut den = T::zero();
    for (hs, xs) in h.samples().iter().zip(xp.samples()) {
        for c in 0..3 {
            num = num.max((hs[c] + i * xs[c]).norm());
            den = den.max(xs[c].norm());
        }
    }
    if den == T::zero() {
        T::zero()
    } else {
        num / den
    }
}

/// Time derivative of an analytic signal, in signal units per unit time.
pub fn differentiate<T: Scalar>(
    xp: &AnalyticSignal3<T>,
    scheme: DerivativeScheme,
) -> Vec<[Complex<T>; 3]> {
    let dt = xp.dt();
    let comps: Vec<Vec<Complex<T>>> = (0..3)
        .map(|c| {
            let f = xp.component(c);
            match scheme {
                DerivativeScheme::Central4 => derivative::central4(&f, dt),
                DerivativeScheme::Spectral => derivative::spectral_complex(&f, dt),
            }
        })
        .collect();
    (0..xp.len())
        .map(|i| [comps[0][i], comps[1][i], comps[2][i]])
        .collect()
}

/// Number of samples flagged as edge-affected at each end:
/// `max(8, floor(fraction * n))`, capped at half the record.
pub fn edge_width(n: usize, fraction: f64) -> usize {
    let w = ((fraction * n as f64).floor() as usize).max(8);
    w.min(n / 2)
}

/// Per-sample edge flags for a record of length `n`.
pub fn edge_flags(n: usize, fraction: f64) -> Vec<bool> {
    let w = edge_width(n, fraction);
    (0..n).map(|i| i < w || i + w >= n).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn dft_direct(x: &[Complex<f64>]) -> Vec<Complex<f64>> {
        let n = x.len();
        (0..n)
            .map(|k| {
                x.iter()
                    .enumerate()
                    .map(|(j, v)| {
                        let ang = -2.0 * PI * (k * j) as f64 / n as f64;
                        v * Complex::new(ang.cos(), ang.sin())
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn rejects_short_and_non_finite() {
        let short = vec![[0.0f64; 3]; 7];
        assert!(matches!(
            RealSignal3::new(short, 1.0),
            Err(Error::TooShort { len: 7, .. })
        ));
        let mut bad = vec![[0.0f64; 3]; 16];
        bad[3][1] = f64::NAN;
        assert_eq!(
            RealSignal3::new(bad, 1.0).unwrap_err(),
            Error::NonFinite {
                index: 3,
                component: 1
            }
        );
        assert_eq!(
            RealSignal3::new(vec![[0.0f64; 3]; 16], 0.0).unwrap_err(),
            Error::InvalidSampleInterval
        );
    }

    #[test]
    fn means_are_removed_and_kept() {
        let s: Vec<[f64; 3]> = (0..10).map(|i| [1.0 + i as f64, -2.0, 0.5]).collect();
        let x = RealSignal3::new(s, 1.0).unwrap();
        assert!((x.means()[0] - 5.5).abs() < 1e-14);
        assert!((x.means()[1] + 2.0).abs() < 1e-14);
        let sum: f64 = x.component(0).iter().sum();
        assert!(sum.abs() < 1e-12);
    }

    #[test]
    fn exact_bin_cosine_becomes_complex_exponential() {
        let (n, k) = (256, 16);
        let w = 2.0 * PI * k as f64 / n as f64;
        let xs: Vec<f64> = (0..n).map(|t| (w * t as f64).cos()).collect();
        let zeros = vec![0.0; n];
        let x = RealSignal3::from_components(&xs, &zeros, &zeros, 1.0).unwrap();
        let xp = analytic_transform(&x);
        for (t, s) in xp.samples().iter().enumerate() {
            let expect = Complex::new((w * t as f64).cos(), (w * t as f64).sin());
            assert!((s[0] - expect).norm() < 1e-12);
            assert!(s[1].norm() < 1e-12 && s[2].norm() < 1e-12);
        }
        assert!(hilbert_check(&xp) < 1e-12);
    }

    #[test]
    fn zero_series_gives_zero_signal_and_zero_residual() {
        let x = RealSignal3::new(vec![[0.0f64; 3]; 32], 1.0).unwrap();
        let xp = analytic_transform(&x);
        assert!(xp
            .samples()
            .iter()
            .all(|s| s.iter().all(|v| v.norm() == 0.0)));
        assert_eq!(hilbert_check(&xp), 0.0);
    }

    #[test]
    fn odd_length_negative_bins_vanish() {
        let n = 33;
        let s: Vec<[f64; 3]> = (0..n)
            .map(|i| {
                let t = i as f64;
                [(0.3 * t).sin() + 0.1 * t, (1.1 * t).cos(), (2.0 * t).sin()]
            })
            .collect();
        let x = RealSignal3::new(s, 1.0).unwrap();
        let xp = analytic_transform(&x);
        for c in 0..3 {
            let spec = dft_direct(&xp.component(c));
            let peak = spec.iter().map(|v| v.norm()).fold(0.0, f64::max);
            for (k, v) in spec.iter().enumerate() {
                if fourier::signed_index(k, n) < 0 {
                    assert!(v.norm() <= 1e-10 * peak);
                }
            }
            assert!(spec[0].norm() <= 1e-10 * peak);
        }
        assert!(hilbert_check(&xp) < 1e-10);
    }

    #[test]
    fn central4_derivative_of_exponential() {
        let n = 256;
        let w0 = 2.0 * PI * 16.0 / n as f64;
        let samples: Vec<[Complex<f64>; 3]> = (0..n)
            .map(|t| {
                let e = Complex::new(0.0, w0 * t as f64).exp();
                [e, e * 0.5, Complex::new(0.0, 0.0)]
            })
            .collect();
        let xp = AnalyticSignal3::new(samples, 1.0).unwrap();
        let d = differentiate(&xp, DerivativeScheme::Central4);
        // at one sample per 0.39 rad the stencil's own truncation error is
        // ~8e-4 relative, so compare with its closed-form gain
        let stencil_gain = (8.0 * w0.sin() - (2.0 * w0).sin()) / 6.0;
        for t in 2..n - 2 {
            let expect = xp.samples()[t][0] * Complex::new(0.0, stencil_gain);
            assert!((d[t][0] - expect).norm() < 1e-12 * w0);
            assert!((d[t][0] - xp.samples()[t][0] * Complex::new(0.0, w0)).norm() < 1e-3 * w0);
        }
    }

    #[test]
    fn central4_derivative_of_finely_sampled_exponential() {
        let n = 1024;
        let dt = 1.0 / 64.0;
        let w0 = 2.0 * PI * 16.0 / 256.0;
        let samples: Vec<[Complex<f64>; 3]> = (0..n)
            .map(|t| {
                let e = Complex::new(0.0, w0 * t as f64 * dt).exp();
                [e, e, e]
            })
            .collect();
        let xp = AnalyticSignal3::new(samples, dt).unwrap();
        let d = differentiate(&xp, DerivativeScheme::Central4);
        for t in 2..n - 2 {
            let expect = xp.samples()[t][1] * Complex::new(0.0, w0);
            assert!((d[t][1] - expect).norm() < 1e-8 * w0);
        }
    }

    #[test]
    fn edge_width_policy() {
        assert_eq!(edge_width(100, 0.05), 8);
        assert_eq!(edge_width(800, 0.05), 40);
        assert_eq!(edge_width(10, 0.05), 5);
        let f = edge_flags(800, 0.05);
        assert!(f[39] && !f[40] && !f[759] && f[760]);
    }
}
