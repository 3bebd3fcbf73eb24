//! Joint analytic spectra: the deterministic spectrum of an analytic signal
//! and the multitaper estimate from a real record.

mod dpss;
mod multitaper;

pub use dpss::{slepian_tapers, TaperSet};
pub use multitaper::{multitaper_joint_spectrum, DEFAULT_PAD_FACTOR};

use num_complex::Complex;

use crate::analytic::AnalyticSignal3;
use crate::fourier;
use crate::moments::GlobalMoments;
use crate::{Error, Result, Scalar};

/// One-sided joint spectrum on a uniform angular-frequency grid.
///
/// `values` are normalized so that the trapezoidal integral of
/// `values / (2 pi)` over `freqs` equals one.
#[derive(Debug, Clone, PartialEq)]
pub struct JointSpectrum<T> {
    pub freqs: Vec<T>,
    pub values: Vec<T>,
    /// Global moments computed on this grid. `energy` is the raw energy
    /// before normalization.
    pub moments: GlobalMoments<T>,
}

impl<T: Scalar> JointSpectrum<T> {
    pub fn len(&self) -> usize {
        self.freqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.freqs.is_empty()
    }

    fn step(&self) -> T {
        if self.freqs.len() > 1 {
            self.freqs[1] - self.freqs[0]
        } else {
            T::zero()
        }
    }

    /// Trapezoidal integral of `values / (2 pi)`.
    pub fn normalization(&self) -> T {
        quadrature(&self.values, self.step()) / T::TAU()
    }

    /// Frequency of the largest value.
    pub fn peak_frequency(&self) -> T {
        let mut best = 0;
        for (i, v) in self.values.iter().enumerate() {
            if *v > self.values[best] {
                best = i;
            }
        }
        self.freqs[best]
    }
}

fn quadrature<T: Scalar>(f: &[T], step: T) -> T {
    let n = f.len();
    if n < 2 {
        return f.first().copied().unwrap_or_else(T::zero) * step;
    }
    let inner = f.iter().fold(T::zero(), |acc, &v| acc + v);
    (inner - (f[0] + f[n - 1]) * T::of(0.5)) * step
}

/// Normalizes a raw one-sided power estimate on the grid `k * step` and
/// computes its moments.
pub(crate) fn finish<T: Scalar>(raw: Vec<T>, step: T) -> Result<JointSpectrum<T>> {
    let tau = T::TAU();
    let energy = quadrature(&raw, step) / tau;
    if !(energy > T::zero()) || !energy.is_finite() {
        return Err(Error::ZeroEnergy);
    }
    let freqs: Vec<T> = (0..raw.len()).map(|k| T::of_usize(k) * step).collect();
    let values: Vec<T> = raw.into_iter().map(|v| v / energy).collect();
    let total = quadrature(&values, step);
    let weighted: Vec<T> = freqs.iter().zip(&values).map(|(&w, &s)| w * s).collect();
    let mean_freq = quadrature(&weighted, step) / total;
    let central: Vec<T> = freqs
        .iter()
        .zip(&values)
        .map(|(&w, &s)| (w - mean_freq) * (w - mean_freq) * s)
        .collect();
    let second_central = quadrature(&central, step) / total;
    Ok(JointSpectrum {
        freqs,
        values,
        moments: GlobalMoments {
            energy,
            mean_freq,
            second_central,
        },
    })
}

pub(crate) fn one_sided_len(m: usize) -> usize {
    m / 2 + 1
}

/// Joint spectrum `sum_c |X_c(w)|^2` of an analytic signal over nonnegative
/// frequencies, zero-padded to `pad_factor` times its length.
pub fn joint_analytic_spectrum<T: Scalar>(
    xp: &AnalyticSignal3<T>,
    pad_factor: usize,
) -> Result<JointSpectrum<T>> {
    if pad_factor == 0 {
        return Err(Error::InvalidParameter(
            "pad factor must be at least 1".into(),
        ));
    }
    let n = xp.len();
    let m = n * pad_factor;
    let dt = xp.dt();
    let half = one_sided_len(m);
    let mut raw = vec![T::zero(); half];
    let mut buf = vec![Complex::new(T::zero(), T::zero()); m];
    for c in 0..3 {
        buf.iter_mut()
            .for_each(|v| *v = Complex::new(T::zero(), T::zero()));
        for (b, s) in buf.iter_mut().zip(xp.samples()) {
            *b = s[c];
        }
        fourier::forward(&mut buf);
        for (r, v) in raw.iter_mut().zip(&buf) {
            *r = *r + v.norm_sqr() * dt * dt;
        }
    }
    let step = T::TAU() / (T::of_usize(m) * dt);
    finish(raw, step)
}
