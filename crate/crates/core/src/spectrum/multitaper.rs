use num_complex::Complex;

use super::{finish, one_sided_len, JointSpectrum, TaperSet};
use crate::analytic::RealSignal3;
use crate::fourier;
use crate::{Error, Result, Scalar};

/// Default zero-padding factor for multitaper estimates.
pub const DEFAULT_PAD_FACTOR: usize = 8;

/// Multitaper estimate of the joint analytic spectrum of a real record.
///
/// Eigenspectra `|DFT(h_k x_c)|^2` are averaged over tapers and summed over
/// components. Interior positive-frequency bins are doubled to account for
/// the analytic signal's one-sided support, then the estimate is normalized.
pub fn multitaper_joint_spectrum<T: Scalar>(
    x: &RealSignal3<T>,
    tapers: &TaperSet<T>,
    pad_factor: usize,
) -> Result<JointSpectrum<T>> {
    let n = x.len();
    if pad_factor == 0 {
        return Err(Error::InvalidParameter(
            "pad factor must be at least 1".into(),
        ));
    }
    if tapers.is_empty() {
        return Err(Error::InvalidParameter("empty taper set".into()));
    }
    for h in &tapers.tapers {
        if h.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: h.len(),
            });
        }
    }
    let m = n * pad_factor;
    let half = one_sided_len(m);
    let dt = x.dt();
    let zero = Complex::new(T::zero(), T::zero());
    let mut raw = vec![T::zero(); half];
    let mut buf = vec![zero; m];
    let weight = dt / T::of_usize(tapers.len());
    for h in &tapers.tapers {
        for c in 0..3 {
            buf.iter_mut().for_each(|v| *v = zero);
            for ((b, s), &hv) in buf.iter_mut().zip(x.samples()).zip(h) {
                *b = Complex::new(s[c] * hv, T::zero());
            }
            fourier::forward(&mut buf);
            for (r, v) in raw.iter_mut().zip(&buf) {
                *r = *r + v.norm_sqr() * weight;
            }
        }
    }
    let two = T::of(2.0);
    let last = if m % 2 == 0 { half - 1 } else { half };
    for r in raw.iter_mut().take(last).skip(1) {
        *r = *r * two;
    }
    let step = T::TAU() / (T::of_usize(m) * dt);
    finish(raw, step)
}
