//! Thin wrappers over `rustfft` with the conventions used throughout the crate.

use num_complex::Complex;
use rustfft::FftPlanner;

use crate::Scalar;

/// In-place forward DFT, `X_k = sum_n x_n exp(-2 pi i k n / N)`.
pub(crate) fn forward<T: Scalar>(buf: &mut [Complex<T>]) {
    if buf.is_empty() {
        return;
    }
    let mut planner = FftPlanner::<T>::new();
    planner.plan_fft_forward(buf.len()).process(buf);
}

/// In-place inverse DFT including the `1/N` factor.
pub(crate) fn inverse<T: Scalar>(buf: &mut [Complex<T>]) {
    if buf.is_empty() {
        return;
    }
    let n = buf.len();
    let mut planner = FftPlanner::<T>::new();
    planner.plan_fft_inverse(n).process(buf);
    let scale = T::one() / T::of_usize(n);
    for v in buf.iter_mut() {
        *v = *v * scale;
    }
}

/// Signed integer frequency index of DFT bin `k` for length `n`.
///
/// Bins above `n/2` map to negative indices. For even `n` the Nyquist bin is
/// reported as `+n/2`.
pub(crate) fn signed_index(k: usize, n: usize) -> isize {
    if 2 * k <= n {
        k as isize
    } else {
        k as isize - n as isize
    }
}

/// Angular frequency of bin `k` (radians per unit time) for length `n` and
/// sample interval `dt`. Nyquist is treated as positive.
pub(crate) fn bin_frequency<T: Scalar>(k: usize, n: usize, dt: T) -> T {
    let idx = signed_index(k, n) as f64;
    T::of(2.0 * std::f64::consts::PI * idx / n as f64) / dt
}
