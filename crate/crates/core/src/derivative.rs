//! Finite-difference and spectral derivative estimators.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_complex::Complex;

use crate::{fourier, Error, Scalar};

/// How time derivatives are estimated from sampled series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DerivativeScheme {
    /// Fourth-order central differences in the interior, second-order
    /// one-sided differences at the two outermost samples on each end.
    #[default]
    Central4,
    /// Multiplication of the DFT by `i omega`. Exact for periodic band-limited
    /// series; only accurate for signals that are windowed to zero at the
    /// edges otherwise.
    Spectral,
}

impl fmt::Display for DerivativeScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerivativeScheme::Central4 => f.write_str("central4"),
            DerivativeScheme::Spectral => f.write_str("spectral"),
        }
    }
}

impl FromStr for DerivativeScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "central4" => Ok(DerivativeScheme::Central4),
            "spectral" => Ok(DerivativeScheme::Spectral),
            other => Err(Error::InvalidParameter(format!(
                "unknown derivative scheme `{other}` (expected central4 or spectral)"
            ))),
        }
    }
}

/// Five-point central stencil with one-sided second-order edges.
///
/// Requires at least three samples; shorter inputs return zeros.
pub(crate) fn central4<V, T>(f: &[V], dt: T) -> Vec<V>
where
    T: Scalar,
    V: Copy + Add<Output = V> + Sub<Output = V> + Mul<T, Output = V>,
{
    let n = f.len();
    if n < 3 {
        return f.iter().map(|&v| v * T::zero()).collect();
    }
    let half = T::of(0.5) / dt;
    let twelfth = T::one() / (T::of(12.0) * dt);
    let three = T::of(3.0);
    let four = T::of(4.0);
    let eight = T::of(8.0);

    let forward = |i: usize| (f[i + 1] * four - f[i] * three - f[i + 2]) * half;
    let backward = |i: usize| (f[i] * three - f[i - 1] * four + f[i - 2]) * half;

    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let d = if i < 2 && i + 2 < n {
            forward(i)
        } else if i + 2 >= n && i >= 2 {
            backward(i)
        } else if i >= 2 && i + 2 < n {
            ((f[i + 1] - f[i - 1]) * eight - (f[i + 2] - f[i - 2])) * twelfth
        } else {
            // n == 3 or 4 and no full one-sided stencil fits
            (f[(i + 1).min(n - 1)] - f[i.saturating_sub(1)]) * half
        };
        out.push(d);
    }
    out
}

/// Spectral derivative of a complex sequence. The Nyquist bin (even length)
/// is zeroed since its sign is ambiguous.
pub(crate) fn spectral_complex<T: Scalar>(f: &[Complex<T>], dt: T) -> Vec<Complex<T>> {
    let n = f.len();
    let mut buf = f.to_vec();
    fourier::forward(&mut buf);
    for (k, v) in buf.iter_mut().enumerate() {
        if n % 2 == 0 && 2 * k == n {
            *v = Complex::new(T::zero(), T::zero());
        } else {
            let w = fourier::bin_frequency(k, n, dt);
            *v = *v * Complex::new(T::zero(), w);
        }
    }
    fourier::inverse(&mut buf);
    buf
}

/// Spectral derivative of a real sequence.
pub(crate) fn spectral_real<T: Scalar>(f: &[T], dt: T) -> Vec<T> {
    let cplx: Vec<Complex<T>> = f.iter().map(|&v| Complex::new(v, T::zero())).collect();
    spectral_complex(&cplx, dt)
        .into_iter()
        .map(|c| c.re)
        .collect()
}

/// Derivative of a real-valued track using the chosen scheme.
pub fn differentiate_real<T: Scalar>(f: &[T], dt: T, scheme: DerivativeScheme) -> Vec<T> {
    match scheme {
        DerivativeScheme::Central4 => central4(f, dt),
        DerivativeScheme::Spectral => spectral_real(f, dt),
    }
}
