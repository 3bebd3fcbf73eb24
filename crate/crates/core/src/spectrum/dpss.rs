//! Discrete prolate spheroidal sequences from the symmetric tridiagonal
//! operator that commutes with the concentration matrix.

use crate::{Error, Result, Scalar};

/// Smallest record length accepted for taper design.
pub const MIN_TAPER_LEN: usize = 64;

/// Orthonormal Slepian tapers.
#[derive(Debug, Clone, PartialEq)]
pub struct TaperSet<T> {
    /// `K` tapers of length `N`, each with unit Euclidean norm.
    pub tapers: Vec<Vec<T>>,
    pub time_bandwidth: T,
    /// Fraction of each taper's energy within `|f| < P/N` cycles per sample.
    pub concentrations: Vec<T>,
}

impl<T: Scalar> TaperSet<T> {
    pub fn len(&self) -> usize {
        self.tapers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tapers.is_empty()
    }

    pub fn taper_len(&self) -> usize {
        self.tapers.first().map_or(0, Vec::len)
    }
}

/// The first `k` discrete prolate spheroidal sequences of length `n` with
/// time-bandwidth product `p` (bandwidth `W = p / n` cycles per sample).
pub fn slepian_tapers<T: Scalar>(n: usize, p: T, k: usize) -> Result<TaperSet<T>> {
    if n < MIN_TAPER_LEN {
        return Err(Error::TooShort {
            len: n,
            min: MIN_TAPER_LEN,
        });
    }
    let pf = p.to_f64().unwrap_or(f64::NAN);
    if !(pf > 0.0) || !(pf < n as f64 / 2.0) {
        return Err(Error::InvalidParameter(format!(
            "time-bandwidth product {pf} outside (0, N/2)"
        )));
    }
    let max = (2.0 * pf - 1.0 + 1e-9).floor().max(0.0) as usize;
    if k == 0 || k > max {
        return Err(Error::TooManyTapers {
            requested: k,
            max,
            time_bandwidth: pf,
        });
    }

    // Work in f64 regardless of T; the eigenproblem is badly scaled for f32.
    let w = pf / n as f64;
    let c = (std::f64::consts::TAU * w).cos();
    let diag: Vec<f64> = (0..n)
        .map(|i| {
            let h = (n as f64 - 1.0 - 2.0 * i as f64) / 2.0;
            h * h * c
        })
        .collect();
    let off: Vec<f64> = (1..n).map(|i| (i * (n - i)) as f64 / 2.0).collect();

    let mut vecs: Vec<Vec<f64>> = Vec::with_capacity(k);
    for order in 0..k {
        let lambda = kth_eigenvalue(&diag, &off, n - 1 - order);
        let mut v = inverse_iteration(&diag, &off, lambda, order);
        for prev in &vecs {
            let d = dot(prev, &v);
            v.iter_mut().zip(prev).for_each(|(a, b)| *a -= d * b);
        }
        normalize(&mut v);
        let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if let Some(first) = v.iter().find(|x| x.abs() > f64::EPSILON * scale) {
            if *first < 0.0 {
                v.iter_mut().for_each(|x| *x = -*x);
            }
        }
        vecs.push(v);
    }

    let concentrations = vecs.iter().map(|v| T::of(concentration(v, w))).collect();
    Ok(TaperSet {
        tapers: vecs
            .into_iter()
            .map(|v| v.into_iter().map(T::of).collect())
            .collect(),
        time_bandwidth: p,
        concentrations,
    })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) {
    let s = dot(v, v).sqrt();
    if s > 0.0 {
        v.iter_mut().for_each(|x| *x /= s);
    }
}

/// Number of eigenvalues strictly below `x` (Sturm sequence count).
fn count_below(diag: &[f64], off: &[f64], x: f64) -> usize {
    let tiny = f64::MIN_POSITIVE.sqrt();
    let mut count = 0;
    let mut q = diag[0] - x;
    if q == 0.0 {
        q = -tiny;
    }
    if q < 0.0 {
        count += 1;
    }
    for i in 1..diag.len() {
        q = diag[i] - x - off[i - 1] * off[i - 1] / q;
        if q == 0.0 {
            q = -tiny;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Eigenvalue with ascending index `j` by bisection.
fn kth_eigenvalue(diag: &[f64], off: &[f64], j: usize) -> f64 {
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r =
            if i > 0 { off[i - 1].abs() } else { 0.0 } + if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if count_below(diag, off, mid) <= j {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Solves `(T - shift I) x = b` for tridiagonal `T` by Gaussian elimination
/// with partial pivoting. Zero pivots are nudged so the solve always returns.
fn solve_shifted(diag: &[f64], off: &[f64], shift: f64, b: &mut [f64]) {
    let n = diag.len();
    let scale = diag.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let nudge = f64::EPSILON * scale;
    let mut d: Vec<f64> = diag.iter().map(|x| x - shift).collect();
    let mut dl = off.to_vec();
    let mut du = off.to_vec();
    let mut du2 = vec![0.0; n.saturating_sub(2)];

    for i in 0..n - 1 {
        if d[i].abs() >= dl[i].abs() {
            if d[i] == 0.0 {
                d[i] = nudge;
            }
            let fact = dl[i] / d[i];
            d[i + 1] -= fact * du[i];
            b[i + 1] -= fact * b[i];
        } else {
            let fact = d[i] / dl[i];
            d[i] = dl[i];
            let temp = d[i + 1];
            d[i + 1] = du[i] - fact * temp;
            if i + 2 < n {
                du2[i] = du[i + 1];
                du[i + 1] *= -fact;
            }
            du[i] = temp;
            let tb = b[i];
            b[i] = b[i + 1];
            b[i + 1] = tb - fact * b[i + 1];
        }
        dl[i] = 0.0;
    }
    if d[n - 1] == 0.0 {
        d[n - 1] = nudge;
    }

    b[n - 1] /= d[n - 1];
    if n > 1 {
        b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    }
    for i in (0..n.saturating_sub(2)).rev() {
        b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
    }
}

fn inverse_iteration(diag: &[f64], off: &[f64], lambda: f64, order: usize) -> Vec<f64> {
    let n = diag.len();
    // A start vector with both even and odd parts, varied per order.
    let mut v: Vec<f64> = (0..n)
        .map(|i| 1.0 + 0.5 * ((i as f64 + 1.0) * (0.7 + 0.1 * order as f64)).sin())
        .collect();
    normalize(&mut v);
    for _ in 0..4 {
        solve_shifted(diag, off, lambda, &mut v);
        normalize(&mut v);
    }
    v
}

/// In-band energy fraction from the taper autocorrelation,
/// `2W r_0 + 2 sum_k r_k sin(2 pi W k) / (pi k)`.
fn concentration(v: &[f64], w: f64) -> f64 {
    let n = v.len();
    let mut total = 2.0 * w * dot(v, v);
    for lag in 1..n {
        let r: f64 = v[..n - lag].iter().zip(&v[lag..]).map(|(a, b)| a * b).sum();
        let kf = lag as f64;
        total += 2.0 * r * (std::f64::consts::TAU * w * kf).sin() / (std::f64::consts::PI * kf);
    }
    total
}
