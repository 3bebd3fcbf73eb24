//! Joint instantaneous moments of an analytic 3-vector and their geometric
//! decomposition in terms of ellipse rates.
//!
//! Conventions: `omega_x = Im{x^H x'} / ||x||^2`,
//! `sigma2_x = ||x' - i mean x||^2 / ||x||^2`,
//! `upsilon2_x = ||x' - i omega_x x||^2 / ||x||^2`. The bandwidth splits into
//! amplitude, deformation, precession and out-of-plane terms.

use std::ops::Range;

use num_complex::Complex;

use crate::analytic::{
    differentiate, edge_flags, norm_sqr3, AnalyticSignal3, DEFAULT_EDGE_FRACTION,
};
use crate::derivative::DerivativeScheme;
use crate::ellipse::{EllipseDecomposition, EllipseRatesSeries, EllipseSeries};
use crate::fourier;
use crate::{Error, Result, Scalar};

/// Default relative power below which moments are flagged unreliable.
pub const DEFAULT_EPS_POW: f64 = 1e-8;

/// Default zero-padding factor for the Fourier-domain global moments.
pub const DEFAULT_SPECTRAL_PAD: usize = 16;

/// Global moments of the joint analytic spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GlobalMoments<T> {
    /// Total energy of the analytic signal.
    pub energy: T,
    /// Joint global mean frequency, radians per unit time.
    pub mean_freq: T,
    /// Joint global second central moment.
    pub second_central: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentOptions<T> {
    pub scheme: DerivativeScheme,
    /// Samples with power below `eps_pow * max(power)` are flagged unreliable.
    pub eps_pow: T,
    /// Fraction of the record flagged as edge-affected at each end
    /// (at least 8 samples).
    pub edge_fraction: f64,
    /// Mean frequency used for the second central moment. `None` takes the
    /// Fourier-domain value from [`global_moments_spectral`].
    pub mean_freq: Option<T>,
    pub pad_factor: usize,
}

impl<T: Scalar> Default for MomentOptions<T> {
    fn default() -> Self {
        Self {
            scheme: DerivativeScheme::Central4,
            eps_pow: T::of(DEFAULT_EPS_POW),
            edge_fraction: DEFAULT_EDGE_FRACTION,
            mean_freq: None,
            pad_factor: DEFAULT_SPECTRAL_PAD,
        }
    }
}

/// Per-sample joint instantaneous moments.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentsSeries<T> {
    pub omega_x: Vec<T>,
    pub sigma2_x: Vec<T>,
    /// Squared bandwidth from the projected form (nonnegative).
    pub upsilon2_x: Vec<T>,
    /// Squared bandwidth from `||x'||^2 / ||x||^2 - omega_x^2`.
    pub upsilon2_alt: Vec<T>,
    pub power: Vec<T>,
    /// Mean frequency that `sigma2_x` is centred on.
    pub mean_freq: T,
    pub edge: Vec<bool>,
    pub unreliable: Vec<bool>,
}

impl<T: Scalar> MomentsSeries<T> {
    pub fn len(&self) -> usize {
        self.omega_x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega_x.is_empty()
    }

    /// True where the sample is neither edge-affected nor low-power.
    pub fn usable(&self, i: usize) -> bool {
        !self.edge[i] && !self.unreliable[i]
    }
}

/// Both forms of the squared joint bandwidth.
#[derive(Debug, Clone, PartialEq)]
pub struct BandwidthForms<T> {
    pub projected: Vec<T>,
    pub difference: Vec<T>,
}

fn ensure_energy<T: Scalar>(xp: &AnalyticSignal3<T>) -> Result<Vec<T>> {
    let power = xp.power();
    if power.iter().all(|&p| p == T::zero()) {
        return Err(Error::ZeroEnergy);
    }
    Ok(power)
}

fn hermitian_dot<T: Scalar>(a: &[Complex<T>; 3], b: &[Complex<T>; 3]) -> Complex<T> {
    a[0].conj() * b[0] + a[1].conj() * b[1] + a[2].conj() * b[2]
}

fn frequency_from<T: Scalar>(
    xp: &AnalyticSignal3<T>,
    deriv: &[[Complex<T>; 3]],
    power: &[T],
) -> Vec<T> {
    xp.samples()
        .iter()
        .zip(deriv)
        .zip(power)
        .map(|((x, d), &p)| {
            if p > T::zero() {
                hermitian_dot(x, d).im / p
            } else {
                T::zero()
            }
        })
        .collect()
}

/// `||d - i w x||^2 / p` per sample, for a per-sample frequency `w`.
fn departure_from<T: Scalar>(
    xp: &AnalyticSignal3<T>,
    deriv: &[[Complex<T>; 3]],
    power: &[T],
    freq: impl Fn(usize) -> T,
) -> Vec<T> {
    xp.samples()
        .iter()
        .zip(deriv)
        .zip(power)
        .enumerate()
        .map(|(i, ((x, d), &p))| {
            if p > T::zero() {
                let iw = Complex::new(T::zero(), freq(i));
                let r = [d[0] - iw * x[0], d[1] - iw * x[1], d[2] - iw * x[2]];
                norm_sqr3(&r) / p
            } else {
                T::zero()
            }
        })
        .collect()
}

/// Joint instantaneous frequency.
pub fn joint_instantaneous_frequency<T: Scalar>(
    xp: &AnalyticSignal3<T>,
    scheme: DerivativeScheme,
) -> Result<Vec<T>> {
    let power = ensure_energy(xp)?;
    let deriv = differentiate(xp, scheme);
    Ok(frequency_from(xp, &deriv, &power))
}

/// Joint instantaneous second central moment about `mean_freq`.
pub fn joint_second_central<T: Scalar>(
    xp: &AnalyticSignal3<T>,
    mean_freq: T,
    scheme: DerivativeScheme,
) -> Result<Vec<T>> {
    let power = ensure_energy(xp)?;
    let deriv = differentiate(xp, scheme);
    Ok(departure_from(xp, &deriv, &power, |_| mean_freq))
}

/// Squared joint instantaneous bandwidth in its projected and difference
/// forms.
pub fn joint_bandwidth_sq<T: Scalar>(
    xp: &AnalyticSignal3<T>,
    scheme: DerivativeScheme,
) -> Result<BandwidthForms<T>> {
    let power = ensure_energy(xp)?;
    let deriv = differentiate(xp, scheme);
    let omega = frequency_from(xp, &deriv, &power);
    Ok(bandwidth_forms(xp, &deriv, &power, &omega))
}

fn bandwidth_forms<T: Scalar>(
    xp: &AnalyticSignal3<T>,
    deriv: &[[Complex<T>; 3]],
    power: &[T],
    omega: &[T],
) -> BandwidthForms<T> {
    let projected = departure_from(xp, deriv, power, |i| omega[i]);
    let difference = deriv
        .iter()
        .zip(power)
        .zip(omega)
        .map(|((d, &p), &w)| {
            if p > T::zero() {
                norm_sqr3(d) / p - w * w
            } else {
                T::zero()
            }
        })
        .collect();
    BandwidthForms {
        projected,
        difference,
    }
}

/// All per-sample joint moments, sharing one derivative estimate.
pub fn instantaneous_moments<T: Scalar>(
    xp: &AnalyticSignal3<T>,
    opts: &MomentOptions<T>,
) -> Result<MomentsSeries<T>> {
    let deriv = differentiate(xp, opts.scheme);
    instantaneous_moments_with(xp, &deriv, opts)
}

/// As [`instantaneous_moments`], with a precomputed derivative of `xp`.
pub fn instantaneous_moments_with<T: Scalar>(
    xp: &AnalyticSignal3<T>,
    deriv: &[[Complex<T>; 3]],
    opts: &MomentOptions<T>,
) -> Result<MomentsSeries<T>> {
    if deriv.len() != xp.len() {
        return Err(Error::LengthMismatch {
            expected: xp.len(),
            actual: deriv.len(),
        });
    }
    let power = ensure_energy(xp)?;
    let mean_freq = match opts.mean_freq {
        Some(w) => w,
        None => global_moments_spectral(xp, opts.pad_factor)?.mean_freq,
    };
    let omega_x = frequency_from(xp, deriv, &power);
    let sigma2_x = departure_from(xp, deriv, &power, |_| mean_freq);
    let forms = bandwidth_forms(xp, deriv, &power, &omega_x);
    let max_power = power.iter().fold(T::zero(), |m, &p| m.max(p));
    let unreliable = power
        .iter()
        .map(|&p| p < opts.eps_pow * max_power)
        .collect();
    Ok(MomentsSeries {
        omega_x,
        sigma2_x,
        upsilon2_x: forms.projected,
        upsilon2_alt: forms.difference,
        edge: edge_flags(xp.len(), opts.edge_fraction),
        unreliable,
        power,
        mean_freq,
    })
}

/// Time-domain global moments: power-weighted trapezoidal averages of the
/// instantaneous frequency and second central moment over the whole record.
pub fn global_moments_time<T: Scalar>(
    xp: &AnalyticSignal3<T>,
    moments: &MomentsSeries<T>,
) -> Result<GlobalMoments<T>> {
    global_moments_time_masked(xp, moments, &vec![true; xp.len()])
}

/// As [`global_moments_time`], restricted to a sample range.
pub fn global_moments_time_over<T: Scalar>(
    xp: &AnalyticSignal3<T>,
    moments: &MomentsSeries<T>,
    range: Range<usize>,
) -> Result<GlobalMoments<T>> {
    if range.start >= range.end || range.end > xp.len() {
        return Err(Error::InvalidParameter(format!(
            "integration range {range:?} outside a record of {} samples",
            xp.len()
        )));
    }
    let include: Vec<bool> = (0..xp.len()).map(|i| range.contains(&i)).collect();
    global_moments_time_masked(xp, moments, &include)
}

/// Time-domain global moments over the samples where `include` is set.
///
/// Each sample carries its trapezoidal weight over the whole record, so a
/// contiguous mask reproduces the trapezoid rule up to the half weights at
/// the cut points.
pub fn global_moments_time_masked<T: Scalar>(
    xp: &AnalyticSignal3<T>,
    moments: &MomentsSeries<T>,
    include: &[bool],
) -> Result<GlobalMoments<T>> {
    let n = xp.len();
    for len in [moments.len(), include.len()] {
        if len != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: len,
            });
        }
    }
    let dt = xp.dt();
    let half = T::of(0.5);
    let first = include.iter().position(|&b| b);
    let last = include.iter().rposition(|&b| b);
    let (Some(first), Some(last)) = (first, last) else {
        return Err(Error::ZeroEnergy);
    };
    let weight = |i: usize| -> T {
        if first == last {
            dt
        } else if i == first || i == last {
            dt * half
        } else {
            dt
        }
    };
    let mut energy = T::zero();
    let mut first_moment = T::zero();
    for i in (first..=last).filter(|&i| include[i]) {
        let w = weight(i) * moments.power[i];
        energy = energy + w;
        first_moment = first_moment + w * moments.omega_x[i];
    }
    if !(energy > T::zero()) {
        return Err(Error::ZeroEnergy);
    }
    let mean_freq = first_moment / energy;
    // The instantaneous second moment may be centred elsewhere; shift it to
    // this mean with the bandwidth identity.
    let shift = mean_freq - moments.mean_freq;
    let mut second = T::zero();
    for i in (first..=last).filter(|&i| include[i]) {
        let w = weight(i) * moments.power[i];
        let d = moments.omega_x[i] - moments.mean_freq;
        second = second + w * (moments.sigma2_x[i] - T::of(2.0) * shift * d + shift * shift);
    }
    Ok(GlobalMoments {
        energy,
        mean_freq,
        second_central: second / energy,
    })
}

/// Fourier-domain global moments of the zero-padded analytic signal.
///
/// Sums run over the whole signed frequency grid. A finite record is not
/// exactly analytic: its end discontinuities leak symmetrically into
/// negative frequencies, and dropping that half would bias the mean.
pub fn global_moments_spectral<T: Scalar>(
    xp: &AnalyticSignal3<T>,
    pad_factor: usize,
) -> Result<GlobalMoments<T>> {
    if pad_factor == 0 {
        return Err(Error::InvalidParameter(
            "pad factor must be at least 1".into(),
        ));
    }
    let n = xp.len();
    let m = n * pad_factor;
    let dt = xp.dt();
    let zero = Complex::new(T::zero(), T::zero());
    let mut power = vec![T::zero(); m];
    let mut buf = vec![zero; m];
    for c in 0..3 {
        buf.iter_mut().for_each(|v| *v = zero);
        for (b, s) in buf.iter_mut().zip(xp.samples()) {
            *b = s[c];
        }
        fourier::forward(&mut buf);
        for (p, v) in power.iter_mut().zip(&buf) {
            *p = *p + v.norm_sqr() * dt * dt;
        }
    }
    let total = power.iter().fold(T::zero(), |a, &p| a + p);
    if !(total > T::zero()) || !total.is_finite() {
        return Err(Error::ZeroEnergy);
    }
    let freqs: Vec<T> = (0..m).map(|k| fourier::bin_frequency(k, m, dt)).collect();
    let mean_freq = freqs
        .iter()
        .zip(&power)
        .fold(T::zero(), |a, (&w, &p)| a + w * p)
        / total;
    let second_central = freqs.iter().zip(&power).fold(T::zero(), |a, (&w, &p)| {
        a + (w - mean_freq) * (w - mean_freq) * p
    }) / total;
    // (1 / 2 pi) * sum S dw with dw = 2 pi / (m dt)
    let energy = total / (T::of_usize(m) * dt);
    Ok(GlobalMoments {
        energy,
        mean_freq,
        second_central,
    })
}

/// As [`global_moments_spectral`], for the record restricted to `range`
/// (zero outside it).
pub fn global_moments_spectral_over<T: Scalar>(
    xp: &AnalyticSignal3<T>,
    range: Range<usize>,
    pad_factor: usize,
) -> Result<GlobalMoments<T>> {
    if range.start >= range.end || range.end > xp.len() {
        return Err(Error::InvalidParameter(format!(
            "spectral range {range:?} outside a record of {} samples",
            xp.len()
        )));
    }
    let part = AnalyticSignal3::new(xp.samples()[range].to_vec(), xp.dt())?;
    global_moments_spectral(&part, pad_factor)
}

/// Four-term geometric decomposition of the squared joint bandwidth.
#[derive(Debug, Clone, PartialEq)]
pub struct BandwidthDecomposition<T> {
    /// `(kappa'/kappa)^2`.
    pub term_amplitude: Vec<T>,
    /// `lambda'^2 / (4 (1 - lambda^2))`.
    pub term_deformation: Vec<T>,
    /// `lambda^2 (effective precession)^2`, the effective precession taken
    /// from `(omega_x - omega_phi) / sqrt(1 - lambda^2)`.
    pub term_precession: Vec<T>,
    /// `|n_hat^T x'|^2 / ||x||^2`.
    pub term_normal: Vec<T>,
    /// Out-of-plane term from the planar form
    /// `|[-omega_alpha sin beta, omega_beta] . x_tilde|^2 / ||x_tilde||^2`.
    pub term_normal_planar: Vec<T>,
    /// Precession term from the individual rates,
    /// `lambda^2 (omega_theta + omega_alpha cos beta)^2`.
    pub term_precession_rates: Vec<T>,
    pub sum: Vec<T>,
    /// Upper bound on the squared bandwidth from the individual rates.
    pub bound: Vec<T>,
    /// Upper bound `omega_alpha^2 sin^2 beta + omega_beta^2` on the
    /// out-of-plane term.
    pub normal_bound: Vec<T>,
    /// Degenerate or zero-power samples.
    pub unreliable: Vec<bool>,
}

/// Effective precession rate from the rates and from the frequency identity.
#[derive(Debug, Clone, PartialEq)]
pub struct EffectivePrecession<T> {
    /// `omega_theta + omega_alpha cos beta`.
    pub from_rates: Vec<T>,
    /// `(omega_x - omega_phi) / sqrt(1 - lambda^2)`; zero where unreliable.
    pub from_frequency: Vec<T>,
    /// `omega_x - omega_phi - sqrt(1 - lambda^2) (omega_theta + omega_alpha cos beta)`.
    pub residual: Vec<T>,
    /// Near-linear samples where the division blows up.
    pub unreliable: Vec<bool>,
}

/// Effective precession computed both ways.
pub fn effective_precession<T: Scalar>(
    series: &EllipseSeries<T>,
    rates: &EllipseRatesSeries<T>,
    omega_x: &[T],
) -> Result<EffectivePrecession<T>> {
    let n = series.len();
    for len in [rates.len(), omega_x.len()] {
        if len != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: len,
            });
        }
    }
    let mut out = EffectivePrecession {
        from_rates: Vec::with_capacity(n),
        from_frequency: Vec::with_capacity(n),
        residual: Vec::with_capacity(n),
        unreliable: Vec::with_capacity(n),
    };
    for i in 0..n {
        let s = &series.states[i];
        let r = &rates.rates[i];
        let circ = (T::one() - s.lambda * s.lambda).max(T::zero()).sqrt();
        let eff = r.omega_theta + r.omega_alpha * s.beta.cos();
        let unreliable = rates.degenerate[i] || circ == T::zero();
        out.from_rates.push(eff);
        out.from_frequency.push(if unreliable {
            T::zero()
        } else {
            (omega_x[i] - r.omega_phi) / circ
        });
        out.residual.push(omega_x[i] - r.omega_phi - circ * eff);
        out.unreliable.push(unreliable);
    }
    Ok(out)
}

/// Evaluates the four bandwidth terms, the planar cross-check of the
/// out-of-plane term, and the rate-based upper bounds.
pub fn bandwidth_decompose<T: Scalar>(
    xp: &AnalyticSignal3<T>,
    deriv: &[[Complex<T>; 3]],
    decomposition: &EllipseDecomposition<T>,
    rates: &EllipseRatesSeries<T>,
    omega_x: &[T],
) -> Result<BandwidthDecomposition<T>> {
    let n = xp.len();
    for len in [
        deriv.len(),
        decomposition.ellipse.len(),
        rates.len(),
        omega_x.len(),
    ] {
        if len != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: len,
            });
        }
    }
    let eff = effective_precession(&decomposition.ellipse, rates, omega_x)?;
    let quarter = T::of(0.25);

    let mut out = BandwidthDecomposition {
        term_amplitude: Vec::with_capacity(n),
        term_deformation: Vec::with_capacity(n),
        term_precession: Vec::with_capacity(n),
        term_normal: Vec::with_capacity(n),
        term_normal_planar: Vec::with_capacity(n),
        term_precession_rates: Vec::with_capacity(n),
        sum: Vec::with_capacity(n),
        bound: Vec::with_capacity(n),
        normal_bound: Vec::with_capacity(n),
        unreliable: Vec::with_capacity(n),
    };

    for i in 0..n {
        let s = &decomposition.ellipse.states[i];
        let r = &rates.rates[i];
        let x = &xp.samples()[i];
        let p = norm_sqr3(x);
        let one_minus = T::one() - s.lambda * s.lambda;
        let mut unreliable = rates.degenerate[i] || p == T::zero();

        let amplitude = r.dkappa_rel * r.dkappa_rel;
        let deformation = if one_minus > T::zero() {
            quarter * r.dlambda * r.dlambda / one_minus
        } else {
            unreliable = true;
            T::zero()
        };
        let lam2 = s.lambda * s.lambda;
        let precession_rates = lam2 * eff.from_rates[i] * eff.from_rates[i];
        let precession = if eff.unreliable[i] {
            precession_rates
        } else {
            lam2 * eff.from_frequency[i] * eff.from_frequency[i]
        };

        let nh = decomposition.normals.n_hat[i];
        let d = &deriv[i];
        let normal = if p > T::zero() {
            (d[0] * nh[0] + d[1] * nh[1] + d[2] * nh[2]).norm_sqr() / p
        } else {
            T::zero()
        };

        let (sb, cb) = s.beta.sin_cos();
        let _ = cb;
        let xt = &decomposition.planar.x_tilde[i];
        let pt = xt[0].norm_sqr() + xt[1].norm_sqr();
        let normal_planar = if pt > T::zero() {
            (xt[0] * (-r.omega_alpha * sb) + xt[1] * r.omega_beta).norm_sqr() / pt
        } else {
            T::zero()
        };

        let normal_bound = r.omega_alpha * r.omega_alpha * sb * sb + r.omega_beta * r.omega_beta;
        let prec = r.omega_theta.abs() + r.omega_alpha.abs();
        let bound = amplitude + deformation + r.omega_beta * r.omega_beta + prec * prec;

        out.term_amplitude.push(amplitude);
        out.term_deformation.push(deformation);
        out.term_precession.push(precession);
        out.term_normal.push(normal);
        out.term_normal_planar.push(normal_planar);
        out.term_precession_rates.push(precession_rates);
        out.sum.push(amplitude + deformation + precession + normal);
        out.bound.push(bound);
        out.normal_bound.push(normal_bound);
        out.unreliable.push(unreliable);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellipse::{ellipse_synthesize, EllipseState};
    use std::f64::consts::PI;

    fn circle(n: usize, k: usize) -> (AnalyticSignal3<f64>, f64) {
        let w0 = 2.0 * PI * k as f64 / n as f64;
        let states: Vec<_> = (0..n)
            .map(|t| EllipseState::from_axes(1.0, 1.0, 0.0, w0 * t as f64, 0.0, 0.0))
            .collect();
        (ellipse_synthesize(&states, 1.0).unwrap(), w0)
    }

    #[test]
    fn zero_signal_rejected() {
        let xp = AnalyticSignal3::new(vec![[Complex::new(0.0, 0.0); 3]; 16], 1.0).unwrap();
        assert_eq!(
            joint_instantaneous_frequency(&xp, DerivativeScheme::Central4).unwrap_err(),
            Error::ZeroEnergy
        );
        assert_eq!(
            global_moments_spectral(&xp, 4).unwrap_err(),
            Error::ZeroEnergy
        );
    }

    #[test]
    fn circle_has_exact_moments_with_spectral_derivative() {
        let (xp, w0) = circle(256, 16);
        let w = joint_instantaneous_frequency(&xp, DerivativeScheme::Spectral).unwrap();
        assert!(w.iter().all(|v| (v - w0).abs() < 1e-12));
        let s2 = joint_second_central(&xp, w0, DerivativeScheme::Spectral).unwrap();
        assert!(s2.iter().all(|v| v.abs() < 1e-10));
        let delta = 0.01;
        let s2 = joint_second_central(&xp, w0 + delta, DerivativeScheme::Spectral).unwrap();
        assert!(s2.iter().all(|v| (v - delta * delta).abs() < 1e-12));
        let bw = joint_bandwidth_sq(&xp, DerivativeScheme::Spectral).unwrap();
        assert!(bw.projected.iter().all(|v| v.abs() < 1e-10));
    }

    #[test]
    fn global_moments_of_exact_bin_circle() {
        let (xp, w0) = circle(256, 16);
        let g = global_moments_spectral(&xp, 1).unwrap();
        assert!((g.mean_freq - w0).abs() < 1e-12);
        assert!(g.second_central.abs() < 1e-12);
        let m = instantaneous_moments(
            &xp,
            &MomentOptions {
                scheme: DerivativeScheme::Spectral,
                mean_freq: Some(w0),
                ..Default::default()
            },
        )
        .unwrap();
        let gt = global_moments_time(&xp, &m).unwrap();
        assert!((gt.mean_freq - w0).abs() < 1e-10);
        assert!((gt.energy - 2.0 * 255.0).abs() < 1e-9);
    }

    #[test]
    fn padded_spectrum_matches_time_sums() {
        // zero padding interpolates the spectrum; Parseval still gives the
        // energy, and the mean of a constant-frequency record stays close
        let (xp, w0) = circle(256, 16);
        let g = global_moments_spectral(&xp, DEFAULT_SPECTRAL_PAD).unwrap();
        assert!((g.mean_freq - w0).abs() < 1e-2 * w0, "{}", g.mean_freq);
        assert!((g.energy - 512.0).abs() < 1e-9);
        let g1 = global_moments_spectral(&xp, 1).unwrap();
        assert!((g1.energy - 512.0).abs() < 1e-9);
    }

    #[test]
    fn spectral_range_selects_samples() {
        let (xp, w0) = circle(256, 16);
        let g = global_moments_spectral_over(&xp, 0..128, 1).unwrap();
        assert!((g.mean_freq - w0).abs() < 1e-12);
        assert!(global_moments_spectral_over(&xp, 10..10, 1).is_err());
    }

    #[test]
    fn identity_between_second_moment_and_bandwidth() {
        let states: Vec<_> = (0..300)
            .map(|t| {
                let t = t as f64;
                EllipseState::from_amplitude(
                    1.0 + 0.3 * (0.02 * t).sin(),
                    0.4 + 0.2 * (0.015 * t).cos(),
                    0.01 * t,
                    0.3 * t + 0.5 * (0.01 * t).sin(),
                    0.2 + 0.005 * t,
                    1.2 + 0.3 * (0.01 * t).sin(),
                )
            })
            .collect();
        let xp = ellipse_synthesize(&states, 1.0).unwrap();
        let m = instantaneous_moments(&xp, &MomentOptions::default()).unwrap();
        for i in 0..m.len() {
            let lhs = m.upsilon2_x[i];
            let rhs = m.sigma2_x[i] - (m.omega_x[i] - m.mean_freq).powi(2);
            assert!((lhs - rhs).abs() < 1e-10);
            assert!((m.upsilon2_x[i] - m.upsilon2_alt[i]).abs() < 1e-10);
            assert!(m.sigma2_x[i] >= 0.0);
        }
    }
}
