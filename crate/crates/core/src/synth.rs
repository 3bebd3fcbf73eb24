//! Reference signals with known ellipse geometry.
//!
//! [`make_fig2_signal`] builds records in which exactly one geometric rate is
//! active while the joint instantaneous frequency and bandwidth are held
//! constant. [`make_composite_seismic_like`] joins segments of fixed
//! polarization with a crossfade and adds seeded Gaussian noise.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, StandardNormal};

use crate::analytic::{AnalyticSignal3, RealSignal3};
use crate::ellipse::{ellipse_synthesize, EllipseRates, EllipseState, Mat3};
use crate::{Error, Result, Scalar};

/// Shortest record [`make_fig2_signal`] will produce.
pub const MIN_SYNTH_SAMPLES: usize = 64;

/// Which geometric rate carries the bandwidth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SynthMode {
    /// Exponentially growing amplitude.
    Amplitude,
    /// Major axis turning within a fixed plane.
    InternalPrecession,
    /// Linearity sweeping towards one.
    Deformation,
    /// Circular motion whose plane tilts about its line of nodes.
    Nutation,
    /// Circular motion whose normal turns about the vertical.
    Azimuth,
    /// Constant geometry, phase advancing at the carrier rate.
    FixedGeometry,
}

impl SynthMode {
    pub const ALL: [SynthMode; 6] = [
        SynthMode::Amplitude,
        SynthMode::InternalPrecession,
        SynthMode::Deformation,
        SynthMode::Nutation,
        SynthMode::Azimuth,
        SynthMode::FixedGeometry,
    ];

    /// The five modes with nonzero bandwidth.
    pub const VARYING: [SynthMode; 5] = [
        SynthMode::Amplitude,
        SynthMode::InternalPrecession,
        SynthMode::Deformation,
        SynthMode::Nutation,
        SynthMode::Azimuth,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SynthMode::Amplitude => "amplitude",
            SynthMode::InternalPrecession => "internal_precession",
            SynthMode::Deformation => "deformation",
            SynthMode::Nutation => "nutation",
            SynthMode::Azimuth => "azimuth",
            SynthMode::FixedGeometry => "fixed_geometry",
        }
    }
}

impl fmt::Display for SynthMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SynthMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        SynthMode::ALL
            .into_iter()
            .find(|m| m.as_str() == key)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown synthesis mode `{s}`")))
    }
}

/// Ellipse with `a = 3`, `b = 2`, `theta = pi/3`, `alpha = pi/6`,
/// `beta = pi/4` and phase `phi`.
pub fn fig1_state<T: Scalar>(phi: T) -> EllipseState<T> {
    let pi = T::PI();
    EllipseState::from_axes(
        T::of(3.0),
        T::of(2.0),
        pi / T::of(3.0),
        phi,
        pi / T::of(6.0),
        pi / T::of(4.0),
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthSpec<T> {
    pub n_samples: usize,
    pub mode: SynthMode,
    /// Target joint instantaneous frequency, radians per unit time.
    pub omega_bar: T,
    /// Target joint instantaneous bandwidth, radians per unit time.
    pub upsilon: T,
    /// Geometry and phase at `t = 0`. Modes override the fields they drive:
    /// deformation sets `lambda`, nutation and azimuth force a circle.
    pub base_state: EllipseState<T>,
    pub dt: T,
}

impl<T: Scalar> SynthSpec<T> {
    /// 800 samples, `omega_bar = pi/100`, `upsilon = 2.5 pi / 10^4`, starting
    /// from [`fig1_state`] with phase `5 pi / 6`. Internal precession uses
    /// linearity 0.6.
    pub fn fig2(mode: SynthMode) -> Self {
        let pi = T::PI();
        let mut base = fig1_state(T::of(5.0) * pi / T::of(6.0));
        if mode == SynthMode::InternalPrecession {
            base = EllipseState::from_amplitude(
                base.kappa,
                T::of(0.6),
                base.theta,
                base.phi,
                base.alpha,
                base.beta,
            );
        }
        Self {
            n_samples: 800,
            mode,
            omega_bar: pi * T::of(1e-2),
            upsilon: T::of(2.5) * pi * T::of(1e-4),
            base_state: base,
            dt: T::one(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n_samples < MIN_SYNTH_SAMPLES {
            return Err(Error::TooShort {
                len: self.n_samples,
                min: MIN_SYNTH_SAMPLES,
            });
        }
        if !(self.dt > T::zero()) || !self.dt.is_finite() {
            return Err(Error::InvalidSampleInterval);
        }
        if !(self.omega_bar > T::zero()) || !self.omega_bar.is_finite() {
            return Err(Error::InvalidParameter("omega_bar must be positive".into()));
        }
        if !(self.upsilon >= T::zero()) || !self.upsilon.is_finite() {
            return Err(Error::InvalidParameter(
                "upsilon must be nonnegative".into(),
            ));
        }
        let b = &self.base_state;
        if !(b.kappa > T::zero()) || !b.kappa.is_finite() {
            return Err(Error::InvalidParameter(
                "base amplitude must be positive".into(),
            ));
        }
        if !(b.lambda >= T::zero() && b.lambda < T::one()) {
            return Err(Error::InvalidParameter(
                "base linearity must lie in [0, 1)".into(),
            ));
        }
        Ok(())
    }
}

/// Exact parameter paths behind a synthetic signal.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundTruth<T> {
    pub states: Vec<EllipseState<T>>,
    pub rates: Vec<EllipseRates<T>>,
}

fn invalid(msg: &str) -> Error {
    Error::InvalidParameter(msg.to_string())
}

/// Builds the analytic signal for one mode together with its parameter paths.
///
/// Paths are closed-form and chosen so that the frequency reconstruction
/// gives `omega_x = omega_bar` and the bandwidth decomposition gives
/// `upsilon^2` carried by a single term.
pub fn make_fig2_signal<T: Scalar>(
    spec: &SynthSpec<T>,
) -> Result<(AnalyticSignal3<T>, GroundTruth<T>)> {
    spec.validate()?;
    let n = spec.n_samples;
    let b0 = spec.base_state;
    let (w, u, dt) = (spec.omega_bar, spec.upsilon, spec.dt);
    let two = T::of(2.0);
    let sqrt2 = two.sqrt();
    let pi = T::PI();
    let duration = T::of_usize(n - 1) * dt;
    let near = |x: T, y: T| (x - y).abs() < T::of(1e-6);

    let mut states = Vec::with_capacity(n);
    let mut rates = Vec::with_capacity(n);
    let mut push = |s: EllipseState<T>, r: EllipseRates<T>| {
        states.push(s);
        rates.push(r);
    };
    let base_rates = EllipseRates {
        omega_phi: w,
        ..Default::default()
    };

    match spec.mode {
        SynthMode::Amplitude => {
            for i in 0..n {
                let t = T::of_usize(i) * dt;
                let s = EllipseState::from_amplitude(
                    b0.kappa * (u * t).exp(),
                    b0.lambda,
                    b0.theta,
                    b0.phi + w * t,
                    b0.alpha,
                    b0.beta,
                );
                push(
                    s,
                    EllipseRates {
                        dkappa_rel: u,
                        ..base_rates
                    },
                );
            }
        }
        SynthMode::InternalPrecession => {
            if !(b0.lambda > T::zero()) {
                return Err(invalid("internal precession needs a linearity in (0, 1)"));
            }
            let wt = u / b0.lambda;
            let wp = w - (T::one() - b0.lambda * b0.lambda).sqrt() * wt;
            for i in 0..n {
                let t = T::of_usize(i) * dt;
                let s = EllipseState::from_amplitude(
                    b0.kappa,
                    b0.lambda,
                    b0.theta + wt * t,
                    b0.phi + wp * t,
                    b0.alpha,
                    b0.beta,
                );
                push(
                    s,
                    EllipseRates {
                        omega_phi: wp,
                        omega_theta: wt,
                        ..Default::default()
                    },
                );
            }
        }
        SynthMode::Deformation => {
            // Centre the sweep of 2 u t inside (0, pi/2) so lambda stays in (0, 1).
            let c = (pi / two - two * u * duration) / two;
            if !(c > T::zero()) {
                return Err(invalid(
                    "deformation sweep 2*upsilon*duration must be below pi/2",
                ));
            }
            for i in 0..n {
                let t = T::of_usize(i) * dt;
                let arg = two * u * t + c;
                let s = EllipseState::from_amplitude(
                    b0.kappa,
                    arg.sin(),
                    b0.theta,
                    b0.phi + w * t,
                    b0.alpha,
                    b0.beta,
                );
                push(
                    s,
                    EllipseRates {
                        dlambda: two * u * arg.cos(),
                        ..base_rates
                    },
                );
            }
        }
        SynthMode::Nutation => {
            let wb = u * sqrt2;
            let end = b0.beta + wb * duration;
            if !(b0.beta > T::zero() && end < pi) {
                return Err(invalid(
                    "nutation must keep the zenith angle inside (0, pi)",
                ));
            }
            for i in 0..n {
                let t = T::of_usize(i) * dt;
                let s = EllipseState::from_amplitude(
                    b0.kappa,
                    T::zero(),
                    b0.theta,
                    b0.phi + w * t,
                    b0.alpha,
                    b0.beta + wb * t,
                );
                push(
                    s,
                    EllipseRates {
                        omega_beta: wb,
                        ..base_rates
                    },
                );
            }
        }
        SynthMode::Azimuth => {
            let beta = b0.beta;
            if near(beta, T::zero())
                || near(beta, pi / two)
                || near(beta, pi)
                || beta < T::zero()
                || beta > pi
            {
                return Err(invalid(
                    "azimuth mode needs a zenith angle away from 0, pi/2 and pi",
                ));
            }
            let wa = u * sqrt2 / beta.sin();
            let wp = w - wa * beta.cos();
            for i in 0..n {
                let t = T::of_usize(i) * dt;
                let s = EllipseState::from_amplitude(
                    b0.kappa,
                    T::zero(),
                    b0.theta,
                    b0.phi + wp * t,
                    b0.alpha + wa * t,
                    beta,
                );
                push(
                    s,
                    EllipseRates {
                        omega_phi: wp,
                        omega_alpha: wa,
                        ..Default::default()
                    },
                );
            }
        }
        SynthMode::FixedGeometry => {
            for i in 0..n {
                let t = T::of_usize(i) * dt;
                let s = EllipseState::from_amplitude(
                    b0.kappa,
                    b0.lambda,
                    b0.theta,
                    b0.phi + w * t,
                    b0.alpha,
                    b0.beta,
                );
                push(s, base_rates);
            }
        }
    }

    let signal = ellipse_synthesize(&states, dt)?;
    Ok((signal, GroundTruth { states, rates }))
}

/// Settings for [`random_smooth_states`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomPathSpec<T> {
    pub n_samples: usize,
    /// Record length in time units; `dt = duration / n_samples`.
    pub duration: T,
    /// Mean orbital frequency, radians per unit time.
    pub carrier: T,
    /// Linearity stays inside this interval.
    pub lambda_range: (T, T),
    /// Scales the excursions of the angle paths.
    pub modulation: T,
}

impl<T: Scalar> RandomPathSpec<T> {
    pub fn dt(&self) -> T {
        self.duration / T::of_usize(self.n_samples)
    }
}

/// Sum of a few slow sinusoids with weights summing to one, so that the
/// path stays in `[-1, 1]`. Coefficients depend only on the RNG stream, not
/// on the sampling.
struct SmoothPath {
    terms: Vec<(f64, f64, f64)>,
}

impl SmoothPath {
    fn draw<R: Rng>(rng: &mut R, duration: f64) -> Self {
        let raw: Vec<(f64, f64, f64)> = (0..3)
            .map(|_| {
                let weight = rng.random_range(0.2..1.0);
                let freq = std::f64::consts::TAU * rng.random_range(0.3..2.0) / duration;
                let phase = rng.random_range(0.0..std::f64::consts::TAU);
                (weight, freq, phase)
            })
            .collect();
        let total: f64 = raw.iter().map(|t| t.0).sum();
        Self {
            terms: raw.into_iter().map(|(a, f, p)| (a / total, f, p)).collect(),
        }
    }

    fn value(&self, t: f64) -> f64 {
        self.terms
            .iter()
            .map(|(a, f, p)| a * (f * t + p).sin())
            .sum()
    }

    fn rate(&self, t: f64) -> f64 {
        self.terms
            .iter()
            .map(|(a, f, p)| a * f * (f * t + p).cos())
            .sum()
    }
}

/// Random band-limited ellipse paths with exact rates.
///
/// The zenith angle stays at least 0.4 rad from the poles. The same seed
/// gives the same continuous paths for any `n_samples`.
pub fn random_smooth_states<T: Scalar>(
    spec: &RandomPathSpec<T>,
    seed: u64,
) -> Result<GroundTruth<T>> {
    if spec.n_samples < MIN_SYNTH_SAMPLES {
        return Err(Error::TooShort {
            len: spec.n_samples,
            min: MIN_SYNTH_SAMPLES,
        });
    }
    let f = |v: T| v.to_f64().unwrap_or(f64::NAN);
    let duration = f(spec.duration);
    let (lo, hi) = (f(spec.lambda_range.0), f(spec.lambda_range.1));
    if !(duration > 0.0) || !(0.0 <= lo && lo <= hi && hi < 1.0) {
        return Err(invalid(
            "random path needs a positive duration and 0 <= lambda_lo <= lambda_hi < 1",
        ));
    }
    let carrier = f(spec.carrier);
    let m = f(spec.modulation);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let log_kappa = SmoothPath::draw(&mut rng, duration);
    let lambda = SmoothPath::draw(&mut rng, duration);
    let theta = SmoothPath::draw(&mut rng, duration);
    let phi = SmoothPath::draw(&mut rng, duration);
    let alpha = SmoothPath::draw(&mut rng, duration);
    let beta = SmoothPath::draw(&mut rng, duration);
    let offsets: Vec<f64> = (0..3).map(|_| rng.random_range(-1.0..1.0)).collect();

    let (lam_mid, lam_half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
    let beta_half = (std::f64::consts::FRAC_PI_2 - 0.4) * m.min(1.0);
    let dt = f(spec.dt());

    let mut states = Vec::with_capacity(spec.n_samples);
    let mut rates = Vec::with_capacity(spec.n_samples);
    for i in 0..spec.n_samples {
        let t = i as f64 * dt;
        let s = EllipseState::from_amplitude(
            T::of((0.3 * log_kappa.value(t)).exp()),
            T::of(lam_mid + lam_half * lambda.value(t)),
            T::of(offsets[0] + m * theta.value(t)),
            T::of(carrier * t + m * phi.value(t)),
            T::of(offsets[1] * 3.0 + m * alpha.value(t)),
            T::of(std::f64::consts::FRAC_PI_2 + beta_half * beta.value(t)),
        );
        states.push(s);
        rates.push(EllipseRates {
            dkappa_rel: T::of(0.3 * log_kappa.rate(t)),
            dlambda: T::of(lam_half * lambda.rate(t)),
            omega_phi: T::of(carrier + m * phi.rate(t)),
            omega_theta: T::of(m * theta.rate(t)),
            omega_alpha: T::of(m * alpha.rate(t)),
            omega_beta: T::of(beta_half * beta.rate(t)),
        });
    }
    Ok(GroundTruth { states, rates })
}

/// Uniformly distributed proper rotation drawn from a seeded stream.
pub fn random_rotation<T: Scalar>(seed: u64) -> Mat3<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut q = [0.0f64; 4];
    for v in q.iter_mut() {
        *v = StandardNormal.sample(&mut rng);
    }
    let norm = q.iter().map(|v| v * v).sum::<f64>().sqrt();
    let [w, x, y, z] = q.map(|v| v / norm);
    let m = [
        [
            1.0 - 2.0 * (y * y + z * z),
            2.0 * (x * y - w * z),
            2.0 * (x * z + w * y),
        ],
        [
            2.0 * (x * y + w * z),
            1.0 - 2.0 * (x * x + z * z),
            2.0 * (y * z - w * x),
        ],
        [
            2.0 * (x * z - w * y),
            2.0 * (y * z + w * x),
            1.0 - 2.0 * (x * x + y * y),
        ],
    ];
    m.map(|row| row.map(T::of))
}

/// Time-ordered segments joined by a raised-cosine crossfade, plus noise.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeSpec<T> {
    pub segments: Vec<SynthSpec<T>>,
    /// Samples shared by consecutive segments.
    pub crossfade: usize,
    /// Signal-to-noise ratio in decibels; `None` adds no noise.
    pub snr_db: Option<f64>,
    pub seed: u64,
}

impl<T: Scalar> CompositeSpec<T> {
    /// A transverse, nearly linear arrival (`b = 0.02 a`, major axis along
    /// `y`) followed by a circular arrival in the vertical `x`-`z` plane with
    /// normal `+y`. Each segment has 1000 samples at 0.16 rad/sample and
    /// they overlap by 100 samples.
    pub fn love_rayleigh(snr_db: Option<f64>, seed: u64) -> Self {
        let pi = T::PI();
        let half = pi / T::of(2.0);
        let carrier = T::of(0.16);
        let segment = |base: EllipseState<T>| SynthSpec {
            n_samples: 1000,
            mode: SynthMode::FixedGeometry,
            omega_bar: carrier,
            upsilon: T::zero(),
            base_state: base,
            dt: T::one(),
        };
        Self {
            segments: vec![
                segment(EllipseState::from_axes(
                    T::one(),
                    T::of(0.02),
                    T::zero(),
                    T::zero(),
                    half,
                    half,
                )),
                segment(EllipseState::from_axes(
                    T::one(),
                    T::one(),
                    T::zero(),
                    T::zero(),
                    pi,
                    half,
                )),
            ],
            crossfade: 100,
            snr_db,
            seed,
        }
    }
}

/// Output of [`make_composite_seismic_like`].
#[derive(Debug, Clone, PartialEq)]
pub struct Composite<T> {
    /// Noisy record (demeaned, as every [`RealSignal3`] is).
    pub signal: RealSignal3<T>,
    /// The same record before noise.
    pub clean: RealSignal3<T>,
    /// Samples covered by exactly one segment, per segment.
    pub segments: Vec<Range<usize>>,
    /// Parameter paths of each segment on its own time axis.
    pub truth: Vec<GroundTruth<T>>,
    /// Per-component noise standard deviation that was applied.
    pub noise_sigma: T,
}

/// Adds white Gaussian noise in place at `snr_db` decibels below the mean
/// sample power, split evenly over the three components. Returns the
/// per-component standard deviation.
pub fn add_gaussian_noise<T: Scalar>(samples: &mut [[T; 3]], snr_db: f64, seed: u64) -> Result<T> {
    if samples.is_empty() {
        return Ok(T::zero());
    }
    if !snr_db.is_finite() {
        return Err(invalid("signal-to-noise ratio must be finite"));
    }
    let p_sig = samples
        .iter()
        .map(|v| {
            v.iter()
                .fold(0.0, |a, &x| a + x.to_f64().unwrap_or(0.0).powi(2))
        })
        .sum::<f64>()
        / samples.len() as f64;
    let s = (p_sig / (3.0 * 10f64.powf(snr_db / 10.0))).sqrt();
    let normal = Normal::new(0.0, s).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for v in samples.iter_mut() {
        for x in v.iter_mut() {
            *x = *x + T::of(normal.sample(&mut rng));
        }
    }
    Ok(T::of(s))
}

/// Raised-cosine fade-in gain at sample `k` of an `l`-sample overlap.
/// `crossfade_gain(k, l) + crossfade_gain(l - 1 - k, l) = 1`.
fn crossfade_gain(k: usize, l: usize) -> f64 {
    let x = (k as f64 + 0.5) / l as f64;
    0.5 - 0.5 * (std::f64::consts::PI * x).cos()
}

/// Overlap-adds the real parts of the segments and adds Gaussian noise at the
/// requested SNR (signal power averaged over samples, split evenly across
/// components).
pub fn make_composite_seismic_like<T: Scalar>(spec: &CompositeSpec<T>) -> Result<Composite<T>> {
    let segs = &spec.segments;
    if segs.is_empty() {
        return Err(invalid("composite needs at least one segment"));
    }
    let dt = segs[0].dt;
    if segs.iter().any(|s| s.dt != dt) {
        return Err(invalid("all segments must share a sample interval"));
    }
    let l = spec.crossfade;
    if segs.iter().any(|s| s.n_samples < 2 * l + 1) {
        return Err(invalid("crossfade longer than half a segment"));
    }

    let total = segs.iter().map(|s| s.n_samples).sum::<usize>() - l * (segs.len() - 1);
    let mut clean = vec![[T::zero(); 3]; total];
    let mut ranges = Vec::with_capacity(segs.len());
    let mut truth = Vec::with_capacity(segs.len());
    let ramp = |k: usize| T::of(crossfade_gain(k, l));

    let mut offset = 0;
    for (j, s) in segs.iter().enumerate() {
        let (sig, gt) = make_fig2_signal(s)?;
        let n = s.n_samples;
        let fade_in = if j > 0 { l } else { 0 };
        let fade_out = if j + 1 < segs.len() { l } else { 0 };
        for (i, v) in sig.samples().iter().enumerate() {
            let mut g = T::one();
            if i < fade_in {
                g = ramp(i);
            }
            if i >= n - fade_out {
                g = ramp(n - 1 - i);
            }
            for c in 0..3 {
                clean[offset + i][c] = clean[offset + i][c] + g * v[c].re;
            }
        }
        ranges.push(offset + fade_in..offset + n - fade_out);
        truth.push(gt);
        offset += n - l;
    }

    let mut noisy = clean.clone();
    let sigma = match spec.snr_db {
        Some(snr) => add_gaussian_noise(&mut noisy, snr, spec.seed)?,
        None => T::zero(),
    };

    Ok(Composite {
        signal: RealSignal3::new(noisy, dt)?,
        clean: RealSignal3::new(clean, dt)?,
        segments: ranges,
        truth,
        noise_sigma: sigma,
    })
}
