//! End-to-end analysis of an analytic or real three-component record.

use std::ops::Range;

use num_complex::Complex;

use crate::analytic::{
    analytic_transform, differentiate, AnalyticSignal3, RealSignal3, DEFAULT_EDGE_FRACTION,
};
use crate::derivative::DerivativeScheme;
use crate::ellipse::{
    ellipse_extract, ellipse_rates, EllipseDecomposition, EllipseRatesSeries, ExtractOptions,
    DEFAULT_EPS_CIRC, DEFAULT_EPS_LIN,
};
use crate::moments::{
    bandwidth_decompose, effective_precession, global_moments_spectral_over,
    global_moments_time_masked, instantaneous_moments_with, BandwidthDecomposition,
    EffectivePrecession, GlobalMoments, MomentOptions, MomentsSeries, DEFAULT_EPS_POW,
    DEFAULT_SPECTRAL_PAD,
};
use crate::spectrum::{
    multitaper_joint_spectrum, slepian_tapers, JointSpectrum, DEFAULT_PAD_FACTOR,
};
use crate::{Result, Scalar};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisConfig<T> {
    pub scheme: DerivativeScheme,
    pub edge_fraction: f64,
    pub eps_lin: T,
    pub eps_circ: T,
    pub eps_pow: T,
    /// Multitaper time-bandwidth product.
    pub taper_p: T,
    /// Number of tapers.
    pub tapers: usize,
    /// Zero-padding factor of the multitaper estimate.
    pub pad_factor: usize,
    /// Zero-padding factor of the deterministic spectrum used for the
    /// Fourier-domain global moments.
    pub spectral_pad: usize,
}

impl<T: Scalar> Default for AnalysisConfig<T> {
    fn default() -> Self {
        Self {
            scheme: DerivativeScheme::Central4,
            edge_fraction: DEFAULT_EDGE_FRACTION,
            eps_lin: T::of(DEFAULT_EPS_LIN),
            eps_circ: T::of(DEFAULT_EPS_CIRC),
            eps_pow: T::of(DEFAULT_EPS_POW),
            taper_p: T::of(2.0),
            tapers: 3,
            pad_factor: DEFAULT_PAD_FACTOR,
            spectral_pad: DEFAULT_SPECTRAL_PAD,
        }
    }
}

/// Everything computed by [`analyze`].
#[derive(Debug, Clone, PartialEq)]
pub struct Analysis<T> {
    pub signal: AnalyticSignal3<T>,
    pub derivative: Vec<[Complex<T>; 3]>,
    pub decomposition: EllipseDecomposition<T>,
    pub rates: EllipseRatesSeries<T>,
    /// Instantaneous moments; `sigma2_x` is centred on the time-domain
    /// global mean of the unflagged samples.
    pub moments: MomentsSeries<T>,
    pub bandwidth: BandwidthDecomposition<T>,
    pub precession: EffectivePrecession<T>,
    /// Set on edge, degenerate and low-power samples.
    pub flagged: Vec<bool>,
    /// Time-domain global moments over unflagged samples.
    pub global_time: GlobalMoments<T>,
    /// Fourier-domain global moments of the record restricted to
    /// `spectral_span`.
    pub global_spectral: GlobalMoments<T>,
    /// First to last unflagged sample, or the whole record if every sample
    /// is flagged.
    pub spectral_span: Range<usize>,
    /// Multitaper estimate, present when the input was a real record.
    pub spectrum: Option<JointSpectrum<T>>,
}

impl<T: Scalar> Analysis<T> {
    pub fn len(&self) -> usize {
        self.signal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signal.is_empty()
    }

    pub fn flags_excluded(&self) -> usize {
        self.flagged.iter().filter(|&&f| f).count()
    }
}

/// Runs extraction, rates, moments, the bandwidth decomposition and both
/// global-moment paths on an analytic signal.
pub fn analyze<T: Scalar>(xp: &AnalyticSignal3<T>, cfg: &AnalysisConfig<T>) -> Result<Analysis<T>> {
    let derivative = differentiate(xp, cfg.scheme);
    let decomposition = ellipse_extract(
        xp,
        &ExtractOptions {
            eps_lin: cfg.eps_lin,
            eps_circ: cfg.eps_circ,
        },
    );
    let rates = ellipse_rates(&decomposition.ellipse, xp.dt(), cfg.scheme);
    let opts = MomentOptions {
        scheme: cfg.scheme,
        eps_pow: cfg.eps_pow,
        edge_fraction: cfg.edge_fraction,
        // recentred below once the time-domain mean is known
        mean_freq: Some(T::zero()),
        pad_factor: cfg.spectral_pad,
    };
    let provisional = instantaneous_moments_with(xp, &derivative, &opts)?;
    let flagged: Vec<bool> = (0..xp.len())
        .map(|i| !provisional.usable(i) || rates.degenerate[i])
        .collect();
    let include: Vec<bool> = flagged.iter().map(|f| !f).collect();
    let span = match (
        include.iter().position(|&b| b),
        include.iter().rposition(|&b| b),
    ) {
        (Some(a), Some(b)) => a..b + 1,
        _ => 0..xp.len(),
    };
    let global_time = if include.iter().any(|&b| b) {
        global_moments_time_masked(xp, &provisional, &include)?
    } else {
        global_moments_time_masked(xp, &provisional, &vec![true; xp.len()])?
    };
    let global_spectral = global_moments_spectral_over(xp, span.clone(), cfg.spectral_pad)?;
    let moments = instantaneous_moments_with(
        xp,
        &derivative,
        &MomentOptions {
            mean_freq: Some(global_time.mean_freq),
            ..opts
        },
    )?;

    let bandwidth = bandwidth_decompose(xp, &derivative, &decomposition, &rates, &moments.omega_x)?;
    let precession = effective_precession(&decomposition.ellipse, &rates, &moments.omega_x)?;

    Ok(Analysis {
        signal: xp.clone(),
        derivative,
        decomposition,
        rates,
        moments,
        bandwidth,
        precession,
        flagged,
        global_time,
        global_spectral,
        spectral_span: span,
        spectrum: None,
    })
}

/// Forms the analytic signal of a real record, runs [`analyze`], and adds the
/// multitaper spectrum.
pub fn analyze_real<T: Scalar>(x: &RealSignal3<T>, cfg: &AnalysisConfig<T>) -> Result<Analysis<T>> {
    let xp = analytic_transform(x);
    let mut out = analyze(&xp, cfg)?;
    let tapers = slepian_tapers(x.len(), cfg.taper_p, cfg.tapers)?;
    out.spectrum = Some(multitaper_joint_spectrum(x, &tapers, cfg.pad_factor)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::{make_fig2_signal, SynthMode, SynthSpec};

    #[test]
    fn fixed_geometry_has_no_flags_away_from_edges() {
        let (xp, _) = make_fig2_signal(&SynthSpec::<f64>::fig2(SynthMode::FixedGeometry)).unwrap();
        let a = analyze(&xp, &AnalysisConfig::default()).unwrap();
        assert_eq!(a.flags_excluded(), 80);
        assert!((a.global_time.mean_freq - std::f64::consts::PI * 1e-2).abs() < 1e-8);
        assert!(a.global_time.second_central.abs() < 1e-12);
    }

    #[test]
    fn real_input_adds_spectrum() {
        let (xp, _) = make_fig2_signal(&SynthSpec::<f64>::fig2(SynthMode::Amplitude)).unwrap();
        let x = xp.to_real().unwrap();
        let a = analyze_real(&x, &AnalysisConfig::default()).unwrap();
        let s = a.spectrum.unwrap();
        assert!((s.normalization() - 1.0).abs() < 1e-10);
    }
}
