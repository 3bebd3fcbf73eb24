//! Decomposition of three-component time series into a time-varying ellipse
//! in three dimensions, with joint instantaneous frequency and bandwidth.
//!
//! The analysis is generic over the real scalar type (see [`Scalar`]); the
//! `*F64` / `*F32` aliases name the concrete instantiations.

pub mod analytic;
pub mod angle;
pub mod derivative;
pub mod ellipse;
mod error;
mod fourier;
pub mod moments;
pub mod pipeline;
mod scalar;
pub mod spectrum;
pub mod synth;

pub use analytic::{
    analytic_transform, differentiate, edge_flags, hilbert, hilbert_check, AnalyticSignal3,
    RealSignal3,
};
pub use derivative::DerivativeScheme;
pub use ellipse::{
    ellipse_extract, ellipse_rates, ellipse_synthesize, normal_vector, rot_x, rot_z, rotate_frame,
    EllipseDecomposition, EllipseRates, EllipseRatesSeries, EllipseSeries, EllipseState,
    ExtractOptions, FrameRotation, Mat3, NormalSeries, PlanarProjection,
};
pub use error::{Error, Result};
pub use moments::{
    bandwidth_decompose, effective_precession, global_moments_spectral,
    global_moments_spectral_over, global_moments_time, global_moments_time_masked,
    instantaneous_moments, instantaneous_moments_with, joint_bandwidth_sq,
    joint_instantaneous_frequency, joint_second_central, BandwidthDecomposition, GlobalMoments,
    MomentOptions, MomentsSeries,
};
pub use pipeline::{analyze, analyze_real, Analysis, AnalysisConfig};
pub use scalar::Scalar;
pub use spectrum::{multitaper_joint_spectrum, slepian_tapers, JointSpectrum, TaperSet};
pub use synth::{make_composite_seismic_like, make_fig2_signal, SynthMode, SynthSpec};

pub type RealSignal3F64 = RealSignal3<f64>;
pub type RealSignal3F32 = RealSignal3<f32>;
pub type AnalyticSignal3F64 = AnalyticSignal3<f64>;
pub type AnalyticSignal3F32 = AnalyticSignal3<f32>;
pub type EllipseStateF64 = EllipseState<f64>;
pub type EllipseStateF32 = EllipseState<f32>;
pub type EllipseSeriesF64 = EllipseSeries<f64>;
pub type EllipseSeriesF32 = EllipseSeries<f32>;
pub type MomentsSeriesF64 = MomentsSeries<f64>;
pub type MomentsSeriesF32 = MomentsSeries<f32>;
pub type JointSpectrumF64 = JointSpectrum<f64>;
pub type JointSpectrumF32 = JointSpectrum<f32>;
pub type AnalysisF64 = Analysis<f64>;
pub type AnalysisF32 = Analysis<f32>;
