//! Time-varying ellipse representation of an analytic 3-vector: synthesis
//! from prescribed parameters, recovery of the canonical parameters and the
//! plane normal, and rates of change of the geometry.

mod extract;
mod rates;
pub mod rotation;
mod synthesize;

pub use extract::{ellipse_extract, normal_vector, EllipseDecomposition, ExtractOptions};
pub use rates::{ellipse_rates, EllipseRates, EllipseRatesSeries};
pub use rotation::{rot_x, rot_z, rotate_frame, FrameRotation, Mat3};
pub use synthesize::ellipse_synthesize;

use num_complex::Complex;

use crate::Scalar;

/// Default threshold on `||n|| / kappa^2` below which the ellipse plane is
/// treated as undefined.
pub const DEFAULT_EPS_LIN: f64 = 1e-6;

/// Default threshold on the linearity below which the motion is treated as
/// circular and the split between precession and phase is undefined.
pub const DEFAULT_EPS_CIRC: f64 = 1e-6;

/// Instantaneous ellipse geometry and orbital phase.
///
/// `kappa` and `lambda` are redundant with `a` and `b` and are kept in sync
/// by the constructors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseState<T> {
    /// Semi-major axis.
    pub a: T,
    /// Semi-minor axis.
    pub b: T,
    /// Root-mean-square amplitude `sqrt((a^2 + b^2) / 2)`.
    pub kappa: T,
    /// Linearity `(a^2 - b^2) / (a^2 + b^2)`: 0 for circles, 1 for lines.
    pub lambda: T,
    /// Precession angle of the major axis within the ellipse plane.
    pub theta: T,
    /// Orbital phase.
    pub phi: T,
    /// Azimuth of the plane normal.
    pub alpha: T,
    /// Zenith angle of the plane normal, in `[0, pi]`.
    pub beta: T,
}

impl<T: Scalar> EllipseState<T> {
    pub fn from_axes(a: T, b: T, theta: T, phi: T, alpha: T, beta: T) -> Self {
        let sum = a * a + b * b;
        let kappa = (sum / T::of(2.0)).sqrt();
        let lambda = if sum > T::zero() {
            (a * a - b * b) / sum
        } else {
            T::zero()
        };
        Self {
            a,
            b,
            kappa,
            lambda,
            theta,
            phi,
            alpha,
            beta,
        }
    }

    pub fn from_amplitude(kappa: T, lambda: T, theta: T, phi: T, alpha: T, beta: T) -> Self {
        Self {
            a: kappa * (T::one() + lambda).sqrt(),
            b: kappa * (T::one() - lambda).sqrt(),
            kappa,
            lambda,
            theta,
            phi,
            alpha,
            beta,
        }
    }

    /// Unit normal `(sin a sin b, -cos a sin b, cos b)` of the ellipse plane.
    pub fn unit_normal(&self) -> [T; 3] {
        let (sa, ca) = self.alpha.sin_cos();
        let (sb, cb) = self.beta.sin_cos();
        [sa * sb, -ca * sb, cb]
    }
}

/// Normal vector `n = Im{x+} x Re{x+}` to the instantaneous ellipse plane.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalSeries<T> {
    pub n: Vec<[T; 3]>,
    /// Unit normal; held at the last well-defined value on degenerate samples.
    pub n_hat: Vec<[T; 3]>,
    /// `||n|| = a b`.
    pub mag: Vec<T>,
    /// Samples where `||n|| < eps_lin kappa^2` (near-linear motion).
    pub degenerate: Vec<bool>,
}

/// The analytic 3-vector expressed in the instantaneous ellipse plane.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarProjection<T> {
    /// Planar 2-vector `[J3(alpha) J1(beta) H]^T x+`.
    pub x_tilde: Vec<[Complex<T>; 2]>,
    /// Rotary components `(1/sqrt 2) [[1, i], [1, -i]] x_tilde`:
    /// counterclockwise first, clockwise second.
    pub z_tilde: Vec<[Complex<T>; 2]>,
}

impl<T: Scalar> PlanarProjection<T> {
    /// Amplitudes of the counterclockwise and clockwise rotary components.
    pub fn rotary_amplitudes(&self) -> Vec<[T; 2]> {
        self.z_tilde
            .iter()
            .map(|z| [z[0].norm(), z[1].norm()])
            .collect()
    }

    /// Phases of the rotary components (principal values).
    pub fn rotary_phases(&self) -> Vec<[T; 2]> {
        self.z_tilde
            .iter()
            .map(|z| [z[0].arg(), z[1].arg()])
            .collect()
    }
}

/// Per-sample canonical ellipse parameters with continuous angle tracks and
/// quality flags.
#[derive(Debug, Clone, PartialEq)]
pub struct EllipseSeries<T> {
    /// Parameters with `theta`, `phi`, `alpha` as principal values.
    pub states: Vec<EllipseState<T>>,
    pub theta_unwrapped: Vec<T>,
    pub phi_unwrapped: Vec<T>,
    pub alpha_unwrapped: Vec<T>,
    /// Plane orientation undefined (near-linear motion): alpha, beta, theta
    /// are unreliable.
    pub degenerate: Vec<bool>,
    /// Linearity below the circularity threshold: only `theta + phi` is
    /// meaningful.
    pub indeterminate: Vec<bool>,
}

impl<T: Scalar> EllipseSeries<T> {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn kappa(&self) -> Vec<T> {
        self.states.iter().map(|s| s.kappa).collect()
    }

    pub fn lambda(&self) -> Vec<T> {
        self.states.iter().map(|s| s.lambda).collect()
    }

    pub fn beta(&self) -> Vec<T> {
        self.states.iter().map(|s| s.beta).collect()
    }
}
