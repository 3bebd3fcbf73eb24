use super::EllipseSeries;
use crate::derivative::{differentiate_real, DerivativeScheme};
use crate::Scalar;

/// Instantaneous rates of change of the ellipse parameters, per unit time.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EllipseRates<T> {
    /// Relative amplitude rate `kappa' / kappa`.
    pub dkappa_rel: T,
    /// Deformation rate `lambda'`.
    pub dlambda: T,
    /// Orbital frequency `phi'`.
    pub omega_phi: T,
    /// Internal precession `theta'`.
    pub omega_theta: T,
    /// External precession `alpha'`.
    pub omega_alpha: T,
    /// Nutation `beta'`.
    pub omega_beta: T,
}

/// Rates for every sample plus the propagated degeneracy flags.
#[derive(Debug, Clone, PartialEq)]
pub struct EllipseRatesSeries<T> {
    pub rates: Vec<EllipseRates<T>>,
    /// Set where the sample, or any sample inside the difference stencil,
    /// is degenerate or has zero amplitude.
    pub degenerate: Vec<bool>,
}

impl<T: Scalar> EllipseRatesSeries<T> {
    pub fn len(&self) -> usize {
        self.rates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rates.is_empty()
    }
}

/// Differentiates the amplitude, linearity and the continuous angle tracks
/// of an extracted ellipse series.
pub fn ellipse_rates<T: Scalar>(
    series: &EllipseSeries<T>,
    dt: T,
    scheme: DerivativeScheme,
) -> EllipseRatesSeries<T> {
    let kappa = series.kappa();
    let dkappa = differentiate_real(&kappa, dt, scheme);
    let dlambda = differentiate_real(&series.lambda(), dt, scheme);
    let dphi = differentiate_real(&series.phi_unwrapped, dt, scheme);
    let dtheta = differentiate_real(&series.theta_unwrapped, dt, scheme);
    let dalpha = differentiate_real(&series.alpha_unwrapped, dt, scheme);
    let dbeta = differentiate_real(&series.beta(), dt, scheme);

    let n = series.len();
    let rates = (0..n)
        .map(|i| EllipseRates {
            dkappa_rel: if kappa[i] > T::zero() {
                dkappa[i] / kappa[i]
            } else {
                T::zero()
            },
            dlambda: dlambda[i],
            omega_phi: dphi[i],
            omega_theta: dtheta[i],
            omega_alpha: dalpha[i],
            omega_beta: dbeta[i],
        })
        .collect();

    const HALF_STENCIL: usize = 2;
    let bad: Vec<bool> = (0..n)
        .map(|i| series.degenerate[i] || kappa[i] == T::zero())
        .collect();
    let degenerate = (0..n)
        .map(|i| {
            let lo = i.saturating_sub(HALF_STENCIL);
            let hi = (i + HALF_STENCIL).min(n.saturating_sub(1));
            bad[lo..=hi].iter().any(|&b| b)
        })
        .collect();

    EllipseRatesSeries { rates, degenerate }
}
