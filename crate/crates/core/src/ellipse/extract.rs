use num_complex::Complex;

use super::rotation::{cross, mat_mul, rot_x, rot_z};
use super::{
    EllipseSeries, EllipseState, NormalSeries, PlanarProjection, DEFAULT_EPS_CIRC, DEFAULT_EPS_LIN,
};
use crate::analytic::{norm_sqr3, AnalyticSignal3};
use crate::angle::{unwrap, wrap};
use crate::Scalar;

/// Thresholds controlling degeneracy flags during extraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtractOptions<T> {
    /// Plane declared undefined where `||n|| < eps_lin * kappa^2`.
    pub eps_lin: T,
    /// Motion declared circular where `lambda < eps_circ`.
    pub eps_circ: T,
}

impl<T: Scalar> Default for ExtractOptions<T> {
    fn default() -> Self {
        Self {
            eps_lin: T::of(DEFAULT_EPS_LIN),
            eps_circ: T::of(DEFAULT_EPS_CIRC),
        }
    }
}

/// Everything recovered from an analytic 3-vector by [`ellipse_extract`].
#[derive(Debug, Clone, PartialEq)]
pub struct EllipseDecomposition<T> {
    pub ellipse: EllipseSeries<T>,
    pub normals: NormalSeries<T>,
    pub planar: PlanarProjection<T>,
}

/// Normal vector `Im{x+} x Re{x+}` and its unit direction.
///
/// Samples with `||n|| < eps_lin * kappa^2` (or zero amplitude) are flagged
/// degenerate and take the last well-defined unit normal; degenerate samples
/// before the first well-defined one take the first well-defined value, or
/// `+z` if there is none.
pub fn normal_vector<T: Scalar>(xp: &AnalyticSignal3<T>, eps_lin: T) -> NormalSeries<T> {
    let n_samples = xp.len();
    let mut n = Vec::with_capacity(n_samples);
    let mut mag = Vec::with_capacity(n_samples);
    let mut degenerate = Vec::with_capacity(n_samples);
    for s in xp.samples() {
        let re = [s[0].re, s[1].re, s[2].re];
        let im = [s[0].im, s[1].im, s[2].im];
        let v = cross(&im, &re);
        let m = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        let kappa_sq = norm_sqr3(s) / T::of(2.0);
        degenerate.push(!(kappa_sq > T::zero()) || m < eps_lin * kappa_sq);
        n.push(v);
        mag.push(m);
    }

    let unit = |i: usize| {
        let m = mag[i];
        [n[i][0] / m, n[i][1] / m, n[i][2] / m]
    };
    let first_good = degenerate.iter().position(|d| !d);
    let mut held = match first_good {
        Some(i) => unit(i),
        None => [T::zero(), T::zero(), T::one()],
    };
    let mut n_hat = Vec::with_capacity(n_samples);
    for i in 0..n_samples {
        if !degenerate[i] {
            held = unit(i);
        }
        n_hat.push(held);
    }

    NormalSeries {
        n,
        n_hat,
        mag,
        degenerate,
    }
}

/// Recovers the canonical ellipse parameters, the plane normal, and the
/// planar and rotary projections from an analytic 3-vector.
///
/// The rotary phases are unwrapped along time before forming `phi` and
/// `theta`; the joint `(theta, phi) -> (theta + pi, phi + pi)` ambiguity is
/// fixed once at the first sample by choosing `theta` in `(-pi/2, pi/2]`.
pub fn ellipse_extract<T: Scalar>(
    xp: &AnalyticSignal3<T>,
    opts: &ExtractOptions<T>,
) -> EllipseDecomposition<T> {
    let normals = normal_vector(xp, opts.eps_lin);
    let len = xp.len();
    let two = T::of(2.0);
    let four = T::of(4.0);
    let inv_sqrt2 = T::FRAC_1_SQRT_2();
    let i_unit = Complex::new(T::zero(), T::one());

    let mut kappa = Vec::with_capacity(len);
    let mut lambda = Vec::with_capacity(len);
    let mut alpha = Vec::with_capacity(len);
    let mut beta = Vec::with_capacity(len);
    let mut x_tilde = Vec::with_capacity(len);
    let mut z_tilde = Vec::with_capacity(len);
    let mut phase_plus = Vec::with_capacity(len);
    let mut phase_minus = Vec::with_capacity(len);

    for (i, s) in xp.samples().iter().enumerate() {
        let p = norm_sqr3(s);
        kappa.push((p / two).sqrt());
        let lam = if p > T::zero() {
            let m = normals.mag[i];
            (T::one() - four * m * m / (p * p))
                .max(T::zero())
                .min(T::one())
                .sqrt()
        } else {
            T::zero()
        };
        lambda.push(lam);

        let nh = normals.n_hat[i];
        // adding zero turns -0.0 into +0.0 so a vertical normal gives alpha = 0
        let b = (nh[0] * nh[0] + nh[1] * nh[1]).sqrt().atan2(nh[2]);
        let a = (nh[0] + T::zero()).atan2(-nh[1] + T::zero());
        alpha.push(a);
        beta.push(b);

        let r = mat_mul(&rot_z(a), &rot_x(b));
        let col = |j: usize| s[0] * r[0][j] + s[1] * r[1][j] + s[2] * r[2][j];
        let xt = [col(0), col(1)];
        let zt = [
            (xt[0] + i_unit * xt[1]) * inv_sqrt2,
            (xt[0] - i_unit * xt[1]) * inv_sqrt2,
        ];
        phase_plus.push(zt[0].arg());
        phase_minus.push(zt[1].arg());
        x_tilde.push(xt);
        z_tilde.push(zt);
    }

    let phase_plus = unwrap(&phase_plus);
    let mut phase_minus = unwrap(&phase_minus);
    if let (Some(&pp), Some(&pm)) = (phase_plus.first(), phase_minus.first()) {
        let theta0 = (pp - pm) / two;
        let shift = if theta0 > T::FRAC_PI_2() {
            T::TAU()
        } else if theta0 <= -T::FRAC_PI_2() {
            -T::TAU()
        } else {
            T::zero()
        };
        if shift != T::zero() {
            for v in phase_minus.iter_mut() {
                *v = *v + shift;
            }
        }
    }

    let phi_unwrapped: Vec<T> = phase_plus
        .iter()
        .zip(&phase_minus)
        .map(|(&p, &m)| (p + m) / two)
        .collect();
    let theta_unwrapped: Vec<T> = phase_plus
        .iter()
        .zip(&phase_minus)
        .map(|(&p, &m)| (p - m) / two)
        .collect();
    let alpha_unwrapped = unwrap(&alpha);

    let states = (0..len)
        .map(|i| {
            EllipseState::from_amplitude(
                kappa[i],
                lambda[i],
                wrap(theta_unwrapped[i]),
                wrap(phi_unwrapped[i]),
                alpha[i],
                beta[i],
            )
        })
        .collect();
    let indeterminate = lambda.iter().map(|&l| l < opts.eps_circ).collect();

    EllipseDecomposition {
        ellipse: EllipseSeries {
            states,
            theta_unwrapped,
            phi_unwrapped,
            alpha_unwrapped,
            degenerate: normals.degenerate.clone(),
            indeterminate,
        },
        normals,
        planar: PlanarProjection { x_tilde, z_tilde },
    }
}
