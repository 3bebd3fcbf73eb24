use num_complex::Complex;

use super::rotation::{mat_mul, rot_x, rot_z};
use super::EllipseState;
use crate::analytic::AnalyticSignal3;
use crate::{Error, Result, Scalar};

/// Evaluates `x+(t) = e^{i phi} J3(alpha) J1(beta) J3(theta) [a, -i b, 0]^T`
/// sample by sample.
///
/// Angles may be given as continuous (unwrapped) tracks. Rejects any sample
/// with `b > a` or `b < 0`.
pub fn ellipse_synthesize<T: Scalar>(
    states: &[EllipseState<T>],
    dt: T,
) -> Result<AnalyticSignal3<T>> {
    let mut samples = Vec::with_capacity(states.len());
    for (i, s) in states.iter().enumerate() {
        if !(s.b >= T::zero() && s.a >= s.b) {
            return Err(Error::AxisOrder { index: i });
        }
        let (st, ct) = s.theta.sin_cos();
        // J3(theta) [a, -ib, 0]
        let v = [
            Complex::new(s.a * ct, s.b * st),
            Complex::new(s.a * st, -s.b * ct),
        ];
        let r = mat_mul(&rot_z(s.alpha), &rot_x(s.beta));
        let carrier = Complex::new(T::zero(), s.phi).exp();
        let row = |k: usize| (v[0] * r[k][0] + v[1] * r[k][1]) * carrier;
        samples.push([row(0), row(1), row(2)]);
    }
    AnalyticSignal3::new(samples, dt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellipse::rotation::mat_vec;
    use std::f64::consts::PI;

    #[test]
    fn circle_in_xy_plane() {
        let w0 = 0.1;
        let states: Vec<_> = (0..64)
            .map(|t| EllipseState::from_axes(1.0, 1.0, 0.0, w0 * t as f64, 0.0, 0.0))
            .collect();
        let xp = ellipse_synthesize(&states, 1.0).unwrap();
        for (t, s) in xp.samples().iter().enumerate() {
            let e = Complex::new(0.0, w0 * t as f64).exp();
            assert!((s[0] - e).norm() < 1e-15);
            assert!((s[1] - e * Complex::new(0.0, -1.0)).norm() < 1e-15);
            assert!(s[2].norm() == 0.0);
        }
    }

    #[test]
    fn reference_initial_point_on_major_axis() {
        let (theta, beta, alpha) = (PI / 3.0, PI / 4.0, PI / 6.0);
        let st = EllipseState::from_axes(3.0, 2.0, theta, 0.0, alpha, beta);
        let xp = ellipse_synthesize(&[st; 8], 1.0).unwrap();
        let r = mat_mul(&mat_mul(&rot_z(alpha), &rot_x(beta)), &rot_z(theta));
        let major = mat_vec(&r, &[3.0, 0.0, 0.0]);
        let re = xp.real_part()[0];
        for c in 0..3 {
            assert!((re[c] - major[c]).abs() < 1e-14);
        }
        let dist = (re[0] * re[0] + re[1] * re[1] + re[2] * re[2]).sqrt();
        assert!((dist - 3.0).abs() < 1e-14);
    }

    #[test]
    fn linear_motion_tilted_into_xz_plane() {
        // direct evaluation of the matrix product: J1(pi/2) maps the minor
        // axis onto z, so with b = 0 only x oscillates
        let states: Vec<_> = (0..16)
            .map(|t| EllipseState::from_axes(2.0, 0.0, 0.0, 0.3 * t as f64, 0.0, PI / 2.0))
            .collect();
        let xp = ellipse_synthesize(&states, 1.0).unwrap();
        for (t, s) in xp.samples().iter().enumerate() {
            let phi = 0.3 * t as f64;
            assert!((s[0] - Complex::new(0.0, phi).exp() * 2.0).norm() < 1e-14);
            assert!(s[1].norm() < 1e-15);
            assert!(s[2].norm() < 1e-15);
        }
    }

    #[test]
    fn inverted_axes_rejected() {
        let mut st = EllipseState::from_axes(1.0, 2.0, 0.0, 0.0, 0.0, 0.0);
        assert_eq!(
            ellipse_synthesize(&[st; 10], 1.0).unwrap_err(),
            Error::AxisOrder { index: 0 }
        );
        st.a = 3.0;
        st.b = -0.1;
        assert!(ellipse_synthesize(&[st; 10], 1.0).is_err());
    }
}
