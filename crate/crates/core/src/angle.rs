//! Angle wrapping and unwrapping.

use crate::Scalar;

/// Maps an angle to its principal value in `(-pi, pi]`.
pub fn wrap<T: Scalar>(x: T) -> T {
    let two_pi = T::TAU();
    let y = x - two_pi * ((x - T::PI()) / two_pi).ceil();
    // guard against round-off pushing the result just outside the interval
    if y <= -T::PI() {
        y + two_pi
    } else {
        y
    }
}

/// Removes `2 pi` jumps between consecutive samples so the track is
/// continuous. The first sample is left unchanged.
pub fn unwrap<T: Scalar>(x: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(x.len());
    let mut offset = T::zero();
    for (i, &v) in x.iter().enumerate() {
        if i > 0 {
            let prev_raw = x[i - 1];
            let jump = v - prev_raw;
            offset = offset + (wrap(jump) - jump);
        }
        out.push(v + offset);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn wrap_endpoints() {
        assert!((wrap(PI) - PI).abs() < 1e-15);
        assert!((wrap(-PI) - PI).abs() < 1e-15);
        assert!((wrap(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert_eq!(wrap(0.0f64), 0.0);
    }

    #[test]
    fn unwrap_recovers_ramp() {
        let ramp: Vec<f64> = (0..200).map(|i| 0.3 * i as f64 - 5.0).collect();
        let wrapped: Vec<f64> = ramp.iter().map(|&v| wrap(v)).collect();
        let un = unwrap(&wrapped);
        for (a, b) in un.iter().zip(&ramp) {
            assert!((a - (b + (un[0] - ramp[0]))).abs() < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn wrap_is_principal_and_congruent(x in -100.0f64..100.0) {
            let w = wrap(x);
            prop_assert!(w > -PI && w <= PI + 1e-15);
            let k = (x - w) / (2.0 * PI);
            prop_assert!((k - k.round()).abs() < 1e-9);
        }
    }
}
