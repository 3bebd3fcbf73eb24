//! 3x3 rotation matrices and frame rotation of three-component series.

use num_complex::Complex;

use crate::analytic::{AnalyticSignal3, RealSignal3};
use crate::{Error, Result, Scalar};

/// Row-major 3x3 matrix.
pub type Mat3<T> = [[T; 3]; 3];

/// Counterclockwise rotation by `angle` about the z axis.
pub fn rot_z<T: Scalar>(angle: T) -> Mat3<T> {
    let (s, c) = angle.sin_cos();
    let (o, l) = (T::zero(), T::one());
    [[c, -s, o], [s, c, o], [o, o, l]]
}

/// Counterclockwise rotation by `angle` about the x axis.
pub fn rot_x<T: Scalar>(angle: T) -> Mat3<T> {
    let (s, c) = angle.sin_cos();
    let (o, l) = (T::zero(), T::one());
    [[l, o, o], [o, c, -s], [o, s, c]]
}

pub fn identity<T: Scalar>() -> Mat3<T> {
    let (o, l) = (T::zero(), T::one());
    [[l, o, o], [o, l, o], [o, o, l]]
}

pub fn mat_mul<T: Scalar>(a: &Mat3<T>, b: &Mat3<T>) -> Mat3<T> {
    let mut out = [[T::zero(); 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
        }
    }
    out
}

pub fn transpose<T: Scalar>(a: &Mat3<T>) -> Mat3<T> {
    let mut out = [[T::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[j][i];
        }
    }
    out
}

pub fn mat_vec<T: Scalar>(a: &Mat3<T>, v: &[T; 3]) -> [T; 3] {
    [
        a[0][0] * v[0] + a[0][1] * v[1] + a[0][2] * v[2],
        a[1][0] * v[0] + a[1][1] * v[1] + a[1][2] * v[2],
        a[2][0] * v[0] + a[2][1] * v[1] + a[2][2] * v[2],
    ]
}

pub fn mat_vec_complex<T: Scalar>(a: &Mat3<T>, v: &[Complex<T>; 3]) -> [Complex<T>; 3] {
    [
        v[0] * a[0][0] + v[1] * a[0][1] + v[2] * a[0][2],
        v[0] * a[1][0] + v[1] * a[1][1] + v[2] * a[1][2],
        v[0] * a[2][0] + v[1] * a[2][1] + v[2] * a[2][2],
    ]
}

pub fn determinant<T: Scalar>(a: &Mat3<T>) -> T {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

pub fn cross<T: Scalar>(f: &[T; 3], g: &[T; 3]) -> [T; 3] {
    [
        f[1] * g[2] - f[2] * g[1],
        -(f[0] * g[2] - f[2] * g[0]),
        f[0] * g[1] - f[1] * g[0],
    ]
}

pub fn dot<T: Scalar>(f: &[T; 3], g: &[T; 3]) -> T {
    f[0] * g[0] + f[1] * g[1] + f[2] * g[2]
}

pub fn norm<T: Scalar>(f: &[T; 3]) -> T {
    dot(f, f).sqrt()
}

/// Checks `R^T R = I` and `det R = 1` to [`Scalar::structural_tolerance`].
pub fn check_proper_rotation<T: Scalar>(r: &Mat3<T>) -> Result<()> {
    let rtr = mat_mul(&transpose(r), r);
    let eye = identity::<T>();
    let mut residual = T::zero();
    for i in 0..3 {
        for j in 0..3 {
            residual = residual.max((rtr[i][j] - eye[i][j]).abs());
        }
    }
    let det = determinant(r);
    let tol = T::structural_tolerance();
    let finite = r.iter().flatten().all(|v| v.is_finite());
    if !finite || residual > tol || (det - T::one()).abs() > tol {
        return Err(Error::NotProperRotation {
            residual: residual.to_f64().unwrap_or(f64::NAN),
            determinant: det.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

/// Series that can be re-expressed in a rotated reference frame.
pub trait FrameRotation<T: Scalar>: Sized {
    /// Premultiplies every sample by the proper rotation `r`.
    fn rotate_frame(&self, r: &Mat3<T>) -> Result<Self>;
}

impl<T: Scalar> FrameRotation<T> for RealSignal3<T> {
    fn rotate_frame(&self, r: &Mat3<T>) -> Result<Self> {
        check_proper_rotation(r)?;
        let samples = self.samples().iter().map(|s| mat_vec(r, s)).collect();
        Ok(RealSignal3::from_parts(
            samples,
            self.dt(),
            mat_vec(r, &self.means()),
        ))
    }
}

impl<T: Scalar> FrameRotation<T> for AnalyticSignal3<T> {
    fn rotate_frame(&self, r: &Mat3<T>) -> Result<Self> {
        check_proper_rotation(r)?;
        let samples = self
            .samples()
            .iter()
            .map(|s| mat_vec_complex(r, s))
            .collect();
        Ok(AnalyticSignal3::from_parts(samples, self.dt()))
    }
}

/// Rotates a real or analytic series into a new frame.
pub fn rotate_frame<T: Scalar, S: FrameRotation<T>>(x: &S, r: &Mat3<T>) -> Result<S> {
    x.rotate_frame(r)
}
