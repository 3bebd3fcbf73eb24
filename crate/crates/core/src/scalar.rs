//! Floating-point abstraction shared by every numerical routine in the crate.

use std::fmt;

use num_traits::{Float, FloatConst, FromPrimitive};
use rustfft::FftNum;

/// Real scalar type the analysis is generic over: `f32` or `f64`.
///
/// Tolerances quoted in the documentation assume `f64`; `f32` runs the same
/// code paths with correspondingly looser accuracy.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + FftNum
    + Default
    + fmt::Display
    + fmt::LowerExp
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal into this scalar type.
    #[inline]
    fn of(value: f64) -> Self {
        Self::from_f64(value).expect("literal representable in scalar type")
    }

    /// Converts a count into this scalar type.
    #[inline]
    fn of_usize(value: usize) -> Self {
        Self::from_usize(value).expect("count representable in scalar type")
    }

    /// Absolute tolerance used for structural checks such as rotation
    /// orthogonality: `1e-10`, or a small multiple of machine epsilon when
    /// the type cannot resolve that.
    #[inline]
    fn structural_tolerance() -> Self {
        Self::of(1e-10).max(Self::epsilon() * Self::of(64.0))
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
