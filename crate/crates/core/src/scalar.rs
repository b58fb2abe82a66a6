//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display, LowerExp};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};

/// Real floating-point type the library is generic over.
///
/// Tolerances are exposed per type so that the same algorithms can run in
/// single precision with correspondingly looser structural checks.
pub trait Real:
    Float + FloatConst + FromPrimitive + Default + Debug + Display + LowerExp + Send + Sync + 'static
{
    /// Relative tolerance for symmetry, hermiticity, orthogonality and
    /// residual checks.
    fn structure_tol() -> Self;

    /// Relative threshold below which singular values are treated as zero.
    fn truncation_tol() -> Self;

    /// Allowed negative excursion of a probability before it is an error.
    fn probability_floor() -> Self;

    /// Converts an `f64` literal, panicking only if the type cannot
    /// represent finite doubles at all.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }
}

impl Real for f64 {
    fn structure_tol() -> Self {
        1e-10
    }
    fn truncation_tol() -> Self {
        1e-12
    }
    fn probability_floor() -> Self {
        1e-12
    }
}

impl Real for f32 {
    fn structure_tol() -> Self {
        1e-4
    }
    fn truncation_tol() -> Self {
        1e-6
    }
    fn probability_floor() -> Self {
        1e-6
    }
}

/// Complex amplitude over a real scalar.
pub type C<T> = Complex<T>;

#[inline]
pub(crate) fn c<T: Real>(re: T, im: T) -> C<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn cr<T: Real>(re: T) -> C<T> {
    Complex::new(re, T::zero())
}
