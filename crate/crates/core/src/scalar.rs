//! Floating-point scalar abstraction for the spectral routines.
//!
//! Everything that touches eigenvalues, moments or quadrature is written
//! against [`Scalar`] so it runs in `f32` or `f64`. Exact arithmetic
//! (ranks, traces, determinants) never goes through this trait; it uses
//! `BigInt` / `BigRational` directly.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// floating point: f32 or f64
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossy conversion from `f64`; panics only on NaN-producing casts, which
    /// `f32`/`f64` never hit.
    #[inline]
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 converts to scalar")
    }

    #[inline]
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("usize converts to scalar")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar converts to f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Zero-eigenvalue threshold for a floating eigensolve of an `n x n` operator
/// whose spectrum lies in `[0, norm_bound]`.
///
/// `1e-8 * K` in double precision; widened for `f32` where accumulated
/// rounding in the tridiagonal reduction exceeds that.
pub fn kernel_tolerance<T: Scalar>(norm_bound: T, n: usize) -> T {
    let rounding = T::of(64.0) * T::of_usize(n.max(1)) * T::epsilon();
    norm_bound * rounding.max(T::of(1e-8))
}

/// Order-independent accumulator for values in `[-1, 1]`-ish ranges.
///
/// Each addend is rounded to a fixed grid of `2^-62` and summed as an
/// integer, so the total does not depend on summation order or thread
/// scheduling.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FixedSum(i128);

const FIXED_SCALE: f64 = 4_611_686_018_427_387_904.0; // 2^62

impl FixedSum {
    pub fn add<T: Scalar>(&mut self, x: T) {
        let v = x.as_f64();
        debug_assert!(v.is_finite() && v.abs() < 1.0e6, "fixed-point addend out of range: {v}");
        self.0 += (v * FIXED_SCALE).round() as i128;
    }

    pub fn merge(&mut self, other: FixedSum) {
        self.0 += other.0;
    }

    /// Mean over `count` addends.
    pub fn mean<T: Scalar>(&self, count: usize) -> T {
        if count == 0 {
            return T::zero();
        }
        T::of(self.0 as f64 / FIXED_SCALE / count as f64)
    }
}
