//! Floating-point scalar abstraction shared by the geometric code.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar used by geometry and shadow integrals (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar convertible to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Sum of a slice by recursive halving; the result depends only on the
/// slice contents and length.
pub fn pairwise_sum<T: Real>(xs: &[T]) -> T {
    const LEAF: usize = 32;
    if xs.len() <= LEAF {
        return xs.iter().copied().fold(T::zero(), |acc, x| acc + x);
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// `ceil(x)` that ignores round-off just above an integer.
pub(crate) fn robust_ceil<T: Real>(x: T) -> usize {
    let snapped = (x * T::lit(1.0 - 1e-9)).ceil();
    snapped.to_usize().unwrap_or(usize::MAX).max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_naive_on_small_input() {
        let xs: Vec<f64> = (0..100).map(|i| i as f64 * 0.5).collect();
        let naive: f64 = xs.iter().sum();
        assert!((pairwise_sum(&xs) - naive).abs() < 1e-12);
    }

    #[test]
    fn robust_ceil_snaps_roundoff() {
        assert_eq!(robust_ceil(1.0f64 / (1.0 / 16.0)), 16);
        assert_eq!(robust_ceil(16.000000000001f64), 16);
        assert_eq!(robust_ceil(16.1f64), 17);
        assert_eq!(robust_ceil(0.2f32), 1);
    }
}
