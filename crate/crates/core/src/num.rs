//! Scalar abstraction shared by the numeric parts of the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Real-valued scalar used for probabilities, coverage, scores and statistics.
///
/// Implemented for `f32` and `f64`. Everything numeric in the crate is
/// written against this trait; the root module re-exports `f64`
/// instantiations under the plain type names.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossy conversion from `f64`. Constants in the crate are all
    /// representable in `f32` to the precision they are used at.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar convertible to f64")
    }
}

impl<T> Real for T where
    T: Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
}

/// Arithmetic mean. `None` for an empty slice.
pub fn mean<R: Real>(xs: &[R]) -> Option<R> {
    if xs.is_empty() {
        return None;
    }
    Some(xs.iter().copied().sum::<R>() / R::from_count(xs.len()))
}

/// Sample standard deviation (n - 1 denominator); zero for fewer than two values.
pub fn sample_std<R: Real>(xs: &[R]) -> R {
    if xs.len() < 2 {
        return R::zero();
    }
    let m = mean(xs).unwrap_or_else(R::zero);
    let ss: R = xs.iter().map(|&x| (x - m) * (x - m)).sum();
    (ss / R::from_count(xs.len() - 1)).sqrt()
}
