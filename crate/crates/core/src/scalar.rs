//! Scalar abstraction for performance values.
//!
//! Every quantity the simulation computes (contributions, performances,
//! utilities, bids, normalized series) is generic over [`Scalar`], which is
//! implemented for `f32` and `f64`.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive};
use rand::Rng;

pub trait Scalar:
    Float + FromPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// One uniform draw from `[0, 1)`.
    fn sample_unit<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Exact conversion of a small count.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable as a float")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

macro_rules! impl_scalar {
    ( $( $t:ident ),* ) => {
        $(
            impl Scalar for $t {
                #[inline]
                fn sample_unit<R: Rng + ?Sized>(rng: &mut R) -> $t {
                    rng.random::<$t>()
                }
            }
        )*
    };
}

impl_scalar!(f32, f64);

/// Sum in iteration order. All means in the crate go through this so the
/// summation order is fixed.
#[inline]
pub(crate) fn ordered_sum<T: Scalar, I: IntoIterator<Item = T>>(values: I) -> T {
    values.into_iter().fold(T::zero(), |acc, v| acc + v)
}
