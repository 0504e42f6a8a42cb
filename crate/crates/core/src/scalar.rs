//! The scalar abstraction shared by the numeric layers.
//!
//! Embedding values, quality measures and lattice minima are computed
//! generically over [`Real`]. [`Interval`] gives certified enclosures; `f64`
//! and `f32` give fast uncertified estimates of the same quantities.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::embed::interval::Interval;

pub trait Real:
    Clone
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    /// Whether comparisons on this type are rigorous.
    const CERTIFIED: bool;

    fn from_i64(v: i64) -> Self;
    fn from_rational(q: &BigRational, prec: u32) -> Self;
    fn from_interval(x: &Interval) -> Self;

    fn abs(&self) -> Self;
    /// Square root of the nonnegative part.
    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn max(&self, o: &Self) -> Self;
    fn min(&self, o: &Self) -> Self;
    fn hull(&self, o: &Self) -> Self;

    fn lower(&self) -> f64;
    fn upper(&self) -> f64;
    fn mid(&self) -> f64;

    /// Every value of `self` is below every value of `o`.
    fn certainly_lt(&self, o: &Self) -> bool;
    fn certainly_le(&self, o: &Self) -> bool;
    fn contains_zero(&self) -> bool;
    fn is_exact_zero(&self) -> bool;
}

impl Real for Interval {
    const CERTIFIED: bool = true;

    fn from_i64(v: i64) -> Self {
        Interval::from_i64(v)
    }
    fn from_rational(q: &BigRational, prec: u32) -> Self {
        Interval::from_rational(q, prec)
    }
    fn from_interval(x: &Interval) -> Self {
        x.clone()
    }
    fn abs(&self) -> Self {
        Interval::abs(self)
    }
    fn sqrt(&self) -> Self {
        Interval::sqrt(self)
    }
    fn exp(&self) -> Self {
        Interval::exp(self)
    }
    fn max(&self, o: &Self) -> Self {
        Interval::max(self, o)
    }
    fn min(&self, o: &Self) -> Self {
        Interval::min(self, o)
    }
    fn hull(&self, o: &Self) -> Self {
        Interval::hull(self, o)
    }
    fn lower(&self) -> f64 {
        self.lower_f64()
    }
    fn upper(&self) -> f64 {
        self.upper_f64()
    }
    fn mid(&self) -> f64 {
        self.mid_f64()
    }
    fn certainly_lt(&self, o: &Self) -> bool {
        Interval::certainly_lt(self, o)
    }
    fn certainly_le(&self, o: &Self) -> bool {
        Interval::certainly_le(self, o)
    }
    fn contains_zero(&self) -> bool {
        Interval::contains_zero(self)
    }
    fn is_exact_zero(&self) -> bool {
        Interval::is_exact_zero(self)
    }
}

macro_rules! impl_real_float {
    ($t:ty, $to:ident) => {
        impl Real for $t {
            const CERTIFIED: bool = false;

            fn from_i64(v: i64) -> Self {
                v as $t
            }
            fn from_rational(q: &BigRational, _prec: u32) -> Self {
                q.$to().unwrap_or(<$t>::NAN)
            }
            fn from_interval(x: &Interval) -> Self {
                x.mid_f64() as $t
            }
            fn abs(&self) -> Self {
                <$t>::abs(*self)
            }
            fn sqrt(&self) -> Self {
                <$t>::sqrt(<$t>::max(*self, 0.0))
            }
            fn exp(&self) -> Self {
                <$t>::exp(*self)
            }
            fn max(&self, o: &Self) -> Self {
                <$t>::max(*self, *o)
            }
            fn min(&self, o: &Self) -> Self {
                <$t>::min(*self, *o)
            }
            fn hull(&self, o: &Self) -> Self {
                (*self + *o) / 2.0
            }
            fn lower(&self) -> f64 {
                *self as f64
            }
            fn upper(&self) -> f64 {
                *self as f64
            }
            fn mid(&self) -> f64 {
                *self as f64
            }
            fn certainly_lt(&self, o: &Self) -> bool {
                self < o
            }
            fn certainly_le(&self, o: &Self) -> bool {
                self <= o
            }
            fn contains_zero(&self) -> bool {
                *self == 0.0
            }
            fn is_exact_zero(&self) -> bool {
                *self == 0.0
            }
        }
    };
}

impl_real_float!(f64, to_f64);
impl_real_float!(f32, to_f32);

#[cfg(test)]
mod tests {
    use super::*;

    fn hypot<R: Real>(a: i64, b: i64) -> R {
        let (a, b) = (R::from_i64(a), R::from_i64(b));
        (a.clone() * a + b.clone() * b).sqrt()
    }

    #[test]
    fn generic_code_agrees_across_scalars() {
        let iv: Interval = hypot(3, 4);
        assert!(iv.contains(&crate::embed::dyadic::Dyadic::from_i64(5)));
        assert_eq!(hypot::<f64>(3, 4), 5.0);
        assert_eq!(hypot::<f32>(3, 4), 5.0);
    }
}
