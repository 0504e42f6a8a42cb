//! Closed intervals with dyadic endpoints and outward rounding.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::dyadic::{Dir, Dyadic};

/// A closed interval `[lo, hi]`. Every operation returns an interval that
/// contains all results of the operation applied to members of the operands.
///
/// `prec` is the number of mantissa bits kept after each rounded operation;
/// `0` marks an exact value (integers and other point data that have not yet
/// been mixed with anything inexact).
#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo.to_f64_dir(Dir::Down), self.hi.to_f64_dir(Dir::Up))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::decimal::format_interval(self, 20))
    }
}

fn join_prec(a: u32, b: u32) -> u32 {
    a.max(b)
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Interval {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi, prec }
    }

    pub fn point(v: Dyadic) -> Interval {
        Interval { lo: v.clone(), hi: v, prec: 0 }
    }

    pub fn from_int(v: &BigInt) -> Interval {
        Interval::point(Dyadic::from_int(v.clone()))
    }

    pub fn from_i64(v: i64) -> Interval {
        Interval::point(Dyadic::from_i64(v))
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Interval {
        if q.denom().is_one() {
            return Interval::point(Dyadic::from_int(q.numer().clone()));
        }
        let prec = if prec == 0 { super::dyadic::FALLBACK_PREC } else { prec };
        Interval { lo: Dyadic::from_rational(q, prec, Dir::Down), hi: Dyadic::from_rational(q, prec, Dir::Up), prec }
    }

    pub fn from_f64(x: f64) -> Interval {
        Interval::point(Dyadic::from_f64(x))
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Same enclosure, tagged with a new working precision.
    pub fn with_prec(mut self, prec: u32) -> Interval {
        self.prec = prec;
        self
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_exact_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains(&self, v: &Dyadic) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        self.lo.to_rational() <= *q && *q <= self.hi.to_rational()
    }

    /// `true` when `other` lies inside `self`.
    pub fn encloses(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn certainly_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn certainly_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn certainly_lt(&self, o: &Interval) -> bool {
        self.hi < o.lo
    }

    pub fn certainly_le(&self, o: &Interval) -> bool {
        self.hi <= o.lo
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn midpoint(&self) -> Dyadic {
        self.lo.add(&self.hi).shift(-1)
    }

    pub fn radius_upper(&self) -> Dyadic {
        self.width().shift(-1)
    }

    pub fn hull(&self, o: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(o.lo.clone()),
            hi: self.hi.clone().max(o.hi.clone()),
            prec: join_prec(self.prec, o.prec),
        }
    }

    /// Widen symmetrically by `r >= 0`.
    pub fn inflate(&self, r: &Dyadic) -> Interval {
        let prec = self.prec;
        Interval { lo: self.lo.sub(r).round(prec, Dir::Down), hi: self.hi.add(r).round(prec, Dir::Up), prec }
    }

    pub fn abs(&self) -> Interval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            -self.clone()
        } else {
            Interval { lo: Dyadic::zero(), hi: self.lo.abs().max(self.hi.clone()), prec: self.prec }
        }
    }

    pub fn max(&self, o: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().max(o.lo.clone()),
            hi: self.hi.clone().max(o.hi.clone()),
            prec: join_prec(self.prec, o.prec),
        }
    }

    pub fn min(&self, o: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(o.lo.clone()),
            hi: self.hi.clone().min(o.hi.clone()),
            prec: join_prec(self.prec, o.prec),
        }
    }

    pub fn square(&self) -> Interval {
        let a = self.abs();
        let p = a.prec;
        Interval { lo: a.lo.mul_r(&a.lo, p, Dir::Down), hi: a.hi.mul_r(&a.hi, p, Dir::Up), prec: p }
    }

    /// Square root on the nonnegative part of the interval.
    ///
    /// Panics if the interval is entirely negative.
    pub fn sqrt(&self) -> Interval {
        assert!(!self.hi.is_negative(), "square root of a negative interval");
        let p = if self.prec == 0 { super::dyadic::FALLBACK_PREC } else { self.prec };
        let lo = if self.lo.is_positive() { self.lo.sqrt(p, Dir::Down) } else { Dyadic::zero() };
        Interval { lo, hi: self.hi.sqrt(p, Dir::Up), prec: p }
    }

    pub fn exp(&self) -> Interval {
        let p = if self.prec == 0 { super::dyadic::FALLBACK_PREC } else { self.prec };
        Interval { lo: self.lo.exp_r(p, Dir::Down), hi: self.hi.exp_r(p, Dir::Up), prec: p }
    }

    /// Division; `None` when the divisor contains zero.
    pub fn checked_div(&self, o: &Interval) -> Option<Interval> {
        if o.contains_zero() {
            return None;
        }
        let p = join_prec(self.prec, o.prec);
        let p = if p == 0 { super::dyadic::FALLBACK_PREC } else { p };
        let cands = [(&self.lo, &o.lo), (&self.lo, &o.hi), (&self.hi, &o.lo), (&self.hi, &o.hi)];
        let lo = cands.iter().map(|(a, b)| a.div(b, p, Dir::Down)).min().unwrap();
        let hi = cands.iter().map(|(a, b)| a.div(b, p, Dir::Up)).max().unwrap();
        Some(Interval { lo, hi, prec: p })
    }

    pub fn recip(&self) -> Option<Interval> {
        Interval::from_i64(1).checked_div(self)
    }

    /// Multiply by `2^k` (exact).
    pub fn shift(&self, k: i64) -> Interval {
        Interval { lo: self.lo.shift(k), hi: self.hi.shift(k), prec: self.prec }
    }

    pub fn lower_f64(&self) -> f64 {
        self.lo.to_f64_dir(Dir::Down)
    }

    pub fn upper_f64(&self) -> f64 {
        self.hi.to_f64_dir(Dir::Up)
    }

    pub fn mid_f64(&self) -> f64 {
        self.midpoint().to_f64()
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: self.hi.neg(), hi: self.lo.neg(), prec: self.prec }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        -self.clone()
    }
}

impl Add<&Interval> for &Interval {
    type Output = Interval;
    fn add(self, o: &Interval) -> Interval {
        let p = join_prec(self.prec, o.prec);
        Interval { lo: self.lo.add(&o.lo).round(p, Dir::Down), hi: self.hi.add(&o.hi).round(p, Dir::Up), prec: p }
    }
}

impl Sub<&Interval> for &Interval {
    type Output = Interval;
    fn sub(self, o: &Interval) -> Interval {
        let p = join_prec(self.prec, o.prec);
        Interval { lo: self.lo.sub(&o.hi).round(p, Dir::Down), hi: self.hi.sub(&o.lo).round(p, Dir::Up), prec: p }
    }
}

impl Mul<&Interval> for &Interval {
    type Output = Interval;
    fn mul(self, o: &Interval) -> Interval {
        let p = join_prec(self.prec, o.prec);
        if self.is_point() && o.is_point() {
            let v = self.lo.mul(&o.lo);
            return Interval { lo: v.round(p, Dir::Down), hi: v.round(p, Dir::Up), prec: p };
        }
        if !self.lo.is_negative() && !o.lo.is_negative() {
            return Interval { lo: self.lo.mul_r(&o.lo, p, Dir::Down), hi: self.hi.mul_r(&o.hi, p, Dir::Up), prec: p };
        }
        let prods = [self.lo.mul(&o.lo), self.lo.mul(&o.hi), self.hi.mul(&o.lo), self.hi.mul(&o.hi)];
        let lo = prods.iter().min().unwrap().round(p, Dir::Down);
        let hi = prods.iter().max().unwrap().round(p, Dir::Up);
        Interval { lo, hi, prec: p }
    }
}

impl Div<&Interval> for &Interval {
    type Output = Interval;
    fn div(self, o: &Interval) -> Interval {
        self.checked_div(o).expect("interval division by an interval containing zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Interval> for Interval {
            type Output = Interval;
            fn $m(self, o: Interval) -> Interval {
                (&self).$m(&o)
            }
        }
        impl $tr<&Interval> for Interval {
            type Output = Interval;
            fn $m(self, o: &Interval) -> Interval {
                (&self).$m(o)
            }
        }
        impl $tr<Interval> for &Interval {
            type Output = Interval;
            fn $m(self, o: Interval) -> Interval {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Zero for Interval {
    fn zero() -> Interval {
        Interval::from_i64(0)
    }
    fn is_zero(&self) -> bool {
        self.is_exact_zero()
    }
}

impl One for Interval {
    fn one() -> Interval {
        Interval::from_i64(1)
    }
}
