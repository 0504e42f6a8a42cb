//! Binary floating-point numbers `man * 2^exp` with exact arithmetic and
//! directed rounding to a given number of mantissa bits.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rounding direction for inexact operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    /// Toward negative infinity.
    Down,
    /// Toward positive infinity.
    Up,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Down => Dir::Up,
            Dir::Up => Dir::Down,
        }
    }
}

/// Precision used when both operands are exact and the operation is not.
pub const FALLBACK_PREC: u32 = 128;

/// `man * 2^exp`, normalized so that `man` is odd (or zero with `exp == 0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    man: BigInt,
    exp: i64,
}

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

impl Dyadic {
    pub fn new(man: BigInt, exp: i64) -> Dyadic {
        let mut d = Dyadic { man, exp };
        d.normalize();
        d
    }

    fn normalize(&mut self) {
        if self.man.is_zero() {
            self.exp = 0;
            return;
        }
        if let Some(tz) = self.man.trailing_zeros() {
            if tz > 0 {
                self.man >>= tz;
                self.exp += tz as i64;
            }
        }
    }

    pub fn zero() -> Dyadic {
        Dyadic { man: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Dyadic {
        Dyadic { man: BigInt::one(), exp: 0 }
    }

    pub fn from_int(v: BigInt) -> Dyadic {
        Dyadic::new(v, 0)
    }

    pub fn from_i64(v: i64) -> Dyadic {
        Dyadic::new(BigInt::from(v), 0)
    }

    /// Exact conversion; panics on non-finite input.
    pub fn from_f64(x: f64) -> Dyadic {
        assert!(x.is_finite(), "non-finite value {x}");
        if x == 0.0 {
            return Dyadic::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
        let exponent = ((bits >> 52) & 0x7ff) as i64;
        let mantissa = if exponent == 0 {
            (bits & 0xf_ffff_ffff_ffff) << 1
        } else {
            (bits & 0xf_ffff_ffff_ffff) | 0x10_0000_0000_0000
        };
        Dyadic::new(BigInt::from(mantissa) * sign, exponent - 1075)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.man.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.man.is_positive()
    }

    /// Smallest `k` with `|self| < 2^k` (zero maps to `i64::MIN`).
    pub fn magnitude_bits(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.man.bits() as i64 + self.exp
        }
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { man: -&self.man, exp: self.exp }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic { man: self.man.abs(), exp: self.exp }
    }

    /// Multiplication by `2^k`.
    pub fn shift(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { man: self.man.clone(), exp: self.exp + k }
    }

    pub fn add(&self, o: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(o.exp);
        let a = &self.man << ((self.exp - e) as u64);
        let b = &o.man << ((o.exp - e) as u64);
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, o: &Dyadic) -> Dyadic {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Dyadic) -> Dyadic {
        Dyadic::new(&self.man * &o.man, self.exp + o.exp)
    }

    /// Round to at most `prec` significant bits in direction `dir`.
    /// `prec == 0` means no rounding.
    pub fn round(&self, prec: u32, dir: Dir) -> Dyadic {
        let bits = self.man.bits();
        if prec == 0 || bits <= prec as u64 {
            return self.clone();
        }
        let k = bits - prec as u64;
        // BigInt >> rounds toward negative infinity.
        let mut q = &self.man >> k;
        if dir == Dir::Up && (&q << k) != self.man {
            q += 1;
        }
        Dyadic::new(q, self.exp + k as i64)
    }

    pub fn add_r(&self, o: &Dyadic, prec: u32, dir: Dir) -> Dyadic {
        self.add(o).round(prec, dir)
    }

    pub fn mul_r(&self, o: &Dyadic, prec: u32, dir: Dir) -> Dyadic {
        self.mul(o).round(prec, dir)
    }

    /// Quotient rounded in direction `dir` to `prec` bits.
    pub fn div(&self, o: &Dyadic, prec: u32, dir: Dir) -> Dyadic {
        assert!(!o.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let prec = if prec == 0 { FALLBACK_PREC } else { prec };
        let need = prec as i64 + 2 + o.man.bits() as i64 - self.man.bits() as i64;
        let s = need.max(0);
        let num = &self.man << (s as u64);
        let (mut q, r) = num.div_mod_floor(&o.man);
        if dir == Dir::Up && !r.is_zero() {
            q += 1;
        }
        Dyadic::new(q, self.exp - o.exp - s).round(prec, dir)
    }

    /// Square root of a nonnegative value, rounded in direction `dir`.
    pub fn sqrt(&self, prec: u32, dir: Dir) -> Dyadic {
        assert!(!self.is_negative(), "square root of a negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let prec = if prec == 0 { FALLBACK_PREC } else { prec };
        let mut s = (2 * prec as i64 + 4 - self.man.bits() as i64).max(0);
        if (self.exp - s).rem_euclid(2) != 0 {
            s += 1;
        }
        let n = &self.man << (s as u64);
        let mut r = n.sqrt();
        if dir == Dir::Up && &r * &r != n {
            r += 1;
        }
        Dyadic::new(r, (self.exp - s) / 2).round(prec, dir)
    }

    /// `exp(self)` rounded in direction `dir`.
    pub fn exp_r(&self, prec: u32, dir: Dir) -> Dyadic {
        let prec = if prec == 0 { FALLBACK_PREC } else { prec };
        if self.is_zero() {
            return Dyadic::one();
        }
        if self.is_negative() {
            let e = self.neg().exp_r(prec + 4, dir.flip());
            return Dyadic::one().div(&e, prec, dir);
        }
        // Argument reduction: y = x / 2^k with y <= 1/2.
        let k = (self.magnitude_bits() + 1).max(0);
        let y = self.shift(-k);
        let w = prec + k as u32 + 16;
        let mut sum = Dyadic::one();
        let mut term = Dyadic::one();
        let mut n: i64 = 1;
        loop {
            term = term.mul_r(&y, w, dir).div(&Dyadic::from_i64(n), w, dir);
            if term.is_zero() || term.magnitude_bits() < -(w as i64) - 4 {
                break;
            }
            sum = sum.add_r(&term, w, dir);
            n += 1;
        }
        if dir == Dir::Up {
            // Tail after the last added term is at most twice the next term.
            let tail = term.shift(1);
            sum = sum.add_r(&tail, w, Dir::Up);
            if tail.is_zero() {
                sum = sum.add_r(&Dyadic::new(BigInt::one(), -(w as i64) - 2), w, Dir::Up);
            }
        }
        for _ in 0..k {
            sum = sum.mul_r(&sum, w, dir);
        }
        sum.round(prec, dir)
    }

    pub fn from_rational(q: &BigRational, prec: u32, dir: Dir) -> Dyadic {
        let num = Dyadic::from_int(q.numer().clone());
        if q.denom().is_one() {
            return num.round(prec, dir);
        }
        num.div(&Dyadic::from_int(q.denom().clone()), prec, dir)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.man << (self.exp as u64))
        } else {
            BigRational::new(self.man.clone(), pow2((-self.exp) as u64))
        }
    }

    /// Conversion to `f64` rounded in direction `dir`.
    pub fn to_f64_dir(&self, dir: Dir) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.round(53, dir);
        let m = r.man.to_f64().unwrap_or(f64::NAN);
        let v = scale_f64(m, r.exp);
        if v == 0.0 {
            // underflow
            return match (dir, self.is_positive()) {
                (Dir::Up, true) => f64::from_bits(1),
                (Dir::Down, false) => -f64::from_bits(1),
                _ => 0.0,
            };
        }
        if v.is_infinite() {
            return match (dir, v > 0.0) {
                (Dir::Down, true) => f64::MAX,
                (Dir::Up, false) => f64::MIN,
                _ => v,
            };
        }
        v
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.round(53, Dir::Down);
        scale_f64(r.man.to_f64().unwrap_or(f64::NAN), r.exp)
    }

    /// Largest integer not above the value.
    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.man << (self.exp as u64)
        } else {
            &self.man >> ((-self.exp) as u64)
        }
    }

    pub fn ceil(&self) -> BigInt {
        -(self.neg().floor())
    }
}

fn scale_f64(m: f64, e: i64) -> f64 {
    // powi is exact for powers of two inside the normal range; split to avoid
    // spurious overflow of the intermediate factor.
    let mut v = m;
    let mut e = e;
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
    }
    v * 2f64.powi(e as i32)
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        // Same sign: compare magnitudes quickly before aligning.
        let (ma, mb) = (self.magnitude_bits(), other.magnitude_bits());
        if ma != mb {
            let c = ma.cmp(&mb);
            return if sa > 0 { c } else { c.reverse() };
        }
        self.sub(other).signum().cmp(&0)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_right_floors_negative_values() {
        let v = BigInt::from(-5);
        assert_eq!(&v >> 1u32, BigInt::from(-3));
    }

    #[test]
    fn rounding_directions_bracket_value() {
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        let lo = Dyadic::from_rational(&third, 64, Dir::Down);
        let hi = Dyadic::from_rational(&third, 64, Dir::Up);
        assert!(lo.to_rational() < third);
        assert!(hi.to_rational() > third);
        assert_eq!(hi.sub(&lo).magnitude_bits(), -64);
    }

    #[test]
    fn f64_roundtrip_is_exact() {
        for x in [1.5, -0.1, 3.0e-300, 1.0e300, 7.0] {
            assert_eq!(Dyadic::from_f64(x).to_f64(), x);
        }
    }

    #[test]
    fn sqrt_brackets() {
        let two = Dyadic::from_i64(2);
        let lo = two.sqrt(100, Dir::Down);
        let hi = two.sqrt(100, Dir::Up);
        assert!(lo.mul(&lo) < two);
        assert!(hi.mul(&hi) > two);
        assert_eq!(Dyadic::from_i64(9).sqrt(10, Dir::Up), Dyadic::from_i64(3));
    }

    #[test]
    fn exp_brackets_known_value() {
        let one = Dyadic::one();
        let lo = one.exp_r(80, Dir::Down).to_f64();
        let hi = one.exp_r(80, Dir::Up).to_f64();
        assert!(lo <= std::f64::consts::E && std::f64::consts::E <= hi);
        let lo = Dyadic::from_i64(-10).exp_r(80, Dir::Down);
        let hi = Dyadic::from_i64(-10).exp_r(80, Dir::Up);
        assert!(lo < hi);
        assert!((lo.to_f64() - (-10f64).exp()).abs() < 1e-18);
    }

    #[test]
    fn floor_and_ceil() {
        let x = Dyadic::new(BigInt::from(-7), -1); // -3.5
        assert_eq!(x.floor(), BigInt::from(-4));
        assert_eq!(x.ceil(), BigInt::from(-3));
    }
}
