use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Real;

/// Complex number over a [`Real`] scalar (a box when the scalar is an interval).
#[derive(Debug, Clone, PartialEq)]
pub struct Cplx<R> {
    pub re: R,
    pub im: R,
}

impl<R: Real> Cplx<R> {
    pub fn new(re: R, im: R) -> Self {
        Cplx { re, im }
    }

    pub fn real(re: R) -> Self {
        Cplx { re, im: R::zero() }
    }

    pub fn zero() -> Self {
        Cplx::real(R::zero())
    }

    pub fn one() -> Self {
        Cplx::real(R::one())
    }

    pub fn i() -> Self {
        Cplx::new(R::zero(), R::one())
    }

    pub fn conj(&self) -> Self {
        Cplx::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> R {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    pub fn abs(&self) -> R {
        if self.im.is_exact_zero() {
            self.re.abs()
        } else if self.re.is_exact_zero() {
            self.im.abs()
        } else {
            self.norm_sqr().sqrt()
        }
    }

    pub fn scale(&self, k: &R) -> Self {
        Cplx::new(self.re.clone() * k.clone(), self.im.clone() * k.clone())
    }

    /// `None` when the divisor may be zero.
    pub fn checked_div(&self, o: &Self) -> Option<Self> {
        if o.im.is_exact_zero() {
            if o.re.contains_zero() {
                return None;
            }
            return Some(Cplx::new(self.re.clone() / o.re.clone(), self.im.clone() / o.re.clone()));
        }
        let d = o.norm_sqr();
        if d.contains_zero() {
            return None;
        }
        let n = self.clone() * o.conj();
        Some(Cplx::new(n.re / d.clone(), n.im / d))
    }

    /// One of the two square roots. For interval scalars the result encloses
    /// a single root even when the argument straddles the branch cut.
    pub fn sqrt(&self) -> Self {
        if self.im.is_exact_zero() {
            if !self.re.certainly_lt(&R::zero()) && !self.re.contains_zero() {
                return Cplx::real(self.re.sqrt());
            }
            if self.re.certainly_lt(&R::zero()) {
                return Cplx::new(R::zero(), (-self.re.clone()).sqrt());
            }
        }
        let two = R::from_i64(2);
        let m = self.abs();
        let re = ((m.clone() + self.re.clone()) / two.clone()).sqrt();
        let im = ((m - self.re.clone()) / two).sqrt();
        let zero = R::zero();
        if zero.certainly_le(&self.im) {
            Cplx::new(re, im)
        } else if self.im.certainly_le(&zero) {
            Cplx::new(re, -im)
        } else if zero.certainly_lt(&self.re) {
            // near the positive axis: imaginary part straddles zero
            Cplx::new(re, (-im.clone()).hull(&im))
        } else {
            // near the negative axis: pick the root with positive imaginary part
            Cplx::new((-re.clone()).hull(&re), im)
        }
    }

    /// A square root that varies continuously over the whole enclosure of a
    /// nonzero argument, with no branch cut inside it. `None` if the argument
    /// may be zero.
    pub fn sqrt_stable(&self) -> Option<Self> {
        if self.im.is_exact_zero() && !self.re.contains_zero() {
            return Some(self.sqrt());
        }
        let two = R::from_i64(2);
        let m = self.abs();
        if self.re.mid() >= 0.0 {
            let x = ((m + self.re.clone()) / two.clone()).sqrt();
            if x.contains_zero() {
                return None;
            }
            let y = self.im.clone() / (two * x.clone());
            Some(Cplx::new(x, y))
        } else {
            let y = ((m - self.re.clone()) / two.clone()).sqrt();
            if y.contains_zero() {
                return None;
            }
            let x = self.im.clone() / (two * y.clone());
            Some(Cplx::new(x, y))
        }
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut acc = Cplx::one();
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }
}

impl<R: Real> Add for Cplx<R> {
    type Output = Cplx<R>;
    fn add(self, o: Self) -> Self {
        Cplx::new(self.re + o.re, self.im + o.im)
    }
}

impl<R: Real> Sub for Cplx<R> {
    type Output = Cplx<R>;
    fn sub(self, o: Self) -> Self {
        Cplx::new(self.re - o.re, self.im - o.im)
    }
}

impl<R: Real> Mul for Cplx<R> {
    type Output = Cplx<R>;
    fn mul(self, o: Self) -> Self {
        if self.im.is_exact_zero() && o.im.is_exact_zero() {
            return Cplx::real(self.re * o.re);
        }
        let re = self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone();
        let im = self.re * o.im + self.im * o.re;
        Cplx::new(re, im)
    }
}

impl<R: Real> Neg for Cplx<R> {
    type Output = Cplx<R>;
    fn neg(self) -> Self {
        Cplx::new(-self.re, -self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::interval::Interval;

    #[test]
    fn sqrt_of_negative_real_is_imaginary() {
        let z: Cplx<f64> = Cplx::real(-4.0);
        let r = z.sqrt();
        assert_eq!(r.re, 0.0);
        assert_eq!(r.im, 2.0);
    }

    #[test]
    fn interval_sqrt_squares_back() {
        let z = Cplx::new(Interval::from_i64(3).with_prec(128), Interval::from_i64(-4));
        let r = z.sqrt();
        let sq = r.clone() * r;
        assert!(sq.re.contains(&crate::embed::dyadic::Dyadic::from_i64(3)));
        assert!(sq.im.contains(&crate::embed::dyadic::Dyadic::from_i64(-4)));
    }

    #[test]
    fn division_roundtrip_f64() {
        let a = Cplx::new(1.0f64, 2.0);
        let b = Cplx::new(-0.5f64, 3.0);
        let q = a.checked_div(&b).unwrap() * b;
        assert!((q.re - 1.0).abs() < 1e-12 && (q.im - 2.0).abs() < 1e-12);
    }
}
