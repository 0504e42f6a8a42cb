//! Factor search for small-degree defining polynomials.
//!
//! Degrees up to 4 are checked exactly: linear factors via certified real
//! root enclosures, quadratic factors via pairings of approximate roots
//! confirmed by exact division. Higher degrees are accepted; a zero divisor
//! met later in [`super::field::FieldElem::inv`] reports the reducibility.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::embed::roots::{approximate_roots, real_root_enclosures};
use crate::error::{Error, Result};
use crate::RatPoly;

fn int(v: &BigInt) -> BigRational {
    BigRational::from_integer(v.clone())
}

/// An integer root of the monic integral `f`, if any.
pub fn integer_root(f: &RatPoly) -> Option<BigInt> {
    if f.coeff(0).is_zero() {
        return Some(BigInt::zero());
    }
    for r in real_root_enclosures(f, 4) {
        let lo = r.lo().floor();
        let hi = r.hi().ceil();
        let mut n = lo;
        while n <= hi {
            if f.sign_at(&int(&n)) == 0 {
                return Some(n);
            }
            n += 1;
        }
    }
    None
}

/// A monic integral quadratic factor `x^2 + b x + c` of `f`, if any.
pub fn quadratic_factor(f: &RatPoly) -> Option<RatPoly> {
    let roots = approximate_roots(f);
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let s = roots[i] + roots[j];
            let p = roots[i] * roots[j];
            if s.im.abs() > 1e-3 || p.im.abs() > 1e-3 {
                continue;
            }
            let b = (-s.re).round();
            let c = p.re.round();
            if !b.is_finite() || !c.is_finite() {
                continue;
            }
            let g = RatPoly::from_ints(&[c.to_i64()?, b.to_i64()?, 1]);
            if f.rem(&g).is_zero() {
                return Some(g);
            }
        }
    }
    None
}

/// Reject `f` when a nontrivial factorization is found (exact for degree <= 4).
pub fn check_irreducible(f: &RatPoly) -> Result<()> {
    let d = f.degree().unwrap_or(0);
    if d <= 1 {
        return Ok(());
    }
    if d <= 4 {
        if let Some(n) = integer_root(f) {
            return Err(Error::ReducibleDetected(format!("x - {n} divides {f}")));
        }
    }
    if d == 4 {
        if let Some(g) = quadratic_factor(f) {
            return Err(Error::ReducibleDetected(format!("{g} divides {f}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detects_linear_factor() {
        assert!(check_irreducible(&RatPoly::from_ints(&[-6, 11, -6, 1])).is_err());
        assert!(check_irreducible(&RatPoly::from_ints(&[0, -1, 0, 1])).is_err());
        assert!(check_irreducible(&RatPoly::from_ints(&[-2, 0, 0, 1])).is_ok());
    }

    #[test]
    fn detects_quadratic_factor() {
        // (x^2 + 1)(x^2 - 2)
        assert!(check_irreducible(&RatPoly::from_ints(&[-2, 0, -1, 0, 1])).is_err());
        // (x^2 - 2)(x^2 - 3)
        assert!(check_irreducible(&RatPoly::from_ints(&[6, 0, -5, 0, 1])).is_err());
        assert!(check_irreducible(&RatPoly::from_ints(&[1, -1, 1, -1, 1])).is_ok());
        assert!(check_irreducible(&RatPoly::from_ints(&[1, 0, -10, 0, 1])).is_ok());
    }
}
