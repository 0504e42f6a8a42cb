//! Deciding whether a field element is a square.
//!
//! A square root `b` of an algebraic integer `a` is itself an algebraic
//! integer, so `|disc f| * b` has integer power-basis coordinates. Each sign
//! pattern of place-wise square roots pins the coordinates of `b` to
//! intervals; once those are narrower than `1 / |disc f|`, each coordinate
//! admits at most one candidate and the pattern is settled exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::field::FieldElem;
use crate::embed::complex::Cplx;
use crate::embed::interval::Interval;
use crate::embed::{EmbeddingSet, PlaceVec};
use crate::error::{Error, Result};
use crate::Settings;

/// Why an element is not a square.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum NonSquareCertificate {
    /// Certified negative value at a real place.
    NegativeAt { place: usize },
    /// Every sign pattern of place-wise roots was excluded at `bits` of
    /// precision, with coordinate denominators bounded by `denominator`.
    PatternsExhausted { bits: u32, patterns: usize, denominator: String },
}

#[derive(Debug, Clone, PartialEq)]
pub enum SquareRoot {
    Root(FieldElem),
    NotSquare(NonSquareCertificate),
}

/// `Some(b)` with `b^2 = a`, or `None` when `a` is certainly not a square.
pub fn is_square(a: &FieldElem) -> Result<Option<FieldElem>> {
    match is_square_with(a, &Settings::default())? {
        SquareRoot::Root(b) => Ok(Some(b)),
        SquareRoot::NotSquare(_) => Ok(None),
    }
}

/// Integer candidates in `[lo, hi]`, or `None` if the interval is too wide.
pub(crate) fn unique_integer(x: &Interval) -> Option<Option<BigInt>> {
    let lo = x.lo().ceil();
    let hi = x.hi().floor();
    if &hi - &lo >= BigInt::one() {
        return None;
    }
    Some(if lo <= hi { Some(lo) } else { None })
}

enum Attempt {
    Found(FieldElem),
    Excluded,
    Inconclusive,
}

/// Try to recover an element with denominator dividing `den` whose place
/// values lie in `v`.
pub(crate) fn reconstruct(e: &EmbeddingSet, v: &PlaceVec<Interval>, den: &BigInt) -> Option<Option<FieldElem>> {
    let x = e.solve_power_coords(v)?;
    let scale = Interval::from_int(den);
    let mut coords = Vec::with_capacity(x.len());
    for xi in &x {
        match unique_integer(&(xi * &scale)) {
            None => return None,
            Some(None) => return Some(None),
            Some(Some(n)) => coords.push(BigRational::new(n, den.clone())),
        }
    }
    Some(Some(FieldElem::new(e.field(), coords)))
}

fn try_pattern(
    e: &EmbeddingSet,
    roots: &PlaceVec<Interval>,
    pattern: usize,
    den: &BigInt,
    target: &FieldElem,
) -> Attempt {
    let r = roots.real.len();
    let flip = |i: usize| pattern >> i & 1 == 1;
    let real = roots.real.iter().enumerate().map(|(i, x)| if flip(i) { -x.clone() } else { x.clone() }).collect();
    let complex =
        roots.complex.iter().enumerate().map(|(j, z)| if flip(r + j) { -z.clone() } else { z.clone() }).collect();
    match reconstruct(e, &PlaceVec::new(real, complex), den) {
        None => Attempt::Inconclusive,
        Some(None) => Attempt::Excluded,
        Some(Some(b)) => {
            if &(&b * &b) == target {
                Attempt::Found(b)
            } else {
                Attempt::Excluded
            }
        }
    }
}

/// Decide squareness with explicit precision and denominator limits.
pub fn is_square_with(a: &FieldElem, settings: &Settings) -> Result<SquareRoot> {
    let field = a.field();
    if a.is_zero() {
        return Ok(SquareRoot::Root(a.clone()));
    }
    // a = a' / k^2 with a' in Z[theta]
    let k = a.coords().iter().fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
    let k2 = BigRational::from_integer(&k * &k);
    let a_int = a.scale(&k2);
    let den = field.discriminant().abs();
    if den > BigInt::from(settings.max_denominator) {
        return Err(Error::PrecisionExhausted {
            bits: settings.prec,
            context: format!(
                "polynomial discriminant {den} exceeds the denominator bound {}",
                settings.max_denominator
            ),
        });
    }
    let kinv = BigRational::new(BigInt::one(), k);
    let n = field.places();
    let patterns = 1usize << (n - 1);
    let mut prec = settings.prec;
    loop {
        let e = EmbeddingSet::new(field, prec)?;
        let v = e.embed(&a_int);
        let mut ready = true;
        for (i, x) in v.real.iter().enumerate() {
            if x.certainly_negative() {
                return Ok(SquareRoot::NotSquare(NonSquareCertificate::NegativeAt { place: i }));
            }
            if x.contains_zero() {
                ready = false;
            }
        }
        let complex: Option<Vec<Cplx<Interval>>> = v.complex.iter().map(|z| z.sqrt_stable()).collect();
        if ready {
            if let Some(complex) = complex {
                let roots = PlaceVec::new(v.real.iter().map(|x| x.sqrt()).collect(), complex);
                let mut settled = true;
                for pat in 0..patterns {
                    match try_pattern(&e, &roots, pat << 1, &den, &a_int) {
                        Attempt::Found(b) => return Ok(SquareRoot::Root(b.scale(&kinv))),
                        Attempt::Excluded => {}
                        Attempt::Inconclusive => settled = false,
                    }
                }
                if settled {
                    return Ok(SquareRoot::NotSquare(NonSquareCertificate::PatternsExhausted {
                        bits: prec,
                        patterns,
                        denominator: den.to_string(),
                    }));
                }
            }
        }
        if prec >= settings.max_prec {
            return Err(Error::PrecisionExhausted {
                bits: prec,
                context: "deciding whether an element is a square".into(),
            });
        }
        prec = (prec * 2).min(settings.max_prec);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::field::NumberField;
    use crate::RatPoly;
    use num_traits::Zero;

    fn sqrt2() -> NumberField {
        NumberField::new(RatPoly::from_ints(&[-2, 0, 1])).unwrap()
    }

    #[test]
    fn rational_square_in_real_quadratic() {
        let f = sqrt2();
        let a = FieldElem::from_rational(&f, BigRational::new(9.into(), 4.into()));
        let b = is_square(&a).unwrap().unwrap();
        assert_eq!(&b * &b, a);
        assert!(b.as_rational().is_some());
    }

    #[test]
    fn two_is_square_of_generator() {
        let f = sqrt2();
        let b = is_square(&FieldElem::from_i64(&f, 2)).unwrap().unwrap();
        assert_eq!(b.coords()[0], BigRational::zero());
        assert_eq!(b.coords()[1].abs(), BigRational::one());
    }

    #[test]
    fn three_is_not_square() {
        let f = sqrt2();
        assert_eq!(is_square(&FieldElem::from_i64(&f, 3)).unwrap(), None);
        let neg = is_square_with(&FieldElem::from_i64(&f, -3), &Settings::default()).unwrap();
        assert_eq!(neg, SquareRoot::NotSquare(NonSquareCertificate::NegativeAt { place: 0 }));
    }

    #[test]
    fn complex_and_cubic_fields() {
        let gi = NumberField::new(RatPoly::from_ints(&[1, 0, 1])).unwrap();
        // (1 + i)^2 = 2i
        let b = is_square(&FieldElem::from_ints(&gi, &[0, 2])).unwrap().unwrap();
        assert_eq!(&b * &b, FieldElem::from_ints(&gi, &[0, 2]));
        assert_eq!(is_square(&FieldElem::from_i64(&gi, 3)).unwrap(), None);
        assert!(is_square(&FieldElem::from_i64(&gi, -4)).unwrap().is_some());

        let cube = NumberField::new(RatPoly::from_ints(&[-2, 0, 0, 1])).unwrap();
        let t = cube.theta();
        let a = &(&t + &FieldElem::from_i64(&cube, 1)) * &(&t + &FieldElem::from_i64(&cube, 1));
        assert!(is_square(&a).unwrap().is_some());
        assert_eq!(is_square(&t).unwrap(), None);
    }
}
