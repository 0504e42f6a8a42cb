//! Sturm sequences: exact real-root counting and isolation for squarefree
//! rational polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use crate::RatPoly;

pub struct SturmSequence {
    seq: Vec<RatPoly>,
}

fn sign(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut v = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

impl SturmSequence {
    pub fn new(f: &RatPoly) -> Self {
        let mut seq = vec![f.clone(), f.derivative()];
        while let Some(last) = seq.last() {
            if last.is_zero() || last.degree() == Some(0) {
                break;
            }
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(-r);
        }
        seq.retain(|p| !p.is_zero());
        SturmSequence { seq }
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        variations(self.seq.iter().map(|p| sign(&p.eval(x))))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        variations(self.seq.iter().map(|p| {
            let s = sign(&p.leading());
            let odd = p.degree().unwrap_or(0) % 2 == 1;
            if !positive && odd {
                -s
            } else {
                s
            }
        }))
    }

    /// Number of distinct real roots.
    pub fn count_real_roots(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }

    /// Number of distinct roots in the half-open interval `(a, b]`.
    pub fn count_in(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a) - self.variations_at(b)
    }
}

/// Bound `B` (a power of two) with every root strictly inside `(-B, B)`.
pub fn root_bound(f: &RatPoly) -> BigRational {
    let lead = f.leading().abs();
    let max = f
        .coeffs()
        .iter()
        .take(f.coeffs().len().saturating_sub(1))
        .map(|c| c.abs() / &lead)
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
    let cauchy = max + BigRational::one();
    let mut b = BigRational::one();
    while b <= cauchy {
        b = b * BigRational::from_integer(BigInt::from(2));
    }
    b
}

/// A real root known either exactly or by an isolating interval `(lo, hi)`
/// with `f(lo)` and `f(hi)` of opposite nonzero signs.
#[derive(Debug, Clone, PartialEq)]
pub enum RealRoot {
    Exact(BigRational),
    Bracket(BigRational, BigRational),
}

/// Isolate all real roots of the squarefree polynomial `f`, ascending.
pub fn isolate_real_roots(f: &RatPoly) -> Vec<RealRoot> {
    let sturm = SturmSequence::new(f);
    let b = root_bound(f);
    let two = BigRational::from_integer(BigInt::from(2));
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = sturm.count_in(&lo, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(bracket_single(f, &sturm, lo, hi));
            continue;
        }
        let mid = (&lo + &hi) / &two;
        // push right half first so the left half is processed first
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    out
}

/// Turn a one-root Sturm interval `(lo, hi]` into a sign-change bracket.
fn bracket_single(f: &RatPoly, sturm: &SturmSequence, mut lo: BigRational, mut hi: BigRational) -> RealRoot {
    let two = BigRational::from_integer(BigInt::from(2));
    loop {
        if f.sign_at(&hi) == 0 {
            return RealRoot::Exact(hi);
        }
        if f.sign_at(&lo) != 0 {
            return RealRoot::Bracket(lo, hi);
        }
        // lo is a neighbouring root: move it inside
        let mid = (&lo + &hi) / &two;
        if sturm.count_in(&lo, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

/// Integer coefficients of an integral polynomial.
pub fn integer_coeffs(f: &RatPoly) -> Vec<BigInt> {
    f.coeffs().iter().map(|c| c.to_integer()).collect()
}

/// Sign of `f(m / 2^k)` for integer-coefficient `f`.
pub fn sign_at_dyadic(coeffs: &[BigInt], m: &BigInt, k: u64) -> i32 {
    // 2^{k d} f(m/2^k) = sum c_j m^j 2^{k(d-j)}
    let d = coeffs.len().saturating_sub(1);
    let mut acc = BigInt::zero();
    let mut mp = BigInt::one();
    for (j, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            acc += c * &mp << (k * (d - j) as u64);
        }
        mp *= m;
    }
    if acc.is_zero() {
        0
    } else if acc.is_positive() {
        1
    } else {
        -1
    }
}

impl Poly<BigRational> {
    pub fn sturm(&self) -> SturmSequence {
        SturmSequence::new(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_signatures() {
        assert_eq!(RatPoly::from_ints(&[-5, 0, 1]).sturm().count_real_roots(), 2);
        assert_eq!(RatPoly::from_ints(&[1, 0, 1]).sturm().count_real_roots(), 0);
        assert_eq!(RatPoly::from_ints(&[1, -1, 1, -1, 1]).sturm().count_real_roots(), 0);
        assert_eq!(RatPoly::from_ints(&[-2, 0, 0, 1]).sturm().count_real_roots(), 1);
        assert_eq!(RatPoly::from_ints(&[0, -1, 0, 1]).sturm().count_real_roots(), 3);
    }

    #[test]
    fn isolation_orders_roots() {
        let roots = isolate_real_roots(&RatPoly::from_ints(&[0, -1, 0, 1]));
        assert_eq!(roots.len(), 3);
        assert_eq!(roots[1], RealRoot::Exact(BigRational::zero()));
        match (&roots[0], &roots[2]) {
            (RealRoot::Bracket(a, _), RealRoot::Bracket(_, b)) => {
                assert!(a.is_negative() && b.is_positive())
            }
            (RealRoot::Exact(a), RealRoot::Exact(b)) => assert!(*a < *b),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn dyadic_sign() {
        let c = integer_coeffs(&RatPoly::from_ints(&[-2, 0, 1]));
        // 1.5^2 - 2 > 0, 1.25^2 - 2 < 0
        assert_eq!(sign_at_dyadic(&c, &BigInt::from(3), 1), 1);
        assert_eq!(sign_at_dyadic(&c, &BigInt::from(5), 2), -1);
    }
}
