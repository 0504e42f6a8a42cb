//! Hilbert symbols over `Q` and the norm test for imaginary quadratic fields.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A place of `Q`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Place {
    Infinite,
    Prime(BigInt),
}

impl std::fmt::Display for Place {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Place::Infinite => f.write_str("inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// `(a / p)` for an odd prime `p`, by Euler's criterion.
pub fn legendre(a: &BigInt, p: &BigInt) -> i32 {
    let r = a.mod_floor(p);
    if r.is_zero() {
        return 0;
    }
    let e = (p - 1u32) >> 1;
    if r.modpow(&e, p).is_one() {
        1
    } else {
        -1
    }
}

/// `a = p^k u` with `p` not dividing `u`.
fn split(a: &BigInt, p: &BigInt) -> (u32, BigInt) {
    let mut u = a.clone();
    let mut k = 0;
    while (&u % p).is_zero() {
        u /= p;
        k += 1;
    }
    (k, u)
}

/// Hilbert symbol `(a, b)_v` for nonzero integers.
pub fn hilbert_symbol(a: &BigInt, b: &BigInt, v: &Place) -> i32 {
    assert!(!a.is_zero() && !b.is_zero(), "Hilbert symbol of zero");
    match v {
        Place::Infinite => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(p) if p == &BigInt::from(2) => {
            let (alpha, u) = split(a, p);
            let (beta, w) = split(b, p);
            let eps = |x: &BigInt| -> u32 { (((x - 1u32) / 2u32).mod_floor(&BigInt::from(2))).to_u32().unwrap() };
            let omega = |x: &BigInt| -> u32 { (((x * x - 1u32) / 8u32).mod_floor(&BigInt::from(2))).to_u32().unwrap() };
            let e = eps(&u) * eps(&w) + alpha * omega(&w) + beta * omega(&u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (alpha, u) = split(a, p);
            let (beta, w) = split(b, p);
            let eps_p = ((p - 1u32) / 2u32).is_odd();
            let mut s = if eps_p && (alpha * beta) % 2 == 1 { -1 } else { 1 };
            if beta % 2 == 1 {
                s *= legendre(&u, p);
            }
            if alpha % 2 == 1 {
                s *= legendre(&w, p);
            }
            s
        }
    }
}

fn is_probable_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    };
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // deterministic for all 64-bit n
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const TRIAL_LIMIT: u64 = 1 << 20;

/// Prime divisors of `n`, or `None` if a cofactor could not be factored.
pub fn prime_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut m = n.abs();
    let mut out = Vec::new();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        let bp = BigInt::from(p);
        if &bp * &bp > m {
            break;
        }
        if (&m % &bp).is_zero() {
            out.push(bp.clone());
            while (&m % &bp).is_zero() {
                m /= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > BigInt::one() {
        let small = BigInt::from(TRIAL_LIMIT);
        if &small * &small >= m || m.to_u64().is_some_and(is_probable_prime) {
            out.push(m);
        } else {
            return None;
        }
    }
    Some(out)
}

/// Outcome of the local norm test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormTest {
    /// All local symbols are `+1`: a global norm by the Hasse norm theorem.
    Norm,
    /// Places where the symbol is `-1`.
    Obstructed(Vec<Place>),
    /// A cofactor could not be factored.
    Unknown(String),
}

/// Whether the nonzero rational `n` is a norm from `Q(sqrt(delta))`.
pub fn norm_test(n: &BigRational, delta: &BigInt) -> NormTest {
    assert!(!n.is_zero());
    // n and n * den^2 have the same norm class
    let a = n.numer() * n.denom();
    let mut places = vec![Place::Infinite, Place::Prime(BigInt::from(2))];
    for x in [&a, delta] {
        match prime_divisors(x) {
            Some(ps) => {
                for p in ps {
                    if p != BigInt::from(2) {
                        places.push(Place::Prime(p));
                    }
                }
            }
            None => return NormTest::Unknown(format!("could not factor {x}")),
        }
    }
    places.sort();
    places.dedup();
    let bad: Vec<Place> = places.into_iter().filter(|v| hilbert_symbol(&a, delta, v) == -1).collect();
    if bad.is_empty() {
        NormTest::Norm
    } else {
        NormTest::Obstructed(bad)
    }
}

pub fn sign_of(x: &BigInt) -> i32 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
