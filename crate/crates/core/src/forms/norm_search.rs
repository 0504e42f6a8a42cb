//! Bounded search for relative-norm preimages `x tau(x) = n`.
//!
//! Candidates are `x = y / c` with `y` in the order and `1 <= c <= height`.
//! For each `c` the search over `y` is exhaustive: `|sigma_i(y)|^2 = c^2 sigma_i(n)`
//! pins `y` to a bounded box of the Minkowski lattice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::embed::EmbeddingSet;
use crate::exactnum::cm::CMStructure;
use crate::exactnum::field::FieldElem;

#[derive(Debug, Clone, PartialEq)]
pub enum SearchOutcome {
    Found(FieldElem),
    /// No preimage with denominator up to the height.
    Exhausted,
    /// The candidate budget ran out first.
    Truncated {
        reached: u32,
    },
}

/// Default cap on lattice candidates examined by the general search.
pub const DEFAULT_BUDGET: u64 = 20_000_000;

pub fn find_norm_preimage(
    n: &FieldElem,
    cm: &CMStructure,
    e: &EmbeddingSet,
    height: u32,
    budget: u64,
) -> SearchOutcome {
    let field = cm.field();
    if n.is_zero() {
        return SearchOutcome::Found(FieldElem::zero(field));
    }
    if field.degree() == 2 {
        if let Some(q) = n.as_rational() {
            return quadratic_search(&q, cm, height);
        }
    }
    general_search(n, cm, e, height, budget)
}

fn quadratic_search(n: &BigRational, cm: &CMStructure, height: u32) -> SearchOutcome {
    let field = cm.field();
    if !n.is_positive() {
        return SearchOutcome::Exhausted;
    }
    // N(u + v theta) = u^2 - b u v + c0 v^2 for theta a root of x^2 + b x + c0
    let b = field.poly().coeff(1).to_integer();
    let delta = cm.quadratic_radicand().expect("quadratic field");
    let four = BigInt::from(4);
    for c in 1..=height {
        let m = n * BigRational::from_integer(BigInt::from(c) * BigInt::from(c));
        if !m.is_integer() {
            continue;
        }
        let m = m.to_integer();
        let vmax = (&four * &m / -&delta).sqrt();
        let mut v = BigInt::zero();
        while v <= vmax {
            let disc = &delta * &v * &v + &four * &m;
            if !disc.is_negative() {
                let s = disc.sqrt();
                if &s * &s == disc {
                    for s in [s.clone(), -s] {
                        let num = &b * &v + s;
                        if num.is_even() {
                            let u = num / 2;
                            let y = FieldElem::new(
                                field,
                                vec![BigRational::from_integer(u), BigRational::from_integer(v.clone())],
                            );
                            let x = y.scale(&BigRational::new(BigInt::from(1), BigInt::from(c)));
                            if cm.relative_norm(&x) == FieldElem::from_rational(field, n.clone()) {
                                return SearchOutcome::Found(x);
                            }
                        }
                    }
                }
            }
            v += 1;
        }
    }
    SearchOutcome::Exhausted
}

fn general_search(n: &FieldElem, cm: &CMStructure, e: &EmbeddingSet, height: u32, budget: u64) -> SearchOutcome {
    let field = cm.field();
    let frame = e.frame();
    let nv: Vec<f64> = e.embed(n).complex.iter().map(|z| z.re.mid_f64()).collect();
    if nv.iter().any(|&x| x <= 0.0) {
        return SearchOutcome::Exhausted;
    }
    let d = field.degree();
    let mut spent = 0u64;
    for c in 1..=height {
        let c2 = (c as f64) * (c as f64);
        let radius = nv.iter().fold(0.0f64, |m, &x| m.max((c2 * x).sqrt()));
        let bx = frame.coordinate_box(radius);
        let count = bx.iter().fold(1u64, |acc, &b| acc.saturating_mul(2 * b as u64 + 1));
        if spent.saturating_add(count) > budget {
            return SearchOutcome::Truncated { reached: c - 1 };
        }
        spent += count;
        let target = n.scale(&BigRational::from_integer(BigInt::from(c) * BigInt::from(c)));
        let mut coords: Vec<i64> = bx.iter().map(|&b| -b).collect();
        loop {
            let pt = frame.point_of(&coords.iter().map(|&x| x as f64).collect::<Vec<_>>());
            let ok = pt.chunks(2).zip(&nv).all(|(z, &ni)| {
                let want = c2 * ni;
                (z[0] * z[0] + z[1] * z[1] - want).abs() <= 1e-6 * (1.0 + want)
            });
            if ok {
                let big: Vec<BigInt> = coords.iter().map(|&x| BigInt::from(x)).collect();
                let y = FieldElem::from_basis_coords(field, &big);
                if cm.relative_norm(&y) == target {
                    return SearchOutcome::Found(y.scale(&BigRational::new(BigInt::from(1), BigInt::from(c))));
                }
            }
            // odometer
            let mut k = 0;
            while k < d {
                coords[k] += 1;
                if coords[k] <= bx[k] {
                    break;
                }
                coords[k] = -bx[k];
                k += 1;
            }
            if k == d {
                break;
            }
        }
    }
    SearchOutcome::Exhausted
}
