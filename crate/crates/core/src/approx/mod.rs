//! Approximation quality `max_i |q_i| * max_i |q_i z_i - p_i|` over an order.
//!
//! Approximants are pairs of order elements written in integral-basis
//! coordinates. Enumerating a suborder of the maximal order only removes
//! candidates: empirical minima get weaker, certified lower bounds do not
//! change since they are proved for every pair of algebraic integers.
//!
//! Quality is a function of the pair, not of the ratio `p/q`; multiplying
//! both by a unit changes it, and the enumeration covers every unit
//! multiple within the house bound.

mod certificate;
mod scan;

use num_traits::ToPrimitive;

pub use certificate::{liouville_certificate, LiouvilleCertificate};
pub use scan::{dirichlet_count, scan, Extremum, QualityReport, ScanOptions, ScanRow, ThresholdCount};

use crate::embed::interval::Interval;
use crate::embed::{EmbeddingSet, PlaceVec};
use crate::error::{Error, Result};
use crate::exactnum::field::{FieldElem, NumberField};
use crate::scalar::Real;
use crate::vectors::{Provenance, TargetVector};

/// A pair `(p, q)` of order elements, `q != 0`, as integral-basis coordinates.
/// The derived order compares `q` first, then `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Approximant {
    pub q: Vec<i64>,
    pub p: Vec<i64>,
}

impl Approximant {
    pub fn new(p: Vec<i64>, q: Vec<i64>) -> Result<Approximant> {
        if p.len() != q.len() {
            return Err(Error::InvalidInput("p and q have different lengths".into()));
        }
        if q.iter().all(|&c| c == 0) {
            return Err(Error::InvalidInput("q must be nonzero".into()));
        }
        Ok(Approximant { q, p })
    }

    pub fn from_elems(p: &FieldElem, q: &FieldElem) -> Result<Approximant> {
        let coords = |x: &FieldElem| -> Result<Vec<i64>> {
            x.integral_coords()
                .ok_or(Error::NotIntegral)?
                .iter()
                .map(|c| c.to_i64().ok_or_else(|| Error::InvalidInput("coordinate out of range".into())))
                .collect()
        };
        Approximant::new(coords(p)?, coords(q)?)
    }

    pub fn p_elem(&self, field: &NumberField) -> FieldElem {
        FieldElem::from_basis_i64(field, &self.p)
    }

    pub fn q_elem(&self, field: &NumberField) -> FieldElem {
        FieldElem::from_basis_i64(field, &self.q)
    }
}

/// `max_i |q_i| * max_i |q_i z_i - p_i|`.
pub fn quality_of<R: Real>(z: &PlaceVec<R>, q: &PlaceVec<R>, p: &PlaceVec<R>) -> R {
    q.max_abs() * q.mul(z).sub(p).max_abs()
}

/// `max_i |q_i|^2 * max_i |z_i - p_i / q_i|`, never below [`quality_of`].
pub fn naive_quality_of<R: Real>(z: &PlaceVec<R>, q: &PlaceVec<R>, p: &PlaceVec<R>) -> R {
    let h = q.max_abs();
    let d = q.mul(z).sub(p).abs_values();
    let qa = q.abs_values();
    let worst = d.iter().zip(&qa).map(|(x, y)| x.clone() / y.clone()).reduce(|a, b| a.max(&b)).unwrap_or_else(R::zero);
    h.clone() * h * worst
}

/// Certified quality of an approximant.
pub fn quality(z: &TargetVector, a: &Approximant, e: &EmbeddingSet) -> Interval {
    let basis = e.basis_values();
    if Workspace::new(z, e).is_exact_hit(&a.q, &a.p) {
        return Interval::from_i64(0);
    }
    quality_of(&z.components, &PlaceVec::combine(basis, &a.q), &PlaceVec::combine(basis, &a.p))
}

/// Shared data for evaluating many pairs against one target.
pub(crate) struct Workspace<'a> {
    pub e: &'a EmbeddingSet,
    pub basis_f: Vec<PlaceVec<f64>>,
    pub z: PlaceVec<Interval>,
    pub z_f: PlaceVec<f64>,
    /// The target as a field element, when it is one.
    pub exact: Option<FieldElem>,
}

impl<'a> Workspace<'a> {
    pub fn new(z: &TargetVector, e: &'a EmbeddingSet) -> Workspace<'a> {
        Workspace {
            e,
            basis_f: e.basis_values_as::<f64>(),
            z: z.components.clone(),
            z_f: z.components.map(|x| x.mid_f64()),
            exact: match &z.provenance {
                Provenance::FieldPoint(a) => Some(a.clone()),
                _ => None,
            },
        }
    }

    /// Whether `q z = p` holds exactly.
    pub fn is_exact_hit(&self, q: &[i64], p: &[i64]) -> bool {
        let Some(a) = &self.exact else { return false };
        let f = a.field();
        &FieldElem::from_basis_i64(f, q) * a == FieldElem::from_basis_i64(f, p)
    }

    pub fn dim(&self) -> usize {
        self.basis_f.len()
    }

    pub fn point_f(&self, c: &[i64]) -> PlaceVec<f64> {
        PlaceVec::combine(&self.basis_f, c)
    }

    pub fn point(&self, c: &[i64]) -> PlaceVec<Interval> {
        PlaceVec::combine(self.e.basis_values(), c)
    }

    /// Real basis coordinates of `q z`.
    pub fn target_coords(&self, q: &PlaceVec<f64>) -> Vec<f64> {
        self.e.frame().coords_of(&q.mul(&self.z_f).real_coords())
    }

    /// The rounded coordinates of `q z`.
    pub fn rounded_p(&self, q: &PlaceVec<f64>) -> Vec<i64> {
        self.target_coords(q).iter().map(|x| x.round() as i64).collect()
    }
}

/// All offsets in `{-1, 0, 1}^d`.
pub(crate) fn unit_offsets(d: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out.into_iter().flat_map(|v| (-1..=1).map(move |k| [v.clone(), vec![k]].concat())).collect();
    }
    out
}

/// Whether the first nonzero coordinate is positive.
pub(crate) fn is_normalized(c: &[i64]) -> bool {
    c.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

/// Heuristic closest-vector search: round the coordinates of `q z` and try
/// every offset in `{-1, 0, 1}^d`. Returns the best `p` by the double-precision
/// distance `max_i |q_i z_i - p_i|`.
pub fn best_p(z: &TargetVector, q: &[i64], e: &EmbeddingSet) -> Vec<i64> {
    let ws = Workspace::new(z, e);
    best_p_in(&ws, q)
}

pub(crate) fn best_p_in(ws: &Workspace, q: &[i64]) -> Vec<i64> {
    let qf = ws.point_f(q);
    let qz = qf.mul(&ws.z_f);
    let centre = ws.rounded_p(&qf);
    let mut best: Option<(f64, Vec<i64>)> = None;
    for off in unit_offsets(ws.dim()) {
        let p: Vec<i64> = centre.iter().zip(&off).map(|(a, b)| a + b).collect();
        let dist = qz.sub(&ws.point_f(&p)).max_abs();
        if best.as_ref().is_none_or(|(d, _)| dist < *d) {
            best = Some((dist, p));
        }
    }
    best.expect("at least one offset").1
}

/// Field-element form of [`best_p`].
pub fn best_p_elem(z: &TargetVector, q: &FieldElem, e: &EmbeddingSet) -> Result<FieldElem> {
    let a = Approximant::from_elems(&FieldElem::zero(q.field()), q)?;
    Ok(FieldElem::from_basis_i64(q.field(), &best_p(z, &a.q, e)))
}

/// Every nonzero order element with house at most `bound`, one of each pair
/// `+-q`, in lexicographic coordinate order. Elements whose house cannot be
/// separated from the bound at the working precision are kept.
pub fn enumerate_q(e: &EmbeddingSet, bound: f64) -> Vec<Vec<i64>> {
    if bound < 1.0 {
        return Vec::new();
    }
    let bx = e.frame().coordinate_box(bound);
    let d = bx.len();
    let basis_f = e.basis_values_as::<f64>();
    let t = Interval::from_f64(bound);
    let mut out = Vec::new();
    let mut c: Vec<i64> = bx.iter().map(|&b| -b).collect();
    loop {
        if is_normalized(&c) {
            let h = PlaceVec::combine(&basis_f, &c).max_abs();
            if h <= bound * (1.0 + 1e-9) {
                let hi = PlaceVec::combine(e.basis_values(), &c).max_abs();
                if !t.certainly_lt(&hi) {
                    out.push(c.clone());
                }
            }
        }
        // odometer, last coordinate fastest
        let mut k = d;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            c[k] += 1;
            if c[k] <= bx[k] {
                break;
            }
            c[k] = -bx[k];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::QuadForm;
    use crate::vectors::quad_zeros;
    use crate::{isolate_roots, RatPoly};

    fn field(c: &[i64]) -> NumberField {
        NumberField::new(RatPoly::from_ints(c)).unwrap()
    }

    fn golden() -> (EmbeddingSet, TargetVector) {
        let f = field(&[0, 1]);
        let e = isolate_roots(&f, 128).unwrap();
        let z = quad_zeros(&QuadForm::from_ints(&f, &[1], &[-1], &[-1]), &e, &[1]).unwrap();
        (e, z)
    }

    #[test]
    fn golden_quality() {
        let (e, z) = golden();
        let q = quality(&z, &Approximant::new(vec![2], vec![1]).unwrap(), &e);
        assert!((q.mid_f64() - 0.381966011250105).abs() < 1e-12);
        let q = quality(&z, &Approximant::new(vec![89], vec![55]).unwrap(), &e);
        assert!((q.mid_f64() - 0.4472).abs() < 1e-4);
        let q = quality(&z, &Approximant::new(vec![0], vec![1]).unwrap(), &e);
        assert!((q.mid_f64() - 1.618033988749895).abs() < 1e-12);
        assert_eq!(best_p(&z, &[5], &e), vec![8]);
    }

    #[test]
    fn enumeration_counts() {
        let q = field(&[0, 1]);
        let e = isolate_roots(&q, 64).unwrap();
        assert_eq!(enumerate_q(&e, 10.0), (1..=10).map(|k| vec![k]).collect::<Vec<_>>());

        let gi = field(&[1, 0, 1]);
        let e = isolate_roots(&gi, 64).unwrap();
        let qs = enumerate_q(&e, 2.0);
        // 1, 2, i, 2i, 1+i, 1-i
        assert_eq!(qs.len(), 6);

        let r2 = field(&[-2, 0, 1]);
        let e = isolate_roots(&r2, 64).unwrap();
        let qs = enumerate_q(&e, 3.0);
        assert!(qs.contains(&vec![1, 1]));
        let brute = (-3i64..=3)
            .flat_map(|a| (-3i64..=3).map(move |b| vec![a, b]))
            .filter(|c| is_normalized(c))
            .filter(|c| {
                let s = 2f64.sqrt();
                (c[0] as f64 + c[1] as f64 * s).abs().max((c[0] as f64 - c[1] as f64 * s).abs()) <= 3.0
            })
            .count();
        assert_eq!(qs.len(), brute);
    }

    #[test]
    fn best_p_over_real_quadratic() {
        let r2 = field(&[-2, 0, 1]);
        let e = isolate_roots(&r2, 128).unwrap();
        let z = quad_zeros(&QuadForm::from_ints(&r2, &[1], &[0], &[-3]), &e, &[1, 1]).unwrap();
        assert_eq!(best_p(&z, &[1, 0], &e), vec![2, 0]);
    }

    #[test]
    fn naive_dominates() {
        let (e, z) = golden();
        for (p, q) in [(2, 1), (3, 2), (13, 8), (7, 3)] {
            let b = e.basis_values();
            let (pv, qv) = (PlaceVec::combine(b, &[p]), PlaceVec::combine(b, &[q]));
            let lin = quality_of(&z.components, &qv, &pv);
            let naive = naive_quality_of(&z.components, &qv, &pv);
            assert!(!naive.certainly_lt(&lin));
        }
    }
}
