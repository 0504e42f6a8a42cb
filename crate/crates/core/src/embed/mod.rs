//! Certified embeddings `F -> R^r x C^s`.
//!
//! Places are ordered as follows: real roots ascending, then one root from
//! each complex-conjugate pair, namely the root with positive imaginary part,
//! sorted by real part and then imaginary part.

pub mod complex;
pub mod decimal;
pub mod dyadic;
pub mod frame;
pub mod interval;
pub mod roots;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exactnum::field::{FieldElem, NumberField};
use crate::exactnum::linalg::Matrix;
use crate::scalar::Real;
use complex::Cplx;
use frame::MinkowskiFrame;
use interval::Interval;

/// Default precision cap in bits.
pub const MAX_PREC: u32 = 4096;

/// Values at the `r` real and `s` complex places.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaceVec<R> {
    pub real: Vec<R>,
    pub complex: Vec<Cplx<R>>,
}

impl<R: Real> PlaceVec<R> {
    pub fn new(real: Vec<R>, complex: Vec<Cplx<R>>) -> Self {
        PlaceVec { real, complex }
    }

    /// Number of places `r + s`.
    pub fn len(&self) -> usize {
        self.real.len() + self.complex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The same value at every place.
    pub fn splat(r: usize, s: usize, v: &R) -> Self {
        PlaceVec { real: vec![v.clone(); r], complex: vec![Cplx::real(v.clone()); s] }
    }

    pub fn abs_values(&self) -> Vec<R> {
        self.real.iter().map(|x| x.abs()).chain(self.complex.iter().map(|z| z.abs())).collect()
    }

    /// `max_i |x_i|`.
    pub fn max_abs(&self) -> R {
        let mut it = self.abs_values().into_iter();
        let first = it.next().unwrap_or_else(R::zero);
        it.fold(first, |m, x| m.max(&x))
    }

    /// Coordinates in `R^d`: real places, then `(Re, Im)` per complex place.
    pub fn real_coords(&self) -> Vec<R> {
        let mut v = self.real.clone();
        for z in &self.complex {
            v.push(z.re.clone());
            v.push(z.im.clone());
        }
        v
    }

    pub fn from_real_coords(r: usize, v: &[R]) -> Self {
        let real = v[..r].to_vec();
        let complex = v[r..].chunks(2).map(|c| Cplx::new(c[0].clone(), c[1].clone())).collect();
        PlaceVec { real, complex }
    }

    pub fn zip_with(&self, o: &Self, f: impl Fn(&Cplx<R>, &Cplx<R>) -> Cplx<R>) -> Self {
        let real =
            self.real.iter().zip(&o.real).map(|(a, b)| f(&Cplx::real(a.clone()), &Cplx::real(b.clone())).re).collect();
        let complex = self.complex.iter().zip(&o.complex).map(|(a, b)| f(a, b)).collect();
        PlaceVec { real, complex }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip_with(o, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip_with(o, |a, b| a.clone() - b.clone())
    }

    /// Componentwise product.
    pub fn mul(&self, o: &Self) -> Self {
        let real = self.real.iter().zip(&o.real).map(|(a, b)| a.clone() * b.clone()).collect();
        let complex = self.complex.iter().zip(&o.complex).map(|(a, b)| a.clone() * b.clone()).collect();
        PlaceVec { real, complex }
    }

    pub fn map<S: Real>(&self, f: impl Fn(&R) -> S) -> PlaceVec<S> {
        PlaceVec {
            real: self.real.iter().map(&f).collect(),
            complex: self.complex.iter().map(|z| Cplx::new(f(&z.re), f(&z.im))).collect(),
        }
    }

    /// `sum_j c_j v_j` for integer coefficients.
    pub fn combine(vs: &[PlaceVec<R>], c: &[i64]) -> Self {
        let r = vs[0].real.len();
        let s = vs[0].complex.len();
        let mut real = vec![R::zero(); r];
        let mut complex = vec![Cplx::<R>::zero(); s];
        for (v, &k) in vs.iter().zip(c) {
            if k == 0 {
                continue;
            }
            let k = R::from_i64(k);
            for (acc, x) in real.iter_mut().zip(&v.real) {
                *acc = acc.clone() + x.clone() * k.clone();
            }
            for (acc, z) in complex.iter_mut().zip(&v.complex) {
                *acc = acc.clone() + z.scale(&k);
            }
        }
        PlaceVec { real, complex }
    }
}

/// Certified root enclosures of the defining polynomial and derived data.
#[derive(Debug, Clone)]
pub struct EmbeddingSet {
    field: NumberField,
    prec: u32,
    real_roots: Vec<Interval>,
    complex_roots: Vec<Cplx<Interval>>,
    powers: Vec<PlaceVec<Interval>>,
    basis: Vec<PlaceVec<Interval>>,
    frame: MinkowskiFrame,
}

/// Isolate the roots of the defining polynomial to `prec` bits.
pub fn isolate_roots(field: &NumberField, prec: u32) -> Result<EmbeddingSet> {
    EmbeddingSet::new(field, prec)
}

impl EmbeddingSet {
    pub fn new(field: &NumberField, prec: u32) -> Result<EmbeddingSet> {
        let prec = prec.max(64);
        if prec > MAX_PREC {
            return Err(Error::PrecisionExhausted { bits: prec, context: "isolating roots".into() });
        }
        let f = field.poly();
        let (r, s) = field.signature();
        let real_roots = roots::real_root_enclosures(f, prec);
        let mut p = prec;
        let complex_roots = loop {
            match roots::complex_root_enclosures(f, s, p) {
                Ok(c) => break c,
                Err(e) if p * 2 > MAX_PREC => return Err(e),
                Err(_) => p *= 2,
            }
        };
        debug_assert_eq!(real_roots.len(), r);

        let d = field.degree();
        let theta = PlaceVec::new(real_roots.clone(), complex_roots.clone());
        let mut powers = Vec::with_capacity(d);
        let mut cur = PlaceVec::splat(r, s, &Interval::from_i64(1));
        for _ in 0..d {
            powers.push(cur.clone());
            cur = cur.mul(&theta);
        }
        if d == 1 {
            // the only power-basis coordinate is the constant term
            powers[0] = PlaceVec::splat(r, s, &Interval::from_i64(1));
        }
        let mut set = EmbeddingSet {
            field: field.clone(),
            prec,
            real_roots,
            complex_roots,
            powers,
            basis: Vec::new(),
            frame: MinkowskiFrame { matrix: Vec::new(), inverse: Vec::new(), bound: Vec::new() },
        };
        set.basis = (0..d).map(|i| set.embed(&field.basis_element(i))).collect();
        let cols: Vec<Vec<f64>> =
            set.basis.iter().map(|b| b.real_coords().iter().map(|x| x.mid_f64()).collect()).collect();
        let matrix = crate::exactnum::linalg::transpose(&cols);
        set.frame = MinkowskiFrame::new(matrix).ok_or_else(|| Error::PrecisionExhausted {
            bits: prec,
            context: "inverting the Minkowski matrix".into(),
        })?;
        Ok(set)
    }

    /// Recompute at a different precision.
    pub fn refine(&self, prec: u32) -> Result<EmbeddingSet> {
        EmbeddingSet::new(&self.field, prec)
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn real_roots(&self) -> &[Interval] {
        &self.real_roots
    }

    pub fn complex_roots(&self) -> &[Cplx<Interval>] {
        &self.complex_roots
    }

    pub fn frame(&self) -> &MinkowskiFrame {
        &self.frame
    }

    /// Enclosures of the integral basis elements.
    pub fn basis_values(&self) -> &[PlaceVec<Interval>] {
        &self.basis
    }

    /// Basis values converted to another scalar.
    pub fn basis_values_as<R: Real>(&self) -> Vec<PlaceVec<R>> {
        self.basis.iter().map(|b| b.map(R::from_interval)).collect()
    }

    /// `sigma(a)` with outward rounding.
    pub fn embed(&self, a: &FieldElem) -> PlaceVec<Interval> {
        let (r, s) = self.field.signature();
        let mut acc = PlaceVec::splat(r, s, &Interval::from_i64(0));
        for (c, pw) in a.coords().iter().zip(&self.powers) {
            if num_traits::Zero::is_zero(c) {
                continue;
            }
            let k = Interval::from_rational(c, self.prec);
            acc = acc.add(&pw.map(|x| x * &k));
        }
        acc
    }

    pub fn embed_as<R: Real>(&self, a: &FieldElem) -> PlaceVec<R> {
        self.embed(a).map(R::from_interval)
    }

    /// Embedding of the order element with integral-basis coordinates `c`.
    pub fn embed_coords(&self, c: &[BigInt]) -> PlaceVec<Interval> {
        let (r, s) = self.field.signature();
        let mut acc = PlaceVec::splat(r, s, &Interval::from_i64(0));
        for (k, b) in c.iter().zip(&self.basis) {
            if num_traits::Zero::is_zero(k) {
                continue;
            }
            let k = Interval::from_int(k);
            acc = acc.add(&b.map(|x| x * &k));
        }
        acc
    }

    /// `max_i |sigma_i(a)|`.
    pub fn house(&self, a: &FieldElem) -> Interval {
        self.embed(a).max_abs()
    }

    /// Signs of `a` at the real places, refining precision as needed.
    pub fn real_signs(&self, a: &FieldElem, max_prec: u32) -> Result<Vec<i32>> {
        self.signs_by(a, max_prec, |v| v.real.clone())
    }

    /// Signs of the real parts of `a` at the complex places; for an element of
    /// the totally real subfield of a CM field these are its real signs.
    pub fn complex_real_part_signs(&self, a: &FieldElem, max_prec: u32) -> Result<Vec<i32>> {
        self.signs_by(a, max_prec, |v| v.complex.iter().map(|z| z.re.clone()).collect())
    }

    fn signs_by(
        &self,
        a: &FieldElem,
        max_prec: u32,
        pick: impl Fn(&PlaceVec<Interval>) -> Vec<Interval>,
    ) -> Result<Vec<i32>> {
        if a.is_zero() {
            return Ok(vec![0; pick(&self.embed(a)).len()]);
        }
        let mut cur = self.clone();
        loop {
            let vals = pick(&cur.embed(a));
            if vals.iter().all(|x| !x.contains_zero()) {
                return Ok(vals.iter().map(|x| if x.certainly_positive() { 1 } else { -1 }).collect());
            }
            if cur.prec >= max_prec {
                return Err(Error::PrecisionExhausted {
                    bits: cur.prec,
                    context: "determining signs at places".into(),
                });
            }
            cur = cur.refine((cur.prec * 2).min(max_prec))?;
        }
    }

    /// Real `d x d` matrix whose column `j` is the real-coordinate image of `theta^j`.
    pub fn power_matrix(&self) -> Matrix<Interval> {
        let cols: Vec<Vec<Interval>> = self.powers.iter().map(|p| p.real_coords()).collect();
        crate::exactnum::linalg::transpose(&cols)
    }

    /// Power-basis coordinates of the field element whose place values lie in
    /// `v`, enclosed rigorously. `None` if the solve is not certified.
    pub fn solve_power_coords(&self, v: &PlaceVec<Interval>) -> Option<Vec<Interval>> {
        frame::solve_certified(&self.power_matrix(), &v.real_coords(), self.prec)
    }

    /// Whether `q` lies in the enclosure of every place value of the rational.
    pub fn contains_rational(v: &PlaceVec<Interval>, q: &BigRational) -> bool {
        v.real.iter().all(|x| x.contains_rational(q))
            && v.complex.iter().all(|z| z.re.contains_rational(q) && z.im.contains_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RatPoly;

    fn field(c: &[i64]) -> NumberField {
        NumberField::new(RatPoly::from_ints(c)).unwrap()
    }

    #[test]
    fn sqrt5_places() {
        let e = isolate_roots(&field(&[-5, 0, 1]), 128).unwrap();
        let v = e.embed(&FieldElem::from_ints(e.field(), &[1, 1]).scale(&BigRational::new(1.into(), 2.into())));
        assert!((v.real[0].mid_f64() + 0.6180339887498949).abs() < 1e-15);
        assert!((v.real[1].mid_f64() - 1.618033988749895).abs() < 1e-15);
    }

    #[test]
    fn gaussian_place() {
        let e = isolate_roots(&field(&[1, 0, 1]), 128).unwrap();
        let z = &e.complex_roots()[0];
        assert!(z.re.contains_zero());
        assert!((z.im.mid_f64() - 1.0).abs() < 1e-30);
    }

    #[test]
    fn house_of_3_plus_sqrt2() {
        let e = isolate_roots(&field(&[-2, 0, 1]), 128).unwrap();
        let h = e.house(&FieldElem::from_ints(e.field(), &[3, 1]));
        assert!((h.mid_f64() - 4.414213562373095).abs() < 1e-14);
    }

    #[test]
    fn power_coords_recovered() {
        let e = isolate_roots(&field(&[-2, 0, 0, 1]), 256).unwrap();
        let a = FieldElem::from_ints(e.field(), &[1, -3, 2]);
        let x = e.solve_power_coords(&e.embed(&a)).unwrap();
        for (xi, ai) in x.iter().zip(a.coords()) {
            assert!(xi.contains_rational(ai));
        }
    }
}
