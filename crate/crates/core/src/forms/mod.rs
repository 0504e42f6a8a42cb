//! Binary quadratic and Hermitian forms: discriminants, indefiniteness,
//! anisotropy verdicts and the action of `SL_2` of the order.

pub mod group;
pub mod herm;
pub mod hilbert;
pub mod norm_search;
pub mod quad;
pub mod verdict;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use group::GroupElem;
pub use herm::HermForm;
pub use quad::QuadForm;
pub use verdict::{AnisotropyVerdict, Certificate, Status};

use crate::embed::EmbeddingSet;
use crate::error::Result;
use crate::exactnum::field::{FieldElem, NumberField};
use crate::Settings;

/// Either kind of form.
#[derive(Debug, Clone, PartialEq)]
pub enum Form {
    Quad(QuadForm),
    Herm(HermForm),
}

impl Form {
    pub fn field(&self) -> &NumberField {
        match self {
            Form::Quad(q) => q.field(),
            Form::Herm(h) => h.field(),
        }
    }

    pub fn coefficients(&self) -> (&FieldElem, &FieldElem, &FieldElem) {
        match self {
            Form::Quad(q) => (&q.a, &q.b, &q.c),
            Form::Herm(h) => (&h.a, &h.b, &h.c),
        }
    }

    pub fn discriminant(&self) -> FieldElem {
        match self {
            Form::Quad(q) => q.discriminant(),
            Form::Herm(h) => h.discriminant(),
        }
    }

    pub fn evaluate(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        match self {
            Form::Quad(q) => q.evaluate(x, y),
            Form::Herm(h) => h.evaluate(x, y),
        }
    }

    pub fn act(&self, g: &GroupElem) -> Form {
        match self {
            Form::Quad(q) => Form::Quad(q.act(g)),
            Form::Herm(h) => Form::Herm(h.act(g)),
        }
    }

    pub fn denominator(&self) -> BigInt {
        match self {
            Form::Quad(q) => q.denominator(),
            Form::Herm(h) => h.denominator(),
        }
    }

    pub fn scaled(&self, k: &BigRational) -> Form {
        match self {
            Form::Quad(q) => Form::Quad(q.scaled(k)),
            Form::Herm(h) => Form::Herm(h.scaled(k)),
        }
    }

    pub fn is_totally_indefinite(&self, e: &EmbeddingSet, settings: &Settings) -> Result<bool> {
        match self {
            Form::Quad(q) => q.is_totally_indefinite(e, settings),
            Form::Herm(h) => h.is_totally_indefinite(e, settings),
        }
    }

    pub fn anisotropy(&self, e: &EmbeddingSet, settings: &Settings) -> Result<AnisotropyVerdict> {
        match self {
            Form::Quad(q) => q.anisotropy(settings),
            Form::Herm(h) => h.anisotropy(e, settings),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Form::Quad(_) => "quad",
            Form::Herm(_) => "herm",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::cm::cm_structure;
    use crate::{isolate_roots, RatPoly};

    fn field(c: &[i64]) -> NumberField {
        NumberField::new(RatPoly::from_ints(c)).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn discriminants() {
        let f = field(&[-2, 0, 1]);
        assert_eq!(QuadForm::from_ints(&f, &[1], &[0], &[-3]).discriminant(), FieldElem::from_i64(&f, -3));
        let rat = field(&[0, 1]);
        let g = QuadForm::from_ints(&rat, &[1], &[1], &[-1]);
        assert_eq!(g.discriminant().as_rational(), Some(q(-5, 4)));
        let gi = field(&[1, 0, 1]);
        let cm = cm_structure(&gi).unwrap();
        let h = HermForm::from_ints(&cm, &[1], &[0], &[-3]).unwrap();
        assert_eq!(h.discriminant(), FieldElem::from_i64(&gi, -3));
    }

    #[test]
    fn total_indefiniteness() {
        let f = field(&[-2, 0, 1]);
        let e = isolate_roots(&f, 128).unwrap();
        let s = Settings::default();
        assert!(QuadForm::from_ints(&f, &[1], &[0], &[-3]).is_totally_indefinite(&e, &s).unwrap());
        let q2 = QuadForm::from_ints(&f, &[1], &[0], &[0, -1]);
        assert_eq!(q2.indefinite_places(&e, &s).unwrap(), vec![false, true]);
        assert!(QuadForm::from_ints(&f, &[1], &[2], &[1]).is_totally_indefinite(&e, &s).is_err());
    }

    #[test]
    fn quadratic_verdicts() {
        let f = field(&[-2, 0, 1]);
        let s = Settings::default();
        assert_eq!(QuadForm::from_ints(&f, &[1], &[0], &[-3]).anisotropy(&s).unwrap().status, Status::Anisotropic);
        let iso = QuadForm::from_ints(&f, &[1], &[0], &[-2]);
        let v = iso.anisotropy(&s).unwrap();
        assert_eq!(v.status, Status::Isotropic);
        let (x, y) = v.zero.unwrap();
        assert!(iso.evaluate(&x, &y).is_zero());
        let rat = field(&[0, 1]);
        assert_eq!(QuadForm::from_ints(&rat, &[1], &[-1], &[-1]).anisotropy(&s).unwrap().status, Status::Anisotropic);
    }

    #[test]
    fn hermitian_verdicts() {
        let gi = field(&[1, 0, 1]);
        let cm = cm_structure(&gi).unwrap();
        let e = isolate_roots(&gi, 128).unwrap();
        let s = Settings::default();
        let h3 = HermForm::from_ints(&cm, &[1], &[0], &[-3]).unwrap();
        let v = h3.anisotropy(&e, &s).unwrap();
        assert_eq!(v.status, Status::Anisotropic);
        match v.certificate {
            Certificate::LocalObstruction { places, .. } => {
                assert!(places.contains(&"3".to_string()))
            }
            other => panic!("{other:?}"),
        }
        for n in [2, 5] {
            let h = HermForm::from_ints(&cm, &[1], &[0], &[-n]).unwrap();
            let v = h.anisotropy(&e, &s).unwrap();
            assert_eq!(v.status, Status::Isotropic);
            let (z, w) = v.zero.unwrap();
            assert!(h.evaluate(&z, &w).is_zero());
            assert!(!z.is_zero() || !w.is_zero());
        }
    }

    #[test]
    fn evaluation_examples() {
        let f = field(&[-2, 0, 1]);
        let one = FieldElem::from_i64(&f, 1);
        assert!(QuadForm::from_ints(&f, &[1], &[0], &[-3]).evaluate(&FieldElem::from_i64(&f, 2), &one).is_one());
        let gi = field(&[1, 0, 1]);
        let cm = cm_structure(&gi).unwrap();
        let h = HermForm::from_ints(&cm, &[1], &[0], &[-3]).unwrap();
        let v = h.evaluate(&FieldElem::from_ints(&gi, &[1, 1]), &FieldElem::one(&gi));
        assert_eq!(v, FieldElem::from_i64(&gi, -1));
        // Fibonacci pairs give +-1
        let rat = field(&[0, 1]);
        let g = QuadForm::from_ints(&rat, &[1], &[-1], &[-1]);
        let (mut a, mut b) = (1i64, 1i64);
        for k in 1..=10 {
            let v = g.evaluate(&FieldElem::from_i64(&rat, a + b), &FieldElem::from_i64(&rat, a));
            assert_eq!(v.as_rational().unwrap(), q(if k % 2 == 0 { 1 } else { -1 }, 1) * q(-1, 1));
            let t = a + b;
            b = a;
            a = t;
        }
    }

    #[test]
    fn action_example() {
        let f = field(&[-2, 0, 1]);
        let g = GroupElem::upper(FieldElem::one(&f)).unwrap();
        let qg = QuadForm::from_ints(&f, &[1], &[0], &[-3]).act(&g);
        assert_eq!(qg, QuadForm::from_ints(&f, &[1], &[2], &[-2]));
    }
}
