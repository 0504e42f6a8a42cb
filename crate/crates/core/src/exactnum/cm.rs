//! CM structure: the conjugation automorphism of a CM field.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::field::{FieldElem, NumberField};
use super::linalg::{self, Matrix};
use super::sqrt::reconstruct;
use crate::embed::{EmbeddingSet, PlaceVec};
use crate::error::{Error, Result};
use crate::Settings;

/// A CM field with its conjugation `tau` and a basis of the fixed field `E`.
#[derive(Debug, Clone, PartialEq)]
pub struct CMStructure {
    field: NumberField,
    conj_image: FieldElem,
    fixed_basis: Vec<FieldElem>,
    /// Action of `tau` on power-basis coordinates.
    matrix: Matrix<BigRational>,
}

/// Find the automorphism acting as complex conjugation at every place.
pub fn cm_structure(field: &NumberField) -> Result<CMStructure> {
    cm_structure_with(field, &Settings::default())
}

pub fn cm_structure_with(field: &NumberField, settings: &Settings) -> Result<CMStructure> {
    let (r, s) = field.signature();
    if r != 0 || s == 0 {
        return Err(Error::NotCM(format!("signature ({r}, {s}) is not totally imaginary")));
    }
    let den = field.discriminant().abs();
    let mut prec = settings.prec;
    let g = loop {
        let e = EmbeddingSet::new(field, prec)?;
        let target = PlaceVec::new(Vec::new(), e.complex_roots().iter().map(|z| z.conj()).collect());
        match reconstruct(&e, &target, &den) {
            Some(Some(g)) => break g,
            Some(None) => return Err(Error::NotCM("complex conjugation does not preserve the field".into())),
            None if prec >= settings.max_prec => {
                return Err(Error::PrecisionExhausted { bits: prec, context: "locating the CM conjugation".into() })
            }
            None => prec = (prec * 2).min(settings.max_prec),
        }
    };
    CMStructure::from_conj_image(field, g)
}

impl CMStructure {
    /// Build from a claimed image of `theta`, verifying it exactly.
    pub fn from_conj_image(field: &NumberField, g: FieldElem) -> Result<CMStructure> {
        let (_, s) = field.signature();
        let theta = field.theta();
        let mut fg = FieldElem::zero(field);
        for c in field.poly().coeffs().iter().rev() {
            fg = &(&fg * &g) + &FieldElem::from_rational(field, c.clone());
        }
        if !fg.is_zero() {
            return Err(Error::NotCM("conjugate image is not a root of f".into()));
        }
        if g == theta {
            return Err(Error::NotCM("conjugation is the identity".into()));
        }
        if g.substitute(&g) != theta {
            return Err(Error::NotCM("conjugation is not an involution".into()));
        }
        let d = field.degree();
        let mut cols = Vec::with_capacity(d);
        let mut pw = FieldElem::one(field);
        for _ in 0..d {
            cols.push(pw.coords().to_vec());
            pw = &pw * &g;
        }
        let matrix = linalg::transpose(&cols);
        let mut shifted = matrix.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] = &row[i] - BigRational::one();
        }
        let fixed_basis: Vec<FieldElem> =
            linalg::nullspace(&shifted).into_iter().map(|v| FieldElem::new(field, v)).collect();
        if fixed_basis.len() != s {
            return Err(Error::NotCM(format!("fixed field has degree {} instead of {s}", fixed_basis.len())));
        }
        Ok(CMStructure { field: field.clone(), conj_image: g, fixed_basis, matrix })
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    /// `tau(theta)`.
    pub fn conj_image(&self) -> &FieldElem {
        &self.conj_image
    }

    pub fn fixed_basis(&self) -> &[FieldElem] {
        &self.fixed_basis
    }

    /// Whether the totally real subfield is `Q`.
    pub fn fixed_field_is_rational(&self) -> bool {
        self.fixed_basis.len() == 1
    }

    pub fn conj(&self, a: &FieldElem) -> FieldElem {
        FieldElem::new(&self.field, linalg::mat_vec(&self.matrix, a.coords()))
    }

    pub fn is_fixed(&self, a: &FieldElem) -> bool {
        &self.conj(a) == a
    }

    /// `N_{F/E}(a) = a tau(a)`.
    pub fn relative_norm(&self, a: &FieldElem) -> FieldElem {
        a * &self.conj(a)
    }

    /// For an imaginary quadratic field `Q(sqrt(delta))`, the radicand `delta = b^2 - 4c` of `x^2 + b x + c`.
    pub fn quadratic_radicand(&self) -> Option<BigInt> {
        if self.field.degree() != 2 {
            return None;
        }
        let f = self.field.poly();
        let b = f.coeff(1).to_integer();
        let c = f.coeff(0).to_integer();
        let delta = &b * &b - BigInt::from(4) * c;
        debug_assert!(delta.is_negative());
        Some(delta)
    }
}

/// `a tau(a)`.
pub fn relative_norm(a: &FieldElem, cm: &CMStructure) -> Result<FieldElem> {
    if !a.field().same(cm.field()) {
        return Err(Error::MixedFields);
    }
    Ok(cm.relative_norm(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RatPoly;

    #[test]
    fn gaussian_conjugation() {
        let f = NumberField::new(RatPoly::from_ints(&[1, 0, 1])).unwrap();
        let cm = cm_structure(&f).unwrap();
        assert_eq!(cm.conj_image(), &FieldElem::from_ints(&f, &[0, -1]));
        assert!(cm.fixed_field_is_rational());
        assert_eq!(cm.relative_norm(&FieldElem::from_ints(&f, &[1, 1])), FieldElem::from_i64(&f, 2));
    }

    #[test]
    fn quartic_cyclotomic() {
        let f = NumberField::new(RatPoly::from_ints(&[1, -1, 1, -1, 1])).unwrap();
        let cm = cm_structure(&f).unwrap();
        assert_eq!(cm.conj_image(), &FieldElem::from_ints(&f, &[1, -1, 1, -1]));
        assert_eq!(cm.fixed_basis().len(), 2);
        assert!(cm.relative_norm(&f.theta()).is_one());
    }

    #[test]
    fn rejects_non_cm() {
        let real = NumberField::new(RatPoly::from_ints(&[-2, 0, 1])).unwrap();
        assert!(matches!(cm_structure(&real), Err(Error::NotCM(_))));
        // x^4 + x + 1 has signature (0, 2) but is not CM
        let f = NumberField::new(RatPoly::from_ints(&[1, 1, 0, 0, 1])).unwrap();
        assert!(matches!(cm_structure(&f), Err(Error::NotCM(_))));
    }
}
