use num_bigint::BigInt;
use num_rational::BigRational;

use super::group::GroupElem;
use super::verdict::{AnisotropyVerdict, Certificate, Status};
use crate::embed::EmbeddingSet;
use crate::error::{Error, Result};
use crate::exactnum::field::{FieldElem, NumberField};
use crate::exactnum::sqrt::{is_square_with, SquareRoot};
use crate::Settings;

/// `Q(x, y) = A x^2 + B x y + C y^2` over a number field.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadForm {
    pub a: FieldElem,
    pub b: FieldElem,
    pub c: FieldElem,
}

impl QuadForm {
    pub fn new(a: FieldElem, b: FieldElem, c: FieldElem) -> Result<QuadForm> {
        if !a.field().same(b.field()) || !a.field().same(c.field()) {
            return Err(Error::MixedFields);
        }
        Ok(QuadForm { a, b, c })
    }

    /// Coefficients from power-basis integer coordinates.
    pub fn from_ints(field: &NumberField, a: &[i64], b: &[i64], c: &[i64]) -> QuadForm {
        QuadForm {
            a: FieldElem::from_ints(field, a),
            b: FieldElem::from_ints(field, b),
            c: FieldElem::from_ints(field, c),
        }
    }

    pub fn field(&self) -> &NumberField {
        self.a.field()
    }

    /// `AC - B^2/4`.
    pub fn discriminant(&self) -> FieldElem {
        let quarter = BigRational::new(BigInt::from(1), BigInt::from(4));
        &(&self.a * &self.c) - &(&self.b * &self.b).scale(&quarter)
    }

    pub fn evaluate(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        &(&(&self.a * &(x * x)) + &(&self.b * &(x * y))) + &(&self.c * &(y * y))
    }

    /// `Q^g(x, y) = Q(a x + b y, c x + d y)`.
    pub fn act(&self, g: &GroupElem) -> QuadForm {
        let two = BigRational::from_integer(BigInt::from(2));
        let a = self.evaluate(&g.a, &g.c);
        let c = self.evaluate(&g.b, &g.d);
        let b = &(&(&self.a * &(&g.a * &g.b)).scale(&two) + &(&self.b * &(&(&g.a * &g.d) + &(&g.b * &g.c))))
            + &(&self.c * &(&g.c * &g.d)).scale(&two);
        QuadForm { a, b, c }
    }

    /// Least common denominator of the coefficients in the order.
    pub fn denominator(&self) -> BigInt {
        let (a, b, c) = (self.a.denominator(), self.b.denominator(), self.c.denominator());
        num_integer::Integer::lcm(&num_integer::Integer::lcm(&a, &b), &c)
    }

    pub fn scaled(&self, k: &BigRational) -> QuadForm {
        QuadForm { a: self.a.scale(k), b: self.b.scale(k), c: self.c.scale(k) }
    }

    /// Whether the discriminant is negative at every real place.
    pub fn is_totally_indefinite(&self, e: &EmbeddingSet, settings: &Settings) -> Result<bool> {
        Ok(self.indefinite_places(e, settings)?.iter().all(|&b| b))
    }

    /// Per real place: whether the discriminant is negative there.
    pub fn indefinite_places(&self, e: &EmbeddingSet, settings: &Settings) -> Result<Vec<bool>> {
        let d = self.discriminant();
        if d.is_zero() {
            return Err(Error::DegenerateForm);
        }
        Ok(e.real_signs(&d, settings.max_prec)?.into_iter().map(|s| s < 0).collect())
    }

    /// Anisotropic exactly when `-disc` is not a square in the field.
    pub fn anisotropy(&self, settings: &Settings) -> Result<AnisotropyVerdict> {
        let disc = self.discriminant();
        if disc.is_zero() {
            return Err(Error::DegenerateForm);
        }
        let neg = -&disc;
        match is_square_with(&neg, settings) {
            Ok(SquareRoot::NotSquare(reason)) => Ok(AnisotropyVerdict {
                status: Status::Anisotropic,
                certificate: Certificate::NotSquare { reason },
                zero: None,
            }),
            Ok(SquareRoot::Root(s)) => {
                let field = self.field();
                let zero = if self.a.is_zero() {
                    (FieldElem::one(field), FieldElem::zero(field))
                } else {
                    let two = BigRational::from_integer(BigInt::from(2));
                    (&s.scale(&two) - &self.b, self.a.scale(&two))
                };
                debug_assert!(self.evaluate(&zero.0, &zero.1).is_zero());
                Ok(AnisotropyVerdict {
                    status: Status::Isotropic,
                    certificate: Certificate::SquareRoot { root: s.coord_strings() },
                    zero: Some(zero),
                })
            }
            Err(Error::PrecisionExhausted { bits, context }) => Ok(AnisotropyVerdict {
                status: Status::Unknown,
                certificate: Certificate::Inconclusive {
                    height: 0,
                    reason: format!("precision exhausted at {bits} bits while {context}"),
                },
                zero: None,
            }),
            Err(e) => Err(e),
        }
    }
}
