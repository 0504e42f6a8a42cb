use num_bigint::BigInt;
use num_rational::BigRational;

use super::group::GroupElem;
use super::hilbert::{norm_test, NormTest};
use super::norm_search::{find_norm_preimage, SearchOutcome, DEFAULT_BUDGET};
use super::verdict::{AnisotropyVerdict, Certificate, Status};
use crate::embed::EmbeddingSet;
use crate::error::{Error, Result};
use crate::exactnum::cm::CMStructure;
use crate::exactnum::field::{FieldElem, NumberField};
use crate::Settings;

/// `H(z, w) = A z tau(z) + tau(B) z tau(w) + B tau(z) w + C w tau(w)` with
/// `A`, `C` in the totally real subfield.
#[derive(Debug, Clone, PartialEq)]
pub struct HermForm {
    pub a: FieldElem,
    pub b: FieldElem,
    pub c: FieldElem,
    pub cm: CMStructure,
}

impl HermForm {
    pub fn new(a: FieldElem, b: FieldElem, c: FieldElem, cm: &CMStructure) -> Result<HermForm> {
        for x in [&a, &b, &c] {
            if !x.field().same(cm.field()) {
                return Err(Error::MixedFields);
            }
        }
        if !cm.is_fixed(&a) || !cm.is_fixed(&c) {
            return Err(Error::InvalidInput("A and C must lie in the totally real subfield".into()));
        }
        Ok(HermForm { a, b, c, cm: cm.clone() })
    }

    pub fn from_ints(cm: &CMStructure, a: &[i64], b: &[i64], c: &[i64]) -> Result<HermForm> {
        let f = cm.field();
        HermForm::new(FieldElem::from_ints(f, a), FieldElem::from_ints(f, b), FieldElem::from_ints(f, c), cm)
    }

    pub fn field(&self) -> &NumberField {
        self.a.field()
    }

    /// `AC - B tau(B)`, an element of the totally real subfield.
    pub fn discriminant(&self) -> FieldElem {
        let d = &(&self.a * &self.c) - &self.cm.relative_norm(&self.b);
        debug_assert!(self.cm.is_fixed(&d));
        d
    }

    pub fn evaluate(&self, z: &FieldElem, w: &FieldElem) -> FieldElem {
        let tau = |x: &FieldElem| self.cm.conj(x);
        let (tz, tw, tb) = (tau(z), tau(w), tau(&self.b));
        let v = &(&(&(&self.a * &(z * &tz)) + &(&tb * &(z * &tw))) + &(&self.b * &(&tz * w))) + &(&self.c * &(w * &tw));
        debug_assert!(self.cm.is_fixed(&v));
        v
    }

    /// `H^g(z, w) = H(a z + b w, c z + d w)`.
    pub fn act(&self, g: &GroupElem) -> HermForm {
        let tau = |x: &FieldElem| self.cm.conj(x);
        let tb = tau(&self.b);
        let (ta, tc) = (tau(&g.a), tau(&g.c));
        let a = self.evaluate(&g.a, &g.c);
        let c = self.evaluate(&g.b, &g.d);
        let b = &(&(&(&self.a * &(&ta * &g.b)) + &(&tb * &(&tc * &g.b))) + &(&self.b * &(&ta * &g.d)))
            + &(&self.c * &(&tc * &g.d));
        HermForm { a, b, c, cm: self.cm.clone() }
    }

    pub fn denominator(&self) -> BigInt {
        let (a, b, c) = (self.a.denominator(), self.b.denominator(), self.c.denominator());
        num_integer::Integer::lcm(&num_integer::Integer::lcm(&a, &b), &c)
    }

    pub fn scaled(&self, k: &BigRational) -> HermForm {
        HermForm { a: self.a.scale(k), b: self.b.scale(k), c: self.c.scale(k), cm: self.cm.clone() }
    }

    /// Whether the discriminant is negative at every place of the totally real subfield.
    pub fn is_totally_indefinite(&self, e: &EmbeddingSet, settings: &Settings) -> Result<bool> {
        Ok(self.indefinite_places(e, settings)?.iter().all(|&b| b))
    }

    pub fn indefinite_places(&self, e: &EmbeddingSet, settings: &Settings) -> Result<Vec<bool>> {
        let d = self.discriminant();
        if d.is_zero() {
            return Err(Error::DegenerateForm);
        }
        Ok(e.complex_real_part_signs(&d, settings.max_prec)?.into_iter().map(|s| s < 0).collect())
    }

    /// A nontrivial zero from `x` with `x tau(x) = -disc`.
    pub fn zero_from_norm(&self, x: &FieldElem) -> (FieldElem, FieldElem) {
        let f = self.field();
        if self.a.is_zero() {
            return (FieldElem::one(f), FieldElem::zero(f));
        }
        // A H(z, w) = N(A z + B w) + disc N(w)
        let z = (x - &self.b).checked_div(&self.a).expect("A is nonzero");
        (z, FieldElem::one(f))
    }

    /// Anisotropic exactly when `-disc` is not a relative norm. Decided by a
    /// bounded preimage search and, for imaginary quadratic fields, by
    /// Hilbert symbols.
    pub fn anisotropy(&self, e: &EmbeddingSet, settings: &Settings) -> Result<AnisotropyVerdict> {
        let disc = self.discriminant();
        if disc.is_zero() {
            return Err(Error::DegenerateForm);
        }
        let n = -&disc;
        let height = settings.norm_height;
        let found = |x: FieldElem| {
            let zero = self.zero_from_norm(&x);
            debug_assert!(self.evaluate(&zero.0, &zero.1).is_zero());
            AnisotropyVerdict {
                status: Status::Isotropic,
                certificate: Certificate::NormPreimage { x: x.coord_strings() },
                zero: Some(zero),
            }
        };
        let search = find_norm_preimage(&n, &self.cm, e, height, DEFAULT_BUDGET);
        if let SearchOutcome::Found(x) = search {
            return Ok(found(x));
        }
        let radicand = self.cm.quadratic_radicand();
        if let (Some(delta), Some(q)) = (radicand, n.as_rational()) {
            return Ok(match norm_test(&q, &delta) {
                NormTest::Obstructed(places) => AnisotropyVerdict {
                    status: Status::Anisotropic,
                    certificate: Certificate::LocalObstruction {
                        value: q.to_string(),
                        radicand: delta.to_string(),
                        places: places.iter().map(|p| p.to_string()).collect(),
                    },
                    zero: None,
                },
                NormTest::Norm => {
                    // a preimage exists; look further for an explicit one
                    let wide = height.max(wide_height(&q, &delta));
                    match find_norm_preimage(&n, &self.cm, e, wide, DEFAULT_BUDGET) {
                        SearchOutcome::Found(x) => found(x),
                        _ => AnisotropyVerdict {
                            status: Status::Unknown,
                            certificate: Certificate::Inconclusive {
                                height: wide,
                                reason: "local symbols are trivial but no explicit preimage was found".into(),
                            },
                            zero: None,
                        },
                    }
                }
                NormTest::Unknown(reason) => AnisotropyVerdict {
                    status: Status::Unknown,
                    certificate: Certificate::Inconclusive { height, reason },
                    zero: None,
                },
            });
        }
        let reason = match search {
            SearchOutcome::Truncated { reached } => {
                format!("search budget exhausted after denominator {reached}")
            }
            _ => "no preimage within the search height; no local test for this field".into(),
        };
        Ok(AnisotropyVerdict {
            status: Status::Unknown,
            certificate: Certificate::Inconclusive { height, reason },
            zero: None,
        })
    }
}

/// Search height large enough to meet Holzer's bound for `X^2 - delta Y^2 = n Z^2`.
fn wide_height(n: &BigRational, delta: &BigInt) -> u32 {
    use num_traits::{Signed, ToPrimitive};
    let m = (n.numer() * n.denom()).abs() * delta.abs();
    let bound = m.sqrt() * n.denom() + 1u32;
    bound.to_u32().unwrap_or(u32::MAX).min(100_000)
}
