use num_bigint::BigInt;
use num_rational::BigRational;

use crate::embed::interval::Interval;
use crate::embed::EmbeddingSet;
use crate::error::{Error, Result};
use crate::forms::{AnisotropyVerdict, Form, Status};
use crate::vectors::{components_list, form_residuals, place_coeffs, TargetVector};
use crate::Settings;

/// The mean-value lower bound for a zero of an anisotropic form.
///
/// For `p, q` in the order with `max_i |z_i - p_i/q_i| <= 1`, the value
/// `D J(p, q)` is a nonzero algebraic integer, so its house is at least
/// `lambda = 1`, and `|q_i|^2 |J_i(p_i/q_i, 1)| <= |q_i|^2 kappa_i |z_i - p_i/q_i|`
/// gives `max_i |q_i| * max_i |q_i z_i - p_i| >= 1 / max_i kappa_i`.
#[derive(Debug, Clone)]
pub struct LiouvilleCertificate {
    pub kind: &'static str,
    /// Common denominator `D` cleared from the coefficients.
    pub denominator: BigInt,
    /// Lipschitz bounds of `t -> D J_i(t, 1)` on the unit disk around `z_i`.
    pub kappa: Vec<Interval>,
    pub lambda: Interval,
    pub c_prime: Interval,
    pub regime: &'static str,
    pub verdict: AnisotropyVerdict,
    pub prec: u32,
}

pub const NEAR_REGIME: &str = "max_i |z_i - p_i/q_i| <= 1";

pub fn liouville_certificate(
    j: &Form,
    z: &TargetVector,
    e: &EmbeddingSet,
    settings: &Settings,
) -> Result<LiouvilleCertificate> {
    let verdict = j.anisotropy(e, settings)?;
    if verdict.status != Status::Anisotropic {
        return Err(Error::NotAnisotropic(verdict.status.to_string()));
    }
    let residuals = form_residuals(j, e, &z.components);
    if let Some(place) = residuals.iter().position(|r| !(r.re.contains_zero() && r.im.contains_zero())) {
        return Err(Error::NotAZero { place });
    }
    let d = j.denominator();
    let scaled = j.scaled(&BigRational::from_integer(d.clone()));
    let (a, b, _) = scaled.coefficients();
    let (a, b) = (place_coeffs(a, e), place_coeffs(b, e));
    let zs = components_list(&z.components);
    let two = Interval::from_i64(2);
    let one = Interval::from_i64(1);
    let (kind, kappa): (&'static str, Vec<Interval>) = match j {
        Form::Quad(_) => (
            "quadratic",
            (0..zs.len())
                .map(|i| {
                    let slope = a[i].scale(&two) * zs[i].clone() + b[i].clone();
                    slope.abs() + &two * &a[i].abs()
                })
                .collect(),
        ),
        Form::Herm(_) => {
            let r = z.components.real.len();
            (
                "hermitian",
                (r..zs.len())
                    .map(|i| &(&a[i].abs() * &(&(&two * &zs[i].abs()) + &one)) + &(&two * &b[i].abs()))
                    .collect(),
            )
        }
    };
    let worst = kappa.iter().skip(1).fold(kappa[0].clone(), |m, k| m.max(k));
    let c_prime = worst
        .recip()
        .ok_or_else(|| Error::PrecisionExhausted { bits: e.prec(), context: "inverting the Lipschitz bound".into() })?;
    Ok(LiouvilleCertificate {
        kind,
        denominator: d,
        kappa,
        lambda: one,
        c_prime,
        regime: NEAR_REGIME,
        verdict,
        prec: e.prec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::cm::cm_structure;
    use crate::exactnum::field::FieldElem;
    use crate::forms::{HermForm, QuadForm};
    use crate::vectors::{corollary_vector, quad_zeros, Alpha};
    use crate::{isolate_roots, NumberField, RatPoly};

    fn field(c: &[i64]) -> NumberField {
        NumberField::new(RatPoly::from_ints(c)).unwrap()
    }

    #[test]
    fn golden_constant() {
        let f = field(&[0, 1]);
        let e = isolate_roots(&f, 256).unwrap();
        let q = QuadForm::from_ints(&f, &[1], &[-1], &[-1]);
        let z = quad_zeros(&q, &e, &[1]).unwrap();
        let c = liouville_certificate(&Form::Quad(q.clone()), &z, &e, &Settings::default()).unwrap();
        assert!((c.c_prime.mid_f64() - (5f64.sqrt() - 2.0)).abs() < 1e-12);
        // halving the form doubles D
        let half = Form::Quad(q.scaled(&BigRational::new(1.into(), 2.into())));
        let c2 = liouville_certificate(&half, &z, &e, &Settings::default()).unwrap();
        assert_eq!(c2.denominator, BigInt::from(2));
        assert!((c2.c_prime.mid_f64() - (5f64.sqrt() - 2.0)).abs() < 1e-12);
        let third = Form::Quad(q.scaled(&BigRational::new(2.into(), 3.into())));
        let c3 = liouville_certificate(&third, &z, &e, &Settings::default()).unwrap();
        assert!((c3.c_prime.mid_f64() - (5f64.sqrt() - 2.0) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn real_quadratic_constant() {
        let f = field(&[-2, 0, 1]);
        let e = isolate_roots(&f, 256).unwrap();
        let q = QuadForm::from_ints(&f, &[1], &[0], &[-3]);
        let z = quad_zeros(&q, &e, &[1, 1]).unwrap();
        let c = liouville_certificate(&Form::Quad(q), &z, &e, &Settings::default()).unwrap();
        assert_eq!(c.kappa.len(), 2);
        assert!((c.c_prime.mid_f64() - 1.0 / (2.0 * 3f64.sqrt() + 2.0)).abs() < 1e-12);
    }

    #[test]
    fn hermitian_constant_and_errors() {
        let gi = field(&[1, 0, 1]);
        let cm = cm_structure(&gi).unwrap();
        let e = isolate_roots(&gi, 256).unwrap();
        let s = Settings::default();
        let three = FieldElem::from_i64(&gi, 3);
        let z = corollary_vector(&FieldElem::zero(&gi), &three, &[Alpha::from_i64(1)], &[1], &cm, &e, &s).unwrap();
        let h = HermForm::from_ints(&cm, &[1], &[0], &[-3]).unwrap();
        let c = liouville_certificate(&Form::Herm(h), &z, &e, &s).unwrap();
        assert!((c.c_prime.mid_f64() - 1.0 / (2.0 * 3f64.sqrt() + 1.0)).abs() < 1e-12);

        let other = HermForm::from_ints(&cm, &[1], &[0], &[-7]).unwrap();
        assert!(matches!(liouville_certificate(&Form::Herm(other), &z, &e, &s), Err(Error::NotAZero { place: 0 })));
        let iso = HermForm::from_ints(&cm, &[1], &[0], &[-2]).unwrap();
        assert!(matches!(liouville_certificate(&Form::Herm(iso), &z, &e, &s), Err(Error::NotAnisotropic(_))));
    }
}
