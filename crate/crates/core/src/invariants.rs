//! Randomized structural checks shared by the `selftest` command and the
//! test suites. Every check is exact except where noted; each returns the
//! failing cases so runs can be compared across precisions.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::approx::Approximant;
use crate::embed::isolate_roots;
use crate::error::Error;
use crate::exactnum::cm::cm_structure;
use crate::exactnum::field::{FieldElem, NumberField};
use crate::exactnum::sqrt::is_square;
use crate::flow::balance_check;
use crate::forms::{Form, GroupElem, HermForm, QuadForm, Status};
use crate::vectors::{corollary_vector, quad_zeros, Alpha, TargetVector};
use crate::{RatPoly, Settings};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn field(c: &[i64]) -> NumberField {
    NumberField::new(RatPoly::from_ints(c)).expect("built-in field")
}

/// Fields exercised by the suites: Q, Q(sqrt 2), Q(i), Q(2^(1/3)) and the
/// quartic CM field of tenth roots of unity.
pub fn sample_fields() -> Vec<NumberField> {
    vec![field(&[0, 1]), field(&[-2, 0, 1]), field(&[1, 0, 1]), field(&[-2, 0, 0, 1]), field(&[1, -1, 1, -1, 1])]
}

pub fn random_elem<R: Rng>(rng: &mut R, f: &NumberField, size: i64) -> FieldElem {
    let coords = (0..f.degree())
        .map(|_| BigRational::new(BigInt::from(rng.gen_range(-size..=size)), BigInt::from(rng.gen_range(1..=3))))
        .collect();
    FieldElem::new(f, coords)
}

pub fn random_integral<R: Rng>(rng: &mut R, f: &NumberField, size: i64) -> Vec<i64> {
    (0..f.degree()).map(|_| rng.gen_range(-size..=size)).collect()
}

pub fn random_group_elem<R: Rng>(rng: &mut R, f: &NumberField) -> GroupElem {
    let steps: Vec<Vec<i64>> = (0..rng.gen_range(1..=4)).map(|_| random_integral(rng, f, 2)).collect();
    GroupElem::from_elementary(f, &steps)
}

pub fn field_axioms<R: Rng>(rng: &mut R, cases: usize) -> SuiteResult {
    let mut failures = Vec::new();
    for f in sample_fields() {
        for _ in 0..cases {
            let (a, b, c) = (random_elem(rng, &f, 9), random_elem(rng, &f, 9), random_elem(rng, &f, 9));
            if &(&a + &b) + &c != &a + &(&b + &c) {
                failures.push(format!("{}: additive associativity at {a}, {b}, {c}", f.poly()));
            }
            if &(&a * &b) * &c != &a * &(&b * &c) {
                failures.push(format!("{}: associativity at {a}, {b}, {c}", f.poly()));
            }
            if &a * &(&b + &c) != &(&a * &b) + &(&a * &c) {
                failures.push(format!("{}: distributivity at {a}, {b}, {c}", f.poly()));
            }
            if !a.is_zero() && !(&a * &a.inv().expect("nonzero")).is_one() {
                failures.push(format!("{}: inverse of {a}", f.poly()));
            }
        }
    }
    SuiteResult { name: "field axioms", cases: cases * sample_fields().len(), failures }
}

pub fn squares<R: Rng>(rng: &mut R, cases: usize) -> SuiteResult {
    let mut failures = Vec::new();
    for f in sample_fields() {
        for _ in 0..cases {
            let a = random_elem(rng, &f, 6);
            let sq = &a * &a;
            match is_square(&sq) {
                Ok(Some(b)) if &b * &b == sq => {}
                other => failures.push(format!("{}: square root of ({a})^2 gave {other:?}", f.poly())),
            }
        }
    }
    SuiteResult { name: "square roots of squares", cases: cases * sample_fields().len(), failures }
}

pub fn conjugation<R: Rng>(rng: &mut R, cases: usize) -> SuiteResult {
    let mut failures = Vec::new();
    for f in sample_fields().into_iter().filter(|f| f.signature().0 == 0) {
        let cm = match cm_structure(&f) {
            Ok(cm) => cm,
            Err(e) => {
                failures.push(format!("{}: no conjugation ({e})", f.poly()));
                continue;
            }
        };
        for _ in 0..cases {
            let a = random_elem(rng, &f, 9);
            if cm.conj(&cm.conj(&a)) != a {
                failures.push(format!("{}: conjugation is not an involution at {a}", f.poly()));
            }
            if !cm.is_fixed(&cm.relative_norm(&a)) {
                failures.push(format!("{}: relative norm of {a} is not real", f.poly()));
            }
        }
    }
    SuiteResult { name: "conjugation", cases, failures }
}

fn sample_forms() -> Vec<Form> {
    let mut out = Vec::new();
    let r2 = field(&[-2, 0, 1]);
    out.push(Form::Quad(QuadForm::from_ints(&r2, &[1], &[0], &[-3])));
    out.push(Form::Quad(QuadForm::from_ints(&r2, &[1, 1], &[0, 2], &[-3, 1])));
    let q = field(&[0, 1]);
    out.push(Form::Quad(QuadForm::from_ints(&q, &[1], &[-1], &[-1])));
    let gi = field(&[1, 0, 1]);
    let cm = cm_structure(&gi).expect("Q(i)");
    out.push(Form::Herm(HermForm::from_ints(&cm, &[1], &[0], &[-3]).expect("form")));
    out.push(Form::Herm(HermForm::from_ints(&cm, &[2], &[1, 1], &[-5]).expect("form")));
    let c10 = field(&[1, -1, 1, -1, 1]);
    let cm = cm_structure(&c10).expect("CM quartic");
    let fixed = &cm.fixed_basis()[1];
    out.push(Form::Herm(
        HermForm::new(FieldElem::one(&c10), FieldElem::from_ints(&c10, &[0, 1]), -fixed, &cm).expect("form"),
    ));
    out
}

/// `disc(J^g) = disc(J)` for `g` in `SL_2` of the order.
pub fn discriminant_invariance<R: Rng>(rng: &mut R, per_form: usize) -> SuiteResult {
    let mut failures = Vec::new();
    let forms = sample_forms();
    for j in &forms {
        for _ in 0..per_form {
            let g = random_group_elem(rng, j.field());
            if j.act(&g).discriminant() != j.discriminant() {
                failures.push(format!("{} form over {}: discriminant changed", j.kind(), j.field().poly()));
            }
        }
    }
    SuiteResult { name: "discriminant invariance", cases: per_form * forms.len(), failures }
}

/// `J^g(x, y) = J(a x + b y, c x + d y)`.
pub fn action_compatibility<R: Rng>(rng: &mut R, cases: usize) -> SuiteResult {
    let mut failures = Vec::new();
    let forms = sample_forms();
    for j in &forms {
        let f = j.field();
        for _ in 0..cases {
            let g = random_group_elem(rng, f);
            let (x, y) = (random_elem(rng, f, 5), random_elem(rng, f, 5));
            let lhs = j.act(&g).evaluate(&x, &y);
            let rhs = j.evaluate(&(&(&g.a * &x) + &(&g.b * &y)), &(&(&g.c * &x) + &(&g.d * &y)));
            if lhs != rhs {
                failures.push(format!("{} form over {}: action and evaluation disagree", j.kind(), f.poly()));
            }
        }
    }
    SuiteResult { name: "action/evaluation compatibility", cases: cases * forms.len(), failures }
}

/// Targets used by the numeric suites.
pub fn sample_targets(prec: u32) -> Vec<(&'static str, TargetVector, crate::EmbeddingSet)> {
    let mut out = Vec::new();
    let q = field(&[0, 1]);
    let e = isolate_roots(&q, prec).expect("Q");
    let z = quad_zeros(&QuadForm::from_ints(&q, &[1], &[-1], &[-1]), &e, &[1]).expect("golden ratio");
    out.push(("golden ratio", z, e));
    let r2 = field(&[-2, 0, 1]);
    let e = isolate_roots(&r2, prec).expect("Q(sqrt 2)");
    let z = quad_zeros(&QuadForm::from_ints(&r2, &[1], &[0], &[-3]), &e, &[1, 1]).expect("sqrt 3");
    out.push(("(sqrt 3, sqrt 3)", z, e));
    let gi = field(&[1, 0, 1]);
    let cm = cm_structure(&gi).expect("Q(i)");
    let e = isolate_roots(&gi, prec).expect("Q(i)");
    let s = Settings::with_prec(prec);
    let z =
        corollary_vector(&FieldElem::zero(&gi), &FieldElem::from_i64(&gi, 3), &[Alpha::from_i64(1)], &[1], &cm, &e, &s)
            .expect("corollary point");
    out.push(("sqrt(3)/2 + 3i/2", z, e));
    out
}

/// `m(t*)^2 <= quality` for random pairs.
pub fn balance<R: Rng>(rng: &mut R, pairs: usize, prec: u32) -> SuiteResult {
    let mut failures = Vec::new();
    let targets = sample_targets(prec);
    let mut done = 0;
    while done < pairs {
        let (name, z, e) = &targets[done % targets.len()];
        let f = e.field();
        let q = random_integral(rng, f, 12);
        if q.iter().all(|&c| c == 0) {
            continue;
        }
        let p = random_integral(rng, f, 20);
        let a = Approximant::new(p, q).expect("nonzero q");
        done += 1;
        match balance_check(z, &a, e) {
            Ok(rec) if rec.holds => {}
            Ok(rec) => failures.push(format!(
                "{name}: {a:?} gives m^2 = {} above quality {}",
                rec.point.m.square(),
                rec.quality
            )),
            Err(Error::FactorZero) => {}
            Err(err) => failures.push(format!("{name}: {a:?}: {err}")),
        }
    }
    SuiteResult { name: "balance inequality", cases: pairs, failures }
}

/// Enclosures at precision `2 prec` lie inside those at `prec`.
pub fn refinement<R: Rng>(rng: &mut R, cases: usize, prec: u32) -> SuiteResult {
    let mut failures = Vec::new();
    for f in sample_fields() {
        let (Ok(e1), Ok(e2)) = (isolate_roots(&f, prec), isolate_roots(&f, 2 * prec)) else {
            failures.push(format!("{}: root isolation failed", f.poly()));
            continue;
        };
        for _ in 0..cases {
            let a = random_elem(rng, &f, 9);
            let (v1, v2) = (e1.embed(&a).real_coords(), e2.embed(&a).real_coords());
            for (x, y) in v1.iter().zip(&v2) {
                if !x.encloses(y) {
                    failures.push(format!(
                        "{}: enclosure of {a} at {} bits escapes the one at {prec}",
                        f.poly(),
                        2 * prec
                    ));
                }
            }
        }
    }
    for (name, z, e) in sample_targets(prec) {
        let fine = e.refine(2 * prec).and_then(|e2| z.refine(&e2));
        match fine {
            Ok(z2) => {
                for (x, y) in z.components.real_coords().iter().zip(&z2.components.real_coords()) {
                    if !x.encloses(y) {
                        failures.push(format!("{name}: refined target escapes the coarse enclosure"));
                    }
                }
            }
            Err(err) => failures.push(format!("{name}: {err}")),
        }
    }
    SuiteResult { name: "containment under refinement", cases: cases * sample_fields().len(), failures }
}

/// Anisotropy verdicts of the sample forms, for comparison across precisions.
pub fn verdicts(prec: u32) -> Vec<(String, Option<Status>)> {
    sample_forms()
        .iter()
        .map(|j| {
            let label = format!(
                "{} {} {} {} over {}",
                j.kind(),
                j.coefficients().0,
                j.coefficients().1,
                j.coefficients().2,
                j.field().poly()
            );
            let status = isolate_roots(j.field(), prec)
                .ok()
                .and_then(|e| j.anisotropy(&e, &Settings::with_prec(prec)).ok())
                .map(|v| v.status);
            (label, status)
        })
        .collect()
}

/// All suites at one precision.
pub fn run_all<R: Rng>(rng: &mut R, prec: u32) -> Vec<SuiteResult> {
    vec![
        field_axioms(rng, 20),
        squares(rng, 6),
        conjugation(rng, 20),
        discriminant_invariance(rng, 20),
        action_compatibility(rng, 10),
        balance(rng, 100, prec),
        refinement(rng, 10, prec),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn suites_pass_at_default_precision() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for r in run_all(&mut rng, 128) {
            assert!(r.passed(), "{}: {:?}", r.name, r.failures);
        }
    }
}
