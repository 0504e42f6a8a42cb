//! Target vectors on zero sets of forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::embed::complex::Cplx;
use crate::embed::dyadic::Dyadic;
use crate::embed::interval::Interval;
use crate::embed::{EmbeddingSet, PlaceVec};
use crate::error::{Error, Result};
use crate::exactnum::cm::CMStructure;
use crate::exactnum::field::FieldElem;
use crate::forms::{Form, HermForm, QuadForm, Status};
use crate::Settings;

/// An exact real number in `[-2, 2]` parameterizing a unit-circle point:
/// either rational or `x + y sqrt(d)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Alpha {
    Rational(BigRational),
    Surd { x: BigRational, y: BigRational, d: BigInt },
}

impl Alpha {
    pub fn from_i64(v: i64) -> Alpha {
        Alpha::Rational(BigRational::from_integer(BigInt::from(v)))
    }

    fn parts(&self) -> (BigRational, BigRational, BigInt) {
        match self {
            Alpha::Rational(q) => (q.clone(), BigRational::zero(), BigInt::zero()),
            Alpha::Surd { x, y, d } => (x.clone(), y.clone(), d.clone()),
        }
    }

    /// Sign of `x + y sqrt(d)` decided exactly.
    fn sign_shifted(&self, shift: i64) -> i32 {
        let (x, y, d) = self.parts();
        let x = x + BigRational::from_integer(BigInt::from(shift));
        let sx = sign(&x);
        let sy = if d.is_zero() { 0 } else { sign(&y) };
        if sy == 0 || sx == sy {
            return if sx == 0 { sy } else { sx };
        }
        if sx == 0 {
            return sy;
        }
        // opposite signs: compare x^2 with y^2 d
        let lhs = &x * &x;
        let rhs = &y * &y * BigRational::from_integer(d);
        if lhs > rhs {
            sx
        } else if lhs < rhs {
            sy
        } else {
            0
        }
    }

    /// Exact check of `-2 <= alpha <= 2`.
    pub fn in_range(&self) -> bool {
        if let Alpha::Surd { d, .. } = self {
            if d.is_negative() {
                return false;
            }
        }
        self.sign_shifted(-2) <= 0 && self.sign_shifted(2) >= 0
    }

    pub fn enclose(&self, prec: u32) -> Interval {
        let (x, y, d) = self.parts();
        let xi = Interval::from_rational(&x, prec);
        if d.is_zero() || y.is_zero() {
            return xi;
        }
        xi + Interval::from_rational(&y, prec) * Interval::from_int(&d).with_prec(prec).sqrt()
    }
}

fn sign(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// A point on the unit circle.
#[derive(Debug, Clone, PartialEq)]
pub enum CirclePoint {
    /// `(alpha + sign * i sqrt(4 - alpha^2)) / 2`, exact.
    Alpha { alpha: Alpha, sign: i8 },
    /// `exp(i phi)` for a double `phi`; exploratory only.
    Angle(f64),
}

impl CirclePoint {
    pub fn enclose(&self, prec: u32) -> Result<Cplx<Interval>> {
        match self {
            CirclePoint::Alpha { alpha, sign } => {
                if !alpha.in_range() {
                    return Err(Error::InvalidInput("alpha must lie in [-2, 2]".into()));
                }
                let a = alpha.enclose(prec);
                let rest = (Interval::from_i64(4) - a.square()).sqrt();
                let im = if *sign < 0 { -rest } else { rest };
                Ok(Cplx::new(a.shift(-1), im.shift(-1)))
            }
            CirclePoint::Angle(phi) => {
                let tol = Dyadic::new(BigInt::one(), -48);
                let re = Interval::from_f64(phi.cos()).inflate(&tol).with_prec(prec);
                let im = Interval::from_f64(phi.sin()).inflate(&tol).with_prec(prec);
                Ok(Cplx::new(re, im))
            }
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, CirclePoint::Alpha { .. })
    }
}

/// How a target vector was built; enough to rebuild it at any precision.
#[derive(Debug, Clone, PartialEq)]
pub enum Provenance {
    QuadZero {
        form: QuadForm,
        signs: Vec<i8>,
    },
    HermCircle {
        form: HermForm,
        params: Vec<CirclePoint>,
    },
    /// `z_i = f_i + sqrt(e_i) u_i` on the zero set of `N(z - f w) - e N(w)`.
    Corollary {
        f: FieldElem,
        e: FieldElem,
        params: Vec<CirclePoint>,
        form: HermForm,
    },
    /// The image of a field element.
    FieldPoint(FieldElem),
    External(String),
}

impl Provenance {
    /// The form whose zero set contains the vector.
    pub fn form(&self) -> Option<Form> {
        match self {
            Provenance::QuadZero { form, .. } => Some(Form::Quad(form.clone())),
            Provenance::HermCircle { form, .. } | Provenance::Corollary { form, .. } => Some(Form::Herm(form.clone())),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        let sgn = |s: &[i8]| s.iter().map(|&x| if x < 0 { '-' } else { '+' }).collect::<String>();
        match self {
            Provenance::QuadZero { form, signs } => {
                format!("zero of quadratic form A={} B={} C={} signs {}", form.a, form.b, form.c, sgn(signs))
            }
            Provenance::HermCircle { form, params } => format!(
                "zero-circle point of Hermitian form A={} B={} C={} ({} parameters, {})",
                form.a,
                form.b,
                form.c,
                params.len(),
                if params.iter().all(|p| p.is_exact()) { "algebraic" } else { "angle" }
            ),
            Provenance::Corollary { f, e, .. } => {
                format!("algebraic point f + sqrt(e) u with f={f} e={e}")
            }
            Provenance::FieldPoint(a) => format!("field element {a}"),
            Provenance::External(s) => s.clone(),
        }
    }

    /// Whether every ingredient is exact, so certified claims may rely on it.
    pub fn is_exact(&self) -> bool {
        match self {
            Provenance::HermCircle { params, .. } | Provenance::Corollary { params, .. } => {
                params.iter().all(|p| p.is_exact())
            }
            Provenance::External(_) => false,
            _ => true,
        }
    }
}

/// A point `z` of `R^r x C^s` with certified enclosures.
#[derive(Debug, Clone)]
pub struct TargetVector {
    pub components: PlaceVec<Interval>,
    pub provenance: Provenance,
    pub prec: u32,
}

impl TargetVector {
    /// Rebuild at the precision of `e`.
    pub fn refine(&self, e: &EmbeddingSet) -> Result<TargetVector> {
        match &self.provenance {
            Provenance::QuadZero { form, signs } => quad_zeros(form, e, signs),
            Provenance::HermCircle { form, params } => herm_circle(form, e, params),
            Provenance::Corollary { f, e: ee, params, form } => {
                let components = corollary_components(f, ee, params, e)?;
                Ok(TargetVector {
                    components,
                    provenance: Provenance::Corollary {
                        f: f.clone(),
                        e: ee.clone(),
                        params: params.clone(),
                        form: form.clone(),
                    },
                    prec: e.prec(),
                })
            }
            Provenance::FieldPoint(a) => Ok(TargetVector::field_point(a, e)),
            Provenance::External(_) => Ok(self.clone()),
        }
    }

    pub fn field_point(a: &FieldElem, e: &EmbeddingSet) -> TargetVector {
        TargetVector { components: e.embed(a), provenance: Provenance::FieldPoint(a.clone()), prec: e.prec() }
    }

    pub fn external(components: PlaceVec<Interval>, description: &str) -> TargetVector {
        let prec = components.real_coords().iter().map(|x| x.prec()).max().unwrap_or(0);
        TargetVector { components, provenance: Provenance::External(description.to_string()), prec }
    }

    /// `J_i(z_i, 1)` at every place for the provenance form, if any.
    pub fn residuals(&self, e: &EmbeddingSet) -> Option<Vec<Cplx<Interval>>> {
        Some(form_residuals(&self.provenance.form()?, e, &self.components))
    }
}

/// Coefficients at each place, real places as complex numbers with zero imaginary part.
pub(crate) fn place_coeffs(a: &FieldElem, e: &EmbeddingSet) -> Vec<Cplx<Interval>> {
    let v = e.embed(a);
    v.real.into_iter().map(Cplx::real).chain(v.complex).collect()
}

pub(crate) fn components_list(z: &PlaceVec<Interval>) -> Vec<Cplx<Interval>> {
    z.real.iter().cloned().map(Cplx::real).chain(z.complex.iter().cloned()).collect()
}

/// Values `J_i(z_i, 1)`.
pub fn form_residuals(form: &Form, e: &EmbeddingSet, z: &PlaceVec<Interval>) -> Vec<Cplx<Interval>> {
    let (a, b, c) = form.coefficients();
    let (a, b, c) = (place_coeffs(a, e), place_coeffs(b, e), place_coeffs(c, e));
    let zs = components_list(z);
    match form {
        Form::Quad(_) => (0..zs.len())
            .map(|i| a[i].clone() * zs[i].clone() * zs[i].clone() + b[i].clone() * zs[i].clone() + c[i].clone())
            .collect(),
        Form::Herm(_) => {
            let r = z.real.len();
            (r..zs.len())
                .map(|i| {
                    let zi = zs[i].clone();
                    Cplx::real(a[i].re.clone()) * Cplx::real(zi.norm_sqr())
                        + b[i].conj() * zi.clone()
                        + b[i].clone() * zi.conj()
                        + c[i].clone()
                })
                .collect()
        }
    }
}

fn from_list(r: usize, list: Vec<Cplx<Interval>>) -> PlaceVec<Interval> {
    let mut it = list.into_iter();
    let real = it.by_ref().take(r).map(|z| z.re).collect();
    PlaceVec::new(real, it.collect())
}

/// One of the `2^n` zeros of a quadratic form, chosen by the sign at each place.
pub fn quad_zeros(q: &QuadForm, e: &EmbeddingSet, signs: &[i8]) -> Result<TargetVector> {
    let (r, s) = q.field().signature();
    if signs.len() != r + s {
        return Err(Error::InvalidInput(format!("expected {} signs, got {}", r + s, signs.len())));
    }
    let disc = q.discriminant();
    if disc.is_zero() {
        return Err(Error::DegenerateForm);
    }
    let ds = e.real_signs(&disc, crate::embed::MAX_PREC)?;
    if let Some(place) = ds.iter().position(|&x| x > 0) {
        return Err(Error::NotTotallyIndefinite { place });
    }
    let (a, b, c) = (place_coeffs(&q.a, e), place_coeffs(&q.b, e), place_coeffs(&q.c, e));
    let mut out = Vec::with_capacity(r + s);
    for i in 0..r + s {
        if q.a.is_zero() {
            // the other zero is at infinity
            let z = (-c[i].clone()).checked_div(&b[i]).ok_or(Error::DegenerateForm)?;
            out.push(z);
            continue;
        }
        let dd = b[i].clone() * b[i].clone() - Cplx::real(Interval::from_i64(4)) * a[i].clone() * c[i].clone();
        let root = if i < r {
            Cplx::real(dd.re.sqrt())
        } else {
            dd.sqrt_stable()
                .ok_or_else(|| Error::PrecisionExhausted { bits: e.prec(), context: "complex square root".into() })?
        };
        let root = if signs[i] < 0 { -root } else { root };
        let two_a = a[i].scale(&Interval::from_i64(2));
        let z = (root - b[i].clone())
            .checked_div(&two_a)
            .ok_or_else(|| Error::PrecisionExhausted { bits: e.prec(), context: "dividing by A".into() })?;
        out.push(z);
    }
    Ok(TargetVector {
        components: from_list(r, out),
        provenance: Provenance::QuadZero { form: q.clone(), signs: signs.to_vec() },
        prec: e.prec(),
    })
}

/// The point `-B_i/A_i + sqrt(-disc_i)/|A_i| u_i` of the zero circles.
pub fn herm_circle(h: &HermForm, e: &EmbeddingSet, params: &[CirclePoint]) -> Result<TargetVector> {
    let (_, s) = h.field().signature();
    if params.len() != s {
        return Err(Error::InvalidInput(format!("expected {s} circle parameters, got {}", params.len())));
    }
    let disc = h.discriminant();
    if disc.is_zero() {
        return Err(Error::DegenerateForm);
    }
    if h.a.is_zero() {
        return Err(Error::LineNotCircle);
    }
    let ds = e.complex_real_part_signs(&disc, crate::embed::MAX_PREC)?;
    if let Some(place) = ds.iter().position(|&x| x > 0) {
        return Err(Error::NotTotallyIndefinite { place });
    }
    let a = e.embed(&h.a).complex;
    let b = e.embed(&h.b).complex;
    let d = e.embed(&disc).complex;
    let mut out = Vec::with_capacity(s);
    for i in 0..s {
        let ai = a[i].re.clone();
        let centre = (-b[i].clone())
            .checked_div(&Cplx::real(ai.clone()))
            .ok_or_else(|| Error::PrecisionExhausted { bits: e.prec(), context: "dividing by A".into() })?;
        let radius = (-d[i].re.clone()).sqrt() / ai.abs();
        out.push(centre + params[i].enclose(e.prec())?.scale(&radius));
    }
    Ok(TargetVector {
        components: PlaceVec::new(Vec::new(), out),
        provenance: Provenance::HermCircle { form: h.clone(), params: params.to_vec() },
        prec: e.prec(),
    })
}

fn corollary_components(
    f: &FieldElem,
    ee: &FieldElem,
    params: &[CirclePoint],
    e: &EmbeddingSet,
) -> Result<PlaceVec<Interval>> {
    let fv = e.embed(f).complex;
    let ev = e.embed(ee).complex;
    let mut out = Vec::with_capacity(fv.len());
    for i in 0..fv.len() {
        let u = params[i].enclose(e.prec())?;
        out.push(fv[i].clone() + u.scale(&ev[i].re.sqrt()));
    }
    Ok(PlaceVec::new(Vec::new(), out))
}

/// `z_i = f_i + sqrt(e_i) (alpha_i + sign_i i sqrt(4 - alpha_i^2)) / 2` for a
/// totally positive `e` in the real subfield that is not a relative norm.
pub fn corollary_vector(
    f: &FieldElem,
    ee: &FieldElem,
    alphas: &[Alpha],
    signs: &[i8],
    cm: &CMStructure,
    e: &EmbeddingSet,
    settings: &Settings,
) -> Result<TargetVector> {
    let field = cm.field();
    let s = field.signature().1;
    if alphas.len() != s || signs.len() != s {
        return Err(Error::InvalidInput(format!("expected {s} alphas and signs")));
    }
    if !cm.is_fixed(ee) {
        return Err(Error::InvalidInput("e must lie in the totally real subfield".into()));
    }
    let es = e.complex_real_part_signs(ee, settings.max_prec)?;
    if let Some(place) = es.iter().position(|&x| x <= 0) {
        return Err(Error::NotTotallyPositive { place });
    }
    let plain = HermForm::new(FieldElem::one(field), FieldElem::zero(field), -ee, cm)?;
    let verdict = plain.anisotropy(e, settings)?;
    if verdict.status != Status::Anisotropic {
        return Err(Error::NormObstructionMissing(verdict.status.to_string()));
    }
    // N(z - f w) - e N(w): A = 1, B = -f, C = f tau(f) - e
    let form = HermForm::new(FieldElem::one(field), -f, &cm.relative_norm(f) - ee, cm)?;
    let params: Vec<CirclePoint> =
        alphas.iter().zip(signs).map(|(a, &sg)| CirclePoint::Alpha { alpha: a.clone(), sign: sg }).collect();
    let components = corollary_components(f, ee, &params, e)?;
    Ok(TargetVector {
        components,
        provenance: Provenance::Corollary { f: f.clone(), e: ee.clone(), params, form },
        prec: e.prec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::cm::cm_structure;
    use crate::{isolate_roots, NumberField, RatPoly};

    fn field(c: &[i64]) -> NumberField {
        NumberField::new(RatPoly::from_ints(c)).unwrap()
    }

    fn close(x: &Interval, v: f64) -> bool {
        (x.mid_f64() - v).abs() < 1e-12
    }

    #[test]
    fn quadratic_zeros() {
        let f = field(&[-2, 0, 1]);
        let e = isolate_roots(&f, 128).unwrap();
        let q = QuadForm::from_ints(&f, &[1], &[0], &[-3]);
        let z = quad_zeros(&q, &e, &[1, 1]).unwrap();
        assert!(close(&z.components.real[0], 3f64.sqrt()) && close(&z.components.real[1], 3f64.sqrt()));
        let z = quad_zeros(&q, &e, &[1, -1]).unwrap();
        assert!(close(&z.components.real[1], -(3f64.sqrt())));
        for r in z.residuals(&e).unwrap() {
            assert!(r.re.contains_zero() && r.im.contains_zero());
        }
        let rat = field(&[0, 1]);
        let er = isolate_roots(&rat, 128).unwrap();
        let g = quad_zeros(&QuadForm::from_ints(&rat, &[1], &[-1], &[-1]), &er, &[1]).unwrap();
        assert!(close(&g.components.real[0], 1.618033988749895));
    }

    #[test]
    fn hermitian_circle() {
        let gi = field(&[1, 0, 1]);
        let cm = cm_structure(&gi).unwrap();
        let e = isolate_roots(&gi, 128).unwrap();
        let h = HermForm::from_ints(&cm, &[1], &[0], &[-3]).unwrap();
        let one = CirclePoint::Alpha { alpha: Alpha::from_i64(2), sign: 1 };
        let z = herm_circle(&h, &e, &[one]).unwrap();
        assert!(close(&z.components.complex[0].re, 3f64.sqrt()) && z.components.complex[0].im.contains_zero());
        let i = CirclePoint::Alpha { alpha: Alpha::from_i64(0), sign: 1 };
        let z = herm_circle(&h, &e, &[i]).unwrap();
        assert!(close(&z.components.complex[0].im, 3f64.sqrt()));

        // 2 z zbar + (1 - i) z + (1 + i) zbar - 3 w wbar: centre -(1+i)/2, radius sqrt(8)/2
        let h2 = HermForm::from_ints(&cm, &[2], &[1, 1], &[-3]).unwrap();
        let z = herm_circle(&h2, &e, &[CirclePoint::Angle(0.0)]).unwrap();
        assert!(close(&z.components.complex[0].re, -0.5 + 2f64.sqrt()));
        let res = z.residuals(&e).unwrap();
        assert!(res[0].re.contains_zero());
    }

    #[test]
    fn corollary_points() {
        let gi = field(&[1, 0, 1]);
        let cm = cm_structure(&gi).unwrap();
        let e = isolate_roots(&gi, 128).unwrap();
        let s = Settings::default();
        let zero = FieldElem::zero(&gi);
        let three = FieldElem::from_i64(&gi, 3);
        let z = corollary_vector(&zero, &three, &[Alpha::from_i64(1)], &[1], &cm, &e, &s).unwrap();
        assert!(close(&z.components.complex[0].re, 3f64.sqrt() / 2.0));
        assert!(close(&z.components.complex[0].im, 1.5));
        let f = FieldElem::from_ints(&gi, &[1, 1]);
        let z = corollary_vector(&f, &three, &[Alpha::from_i64(0)], &[1], &cm, &e, &s).unwrap();
        assert!(close(&z.components.complex[0].re, 1.0) && close(&z.components.complex[0].im, 1.0 + 3f64.sqrt()));
        assert!(z.residuals(&e).unwrap()[0].re.contains_zero());
        let two = FieldElem::from_i64(&gi, 2);
        assert!(matches!(
            corollary_vector(&zero, &two, &[Alpha::from_i64(1)], &[1], &cm, &e, &s),
            Err(Error::NormObstructionMissing(_))
        ));
        assert!(matches!(
            corollary_vector(&zero, &-&three, &[Alpha::from_i64(1)], &[1], &cm, &e, &s),
            Err(Error::NotTotallyPositive { .. })
        ));
    }

    #[test]
    fn alpha_range_is_exact() {
        let surd = |x: i64, y: i64, d: i64| Alpha::Surd {
            x: BigRational::from_integer(x.into()),
            y: BigRational::from_integer(y.into()),
            d: d.into(),
        };
        assert!(surd(0, 1, 2).in_range());
        assert!(surd(0, 1, 4).in_range());
        assert!(!surd(0, 1, 5).in_range());
        assert!(surd(1, -1, 2).in_range());
        assert!(!surd(-1, -1, 2).in_range());
        assert!(!Alpha::Rational(BigRational::new(5.into(), 2.into())).in_range());
    }
}
