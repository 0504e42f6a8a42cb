//! Serializable descriptions of fields, forms, target vectors and
//! certificates. Numbers are strings (integers, `a/b` or decimals) so no
//! precision is lost; interval values are written as `mid±rad`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize};

use crate::approx::LiouvilleCertificate;
use crate::embed::decimal::{format_interval, parse_interval, parse_rational};
use crate::embed::{EmbeddingSet, PlaceVec};
use crate::error::{Error, Result};
use crate::exactnum::cm::{cm_structure_with, CMStructure};
use crate::exactnum::field::{FieldElem, NumberField};
use crate::forms::{Certificate, Form, HermForm, QuadForm, Status};
use crate::vectors::{corollary_vector, herm_circle, quad_zeros, Alpha, CirclePoint, TargetVector};
use crate::{RatPoly, Settings};

/// Significant digits used for interval output.
pub const DIGITS: u32 = 30;

#[derive(Deserialize)]
#[serde(untagged)]
enum NumOrStr {
    Int(i64),
    Float(f64),
    Str(String),
}

impl NumOrStr {
    fn into_string(self) -> String {
        match self {
            NumOrStr::Int(v) => v.to_string(),
            NumOrStr::Float(v) => v.to_string(),
            NumOrStr::Str(s) => s,
        }
    }
}

fn numbers<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<String>, D::Error> {
    Ok(Vec::<NumOrStr>::deserialize(d)?.into_iter().map(NumOrStr::into_string).collect())
}

fn opt_numbers<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Vec<String>>, D::Error> {
    Ok(Option::<Vec<NumOrStr>>::deserialize(d)?.map(|v| v.into_iter().map(NumOrStr::into_string).collect()))
}

fn number<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<String, D::Error> {
    Ok(NumOrStr::deserialize(d)?.into_string())
}

fn opt_number<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<String>, D::Error> {
    Ok(Option::<NumOrStr>::deserialize(d)?.map(NumOrStr::into_string))
}

fn rationals(v: &[String]) -> Result<Vec<BigRational>> {
    v.iter().map(|s| parse_rational(s)).collect()
}

fn elem(field: &NumberField, v: &[String]) -> Result<FieldElem> {
    if v.len() > field.degree() {
        return Err(Error::InvalidInput(format!(
            "{} coordinates given for a degree {} field",
            v.len(),
            field.degree()
        )));
    }
    Ok(FieldElem::new(field, rationals(v)?))
}

/// `poly` lists the coefficients `c0, c1, ..., 1` of the monic defining
/// polynomial; `integral_basis` optionally gives power-basis coordinates of a
/// basis of a larger order; `cm` optionally gives the image of `theta` under
/// complex conjugation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    #[serde(deserialize_with = "numbers")]
    pub poly: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub integral_basis: Option<Vec<Vec<String>>>,
    #[serde(default, deserialize_with = "opt_numbers", skip_serializing_if = "Option::is_none")]
    pub cm: Option<Vec<String>>,
}

impl FieldSpec {
    pub fn field(&self) -> Result<NumberField> {
        let coeffs = rationals(&self.poly)?;
        if coeffs.iter().any(|c| !c.is_integer()) {
            return Err(Error::InvalidPolynomial("coefficients must be integers".into()));
        }
        let f = RatPoly::new(coeffs);
        match &self.integral_basis {
            None => NumberField::new(f),
            Some(b) => NumberField::with_basis(f, Some(b.iter().map(|v| rationals(v)).collect::<Result<_>>()?)),
        }
    }

    /// The conjugation given in the file, or one found automatically for
    /// totally imaginary fields.
    pub fn cm(&self, field: &NumberField, settings: &Settings) -> Result<Option<CMStructure>> {
        match &self.cm {
            Some(v) => Ok(Some(CMStructure::from_conj_image(field, elem(field, v)?)?)),
            None if field.signature().0 == 0 => match cm_structure_with(field, settings) {
                Ok(cm) => Ok(Some(cm)),
                Err(Error::NotCM(_)) => Ok(None),
                Err(e) => Err(e),
            },
            None => Ok(None),
        }
    }

    pub fn from_field(field: &NumberField, cm: Option<&CMStructure>) -> FieldSpec {
        let basis = if field.has_power_basis() {
            None
        } else {
            Some((0..field.degree()).map(|i| field.basis_element(i).coord_strings()).collect())
        };
        FieldSpec {
            poly: field.poly().coeffs().iter().map(|c| c.to_string()).collect(),
            integral_basis: basis,
            cm: cm.map(|c| c.conj_image().coord_strings()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    Quadratic,
    Hermitian,
}

/// Coefficients as power-basis coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormSpec {
    pub kind: FormKind,
    #[serde(deserialize_with = "numbers")]
    pub a: Vec<String>,
    #[serde(deserialize_with = "numbers")]
    pub b: Vec<String>,
    #[serde(deserialize_with = "numbers")]
    pub c: Vec<String>,
}

impl FormSpec {
    pub fn form(&self, field: &NumberField, cm: Option<&CMStructure>) -> Result<Form> {
        let (a, b, c) = (elem(field, &self.a)?, elem(field, &self.b)?, elem(field, &self.c)?);
        match self.kind {
            FormKind::Quadratic => Ok(Form::Quad(QuadForm::new(a, b, c)?)),
            FormKind::Hermitian => Ok(Form::Herm(HermForm::new(
                a,
                b,
                c,
                cm.ok_or_else(|| Error::NotCM("no conjugation available".into()))?,
            )?)),
        }
    }

    pub fn from_form(form: &Form) -> FormSpec {
        let (a, b, c) = form.coefficients();
        let kind = match form {
            Form::Quad(_) => FormKind::Quadratic,
            Form::Herm(_) => FormKind::Hermitian,
        };
        FormSpec { kind, a: a.coord_strings(), b: b.coord_strings(), c: c.coord_strings() }
    }
}

/// `x + y sqrt(d)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlphaSpec {
    #[serde(deserialize_with = "number")]
    pub x: String,
    #[serde(default, deserialize_with = "opt_number", skip_serializing_if = "Option::is_none")]
    pub y: Option<String>,
    #[serde(default, deserialize_with = "opt_number", skip_serializing_if = "Option::is_none")]
    pub d: Option<String>,
}

impl AlphaSpec {
    pub fn alpha(&self) -> Result<Alpha> {
        let x = parse_rational(&self.x)?;
        match (&self.y, &self.d) {
            (None, None) => Ok(Alpha::Rational(x)),
            (Some(y), Some(d)) => Ok(Alpha::Surd {
                x,
                y: parse_rational(y)?,
                d: d.trim().parse::<BigInt>().map_err(|_| Error::InvalidInput(format!("bad radicand '{d}'")))?,
            }),
            _ => Err(Error::InvalidInput("alpha needs both y and d or neither".into())),
        }
    }

    pub fn rational(s: &str) -> AlphaSpec {
        AlphaSpec { x: s.to_string(), y: None, d: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CircleSpec {
    Alpha { alpha: AlphaSpec, sign: i8 },
    Angle { angle: f64 },
}

impl CircleSpec {
    pub fn point(&self) -> Result<CirclePoint> {
        Ok(match self {
            CircleSpec::Alpha { alpha, sign } => CirclePoint::Alpha { alpha: alpha.alpha()?, sign: *sign },
            CircleSpec::Angle { angle } => CirclePoint::Angle(*angle),
        })
    }
}

/// How to build a target vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum VectorSpec {
    /// A zero of the quadratic form, one sign per place (`+` or `-`).
    QuadZero { signs: String },
    /// A point of the zero circles of the Hermitian form.
    HermCircle { params: Vec<CircleSpec> },
    /// `f + sqrt(e) (alpha + sign i sqrt(4 - alpha^2)) / 2` per complex place.
    Corollary {
        #[serde(deserialize_with = "numbers")]
        f: Vec<String>,
        #[serde(deserialize_with = "numbers")]
        e: Vec<String>,
        alphas: Vec<AlphaSpec>,
        signs: String,
    },
    /// The image of a field element.
    FieldPoint {
        #[serde(deserialize_with = "numbers")]
        element: Vec<String>,
    },
}

pub fn parse_signs(s: &str) -> Result<Vec<i8>> {
    s.chars()
        .map(|c| match c {
            '+' => Ok(1),
            '-' => Ok(-1),
            _ => Err(Error::InvalidInput(format!("signs must be '+' or '-', got '{c}'"))),
        })
        .collect()
}

pub fn format_signs(s: &[i8]) -> String {
    s.iter().map(|&x| if x < 0 { '-' } else { '+' }).collect()
}

impl VectorSpec {
    pub fn build(
        &self,
        form: Option<&Form>,
        cm: Option<&CMStructure>,
        e: &EmbeddingSet,
        settings: &Settings,
    ) -> Result<TargetVector> {
        let field = e.field();
        match self {
            VectorSpec::QuadZero { signs } => match form {
                Some(Form::Quad(q)) => quad_zeros(q, e, &parse_signs(signs)?),
                _ => Err(Error::InvalidInput("a quad-zero vector needs a quadratic form".into())),
            },
            VectorSpec::HermCircle { params } => match form {
                Some(Form::Herm(h)) => {
                    herm_circle(h, e, &params.iter().map(CircleSpec::point).collect::<Result<Vec<_>>>()?)
                }
                _ => Err(Error::InvalidInput("a herm-circle vector needs a Hermitian form".into())),
            },
            VectorSpec::Corollary { f, e: ee, alphas, signs } => {
                let cm = cm.ok_or_else(|| Error::NotCM("no conjugation available".into()))?;
                let alphas = alphas.iter().map(AlphaSpec::alpha).collect::<Result<Vec<_>>>()?;
                corollary_vector(&elem(field, f)?, &elem(field, ee)?, &alphas, &parse_signs(signs)?, cm, e, settings)
            }
            VectorSpec::FieldPoint { element } => Ok(TargetVector::field_point(&elem(field, element)?, e)),
        }
    }
}

/// A constructed vector: its recipe and enclosures of its components,
/// real places first, then `re`/`im` per complex place.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorFile {
    pub spec: VectorSpec,
    #[serde(default)]
    pub components: Vec<String>,
    #[serde(default)]
    pub precision: u32,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub config_hash: String,
}

impl VectorFile {
    pub fn new(spec: VectorSpec, z: &TargetVector, config_hash: &str) -> VectorFile {
        VectorFile {
            spec,
            components: z.components.real_coords().iter().map(|x| format_interval(x, DIGITS)).collect(),
            precision: z.prec,
            config_hash: config_hash.to_string(),
        }
    }

    /// The stored enclosures.
    pub fn enclosures(&self, r: usize) -> Result<PlaceVec<crate::Interval>> {
        let v =
            self.components.iter().map(|s| parse_interval(s, self.precision.max(64))).collect::<Result<Vec<_>>>()?;
        Ok(PlaceVec::from_real_coords(r, &v))
    }
}

/// JSON form of a [`LiouvilleCertificate`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub kind: String,
    pub denominator: String,
    pub kappa: Vec<String>,
    pub lambda: String,
    pub c_prime: String,
    pub regime: String,
    pub status: Status,
    pub evidence: Certificate,
    pub precision: u32,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub config_hash: String,
}

impl CertificateFile {
    pub fn new(c: &LiouvilleCertificate, config_hash: &str) -> CertificateFile {
        CertificateFile {
            kind: c.kind.to_string(),
            denominator: c.denominator.to_string(),
            kappa: c.kappa.iter().map(|k| format_interval(k, DIGITS)).collect(),
            lambda: format_interval(&c.lambda, DIGITS),
            c_prime: format_interval(&c.c_prime, DIGITS),
            regime: c.regime.to_string(),
            status: c.verdict.status,
            evidence: c.verdict.certificate.clone(),
            precision: c.prec,
            config_hash: config_hash.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isolate_roots;

    #[test]
    fn builds_from_specs() {
        let fs = FieldSpec { poly: vec!["1".into(), "0".into(), "1".into()], integral_basis: None, cm: None };
        let f = fs.field().unwrap();
        let s = Settings::default();
        let cm = fs.cm(&f, &s).unwrap().unwrap();
        let e = isolate_roots(&f, 128).unwrap();
        let form =
            FormSpec { kind: FormKind::Hermitian, a: vec!["1".into()], b: vec!["0".into()], c: vec!["-3".into()] }
                .form(&f, Some(&cm))
                .unwrap();
        let spec = VectorSpec::Corollary {
            f: vec!["0".into()],
            e: vec!["3".into()],
            alphas: vec![AlphaSpec::rational("1")],
            signs: "+".into(),
        };
        let z = spec.build(Some(&form), Some(&cm), &e, &s).unwrap();
        let file = VectorFile::new(spec, &z, "abc");
        let back = file.enclosures(0).unwrap();
        assert!(
            back.complex[0].im.encloses(&z.components.complex[0].im)
                || back.complex[0].im.overlaps(&z.components.complex[0].im)
        );
        assert_eq!(FieldSpec::from_field(&f, Some(&cm)).cm, Some(vec!["0".to_string(), "-1".to_string()]));
    }

    #[test]
    fn signs_round_trip() {
        assert_eq!(format_signs(&parse_signs("+-+").unwrap()), "+-+");
        assert!(parse_signs("+x").is_err());
    }
}
