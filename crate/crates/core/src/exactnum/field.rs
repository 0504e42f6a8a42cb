//! Number fields `Q[x]/(f)` and their elements.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::factor::check_irreducible;
use super::linalg::{self, Matrix};
use crate::error::{Error, Result};
use crate::RatPoly;

#[derive(Debug, Clone)]
struct FieldData {
    poly: RatPoly,
    degree: usize,
    signature: (usize, usize),
    /// Rows: integral basis elements in power-basis coordinates.
    basis: Matrix<BigRational>,
    /// Maps power coordinates to integral-basis coordinates.
    to_basis: Matrix<BigRational>,
    power_basis: bool,
    discriminant: BigInt,
}

/// A number field `F = Q(θ)`, `θ` a root of a monic integral squarefree `f`.
/// Cheap to clone.
#[derive(Clone)]
pub struct NumberField(Arc<FieldData>);

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({})", self.0.poly)
    }
}

impl PartialEq for NumberField {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || (self.0.poly == o.0.poly && self.0.basis == o.0.basis)
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl NumberField {
    /// Build `Q[x]/(f)` with the order `Z[θ]`.
    pub fn new(f: RatPoly) -> Result<NumberField> {
        NumberField::with_basis(f, None)
    }

    /// Build the field; `integral_basis` rows are power-basis coordinates of a
    /// Z-basis of an order (defaults to powers of θ).
    pub fn with_basis(f: RatPoly, integral_basis: Option<Vec<Vec<BigRational>>>) -> Result<NumberField> {
        let degree = f
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::InvalidPolynomial("degree must be at least 1".into()))?;
        if !f.is_monic() || !f.is_integral() {
            return Err(Error::InvalidPolynomial("polynomial must be monic with integer coefficients".into()));
        }
        if f.gcd(&f.derivative()).degree() != Some(0) {
            return Err(Error::NotSquarefree);
        }
        check_irreducible(&f)?;
        let real = f.sturm().count_real_roots();
        let signature = (real, (degree - real) / 2);

        let power_basis = integral_basis.is_none();
        let basis = integral_basis.unwrap_or_else(|| linalg::identity(degree));
        if basis.len() != degree || basis.iter().any(|r| r.len() != degree) {
            return Err(Error::InvalidBasis(format!("expected {degree} vectors of length {degree}")));
        }
        let to_basis = linalg::inverse(&linalg::transpose(&basis))
            .ok_or_else(|| Error::InvalidBasis("basis vectors are linearly dependent".into()))?;

        let mut data =
            FieldData { poly: f, degree, signature, basis, to_basis, power_basis, discriminant: BigInt::zero() };
        let field = NumberField(Arc::new(data.clone()));
        if !power_basis {
            field.validate_order()?;
        }
        data.discriminant = field.compute_discriminant();
        Ok(NumberField(Arc::new(data)))
    }

    fn validate_order(&self) -> Result<()> {
        let one = FieldElem::one(self);
        if one.integral_coords().is_none() {
            return Err(Error::InvalidBasis("1 is not in the span of the basis".into()));
        }
        let elems: Vec<FieldElem> = (0..self.degree()).map(|i| self.basis_element(i)).collect();
        for a in &elems {
            for b in &elems {
                if (a * b).integral_coords().is_none() {
                    return Err(Error::InvalidBasis("basis is not closed under multiplication".into()));
                }
            }
        }
        Ok(())
    }

    fn compute_discriminant(&self) -> BigInt {
        let d = self.degree();
        let fp = FieldElem::from_poly(self, &self.poly().derivative());
        let n = fp.norm();
        let sign = if (d * (d - 1) / 2) % 2 == 1 { -1 } else { 1 };
        (n * rat(sign)).to_integer()
    }

    pub fn poly(&self) -> &RatPoly {
        &self.0.poly
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// `(r, s)`: real places and conjugate pairs of complex places.
    pub fn signature(&self) -> (usize, usize) {
        self.0.signature
    }

    /// Number of places `r + s`.
    pub fn places(&self) -> usize {
        self.0.signature.0 + self.0.signature.1
    }

    /// Discriminant of the defining polynomial.
    pub fn discriminant(&self) -> &BigInt {
        &self.0.discriminant
    }

    pub fn has_power_basis(&self) -> bool {
        self.0.power_basis
    }

    pub fn basis_matrix(&self) -> &Matrix<BigRational> {
        &self.0.basis
    }

    pub fn basis_element(&self, i: usize) -> FieldElem {
        FieldElem::new(self, self.0.basis[i].clone())
    }

    /// Short description of the order used for enumeration.
    pub fn order_name(&self) -> String {
        if self.0.power_basis {
            "Z[theta]".to_string()
        } else {
            "user integral basis".to_string()
        }
    }

    pub fn theta(&self) -> FieldElem {
        let mut c = vec![BigRational::zero(); self.degree()];
        if self.degree() == 1 {
            // θ is the rational root of x - c0
            c[0] = -self.poly().coeff(0);
        } else {
            c[1] = BigRational::one();
        }
        FieldElem { field: self.clone(), coords: c }
    }

    pub fn same(&self, o: &NumberField) -> bool {
        self == o
    }
}

/// An element of a number field, stored by power-basis coordinates.
#[derive(Clone, PartialEq)]
pub struct FieldElem {
    field: NumberField,
    coords: Vec<BigRational>,
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        f.write_str("t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl FieldElem {
    pub fn new(field: &NumberField, mut coords: Vec<BigRational>) -> FieldElem {
        let d = field.degree();
        if coords.len() > d {
            let p = RatPoly::new(coords);
            return FieldElem::from_poly(field, &p);
        }
        coords.resize(d, BigRational::zero());
        FieldElem { field: field.clone(), coords }
    }

    pub fn from_poly(field: &NumberField, p: &RatPoly) -> FieldElem {
        let r = if p.degree().is_some_and(|d| d >= field.degree()) { p.rem(field.poly()) } else { p.clone() };
        if field.degree() == 1 {
            // evaluate at the rational root
            let root = -field.poly().coeff(0);
            return FieldElem { field: field.clone(), coords: vec![p.eval(&root)] };
        }
        let mut coords = r.coeffs().to_vec();
        coords.resize(field.degree(), BigRational::zero());
        FieldElem { field: field.clone(), coords }
    }

    pub fn from_rational(field: &NumberField, q: BigRational) -> FieldElem {
        let mut coords = vec![BigRational::zero(); field.degree()];
        coords[0] = q;
        FieldElem { field: field.clone(), coords }
    }

    pub fn from_i64(field: &NumberField, v: i64) -> FieldElem {
        FieldElem::from_rational(field, rat(v))
    }

    pub fn from_ints(field: &NumberField, c: &[i64]) -> FieldElem {
        FieldElem::new(field, c.iter().map(|&v| rat(v)).collect())
    }

    pub fn zero(field: &NumberField) -> FieldElem {
        FieldElem::from_i64(field, 0)
    }

    pub fn one(field: &NumberField) -> FieldElem {
        FieldElem::from_i64(field, 1)
    }

    /// Element with the given integral-basis coordinates.
    pub fn from_basis_coords(field: &NumberField, c: &[BigInt]) -> FieldElem {
        let d = field.degree();
        let mut coords = vec![BigRational::zero(); d];
        for (i, ci) in c.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            let ci = BigRational::from_integer(ci.clone());
            for (j, b) in field.0.basis[i].iter().enumerate() {
                coords[j] = &coords[j] + &ci * b;
            }
        }
        FieldElem { field: field.clone(), coords }
    }

    pub fn from_basis_i64(field: &NumberField, c: &[i64]) -> FieldElem {
        let c: Vec<BigInt> = c.iter().map(|&v| BigInt::from(v)).collect();
        FieldElem::from_basis_coords(field, &c)
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn as_poly(&self) -> RatPoly {
        RatPoly::new(self.coords.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    /// Coordinates with respect to the field's integral basis.
    pub fn basis_coords(&self) -> Vec<BigRational> {
        if self.field.0.power_basis {
            return self.coords.clone();
        }
        linalg::mat_vec(&self.field.0.to_basis, &self.coords)
    }

    /// Integer coordinates in the integral basis, if the element lies in the order.
    pub fn integral_coords(&self) -> Option<Vec<BigInt>> {
        self.basis_coords().into_iter().map(|c| if c.is_integer() { Some(c.to_integer()) } else { None }).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.integral_coords().is_some()
    }

    /// Least positive integer `D` with `D * self` in the order.
    pub fn denominator(&self) -> BigInt {
        self.basis_coords().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    fn check(&self, o: &FieldElem) -> Result<()> {
        if self.field.same(&o.field) {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn checked_add(&self, o: &FieldElem) -> Result<FieldElem> {
        self.check(o)?;
        Ok(FieldElem {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, o: &FieldElem) -> Result<FieldElem> {
        self.check(o)?;
        Ok(FieldElem {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn checked_mul(&self, o: &FieldElem) -> Result<FieldElem> {
        self.check(o)?;
        let p = &self.as_poly() * &o.as_poly();
        Ok(FieldElem::from_poly(&self.field, &p))
    }

    /// Multiplicative inverse via the extended gcd with `f`.
    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = self.as_poly().ext_gcd(self.field.poly());
        if g.degree() != Some(0) {
            return Err(Error::ReducibleDetected(format!("zero divisor found; common factor {g}")));
        }
        Ok(FieldElem::from_poly(&self.field, &s))
    }

    pub fn checked_div(&self, o: &FieldElem) -> Result<FieldElem> {
        self.checked_mul(&o.inv()?)
    }

    pub fn scale(&self, k: &BigRational) -> FieldElem {
        FieldElem { field: self.field.clone(), coords: self.coords.iter().map(|c| c * k).collect() }
    }

    pub fn pow(&self, n: u32) -> FieldElem {
        let mut acc = FieldElem::one(&self.field);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// Evaluate this element's coordinate polynomial at `g` (same field).
    pub fn substitute(&self, g: &FieldElem) -> FieldElem {
        let mut acc = FieldElem::zero(&self.field);
        for c in self.coords.iter().rev() {
            acc = &(&acc * g) + &FieldElem::from_rational(&self.field, c.clone());
        }
        acc
    }

    /// Matrix of multiplication by `self` on the power basis (columns are
    /// `self * θ^j`).
    pub fn mult_matrix(&self) -> Matrix<BigRational> {
        let d = self.field.degree();
        let theta = self.field.theta();
        let mut col = self.clone();
        let mut cols = Vec::with_capacity(d);
        for _ in 0..d {
            cols.push(col.coords.clone());
            col = &col * &theta;
        }
        linalg::transpose(&cols)
    }

    /// Absolute norm `N_{F/Q}`.
    pub fn norm(&self) -> BigRational {
        if self.field.degree() == 1 {
            return self.coords[0].clone();
        }
        linalg::determinant(&self.mult_matrix())
    }

    /// Power-basis coordinates as strings such as `"3"` or `"-1/2"`.
    pub fn coord_strings(&self) -> Vec<String> {
        self.coords.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_coord_strings(field: &NumberField, c: &[String]) -> Result<FieldElem> {
        if c.len() > field.degree() {
            return Err(Error::InvalidInput(format!("{} coordinates for a degree-{} field", c.len(), field.degree())));
        }
        let coords = c.iter().map(|s| crate::embed::decimal::parse_rational(s)).collect::<Result<Vec<_>>>()?;
        Ok(FieldElem::new(field, coords))
    }

    pub fn trace(&self) -> BigRational {
        let m = self.mult_matrix();
        (0..m.len()).fold(BigRational::zero(), |a, i| a + &m[i][i])
    }
}

impl Add<&FieldElem> for &FieldElem {
    type Output = FieldElem;
    fn add(self, o: &FieldElem) -> FieldElem {
        self.checked_add(o).expect("mixed fields")
    }
}

impl Sub<&FieldElem> for &FieldElem {
    type Output = FieldElem;
    fn sub(self, o: &FieldElem) -> FieldElem {
        self.checked_sub(o).expect("mixed fields")
    }
}

impl Mul<&FieldElem> for &FieldElem {
    type Output = FieldElem;
    fn mul(self, o: &FieldElem) -> FieldElem {
        self.checked_mul(o).expect("mixed fields")
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem { field: self.field.clone(), coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(c: &[i64]) -> NumberField {
        NumberField::new(RatPoly::from_ints(c)).unwrap()
    }

    #[test]
    fn signatures() {
        assert_eq!(field(&[-5, 0, 1]).signature(), (2, 0));
        assert_eq!(field(&[1, 0, 1]).signature(), (0, 1));
        assert_eq!(field(&[1, -1, 1, -1, 1]).signature(), (0, 2));
        assert_eq!(field(&[-2, 0, 0, 1]).signature(), (1, 1));
    }

    #[test]
    fn arithmetic_examples() {
        let f = field(&[-5, 0, 1]);
        let s = f.theta();
        assert_eq!(&s * &s, FieldElem::from_i64(&f, 5));

        let g = field(&[1, 0, 1]);
        let a = FieldElem::from_ints(&g, &[1, 1]);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(a.inv().unwrap(), FieldElem::new(&g, vec![half.clone(), -half]));

        let h = field(&[-2, 0, 0, 1]);
        let expected = FieldElem::new(&h, vec![rat(0), rat(0), BigRational::new(1.into(), 2.into())]);
        assert_eq!(h.theta().inv().unwrap(), expected);
    }

    #[test]
    fn errors() {
        let g = field(&[1, 0, 1]);
        assert_eq!(FieldElem::zero(&g).inv(), Err(Error::DivisionByZero));
        let h = field(&[-2, 0, 1]);
        let a = g.theta();
        assert_eq!(a.checked_add(&h.theta()), Err(Error::MixedFields));
        assert_eq!(NumberField::new(RatPoly::from_ints(&[1, 2, 1])).unwrap_err(), Error::NotSquarefree);
        assert!(matches!(NumberField::new(RatPoly::from_ints(&[-1, 0, 1])), Err(Error::ReducibleDetected(_))));
        assert!(matches!(NumberField::new(RatPoly::from_ints(&[1, 0, 2])), Err(Error::InvalidPolynomial(_))));
    }

    #[test]
    fn norm_and_discriminant() {
        let f = field(&[-2, 0, 1]);
        let a = FieldElem::from_ints(&f, &[3, 1]);
        assert_eq!(a.norm(), rat(7));
        assert_eq!(f.discriminant(), &BigInt::from(8));
        assert_eq!(field(&[1, 0, 1]).discriminant(), &BigInt::from(-4));
        assert_eq!(field(&[-2, 0, 0, 1]).discriminant(), &BigInt::from(-108));
        assert_eq!(field(&[1, -1, 1, -1, 1]).discriminant(), &BigInt::from(125));
    }

    #[test]
    fn custom_integral_basis() {
        let half = BigRational::new(1.into(), 2.into());
        let basis = vec![vec![rat(1), rat(0)], vec![half.clone(), half.clone()]];
        let f = NumberField::with_basis(RatPoly::from_ints(&[-5, 0, 1]), Some(basis)).unwrap();
        let phi = f.basis_element(1);
        assert_eq!(phi.integral_coords(), Some(vec![BigInt::from(0), BigInt::from(1)]));
        assert_eq!(&(&phi * &phi) - &phi, FieldElem::one(&f));
        let bad = vec![vec![rat(1), rat(0)], vec![rat(0), half]];
        assert!(NumberField::with_basis(RatPoly::from_ints(&[-5, 0, 1]), Some(bad)).is_err());
    }

    #[test]
    fn degree_one_field() {
        let q = field(&[0, 1]);
        assert_eq!(q.signature(), (1, 0));
        let a = FieldElem::from_i64(&q, 22);
        let b = FieldElem::from_i64(&q, 7);
        assert_eq!(a.checked_div(&b).unwrap().as_rational().unwrap(), BigRational::new(22.into(), 7.into()));
    }
}
