use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactnum::field::{FieldElem, NumberField};

/// An element `[[a, b], [c, d]]` of `SL_2` over the order.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElem {
    pub a: FieldElem,
    pub b: FieldElem,
    pub c: FieldElem,
    pub d: FieldElem,
}

impl GroupElem {
    pub fn new(a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem) -> Result<GroupElem> {
        for x in [&a, &b, &c, &d] {
            if !x.field().same(a.field()) {
                return Err(Error::MixedFields);
            }
            if !x.is_integral() {
                return Err(Error::NotIntegral);
            }
        }
        if !(&(&a * &d) - &(&b * &c)).is_one() {
            return Err(Error::NotUnimodular);
        }
        Ok(GroupElem { a, b, c, d })
    }

    pub fn identity(field: &NumberField) -> GroupElem {
        let (o, z) = (FieldElem::one(field), FieldElem::zero(field));
        GroupElem { a: o.clone(), b: z.clone(), c: z, d: o }
    }

    /// `[[1, t], [0, 1]]`.
    pub fn upper(t: FieldElem) -> Result<GroupElem> {
        let f = t.field().clone();
        GroupElem::new(FieldElem::one(&f), t, FieldElem::zero(&f), FieldElem::one(&f))
    }

    /// `[[1, 0], [t, 1]]`.
    pub fn lower(t: FieldElem) -> Result<GroupElem> {
        let f = t.field().clone();
        GroupElem::new(FieldElem::one(&f), FieldElem::zero(&f), t, FieldElem::one(&f))
    }

    pub fn compose(&self, o: &GroupElem) -> GroupElem {
        GroupElem {
            a: &(&self.a * &o.a) + &(&self.b * &o.c),
            b: &(&self.a * &o.b) + &(&self.b * &o.d),
            c: &(&self.c * &o.a) + &(&self.d * &o.c),
            d: &(&self.c * &o.b) + &(&self.d * &o.d),
        }
    }

    pub fn inverse(&self) -> GroupElem {
        GroupElem { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    /// Product of elementary matrices with the given order-coordinate entries,
    /// alternating upper and lower.
    pub fn from_elementary(field: &NumberField, steps: &[Vec<i64>]) -> GroupElem {
        let mut g = GroupElem::identity(field);
        for (i, c) in steps.iter().enumerate() {
            let coords: Vec<BigInt> = c.iter().map(|&v| BigInt::from(v)).collect();
            let t = FieldElem::from_basis_coords(field, &coords);
            let e = if i % 2 == 0 { GroupElem::upper(t) } else { GroupElem::lower(t) };
            g = g.compose(&e.expect("elementary matrices are unimodular"));
        }
        g
    }
}
