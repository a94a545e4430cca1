//! Field elements that carry their field, for callers that mix fields at runtime.
//!
//! The generic [`Field`] trait is what the heavy algorithms use; this layer
//! checks that operands agree and reports a mismatch instead of computing garbage.

use std::fmt;

use super::extension::{ExtElem, ExtField};
use super::field::{FiniteField, Field, PrimeField, RationalField};
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    Prime(PrimeField),
    Extension(ExtField),
}

impl FieldSpec {
    pub fn name(&self) -> String {
        match self {
            FieldSpec::Rational => RationalField.name(),
            FieldSpec::Prime(k) => k.name(),
            FieldSpec::Extension(k) => k.name(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Rational(Rational),
    Residue(u64),
    Poly(ExtElem),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: FieldSpec,
    repr: Repr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
    Pow(u128),
    Frobenius,
}

impl FieldElement {
    pub fn rational(r: Rational) -> Self {
        FieldElement { field: FieldSpec::Rational, repr: Repr::Rational(r) }
    }

    pub fn residue(k: PrimeField, v: i64) -> Self {
        FieldElement { field: FieldSpec::Prime(k), repr: Repr::Residue(k.from_int(v)) }
    }

    pub fn ext(k: &ExtField, e: ExtElem) -> Self {
        FieldElement { field: FieldSpec::Extension(k.clone()), repr: Repr::Poly(e) }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match &self.repr {
            Repr::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match &self.repr {
            Repr::Residue(r) => Some(*r),
            _ => None,
        }
    }

    pub fn as_ext(&self) -> Option<&ExtElem> {
        match &self.repr {
            Repr::Poly(e) => Some(e),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match (&self.field, &self.repr) {
            (FieldSpec::Rational, Repr::Rational(r)) => RationalField.is_zero(r),
            (FieldSpec::Prime(k), Repr::Residue(r)) => k.is_zero(r),
            (FieldSpec::Extension(k), Repr::Poly(e)) => k.is_zero(e),
            _ => unreachable!(),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field.name(), other.field.name())));
        }
        Ok(())
    }

    fn binary(&self, other: &Self, op: ArithOp) -> Result<Self> {
        self.check(other)?;
        let repr = match (&self.field, &self.repr, &other.repr) {
            (FieldSpec::Rational, Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(apply2(&RationalField, a, b, op)?),
            (FieldSpec::Prime(k), Repr::Residue(a), Repr::Residue(b)) => Repr::Residue(apply2(k, a, b, op)?),
            (FieldSpec::Extension(k), Repr::Poly(a), Repr::Poly(b)) => Repr::Poly(apply2(k, a, b, op)?),
            _ => unreachable!(),
        };
        Ok(FieldElement { field: self.field.clone(), repr })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.binary(other, ArithOp::Add)
    }
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.binary(other, ArithOp::Sub)
    }
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.binary(other, ArithOp::Mul)
    }
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.binary(other, ArithOp::Div)
    }

    pub fn inv(&self) -> Result<Self> {
        self.unary(ArithOp::Inv)
    }

    pub fn pow(&self, e: u128) -> Result<Self> {
        self.unary(ArithOp::Pow(e))
    }

    /// `x^p`; the identity on `F_p`, undefined on `Q`.
    pub fn frobenius(&self) -> Result<Self> {
        self.unary(ArithOp::Frobenius)
    }

    fn unary(&self, op: ArithOp) -> Result<Self> {
        let repr = match (&self.field, &self.repr) {
            (FieldSpec::Rational, Repr::Rational(a)) => {
                if op == ArithOp::Frobenius {
                    return Err(Error::Invalid("frobenius is undefined in characteristic 0".into()));
                }
                Repr::Rational(apply1(&RationalField, a, op)?)
            }
            (FieldSpec::Prime(k), Repr::Residue(a)) => {
                Repr::Residue(if op == ArithOp::Frobenius { k.frobenius(a) } else { apply1(k, a, op)? })
            }
            (FieldSpec::Extension(k), Repr::Poly(a)) => {
                Repr::Poly(if op == ArithOp::Frobenius { k.frobenius(a) } else { apply1(k, a, op)? })
            }
            _ => unreachable!(),
        };
        Ok(FieldElement { field: self.field.clone(), repr })
    }
}

fn apply2<F: Field>(k: &F, a: &F::Elem, b: &F::Elem, op: ArithOp) -> Result<F::Elem> {
    Ok(match op {
        ArithOp::Add => k.add(a, b),
        ArithOp::Sub => k.sub(a, b),
        ArithOp::Mul => k.mul(a, b),
        ArithOp::Div => k.div(a, b).ok_or(Error::DivisionByZero)?,
        _ => return Err(Error::Invalid(format!("{op:?} is not a binary operation"))),
    })
}

fn apply1<F: Field>(k: &F, a: &F::Elem, op: ArithOp) -> Result<F::Elem> {
    Ok(match op {
        ArithOp::Inv => k.inv(a).ok_or(Error::DivisionByZero)?,
        ArithOp::Pow(e) => k.pow(a, e),
        _ => return Err(Error::Invalid(format!("{op:?} is not a unary operation"))),
    })
}

/// Apply `op` to one operand (inv, pow, frobenius) or two (add, sub, mul, div).
pub fn field_arith(op: ArithOp, operands: &[FieldElement]) -> Result<FieldElement> {
    match (op, operands) {
        (ArithOp::Add | ArithOp::Sub | ArithOp::Mul | ArithOp::Div, [a, b]) => a.binary(b, op),
        (ArithOp::Inv | ArithOp::Pow(_) | ArithOp::Frobenius, [a]) => a.unary(op),
        _ => Err(Error::Invalid(format!("{op:?} called with {} operands", operands.len()))),
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match (&self.field, &self.repr) {
            (FieldSpec::Rational, Repr::Rational(r)) => RationalField.format(r),
            (FieldSpec::Prime(k), Repr::Residue(r)) => k.format(r),
            (FieldSpec::Extension(k), Repr::Poly(e)) => k.format(e),
            _ => unreachable!(),
        };
        f.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::extension::make_extension;
    use crate::algebra::rational::int;

    #[test]
    fn inverse_and_mismatch() {
        let f7 = PrimeField::new(7).unwrap();
        let three = FieldElement::residue(f7, 3);
        assert_eq!(field_arith(ArithOp::Inv, &[three.clone()]).unwrap().as_residue(), Some(5));
        let f5 = PrimeField::new(5).unwrap();
        let err = three.add(&FieldElement::residue(f5, 1)).unwrap_err();
        assert!(matches!(err, Error::FieldMismatch(_)));
        assert_eq!(FieldElement::residue(f7, 0).inv(), Err(Error::DivisionByZero));
        assert!(three.div(&FieldElement::residue(f7, 0)).is_err());
        assert!(FieldElement::rational(int(2)).frobenius().is_err());
    }

    #[test]
    fn frobenius_on_subfield_and_group_order() {
        let f = make_extension(5, 2).unwrap();
        let c = FieldElement::ext(&f, f.embed(3));
        assert_eq!(c.frobenius().unwrap(), c);
        let g = FieldElement::ext(&f, f.generator());
        assert_eq!(g.pow(24).unwrap(), FieldElement::ext(&f, f.one()));
        assert_eq!(g.to_string(), "t");
    }
}
