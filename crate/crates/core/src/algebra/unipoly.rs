//! Dense univariate polynomials over any [`Field`].

use num_bigint::BigUint;

use super::field::{FiniteField, Field};
use crate::error::{Error, Result};

/// Coefficients stored lowest degree first, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone + Eq> UniPoly<E> {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs<F: Field<Elem = E>>(k: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| k.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints<F: Field<Elem = E>>(k: &F, ints: &[i64]) -> Self {
        Self::from_coeffs(k, ints.iter().map(|&v| k.from_int(v)).collect())
    }

    pub fn constant<F: Field<Elem = E>>(k: &F, c: E) -> Self {
        Self::from_coeffs(k, vec![c])
    }

    pub fn one<F: Field<Elem = E>>(k: &F) -> Self {
        Self::constant(k, k.one())
    }

    /// `c * x^deg`
    pub fn monomial<F: Field<Elem = E>>(k: &F, c: E, deg: usize) -> Self {
        let mut coeffs = vec![k.zero(); deg + 1];
        coeffs[deg] = c;
        Self::from_coeffs(k, coeffs)
    }

    pub fn x<F: Field<Elem = E>>(k: &F) -> Self {
        Self::monomial(k, k.one(), 1)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn coeff<F: Field<Elem = E>>(&self, k: &F, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| k.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn map<G: Field>(&self, target: &G, f: impl Fn(&E) -> G::Elem) -> UniPoly<G::Elem> {
        UniPoly::from_coeffs(target, self.coeffs.iter().map(f).collect())
    }

    pub fn add<F: Field<Elem = E>>(&self, other: &Self, k: &F) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => k.add(a, b),
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::from_coeffs(k, c)
    }

    pub fn neg<F: Field<Elem = E>>(&self, k: &F) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(|c| k.neg(c)).collect() }
    }

    pub fn sub<F: Field<Elem = E>>(&self, other: &Self, k: &F) -> Self {
        self.add(&other.neg(k), k)
    }

    pub fn scale<F: Field<Elem = E>>(&self, c: &E, k: &F) -> Self {
        Self::from_coeffs(k, self.coeffs.iter().map(|a| k.mul(a, c)).collect())
    }

    pub fn mul<F: Field<Elem = E>>(&self, other: &Self, k: &F) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![k.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = k.add(&out[i + j], &k.mul(a, b));
            }
        }
        Self::from_coeffs(k, out)
    }

    /// Quotient and remainder; `divisor` must be nonzero.
    pub fn divrem<F: Field<Elem = E>>(&self, divisor: &Self, k: &F) -> Result<(Self, Self)> {
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = k.inv(divisor.leading().unwrap()).ok_or(Error::DivisionByZero)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![k.zero(); rem.len() - db];
        for i in (db..rem.len()).rev() {
            if k.is_zero(&rem[i]) {
                continue;
            }
            let c = k.mul(&rem[i], &lead_inv);
            let shift = i - db;
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] = k.sub(&rem[shift + j], &k.mul(&c, b));
            }
            quot[shift] = c;
        }
        rem.truncate(db);
        Ok((Self::from_coeffs(k, quot), Self::from_coeffs(k, rem)))
    }

    pub fn rem<F: Field<Elem = E>>(&self, divisor: &Self, k: &F) -> Result<Self> {
        Ok(self.divrem(divisor, k)?.1)
    }

    /// Exact division; panics if `divisor` does not divide `self`.
    pub fn div_exact<F: Field<Elem = E>>(&self, divisor: &Self, k: &F) -> Self {
        let (q, r) = self.divrem(divisor, k).expect("nonzero divisor");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic<F: Field<Elem = E>>(&self, k: &F) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&k.inv(l).expect("nonzero leading"), k),
        }
    }

    pub fn is_monic<F: Field<Elem = E>>(&self, k: &F) -> bool {
        self.leading().is_some_and(|l| k.is_one(l))
    }

    pub fn derivative<F: Field<Elem = E>>(&self, k: &F) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| k.mul(a, &k.from_int(i as i64)))
            .collect();
        Self::from_coeffs(k, c)
    }

    pub fn eval<F: Field<Elem = E>>(&self, x: &E, k: &F) -> E {
        self.coeffs.iter().rev().fold(k.zero(), |acc, c| k.add(&k.mul(&acc, x), c))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd<F: Field<Elem = E>>(&self, other: &Self, k: &F) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, k).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(k)
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd<F: Field<Elem = E>>(&self, other: &Self, k: &F) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(k), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one(k));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, k).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1, k), k);
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1, k), k);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = k.inv(&l).unwrap();
                (r0.scale(&li, k), s0.scale(&li, k), t0.scale(&li, k))
            }
        }
    }

    pub fn mulmod<F: Field<Elem = E>>(&self, other: &Self, modulus: &Self, k: &F) -> Self {
        self.mul(other, k).rem(modulus, k).expect("nonzero modulus")
    }

    /// `self^e mod modulus`
    pub fn powmod<F: Field<Elem = E>>(&self, mut e: u128, modulus: &Self, k: &F) -> Self {
        let mut base = self.rem(modulus, k).expect("nonzero modulus");
        let mut acc = Self::one(k).rem(modulus, k).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, modulus, k);
            }
            e >>= 1;
            if e > 0 {
                base = base.mulmod(&base, modulus, k);
            }
        }
        acc
    }

    pub fn powmod_big<F: Field<Elem = E>>(&self, e: &BigUint, modulus: &Self, k: &F) -> Self {
        let mut acc = Self::one(k).rem(modulus, k).expect("nonzero modulus");
        let base = self.rem(modulus, k).expect("nonzero modulus");
        for i in (0..e.bits()).rev() {
            acc = acc.mulmod(&acc, modulus, k);
            if e.bit(i) {
                acc = acc.mulmod(&base, modulus, k);
            }
        }
        acc
    }

    /// `g(self) mod modulus`, Horner scheme.
    pub fn compose_mod<F: Field<Elem = E>>(&self, g: &Self, modulus: &Self, k: &F) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mulmod(g, modulus, k).add(&Self::constant(k, c.clone()), k);
        }
        acc.rem(modulus, k).expect("nonzero modulus")
    }

    pub fn format<F: Field<Elem = E>>(&self, k: &F, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if k.is_zero(c) {
                continue;
            }
            let cs = k.format(c);
            let cs = if cs.contains(['+', '-']) && i > 0 && !k.is_one(c) { format!("({cs})") } else { cs };
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            parts.push(match (i, k.is_one(c)) {
                (0, _) => cs,
                (_, true) => mono,
                _ => format!("{cs}*{mono}"),
            });
        }
        parts.join(" + ")
    }
}

/// Squarefreeness test: `true` iff `gcd(f, f')` is constant; `f' = 0` counts as not squarefree
/// unless `f` itself is a nonzero constant.
pub fn squarefree_check<F: Field>(f: &UniPoly<F::Elem>, k: &F) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Ok(true);
    }
    let d = f.derivative(k);
    if d.is_zero() {
        return Ok(false);
    }
    Ok(f.gcd(&d, k).is_constant())
}

/// `x^q mod f` for the finite field `k` of order `q`.
pub fn frobenius_x<F: FiniteField>(f: &UniPoly<F::Elem>, k: &F) -> UniPoly<F::Elem> {
    UniPoly::x(k).powmod(k.order(), f, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{PrimeField, RationalField};
    use crate::algebra::rational::int;

    #[test]
    fn gcd_over_q() {
        let q = RationalField;
        let f = UniPoly::from_coeffs(&q, vec![int(-1), int(0), int(1)]);
        let g = UniPoly::from_coeffs(&q, vec![int(-1), int(1)]);
        assert_eq!(f.gcd(&g, &q), g);
        // gcd(f, 0) is f made monic
        let h = f.scale(&int(3), &q);
        assert_eq!(h.gcd(&UniPoly::zero(), &q), f);
        assert!(UniPoly::<num_rational::BigRational>::zero().gcd(&UniPoly::zero(), &q).is_zero());
    }

    #[test]
    fn gcd_over_f2_by_hand() {
        // x^2+1 = (x+1)^2 and x^2+x = x(x+1) over F_2
        let k = PrimeField::new(2).unwrap();
        let f = UniPoly::from_ints(&k, &[1, 0, 1]);
        let g = UniPoly::from_ints(&k, &[0, 1, 1]);
        assert_eq!(f.gcd(&g, &k), UniPoly::from_ints(&k, &[1, 1]));
    }

    #[test]
    fn squarefree_examples() {
        let k = PrimeField::new(5).unwrap();
        assert!(squarefree_check(&UniPoly::from_ints(&k, &[-1, 0, 1]), &k).unwrap());
        assert!(!squarefree_check(&UniPoly::from_ints(&k, &[1, -2, 1]), &k).unwrap());
        // x^5 + 1 = (x+1)^5: derivative vanishes
        assert!(!squarefree_check(&UniPoly::from_ints(&k, &[1, 0, 0, 0, 0, 1]), &k).unwrap());
        assert_eq!(squarefree_check(&UniPoly::zero(), &k), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn xgcd_identity() {
        let k = PrimeField::new(13).unwrap();
        let a = UniPoly::from_ints(&k, &[3, 1, 4, 1, 5]);
        let b = UniPoly::from_ints(&k, &[2, 7, 1]);
        let (g, s, t) = a.xgcd(&b, &k);
        assert_eq!(s.mul(&a, &k).add(&t.mul(&b, &k), &k), g);
        assert_eq!(g, a.gcd(&b, &k));
    }

    #[test]
    fn format_poly() {
        let k = PrimeField::new(5).unwrap();
        assert_eq!(UniPoly::from_ints(&k, &[2, 0, 1]).format(&k, "t"), "t^2 + 2");
        assert_eq!(UniPoly::from_ints(&k, &[0, 3]).format(&k, "t"), "3*t");
    }
}
