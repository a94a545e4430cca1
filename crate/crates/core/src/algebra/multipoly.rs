//! Sparse multivariate polynomials with an explicit monomial order.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::field::Field;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

pub const MAX_VARS: usize = 8;

/// Exponent vector; unused trailing slots are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Default)]
pub struct Monomial {
    e: [u16; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::one();
        m.e[i] = 1;
        m
    }

    pub fn from_exps(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::Invalid(format!("at most {MAX_VARS} variables supported")));
        }
        let mut m = Monomial::one();
        for (slot, &v) in m.e.iter_mut().zip(exps) {
            *slot = u16::try_from(v).map_err(|_| Error::Invalid(format!("exponent {v} too large")))?;
        }
        Ok(m)
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.e[i] as u32
    }

    pub fn exps(&self, nvars: usize) -> Vec<u32> {
        self.e[..nvars].iter().map(|&v| v as u32).collect()
    }

    pub fn degree(&self) -> u32 {
        self.e.iter().map(|&v| v as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.e.iter().all(|&v| v == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = *self;
        for (a, b) in m.e.iter_mut().zip(other.e.iter()) {
            *a += b;
        }
        m
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.e.iter().zip(other.e.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Self {
        let mut m = *other;
        for (a, b) in m.e.iter_mut().zip(self.e.iter()) {
            *a -= b;
        }
        m
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut m = *self;
        for (a, b) in m.e.iter_mut().zip(other.e.iter()) {
            *a = (*a).max(*b);
        }
        m
    }

    pub fn coprime(&self, other: &Self) -> bool {
        self.e.iter().zip(other.e.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// `Some(i)` when the monomial is a pure power `x_i^k`, `k >= 1`.
    pub fn pure_power_of(&self) -> Option<usize> {
        let mut found = None;
        for (i, &v) in self.e.iter().enumerate() {
            if v > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn with_exp(&self, i: usize, v: u32) -> Self {
        let mut m = *self;
        m.e[i] = v as u16;
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    /// `x_0 > x_1 > ... `
    #[default]
    Lex,
    GrevLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.e.cmp(&b.e),
            MonomialOrder::GrevLex => a.degree().cmp(&b.degree()).then_with(|| {
                for i in (0..MAX_VARS).rev() {
                    if a.e[i] != b.e[i] {
                        return b.e[i].cmp(&a.e[i]);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

/// Terms sorted strictly descending in the ring's order, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly<E> {
    terms: Vec<(Monomial, E)>,
}

impl<E> MultiPoly<E> {
    pub fn zero() -> Self {
        MultiPoly { terms: Vec::new() }
    }
    pub fn terms(&self) -> &[(Monomial, E)] {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn leading(&self) -> Option<&(Monomial, E)> {
        self.terms.first()
    }
    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }
}

/// Polynomial ring context: field, variable count and monomial order.
#[derive(Clone, Debug)]
pub struct PolyRing<F: Field> {
    pub field: F,
    pub nvars: usize,
    pub order: MonomialOrder,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F, nvars: usize, order: MonomialOrder) -> Result<Self> {
        if nvars == 0 || nvars > MAX_VARS {
            return Err(Error::Invalid(format!("variable count must be in 1..={MAX_VARS}, got {nvars}")));
        }
        Ok(PolyRing { field, nvars, order })
    }

    pub fn with_order(&self, order: MonomialOrder) -> Self {
        PolyRing { field: self.field.clone(), nvars: self.nvars, order }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    /// Combines like terms, drops zeros and sorts.
    pub fn from_terms(&self, terms: Vec<(Monomial, F::Elem)>) -> MultiPoly<F::Elem> {
        let k = &self.field;
        let mut map: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        for (m, c) in terms {
            match map.get_mut(&m) {
                Some(v) => *v = k.add(v, &c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !k.is_zero(c)).collect();
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        MultiPoly { terms }
    }

    /// Wrap terms already sorted descending with nonzero coefficients.
    pub fn from_sorted_terms(&self, terms: Vec<(Monomial, F::Elem)>) -> MultiPoly<F::Elem> {
        debug_assert!(terms.windows(2).all(|w| self.cmp(&w[0].0, &w[1].0).is_gt()));
        MultiPoly { terms }
    }

    /// `p` without its leading term.
    pub fn from_sorted_tail(&self, p: &MultiPoly<F::Elem>) -> MultiPoly<F::Elem> {
        MultiPoly { terms: p.terms.get(1..).map(|t| t.to_vec()).unwrap_or_default() }
    }

    /// Re-sort a polynomial produced under another order.
    pub fn reorder(&self, p: &MultiPoly<F::Elem>) -> MultiPoly<F::Elem> {
        let mut terms = p.terms.clone();
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        MultiPoly { terms }
    }

    pub fn constant(&self, c: F::Elem) -> MultiPoly<F::Elem> {
        self.from_terms(vec![(Monomial::one(), c)])
    }

    pub fn one(&self) -> MultiPoly<F::Elem> {
        self.constant(self.field.one())
    }

    pub fn var(&self, i: usize) -> MultiPoly<F::Elem> {
        assert!(i < self.nvars);
        self.from_terms(vec![(Monomial::var(i), self.field.one())])
    }

    /// Build from `(exponents, integer coefficient)` pairs.
    pub fn from_int_terms(&self, terms: &[(&[u32], i64)]) -> Result<MultiPoly<F::Elem>> {
        let mut out = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            if e.len() != self.nvars {
                return Err(Error::Invalid(format!("exponent tuple of length {} in {} variables", e.len(), self.nvars)));
            }
            out.push((Monomial::from_exps(e)?, self.field.from_int(*c)));
        }
        Ok(self.from_terms(out))
    }

    pub fn leading_coeff(&self, p: &MultiPoly<F::Elem>) -> F::Elem {
        p.terms.first().map(|t| t.1.clone()).unwrap_or_else(|| self.field.zero())
    }

    /// `p + c * m * q`, merging two sorted term lists.
    pub fn add_scaled(
        &self,
        p: &MultiPoly<F::Elem>,
        c: &F::Elem,
        m: &Monomial,
        q: &MultiPoly<F::Elem>,
    ) -> MultiPoly<F::Elem> {
        let k = &self.field;
        let mut out = Vec::with_capacity(p.terms.len() + q.terms.len());
        let mut i = 0;
        let mut qi = q.terms.iter().map(|(qm, qc)| (qm.mul(m), qc)).peekable();
        while i < p.terms.len() || qi.peek().is_some() {
            match (p.terms.get(i), qi.peek()) {
                (Some(a), Some(b)) => match self.cmp(&a.0, &b.0) {
                    Ordering::Greater => {
                        out.push(a.clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        let (bm, bc) = qi.next().unwrap();
                        out.push((bm, k.mul(c, bc)));
                    }
                    Ordering::Equal => {
                        let (_, bc) = qi.next().unwrap();
                        let v = k.add(&a.1, &k.mul(c, bc));
                        if !k.is_zero(&v) {
                            out.push((a.0, v));
                        }
                        i += 1;
                    }
                },
                (Some(a), None) => {
                    out.extend_from_slice(&p.terms[i..]);
                    let _ = a;
                    break;
                }
                (None, Some(_)) => {
                    let (bm, bc) = qi.next().unwrap();
                    out.push((bm, k.mul(c, bc)));
                }
                (None, None) => break,
            }
        }
        MultiPoly { terms: out }
    }

    pub fn add(&self, p: &MultiPoly<F::Elem>, q: &MultiPoly<F::Elem>) -> MultiPoly<F::Elem> {
        self.add_scaled(p, &self.field.one(), &Monomial::one(), q)
    }

    pub fn sub(&self, p: &MultiPoly<F::Elem>, q: &MultiPoly<F::Elem>) -> MultiPoly<F::Elem> {
        self.add_scaled(p, &self.field.neg(&self.field.one()), &Monomial::one(), q)
    }

    pub fn neg(&self, p: &MultiPoly<F::Elem>) -> MultiPoly<F::Elem> {
        MultiPoly { terms: p.terms.iter().map(|(m, c)| (*m, self.field.neg(c))).collect() }
    }

    pub fn scale(&self, p: &MultiPoly<F::Elem>, c: &F::Elem) -> MultiPoly<F::Elem> {
        if self.field.is_zero(c) {
            return MultiPoly::zero();
        }
        MultiPoly { terms: p.terms.iter().map(|(m, a)| (*m, self.field.mul(a, c))).collect() }
    }

    pub fn mul_term(&self, p: &MultiPoly<F::Elem>, c: &F::Elem, m: &Monomial) -> MultiPoly<F::Elem> {
        if self.field.is_zero(c) {
            return MultiPoly::zero();
        }
        MultiPoly { terms: p.terms.iter().map(|(pm, a)| (pm.mul(m), self.field.mul(a, c))).collect() }
    }

    pub fn mul(&self, p: &MultiPoly<F::Elem>, q: &MultiPoly<F::Elem>) -> MultiPoly<F::Elem> {
        let mut acc = MultiPoly::zero();
        for (m, c) in &q.terms {
            acc = self.add_scaled(&acc, c, m, p);
        }
        acc
    }

    pub fn pow(&self, p: &MultiPoly<F::Elem>, e: u32) -> MultiPoly<F::Elem> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, p);
        }
        acc
    }

    pub fn monic(&self, p: &MultiPoly<F::Elem>) -> MultiPoly<F::Elem> {
        match p.terms.first() {
            None => MultiPoly::zero(),
            Some((_, c)) => self.scale(p, &self.field.inv(c).expect("nonzero leading")),
        }
    }

    pub fn eval(&self, p: &MultiPoly<F::Elem>, point: &[F::Elem]) -> F::Elem {
        let k = &self.field;
        let mut acc = k.zero();
        for (m, c) in &p.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate().take(self.nvars) {
                let e = m.exp(i);
                if e > 0 {
                    t = k.mul(&t, &k.pow(x, e as u128));
                }
            }
            acc = k.add(&acc, &t);
        }
        acc
    }

    /// Replace variable `var` by the constant `value`; the variable count is unchanged.
    pub fn substitute(&self, p: &MultiPoly<F::Elem>, var: usize, value: &F::Elem) -> MultiPoly<F::Elem> {
        let k = &self.field;
        let terms = p
            .terms
            .iter()
            .map(|(m, c)| (m.with_exp(var, 0), k.mul(c, &k.pow(value, m.exp(var) as u128))))
            .collect();
        self.from_terms(terms)
    }

    /// Move coefficients into another ring (same variable count) through `f`.
    pub fn map_into<G: Field>(
        &self,
        target: &PolyRing<G>,
        p: &MultiPoly<F::Elem>,
        f: impl Fn(&F::Elem) -> G::Elem,
    ) -> MultiPoly<G::Elem> {
        target.from_terms(p.terms.iter().map(|(m, c)| (*m, f(c))).collect())
    }

    /// `Some(u)` when every term involves only variable `var`.
    pub fn as_univariate(&self, p: &MultiPoly<F::Elem>, var: usize) -> Option<UniPoly<F::Elem>> {
        let k = &self.field;
        let mut coeffs: Vec<F::Elem> = Vec::new();
        for (m, c) in &p.terms {
            if m.with_exp(var, 0) != Monomial::one() {
                return None;
            }
            let e = m.exp(var) as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, k.zero());
            }
            coeffs[e] = k.add(&coeffs[e], c);
        }
        Some(UniPoly::from_coeffs(k, coeffs))
    }

    pub fn from_univariate(&self, u: &UniPoly<F::Elem>, var: usize) -> MultiPoly<F::Elem> {
        let terms = u
            .coeffs()
            .iter()
            .enumerate()
            .map(|(e, c)| (Monomial::one().with_exp(var, e as u32), c.clone()))
            .collect();
        self.from_terms(terms)
    }

    /// Indices of variables that occur in `p`.
    pub fn support_vars(&self, p: &MultiPoly<F::Elem>) -> Vec<usize> {
        (0..self.nvars).filter(|&i| p.terms.iter().any(|(m, _)| m.exp(i) > 0)).collect()
    }

    pub fn format(&self, p: &MultiPoly<F::Elem>, names: &[&str]) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let k = &self.field;
        let parts: Vec<String> = p
            .terms
            .iter()
            .map(|(m, c)| {
                let mono: Vec<String> = (0..self.nvars)
                    .filter(|&i| m.exp(i) > 0)
                    .map(|i| {
                        let name = names.get(i).map(|s| s.to_string()).unwrap_or_else(|| format!("x{i}"));
                        if m.exp(i) == 1 {
                            name
                        } else {
                            format!("{name}^{}", m.exp(i))
                        }
                    })
                    .collect();
                let cs = k.format(c);
                let cs = if cs.contains(['+', '-']) && !mono.is_empty() { format!("({cs})") } else { cs };
                match (mono.is_empty(), k.is_one(c)) {
                    (true, _) => cs,
                    (false, true) => mono.join("*"),
                    (false, false) => format!("{cs}*{}", mono.join("*")),
                }
            })
            .collect();
        parts.join(" + ")
    }
}
