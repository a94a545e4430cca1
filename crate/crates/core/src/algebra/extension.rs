//! Extension fields `F_{p^n} = F_p[t]/(m(t))` with a canonical modulus.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use smallvec::SmallVec;

use super::field::{FiniteField, Field, PrimeField};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// Coordinates `(c_0, ..., c_{n-1})` of `c_0 + c_1 t + ... + c_{n-1} t^{n-1}`.
///
/// The derived ordering compares `c_0` first; this is the canonical element
/// order used for sorting roots, points and lines.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElem(pub SmallVec<[u32; 8]>);

impl fmt::Debug for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct ExtInner {
    prime: PrimeField,
    degree: usize,
    /// Monic modulus, lowest coefficient first, length `degree + 1`.
    modulus: Vec<u64>,
    small: bool,
}

/// `F_{p^n}`; cheap to clone.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtField {
    inner: Arc<ExtInner>,
}

/// Ben-Or irreducibility test over `F_p`.
pub fn is_irreducible(f: &UniPoly<u64>, k: &PrimeField) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    let f = f.monic(k);
    let x = UniPoly::x(k);
    let mut h = x.clone();
    for _ in 1..=n / 2 {
        h = h.powmod(k.p() as u128, &f, k);
        if !h.sub(&x, k).gcd(&f, k).is_constant() {
            return false;
        }
    }
    true
}

/// Canonical `F_{p^n}`: the modulus is the lexicographically smallest monic
/// irreducible polynomial of degree `n` under the order on `(c_0, c_1, ...)`.
pub fn make_extension(p: u64, n: usize) -> Result<ExtField> {
    let k = PrimeField::new(p)?;
    if n == 0 {
        return Err(Error::BadDegree(n));
    }
    if n == 1 {
        return ExtField::with_modulus(p, vec![0, 1]);
    }
    // c_0 is the most significant digit of the enumeration index
    let total = (p as u128).checked_pow(n as u32).ok_or_else(|| Error::Invalid("field too large".into()))?;
    let mut digits = vec![0u64; n];
    // c_0 = 0 is divisible by t, so start at c_0 = 1
    for idx in total / p as u128..total {
        let mut rest = idx;
        for d in digits.iter_mut().rev() {
            *d = (rest % p as u128) as u64;
            rest /= p as u128;
        }
        let mut coeffs = digits.clone();
        coeffs.push(1);
        let cand = UniPoly::from_coeffs(&k, coeffs.clone());
        if is_irreducible(&cand, &k) {
            return ExtField::with_modulus(p, coeffs);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl ExtField {
    /// Field with an explicit monic irreducible modulus (lowest coefficient first).
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        let prime = PrimeField::new(p)?;
        let poly = UniPoly::from_coeffs(&prime, modulus.iter().map(|c| c % p).collect());
        let degree = poly.degree().unwrap_or(0);
        if degree == 0 {
            return Err(Error::BadDegree(0));
        }
        if !poly.is_monic(&prime) || !is_irreducible(&poly, &prime) {
            return Err(Error::Invalid(format!("modulus {} is not monic irreducible", poly.format(&prime, "t"))));
        }
        if degree > 64 {
            return Err(Error::Invalid("extension degree above 64 unsupported".into()));
        }
        Ok(ExtField {
            inner: Arc::new(ExtInner { prime, degree, modulus: poly.into_coeffs(), small: p < (1 << 16) }),
        })
    }

    pub fn prime_field(&self) -> PrimeField {
        self.inner.prime
    }

    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn modulus_poly(&self) -> UniPoly<u64> {
        UniPoly::from_coeffs(&self.inner.prime, self.inner.modulus.clone())
    }

    /// Image of a prime-field residue.
    pub fn embed(&self, a: u64) -> ExtElem {
        let mut c = SmallVec::from_elem(0u32, self.inner.degree);
        c[0] = (a % self.inner.prime.p()) as u32;
        ExtElem(c)
    }

    /// The class of `t`.
    pub fn generator(&self) -> ExtElem {
        if self.inner.degree == 1 {
            return self.embed(self.inner.prime.neg(&self.inner.modulus[0]));
        }
        let mut c = SmallVec::from_elem(0u32, self.inner.degree);
        c[1] = 1;
        ExtElem(c)
    }

    pub fn from_coords(&self, coords: &[u64]) -> Result<ExtElem> {
        if coords.len() > self.inner.degree {
            return Err(Error::FieldMismatch(format!("{} coordinates for {}", coords.len(), self.name())));
        }
        let mut c = SmallVec::from_elem(0u32, self.inner.degree);
        for (i, v) in coords.iter().enumerate() {
            c[i] = (v % self.inner.prime.p()) as u32;
        }
        Ok(ExtElem(c))
    }

    /// `Some(residue)` when the element lies in the prime subfield.
    pub fn to_prime(&self, a: &ExtElem) -> Option<u64> {
        if a.0[1..].iter().all(|&c| c == 0) {
            Some(a.0[0] as u64)
        } else {
            None
        }
    }

    fn from_slice(&self, v: &[u64]) -> ExtElem {
        ExtElem(v.iter().map(|&c| c as u32).collect())
    }
}

impl Field for ExtField {
    type Elem = ExtElem;

    fn zero(&self) -> ExtElem {
        ExtElem(SmallVec::from_elem(0, self.inner.degree))
    }
    fn one(&self) -> ExtElem {
        self.embed(1)
    }
    fn is_zero(&self, a: &ExtElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }
    fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let p = self.inner.prime.p() as u32;
        ExtElem(
            a.0.iter()
                .zip(b.0.iter())
                .map(|(&x, &y)| {
                    let s = x as u64 + y as u64;
                    (if s >= p as u64 { s - p as u64 } else { s }) as u32
                })
                .collect(),
        )
    }
    fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let p = self.inner.prime.p() as u32;
        ExtElem(a.0.iter().zip(b.0.iter()).map(|(&x, &y)| if x >= y { x - y } else { x + (p - y) }).collect())
    }
    fn neg(&self, a: &ExtElem) -> ExtElem {
        let p = self.inner.prime.p() as u32;
        ExtElem(a.0.iter().map(|&x| if x == 0 { 0 } else { p - x }).collect())
    }
    fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let inner = &*self.inner;
        let n = inner.degree;
        let p = inner.prime.p();
        if n == 1 {
            return self.from_slice(&[(a.0[0] as u64 * b.0[0] as u64) % p]);
        }
        let mut buf = [0u64; 127];
        let buf = &mut buf[..2 * n - 1];
        if inner.small {
            for (i, &x) in a.0.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.0.iter().enumerate() {
                    buf[i + j] += x as u64 * y as u64;
                }
            }
            for k in (n..2 * n - 1).rev() {
                let c = buf[k] % p;
                if c == 0 {
                    continue;
                }
                for i in 0..n {
                    buf[k - n + i] += c * (p - inner.modulus[i]);
                }
            }
            for v in buf.iter_mut().take(n) {
                *v %= p;
            }
        } else {
            for (i, &x) in a.0.iter().enumerate() {
                for (j, &y) in b.0.iter().enumerate() {
                    buf[i + j] = (buf[i + j] + x as u64 * y as u64) % p;
                }
            }
            for k in (n..2 * n - 1).rev() {
                let c = buf[k];
                if c == 0 {
                    continue;
                }
                for i in 0..n {
                    buf[k - n + i] = (buf[k - n + i] + c * (p - inner.modulus[i])) % p;
                }
            }
        }
        self.from_slice(&buf[..n])
    }
    fn inv(&self, a: &ExtElem) -> Option<ExtElem> {
        if self.is_zero(a) {
            return None;
        }
        let k = &self.inner.prime;
        let pa = UniPoly::from_coeffs(k, a.0.iter().map(|&c| c as u64).collect());
        let (g, s, _) = pa.xgcd(&self.modulus_poly(), k);
        debug_assert!(g.degree() == Some(0));
        let mut out = s.into_coeffs();
        out.resize(self.inner.degree, 0);
        Some(self.from_slice(&out))
    }
    fn from_int(&self, v: i64) -> ExtElem {
        self.embed(self.inner.prime.reduce_i64(v))
    }
    fn characteristic(&self) -> u64 {
        self.inner.prime.p()
    }
    fn format(&self, a: &ExtElem) -> String {
        let k = &self.inner.prime;
        UniPoly::from_coeffs(k, a.0.iter().map(|&c| c as u64).collect()).format(k, "t")
    }
    fn name(&self) -> String {
        if self.inner.degree == 1 {
            format!("F_{}", self.inner.prime.p())
        } else {
            format!("F_{}^{}", self.inner.prime.p(), self.inner.degree)
        }
    }
}

impl FiniteField for ExtField {
    fn p(&self) -> u64 {
        self.inner.prime.p()
    }
    fn degree(&self) -> usize {
        self.inner.degree
    }
    fn element(&self, mut index: u128) -> ExtElem {
        let p = self.p() as u128;
        let mut c = SmallVec::from_elem(0u32, self.inner.degree);
        for v in c.iter_mut() {
            *v = (index % p) as u32;
            index /= p;
        }
        ExtElem(c)
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> ExtElem {
        let p = self.p() as u32;
        ExtElem((0..self.inner.degree).map(|_| rng.gen_range(0..p)).collect())
    }
    fn frobenius(&self, a: &ExtElem) -> ExtElem {
        self.pow(a, self.p() as u128)
    }
}

/// Fields that embed into an extension field of the same characteristic.
pub trait Subfield: FiniteField {
    /// The embedding into `target`; fails when no embedding exists.
    fn embedding(&self, target: &ExtField) -> Result<Box<dyn Fn(&Self::Elem) -> ExtElem + Send + Sync>>;
}

impl Subfield for PrimeField {
    fn embedding(&self, target: &ExtField) -> Result<Box<dyn Fn(&u64) -> ExtElem + Send + Sync>> {
        if target.p() != self.p() {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.name(), target.name())));
        }
        let t = target.clone();
        Ok(Box::new(move |a| t.embed(*a)))
    }
}

impl Subfield for ExtField {
    fn embedding(&self, target: &ExtField) -> Result<Box<dyn Fn(&ExtElem) -> ExtElem + Send + Sync>> {
        if self == target {
            return Ok(Box::new(|a| a.clone()));
        }
        if target.p() != self.p() || target.degree() % self.degree() != 0 {
            return Err(Error::IncompatibleExtension(format!("{} does not embed in {}", self.name(), target.name())));
        }
        // send t to the smallest root of its modulus in the target
        let m = UniPoly::from_coeffs(target, self.modulus().iter().map(|&c| target.embed(c)).collect());
        let root = crate::algebra::factor::roots_in_field(&m, target, 0)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::IncompatibleExtension(format!("{} does not embed in {}", self.name(), target.name())))?;
        let t = target.clone();
        Ok(Box::new(move |a: &ExtElem| {
            a.0.iter().rev().fold(t.zero(), |acc, &c| t.add(&t.mul(&acc, &root), &t.embed(c as u64)))
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn has_root(f: &UniPoly<u64>, k: &PrimeField) -> bool {
        (0..k.p()).any(|x| f.eval(&x, k) == 0)
    }

    #[test]
    fn degree_one_is_prime_field() {
        let f = make_extension(5, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.name(), "F_5");
    }

    #[test]
    fn f25_modulus_is_lex_smallest() {
        let f = make_extension(5, 2).unwrap();
        let k = PrimeField::new(5).unwrap();
        let m = f.modulus_poly();
        assert!(!has_root(&m, &k));
        // brute force: every (c0, c1) before the chosen one has a root
        for c0 in 0..5 {
            for c1 in 0..5 {
                let cand = UniPoly::from_coeffs(&k, vec![c0, c1, 1]);
                if (c0, c1) == (m.coeffs()[0], m.coeffs()[1]) {
                    return;
                }
                assert!(has_root(&cand, &k), "{cand:?} should be reducible");
            }
        }
        // t^2 + 2 is irreducible as well: -2 = 3 is a non-residue mod 5
        assert!(!has_root(&UniPoly::from_ints(&k, &[2, 0, 1]), &k));
    }

    #[test]
    fn f7_4_modulus_has_no_small_factor() {
        let f = make_extension(7, 4).unwrap();
        let k = PrimeField::new(7).unwrap();
        let m = f.modulus_poly();
        // trial division by every monic polynomial of degree 1 and 2
        for a in 0..7 {
            assert!(!m.rem(&UniPoly::from_coeffs(&k, vec![a, 1]), &k).unwrap().is_zero());
            for b in 0..7 {
                assert!(!m.rem(&UniPoly::from_coeffs(&k, vec![a, b, 1]), &k).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn not_prime() {
        assert_eq!(make_extension(6, 2).unwrap_err(), Error::NotPrime(6));
    }

    #[test]
    fn multiplicative_group_order() {
        let f = make_extension(5, 2).unwrap();
        for g in f.elements().filter(|g| !f.is_zero(g)) {
            assert_eq!(f.pow(&g, 24), f.one());
            assert_eq!(f.mul(&g, &f.inv(&g).unwrap()), f.one());
        }
    }

    #[test]
    fn frobenius_fixes_prime_subfield() {
        let f = make_extension(5, 2).unwrap();
        for c in 0..5 {
            let e = f.embed(c);
            assert_eq!(f.frobenius(&e), e);
        }
        let t = f.generator();
        assert_ne!(f.frobenius(&t), t);
        assert_eq!(f.frobenius(&f.frobenius(&t)), t);
    }

    #[test]
    fn large_prime_path_matches_definition() {
        // p above 2^16 exercises the per-product reduction branch
        let f = make_extension(65537, 2).unwrap();
        let a = f.from_coords(&[12345, 54321]).unwrap();
        let b = f.from_coords(&[65536, 3]).unwrap();
        let ab = f.mul(&a, &b);
        assert_eq!(f.mul(&ab, &f.inv(&b).unwrap()), a);
    }
}
