//! Factorization and root finding over finite fields.
//!
//! Squarefree decomposition, distinct-degree factorization and
//! Cantor–Zassenhaus equal-degree splitting. Randomness comes from a seeded
//! ChaCha generator so that runs are reproducible; the returned factor sets
//! do not depend on the seed.

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{FiniteField, Field};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// Canonical factor order: by degree, then coefficients from the constant term up.
fn canonical_cmp<E: Ord + Clone + Eq>(a: &UniPoly<E>, b: &UniPoly<E>) -> std::cmp::Ordering {
    a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs()))
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, i)` with `f = prod g^i`,
/// each `g` squarefree and pairwise coprime.
pub fn squarefree_decomposition<F: FiniteField>(f: &UniPoly<F::Elem>, k: &F) -> Vec<(UniPoly<F::Elem>, usize)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let f = f.monic(k);
    let p = k.p() as usize;
    let c0 = f.gcd(&f.derivative(k), k);
    let mut w = f.div_exact(&c0, k);
    let mut c = c0;
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c, k);
        let fac = w.div_exact(&y, k);
        if !fac.is_constant() {
            out.push((fac, i));
        }
        c = c.div_exact(&y, k);
        w = y;
        i += 1;
    }
    if !c.is_constant() {
        // c is a polynomial in x^p
        let root: Vec<F::Elem> = c.coeffs().iter().step_by(p).map(|a| k.pth_root(a)).collect();
        let root = UniPoly::from_coeffs(k, root);
        for (g, m) in squarefree_decomposition(&root, k) {
            out.push((g, m * p));
        }
    }
    out
}

/// Distinct-degree factorization of a squarefree monic polynomial.
pub fn distinct_degree<F: FiniteField>(f: &UniPoly<F::Elem>, k: &F) -> Vec<(UniPoly<F::Elem>, usize)> {
    let mut out = Vec::new();
    let mut g = f.monic(k);
    let x = UniPoly::x(k);
    let mut h = x.rem(&g, k).unwrap_or_else(|_| UniPoly::zero());
    let mut d = 1;
    while g.degree().unwrap_or(0) >= 2 * d {
        h = h.powmod(k.order(), &g, k);
        let gd = g.gcd(&h.sub(&x, k), k);
        if !gd.is_constant() {
            g = g.div_exact(&gd, k);
            h = h.rem(&g, k).expect("nonzero");
            out.push((gd, d));
        }
        d += 1;
    }
    if !g.is_constant() {
        let deg = g.degree().unwrap();
        out.push((g, deg));
    }
    out
}

/// Split a squarefree monic product of irreducibles of degree `d` (odd `q`).
pub fn equal_degree_split<F: FiniteField>(
    f: &UniPoly<F::Elem>,
    d: usize,
    k: &F,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<UniPoly<F::Elem>>> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n == d {
        return Ok(vec![f.monic(k)]);
    }
    if n == 0 {
        return Ok(vec![]);
    }
    if k.p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let q = BigUint::from(k.order());
    let e: BigUint = (q.pow(d as u32) - 1u32) / 2u32;
    let one = UniPoly::one(k);
    loop {
        let a = UniPoly::from_coeffs(k, (0..n).map(|_| k.random(rng)).collect());
        if a.is_constant() {
            continue;
        }
        let g = f.gcd(&a, k);
        let cand = if !g.is_constant() {
            g
        } else {
            let b = a.powmod_big(&e, f, k).sub(&one, k);
            f.gcd(&b, k)
        };
        if !cand.is_constant() && cand.degree() != Some(n) {
            let rest = f.div_exact(&cand, k);
            let mut out = equal_degree_split(&cand, d, k, rng)?;
            out.extend(equal_degree_split(&rest, d, k, rng)?);
            return Ok(out);
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicities, sorted canonically.
/// The leading coefficient is returned separately.
pub fn factor_univariate<F: FiniteField>(
    f: &UniPoly<F::Elem>,
    k: &F,
    seed: u64,
) -> Result<(F::Elem, Vec<(UniPoly<F::Elem>, usize)>)> {
    let lead = f.leading().cloned().ok_or(Error::ZeroPolynomial)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(UniPoly<F::Elem>, usize)> = Vec::new();
    for (sqf, mult) in squarefree_decomposition(f, k) {
        for (group, d) in distinct_degree(&sqf, k) {
            for fac in equal_degree_split(&group, d, k, &mut rng)? {
                match out.iter_mut().find(|(g, _)| *g == fac) {
                    Some(entry) => entry.1 += mult,
                    None => out.push((fac, mult)),
                }
            }
        }
    }
    out.sort_by(|a, b| canonical_cmp(&a.0, &b.0).then(a.1.cmp(&b.1)));
    Ok((lead, out))
}

/// Every root of `f` in the field `k` itself, sorted in canonical element order.
pub fn roots_in_field<F: FiniteField>(f: &UniPoly<F::Elem>, k: &F, seed: u64) -> Result<Vec<F::Elem>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Ok(vec![]);
    }
    let f = f.monic(k);
    let x = UniPoly::x(k);
    let xq = x.powmod(k.order(), &f, k);
    let g = f.gcd(&xq.sub(&x, k), k);
    let mut roots = Vec::new();
    if g.is_constant() {
        return Ok(roots);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let linear = if k.p() == 2 {
        even_char_linear_split(&g, k)
    } else {
        equal_degree_split(&g, 1, k, &mut rng)?
    };
    for l in linear {
        roots.push(k.neg(&l.coeffs()[0]));
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// In characteristic 2 the linear factors can still be recovered by
/// exhaustive evaluation when the field is small.
fn even_char_linear_split<F: FiniteField>(g: &UniPoly<F::Elem>, k: &F) -> Vec<UniPoly<F::Elem>> {
    k.elements()
        .filter(|c| k.is_zero(&g.eval(c, k)))
        .map(|c| UniPoly::from_coeffs(k, vec![k.neg(&c), k.one()]))
        .collect()
}

/// Smallest `n` such that `f` splits completely over `F_{q^n}`: the lcm of
/// the degrees in its distinct-degree factorization.
pub fn splitting_degree<F: FiniteField>(f: &UniPoly<F::Elem>, k: &F) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut l = 1usize;
    for (sqf, _) in squarefree_decomposition(f, k) {
        for (_, d) in distinct_degree(&sqf, k) {
            l = num_integer::lcm(l, d);
        }
    }
    Ok(l)
}

/// Re-expand a factorization (used by tests and self-checks).
pub fn expand<F: Field>(lead: &F::Elem, factors: &[(UniPoly<F::Elem>, usize)], k: &F) -> UniPoly<F::Elem> {
    let mut acc = UniPoly::constant(k, lead.clone());
    for (g, m) in factors {
        for _ in 0..*m {
            acc = acc.mul(g, k);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::extension::make_extension;
    use crate::algebra::field::PrimeField;

    #[test]
    fn x2_plus_1_mod_5_splits() {
        let k = PrimeField::new(5).unwrap();
        let f = UniPoly::from_ints(&k, &[1, 0, 1]);
        let (lead, fac) = factor_univariate(&f, &k, 0).unwrap();
        assert_eq!(lead, 1);
        assert_eq!(fac, vec![(UniPoly::from_ints(&k, &[-3, 1]), 1), (UniPoly::from_ints(&k, &[-2, 1]), 1)]);
        assert_eq!(roots_in_field(&f, &k, 0).unwrap(), vec![2, 3]);
    }

    #[test]
    fn x2_plus_1_mod_7_irreducible() {
        let k = PrimeField::new(7).unwrap();
        // -1 is a non-residue mod 7: no residue squares to 6
        assert!((0..7u64).all(|x| (x * x) % 7 != 6));
        let f = UniPoly::from_ints(&k, &[1, 0, 1]);
        let (_, fac) = factor_univariate(&f, &k, 0).unwrap();
        assert_eq!(fac, vec![(f.clone(), 1)]);
        assert!(roots_in_field(&f, &k, 0).unwrap().is_empty());
    }

    #[test]
    fn cube_of_linear() {
        let k = PrimeField::new(11).unwrap();
        let l = UniPoly::from_ints(&k, &[-1, 1]);
        let f = l.mul(&l, &k).mul(&l, &k);
        let (_, fac) = factor_univariate(&f, &k, 3).unwrap();
        assert_eq!(fac, vec![(l, 3)]);
    }

    #[test]
    fn pth_power_input() {
        // (x^2+1)^5 over F_5 has vanishing derivative
        let k = PrimeField::new(5).unwrap();
        let g = UniPoly::from_ints(&k, &[1, 0, 1]);
        let mut f = UniPoly::one(&k);
        for _ in 0..5 {
            f = f.mul(&g, &k);
        }
        let (lead, fac) = factor_univariate(&f, &k, 0).unwrap();
        assert_eq!(fac.iter().map(|(_, m)| *m).collect::<Vec<_>>(), vec![5, 5]);
        assert_eq!(expand(&lead, &fac, &k), f);
    }

    #[test]
    fn roots_in_f49() {
        let f49 = make_extension(7, 2).unwrap();
        let f = UniPoly::from_ints(&f49, &[1, 0, 1]);
        let roots = roots_in_field(&f, &f49, 0).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert!(f49.is_zero(&f.eval(r, &f49)));
        }
    }

    #[test]
    fn linear_root() {
        let f = make_extension(5, 3).unwrap();
        let c = f.from_coords(&[1, 2, 3]).unwrap();
        let p = UniPoly::from_coeffs(&f, vec![f.neg(&c), f.one()]);
        assert_eq!(roots_in_field(&p, &f, 0).unwrap(), vec![c]);
        assert_eq!(roots_in_field(&UniPoly::zero(), &f, 0), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn seed_independent() {
        let k = PrimeField::new(13).unwrap();
        let f = UniPoly::from_ints(&k, &[5, 3, 0, 7, 1, 1, 0, 2, 1]);
        let a = factor_univariate(&f, &k, 0).unwrap();
        for seed in 1..5 {
            assert_eq!(factor_univariate(&f, &k, seed).unwrap(), a);
        }
        assert_eq!(expand(&a.0, &a.1, &k), f);
    }

    #[test]
    fn splitting_degree_of_product() {
        let k = PrimeField::new(5).unwrap();
        // (x^2 + x + 1)(x^3 + x + 1)(x - 1): degrees 2, 3, 1 -> lcm 6
        let a = UniPoly::from_ints(&k, &[1, 1, 1]);
        let b = UniPoly::from_ints(&k, &[1, 1, 0, 1]);
        let c = UniPoly::from_ints(&k, &[-1, 1]);
        let f = a.mul(&b, &k).mul(&c, &k);
        assert_eq!(splitting_degree(&f, &k).unwrap(), 6);
    }
}
