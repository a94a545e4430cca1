//! Gröbner bases and zero-dimensional solving.
//!
//! Buchberger's algorithm with the normal selection strategy and the
//! Gebauer–Möller form of Buchberger's two criteria. Zero-dimensional ideals
//! are computed in grevlex first and converted to lex with FGLM, which gives
//! the same reduced lex basis at a fraction of the cost.

use std::collections::BTreeSet;

use crate::algebra::extension::{ExtElem, ExtField, Subfield};
use crate::algebra::factor::roots_in_field;
use crate::algebra::field::Field;
use crate::algebra::multipoly::{Monomial, MonomialOrder, MultiPoly, PolyRing};
use crate::algebra::unipoly::{squarefree_check, UniPoly};
use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Counts elementary reduction steps; running out is an error.
#[derive(Clone, Debug)]
pub struct Budget {
    pub limit: u64,
    pub used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::BudgetExceeded(self.limit))
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

#[derive(Clone, Debug)]
pub struct Ideal<F: Field> {
    pub ring: PolyRing<F>,
    pub generators: Vec<MultiPoly<F::Elem>>,
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: PolyRing<F>, generators: Vec<MultiPoly<F::Elem>>) -> Self {
        Ideal { ring, generators }
    }
}

/// Reduced Gröbner basis; monic elements sorted by leading monomial, largest first.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    pub ring: PolyRing<F>,
    pub polys: Vec<MultiPoly<F::Elem>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn order(&self) -> MonomialOrder {
        self.ring.order
    }

    pub fn is_unit(&self) -> bool {
        self.polys.iter().any(|p| p.leading_monomial().is_some_and(|m| m.is_one()))
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().filter_map(|p| p.leading_monomial()).collect()
    }

    /// `p` may be sorted in any order; it is re-sorted into the basis order first.
    pub fn normal_form(&self, p: &MultiPoly<F::Elem>) -> Result<MultiPoly<F::Elem>> {
        let p = &self.ring.reorder(p);
        let refs: Vec<&MultiPoly<F::Elem>> = self.polys.iter().collect();
        normal_form(&self.ring, p, &refs, &mut Budget::default())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub field: ExtField,
    pub points: Vec<Vec<ExtElem>>,
}

/// Full reduction of `p` by monic `basis`.
pub fn normal_form<F: Field>(
    ring: &PolyRing<F>,
    p: &MultiPoly<F::Elem>,
    basis: &[&MultiPoly<F::Elem>],
    budget: &mut Budget,
) -> Result<MultiPoly<F::Elem>> {
    let k = &ring.field;
    let lms: Vec<Monomial> = basis.iter().map(|g| g.leading_monomial().expect("nonzero basis element")).collect();
    let mut rest = p.clone();
    let mut rem: Vec<(Monomial, F::Elem)> = Vec::new();
    while let Some((m, c)) = rest.leading().cloned() {
        match lms.iter().position(|lm| lm.divides(&m)) {
            Some(i) => {
                budget.tick()?;
                rest = ring.add_scaled(&rest, &k.neg(&c), &lms[i].quotient_of(&m), basis[i]);
            }
            None => {
                rem.push((m, c));
                rest = ring.from_sorted_tail(&rest);
            }
        }
    }
    Ok(ring.from_sorted_terms(rem))
}

fn spoly<F: Field>(ring: &PolyRing<F>, f: &MultiPoly<F::Elem>, g: &MultiPoly<F::Elem>) -> MultiPoly<F::Elem> {
    let (fm, gm) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
    let l = fm.lcm(&gm);
    let a = ring.mul_term(f, &ring.field.one(), &fm.quotient_of(&l));
    ring.add_scaled(&a, &ring.field.neg(&ring.field.one()), &gm.quotient_of(&l), g)
}

#[derive(Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Gebauer–Möller update: add `h` (index `hi`) to the basis, pruning pairs.
fn update(lm: &[Monomial], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, hi: usize) {
    let h = lm[hi];
    let mut c: Vec<Pair> = active.iter().map(|&g| Pair { i: g, j: hi, lcm: lm[g].lcm(&h) }).collect();
    // second criterion among the new pairs
    let mut d: Vec<Pair> = Vec::new();
    while let Some(p) = c.pop() {
        let coprime = lm[p.i].coprime(&h);
        let dominated = c.iter().chain(d.iter()).any(|q| q.lcm.divides(&p.lcm));
        if coprime || !dominated {
            d.push(p);
        }
    }
    // first criterion
    let e: Vec<Pair> = d.into_iter().filter(|p| !lm[p.i].coprime(&h)).collect();
    // second criterion for old pairs
    pairs.retain(|p| {
        !(h.divides(&p.lcm) && lm[p.i].lcm(&h) != p.lcm && lm[p.j].lcm(&h) != p.lcm)
    });
    pairs.extend(e);
    active.retain(|&g| !h.divides(&lm[g]));
    active.push(hi);
}

/// Reduced Gröbner basis in the ring's own order.
pub fn groebner_in_order<F: Field>(ideal: &Ideal<F>, budget: &mut Budget) -> Result<GroebnerBasis<F>> {
    let ring = &ideal.ring;
    let mut polys: Vec<MultiPoly<F::Elem>> = Vec::new();
    let mut lm: Vec<Monomial> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut gens: Vec<MultiPoly<F::Elem>> = ideal.generators.iter().filter(|g| !g.is_zero()).map(|g| ring.reorder(g)).collect();
    gens.sort_by(|a, b| ring.cmp(&a.leading_monomial().unwrap(), &b.leading_monomial().unwrap()));
    for g in gens {
        let refs: Vec<&MultiPoly<F::Elem>> = active.iter().map(|&i| &polys[i]).collect();
        let h = normal_form(ring, &g, &refs, budget)?;
        if h.is_zero() {
            continue;
        }
        let h = ring.monic(&h);
        lm.push(h.leading_monomial().unwrap());
        polys.push(h);
        update(&lm, &mut active, &mut pairs, polys.len() - 1);
    }

    while !pairs.is_empty() {
        // normal strategy: smallest lcm first
        let mut best = 0;
        for (idx, p) in pairs.iter().enumerate().skip(1) {
            if ring.cmp(&p.lcm, &pairs[best].lcm).is_lt() {
                best = idx;
            }
        }
        let pair = pairs.swap_remove(best);
        let s = spoly(ring, &polys[pair.i], &polys[pair.j]);
        let refs: Vec<&MultiPoly<F::Elem>> = active.iter().map(|&i| &polys[i]).collect();
        let h = normal_form(ring, &s, &refs, budget)?;
        if h.is_zero() {
            continue;
        }
        let h = ring.monic(&h);
        let hm = h.leading_monomial().unwrap();
        lm.push(hm);
        polys.push(h);
        if hm.is_one() {
            return Ok(GroebnerBasis { ring: ring.clone(), polys: vec![ring.one()] });
        }
        update(&lm, &mut active, &mut pairs, polys.len() - 1);
    }

    let basis: Vec<MultiPoly<F::Elem>> = active.iter().map(|&i| polys[i].clone()).collect();
    interreduce(ring, basis, budget)
}

/// Minimize and fully interreduce a Gröbner basis.
fn interreduce<F: Field>(
    ring: &PolyRing<F>,
    mut basis: Vec<MultiPoly<F::Elem>>,
    budget: &mut Budget,
) -> Result<GroebnerBasis<F>> {
    basis.sort_by(|a, b| ring.cmp(&a.leading_monomial().unwrap(), &b.leading_monomial().unwrap()));
    let mut minimal: Vec<MultiPoly<F::Elem>> = Vec::new();
    for g in basis {
        let m = g.leading_monomial().unwrap();
        if !minimal.iter().any(|h| h.leading_monomial().unwrap().divides(&m)) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<&MultiPoly<F::Elem>> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g).collect();
        let (m, c) = minimal[i].leading().cloned().unwrap();
        let tail = ring.from_sorted_tail(&minimal[i]);
        let tail = normal_form(ring, &tail, &others, budget)?;
        let lead = ring.from_sorted_terms(vec![(m, c)]);
        out.push(ring.monic(&ring.add(&lead, &tail)));
    }
    out.sort_by(|a, b| ring.cmp(&b.leading_monomial().unwrap(), &a.leading_monomial().unwrap()));
    Ok(GroebnerBasis { ring: ring.clone(), polys: out })
}

/// Reduced lexicographic Gröbner basis with the default budget.
pub fn buchberger<F: Field>(ideal: &Ideal<F>) -> Result<GroebnerBasis<F>> {
    buchberger_with(ideal, &mut Budget::default())
}

/// Reduced lexicographic Gröbner basis. Zero-dimensional ideals go through
/// grevlex and FGLM; anything else is computed in lex directly.
pub fn buchberger_with<F: Field>(ideal: &Ideal<F>, budget: &mut Budget) -> Result<GroebnerBasis<F>> {
    let lex = ideal.ring.with_order(MonomialOrder::Lex);
    let grev = ideal.ring.with_order(MonomialOrder::GrevLex);
    let gb = groebner_in_order(&Ideal::new(grev, ideal.generators.clone()), budget)?;
    if is_zero_dimensional(&gb) {
        return fglm(&gb, &lex, budget);
    }
    groebner_in_order(&Ideal::new(lex, ideal.generators.clone()), budget)
}

/// Every variable has a pure power among the leading monomials (or the basis is `{1}`).
pub fn is_zero_dimensional<F: Field>(gb: &GroebnerBasis<F>) -> bool {
    if gb.is_unit() {
        return true;
    }
    let lms = gb.leading_monomials();
    (0..gb.ring.nvars).all(|v| lms.iter().any(|m| m.pure_power_of() == Some(v)))
}

/// Monomials outside the leading-term ideal, in increasing order; requires zero-dimensionality.
pub fn standard_monomials<F: Field>(gb: &GroebnerBasis<F>) -> Result<Vec<Monomial>> {
    if !is_zero_dimensional(gb) {
        return Err(Error::NotZeroDimensional);
    }
    if gb.is_unit() {
        return Ok(vec![]);
    }
    let lms = gb.leading_monomials();
    let mut seen = BTreeSet::new();
    let mut stack = vec![Monomial::one()];
    while let Some(m) = stack.pop() {
        if lms.iter().any(|l| l.divides(&m)) || !seen.insert(m) {
            continue;
        }
        for v in 0..gb.ring.nvars {
            stack.push(m.mul(&Monomial::var(v)));
        }
    }
    let mut out: Vec<Monomial> = seen.into_iter().collect();
    out.sort_by(|a, b| gb.ring.cmp(a, b));
    Ok(out)
}

/// Dimension of the quotient ring: the number of solutions over the
/// algebraic closure, counted with multiplicity.
pub fn quotient_dimension<F: Field>(gb: &GroebnerBasis<F>) -> Result<usize> {
    Ok(standard_monomials(gb)?.len())
}

/// Incremental linear-dependence tracker for normal-form coordinate vectors.
struct Dependence<F: Field> {
    rows: Vec<(usize, Vec<F::Elem>, Vec<F::Elem>)>,
    count: usize,
}

impl<F: Field> Dependence<F> {
    fn new() -> Self {
        Dependence { rows: Vec::new(), count: 0 }
    }

    /// Either records `v` as independent (returns `None`) or returns the
    /// coefficients `c` with `v = sum c_i v_i` over the recorded vectors.
    fn insert(&mut self, k: &F, mut v: Vec<F::Elem>) -> Option<Vec<F::Elem>> {
        let mut comb = vec![k.zero(); self.count + 1];
        comb[self.count] = k.one();
        for (piv, row, rc) in &self.rows {
            if !k.is_zero(&v[*piv]) {
                let f = v[*piv].clone();
                for (a, b) in v.iter_mut().zip(row) {
                    *a = k.sub(a, &k.mul(&f, b));
                }
                for (a, b) in comb.iter_mut().zip(rc) {
                    *a = k.sub(a, &k.mul(&f, b));
                }
            }
        }
        match v.iter().position(|x| !k.is_zero(x)) {
            None => {
                // comb * (recorded, v) = 0 with comb[last] = 1
                comb.pop();
                Some(comb.iter().map(|c| k.neg(c)).collect())
            }
            Some(piv) => {
                let inv = k.inv(&v[piv]).unwrap();
                let v: Vec<_> = v.iter().map(|x| k.mul(x, &inv)).collect();
                let comb: Vec<_> = comb.iter().map(|x| k.mul(x, &inv)).collect();
                self.rows.push((piv, v, comb));
                self.count += 1;
                for row in &mut self.rows {
                    row.2.resize(self.count, k.zero());
                }
                None
            }
        }
    }
}

fn coordinates<F: Field>(
    ring: &PolyRing<F>,
    p: &MultiPoly<F::Elem>,
    index: &std::collections::HashMap<Monomial, usize>,
) -> Vec<F::Elem> {
    let mut v = vec![ring.field.zero(); index.len()];
    for (m, c) in p.terms() {
        v[index[m]] = c.clone();
    }
    v
}

/// FGLM change of order for a zero-dimensional reduced basis.
pub fn fglm<F: Field>(gb: &GroebnerBasis<F>, target: &PolyRing<F>, budget: &mut Budget) -> Result<GroebnerBasis<F>> {
    if gb.is_unit() {
        return Ok(GroebnerBasis { ring: target.clone(), polys: vec![target.one()] });
    }
    let std = standard_monomials(gb)?;
    let index: std::collections::HashMap<Monomial, usize> = std.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let refs: Vec<&MultiPoly<F::Elem>> = gb.polys.iter().collect();
    let k = &target.field;

    let mut new_basis: Vec<MultiPoly<F::Elem>> = Vec::new();
    let mut new_lms: Vec<Monomial> = Vec::new();
    let mut staircase: Vec<Monomial> = Vec::new();
    let mut dep = Dependence::<F>::new();
    let mut candidates: BTreeSet<LexKey> = BTreeSet::new();
    candidates.insert(LexKey::new(target, Monomial::one()));
    while let Some(key) = candidates.pop_first() {
        let t = key.mono;
        if new_lms.iter().any(|l| l.divides(&t)) {
            continue;
        }
        let nf = normal_form(&gb.ring, &gb.ring.from_terms(vec![(t, k.one())]), &refs, budget)?;
        match dep.insert(k, coordinates(&gb.ring, &nf, &index)) {
            Some(comb) => {
                let mut terms = vec![(t, k.one())];
                for (b, c) in staircase.iter().zip(comb) {
                    terms.push((*b, k.neg(&c)));
                }
                new_basis.push(target.from_terms(terms));
                new_lms.push(t);
            }
            None => {
                staircase.push(t);
                for v in 0..target.nvars {
                    candidates.insert(LexKey::new(target, t.mul(&Monomial::var(v))));
                }
            }
        }
    }
    new_basis.sort_by(|a, b| target.cmp(&b.leading_monomial().unwrap(), &a.leading_monomial().unwrap()));
    Ok(GroebnerBasis { ring: target.clone(), polys: new_basis })
}

/// Orders monomials by a ring's monomial order inside a `BTreeSet`.
#[derive(Clone, Copy, PartialEq, Eq)]
struct LexKey {
    order: MonomialOrder,
    mono: Monomial,
}

impl LexKey {
    fn new<F: Field>(ring: &PolyRing<F>, mono: Monomial) -> Self {
        LexKey { order: ring.order, mono }
    }
}

impl PartialOrd for LexKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LexKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order.cmp(&self.mono, &other.mono)
    }
}

/// Minimal polynomial of the variable `var` modulo a zero-dimensional ideal,
/// from the first linear dependence among the normal forms of its powers.
pub fn minimal_polynomial<F: Field>(gb: &GroebnerBasis<F>, var: usize, budget: &mut Budget) -> Result<UniPoly<F::Elem>> {
    let k = &gb.ring.field;
    if gb.is_unit() {
        return Ok(UniPoly::one(k));
    }
    let std = standard_monomials(gb)?;
    let index: std::collections::HashMap<Monomial, usize> = std.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let refs: Vec<&MultiPoly<F::Elem>> = gb.polys.iter().collect();
    let x = gb.ring.var(var);
    let mut dep = Dependence::<F>::new();
    let mut power = gb.ring.one();
    for e in 0..=std.len() {
        let nf = normal_form(&gb.ring, &power, &refs, budget)?;
        if let Some(comb) = dep.insert(k, coordinates(&gb.ring, &nf, &index)) {
            let mut coeffs: Vec<F::Elem> = comb.iter().map(|c| k.neg(c)).collect();
            coeffs.push(k.one());
            debug_assert_eq!(coeffs.len(), e + 1);
            return Ok(UniPoly::from_coeffs(k, coeffs));
        }
        power = gb.ring.mul(&nf, &x);
    }
    unreachable!("powers of a variable are dependent in a finite-dimensional quotient")
}

/// Seidenberg's criterion: a zero-dimensional ideal over a perfect field is
/// radical iff every variable's minimal polynomial is squarefree.
pub fn is_reduced_zero_dim<F: Field>(gb: &GroebnerBasis<F>) -> Result<bool> {
    if !is_zero_dimensional(gb) {
        return Err(Error::NotZeroDimensional);
    }
    if gb.is_unit() {
        return Ok(true);
    }
    let mut budget = Budget::default();
    for v in 0..gb.ring.nvars {
        let mp = minimal_polynomial(gb, v, &mut budget)?;
        if !squarefree_check(&mp, &gb.ring.field)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All solutions with coordinates in `target`, by back-substitution through
/// lex bases from the last variable up. Points are sorted canonically.
pub fn enumerate_solutions<F: Subfield>(gb: &GroebnerBasis<F>, target: &ExtField) -> Result<SolutionSet> {
    enumerate_solutions_with(gb, target, 0, &mut Budget::default())
}

pub fn enumerate_solutions_with<F: Subfield>(
    gb: &GroebnerBasis<F>,
    target: &ExtField,
    seed: u64,
    budget: &mut Budget,
) -> Result<SolutionSet> {
    if !is_zero_dimensional(gb) {
        return Err(Error::NotZeroDimensional);
    }
    let emb = gb.ring.field.embedding(target)?;
    let ring = PolyRing::new(target.clone(), gb.ring.nvars, MonomialOrder::Lex)?;
    let polys: Vec<_> = gb.polys.iter().map(|p| gb.ring.map_into(&ring, p, &emb)).collect();
    // a basis in another order is still a generating set; recompute in lex
    let lex = if gb.ring.order == MonomialOrder::Lex {
        polys.clone()
    } else {
        buchberger_with(&Ideal::new(ring.clone(), polys.clone()), budget)?.polys
    };
    let mut points = Vec::new();
    let mut partial = vec![target.zero(); ring.nvars];
    back_substitute(&ring, lex, ring.nvars - 1, &mut partial, &mut points, seed, budget)?;
    for pt in &points {
        for p in &polys {
            assert!(target.is_zero(&ring.eval(p, pt)), "solution fails a basis element");
        }
    }
    points.sort();
    points.dedup();
    Ok(SolutionSet { field: target.clone(), points })
}

fn back_substitute(
    ring: &PolyRing<ExtField>,
    basis: Vec<MultiPoly<ExtElem>>,
    var: usize,
    partial: &mut Vec<ExtElem>,
    out: &mut Vec<Vec<ExtElem>>,
    seed: u64,
    budget: &mut Budget,
) -> Result<()> {
    let k = &ring.field;
    if basis.iter().any(|p| p.leading_monomial().is_some_and(|m| m.is_one())) {
        return Ok(());
    }
    let eliminant = basis
        .iter()
        .filter(|p| !p.is_zero())
        .filter_map(|p| ring.as_univariate(p, var))
        .find(|u| !u.is_constant());
    let Some(eliminant) = eliminant else {
        return Err(Error::NotZeroDimensional);
    };
    for r in roots_in_field(&eliminant, k, seed)? {
        partial[var] = r.clone();
        let spec: Vec<_> = basis.iter().map(|p| ring.substitute(p, var, &r)).filter(|p| !p.is_zero()).collect();
        if var == 0 {
            if spec.is_empty() {
                out.push(partial.clone());
            }
            continue;
        }
        if spec.is_empty() {
            return Err(Error::NotZeroDimensional);
        }
        let next = groebner_in_order(&Ideal::new(ring.clone(), spec), budget)?.polys;
        back_substitute(ring, next, var - 1, partial, out, seed, budget)?;
    }
    Ok(())
}

/// Convenience: basis, then solutions, each checked against the original generators.
pub fn solve_ideal<F: Subfield>(ideal: &Ideal<F>, target: &ExtField, seed: u64, budget: &mut Budget) -> Result<SolutionSet> {
    let gb = buchberger_with(ideal, budget)?;
    let sols = enumerate_solutions_with(&gb, target, seed, budget)?;
    let emb = ideal.ring.field.embedding(target)?;
    let ring = PolyRing::new(target.clone(), ideal.ring.nvars, MonomialOrder::Lex)?;
    for g in &ideal.generators {
        let g = ideal.ring.map_into(&ring, g, &emb);
        for pt in &sols.points {
            assert!(target.is_zero(&ring.eval(&g, pt)), "solution fails an input generator");
        }
    }
    Ok(sols)
}
