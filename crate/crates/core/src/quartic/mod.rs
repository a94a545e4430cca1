//! Lines on quartic surfaces in P^3, via reduction modulo a prime.

pub mod expr;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::extension::{make_extension, ExtElem, ExtField, Subfield};
use crate::algebra::factor::roots_in_field;
use crate::algebra::field::{Field, PrimeField, RationalField};
use crate::algebra::linalg::{nullspace, rref};
use crate::algebra::multipoly::{Monomial, MonomialOrder, MultiPoly, PolyRing};
use crate::algebra::rational::Rational;
use crate::algebra::unipoly::UniPoly;
use crate::error::{Error, Result};
use crate::groebner::{
    buchberger_with, enumerate_solutions_with, is_reduced_zero_dim, is_zero_dimensional, Budget, Ideal, DEFAULT_BUDGET,
};
use crate::incidence::{build_incidence, intersect_lines, TVector};

/// Pivot pairs in lexicographic order.
pub const CHARTS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuarticTerm {
    pub exp: [u32; 4],
    /// Integer polynomial in the algebraic number, constant term first.
    pub coeff: Vec<i64>,
}

/// Quartic form with integer coefficients, or coefficients in `Z[a]/(m(a))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuarticForm {
    #[serde(default = "four")]
    pub variables: usize,
    /// Minimal polynomial of the algebraic number, constant term first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minpoly: Option<Vec<i64>>,
    pub terms: Vec<QuarticTerm>,
}

fn four() -> usize {
    4
}

impl QuarticForm {
    /// Parse `x0^4 - x0*x1^3 + ...`; with `alpha = Some((symbol, m))` the
    /// coefficients may involve `symbol`, a root of the polynomial `m`.
    pub fn parse(src: &str, alpha: Option<(&str, &str)>) -> Result<Self> {
        let symbol = alpha.map(|a| a.0);
        let poly = expr::parse_int_poly(src, symbol)?;
        let minpoly = match alpha {
            None => None,
            Some((sym, m)) => {
                let mp = expr::parse_int_poly(m, Some(sym))?;
                let deg = mp.keys().map(|e| e[4]).max().unwrap_or(0) as usize;
                let mut c = vec![0i64; deg + 1];
                for (e, v) in mp {
                    if e[..4].iter().any(|&x| x > 0) {
                        return Err(Error::Parse("minimal polynomial may only involve the algebraic symbol".into()));
                    }
                    c[e[4] as usize] = v;
                }
                Some(c)
            }
        };
        let mut grouped: BTreeMap<[u32; 4], Vec<i64>> = BTreeMap::new();
        for (e, v) in poly {
            let key = [e[0], e[1], e[2], e[3]];
            let slot = grouped.entry(key).or_default();
            let i = e[4] as usize;
            if slot.len() <= i {
                slot.resize(i + 1, 0);
            }
            slot[i] = v;
        }
        let mut terms: Vec<QuarticTerm> = grouped.into_iter().map(|(exp, coeff)| QuarticTerm { exp, coeff }).collect();
        terms.reverse();
        let q = QuarticForm { variables: 4, minpoly, terms };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if self.variables != 4 {
            return Err(Error::Invalid(format!("expected 4 variables, got {}", self.variables)));
        }
        if let Some(m) = &self.minpoly {
            if m.len() < 2 || *m.last().unwrap() == 0 {
                return Err(Error::Invalid("minimal polynomial must have degree at least 1 and a nonzero leading coefficient".into()));
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut nonzero = false;
        for (i, t) in self.terms.iter().enumerate() {
            if t.exp.iter().sum::<u32>() != 4 {
                return Err(Error::Invalid(format!("term {i}: exponents {:?} do not sum to 4", t.exp)));
            }
            if !seen.insert(t.exp) {
                return Err(Error::Invalid(format!("term {i}: repeated exponent {:?}", t.exp)));
            }
            if t.coeff.is_empty() {
                return Err(Error::Invalid(format!("term {i}: empty coefficient")));
            }
            if self.minpoly.is_none() && t.coeff.len() > 1 {
                return Err(Error::Invalid(format!("term {i}: algebraic coefficient without a minimal polynomial")));
            }
            nonzero |= t.coeff.iter().any(|&c| c != 0);
        }
        if !nonzero {
            return Err(Error::Invalid("quartic is identically zero".into()));
        }
        Ok(())
    }

    /// The quartic over Q; only for integer coefficients.
    pub fn over_rationals(&self) -> Result<Quartic<RationalField>> {
        self.validate()?;
        if self.minpoly.is_some() {
            return Err(Error::Invalid("quartic has algebraic coefficients".into()));
        }
        let terms = self
            .terms
            .iter()
            .filter(|t| t.coeff[0] != 0)
            .map(|t| (t.exp, Rational::from_integer(t.coeff[0].into())))
            .collect();
        Ok(Quartic::new(RationalField, terms))
    }
}

/// A quartic form over a concrete field; terms sorted by exponent, descending.
#[derive(Clone, Debug, PartialEq)]
pub struct Quartic<F: Field> {
    pub field: F,
    pub terms: Vec<([u32; 4], F::Elem)>,
}

impl<F: Field> Quartic<F> {
    pub fn new(field: F, terms: Vec<([u32; 4], F::Elem)>) -> Self {
        let mut terms: Vec<_> = terms.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Quartic { field, terms }
    }

    pub fn format(&self) -> String {
        let ring = PolyRing::new(self.field.clone(), 4, MonomialOrder::Lex).expect("4 variables");
        let p = ring.from_terms(self.terms.iter().map(|(e, c)| (Monomial::from_exps(e).unwrap(), c.clone())).collect());
        ring.format(&p, &["x0", "x1", "x2", "x3"])
    }
}

impl Quartic<ExtField> {
    /// The same quartic over the prime field, when every coefficient lies there.
    pub fn to_prime_field(&self) -> Option<Quartic<PrimeField>> {
        let terms = self.terms.iter().map(|(e, c)| self.field.to_prime(c).map(|v| (*e, v))).collect::<Option<Vec<_>>>()?;
        Some(Quartic::new(self.field.prime_field(), terms))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionContext {
    pub p: u64,
    pub n: usize,
    pub field: ExtField,
    /// Image of the algebraic number; absent for integer coefficients.
    pub alpha_image: Option<ExtElem>,
}

/// Reduce modulo `p` into `F_{p^n}`, sending the algebraic number to the
/// smallest root of its minimal polynomial.
pub fn reduce_quartic(q: &QuarticForm, p: u64, n: usize) -> Result<(Quartic<ExtField>, ReductionContext)> {
    reduce_quartic_with_root(q, p, n, 0)
}

/// As [`reduce_quartic`], choosing the root with the given index in canonical order.
pub fn reduce_quartic_with_root(
    q: &QuarticForm,
    p: u64,
    n: usize,
    root_index: usize,
) -> Result<(Quartic<ExtField>, ReductionContext)> {
    q.validate()?;
    let field = make_extension(p, n)?;
    let alpha = match &q.minpoly {
        None => None,
        Some(m) => {
            let lead = m.last().unwrap().rem_euclid(p as i64);
            if lead == 0 {
                return Err(Error::Invalid(format!("{p} divides the leading coefficient of the minimal polynomial")));
            }
            let mp = UniPoly::from_coeffs(&field, m.iter().map(|&c| field.from_int(c)).collect());
            let roots = roots_in_field(&mp, &field, 0)?;
            if roots.is_empty() {
                return Err(Error::IncompatibleExtension(format!(
                    "minimal polynomial has no root in {}",
                    field.name()
                )));
            }
            let r = roots.get(root_index).cloned().ok_or_else(|| {
                Error::Invalid(format!("root index {root_index} out of range ({} roots)", roots.len()))
            })?;
            Some(r)
        }
    };
    let terms: Vec<([u32; 4], ExtElem)> = q
        .terms
        .iter()
        .map(|t| {
            let c = match &alpha {
                None => field.from_int(t.coeff[0]),
                Some(a) => t.coeff.iter().rev().fold(field.zero(), |acc, &c| field.add(&field.mul(&acc, a), &field.from_int(c))),
            };
            (t.exp, c)
        })
        .collect();
    let quartic = Quartic::new(field.clone(), terms);
    if quartic.terms.is_empty() {
        return Err(Error::BadPrime(p));
    }
    Ok((quartic, ReductionContext { p, n, field, alpha_image: alpha }))
}

/// A line in P^3 as a 2x4 matrix in reduced row-echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line<E> {
    pub pivots: (usize, usize),
    pub rows: [[E; 4]; 2],
}

impl<E: Clone + Eq + Ord> Line<E> {
    /// Canonical form of the span of two vectors; rank below 2 is an error.
    pub fn from_rows<F: Field<Elem = E>>(k: &F, rows: [[E; 4]; 2]) -> Result<Self> {
        let mut m: Vec<Vec<E>> = rows.iter().map(|r| r.to_vec()).collect();
        let piv = rref(&mut m, k);
        if piv.len() != 2 {
            return Err(Error::Invalid("vectors do not span a line".into()));
        }
        let row = |i: usize| -> [E; 4] { [m[i][0].clone(), m[i][1].clone(), m[i][2].clone(), m[i][3].clone()] };
        Ok(Line { pivots: (piv[0], piv[1]), rows: [row(0), row(1)] })
    }

    /// Two independent planes containing the line.
    pub fn planes<F: Field<Elem = E>>(&self, k: &F) -> [[E; 4]; 2] {
        let m: Vec<Vec<E>> = self.rows.iter().map(|r| r.to_vec()).collect();
        let ns = nullspace(&m, k);
        let row = |v: &Vec<E>| -> [E; 4] { [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()] };
        [row(&ns[0]), row(&ns[1])]
    }

    pub fn format<F: Field<Elem = E>>(&self, k: &F) -> [[String; 4]; 2] {
        let f = |r: &[E; 4]| -> [String; 4] { [k.format(&r[0]), k.format(&r[1]), k.format(&r[2]), k.format(&r[3])] };
        [f(&self.rows[0]), f(&self.rows[1])]
    }
}

/// The line cut out by two planes `h . x = 0` and `h2 . x = 0`.
pub fn line_from_planes<F: Field>(k: &F, h: &[F::Elem; 4], h2: &[F::Elem; 4]) -> Result<Line<F::Elem>> {
    let m = vec![h.to_vec(), h2.to_vec()];
    let ns = nullspace(&m, k);
    if ns.len() != 2 {
        return Err(Error::DependentPlanes);
    }
    let row = |v: &Vec<F::Elem>| -> [F::Elem; 4] { [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()] };
    Line::from_rows(k, [row(&ns[0]), row(&ns[1])])
}

/// The five generators of a chart: coefficients of `s^4, s^3 t, ..., t^4`.
#[derive(Clone, Debug)]
pub struct LineSchemeSystem<F: Field> {
    pub chart: (usize, usize),
    pub ring: PolyRing<F>,
    /// Matrix entries `(row, column)` that are free parameters, in variable order.
    pub params: Vec<(usize, usize)>,
    pub generators: Vec<MultiPoly<F::Elem>>,
}

fn binary_mul<F: Field>(ring: &PolyRing<F>, a: &[MultiPoly<F::Elem>], b: &[MultiPoly<F::Elem>]) -> Vec<MultiPoly<F::Elem>> {
    let mut out = vec![MultiPoly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = ring.add(&out[i + j], &ring.mul(x, y));
            }
        }
    }
    out
}

/// Coefficients of `s^4, s^3 t, ..., t^4` in `q(s * rows[0] + t * rows[1])`.
pub fn restrict_to_line<F: Field>(
    ring: &PolyRing<F>,
    q: &Quartic<F>,
    rows: &[Vec<MultiPoly<F::Elem>>; 2],
) -> Vec<MultiPoly<F::Elem>> {
    // powers[c][e]: the binary form (s r0c + t r1c)^e
    let mut powers: Vec<Vec<Vec<MultiPoly<F::Elem>>>> = Vec::with_capacity(4);
    for c in 0..4 {
        let lin = vec![rows[0][c].clone(), rows[1][c].clone()];
        let mut pw = vec![vec![ring.one()]];
        for e in 1..=4 {
            let next = binary_mul(ring, &pw[e - 1], &lin);
            pw.push(next);
        }
        powers.push(pw);
    }
    let mut acc = vec![MultiPoly::zero(); 5];
    for (exp, coeff) in &q.terms {
        let mut prod = vec![ring.one()];
        for c in 0..4 {
            if exp[c] > 0 {
                prod = binary_mul(ring, &prod, &powers[c][exp[c] as usize]);
            }
        }
        for (a, p) in acc.iter_mut().zip(&prod) {
            *a = ring.add_scaled(a, coeff, &Monomial::one(), p);
        }
    }
    acc
}

fn system_with_params<F: Field>(q: &Quartic<F>, chart: (usize, usize), params: Vec<(usize, usize)>) -> LineSchemeSystem<F> {
    let ring = PolyRing::new(q.field.clone(), params.len().max(1), MonomialOrder::Lex).expect("at most 4 parameters");
    let mut rows: [Vec<MultiPoly<F::Elem>>; 2] = [vec![MultiPoly::zero(); 4], vec![MultiPoly::zero(); 4]];
    rows[0][chart.0] = ring.one();
    rows[1][chart.1] = ring.one();
    for (v, &(r, c)) in params.iter().enumerate() {
        rows[r][c] = ring.var(v);
    }
    let generators = restrict_to_line(&ring, q, &rows);
    LineSchemeSystem { chart, ring, params, generators }
}

/// The affine chart where columns `i, j` of the line matrix are independent:
/// rows with the identity in columns `i, j` and parameters `a, b` / `c, d` elsewhere.
pub fn line_scheme_equations<F: Field>(q: &Quartic<F>, chart: (usize, usize)) -> LineSchemeSystem<F> {
    let others: Vec<usize> = (0..4).filter(|&c| c != chart.0 && c != chart.1).collect();
    let params = vec![(0, others[0]), (0, others[1]), (1, others[0]), (1, others[1])];
    system_with_params(q, chart, params)
}

/// The echelon cell of a pivot pair: only lines whose canonical pivots are exactly `chart`.
pub fn cell_equations<F: Field>(q: &Quartic<F>, chart: (usize, usize)) -> LineSchemeSystem<F> {
    let (i, j) = chart;
    let mut params: Vec<(usize, usize)> = (i + 1..4).filter(|&c| c != j).map(|c| (0, c)).collect();
    params.extend((j + 1..4).map(|c| (1, c)));
    system_with_params(q, chart, params)
}

/// `q` vanishes identically on the line.
pub fn verify_line_on_quartic<F: Field>(line: &Line<F::Elem>, q: &Quartic<F>) -> bool {
    let ring = PolyRing::new(q.field.clone(), 1, MonomialOrder::Lex).expect("one variable");
    let rows = [
        line.rows[0].iter().map(|c| ring.constant(c.clone())).collect(),
        line.rows[1].iter().map(|c| ring.constant(c.clone())).collect(),
    ];
    restrict_to_line(&ring, q, &rows).iter().all(|p| p.is_zero())
}

#[derive(Clone, Debug)]
pub struct LineSearchOptions {
    pub seed: u64,
    pub budget: u64,
}

impl Default for LineSearchOptions {
    fn default() -> Self {
        LineSearchOptions { seed: 0, budget: DEFAULT_BUDGET }
    }
}

fn lines_in_cell<F: Subfield>(
    q: &Quartic<F>,
    chart: (usize, usize),
    target: &ExtField,
    opts: &LineSearchOptions,
) -> Result<Vec<Line<ExtElem>>> {
    let sys = cell_equations(q, chart);
    let emb = q.field.embedding(target)?;
    let build = |vals: &[ExtElem]| -> Line<ExtElem> {
        let mut rows = [
            [target.zero(), target.zero(), target.zero(), target.zero()],
            [target.zero(), target.zero(), target.zero(), target.zero()],
        ];
        rows[0][chart.0] = target.one();
        rows[1][chart.1] = target.one();
        for (v, &(r, c)) in sys.params.iter().enumerate() {
            rows[r][c] = vals[v].clone();
        }
        Line { pivots: chart, rows }
    };
    if sys.params.is_empty() {
        return Ok(if sys.generators.iter().all(|g| g.is_zero()) { vec![build(&[])] } else { vec![] });
    }
    let mut budget = Budget::new(opts.budget);
    let gb = buchberger_with(&Ideal::new(sys.ring.clone(), sys.generators.clone()), &mut budget)?;
    if !is_zero_dimensional(&gb) {
        return Err(Error::InfinitelyManyLines(chart));
    }
    let sols = enumerate_solutions_with(&gb, target, opts.seed, &mut budget)?;
    let qt = Quartic::new(target.clone(), q.terms.iter().map(|(e, c)| (*e, emb(c))).collect());
    let mut out = Vec::with_capacity(sols.points.len());
    for pt in &sols.points {
        let line = build(pt);
        assert!(verify_line_on_quartic(&line, &qt), "computed line does not lie on the quartic");
        out.push(line);
    }
    Ok(out)
}

/// All lines over `target` on the quartic, each chart solved independently.
pub fn find_all_lines_over<F: Subfield>(
    q: &Quartic<F>,
    target: &ExtField,
    opts: &LineSearchOptions,
) -> Result<Vec<Line<ExtElem>>> {
    let per_chart: Vec<Result<Vec<Line<ExtElem>>>> =
        CHARTS.par_iter().map(|&chart| lines_in_cell(q, chart, target, opts)).collect();
    let mut out = Vec::new();
    for r in per_chart {
        out.extend(r?);
    }
    Ok(out)
}

/// All lines over the quartic's own field. Coefficients in the prime field
/// are handled there, which keeps the Gröbner computations cheap.
pub fn find_all_lines(q: &Quartic<ExtField>, opts: &LineSearchOptions) -> Result<Vec<Line<ExtElem>>> {
    match q.to_prime_field() {
        Some(qp) => find_all_lines_over(&qp, &q.field, opts),
        None => find_all_lines_over(q, &q.field, opts),
    }
}

fn charts_reduced<F: Subfield>(q: &Quartic<F>, opts: &LineSearchOptions) -> Result<bool> {
    let res: Vec<Result<bool>> = CHARTS
        .par_iter()
        .map(|&chart| {
            let sys = line_scheme_equations(q, chart);
            let mut budget = Budget::new(opts.budget);
            let gb = buchberger_with(&Ideal::new(sys.ring, sys.generators), &mut budget)?;
            if !is_zero_dimensional(&gb) {
                return Err(Error::InfinitelyManyLines(chart));
            }
            is_reduced_zero_dim(&gb)
        })
        .collect();
    let mut all = true;
    for r in res {
        all &= r?;
    }
    Ok(all)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoodReductionReport {
    pub scheme_reduced: bool,
    pub pairwise_reduced: bool,
    pub line_count: usize,
}

/// Reducedness of the line scheme on every affine chart, and transversality
/// of every meeting pair of lines.
pub fn good_reduction_check(q: &QuarticForm, p: u64, n: usize, opts: &LineSearchOptions) -> Result<GoodReductionReport> {
    let (qr, _) = reduce_quartic(q, p, n)?;
    let lines = find_all_lines(&qr, opts)?;
    let scheme_reduced = scheme_reduced(&qr, opts)?;
    Ok(GoodReductionReport { scheme_reduced, pairwise_reduced: pairwise_reduced(&qr.field, &lines)?, line_count: lines.len() })
}

/// Whether the scheme of lines of an already reduced quartic is reduced on
/// all six full charts.
pub fn scheme_reduced(q: &Quartic<ExtField>, opts: &LineSearchOptions) -> Result<bool> {
    match q.to_prime_field() {
        Some(qp) => charts_reduced(&qp, opts),
        None => charts_reduced(q, opts),
    }
}

/// Every meeting pair has a stacked matrix of rank exactly 3.
pub fn pairwise_reduced<F: Field>(k: &F, lines: &[Line<F::Elem>]) -> Result<bool> {
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            // intersect_lines rejects rank <= 2
            if let Err(e) = intersect_lines(k, &lines[i], &lines[j]) {
                if e == Error::IdenticalLines {
                    return Ok(false);
                }
                return Err(e);
            }
        }
    }
    Ok(true)
}

/// Invariants of one reduction, as compared by [`two_prime_agreement`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionSummary {
    pub p: u64,
    pub n: usize,
    pub line_count: usize,
    pub t: TVector,
    pub line_degrees: Vec<usize>,
    pub point_degrees: Vec<usize>,
}

pub fn reduction_summary(q: &QuarticForm, p: u64, n: usize, opts: &LineSearchOptions) -> Result<ReductionSummary> {
    let (qr, _) = reduce_quartic(q, p, n)?;
    let lines = find_all_lines(&qr, opts)?;
    let (g, t) = build_incidence(&qr.field, &lines)?;
    let (line_degrees, point_degrees) = g.degree_sequences();
    Ok(ReductionSummary { p, n, line_count: lines.len(), t, line_degrees, point_degrees })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Agreement {
    pub agree: bool,
    pub first: ReductionSummary,
    pub second: ReductionSummary,
}

/// Equal line counts, TVectors and sorted degree sequences at two primes.
pub fn two_prime_agreement(
    q: &QuarticForm,
    first: (u64, usize),
    second: (u64, usize),
    opts: &LineSearchOptions,
) -> Result<Agreement> {
    let a = reduction_summary(q, first.0, first.1, opts)?;
    let b = reduction_summary(q, second.0, second.1, opts)?;
    let agree =
        a.line_count == b.line_count && a.t == b.t && a.line_degrees == b.line_degrees && a.point_degrees == b.point_degrees;
    Ok(Agreement { agree, first: a, second: b })
}

#[derive(Clone, Debug)]
pub struct LineTableReport {
    pub lines: Vec<Line<Rational>>,
    pub on_surface: Vec<bool>,
}

impl LineTableReport {
    pub fn verified(&self) -> usize {
        self.on_surface.iter().filter(|&&b| b).count()
    }

    pub fn failures(&self) -> Vec<usize> {
        self.on_surface.iter().enumerate().filter(|(_, b)| !**b).map(|(i, _)| i).collect()
    }
}

/// Lines given as plane pairs over Q, checked against a rational quartic.
pub fn verify_line_table(planes: &[([Rational; 4], [Rational; 4])], q: &Quartic<RationalField>) -> Result<LineTableReport> {
    let mut lines = Vec::with_capacity(planes.len());
    let mut on_surface = Vec::with_capacity(planes.len());
    for (h, h2) in planes {
        let l = line_from_planes(&RationalField, h, h2)?;
        on_surface.push(verify_line_on_quartic(&l, q));
        lines.push(l);
    }
    Ok(LineTableReport { lines, on_surface })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn fermat() -> QuarticForm {
        QuarticForm::parse("x0^4 + x1^4 + x2^4 + x3^4", None).unwrap()
    }

    fn schur() -> QuarticForm {
        QuarticForm::parse("x0^4 - x0*x1^3 - x2^4 + x2*x3^3", None).unwrap()
    }

    #[test]
    fn reduction_of_schur_mod_5() {
        let (q, ctx) = reduce_quartic(&schur(), 5, 2).unwrap();
        let qp = q.to_prime_field().unwrap();
        let coeffs: Vec<u64> = qp.terms.iter().map(|t| t.1).collect();
        assert_eq!(coeffs, vec![1, 4, 4, 1]);
        assert_eq!(ctx.alpha_image, None);
        assert_eq!(reduce_quartic(&QuarticForm::parse("5*x0^4", None).unwrap(), 5, 1).unwrap_err(), Error::BadPrime(5));
    }

    #[test]
    fn chart_examples() {
        // x0^4 on chart (2,3): (s a + t c)^4
        let q = reduce_quartic(&QuarticForm::parse("x0^4", None).unwrap(), 7, 1).unwrap().0.to_prime_field().unwrap();
        let sys = line_scheme_equations(&q, (2, 3));
        let r = &sys.ring;
        let expect: Vec<MultiPoly<u64>> = [([4, 0, 0, 0], 1), ([3, 0, 1, 0], 4), ([2, 0, 2, 0], 6), ([1, 0, 3, 0], 4), ([0, 0, 4, 0], 1)]
            .iter()
            .map(|(e, c)| r.from_int_terms(&[(e, *c)]).unwrap())
            .collect();
        assert_eq!(sys.generators, expect);
        // Fermat chart (0,1): s^4 coefficient is 1 + a^4 + b^4
        let f = reduce_quartic(&fermat(), 7, 1).unwrap().0.to_prime_field().unwrap();
        let sys = line_scheme_equations(&f, (0, 1));
        let r = &sys.ring;
        assert_eq!(sys.generators[0], r.from_int_terms(&[(&[4, 0, 0, 0], 1), (&[0, 4, 0, 0], 1), (&[0, 0, 0, 0], 1)]).unwrap());
    }

    #[test]
    fn membership() {
        let (q, _) = reduce_quartic(&schur(), 5, 2).unwrap();
        let k = q.field.clone();
        let z = k.zero();
        let o = k.one();
        let l = Line::from_rows(&k, [[z.clone(), o.clone(), z.clone(), z.clone()], [z.clone(), z.clone(), z.clone(), o.clone()]]).unwrap();
        assert!(verify_line_on_quartic(&l, &q));
        let (f, _) = reduce_quartic(&fermat(), 73, 1).unwrap();
        let k = f.field.clone();
        let l = Line::from_rows(&k, [[k.one(), k.zero(), k.zero(), k.zero()], [k.zero(), k.one(), k.zero(), k.zero()]]).unwrap();
        assert!(!verify_line_on_quartic(&l, &f));
    }

    #[test]
    fn planes_round_trip() {
        let h = [int(1), int(0), int(0), int(3)];
        let h2 = [int(0), int(1), rat(1, 3), int(0)];
        let l = line_from_planes(&RationalField, &h, &h2).unwrap();
        let [p, p2] = l.planes(&RationalField);
        assert_eq!(line_from_planes(&RationalField, &p, &p2).unwrap(), l);
        let dep = line_from_planes(&RationalField, &[int(1), int(0), int(0), int(0)], &[int(2), int(0), int(0), int(0)]);
        assert_eq!(dep, Err(Error::DependentPlanes));
    }

    #[test]
    fn cells_have_expected_parameter_counts() {
        let q = reduce_quartic(&fermat(), 5, 1).unwrap().0.to_prime_field().unwrap();
        let counts: Vec<usize> = CHARTS.iter().map(|&c| cell_equations(&q, c).params.len()).collect();
        assert_eq!(counts, vec![4, 3, 2, 2, 1, 0]);
    }
}
