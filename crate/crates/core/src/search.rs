//! Bounded exhaustive enumeration of weak combinatorics.
//!
//! TVectors are generated with multiplicities descending and counts ascending,
//! pruned by `sum C(r,2) t_r <= P` where `P` is the number of intersecting
//! pairs of curves (`C(n,2)` unless the plane count says otherwise). Every
//! constraint is evaluated through [`check_inequalities`].

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{as_fraction, as_fraction_opt, format_fraction, rat, Rational};
use crate::error::{Error, Result};
use crate::geography::{check_inequalities, log_chern_pair, Kind, LogChernPair, Status, WeakCombinatorics};
use crate::incidence::TVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Constraint {
    NaiveCount,
    Melchior,
    Hirzebruch,
    StrongerHirzebruch,
    SommeseReduction,
    ConicLineHirzebruch,
    K3Hirzebruch,
}

impl Constraint {
    pub fn predicate(self) -> &'static str {
        match self {
            Constraint::NaiveCount => "naive_count",
            Constraint::Melchior => "melchior",
            Constraint::Hirzebruch => "hirzebruch",
            Constraint::StrongerHirzebruch => "stronger_hirzebruch",
            Constraint::SommeseReduction => "sommese_reduction",
            Constraint::ConicLineHirzebruch => "conic_line_hirzebruch",
            Constraint::K3Hirzebruch => "k3_hirzebruch",
        }
    }

    fn kinds(self) -> &'static [Kind] {
        match self {
            Constraint::NaiveCount => &[Kind::P2Lines, Kind::P2ConicLines, Kind::P2Conics],
            Constraint::ConicLineHirzebruch => &[Kind::P2ConicLines, Kind::P2Conics],
            Constraint::K3Hirzebruch => &[Kind::K3Rational],
            _ => &[Kind::P2Lines],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    AtLeast,
    Above,
    Equal,
}

/// Slope condition; only arrangements with `c2 > 0` can satisfy it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Objective {
    pub relation: Relation,
    #[serde(with = "as_fraction")]
    pub slope: Rational,
}

impl Objective {
    pub fn accepts(&self, pair: &LogChernPair) -> bool {
        if pair.c2 <= 0 {
            return false;
        }
        let s = pair.slope().expect("c2 > 0");
        match self.relation {
            Relation::AtLeast => s >= self.slope,
            Relation::Above => s > self.slope,
            Relation::Equal => s == self.slope,
        }
    }
}

fn default_budget() -> u128 {
    100_000_000
}

/// What to enumerate. Ranges are inclusive `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchSpec {
    pub kind: Kind,
    /// Line counts (plane kinds).
    #[serde(default)]
    pub d: Option<[u64; 2]>,
    /// Conic counts (plane kinds with conics).
    #[serde(default)]
    pub k: Option<[u64; 2]>,
    /// Curve counts (K3 kind), or a bound on `d + k` for plane kinds.
    #[serde(default)]
    pub n: Option<[u64; 2]>,
    #[serde(default)]
    pub max_multiplicity: Option<u32>,
    /// Forbid points on all `n` curves, on `n - 1` curves, ... (this many).
    #[serde(default)]
    pub exclude_top: u32,
    #[serde(default)]
    pub constraints: Vec<Constraint>,
    pub objective: Objective,
    #[serde(default = "default_budget")]
    pub budget: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchHit {
    pub combinatorics: WeakCombinatorics,
    pub pair: LogChernPair,
    #[serde(with = "as_fraction_opt")]
    pub slope: Option<Rational>,
    /// Predicate name to exact slack, `"n/a"` when not applicable.
    pub slacks: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchResult {
    pub label: String,
    pub examined: u128,
    pub hits: Vec<SearchHit>,
}

impl SearchResult {
    pub fn combinatorics(&self) -> Vec<WeakCombinatorics> {
        self.hits.iter().map(|h| h.combinatorics.clone()).collect()
    }
}

/// One outer parameter choice: the curve counts plus the enumeration box.
#[derive(Clone, Copy, Debug)]
struct Cell {
    d: u64,
    k: u64,
    n: u64,
    rmax: u32,
    pairs: u64,
    exact: bool,
}

fn choose2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

fn range(r: Option<[u64; 2]>, name: &str) -> Result<[u64; 2]> {
    match r {
        Some([lo, hi]) if lo <= hi => Ok([lo, hi]),
        Some([lo, hi]) => Err(Error::Invalid(format!("empty range {name} = [{lo}, {hi}]"))),
        None => Err(Error::Invalid(format!("range '{name}' is required"))),
    }
}

impl SearchSpec {
    fn cells(&self) -> Result<Vec<Cell>> {
        for c in &self.constraints {
            if !c.kinds().contains(&self.kind) {
                return Err(Error::Invalid(format!("constraint {} does not apply to kind {}", c.predicate(), self.kind)));
            }
        }
        let exact = self.constraints.contains(&Constraint::NaiveCount);
        let mut params = Vec::new();
        match self.kind {
            Kind::K3Rational => {
                let [lo, hi] = range(self.n, "n")?;
                params.extend((lo.max(1)..=hi).map(|n| (0, 0, n)));
            }
            Kind::General => return Err(Error::Invalid("searches over kind general are not supported".into())),
            _ => {
                let [dlo, dhi] = if self.kind == Kind::P2Conics { [0, 0] } else { range(self.d, "d")? };
                let [klo, khi] = if self.kind == Kind::P2Lines { [0, 0] } else { range(self.k, "k")? };
                let [nlo, nhi] = self.n.unwrap_or([0, dhi + khi]);
                for d in dlo..=dhi {
                    for k in klo..=khi {
                        if (nlo..=nhi).contains(&(d + k)) && d + k > 0 {
                            params.push((d, k, d + k));
                        }
                    }
                }
            }
        }
        Ok(params
            .into_iter()
            .map(|(d, k, n)| {
                let top = n.saturating_sub(self.exclude_top as u64).min(u32::MAX as u64) as u32;
                let rmax = self.max_multiplicity.map_or(top, |m| m.min(top));
                let pairs = match self.kind {
                    Kind::K3Rational => choose2(n),
                    _ => 4 * choose2(k) + 2 * k * d + choose2(d),
                };
                Cell { d, k, n, rmax, pairs, exact: exact && self.kind != Kind::K3Rational }
            })
            .collect())
    }
}

impl Cell {
    fn weights(&self) -> Vec<(u32, u64)> {
        (2..=self.rmax).rev().map(|r| (r, choose2(r as u64))).collect()
    }

    /// Number of TVectors this cell will generate.
    fn estimate(&self) -> u128 {
        let p = self.pairs as usize;
        let mut ways = vec![0u128; p + 1];
        ways[0] = 1;
        for (_, w) in self.weights() {
            let w = w as usize;
            for s in w..=p {
                ways[s] = ways[s].saturating_add(ways[s - w]);
            }
        }
        if self.exact {
            ways[p]
        } else {
            ways.iter().fold(0u128, |a, b| a.saturating_add(*b))
        }
    }

    fn enumerate(&self, mut visit: impl FnMut(&TVector)) {
        let weights = self.weights();
        let mut counts = vec![0u64; weights.len()];
        self.walk(&weights, 0, self.pairs, &mut counts, &mut visit);
    }

    fn walk(&self, w: &[(u32, u64)], i: usize, left: u64, counts: &mut Vec<u64>, visit: &mut impl FnMut(&TVector)) {
        if i == w.len() {
            if self.exact && left != 0 {
                return;
            }
            let pairs: Vec<(u32, u64)> = w.iter().zip(counts.iter()).map(|((r, _), c)| (*r, *c)).collect();
            visit(&TVector::from_pairs(&pairs).expect("r >= 2"));
            return;
        }
        let wt = w[i].1;
        let last = i + 1 == w.len();
        if last && self.exact {
            // the double points are forced
            if left % wt == 0 {
                counts[i] = left / wt;
                self.walk(w, i + 1, 0, counts, visit);
            }
            counts[i] = 0;
            return;
        }
        for c in 0..=left / wt {
            counts[i] = c;
            self.walk(w, i + 1, left - c * wt, counts, visit);
        }
        counts[i] = 0;
    }

    fn combinatorics(&self, kind: Kind, t: TVector) -> WeakCombinatorics {
        WeakCombinatorics { kind, d: self.d, k: self.k, n: self.n, t, ambient: None, curves: Vec::new() }
    }
}

fn hit(wc: WeakCombinatorics, flags: Vec<String>) -> SearchHit {
    let report = check_inequalities(&wc);
    let slacks = report
        .predicates
        .iter()
        .map(|p| {
            let v = match (&p.status, &p.slack) {
                (Status::NotApplicable, _) | (_, None) => "n/a".to_string(),
                (_, Some(s)) => format_fraction(s),
            };
            (p.name.to_string(), v)
        })
        .collect();
    SearchHit { pair: report.pair, slope: report.slope, combinatorics: wc, slacks, flags }
}

/// Estimated number of candidates, without enumerating.
pub fn estimate(spec: &SearchSpec) -> Result<u128> {
    Ok(spec.cells()?.iter().fold(0u128, |a, c| a.saturating_add(c.estimate())))
}

/// All combinatorics within the bounds passing every enabled constraint and
/// the objective, sorted by slope descending.
pub fn threshold_scan(spec: &SearchSpec) -> Result<SearchResult> {
    let cells = spec.cells()?;
    let estimated = cells.iter().fold(0u128, |a, c| a.saturating_add(c.estimate()));
    if estimated > spec.budget {
        return Err(Error::SearchTooLarge { estimated, budget: spec.budget });
    }
    let per_cell: Vec<(u128, Vec<SearchHit>)> = cells
        .par_iter()
        .map(|cell| {
            let mut seen = 0u128;
            let mut hits = Vec::new();
            cell.enumerate(|t| {
                seen += 1;
                let wc = cell.combinatorics(spec.kind, t.clone());
                if !spec.objective.accepts(&log_chern_pair(&wc)) {
                    return;
                }
                let report = check_inequalities(&wc);
                let ok = spec
                    .constraints
                    .iter()
                    .all(|c| report.get(c.predicate()).is_some_and(|p| p.status != Status::Fails));
                if ok {
                    hits.push(hit(wc, Vec::new()));
                }
            });
            (seen, hits)
        })
        .collect();
    let examined = per_cell.iter().map(|(s, _)| s).sum();
    let mut hits: Vec<SearchHit> = per_cell.into_iter().flat_map(|(_, h)| h).collect();
    hits.sort_by(|a, b| b.slope.cmp(&a.slope).then_with(|| a.combinatorics.cmp(&b.combinatorics)));
    Ok(SearchResult { label: format!("{} scan, slope {:?} {}", spec.kind, spec.objective.relation, format_fraction(&spec.objective.slope)), examined, hits })
}

/// The enumeration behind the bound 8/3 for complex line arrangements:
/// `6 <= d <= 9`, `t_d = t_{d-1} = 0`, naive count, stronger inequality,
/// its consequence for slope `>= 8/3`.
pub fn sommese_spec() -> SearchSpec {
    SearchSpec {
        kind: Kind::P2Lines,
        d: Some([6, 9]),
        k: None,
        n: None,
        max_multiplicity: None,
        exclude_top: 2,
        constraints: vec![Constraint::NaiveCount, Constraint::StrongerHirzebruch, Constraint::SommeseReduction],
        objective: Objective { relation: Relation::AtLeast, slope: rat(8, 3) },
        budget: default_budget(),
    }
}

pub fn sommese_search() -> SearchResult {
    let mut r = threshold_scan(&sommese_spec()).expect("built-in spec is valid and small");
    r.label = "line arrangements with slope >= 8/3".into();
    r
}

/// All `(n, t2, t3)` with `n <= n_max` and `4n = 72 + t2 + t3`.
pub fn slope3_enumerate(n_max: u64) -> Result<SearchResult> {
    if n_max < 2 {
        return Err(Error::Invalid(format!("n_max must be at least 2 (got {n_max})")));
    }
    let mut hits = Vec::new();
    let mut examined = 0u128;
    for n in 18..=n_max {
        let s = 4 * n - 72;
        for t3 in 0..=s {
            examined += 1;
            let t = TVector::from_pairs(&[(2, s - t3), (3, t3)])?;
            let wc = WeakCombinatorics::k3(n, t)?;
            let pair = log_chern_pair(&wc);
            let mut flags = Vec::new();
            if (wc.t.f1() as i128 - wc.t.f0() as i128) < n as i128 - 1 {
                flags.push("disconnected".to_string());
            }
            if pair.c2.is_zero() {
                flags.push("slope undefined: c2 = 0".to_string());
            } else if pair.c2 < 0 {
                flags.push("c2 < 0".to_string());
            }
            if pair.c1sq < 0 {
                flags.push("c1^2 < 0".to_string());
            }
            hits.push(hit(wc, flags));
        }
    }
    Ok(SearchResult { label: format!("slope-3 candidates with n <= {n_max}"), examined, hits })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sommese_finds_dual_hesse_only() {
        let r = sommese_search();
        let got = r.combinatorics();
        assert_eq!(got, vec![WeakCombinatorics::lines(9, TVector::from_pairs(&[(3, 12)]).unwrap()).unwrap()]);
        assert_eq!(r.hits[0].slope, Some(rat(8, 3)));
    }

    #[test]
    fn sommese_variants_empty() {
        let mut s = sommese_spec();
        s.objective.relation = Relation::Above;
        assert!(threshold_scan(&s).unwrap().hits.is_empty());
        let mut s = sommese_spec();
        s.d = Some([7, 7]);
        assert!(threshold_scan(&s).unwrap().hits.is_empty());
    }

    #[test]
    fn slope3_counts() {
        assert!(slope3_enumerate(17).unwrap().hits.is_empty());
        let r = slope3_enumerate(18).unwrap();
        assert_eq!(r.hits.len(), 1);
        assert!(r.hits[0].flags.contains(&"disconnected".to_string()));
        let r = slope3_enumerate(20).unwrap();
        let count = |n| r.hits.iter().filter(|h| h.combinatorics.n == n).count();
        assert_eq!((count(19), count(20)), (5, 9));
    }

    #[test]
    fn estimate_matches_enumeration() {
        let s = sommese_spec();
        let mut n = 0u128;
        for c in s.cells().unwrap() {
            c.enumerate(|_| n += 1);
        }
        assert_eq!(estimate(&s).unwrap(), n);
        assert_eq!(threshold_scan(&s).unwrap().examined, n);
    }

    #[test]
    fn budget_enforced() {
        let s = SearchSpec {
            kind: Kind::K3Rational,
            d: None,
            k: None,
            n: Some([2, 40]),
            max_multiplicity: None,
            exclude_top: 0,
            constraints: vec![],
            objective: Objective { relation: Relation::Above, slope: rat(3, 1) },
            budget: 1000,
        };
        assert!(matches!(threshold_scan(&s), Err(Error::SearchTooLarge { .. })));
    }

    #[test]
    fn constraint_kind_mismatch() {
        let mut s = sommese_spec();
        s.constraints.push(Constraint::K3Hirzebruch);
        assert!(threshold_scan(&s).is_err());
    }
}
