//! Log Chern numbers, slopes and Hirzebruch-type inequalities of curve
//! arrangements, computed from weak combinatorics alone.
//!
//! For a transversal arrangement of smooth curves `C_i` on a surface `X`, with
//! `t_r` points of multiplicity `r`,
//!
//! ```text
//! c1bar^2 = c1^2(X) - sum C_i^2 + sum (3r-4) t_r + 4 sum (g_i - 1)
//! c2bar   = c2(X)             + sum (r-1)  t_r + 2 sum (g_i - 1)
//! ```
//!
//! The plane and K3 kinds are specializations of this formula.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{as_fraction, as_fraction_opt, rat, Rational};
use crate::error::{Error, Result};
use crate::incidence::TVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    P2Lines,
    P2ConicLines,
    P2Conics,
    K3Rational,
    General,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::P2Lines => "p2_lines",
            Kind::P2ConicLines => "p2_conic_lines",
            Kind::P2Conics => "p2_conics",
            Kind::K3Rational => "k3_rational",
            Kind::General => "general",
        };
        f.write_str(s)
    }
}

/// Chern numbers of the ambient surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Ambient {
    pub c1sq: i64,
    pub c2: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Curve {
    pub selfint: i64,
    pub genus: u64,
}

/// Curve counts and multiplicity counts of an arrangement.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawCombinatorics")]
pub struct WeakCombinatorics {
    pub kind: Kind,
    pub d: u64,
    pub k: u64,
    pub n: u64,
    pub t: TVector,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ambient: Option<Ambient>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub curves: Vec<Curve>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCombinatorics {
    kind: Kind,
    #[serde(default)]
    d: u64,
    #[serde(default)]
    k: u64,
    n: Option<u64>,
    #[serde(default)]
    t: TVector,
    ambient: Option<Ambient>,
    #[serde(default)]
    curves: Vec<Curve>,
}

impl TryFrom<RawCombinatorics> for WeakCombinatorics {
    type Error = Error;

    fn try_from(raw: RawCombinatorics) -> Result<Self> {
        let n = match (raw.n, raw.kind) {
            (Some(n), _) => n,
            (None, Kind::General) => raw.curves.len() as u64,
            (None, Kind::K3Rational) => return Err(Error::Invalid("field 'n' is required for k3_rational".into())),
            (None, _) => raw.d + raw.k,
        };
        let wc = WeakCombinatorics { kind: raw.kind, d: raw.d, k: raw.k, n, t: raw.t, ambient: raw.ambient, curves: raw.curves };
        wc.validate()?;
        Ok(wc)
    }
}

impl WeakCombinatorics {
    pub fn lines(d: u64, t: TVector) -> Result<Self> {
        Self::plane(Kind::P2Lines, d, 0, t)
    }

    pub fn conic_lines(d: u64, k: u64, t: TVector) -> Result<Self> {
        Self::plane(Kind::P2ConicLines, d, k, t)
    }

    pub fn conics(k: u64, t: TVector) -> Result<Self> {
        Self::plane(Kind::P2Conics, 0, k, t)
    }

    fn plane(kind: Kind, d: u64, k: u64, t: TVector) -> Result<Self> {
        let wc = WeakCombinatorics { kind, d, k, n: d + k, t, ambient: None, curves: Vec::new() };
        wc.validate()?;
        Ok(wc)
    }

    pub fn k3(n: u64, t: TVector) -> Result<Self> {
        let wc = WeakCombinatorics { kind: Kind::K3Rational, d: 0, k: 0, n, t, ambient: None, curves: Vec::new() };
        wc.validate()?;
        Ok(wc)
    }

    pub fn general(ambient: Ambient, curves: Vec<Curve>, t: TVector) -> Result<Self> {
        let wc = WeakCombinatorics { kind: Kind::General, d: 0, k: 0, n: curves.len() as u64, t, ambient: Some(ambient), curves };
        wc.validate()?;
        Ok(wc)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Invalid(m));
        match self.kind {
            Kind::P2Lines if self.k != 0 => return bad(format!("p2_lines has no conics (k = {})", self.k)),
            Kind::P2Conics if self.d != 0 => return bad(format!("p2_conics has no lines (d = {})", self.d)),
            Kind::K3Rational | Kind::General if self.d != 0 || self.k != 0 => {
                return bad(format!("{} uses n only; got d = {}, k = {}", self.kind, self.d, self.k))
            }
            _ => {}
        }
        match self.kind {
            Kind::P2Lines | Kind::P2ConicLines | Kind::P2Conics if self.n != self.d + self.k => {
                return bad(format!("n = {} but d + k = {}", self.n, self.d + self.k));
            }
            Kind::General => {
                if self.ambient.is_none() {
                    return bad("kind general needs 'ambient'".into());
                }
                if self.curves.len() as u64 != self.n {
                    return bad(format!("n = {} but {} curves listed", self.n, self.curves.len()));
                }
            }
            _ => {
                if self.ambient.is_some() || !self.curves.is_empty() {
                    return bad(format!("'ambient' and 'curves' only apply to kind general, not {}", self.kind));
                }
            }
        }
        if self.n == 0 {
            return bad("arrangement has no curves".into());
        }
        if let Some(r) = self.t.max_multiplicity() {
            if r as u64 > self.n {
                return bad(format!("t_{r} > 0 but only {} curves", self.n));
            }
        }
        Ok(())
    }

    /// `t_r`, with `t_r = 0` for `r < 2`.
    pub fn t(&self, r: u64) -> u64 {
        if r < 2 || r > u32::MAX as u64 {
            0
        } else {
            self.t.get(r as u32)
        }
    }

    /// The same arrangement written as kind general.
    pub fn to_general(&self) -> WeakCombinatorics {
        let (ambient, curves) = match self.kind {
            Kind::General => return self.clone(),
            Kind::K3Rational => (Ambient { c1sq: 0, c2: 24 }, vec![Curve { selfint: -2, genus: 0 }; self.n as usize]),
            _ => {
                let mut cs = vec![Curve { selfint: 1, genus: 0 }; self.d as usize];
                cs.extend(vec![Curve { selfint: 4, genus: 0 }; self.k as usize]);
                (Ambient { c1sq: 9, c2: 3 }, cs)
            }
        };
        WeakCombinatorics { kind: Kind::General, d: 0, k: 0, n: self.n, t: self.t.clone(), ambient: Some(ambient), curves }
    }
}

impl fmt::Display for WeakCombinatorics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::P2Lines => write!(f, "{} d={} t={}", self.kind, self.d, self.t),
            Kind::P2ConicLines => write!(f, "{} d={} k={} t={}", self.kind, self.d, self.k, self.t),
            Kind::P2Conics => write!(f, "{} k={} t={}", self.kind, self.k, self.t),
            _ => write!(f, "{} n={} t={}", self.kind, self.n, self.t),
        }
    }
}

/// `(f0, f1) = (sum t_r, sum r t_r)`.
pub fn f_invariants(t: &TVector) -> (u64, u64) {
    (t.f0(), t.f1())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LogChernPair {
    pub c1sq: i128,
    pub c2: i128,
}

impl LogChernPair {
    pub fn slope(&self) -> Option<Rational> {
        (self.c2 != 0).then(|| ratio(self.c1sq, self.c2))
    }
}

fn q(x: i128) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

fn ratio(a: i128, b: i128) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

/// `sum_{r >= from} (r - shift) t_r`.
fn weighted(t: &TVector, from: u32, shift: i128) -> i128 {
    t.iter().filter(|(r, _)| *r >= from).map(|(r, c)| (r as i128 - shift) * c as i128).sum()
}

fn choose2(x: u64) -> i128 {
    let x = x as i128;
    x * (x - 1) / 2
}

/// The pair of log Chern numbers, using the formula for the arrangement's kind.
pub fn log_chern_pair(wc: &WeakCombinatorics) -> LogChernPair {
    let f0 = wc.t.f0() as i128;
    let f1 = wc.t.f1() as i128;
    let (d, k, n) = (wc.d as i128, wc.k as i128, wc.n as i128);
    match wc.kind {
        Kind::P2Lines => LogChernPair { c1sq: 9 - 5 * d + 3 * f1 - 4 * f0, c2: 3 - 2 * d + f1 - f0 },
        Kind::P2ConicLines | Kind::P2Conics => {
            LogChernPair { c1sq: 9 - 8 * k - 5 * d + 3 * f1 - 4 * f0, c2: 3 - 2 * k - 2 * d + f1 - f0 }
        }
        Kind::K3Rational => LogChernPair { c1sq: -2 * n + 3 * f1 - 4 * f0, c2: 24 - 2 * n + f1 - f0 },
        Kind::General => {
            let amb = wc.ambient.expect("validated");
            let selfint: i128 = wc.curves.iter().map(|c| c.selfint as i128).sum();
            let genus: i128 = wc.curves.iter().map(|c| c.genus as i128 - 1).sum();
            LogChernPair {
                c1sq: amb.c1sq as i128 - selfint + weighted(&wc.t, 2, 0) * 3 - 4 * f0 + 4 * genus,
                c2: amb.c2 as i128 + f1 - f0 + 2 * genus,
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SlopeReport {
    pub pair: LogChernPair,
    #[serde(with = "as_fraction")]
    pub slope: Rational,
    pub warnings: Vec<String>,
}

/// Exact log Chern numbers and slope. Failed hypotheses of the theorems that
/// guarantee a sensible slope are reported as warnings.
pub fn log_chern(wc: &WeakCombinatorics) -> Result<SlopeReport> {
    let pair = log_chern_pair(wc);
    let slope = pair.slope().ok_or(Error::SlopeUndefined)?;
    let mut warnings = Vec::new();
    if pair.c2 < 0 {
        warnings.push("c2 < 0: denominator nonpositive, outside the theorems' regime".to_string());
    }
    if pair.c1sq < 0 {
        warnings.push("c1^2 < 0".to_string());
    }
    if let Some(diff) = naive_count_defect(wc) {
        if diff != 0 {
            warnings.push(format!("naive count off by {diff}: sum C(r,2) t_r does not match the curve intersections"));
        }
    }
    let hyp = match wc.kind {
        Kind::P2Lines => lines_hypothesis(wc, 4, 2),
        Kind::P2ConicLines => conic_hypothesis(wc, 1),
        Kind::P2Conics => conic_only_hypothesis(wc),
        Kind::K3Rational => connectivity_slack(wc).filter(|s| *s < 0).map(|_| "f1 - f0 >= n - 1".to_string()),
        Kind::General => None,
    };
    if let Some(h) = hyp {
        warnings.push(format!("hypothesis fails: {h}"));
    }
    Ok(SlopeReport { pair, slope, warnings })
}

/// Left minus right side of the naive count, for plane kinds.
fn naive_count_defect(wc: &WeakCombinatorics) -> Option<i128> {
    let pairs = wc.t.pair_count() as i128;
    match wc.kind {
        Kind::P2Lines | Kind::P2ConicLines | Kind::P2Conics => {
            Some(4 * choose2(wc.k) + 2 * (wc.k as i128) * (wc.d as i128) + choose2(wc.d) - pairs)
        }
        _ => None,
    }
}

fn connectivity_slack(wc: &WeakCombinatorics) -> Option<i128> {
    Some(wc.t.f1() as i128 - wc.t.f0() as i128 - (wc.n as i128 - 1))
}

/// `d >= min_d` and `t_d = ... = t_{d-top+1} = 0`; returns the failing condition.
fn lines_hypothesis(wc: &WeakCombinatorics, min_d: u64, top: u64) -> Option<String> {
    let d = wc.d;
    let names = ["t_d", "t_{d-1}", "t_{d-2}"];
    let cond = format!("d >= {min_d} and {} = 0", names[..top as usize].join(" = "));
    if d < min_d || (0..top).any(|i| wc.t(d.saturating_sub(i)) != 0) {
        return Some(cond);
    }
    None
}

/// `k >= 3` and no point lies on `d + k - i` curves for `i < top`.
fn conic_hypothesis(wc: &WeakCombinatorics, top: u64) -> Option<String> {
    let m = wc.d + wc.k;
    let cond = if top == 1 {
        "k >= 3 and t_{d+k} = 0".to_string()
    } else {
        "k >= 3 and t_{d+k} = t_{d+k-1} = 0".to_string()
    };
    if wc.k < 3 || (0..top).any(|i| wc.t(m.saturating_sub(i)) != 0) {
        return Some(cond);
    }
    None
}

fn conic_only_hypothesis(wc: &WeakCombinatorics) -> Option<String> {
    if wc.d != 0 || wc.k < 4 || wc.t(wc.k) != 0 {
        return Some("d = 0, k >= 4 and t_k = 0".to_string());
    }
    None
}

// ---------------------------------------------------------------------------
// Kummer covers

/// Chern numbers of the Kummer cover of exponent `n` branched along a line
/// arrangement, divided by `n^(d-3)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KummerData {
    pub d: u64,
    pub t: TVector,
    pub exponent: u64,
    pub k2: i128,
    pub e: i128,
    /// `(3e - K^2) / n^(d-3)`.
    pub h: i128,
}

pub fn kummer_chern(d: u64, t: &TVector, exponent: u64) -> Result<KummerData> {
    if d == 0 {
        return Err(Error::Invalid("need at least one line".into()));
    }
    if exponent < 2 {
        return Err(Error::Invalid(format!("exponent must be at least 2 (got {exponent})")));
    }
    if let Some(r) = t.max_multiplicity() {
        if r as u64 > d {
            return Err(Error::Invalid(format!("t_{r} > 0 but only {d} lines")));
        }
    }
    if d <= u32::MAX as u64 && t.get(d as u32) > 0 {
        return Err(Error::Pencil(d as u32));
    }
    let (f0, f1) = (t.f0() as i128, t.f1() as i128);
    let t2 = t.get(2) as i128;
    let (n, dd) = (exponent as i128, d as i128);
    let k2 = n * n * (9 - 5 * dd + 3 * f1 - 4 * f0) + 4 * n * (dd - f1 + f0) + f1 - f0 + dd + t2;
    let e = n * n * (3 - 2 * dd + f1 - f0) + 2 * n * (dd - f1 + f0) + f1 - t2;
    let h = n * n * (f0 - dd) + 2 * n * (dd - f1 + f0) + 2 * f1 + f0 - dd - 4 * t2;
    debug_assert_eq!(h, 3 * e - k2);
    Ok(KummerData { d, t: t.clone(), exponent, k2, e, h })
}

// ---------------------------------------------------------------------------
// Inequalities

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    NotApplicable,
}

/// One named inequality evaluated on an arrangement. `slack` is the exact
/// amount by which it holds (negative when it fails).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Predicate {
    pub name: &'static str,
    pub statement: &'static str,
    pub status: Status,
    #[serde(with = "as_fraction_opt")]
    pub slack: Option<Rational>,
    pub equality: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_hypothesis: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InequalityReport {
    pub combinatorics: WeakCombinatorics,
    pub pair: LogChernPair,
    #[serde(with = "as_fraction_opt")]
    pub slope: Option<Rational>,
    pub predicates: Vec<Predicate>,
}

impl InequalityReport {
    pub fn get(&self, name: &str) -> Option<&Predicate> {
        self.predicates.iter().find(|p| p.name == name)
    }
}

struct Builder {
    out: Vec<Predicate>,
}

impl Builder {
    /// Record `slack >= 0` (or `> 0` when `strict`) unless `hyp` names a failed hypothesis.
    fn ineq(&mut self, name: &'static str, statement: &'static str, hyp: Option<String>, slack: Rational, strict: bool) {
        if hyp.is_some() {
            return self.na(name, statement, hyp);
        }
        let holds = slack.is_positive() || (!strict && slack.is_zero());
        self.out.push(Predicate {
            name,
            statement,
            status: if holds { Status::Holds } else { Status::Fails },
            equality: slack.is_zero(),
            slack: Some(slack),
            failed_hypothesis: None,
            note: None,
        });
    }

    fn equation(&mut self, name: &'static str, statement: &'static str, hyp: Option<String>, diff: Rational) {
        if hyp.is_some() {
            return self.na(name, statement, hyp);
        }
        let ok = diff.is_zero();
        self.out.push(Predicate {
            name,
            statement,
            status: if ok { Status::Holds } else { Status::Fails },
            equality: ok,
            slack: Some(diff),
            failed_hypothesis: None,
            note: None,
        });
    }

    fn na(&mut self, name: &'static str, statement: &'static str, hyp: Option<String>) {
        self.out.push(Predicate {
            name,
            statement,
            status: Status::NotApplicable,
            slack: None,
            equality: false,
            failed_hypothesis: hyp,
            note: None,
        });
    }

    fn note(&mut self, note: &'static str) {
        if let Some(p) = self.out.last_mut() {
            p.note = Some(note);
        }
    }
}

fn and(a: Option<String>, b: Option<String>) -> Option<String> {
    match (a, b) {
        (Some(a), Some(b)) => Some(format!("{a}; {b}")),
        (a, b) => a.or(b),
    }
}

fn when(cond: bool, text: &str) -> Option<String> {
    (!cond).then(|| text.to_string())
}

/// Evaluate every inequality and criterion that applies to the arrangement's kind.
pub fn check_inequalities(wc: &WeakCombinatorics) -> InequalityReport {
    let pair = log_chern_pair(wc);
    let slope = pair.slope();
    let mut b = Builder { out: Vec::new() };
    let t2 = wc.t(2) as i128;
    let t3 = wc.t(3) as i128;
    let (d, k, n) = (wc.d as i128, wc.k as i128, wc.n as i128);
    let s5 = weighted(&wc.t, 5, 4);
    let c2_pos = when(pair.c2 > 0, "c2 > 0");
    let gamma = slope.clone().unwrap_or_default();

    match wc.kind {
        Kind::P2Lines => {
            let defect = naive_count_defect(wc).unwrap();
            b.equation("naive_count", "C(d,2) = sum C(r,2) t_r", None, q(defect));
            b.ineq(
                "positivity",
                "c1^2 > 0 and c2 > 0",
                lines_hypothesis(wc, 4, 2),
                q(pair.c1sq.min(pair.c2)),
                true,
            );
            let melchior_hyp = when(wc.d >= 3 && wc.t(wc.d) == 0, "d >= 3 and t_d = 0");
            b.ineq("melchior", "t2 >= 3 + sum_{r>=4} (r-3) t_r", melchior_hyp, q(t2 - 3 - weighted(&wc.t, 4, 3)), false);
            b.note("real arrangements only; equality iff simplicial");
            let h6 = lines_hypothesis(wc, 6, 2);
            b.ineq("hirzebruch", "t2 + t3 >= d + sum_{r>=5} (r-4) t_r", h6.clone(), q(t2 + t3 - d - s5), false);
            b.ineq(
                "stronger_hirzebruch",
                "t2 + 3/4 t3 >= d + sum_{r>=5} (r-4) t_r",
                h6.clone(),
                q(t2) + rat(3, 4) * q(t3) - q(d + s5),
                false,
            );
            b.ineq("sommese_bound", "slope <= 8/3", and(h6.clone(), c2_pos.clone()), rat(8, 3) - &gamma, false);
            b.note("equality only for the dual Hesse arrangement");
            let reduction_hyp = and(and(h6, c2_pos.clone()), when(slope.as_ref().is_some_and(|g| *g >= rat(8, 3)), "slope >= 8/3"));
            b.ineq(
                "sommese_reduction",
                "sum_{r>=5} (r-4) t_r + d + 2 t2 <= 9",
                reduction_hyp,
                q(9 - s5 - d - 2 * t2),
                false,
            );
            b.note("consequence of slope >= 8/3 and the stronger inequality");
            let real_hyp = and(lines_hypothesis(wc, 4, 2), c2_pos.clone());
            b.ineq("real_bound", "slope <= 5/2", real_hyp, rat(5, 2) - &gamma, false);
            b.note("real arrangements only; equality iff simplicial");
            let id_hyp = and(lines_hypothesis(wc, 6, 3), c2_pos);
            let (f0, f1) = (wc.t.f0() as i128, wc.t.f1() as i128);
            let rhs = if pair.c2 != 0 { rat(5, 2) - ratio(3 * f0 - f1 - 3, 2 * pair.c2) } else { Rational::zero() };
            b.equation("five_halves_identity", "slope = 5/2 - (3 f0 - f1 - 3) / (2 c2)", id_hyp, gamma.clone() - rhs);
        }
        Kind::P2ConicLines | Kind::P2Conics => {
            let defect = naive_count_defect(wc).unwrap();
            b.equation("naive_count", "4 C(k,2) + 2 k d + C(d,2) = sum C(r,2) t_r", None, q(defect));
            let h = conic_hypothesis(wc, 1);
            b.ineq(
                "conic_line_hirzebruch",
                "5k + t2 + t3 >= d + sum_{r>=5} (r-4) t_r",
                h.clone(),
                q(5 * k + t2 + t3 - d - s5),
                false,
            );
            b.ineq(
                "conic_line_corollary",
                "8k + 2 t2 + t3 > 3 + d + sum_{r>=5} (r-4) t_r",
                h.clone(),
                q(8 * k + 2 * t2 + t3 - 3 - d - s5),
                true,
            );
            b.ineq("conic_line_denominator", "c2 > 0", h, q(pair.c2), true);
            b.ineq(
                "conic_line_bound",
                "slope < 8/3",
                and(conic_hypothesis(wc, 2), c2_pos.clone()),
                rat(8, 3) - &gamma,
                true,
            );
            let only23 = when(wc.t.max_multiplicity().unwrap_or(2) <= 3, "only double and triple points");
            let dt_hyp = and(and(when(wc.k >= 3, "k >= 3"), only23), c2_pos.clone());
            b.ineq("double_triple_bound", "slope < 5/2", dt_hyp, rat(5, 2) - &gamma, true);
            b.ineq("conic_bound", "slope < 8/3", and(conic_only_hypothesis(wc), c2_pos), rat(8, 3) - &gamma, true);
            b.note("conic arrangements, slope written as 4 - (sum r t_r + 3) / c2");
        }
        Kind::K3Rational => {
            let lhs = 4 * n - t2 + weighted(&wc.t, 3, 4);
            b.ineq("k3_hirzebruch", "4n - t2 + sum_{r>=3} (r-4) t_r <= 72", when(wc.n >= 2, "n >= 2"), q(72 - lhs), false);
            b.ineq("k3_criterion", "n > 20 + t2/6", None, q(n - 20) - ratio(t2, 6), true);
            b.note("necessary for slope >= 8/3");
            b.ineq("connectivity", "f1 - f0 >= n - 1", None, q(connectivity_slack(wc).unwrap()), false);
            b.note("necessary condition for a connected arrangement; not sufficient");
            let low = when(wc.t.max_multiplicity().unwrap_or(2) <= 3, "t_r = 0 for r >= 4");
            b.equation("slope3_criterion", "4n = 72 + t2 + t3", low, q(4 * n - 72 - t2 - t3));
            b.note("holds iff slope = 3 when only double and triple points occur");
        }
        Kind::General => {}
    }
    InequalityReport { combinatorics: wc.clone(), pair, slope, predicates: b.out }
}

// ---------------------------------------------------------------------------
// Slope 3 on K3 surfaces

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Slope3Check {
    pub is_slope_3: bool,
    /// The necessary condition `f1 - f0 >= n - 1`.
    pub connected: bool,
    pub pair: LogChernPair,
    #[serde(with = "as_fraction_opt")]
    pub slope: Option<Rational>,
}

/// Whether `4n = 72 + t2 + t3` with no points of multiplicity 4 or more.
pub fn slope3_criterion(n: u64, t: &TVector) -> Result<Slope3Check> {
    if n < 2 {
        return Err(Error::Invalid(format!("need n >= 2 (got {n})")));
    }
    let wc = WeakCombinatorics::k3(n, t.clone())?;
    let low = t.max_multiplicity().unwrap_or(2) <= 3;
    let is = low && 4 * n as i128 == 72 + t.get(2) as i128 + t.get(3) as i128;
    let pair = log_chern_pair(&wc);
    let slope = pair.slope();
    if let (true, Some(s)) = (is, &slope) {
        assert_eq!(*s, rat(3, 1), "slope-3 criterion disagrees with the slope formula");
    }
    Ok(Slope3Check { is_slope_3: is, connected: connectivity_slack(&wc).unwrap() >= 0, pair, slope })
}

// ---------------------------------------------------------------------------
// Catalog

/// Named arrangements; `name:param` for the parametric families.
pub const CATALOG: &[(&str, &str)] = &[
    ("hesse", "12 lines, t = {2: 12, 4: 9}"),
    ("dual-hesse", "9 lines, t = {3: 12}"),
    ("ceva:n", "3n lines, t_3 = n^2, t_n = 3 (n >= 2)"),
    ("polyhedral:k", "2k lines, t_2 = k, t_3 = C(k,2), t_k = 1 (k >= 3)"),
    ("a1-6", "6 lines, t = {2: 3, 3: 4}"),
    ("klein", "21 lines and 21 conics, t = {2: 42, 3: 252, 4: 189}"),
    ("fermat-48", "48 lines on the Fermat quartic, t = {2: 192, 4: 24}"),
    ("fermat-32", "two of the three Fermat classes, t = {2: 64, 4: 16}"),
    ("fermat-16", "one Fermat class, t = {4: 8}"),
    ("schur-64", "64 lines on the Schur quartic, t = {2: 336, 3: 64, 4: 8}"),
    ("schur-48", "Schur lines of the second kind, t = {2: 144, 3: 64}"),
    ("schur-16", "Schur lines of the first kind, t = {4: 8}"),
    ("k3-25", "25 rational curves on a K3 surface, t = {2: 30}"),
    ("nodal-24", "24 lines on a quartic with 96 double points, t = {2: 96}"),
];

fn tv(pairs: &[(u32, u64)]) -> TVector {
    TVector::from_pairs(pairs).expect("catalog multiplicities are >= 2")
}

fn unknown(name: &str) -> Error {
    let known: Vec<&str> = CATALOG.iter().map(|(n, _)| *n).collect();
    Error::UnknownCatalog { name: name.to_string(), known: known.join(", ") }
}

/// Look up a catalog entry such as `hesse` or `ceva:4`.
pub fn catalog(spec: &str) -> Result<WeakCombinatorics> {
    let spec = spec.trim();
    let (name, param) = match spec.split_once(':') {
        Some((n, p)) => {
            let v: u64 = p.trim().parse().map_err(|_| Error::Parse(format!("bad catalog parameter '{p}'")))?;
            (n.trim(), Some(v))
        }
        None => (spec, None),
    };
    let need = |min: u64| -> Result<u64> {
        match param {
            Some(v) if v >= min => Ok(v),
            Some(v) => Err(Error::Invalid(format!("{name} needs a parameter >= {min} (got {v})"))),
            None => Err(Error::Invalid(format!("{name} needs a parameter, e.g. {name}:{min}"))),
        }
    };
    if param.is_some() && !matches!(name, "ceva" | "polyhedral") {
        return Err(unknown(spec));
    }
    match name {
        "hesse" => WeakCombinatorics::lines(12, tv(&[(2, 12), (4, 9)])),
        "dual-hesse" => WeakCombinatorics::lines(9, tv(&[(3, 12)])),
        "ceva" => {
            let m = need(2)?;
            let mut t = TVector::new();
            t.set(3, m * m)?;
            t.set(m as u32, t.get(m as u32) + 3)?;
            WeakCombinatorics::lines(3 * m, t)
        }
        "polyhedral" => {
            let m = need(3)?;
            let mut t = TVector::new();
            t.set(2, m)?;
            t.set(3, m * (m - 1) / 2)?;
            t.set(m as u32, t.get(m as u32) + 1)?;
            WeakCombinatorics::lines(2 * m, t)
        }
        "a1-6" => WeakCombinatorics::lines(6, tv(&[(2, 3), (3, 4)])),
        "klein" => WeakCombinatorics::conic_lines(21, 21, tv(&[(2, 42), (3, 252), (4, 189)])),
        "fermat-48" => WeakCombinatorics::k3(48, tv(&[(2, 192), (4, 24)])),
        "fermat-32" => WeakCombinatorics::k3(32, tv(&[(2, 64), (4, 16)])),
        "fermat-16" => WeakCombinatorics::k3(16, tv(&[(4, 8)])),
        "schur-64" => WeakCombinatorics::k3(64, tv(&[(2, 336), (3, 64), (4, 8)])),
        "schur-48" => WeakCombinatorics::k3(48, tv(&[(2, 144), (3, 64)])),
        "schur-16" => WeakCombinatorics::k3(16, tv(&[(4, 8)])),
        "k3-25" => WeakCombinatorics::k3(25, tv(&[(2, 30)])),
        "nodal-24" => WeakCombinatorics::k3(24, tv(&[(2, 96)])),
        _ => Err(unknown(spec)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn slope(name: &str) -> Rational {
        log_chern(&catalog(name).unwrap()).unwrap().slope
    }

    #[test]
    fn f_invariants_examples() {
        assert_eq!(f_invariants(&tv(&[(3, 12)])), (12, 36));
        assert_eq!(f_invariants(&TVector::new()), (0, 0));
        assert_eq!(f_invariants(&tv(&[(2, 12), (4, 9)])), (21, 60));
    }

    #[test]
    fn catalog_slopes() {
        let dh = log_chern(&catalog("dual-hesse").unwrap()).unwrap();
        assert_eq!((dh.pair.c1sq, dh.pair.c2), (24, 9));
        assert_eq!(dh.slope, rat(8, 3));
        assert_eq!(slope("klein"), rat(108, 43));
        assert_eq!(log_chern_pair(&catalog("klein").unwrap()), LogChernPair { c1sq: 2592, c2: 1032 });
        assert_eq!(slope("fermat-48"), rat(5, 2));
        assert_eq!(slope("fermat-32"), rat(8, 3));
        assert_eq!(slope("schur-48"), rat(64, 25));
        let k = log_chern(&catalog("k3-25").unwrap()).unwrap();
        assert_eq!((k.pair.c1sq, k.pair.c2), (10, 4));
        assert_eq!(k.slope, rat(5, 2));
        assert_eq!(slope("ceva:4"), rat(53, 20));
        assert_eq!(slope("polyhedral:5"), rat(5, 2));
        assert_eq!(catalog("ceva:3").unwrap().t, catalog("dual-hesse").unwrap().t);
    }

    #[test]
    fn catalog_errors() {
        match catalog("nope") {
            Err(Error::UnknownCatalog { known, .. }) => assert!(known.contains("dual-hesse")),
            other => panic!("{other:?}"),
        }
        assert!(catalog("ceva").is_err());
        assert!(catalog("ceva:1").is_err());
        assert!(catalog("hesse:3").is_err());
    }

    #[test]
    fn kummer_examples() {
        let hesse = catalog("hesse").unwrap();
        assert_eq!(kummer_chern(12, &hesse.t, 3).unwrap().h, 0);
        let dh = catalog("dual-hesse").unwrap();
        let kd = kummer_chern(9, &dh.t, 3).unwrap();
        assert_eq!(kd.h, 12);
        assert_eq!(kd.h, 3 * kd.e - kd.k2);
        assert_eq!(kummer_chern(3, &tv(&[(3, 1)]), 2), Err(Error::Pencil(3)));
    }

    #[test]
    fn hesse_and_polyhedral_equalities() {
        let r = check_inequalities(&catalog("hesse").unwrap());
        let h = r.get("hirzebruch").unwrap();
        assert_eq!(h.status, Status::Holds);
        assert!(h.equality);
        let r = check_inequalities(&catalog("polyhedral:5").unwrap());
        let m = r.get("melchior").unwrap();
        assert_eq!((m.status, m.equality), (Status::Holds, true));
        assert!(r.get("real_bound").unwrap().equality);
        let r = check_inequalities(&catalog("dual-hesse").unwrap());
        assert!(r.get("sommese_bound").unwrap().equality);
        assert_eq!(r.get("naive_count").unwrap().status, Status::Holds);
    }

    #[test]
    fn k3_predicates() {
        let r = check_inequalities(&catalog("fermat-48").unwrap());
        assert_eq!(r.get("k3_hirzebruch").unwrap().slack, Some(rat(72, 1)));
        let r = check_inequalities(&catalog("fermat-32").unwrap());
        let c = r.get("k3_criterion").unwrap();
        assert_eq!(c.status, Status::Holds);
        assert_eq!(c.slack, Some(rat(32 - 20, 1) - rat(64, 6)));
        assert_eq!(r.get("slope3_criterion").unwrap().status, Status::NotApplicable);
    }

    #[test]
    fn inapplicable_names_hypothesis() {
        let r = check_inequalities(&catalog("a1-6").unwrap());
        let h = r.get("hirzebruch").unwrap();
        assert_eq!(h.status, Status::Holds);
        let small = WeakCombinatorics::lines(5, tv(&[(2, 10)])).unwrap();
        let h = check_inequalities(&small).get("hirzebruch").unwrap().clone();
        assert_eq!(h.status, Status::NotApplicable);
        assert!(h.failed_hypothesis.unwrap().contains("d >= 6"));
    }

    #[test]
    fn slope3_examples() {
        let c = slope3_criterion(20, &tv(&[(2, 4), (3, 4)])).unwrap();
        assert!(c.is_slope_3);
        assert_eq!(c.slope, Some(rat(3, 1)));
        assert!(c.pair.c1sq < 0 && c.pair.c2 < 0);
        let f = catalog("fermat-32").unwrap();
        assert!(!slope3_criterion(32, &f.t).unwrap().is_slope_3);
        let e = slope3_criterion(18, &TVector::new()).unwrap();
        assert!(e.is_slope_3 && !e.connected);
    }

    #[test]
    fn general_matches_specializations() {
        for name in ["hesse", "klein", "fermat-48", "k3-25", "ceva:7"] {
            let wc = catalog(name).unwrap();
            assert_eq!(log_chern_pair(&wc), log_chern_pair(&wc.to_general()), "{name}");
        }
    }

    #[test]
    fn file_roundtrip_and_validation() {
        let wc: WeakCombinatorics = toml::from_str("kind = \"k3_rational\"\nn = 25\n[t]\n2 = 30\n").unwrap();
        assert_eq!(wc, catalog("k3-25").unwrap());
        let js = serde_json::to_string(&catalog("klein").unwrap()).unwrap();
        let back: WeakCombinatorics = serde_json::from_str(&js).unwrap();
        assert_eq!(back, catalog("klein").unwrap());
        let bad = serde_json::from_str::<WeakCombinatorics>(r#"{"kind":"p2_lines","d":3,"t":{"5":1}}"#);
        assert!(bad.is_err());
        let bad = serde_json::from_str::<WeakCombinatorics>(r#"{"kind":"p2_lines","d":3,"n":4}"#);
        assert!(bad.is_err());
    }
}
