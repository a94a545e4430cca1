//! Incidence graphs of lines and their intersection points.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::field::Field;
use crate::algebra::linalg::{det, nullspace, rank};
use crate::error::{Error, Result};
use crate::quartic::Line;

/// `t_r` for `r >= 2`: the number of points where exactly `r` curves meet.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TVector(BTreeMap<u32, u64>);

impl TVector {
    pub fn new() -> Self {
        TVector::default()
    }

    /// Zero counts are dropped; multiplicities below 2 are rejected.
    pub fn from_pairs(pairs: &[(u32, u64)]) -> Result<Self> {
        let mut t = TVector::new();
        for &(r, c) in pairs {
            t.set(r, c)?;
        }
        Ok(t)
    }

    pub fn set(&mut self, r: u32, count: u64) -> Result<()> {
        if r < 2 {
            return Err(Error::Invalid(format!("multiplicity {r} below 2")));
        }
        if count == 0 {
            self.0.remove(&r);
        } else {
            self.0.insert(r, count);
        }
        Ok(())
    }

    pub fn get(&self, r: u32) -> u64 {
        self.0.get(&r).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.0.iter().map(|(r, c)| (*r, *c))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_multiplicity(&self) -> Option<u32> {
        self.0.keys().next_back().copied()
    }

    /// `f0 = sum t_r`.
    pub fn f0(&self) -> u64 {
        self.0.values().sum()
    }

    /// `f1 = sum r t_r`.
    pub fn f1(&self) -> u64 {
        self.iter().map(|(r, c)| r as u64 * c).sum()
    }

    /// `sum C(r,2) t_r`, the number of meeting pairs.
    pub fn pair_count(&self) -> u64 {
        self.iter().map(|(r, c)| (r as u64 * (r as u64 - 1) / 2) * c).sum()
    }

    /// `[t_2, ..., t_max]` with `max` at least `upto`.
    pub fn bracket(&self, upto: u32) -> String {
        let top = self.max_multiplicity().unwrap_or(2).max(upto);
        let parts: Vec<String> = (2..=top).map(|r| self.get(r).to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

impl fmt::Display for TVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(r, c)| format!("{r}: {c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl Serialize for TVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // string keys, numeric order
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (r, c) in &self.0 {
            map.serialize_entry(&r.to_string(), c)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for TVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m: BTreeMap<String, u64> = BTreeMap::deserialize(d)?;
        let mut t = TVector::new();
        for (k, v) in m {
            let r: u32 = k.trim().parse().map_err(|_| serde::de::Error::custom(format!("bad multiplicity key '{k}'")))?;
            t.set(r, v).map_err(serde::de::Error::custom)?;
        }
        Ok(t)
    }
}

/// Bipartite graph of lines and intersection points. Points are normalized
/// (first nonzero coordinate 1) and sorted; `point_lines[i]` is sorted.
#[derive(Clone, Debug)]
pub struct IncidenceGraph<E> {
    pub lines: Vec<Line<E>>,
    pub points: Vec<[E; 4]>,
    pub point_lines: Vec<Vec<usize>>,
}

impl<E: Clone> IncidenceGraph<E> {
    /// `(point, line)` pairs in canonical order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.point_lines.iter().enumerate().flat_map(|(p, ls)| ls.iter().map(move |&l| (p, l))).collect()
    }

    /// Sorted degree sequences of line nodes and point nodes.
    pub fn degree_sequences(&self) -> (Vec<usize>, Vec<usize>) {
        let mut ld = vec![0usize; self.lines.len()];
        for ls in &self.point_lines {
            for &l in ls {
                ld[l] += 1;
            }
        }
        let mut pd: Vec<usize> = self.point_lines.iter().map(|ls| ls.len()).collect();
        ld.sort_unstable();
        pd.sort_unstable();
        (ld, pd)
    }
}

fn normalize<F: Field>(k: &F, v: &[F::Elem]) -> [F::Elem; 4] {
    let lead = v.iter().find(|x| !k.is_zero(x)).expect("nonzero point");
    let inv = k.inv(lead).unwrap();
    [k.mul(&v[0], &inv), k.mul(&v[1], &inv), k.mul(&v[2], &inv), k.mul(&v[3], &inv)]
}

/// The common point of two lines, or `None` when they are skew.
pub fn intersect_lines<F: Field>(k: &F, a: &Line<F::Elem>, b: &Line<F::Elem>) -> Result<Option<[F::Elem; 4]>> {
    if a == b {
        return Err(Error::IdenticalLines);
    }
    let m: Vec<Vec<F::Elem>> = a.rows.iter().chain(b.rows.iter()).map(|r| r.to_vec()).collect();
    if !k.is_zero(&det(&m, k)) {
        return Ok(None);
    }
    if rank(&m, k) != 3 {
        return Err(Error::IdenticalLines);
    }
    // u r0 + v r1 = -(w r2 + z r3): kernel of the transpose
    let mt: Vec<Vec<F::Elem>> = (0..4).map(|c| (0..4).map(|r| m[r][c].clone()).collect()).collect();
    let ns = nullspace(&mt, k);
    let c = &ns[0];
    let pt: Vec<F::Elem> = (0..4).map(|j| k.add(&k.mul(&c[0], &m[0][j]), &k.mul(&c[1], &m[1][j]))).collect();
    Ok(Some(normalize(k, &pt)))
}

/// Point lies on the line: both defining planes vanish there.
pub fn point_on_line<F: Field>(k: &F, pt: &[F::Elem; 4], line: &Line<F::Elem>) -> bool {
    line.planes(k).iter().all(|h| {
        let s = (0..4).fold(k.zero(), |acc, i| k.add(&acc, &k.mul(&h[i], &pt[i])));
        k.is_zero(&s)
    })
}

/// All pairwise intersections, grouped into points.
pub fn build_incidence<F: Field>(k: &F, lines: &[Line<F::Elem>]) -> Result<(IncidenceGraph<F::Elem>, TVector)> {
    let n = lines.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let hits: Vec<Result<Option<([F::Elem; 4], usize, usize)>>> = pairs
        .par_iter()
        .map(|&(i, j)| Ok(intersect_lines(k, &lines[i], &lines[j])?.map(|p| (p, i, j))))
        .collect();
    let mut groups: BTreeMap<[F::Elem; 4], BTreeSet<usize>> = BTreeMap::new();
    let mut meeting = 0u64;
    for h in hits {
        if let Some((p, i, j)) = h? {
            meeting += 1;
            let g = groups.entry(p).or_default();
            g.insert(i);
            g.insert(j);
        }
    }
    let mut points = Vec::with_capacity(groups.len());
    let mut point_lines = Vec::with_capacity(groups.len());
    let mut t = TVector::new();
    for (p, ls) in groups {
        for &l in &ls {
            assert!(point_on_line(k, &p, &lines[l]), "intersection point off its line");
        }
        let r = ls.len() as u32;
        t.set(r, t.get(r) + 1)?;
        points.push(p);
        point_lines.push(ls.into_iter().collect());
    }
    assert_eq!(meeting, t.pair_count(), "handshake identity");
    Ok((IncidenceGraph { lines: lines.to_vec(), points, point_lines }, t))
}

/// Point multiplicities counting only the lines in `subset`.
pub fn induced_combinatorics<E: Clone>(g: &IncidenceGraph<E>, subset: &[usize]) -> Result<TVector> {
    let set: BTreeSet<usize> = subset.iter().copied().collect();
    if set.len() < 2 {
        return Err(Error::SubsetTooSmall(set.len()));
    }
    if let Some(&bad) = set.iter().find(|&&i| i >= g.lines.len()) {
        return Err(Error::Invalid(format!("line index {bad} out of range")));
    }
    let mut t = TVector::new();
    for ls in &g.point_lines {
        let r = ls.iter().filter(|l| set.contains(l)).count() as u32;
        if r >= 2 {
            t.set(r, t.get(r) + 1)?;
        }
    }
    Ok(t)
}

/// Connected components of lines joined through points of multiplicity at
/// least `m_min`; larger components first, ties by smallest line index.
pub fn components_by_multiplicity<E: Clone>(g: &IncidenceGraph<E>, m_min: usize) -> Result<Vec<Vec<usize>>> {
    if m_min < 2 {
        return Err(Error::Invalid(format!("minimum multiplicity must be at least 2, got {m_min}")));
    }
    let n = g.lines.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for ls in g.point_lines.iter().filter(|ls| ls.len() >= m_min) {
        for w in ls.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        comps.entry(r).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = comps.into_values().collect();
    out.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Dot,
    Json,
}

impl std::str::FromStr for GraphFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(GraphFormat::Dot),
            "json" => Ok(GraphFormat::Json),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

/// DOT or JSON rendering with line nodes `L#` and point nodes `P#`.
pub fn export_graph<F: Field>(k: &F, g: &IncidenceGraph<F::Elem>, format: GraphFormat) -> String {
    match format {
        GraphFormat::Dot => {
            let mut s = String::from("graph incidence {\n");
            for i in 0..g.lines.len() {
                s.push_str(&format!("  L{i} [shape=box];\n"));
            }
            for i in 0..g.points.len() {
                s.push_str(&format!("  P{i} [shape=point];\n"));
            }
            for (p, l) in g.edges() {
                s.push_str(&format!("  P{p} -- L{l};\n"));
            }
            s.push_str("}\n");
            s
        }
        GraphFormat::Json => {
            let lines: Vec<serde_json::Value> = g
                .lines
                .iter()
                .enumerate()
                .map(|(i, l)| {
                    serde_json::json!({
                        "id": format!("L{i}"),
                        "pivots": [l.pivots.0, l.pivots.1],
                        "rows": l.format(k),
                    })
                })
                .collect();
            let points: Vec<serde_json::Value> = g
                .points
                .iter()
                .zip(&g.point_lines)
                .enumerate()
                .map(|(i, (p, ls))| {
                    serde_json::json!({
                        "id": format!("P{i}"),
                        "coords": p.iter().map(|c| k.format(c)).collect::<Vec<_>>(),
                        "multiplicity": ls.len(),
                    })
                })
                .collect();
            let edges: Vec<[String; 2]> = g.edges().into_iter().map(|(p, l)| [format!("P{p}"), format!("L{l}")]).collect();
            let v = serde_json::json!({ "lines": lines, "points": points, "edges": edges });
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::PrimeField;

    fn line(k: &PrimeField, a: [i64; 4], b: [i64; 4]) -> Line<u64> {
        let f = |v: [i64; 4]| v.map(|x| k.from_int(x));
        Line::from_rows(k, [f(a), f(b)]).unwrap()
    }

    #[test]
    fn meeting_and_skew() {
        let k = PrimeField::new(7).unwrap();
        // {x0 = x1 = 0} and {x0 = x2 = 0}
        let l1 = line(&k, [0, 0, 1, 0], [0, 0, 0, 1]);
        let l2 = line(&k, [0, 1, 0, 0], [0, 0, 0, 1]);
        assert_eq!(intersect_lines(&k, &l1, &l2).unwrap(), Some([0, 0, 0, 1]));
        let a = line(&k, [1, 0, 0, 0], [0, 1, 0, 0]);
        let b = line(&k, [0, 0, 1, 0], [0, 0, 0, 1]);
        assert_eq!(intersect_lines(&k, &a, &b).unwrap(), None);
        assert_eq!(intersect_lines(&k, &a, &a), Err(Error::IdenticalLines));
    }

    #[test]
    fn graph_exports() {
        let k = PrimeField::new(7).unwrap();
        let l1 = line(&k, [0, 0, 1, 0], [0, 0, 0, 1]);
        let l2 = line(&k, [0, 1, 0, 0], [0, 0, 0, 1]);
        let (g, t) = build_incidence(&k, &[l1, l2]).unwrap();
        assert_eq!(t, TVector::from_pairs(&[(2, 1)]).unwrap());
        let dot = export_graph(&k, &g, GraphFormat::Dot);
        assert_eq!(dot.matches("shape=").count(), 3);
        assert_eq!(dot.matches(" -- ").count(), 2);
        let a = line(&k, [1, 0, 0, 0], [0, 1, 0, 0]);
        let b = line(&k, [0, 0, 1, 0], [0, 0, 0, 1]);
        let (g, t) = build_incidence(&k, &[a, b]).unwrap();
        assert!(t.is_empty());
        assert_eq!(g.points.len(), 0);
        assert_eq!(export_graph(&k, &g, GraphFormat::Dot).matches("shape=box").count(), 2);
        assert!("svg".parse::<GraphFormat>().is_err());
    }

    #[test]
    fn pencil_components_and_subsets() {
        let k = PrimeField::new(11).unwrap();
        // three lines through (0:0:0:1) in the plane x0 = 0, plus one skew line
        let ls = vec![
            line(&k, [0, 1, 0, 0], [0, 0, 0, 1]),
            line(&k, [0, 0, 1, 0], [0, 0, 0, 1]),
            line(&k, [0, 1, 1, 0], [0, 0, 0, 1]),
            line(&k, [1, 0, 0, 0], [0, 1, 2, 0]),
        ];
        let (g, t) = build_incidence(&k, &ls).unwrap();
        assert_eq!(t.get(3), 1);
        assert_eq!(induced_combinatorics(&g, &[0, 1, 2, 3]).unwrap(), t);
        assert_eq!(induced_combinatorics(&g, &[0, 1]).unwrap(), TVector::from_pairs(&[(2, 1)]).unwrap());
        assert_eq!(induced_combinatorics(&g, &[0]), Err(Error::SubsetTooSmall(1)));
        let comps = components_by_multiplicity(&g, 3).unwrap();
        assert_eq!(comps[0], vec![0, 1, 2]);
        assert_eq!(comps.iter().map(|c| c.len()).sum::<usize>(), 4);
    }

    #[test]
    fn tvector_serde() {
        let t = TVector::from_pairs(&[(2, 12), (4, 9), (10, 1)]).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"2":12,"4":9,"10":1}"#);
        assert_eq!(serde_json::from_str::<TVector>(&s).unwrap(), t);
        assert!(serde_json::from_str::<TVector>(r#"{"1":3}"#).is_err());
        assert_eq!(t.bracket(4), "[12,0,9,0,0,0,0,0,1]");
        assert_eq!((t.f0(), t.f1()), (22, 70));
    }
}
