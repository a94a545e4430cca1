//! Plain-text rendering of reports.

use std::fmt::Write;

use logsurf::algebra::rational::{format_decimal, format_rational, Rational};
use logsurf::geography::{InequalityReport, Predicate, SlopeReport, Status};
use logsurf::search::SearchResult;

pub fn slope_text(r: &Rational) -> String {
    format!("{} ({})", format_rational(r), format_decimal(r, 6))
}

fn label(name: &str) -> &'static str {
    match name {
        "naive_count" => "Naive count",
        "positivity" => "Positivity",
        "melchior" => "Melchior",
        "hirzebruch" => "Hirzebruch",
        "stronger_hirzebruch" => "Stronger Hirzebruch",
        "sommese_bound" => "Sommese bound",
        "sommese_reduction" => "Sommese reduction",
        "real_bound" => "Real bound",
        "five_halves_identity" => "Five-halves identity",
        "conic_line_hirzebruch" => "Conic-line Hirzebruch",
        "conic_line_corollary" => "Conic-line corollary",
        "conic_line_denominator" => "Conic-line denominator",
        "conic_line_bound" => "Conic-line bound",
        "double_triple_bound" => "Double/triple bound",
        "conic_bound" => "Conic bound",
        "k3_hirzebruch" => "K3 Hirzebruch",
        "k3_criterion" => "K3 criterion",
        "connectivity" => "Connectivity",
        "slope3_criterion" => "Slope-3 criterion",
        _ => "Predicate",
    }
}

fn equality_meaning(name: &str) -> Option<&'static str> {
    match name {
        "melchior" | "real_bound" => Some("simplicial"),
        "sommese_bound" => Some("dual Hesse"),
        "hirzebruch" => Some("ball quotient for exponent 3"),
        _ => None,
    }
}

pub fn predicate_line(p: &Predicate) -> String {
    let verdict = match p.status {
        Status::Holds if p.equality => match equality_meaning(p.name) {
            Some(m) => format!("equality ({m})"),
            None => "equality".to_string(),
        },
        Status::Holds => "holds".to_string(),
        Status::Fails => "FAILS".to_string(),
        Status::NotApplicable => {
            format!("not applicable (needs {})", p.failed_hypothesis.as_deref().unwrap_or("?"))
        }
    };
    let mut s = format!("{}: {verdict}", label(p.name));
    if let Some(slack) = &p.slack {
        let _ = write!(s, "  [slack {}; {}]", format_rational(slack), p.statement);
    } else {
        let _ = write!(s, "  [{}]", p.statement);
    }
    if let Some(n) = p.note {
        let _ = write!(s, "  ({n})");
    }
    s
}

pub fn slope_report(header: &str, s: &SlopeReport, checks: &InequalityReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{header}");
    let _ = writeln!(out, "c1^2 = {}, c2 = {}", s.pair.c1sq, s.pair.c2);
    let _ = writeln!(out, "slope: {}", slope_text(&s.slope));
    for w in &s.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    for p in checks.predicates.iter().filter(|p| p.status != Status::NotApplicable) {
        let _ = writeln!(out, "{}", predicate_line(p));
    }
    out
}

pub fn check_report(header: &str, checks: &InequalityReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{header}");
    let _ = writeln!(out, "c1^2 = {}, c2 = {}", checks.pair.c1sq, checks.pair.c2);
    match &checks.slope {
        Some(s) => {
            let _ = writeln!(out, "slope: {}", slope_text(s));
        }
        None => {
            let _ = writeln!(out, "slope: undefined (c2 = 0)");
        }
    }
    for p in &checks.predicates {
        let _ = writeln!(out, "{}", predicate_line(p));
    }
    out
}

pub fn search_report(r: &SearchResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", r.label);
    let _ = writeln!(out, "examined {} candidates, {} results", r.examined, r.hits.len());
    for h in &r.hits {
        let slope = h.slope.as_ref().map_or("undefined".to_string(), format_rational);
        let _ = write!(out, "{}  slope {slope}", h.combinatorics);
        if !h.flags.is_empty() {
            let _ = write!(out, "  [{}]", h.flags.join(", "));
        }
        out.push('\n');
    }
    out
}

/// `3 components × 16 lines`, or `1 component × 16 lines + 48 components × 1 line`.
pub fn component_summary(sizes: &[usize]) -> String {
    let mut groups: Vec<(usize, usize)> = Vec::new();
    for &s in sizes {
        match groups.iter_mut().find(|(size, _)| *size == s) {
            Some(g) => g.1 += 1,
            None => groups.push((s, 1)),
        }
    }
    groups.sort_by(|a, b| b.0.cmp(&a.0));
    let parts: Vec<String> = groups
        .iter()
        .map(|(size, count)| {
            let c = if *count == 1 { "component" } else { "components" };
            let l = if *size == 1 { "line" } else { "lines" };
            format!("{count} {c} × {size} {l}")
        })
        .collect();
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_text() {
        assert_eq!(component_summary(&[16, 16, 16]), "3 components × 16 lines");
        let mut v = vec![16];
        v.extend(vec![1; 48]);
        assert_eq!(component_summary(&v), "1 component × 16 lines + 48 components × 1 line");
    }
}
