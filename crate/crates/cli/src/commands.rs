use std::fmt::Write;

use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;
use serde_json::json;

use logsurf::algebra::field::Field;
use logsurf::algebra::rational::{format_fraction, format_rational};
use logsurf::algebra::RationalField;
use logsurf::geography::{self, check_inequalities, kummer_chern, log_chern, log_chern_pair, Kind, WeakCombinatorics, CATALOG};
use logsurf::groebner::DEFAULT_BUDGET;
use logsurf::incidence::{build_incidence, components_by_multiplicity, export_graph, induced_combinatorics, GraphFormat, TVector};
use logsurf::io;
use logsurf::quartic::{
    find_all_lines, pairwise_reduced, reduce_quartic_with_root, scheme_reduced, verify_line_table, LineSearchOptions,
};
use logsurf::search::{slope3_enumerate, sommese_search, threshold_scan};

use crate::render;
use crate::{Cli, Command, Format, LinesArgs, Outcome, Source};

fn ok(out: String) -> Result<Outcome> {
    Ok(Outcome { out, failure: None })
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

pub fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Slope(src) => slope(cli, src),
        Command::Check(src) => check(cli, src),
        Command::Kummer { source, exponent } => kummer(cli, source, *exponent),
        Command::Catalog { name } => catalog(cli, name.as_deref()),
        Command::Lines(args) => lines(cli, args),
        Command::Verify { lines, file } => verify(cli, lines, file),
        Command::Search { builtin, file } => run_search(cli, builtin.as_deref(), file.as_deref()),
    }
}

fn load(src: &Source) -> Result<(String, WeakCombinatorics)> {
    if let Some(name) = &src.catalog {
        let wc = geography::catalog(name)?;
        return Ok((format!("{name}: {wc}"), wc));
    }
    let path = src.file.as_ref().expect("clap enforces one source");
    let wc = io::read_combinatorics(path)?;
    Ok((format!("{}: {wc}", path.display()), wc))
}

fn slope(cli: &Cli, src: &Source) -> Result<Outcome> {
    let (header, wc) = load(src)?;
    let report = log_chern(&wc)?;
    let checks = check_inequalities(&wc);
    match cli.format {
        Format::Json => ok(to_json(&json!({
            "combinatorics": wc,
            "pair": report.pair,
            "slope": format_fraction(&report.slope),
            "warnings": report.warnings,
            "predicates": checks.predicates,
        }))?),
        _ => ok(render::slope_report(&header, &report, &checks)),
    }
}

fn check(cli: &Cli, src: &Source) -> Result<Outcome> {
    let (header, wc) = load(src)?;
    let checks = check_inequalities(&wc);
    match cli.format {
        Format::Json => ok(to_json(&checks)?),
        _ => ok(render::check_report(&header, &checks)),
    }
}

fn kummer(cli: &Cli, src: &Source, exponent: u64) -> Result<Outcome> {
    let (header, wc) = load(src)?;
    if wc.kind != Kind::P2Lines {
        bail!("Kummer covers are defined for line arrangements, not {}", wc.kind);
    }
    let data = kummer_chern(wc.d, &wc.t, exponent)?;
    if cli.format == Format::Json {
        return ok(to_json(&data)?);
    }
    let mut out = String::new();
    writeln!(out, "{header}")?;
    writeln!(out, "K^2/n^(d-3) = {}", data.k2)?;
    writeln!(out, "e/n^(d-3) = {}", data.e)?;
    let tag = if data.h == 0 { " (ball-quotient equality)" } else { "" };
    writeln!(out, "H({exponent})={}{tag}", data.h)?;
    ok(out)
}

fn catalog(cli: &Cli, name: Option<&str>) -> Result<Outcome> {
    match name {
        None => {
            if cli.format == Format::Json {
                let entries: Vec<_> = CATALOG.iter().map(|(n, d)| json!({"name": n, "description": d})).collect();
                return ok(to_json(&entries)?);
            }
            let mut out = String::new();
            for (n, d) in CATALOG {
                writeln!(out, "{n:<14} {d}")?;
            }
            ok(out)
        }
        Some(name) => {
            let wc = geography::catalog(name)?;
            match cli.format {
                Format::Json => ok(to_json(&wc)?),
                _ => ok(format!("{wc}\n")),
            }
        }
    }
}

/// `comp0+comp2` or `0-15,20`.
fn parse_subset(spec: &str, components: &[Vec<usize>], n_lines: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    if spec.trim_start().starts_with("comp") {
        for part in spec.split('+') {
            let idx: usize = part
                .trim()
                .strip_prefix("comp")
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| anyhow!("bad component reference '{part}'"))?;
            let c = components.get(idx).ok_or_else(|| anyhow!("component {idx} does not exist ({} components)", components.len()))?;
            out.extend(c);
        }
    } else {
        for part in spec.split(',') {
            let part = part.trim();
            let (a, b) = match part.split_once('-') {
                Some((a, b)) => (a.trim().parse::<usize>()?, b.trim().parse::<usize>()?),
                None => {
                    let v = part.parse::<usize>().with_context(|| format!("bad line index '{part}'"))?;
                    (v, v)
                }
            };
            if a > b || b >= n_lines {
                bail!("line range '{part}' outside 0..{n_lines}");
            }
            out.extend(a..=b);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn k3_slope(n: usize, t: &TVector) -> Result<(i128, i128, Option<String>)> {
    let wc = WeakCombinatorics::k3(n as u64, t.clone())?;
    let pair = log_chern_pair(&wc);
    Ok((pair.c1sq, pair.c2, pair.slope().map(|s| format_rational(&s))))
}

fn lines(cli: &Cli, args: &LinesArgs) -> Result<Outcome> {
    let q = io::read_quartic(&args.file)?;
    let (qr, ctx) = reduce_quartic_with_root(&q, args.prime, args.ext, args.root)?;
    let opts = LineSearchOptions { seed: cli.seed, budget: cli.budget.unwrap_or(DEFAULT_BUDGET) };
    let lines = find_all_lines(&qr, &opts)?;
    let k = &qr.field;
    let (g, t) = build_incidence(k, &lines)?;
    if let Some(path) = &args.export_graph {
        let fmt = if path.extension().is_some_and(|e| e == "json") { GraphFormat::Json } else { GraphFormat::Dot };
        std::fs::write(path, export_graph(k, &g, fmt)).with_context(|| format!("writing {}", path.display()))?;
    }
    if cli.format == Format::Dot {
        return ok(export_graph(k, &g, GraphFormat::Dot));
    }
    let reduction = if args.no_reduction_check {
        None
    } else {
        Some((scheme_reduced(&qr, &opts)?, pairwise_reduced(k, &lines)?))
    };
    let n = lines.len();
    let slope = if n > 0 { Some(k3_slope(n, &t)?) } else { None };
    let m = args.components.unwrap_or(4);
    let components = if args.components.is_some() || args.subset.is_some() {
        Some(components_by_multiplicity(&g, m)?)
    } else {
        None
    };
    let subset = match &args.subset {
        Some(spec) => {
            let idx = parse_subset(spec, components.as_deref().unwrap_or(&[]), n)?;
            let ts = induced_combinatorics(&g, &idx)?;
            let s = k3_slope(idx.len(), &ts)?;
            Some((spec.clone(), idx, ts, s))
        }
        None => None,
    };

    if cli.format == Format::Json {
        let rows: Vec<_> = lines.iter().map(|l| l.format(k)).collect();
        let mut v = json!({
            "file": args.file.display().to_string(),
            "field": k.name(),
            "prime": ctx.p,
            "degree": ctx.n,
            "alpha": ctx.alpha_image.as_ref().map(|a| k.format(a)),
            "line_count": n,
            "t": t,
            "c1sq": slope.as_ref().map(|s| s.0),
            "c2": slope.as_ref().map(|s| s.1),
            "slope": slope.as_ref().and_then(|s| s.2.clone()).map(|s| if s.contains('/') { s } else { format!("{s}/1") }),
            "lines": rows,
        });
        if let Some((sr, pr)) = reduction {
            v["good_reduction"] = json!({"scheme_reduced": sr, "pairwise_reduced": pr});
        }
        if let (Some(cs), Some(m)) = (&components, args.components) {
            v["components"] = json!({"min_multiplicity": m, "classes": cs});
        }
        if let Some((spec, idx, ts, s)) = &subset {
            v["subset"] = json!({"spec": spec, "lines": idx, "line_count": idx.len(), "t": ts, "c1sq": s.0, "c2": s.1, "slope": s.2});
        }
        return ok(to_json(&v)?);
    }

    let mut out = String::new();
    writeln!(out, "{} over {}", args.file.display(), k.name())?;
    if let Some(a) = &ctx.alpha_image {
        writeln!(out, "algebraic number -> {}", k.format(a))?;
    }
    match &slope {
        Some((c1, c2, s)) => {
            let e = s.clone().unwrap_or_else(|| "undefined".into());
            writeln!(out, "{n} lines, t={}, E={e}", t.bracket(4))?;
            writeln!(out, "t = {t}; c1^2 = {c1}, c2 = {c2}")?;
        }
        None => writeln!(out, "0 lines")?,
    }
    if let Some((sr, pr)) = reduction {
        writeln!(out, "good reduction: scheme reduced = {sr}, pairwise reduced = {pr}")?;
    }
    if let (Some(cs), Some(m)) = (&components, args.components) {
        let sizes: Vec<usize> = cs.iter().map(|c| c.len()).collect();
        writeln!(out, "components through points of multiplicity >= {m}: {}", render::component_summary(&sizes))?;
        for (i, c) in cs.iter().enumerate().filter(|(_, c)| c.len() > 1) {
            let ti = induced_combinatorics(&g, c)?;
            writeln!(out, "  comp{i}: {} lines, t={}", c.len(), ti.bracket(4))?;
        }
    }
    if let Some((spec, idx, ts, (_, _, s))) = &subset {
        let e = s.clone().unwrap_or_else(|| "undefined".into());
        writeln!(out, "subset {spec}: {} lines, t={}, E={e}", idx.len(), ts.bracket(4))?;
    }
    ok(out)
}

fn verify(cli: &Cli, table: &std::path::Path, file: &std::path::Path) -> Result<Outcome> {
    let planes = io::read_plane_table(table)?;
    let q = io::read_quartic(file)?.over_rationals()?;
    let report = verify_line_table(&planes, &q)?;
    let (_, t) = build_incidence(&RationalField, &report.lines)?;
    let total = report.lines.len();
    let good = report.verified();
    let failures: Vec<usize> = report.failures().iter().map(|i| i + 1).collect();
    let (c1, c2, s) = k3_slope(total, &t)?;
    let failure = (!failures.is_empty()).then(|| format!("{} of {total} lines are not on the quartic", failures.len()));
    let out = if cli.format == Format::Json {
        to_json(&json!({
            "rows": total,
            "verified": good,
            "failed_rows": failures,
            "t": t,
            "c1sq": c1,
            "c2": c2,
            "slope": s.as_ref().map(|s| if s.contains('/') { s.clone() } else { format!("{s}/1") }),
        }))?
    } else {
        let mut out = String::new();
        let e = s.unwrap_or_else(|| "undefined".into());
        if failures.is_empty() {
            writeln!(out, "{good}/{total} lines verified, t2={}, E={e}", t.get(2))?;
        } else {
            let rows: Vec<String> = failures.iter().map(|r| r.to_string()).collect();
            writeln!(out, "{good}/{total} verified, failure at row {}", rows.join(", "))?;
        }
        writeln!(out, "t = {t}; c1^2 = {c1}, c2 = {c2}")?;
        for (i, ok) in report.on_surface.iter().enumerate() {
            writeln!(out, "row {:>3}: {}", i + 1, if *ok { "on surface" } else { "NOT on surface" })?;
        }
        out
    };
    Ok(Outcome { out, failure })
}

fn run_search(cli: &Cli, builtin: Option<&str>, file: Option<&std::path::Path>) -> Result<Outcome> {
    let result = match (builtin, file) {
        (Some("sommese"), _) => sommese_search(),
        (Some(b), _) if b.starts_with("slope3") => {
            let n = b
                .strip_prefix("slope3:")
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| anyhow!("use --builtin slope3:N with N the largest curve count"))?;
            slope3_enumerate(n)?
        }
        (Some(other), _) => bail!("unknown builtin search '{other}' (known: sommese, slope3:N)"),
        (None, Some(path)) => {
            let mut spec = io::read_search_spec(path)?;
            if let Some(b) = cli.budget {
                spec.budget = b as u128;
            }
            threshold_scan(&spec)?
        }
        (None, None) => bail!("give --builtin or --file"),
    };
    match cli.format {
        Format::Json => ok(to_json(&result)?),
        _ => ok(render::search_report(&result)),
    }
}
