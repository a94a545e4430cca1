use std::path::PathBuf;

use logsurf::incidence::{build_incidence, TVector};
use logsurf::io::read_quartic;
use logsurf::quartic::{
    find_all_lines, reduce_quartic, reduce_quartic_with_root, two_prime_agreement, LineSearchOptions, QuarticForm,
};

fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/quartics").join(rel)
}

// Equations as printed, with s = 3 substituted and p, q kept symbolic below.
const PRINTED: &[(&str, &str, Option<&str>)] = &[
    ("schur.json", "x0^4 - x0*x1^3 - x2^4 + x2*x3^3", None),
    ("fermat.json", "x0^4 + x1^4 + x2^4 + x3^4", None),
    ("quartic_52a.json", "x0^3*x2 + x1*x2^3 + x1^3*x3 + x0*x3^3", None),
    (
        "quartic_54.json",
        "3*x2*x0^3 + 3*x2*x3*x0^2 - x2^3*x0 - 3*x1*x2^2*x0 - 3*x1*x3^2*x0 - x1*x3^3 + 3*x1^3*x3 + 3*x1^2*x2*x3",
        None,
    ),
    ("quartic_26.json", "x1^3*x2 - x1*x2^3 + x0^3*x3 - x0*x3^3 - 3*x0^2*x1*x2", None),
    (
        "quartic_52b.json",
        "a^4*x1*x3^3 - a^3*x1^3*x3 - (a^3 - 2*a)*x0*x1^2*x2 + (2*a^3 - a)*x0^2*x1*x3 - (2*a^2 - 1)*x1*x2^2*x3 \
         - (a^4 - 2*a^2)*x0*x2*x3^2 - a*x0^3*x2 - x0*x2^3",
        Some("a^4 - 3*a^3 + 2*a^2 + 3*a + 1"),
    ),
    (
        "quartic_52c.json",
        "(-36*a^2 + 6696*a + 2052)*x1*x0^3 + (11*a^2 - 5542*a + 1121)*x2*x3*x0^2 + (-540*a^2 + 6048*a - 684)*x1^3*x0 \
         + (-3919*a^2 + 2318*a - 361)*x3^3*x0 + (-116*a^2 + 1612*a - 380)*x1*x2*x3*x0 + 3312*a^2*x1^4 \
         + (-19*a^2 - 100*a + 209)*x1*x2^3 + (-3331*a^2 - 100*a + 209)*x1^2*x2*x3 + 4968*a*x1^2*x0^2 + x0^4",
        Some("a^3 - 201*a^2 + 111*a - 19"),
    ),
    (
        "quartic_24.json",
        "-3*x1*x0*(3*x0*x2 + 3*x1*x3 + x1*x2 + x0*x3) + x3*x0^3 - x3^3*x0 - x1*x2^3 + x1^3*x2",
        None,
    ),
];

#[test]
fn data_files_match_printed_equations() {
    for (file, expr, minpoly) in PRINTED {
        let want = QuarticForm::parse(expr, minpoly.map(|m| ("a", m))).unwrap();
        assert_eq!(read_quartic(&data(file)).unwrap(), want, "{file}");
    }
}

#[test]
fn nodal_quartic_from_parameters() {
    let (p, q) = (2i64, 3i64);
    let (p2, q2, p4, q4) = (p * p, q * q, p.pow(4), q.pow(4));
    let expr = format!(
        "{a}*(x0^2*x1^2 + x2^2*x3^2) - {b}*(x0^2*x2^2 + x1^2*x3^2) - {c}*(x1^2*x2^2 + x0^2*x3^2) + {d}*(x0^4 + x1^4 + x2^4 + x3^4)",
        a = (p4 + 1) * (q4 + 1),
        b = 2 * (p4 + 1) * q2,
        c = 2 * p2 * (q4 + 1),
        d = 2 * p2 * q2
    );
    let want = QuarticForm::parse(&expr, None).unwrap();
    assert_eq!(read_quartic(&data("nodal_24.json")).unwrap(), want);
}

#[test]
fn fermat_at_three_is_not_good_reduction() {
    // over F_9 the Fermat quartic is the Hermitian surface, with 112 lines
    let q = read_quartic(&data("fermat.json")).unwrap();
    let (qr, _) = reduce_quartic(&q, 3, 2).unwrap();
    let lines = find_all_lines(&qr, &LineSearchOptions::default()).unwrap();
    assert_eq!(lines.len(), 112);
    let a = two_prime_agreement(&q, (3, 2), (73, 1), &LineSearchOptions::default()).unwrap();
    assert!(!a.agree);
    assert_eq!(a.second.line_count, 48);
}

#[test]
fn conjugate_roots_give_the_same_configuration() {
    let q = read_quartic(&data("quartic_52b.json")).unwrap();
    let want = TVector::from_pairs(&[(2, 356), (3, 8)]).unwrap();
    let mut images = Vec::new();
    for root in 0..4 {
        let (qr, ctx) = reduce_quartic_with_root(&q, 5, 4, root).unwrap();
        images.push(ctx.alpha_image.clone().unwrap());
        let lines = find_all_lines(&qr, &LineSearchOptions::default()).unwrap();
        let (_, t) = build_incidence(&qr.field, &lines).unwrap();
        assert_eq!((lines.len(), t), (52, want.clone()), "root {root}");
    }
    images.dedup();
    assert_eq!(images.len(), 4);
    assert!(reduce_quartic_with_root(&q, 5, 4, 4).is_err());
}

#[test]
fn seeds_do_not_change_the_lines() {
    let q = read_quartic(&data("quartic_26.json")).unwrap();
    let (qr, _) = reduce_quartic(&q, 5, 8).unwrap();
    let mut a = find_all_lines(&qr, &LineSearchOptions { seed: 1, ..Default::default() }).unwrap();
    let mut b = find_all_lines(&qr, &LineSearchOptions { seed: 99, ..Default::default() }).unwrap();
    a.sort();
    b.sort();
    assert_eq!(a, b);
}
