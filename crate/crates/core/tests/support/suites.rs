// Randomized property suites. Each returns the number of cases it checked;
// the oracles here deliberately avoid the library code they test.

use std::collections::{BTreeMap, BTreeSet};

use logsurf::algebra::factor::expand;
use logsurf::algebra::{
    factor_univariate, make_extension, Field, FiniteField, Monomial, MonomialOrder, MultiPoly, PolyRing, PrimeField,
    Rational, RationalField, UniPoly,
};
use logsurf::geography::{
    check_inequalities, log_chern_pair, slope3_criterion, Ambient, Curve, Kind, Status, WeakCombinatorics,
};
use logsurf::groebner::{buchberger, solve_ideal, Budget, Ideal};
use logsurf::incidence::{build_incidence, TVector};
use logsurf::quartic::Line;
use logsurf::search::slope3_enumerate;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CASES: usize = 1000;

fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed ^ tag)
}

fn axioms_once<F: Field>(k: &F, a: &F::Elem, b: &F::Elem, c: &F::Elem) {
    assert_eq!(k.add(a, b), k.add(b, a));
    assert_eq!(k.mul(a, b), k.mul(b, a));
    assert_eq!(k.add(&k.add(a, b), c), k.add(a, &k.add(b, c)));
    assert_eq!(k.mul(&k.mul(a, b), c), k.mul(a, &k.mul(b, c)));
    assert_eq!(k.mul(a, &k.add(b, c)), k.add(&k.mul(a, b), &k.mul(a, c)));
    assert_eq!(k.add(a, &k.zero()), *a);
    assert_eq!(k.mul(a, &k.one()), *a);
    assert!(k.is_zero(&k.add(a, &k.neg(a))));
    assert_eq!(k.sub(a, b), k.add(a, &k.neg(b)));
    match k.inv(a) {
        None => assert!(k.is_zero(a)),
        Some(ai) => {
            assert!(k.is_one(&k.mul(a, &ai)));
            assert_eq!(k.div(b, a).unwrap(), k.mul(b, &ai));
        }
    }
}

fn finite_axioms<F: FiniteField>(k: &F, rng: &mut ChaCha8Rng) {
    let (a, b, c) = (k.random(rng), k.random(rng), k.random(rng));
    axioms_once(k, &a, &b, &c);
    let q = k.order();
    // Lagrange and additivity of Frobenius
    if !k.is_zero(&a) {
        assert!(k.is_one(&k.pow(&a, q - 1)));
    }
    assert_eq!(k.pow(&a, q), a);
    assert_eq!(k.frobenius(&k.add(&a, &b)), k.add(&k.frobenius(&a), &k.frobenius(&b)));
    assert_eq!(k.from_int(k.p() as i64), k.zero());
}

/// Field axioms in prime fields, extension fields and Q.
pub fn field_axioms() -> usize {
    let mut r = rng(1);
    let primes = [PrimeField::new(2).unwrap(), PrimeField::new(65537).unwrap(), PrimeField::new(4294967291).unwrap()];
    let exts = [make_extension(2, 4).unwrap(), make_extension(5, 3).unwrap(), make_extension(7, 2).unwrap(), make_extension(3, 5).unwrap()];
    let mut cases = 0;
    for _ in 0..CASES {
        for k in &primes {
            finite_axioms(k, &mut r);
        }
        for k in &exts {
            finite_axioms(k, &mut r);
        }
        let q = |r: &mut ChaCha8Rng| Rational::new(BigInt::from(r.gen_range(-50i64..50)), BigInt::from(r.gen_range(1i64..30)));
        axioms_once(&RationalField, &q(&mut r), &q(&mut r), &q(&mut r));
        cases += 1;
    }
    // exhaustive inverses in a small extension
    let k = make_extension(3, 3).unwrap();
    for a in k.elements().skip(1) {
        assert!(k.is_one(&k.mul(&a, &k.inv(&a).unwrap())));
    }
    cases
}

fn random_poly<F: FiniteField>(k: &F, deg: usize, rng: &mut ChaCha8Rng) -> UniPoly<F::Elem> {
    let mut c: Vec<F::Elem> = (0..deg).map(|_| k.random(rng)).collect();
    let mut lead = k.random(rng);
    while k.is_zero(&lead) {
        lead = k.random(rng);
    }
    c.push(lead);
    UniPoly::from_coeffs(k, c)
}

/// Monic polynomials of degree `d` over a small field, by brute force.
fn monics<F: FiniteField>(k: &F, d: usize) -> Vec<UniPoly<F::Elem>> {
    let q = k.order();
    (0..q.pow(d as u32))
        .map(|mut idx| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push(k.element(idx % q));
                idx /= q;
            }
            c.push(k.one());
            UniPoly::from_coeffs(k, c)
        })
        .collect()
}

fn factor_case<F: FiniteField>(k: &F, f: &UniPoly<F::Elem>, divisors: &[UniPoly<F::Elem>], seed: u64) {
    let (lead, factors) = factor_univariate(f, k, seed).unwrap();
    assert_eq!(expand(&lead, &factors, k), *f, "re-expansion");
    for (i, (g, _)) in factors.iter().enumerate() {
        assert!(factors[i + 1..].iter().all(|(h, _)| h != g), "repeated factor");
    }
    for (g, e) in &factors {
        assert!(*e >= 1);
        assert!(g.is_monic(k) && g.degree().unwrap() >= 1);
        let dg = g.degree().unwrap();
        // no monic divisor of degree <= dg/2 (checked when the candidates were enumerated)
        for h in divisors.iter().filter(|h| {
            let dh = h.degree().unwrap();
            dh >= 1 && 2 * dh <= dg
        }) {
            assert!(!g.rem(h, k).unwrap().is_zero(), "reducible factor {}", g.format(k, "x"));
        }
    }
}

/// Factorization re-expands to the input, with irreducible distinct factors.
pub fn factorization() -> usize {
    let mut r = rng(2);
    let f5 = PrimeField::new(5).unwrap();
    let f9 = make_extension(3, 2).unwrap();
    let div5: Vec<_> = (1..=3).flat_map(|d| monics(&f5, d)).collect();
    let div9: Vec<_> = (1..=2).flat_map(|d| monics(&f9, d)).collect();
    for i in 0..CASES {
        let deg = r.gen_range(1..=7);
        if i % 2 == 0 {
            // products of small pieces to force repeated factors
            let mut f = random_poly(&f5, r.gen_range(1..=3), &mut r);
            let g = random_poly(&f5, r.gen_range(1..=2), &mut r);
            for _ in 0..r.gen_range(0..3) {
                f = f.mul(&g, &f5);
            }
            factor_case(&f5, &f, &div5, i as u64);
            factor_case(&f5, &random_poly(&f5, deg, &mut r), &div5, i as u64);
        } else {
            factor_case(&f9, &random_poly(&f9, r.gen_range(1..=5), &mut r), &div9, i as u64);
        }
    }
    CASES
}

fn random_multi(ring: &PolyRing<PrimeField>, max_deg: u32, terms: usize, rng: &mut ChaCha8Rng) -> MultiPoly<u64> {
    let k = &ring.field;
    let t: Vec<(Monomial, u64)> = (0..terms)
        .map(|_| {
            let e: Vec<u32> = (0..ring.nvars).map(|_| rng.gen_range(0..=max_deg)).collect();
            (Monomial::from_exps(&e).unwrap(), k.random(rng))
        })
        .collect();
    ring.from_terms(t)
}

/// Every generator reduces to zero modulo the computed basis, in both orders.
pub fn groebner_normal_form() -> usize {
    let mut r = rng(3);
    let mut cases = 0;
    for i in 0..CASES {
        let order = if i % 2 == 0 { MonomialOrder::GrevLex } else { MonomialOrder::Lex };
        let p = [5, 7, 11][i % 3];
        let nvars = r.gen_range(2..=3);
        let ring = PolyRing::new(PrimeField::new(p).unwrap(), nvars, order).unwrap();
        let gens: Vec<_> = (0..r.gen_range(1..=3)).map(|_| random_multi(&ring, 2, r.gen_range(1..=4), &mut r)).collect();
        let gb = buchberger(&Ideal::new(ring.clone(), gens.clone())).unwrap();
        for g in &gens {
            assert!(gb.normal_form(g).unwrap().is_zero(), "generator not in the ideal of its basis");
        }
        // products with random multipliers as well
        let m = random_multi(&ring, 1, 2, &mut r);
        let combo = gens.iter().fold(MultiPoly::zero(), |acc, g| ring.add(&acc, &ring.mul(&m, g)));
        assert!(gb.normal_form(&combo).unwrap().is_zero());
        cases += 1;
    }
    cases
}

fn all_points(q: u64, nvars: usize) -> Vec<Vec<u64>> {
    (0..q.pow(nvars as u32))
        .map(|mut idx| {
            (0..nvars)
                .map(|_| {
                    let v = idx % q;
                    idx /= q;
                    v
                })
                .collect()
        })
        .collect()
}

/// Solutions over F_7 agree with exhaustive evaluation on small systems.
pub fn solution_sets() -> usize {
    let mut r = rng(4);
    let p = 7u64;
    let target = make_extension(p, 1).unwrap();
    let mut compared = 0;
    let mut attempts = 0;
    while compared < CASES {
        attempts += 1;
        assert!(attempts < 20 * CASES, "too few zero-dimensional systems");
        let nvars = r.gen_range(2..=3);
        let ring = PolyRing::new(PrimeField::new(p).unwrap(), nvars, MonomialOrder::GrevLex).unwrap();
        let mut gens: Vec<_> = (0..r.gen_range(1..=3)).map(|_| random_multi(&ring, 2, r.gen_range(2..=4), &mut r)).collect();
        let with_field_eqs = attempts % 2 == 0;
        if with_field_eqs {
            for v in 0..nvars {
                let mut e = vec![0u32; nvars];
                e[v] = p as u32;
                let mut e1 = vec![0u32; nvars];
                e1[v] = 1;
                gens.push(ring.from_int_terms(&[(&e, 1), (&e1, -1)]).unwrap());
            }
        }
        let expected: BTreeSet<Vec<u64>> =
            all_points(p, nvars).into_iter().filter(|pt| gens.iter().all(|g| ring.eval(g, pt) == 0)).collect();
        let ideal = Ideal::new(ring.clone(), gens.clone());
        match solve_ideal(&ideal, &target, attempts as u64, &mut Budget::default()) {
            Ok(sols) => {
                let got: BTreeSet<Vec<u64>> = sols
                    .points
                    .iter()
                    .map(|pt| pt.iter().map(|c| target.to_prime(c).expect("F_7 point")).collect())
                    .collect();
                assert_eq!(got.len(), sols.points.len(), "duplicate solutions");
                assert_eq!(got, expected, "system {:?}", gens.iter().map(|g| ring.format(g, &["x", "y", "z"])).collect::<Vec<_>>());
                compared += 1;
            }
            Err(e) => assert!(!with_field_eqs, "field equations make every system finite: {e}"),
        }
    }
    compared
}

fn random_t(r: &mut ChaCha8Rng, max_r: u32) -> TVector {
    let mut t = TVector::new();
    for m in 2..=max_r.max(2) {
        if r.gen_bool(0.6) {
            t.set(m, r.gen_range(0..40)).unwrap();
        }
    }
    t
}

fn p2(curves: usize, selfint: i64) -> Vec<Curve> {
    vec![Curve { selfint, genus: 0 }; curves]
}

/// The general formula on an explicit curve list agrees with every
/// specialized kind.
pub fn specialization() -> usize {
    let mut r = rng(5);
    let plane = Ambient { c1sq: 9, c2: 3 };
    for _ in 0..CASES {
        let d = r.gen_range(2..30u64);
        let k = r.gen_range(2..12u64);
        let n = r.gen_range(2..40u64);

        let t = random_t(&mut r, d.min(8) as u32);
        let wc = WeakCombinatorics::lines(d, t.clone()).unwrap();
        let g = WeakCombinatorics::general(plane, p2(d as usize, 1), t).unwrap();
        assert_eq!(log_chern_pair(&wc), log_chern_pair(&g));
        assert_eq!(log_chern_pair(&wc), log_chern_pair(&wc.to_general()));

        let t = random_t(&mut r, (d + k).min(8) as u32);
        let wc = WeakCombinatorics::conic_lines(d, k, t.clone()).unwrap();
        let mut curves = p2(d as usize, 1);
        curves.extend(p2(k as usize, 4));
        let g = WeakCombinatorics::general(plane, curves, t).unwrap();
        assert_eq!(log_chern_pair(&wc), log_chern_pair(&g));

        let t = random_t(&mut r, k.min(8) as u32);
        let wc = WeakCombinatorics::conics(k, t.clone()).unwrap();
        let g = WeakCombinatorics::general(plane, p2(k as usize, 4), t).unwrap();
        assert_eq!(log_chern_pair(&wc), log_chern_pair(&g));

        let t = random_t(&mut r, n.min(8) as u32);
        let wc = WeakCombinatorics::k3(n, t.clone()).unwrap();
        let g = WeakCombinatorics::general(Ambient { c1sq: 0, c2: 24 }, p2(n as usize, -2), t).unwrap();
        assert_eq!(log_chern_pair(&wc), log_chern_pair(&g));
        assert_eq!(wc.kind, Kind::K3Rational);
    }
    CASES
}

fn minor3(a: &[u64; 4], b: &[u64; 4], c: &[u64; 4], cols: [usize; 3], p: u64) -> u64 {
    let m = |x: &[u64; 4], i: usize| x[cols[i]] as i128;
    let det = m(a, 0) * (m(b, 1) * m(c, 2) - m(b, 2) * m(c, 1)) - m(a, 1) * (m(b, 0) * m(c, 2) - m(b, 2) * m(c, 0))
        + m(a, 2) * (m(b, 0) * m(c, 1) - m(b, 1) * m(c, 0));
    det.rem_euclid(p as i128) as u64
}

/// `x` lies in the span of `a`, `b` (assumed independent).
fn in_span(a: &[u64; 4], b: &[u64; 4], x: &[u64; 4], p: u64) -> bool {
    [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]].iter().all(|&c| minor3(a, b, x, c, p) == 0)
}

fn projective_points(p: u64) -> Vec<[u64; 4]> {
    all_points(p, 4)
        .into_iter()
        .filter(|v| v.iter().find(|&&c| c != 0) == Some(&1))
        .map(|v| [v[0], v[1], v[2], v[3]])
        .collect()
}

/// Incidence builds on random line sets match a point-by-point count, and
/// the meeting pairs satisfy the handshake identity.
pub fn handshake() -> usize {
    let mut r = rng(6);
    let p = 5u64;
    let k = PrimeField::new(p).unwrap();
    let pts = projective_points(p);
    for _ in 0..CASES {
        // lines through a small pool of points, so that many of them concur
        let pool: Vec<[u64; 4]> = (0..r.gen_range(3..8)).map(|_| pts[r.gen_range(0..pts.len())]).collect();
        let mut lines: Vec<Line<u64>> = Vec::new();
        for _ in 0..r.gen_range(2..14) {
            let a = pool[r.gen_range(0..pool.len())];
            let b = if r.gen_bool(0.7) { pool[r.gen_range(0..pool.len())] } else { pts[r.gen_range(0..pts.len())] };
            if let Ok(l) = Line::from_rows(&k, [a, b]) {
                if !lines.contains(&l) {
                    lines.push(l);
                }
            }
        }
        let (g, t) = build_incidence(&k, &lines).unwrap();

        let mut oracle: BTreeMap<u32, u64> = BTreeMap::new();
        for x in &pts {
            let on = lines.iter().filter(|l| in_span(&l.rows[0], &l.rows[1], x, p)).count() as u32;
            if on >= 2 {
                *oracle.entry(on).or_default() += 1;
            }
        }
        let oracle_t = TVector::from_pairs(&oracle.into_iter().collect::<Vec<_>>()).unwrap();
        assert_eq!(t, oracle_t);

        let meeting = (0..lines.len())
            .flat_map(|i| (i + 1..lines.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| pts.iter().any(|x| in_span(&lines[i].rows[0], &lines[i].rows[1], x, p) && in_span(&lines[j].rows[0], &lines[j].rows[1], x, p)))
            .count() as u64;
        let pairs: u64 = t.iter().map(|(r, c)| r as u64 * (r as u64 - 1) / 2 * c).sum();
        assert_eq!(meeting, pairs, "handshake identity");
        let (ld, pd) = g.degree_sequences();
        assert_eq!(ld.iter().sum::<usize>() as u64, t.f1());
        assert_eq!(pd.iter().sum::<usize>() as u64, t.f1());
        assert_eq!(pd.len() as u64, t.f0());
    }
    CASES
}

/// With only double and triple points and positive c2, slope 3 holds exactly
/// when 4n = 72 + t2 + t3.
pub fn slope3_equivalence() -> usize {
    let mut r = rng(7);
    let (mut cases, mut equal_cases) = (0, 0);
    while cases < CASES {
        let n = r.gen_range(3..80u64);
        let t3 = r.gen_range(0..60u64);
        let t2 = if r.gen_bool(0.5) && 4 * n >= 72 + t3 { 4 * n - 72 - t3 } else { r.gen_range(0..200u64) };
        let t = TVector::from_pairs(&[(2, t2), (3, t3)]).unwrap();
        let wc = WeakCombinatorics::k3(n, t.clone()).unwrap();
        // c2 = 24 - 2n + t2 + 2 t3, c1^2 = -2n + 2 t2 + 5 t3, written out here
        let c2 = 24 - 2 * n as i64 + t2 as i64 + 2 * t3 as i64;
        let c1sq = -2 * n as i64 + 2 * t2 as i64 + 5 * t3 as i64;
        if c2 <= 0 {
            continue;
        }
        let pair = log_chern_pair(&wc);
        assert_eq!((pair.c1sq, pair.c2), (c1sq as i128, c2 as i128));
        let slope3 = c1sq == 3 * c2;
        let b = 4 * n == 72 + t2 + t3;
        assert_eq!(slope3, b, "n={n} t2={t2} t3={t3}");
        assert_eq!(slope3_criterion(n, &t).unwrap().is_slope_3, b);
        cases += 1;
        equal_cases += b as usize;
    }
    assert!(equal_cases > CASES / 4, "too few equality cases: {equal_cases}");
    cases
}

/// Every enumerated slope-3 candidate is an equality case of the K3
/// Hirzebruch-type inequality.
pub fn slope3_equality() -> usize {
    let res = slope3_enumerate(45).unwrap();
    for h in &res.hits {
        let wc = &h.combinatorics;
        let (n, t2, t3) = (wc.n as i64, wc.t(2) as i64, wc.t(3) as i64);
        assert_eq!(4 * n - t2 - t3, 72);
        let rep = check_inequalities(wc);
        let p = rep.get("k3_hirzebruch").unwrap();
        assert_eq!(p.status, Status::Holds);
        assert!(p.equality);
        assert_eq!(p.slack, Some(Rational::from_integer(0.into())));
    }
    assert!(res.hits.len() >= CASES, "only {} candidates", res.hits.len());
    res.hits.len()
}

pub const ALL: &[(&str, fn() -> usize)] = &[
    ("field axioms", field_axioms),
    ("factorization re-expansion", factorization),
    ("groebner normal form of generators", groebner_normal_form),
    ("solution sets vs exhaustive search", solution_sets),
    ("general formula specializations", specialization),
    ("handshake identity", handshake),
    ("slope-3 two-way equivalence", slope3_equivalence),
    ("slope-3 candidates attain K3 equality", slope3_equality),
];
