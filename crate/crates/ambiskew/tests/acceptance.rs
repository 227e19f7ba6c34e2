//! End-to-end acceptance suite. Each criterion prints one pass/fail line;
//! the target exits nonzero if any criterion fails. Runs without the libtest
//! harness so the lines are never captured.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use ambiskew::catalog;
use ambiskew::dsl::{parse_document, parse_spec};
use ambiskew::report::{reports_json, run_checks, Report, RunOptions, Subject};
use ambiskew::scalars::Scalar;
use ambiskew::verdict::{Certificate, Status};
use ambiskew::verify::verify_certificate;
use ambiskew::Bounds;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn run_source(src: &str) -> Vec<Report> {
    let doc = parse_spec(src).unwrap_or_else(|e| panic!("{e}\n{src}"));
    run_checks(&doc, &Bounds::default(), RunOptions::default())
}

fn run_entry(name: &str) -> Vec<Report> {
    catalog::get(name).unwrap().run(&Bounds::default(), RunOptions::default()).unwrap()
}

fn find<'a>(reports: &'a [Report], query: &str) -> &'a Report {
    reports.iter().find(|r| r.query == query).unwrap_or_else(|| panic!("no report for {query}"))
}

fn verified(r: &Report) {
    assert_eq!(verify_certificate(r), Ok(true), "certificate of {} does not verify", r.query);
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn lit(q: &BigRational) -> String {
    if q.is_integer() {
        format!("({})", q.numer())
    } else {
        format!("({}/{})", q.numer(), q.denom())
    }
}

/// Whether `q` is an odd integer (of either sign).
fn odd_integer(q: &BigRational) -> bool {
    q.is_integer() && (q.numer() % BigInt::from(2)) != BigInt::zero()
}

fn expect(r: &Report, holds: bool) {
    let want = if holds { Status::Holds } else { Status::Fails };
    assert_eq!(r.status(), want, "{}", r.query);
}

fn within(start: Instant, limit: Duration) {
    let took = start.elapsed();
    assert!(took < limit, "took {took:?}, limit {limit:?}");
}

fn trichotomy() {
    let start = Instant::now();

    let plane = run_entry("quantum_plane");
    let conf = find(&plane, "conformal(R)");
    let Some(Certificate::Splitting { u }) = conf.certificate() else { panic!("{conf:?}") };
    let Subject::Ring(ring) = &conf.subject else { panic!() };
    assert!(ring.base().is_zero(u), "u should be 0");
    expect(find(&plane, "simple(R)"), false);
    expect(find(&plane, "localized_simple(R)"), true);

    let root = run_entry("quantum_plane_root");
    let loc = find(&root, "localized_simple(R)");
    expect(loc, false);
    let Some(Certificate::Special { m, j, .. }) = loc.certificate() else { panic!("{loc:?}") };
    assert_eq!((*m, *j), (5, 0), "order of zeta_5");

    let weyl = run_entry("weyl");
    expect(find(&weyl, "simple(R)"), true);
    let units = find(&weyl, "units(R)");
    expect(units, true);
    assert!(matches!(units.certificate(), Some(Certificate::EigenUnits { mu, .. }) if mu.is_one()));
    let Subject::Ring(ring) = &units.subject else { panic!() };
    for m in 0..20u64 {
        assert_eq!(ring.v_m(m), ring.base().from_scalar(Scalar::from_int(ring.ctx(), m as i64)), "v^({m}) = {m}");
    }

    let f5 = run_entry("weyl_f5");
    let s = find(&f5, "simple(R)");
    expect(s, false);
    let Subject::Ring(ring) = &s.subject else { panic!() };
    let a = ring.base();
    let units = s.decision.condition("units").unwrap();
    assert!(matches!(&units.verdict.certificate, Certificate::NonUnitAt { m: 5, .. }), "{units:?}");
    let charp = s.decision.condition("charp").unwrap();
    let Certificate::CharP { n, b, .. } = &charp.verdict.certificate else { panic!("{charp:?}") };
    assert_eq!(*n, 1);
    assert_eq!(b, &vec![a.from_scalar(Scalar::from_int(a.ctx(), -1))]);

    let qw = run_entry("quantum_weyl");
    expect(find(&qw, "simple(R)"), false);
    let conf = find(&qw, "conformal(R)");
    let Some(Certificate::Splitting { u }) = conf.certificate() else { panic!("{conf:?}") };
    let Subject::Ring(ring) = &conf.subject else { panic!() };
    let ctx = ring.ctx();
    let q = Scalar::param(ctx, "q").unwrap();
    assert_eq!(*u, ring.base().from_scalar(Scalar::one(ctx).sub(&q).inv().unwrap()));

    for r in plane.iter().chain(&root).chain(&weyl).chain(&f5).chain(&qw) {
        verified(r);
    }
    within(start, Duration::from_secs(1));
}

fn conjugation_grid() {
    let start = Instant::now();
    let mut src = String::from("scalars(char = 0)\nbase C = quadratic(i, d = -1)\nauto conj on C { i -> -i }\n");
    let mut expected = Vec::new();
    for a in -2i64..=2 {
        for b in -2i64..=2 {
            for rho in [1i64, -1, 2] {
                let k = expected.len();
                src +=
                    &format!("ring R{k} = ambiskew(C, conj, v = ({a}) + ({b})*i, rho = {rho})\ncheck simple(R{k})\n");
                expected.push((rho == 1 && a != 0) || (rho == -1 && b != 0));
            }
        }
    }
    let reports = run_source(&src);
    assert_eq!(reports.len(), 75);
    for (r, want) in reports.iter().zip(expected) {
        expect(r, want);
        verified(r);
    }
    within(start, Duration::from_secs(2));
}

fn lambda_towers() {
    let start = Instant::now();
    for name in ["lambda_tower_2", "lambda_tower_3"] {
        let reports = run_entry(name);
        let last = reports.last().unwrap();
        expect(last, true);
        assert_eq!(last.decision.theorem, "iterated", "{name}");
        verified(last);
    }
    within(start, Duration::from_secs(10));
}

fn cyclic_group_algebras() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut src =
        String::from("scalars(char = 0)\nbase A = cyclic_group(s, n = 2, epsilon = -1)\nauto a on A { s -> -s }\n");
    let mut expected = Vec::new();
    for k in 0..50 {
        let c0 = ratio(rng.gen_range(-4..=4), rng.gen_range(1..=4));
        // bias towards the boundary c1 = m c0
        let c1 = if rng.gen_bool(0.5) {
            &c0 * ratio(rng.gen_range(-6..=6), 1)
        } else {
            ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5))
        };
        let simple = !c0.is_zero() && !odd_integer(&(&c1 / &c0));
        src += &format!("ring R{k} = ambiskew(A, a, v = {} + {}*s, rho = 1)\ncheck simple(R{k})\n", lit(&c0), lit(&c1));
        expected.push(simple);
    }
    let reports = run_source(&src);
    assert_eq!(reports.len(), 50);
    assert!(expected.iter().any(|&e| e) && expected.iter().any(|&e| !e));
    for (r, want) in reports.iter().zip(expected) {
        expect(r, want);
        verified(r);
    }

    // order 4 with v = s + mu s^3: simple iff mu != +-1/a for odd a > 0
    let c4 = run_entry("cyclic_c4");
    for (query, mu) in [
        ("simple(R1)", ratio(2, 1)),
        ("simple(R2)", ratio(1, 3)),
        ("simple(R3)", ratio(-1, 5)),
        ("simple(R4)", ratio(7, 1)),
    ] {
        let r = find(&c4, query);
        expect(r, !odd_integer(&mu.recip()));
        verified(r);
    }
}

fn symplectic_reflection_grid() {
    let ts = [ratio(-2, 1), ratio(-1, 1), ratio(0, 1), ratio(1, 3), ratio(1, 2), ratio(1, 1), ratio(2, 1)];
    let cs = [ratio(-3, 2), ratio(-1, 2), ratio(0, 1), ratio(1, 6), ratio(1, 3), ratio(1, 2), ratio(1, 1)];
    let mut src =
        String::from("scalars(char = 0)\nbase A = cyclic_group(s, n = 2, epsilon = -1)\nauto a on A { s -> -s }\n");
    let mut expected = Vec::new();
    for (i, t) in ts.iter().enumerate() {
        for (j, c) in cs.iter().enumerate() {
            let two_t = lit(&(t * ratio(2, 1)));
            let four_c = lit(&(c * ratio(4, 1)));
            let k = format!("{i}_{j}");
            src += &format!(
                "ring P1_{k} = ambiskew(A, a, v = {two_t} - {four_c}*s, rho = 1, names = [y1, x1])\n\
                 ring P{k} = ambiskew(P1_{k}, id, v = {two_t}, rho = 1, names = [y2, x2])\n\
                 ring Q1_{k} = ambiskew(A, id, v = {two_t}, rho = 1, names = [y2, x2])\n\
                 auto tau{k} on Q1_{k} {{ s -> -s }}\n\
                 ring Q{k} = ambiskew(Q1_{k}, tau{k}, v = {two_t} - {four_c}*s, rho = 1, names = [y1, x1])\n\
                 check simple(P{k})\ncheck simple(Q{k})\n"
            );
            let simple = !t.is_zero() && !odd_integer(&(c * ratio(2, 1) / t));
            expected.push(simple);
            expected.push(simple);
        }
    }
    let reports = run_source(&src);
    assert_eq!(reports.len(), 98);
    assert!(expected.iter().any(|&e| e) && expected.iter().any(|&e| !e));
    for (r, want) in reports.iter().zip(expected) {
        expect(r, want);
        verified(r);
    }
}

fn heisenberg() {
    let reports = run_entry("heisenberg");
    expect(find(&reports, "simple(U1)"), true);
    expect(find(&reports, "simple(U2)"), false);
    expect(find(&reports, "simple(U3)"), false);
    expect(find(&reports, "localized_simple(U4)"), true);
    let loc = find(&reports, "localized_simple(U2)");
    expect(loc, false);
    let Some(Certificate::Special { c, .. }) = loc.certificate() else { panic!("{loc:?}") };
    let Subject::Ring(ring) = &loc.subject else { panic!() };
    assert_eq!(*c, ring.base().basis(1), "witness comes from t");
    for r in &reports {
        verified(r);
    }
}

/// Exponent of the prime `p` in the positive rational `q`.
fn valuation(q: &BigRational, p: u32) -> i64 {
    let count = |mut n: BigInt| {
        let mut e = 0;
        while (&n % p).is_zero() {
            n /= p;
            e += 1;
        }
        e
    };
    count(q.numer().abs()) - count(q.denom().clone())
}

/// Rank over the rationals.
fn rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for k in 0..cols {
                    let t = &f * &m[r][k];
                    m[i][k] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

fn quantum_torus() {
    let q = [
        [ratio(1, 1), ratio(1, 1), ratio(2, 1), ratio(3, 1)],
        [ratio(1, 1), ratio(1, 1), ratio(5, 1), ratio(7, 1)],
        [ratio(1, 2), ratio(1, 5), ratio(1, 1), ratio(11, 1)],
        [ratio(1, 3), ratio(1, 7), ratio(1, 11), ratio(1, 1)],
    ];
    // independent oracle: the relation lattice is the kernel of the prime
    // valuation matrix, trivial iff that matrix has full column rank
    let mut rows = Vec::new();
    for row in &q {
        for p in [2, 3, 5, 7, 11] {
            rows.push(row.iter().map(|x| BigRational::from_integer(valuation(x, p).into())).collect());
        }
    }
    assert_eq!(rank(rows), 4);

    let reports = run_entry("torus");
    let full = find(&reports, "torus(Q)");
    expect(full, true);
    let block = find(&reports, "torus(B)");
    expect(block, false);
    let Some(Certificate::Relation { exponents }) = block.certificate() else { panic!("{block:?}") };
    assert!(exponents.iter().any(|e| !e.is_zero()));
    for row in &q[..2] {
        let mut prod = BigRational::one();
        for (x, e) in row[..2].iter().zip(exponents) {
            let e = i32::try_from(e).unwrap();
            prod *= num_traits::pow::Pow::pow(x, e);
        }
        assert!(prod.is_one(), "relation does not hold");
    }
    verified(full);
    verified(block);
}

fn identity_suites() {
    common::identity_suite(97, 100);
    common::associativity_suite(98, 200);
}

fn generalized_weyl_algebras() {
    let shift = run_entry("gwa_shift");
    expect(find(&shift, "simple(T)"), true);

    let char3 = run_entry("gwa_shift_char3");
    let r = find(&char3, "simple(T)");
    expect(r, false);
    let Some(Certificate::StableIdeal { generator }) = r.certificate() else { panic!("{r:?}") };
    let Subject::Gwa(g) = &r.subject else { panic!() };
    let a = g.base();
    assert_eq!(*generator, a.sub(&a.basis(3), &a.basis(1)), "t^3 - t");

    let ident = run_entry("gwa_identity");
    let r = find(&ident, "simple(T)");
    expect(r, false);
    assert_eq!(r.decision.failed_condition.as_deref(), Some("powers_outer"));
    assert!(matches!(r.certificate(), Some(Certificate::FiniteOrder { m: 1 })));

    for r in shift.iter().chain(&char3).chain(&ident) {
        verified(r);
    }
}

fn catalog_json() -> String {
    let entries: Vec<_> = catalog::list()
        .iter()
        .map(|e| serde_json::json!({ "name": e.name, "reports": reports_json(&run_entry(e.name)) }))
        .collect();
    serde_json::to_string_pretty(&entries).unwrap()
}

fn determinism_and_round_trip() {
    assert_eq!(catalog_json(), catalog_json());
    for e in catalog::list() {
        let doc = parse_document(e.source).unwrap();
        let printed = doc.to_string();
        assert_eq!(parse_document(&printed).unwrap(), doc, "{}", e.name);
    }
}

fn main() {
    let criteria: [(&str, fn()); 10] = [
        ("quantum plane, Weyl and quantized Weyl trichotomy", trichotomy),
        ("complex conjugation grid, 75 cases", conjugation_grid),
        ("iterated lambda towers", lambda_towers),
        ("cyclic group algebras of order 2 and 4", cyclic_group_algebras),
        ("symplectic reflection grid, both orders", symplectic_reflection_grid),
        ("Heisenberg-type Laurent family and localization", heisenberg),
        ("quantum torus lattice criterion", quantum_torus),
        ("commutation, product and associativity identities", identity_suites),
        ("generalized Weyl algebra fixtures", generalized_weyl_algebras),
        ("deterministic catalog output and parse/print round trip", determinism_and_round_trip),
    ];
    let mut failed = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(f));
        let took = start.elapsed();
        match outcome {
            Ok(()) => println!("criterion {:>2} pass  {name} ({took:.2?})", k + 1),
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {:>2} FAIL  {name} ({took:.2?}): {msg}", k + 1);
                failed.push(k + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
