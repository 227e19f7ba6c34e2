use ambiskew::catalog;
use ambiskew::dsl::parse_spec;
use ambiskew::report::{run_checks, Report, RunOptions, Subject};
use ambiskew::verdict::{Certificate, Status};
use ambiskew::verify::verify_certificate;
use ambiskew::Bounds;
use num_bigint::BigInt;

fn run(src: &str) -> Vec<Report> {
    run_checks(&parse_spec(src).unwrap(), &Bounds::default(), RunOptions::default())
}

fn catalog_report(entry: &str, query: &str) -> Report {
    let reports = catalog::get(entry).unwrap().run(&Bounds::default(), RunOptions::default()).unwrap();
    reports.into_iter().find(|r| r.query == query).unwrap_or_else(|| panic!("{entry}: no {query}"))
}

/// Replaces the certificate of the named condition.
fn tamper(r: &Report, name: &str, f: impl FnOnce(&Certificate) -> Certificate) -> Report {
    let mut t = r.clone();
    let c = t.decision.conditions.iter_mut().find(|c| c.name == name).expect("condition");
    c.verdict.certificate = f(&c.verdict.certificate);
    t
}

#[test]
fn every_catalog_certificate_verifies() {
    let mut checked = 0;
    for e in catalog::list() {
        for r in e.run(&Bounds::default(), RunOptions::default()).unwrap() {
            if r.status() == Status::Inconclusive {
                continue;
            }
            assert_eq!(verify_certificate(&r), Ok(true), "{}: {}", e.name, r.query);
            checked += 1;
        }
    }
    assert!(checked > 60, "{checked}");
}

#[test]
fn quantum_weyl_splitting_and_tampering() {
    let r = catalog_report("quantum_weyl", "conformal(R)");
    let Some(Certificate::Splitting { u }) = r.certificate() else { panic!("{r:?}") };
    let Subject::Ring(ring) = &r.subject else { panic!() };
    let a = ring.base();
    // u = (1 - q)^-1
    let q = ambiskew::scalars::Scalar::param(a.ctx(), "q").unwrap();
    let one = ambiskew::scalars::Scalar::one(a.ctx());
    assert_eq!(*u, a.from_scalar(one.sub(&q).inv().unwrap()));
    assert_eq!(verify_certificate(&r), Ok(true));
    let bad = tamper(&r, "conformal", |c| match c {
        Certificate::Splitting { u } => Certificate::Splitting { u: a.add(u, &a.one()) },
        other => other.clone(),
    });
    assert_eq!(verify_certificate(&bad), Ok(false));
}

#[test]
fn root_of_unity_non_unit_witness() {
    let src = "scalars(cyclotomic = 5)\nbase F = field\nring R = ambiskew(F, id, v = 1, rho = zeta)\ncheck units(R)\n";
    let r = &run(src)[0];
    assert_eq!(r.status(), Status::Fails);
    let Some(Certificate::NonUnitAt { m, .. }) = r.certificate() else { panic!("{r:?}") };
    assert_eq!(*m, 5);
    assert_eq!(verify_certificate(r), Ok(true));
    let bad = tamper(r, "units", |c| match c {
        Certificate::NonUnitAt { value, proof, .. } => {
            Certificate::NonUnitAt { m: 4, value: value.clone(), proof: proof.clone() }
        }
        other => other.clone(),
    });
    assert_eq!(verify_certificate(&bad), Ok(false));
}

#[test]
fn tampered_witnesses_are_rejected() {
    let r = catalog_report("heisenberg", "special(U2)");
    let bad = tamper(&r, "special", |c| match c {
        Certificate::Special { c, m, j } => Certificate::Special { c: c.clone(), m: *m, j: j + 1 },
        other => other.clone(),
    });
    assert_eq!(verify_certificate(&bad), Ok(false));

    let r = catalog_report("torus", "torus(B)");
    let bad = tamper(&r, "torus", |_| Certificate::Relation { exponents: vec![BigInt::from(0), BigInt::from(0)] });
    assert_eq!(verify_certificate(&bad), Ok(false));

    let r = catalog_report("gwa_shift_char3", "simple(T)");
    let Subject::Gwa(g) = &r.subject else { panic!() };
    let a = g.base().clone();
    let bad = tamper(&r, "alpha_simple", |_| Certificate::StableIdeal { generator: a.basis(1) });
    assert_eq!(verify_certificate(&bad), Ok(false));
    let bad = tamper(&r, "powers_outer", |_| Certificate::FiniteOrder { m: 2 });
    assert_eq!(verify_certificate(&bad), Ok(false));

    let r = catalog_report("weyl_f5", "simple(R)");
    let bad = tamper(&r, "charp_witness", |c| match c {
        Certificate::CharP { n, u, .. } => Certificate::CharP { n: *n, u: u.clone(), b: vec![a_one(&r)] },
        other => other.clone(),
    });
    assert_eq!(verify_certificate(&bad), Ok(false));
}

fn a_one(r: &Report) -> ambiskew::algebra::AlgElem {
    let Subject::Ring(ring) = &r.subject else { panic!() };
    ring.base().one()
}

#[test]
fn gwa_fixture_certificates() {
    let r = catalog_report("gwa_shift", "simple(T)");
    assert_eq!(r.status(), Status::Holds);
    assert_eq!(verify_certificate(&r), Ok(true));
    let r = catalog_report("gwa_shift_char3", "simple(T)");
    let Subject::Gwa(g) = &r.subject else { panic!() };
    let a = g.base();
    let Certificate::StableIdeal { generator } = &r.decision.condition("alpha_simple").unwrap().verdict.certificate
    else {
        panic!()
    };
    assert_eq!(*generator, a.sub(&a.basis(3), &a.basis(1)));
    assert_eq!(verify_certificate(&r), Ok(true));
    let r = catalog_report("gwa_identity", "simple(T)");
    assert_eq!(r.decision.failed_condition.as_deref(), Some("powers_outer"));
    assert_eq!(r.certificate(), Some(&Certificate::FiniteOrder { m: 1 }));
    assert_eq!(verify_certificate(&r), Ok(true));
}
