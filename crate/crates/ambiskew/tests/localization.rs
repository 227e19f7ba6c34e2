use std::sync::Arc;

use ambiskew::algebra::{AlgElem, Algebra, AutoMap, Automorphism, BaseAlgebra};
use ambiskew::localization::{
    localized_simple, quantum_torus_simple, special_element_search, SpecialMode, SpecialSearch, TorusMatrix,
};
use ambiskew::ring::{AmbiskewRing, AmbiskewSpec};
use ambiskew::scalars::{Scalar, ScalarContext};
use ambiskew::verdict::{Certificate, Status};
use ambiskew::Bounds;

fn ring(base: Algebra, alpha: AutoMap, v: AlgElem, rho: Scalar) -> Arc<AmbiskewRing> {
    let alpha = Automorphism::new(&base, alpha).unwrap();
    let spec = AmbiskewSpec { base, alpha, gamma: Automorphism::identity(), v, rho };
    AmbiskewRing::construct(spec, "y", "x").unwrap()
}

fn heisenberg(rho: impl Fn(&Scalar, &Scalar) -> Scalar) -> Arc<AmbiskewRing> {
    let ctx = ScalarContext::new(0, 1, vec!["q".into(), "r".into()]).unwrap();
    let q = Scalar::param(&ctx, "q").unwrap();
    let r = Scalar::param(&ctx, "r").unwrap();
    let a = BaseAlgebra::laurent(&ctx, "t");
    ring(a.clone(), AutoMap::Scale(q.clone()), a.basis(1), rho(&q, &r))
}

#[test]
fn heisenberg_localization() {
    let d = localized_simple(&heisenberg(|_, r| r.clone()), &Bounds::default()).unwrap();
    assert_eq!(d.status, Status::Holds, "{d:#?}");
    let d = localized_simple(&heisenberg(|q, _| q.clone()), &Bounds::default()).unwrap();
    assert_eq!(d.status, Status::Fails, "{d:#?}");
    let sp = &d.condition("special").unwrap().verdict;
    assert!(matches!(sp.certificate, Certificate::Special { m: 0, .. }), "{sp:?}");
    assert!(localized_simple(&heisenberg(|q, _| q.inv().unwrap()), &Bounds::default()).is_err());
}

#[test]
fn heisenberg_rational_data_has_no_special() {
    let ctx = ScalarContext::rationals();
    let a = BaseAlgebra::laurent(&ctx, "t");
    let alpha = Automorphism::new(&a, AutoMap::Scale(Scalar::from_int(&ctx, 2))).unwrap();
    let r = special_element_search(&a, &alpha, &Automorphism::identity(), &Scalar::from_int(&ctx, 3), SpecialMode::All);
    assert!(matches!(r, SpecialSearch::None(_)), "{r:?}");
    let r = special_element_search(
        &a,
        &alpha,
        &Automorphism::identity(),
        &Scalar::from_int(&ctx, 2),
        SpecialMode::ZeroMOnly,
    );
    assert!(matches!(r, SpecialSearch::Found(_)), "{r:?}");
}

#[test]
fn quantum_plane_localization() {
    let ctx = ScalarContext::new(0, 1, vec!["q".into()]).unwrap();
    let a = BaseAlgebra::field(&ctx);
    let r = ring(a.clone(), AutoMap::Identity, a.zero(), Scalar::param(&ctx, "q").unwrap());
    assert_eq!(localized_simple(&r, &Bounds::default()).unwrap().status, Status::Holds);
    let ctx = ScalarContext::new(0, 5, vec![]).unwrap();
    let a = BaseAlgebra::field(&ctx);
    let r = ring(a.clone(), AutoMap::Identity, a.zero(), Scalar::zeta(&ctx));
    let d = localized_simple(&r, &Bounds::default()).unwrap();
    assert_eq!(d.status, Status::Fails);
    let sp = &d.condition("special").unwrap().verdict.certificate;
    match sp {
        Certificate::Special { m, j, .. } => assert!(m % 5 == 0 && j % 5 == 0 && (*m, *j) != (0, 0)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn smith_algebra_fails_radical() {
    let ctx = ScalarContext::new(0, 1, vec!["r".into()]).unwrap();
    let a = BaseAlgebra::poly(&ctx, "t");
    let shift = AutoMap::Affine { scale: Scalar::one(&ctx), shift: Scalar::one(&ctx) };
    let r = ring(a.clone(), shift.clone(), a.basis(1), Scalar::param(&ctx, "r").unwrap());
    let d = localized_simple(&r, &Bounds::default()).unwrap();
    assert_eq!(d.status, Status::Fails, "{d:#?}");
    assert_eq!(d.failed_condition.as_deref(), Some("radical"));
    let r = ring(a.clone(), shift, a.one(), Scalar::param(&ctx, "r").unwrap());
    let d = localized_simple(&r, &Bounds::default()).unwrap();
    assert_eq!(d.status, Status::Holds, "{d:#?}");
}

fn torus(rows: &[&[(i64, i64)]]) -> TorusMatrix {
    let ctx = ScalarContext::rationals();
    TorusMatrix::new(
        rows.iter().map(|r| r.iter().map(|&(n, d)| Scalar::from_ratio(&ctx, n, d).unwrap()).collect()).collect(),
    )
    .unwrap()
}

#[test]
fn torus_lattice() {
    let q = torus(&[
        &[(1, 1), (1, 1), (2, 1), (3, 1)],
        &[(1, 1), (1, 1), (5, 1), (7, 1)],
        &[(1, 2), (1, 5), (1, 1), (11, 1)],
        &[(1, 3), (1, 7), (1, 11), (1, 1)],
    ]);
    assert_eq!(quantum_torus_simple(&q).status, Status::Holds);
    let b = q.block(2).unwrap();
    let v = quantum_torus_simple(&b);
    let Certificate::Relation { exponents } = v.certificate else { panic!() };
    assert!(b.is_relation(&exponents).unwrap());

    let ctx = ScalarContext::new(0, 6, vec![]).unwrap();
    let z = Scalar::zeta(&ctx);
    let one = Scalar::one(&ctx);
    let q = TorusMatrix::new(vec![vec![one.clone(), z.clone()], vec![z.inv().unwrap(), one]]).unwrap();
    let v = quantum_torus_simple(&q);
    let Certificate::Relation { exponents } = v.certificate else { panic!() };
    assert!(q.is_relation(&exponents).unwrap());
    assert_eq!(exponents, vec![6.into(), 0.into()]);
}
