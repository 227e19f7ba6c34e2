use std::sync::Arc;

use ambiskew::algebra::{AlgElem, AutoMap, Automorphism, BaseAlgebra};
use ambiskew::ring::{AmbiskewRing, AmbiskewSpec};
use ambiskew::scalars::{Scalar, ScalarContext};
use ambiskew::simplicity::simple;
use ambiskew::verdict::{Certificate, Status};
use ambiskew::Bounds;

fn ring(base: ambiskew::algebra::Algebra, alpha: AutoMap, v: AlgElem, rho: Scalar) -> Arc<AmbiskewRing> {
    let alpha = Automorphism::new(&base, alpha).unwrap();
    let spec = AmbiskewSpec { base, alpha, gamma: Automorphism::identity(), v, rho };
    AmbiskewRing::construct(spec, "y", "x").unwrap()
}

#[test]
fn weyl_rationals_simple() {
    let ctx = ScalarContext::rationals();
    let a = BaseAlgebra::field(&ctx);
    let r = ring(a.clone(), AutoMap::Identity, a.one(), Scalar::one(&ctx));
    let d = simple(&r, &Bounds::default());
    assert_eq!(d.status, Status::Holds, "{d:?}");
}

#[test]
fn weyl_f5_fails_twice() {
    let ctx = ScalarContext::new(5, 1, vec![]).unwrap();
    let a = BaseAlgebra::field(&ctx);
    let r = ring(a.clone(), AutoMap::Identity, a.one(), Scalar::one(&ctx));
    let d = simple(&r, &Bounds::default());
    assert_eq!(d.status, Status::Fails, "{d:?}");
    assert!(d.condition("charp_witness").unwrap().verdict.is_fails(), "{d:?}");
    let units = &d.condition("units").unwrap().verdict;
    assert!(matches!(units.certificate, Certificate::NonUnitAt { m: 5, .. }), "{units:?}");
}

#[test]
fn quantum_weyl_conformal() {
    let ctx = ScalarContext::new(0, 1, vec!["q".into()]).unwrap();
    let a = BaseAlgebra::field(&ctx);
    let q = Scalar::param(&ctx, "q").unwrap();
    let r = ring(a.clone(), AutoMap::Identity, a.one(), q.clone());
    let d = simple(&r, &Bounds::default());
    assert_eq!(d.status, Status::Fails, "{d:?}");
    let s = &d.condition("singular").unwrap().verdict;
    let want = a.from_scalar(Scalar::one(&ctx).sub(&q).inv().unwrap());
    assert_eq!(s.certificate, Certificate::Splitting { u: want });
}

#[test]
fn quantum_plane_conformal_zero() {
    let ctx = ScalarContext::new(0, 1, vec!["q".into()]).unwrap();
    let a = BaseAlgebra::field(&ctx);
    let q = Scalar::param(&ctx, "q").unwrap();
    let r = ring(a.clone(), AutoMap::Identity, a.zero(), q);
    let d = simple(&r, &Bounds::default());
    assert_eq!(d.status, Status::Fails, "{d:?}");
}

#[test]
fn cyclic_two_grid() {
    let ctx = ScalarContext::rationals();
    let m1 = Scalar::from_int(&ctx, -1);
    let a = BaseAlgebra::cyclic_group(&ctx, "s", 2, m1.clone()).unwrap();
    for (c0, c1, expect) in
        [(1, 0, true), (1, 1, false), (1, 3, false), (1, 2, true), (0, 1, false), (2, -6, false), (2, 4, true)]
    {
        let v = a.add(&a.from_int(c0), &a.monomial(1, Scalar::from_int(&ctx, c1)));
        let r = ring(a.clone(), AutoMap::Scale(m1.clone()), v, Scalar::one(&ctx));
        let d = simple(&r, &Bounds::default());
        let got = d.status == Status::Holds;
        assert_eq!(got, expect, "c0={c0} c1={c1}: {d:#?}");
    }
}

fn nested_ring(
    inner: &Arc<AmbiskewRing>,
    alpha: AutoMap,
    v: AlgElem,
    rho: Scalar,
    names: (&str, &str),
) -> Arc<AmbiskewRing> {
    let base = BaseAlgebra::nested(inner.clone());
    let alpha = Automorphism::new(&base, alpha).unwrap();
    let gamma = ambiskew::algebra::normalizing_auto(&base, &v).expect("normal");
    let spec = AmbiskewSpec { base, alpha, gamma, v, rho };
    AmbiskewRing::construct(spec, names.0, names.1).unwrap()
}

#[test]
fn complex_conjugation_grid() {
    let ctx = ScalarContext::rationals();
    let a = BaseAlgebra::quadratic(&ctx, "i", Scalar::from_int(&ctx, -1), true).unwrap();
    for x in -2..=2 {
        for y in -2..=2 {
            for rho in [1, -1, 2] {
                let v = a.add(&a.from_int(x), &a.monomial(1, Scalar::from_int(&ctx, y)));
                let r = ring(a.clone(), AutoMap::Scale(Scalar::from_int(&ctx, -1)), v, Scalar::from_int(&ctx, rho));
                let d = simple(&r, &Bounds::default());
                let expect = (rho == 1 && x != 0) || (rho == -1 && y != 0);
                assert_eq!(d.status == Status::Holds, expect, "a={x} b={y} rho={rho}: {d:#?}");
                assert_ne!(d.status, Status::Inconclusive);
            }
        }
    }
}

fn lambda_tower(n: usize) -> Arc<AmbiskewRing> {
    let ctx = ScalarContext::new(0, 1, vec!["l12".into(), "l13".into(), "l23".into()]).unwrap();
    let one = Scalar::one(&ctx);
    let lam = |i: usize, j: usize| -> Scalar {
        let (a, b, inv) = if i < j { (i, j, false) } else { (j, i, true) };
        let p = Scalar::param(&ctx, &format!("l{a}{b}")).unwrap();
        if inv {
            p.inv().unwrap()
        } else {
            p
        }
    };
    let f = BaseAlgebra::field(&ctx);
    let mut r = ring(f.clone(), AutoMap::Identity, f.one(), one.clone());
    let _ = &mut r;
    let mut level = 1;
    let mut names = vec![("y1".to_string(), "x1".to_string())];
    // rebuild level 1 with indexed names
    let spec = AmbiskewSpec {
        base: f.clone(),
        alpha: Automorphism::identity(),
        gamma: Automorphism::identity(),
        v: f.one(),
        rho: one.clone(),
    };
    r = AmbiskewRing::construct(spec, "y1", "x1").unwrap();
    while level < n {
        level += 1;
        let mut map = AutoMap::Identity;
        for (k, _) in names.iter().enumerate() {
            let i = k + 1;
            let inner = r.tower()[k].base().clone();
            map = AutoMap::Extension {
                base: Box::new(map),
                y: inner.from_scalar(lam(level, i)),
                x: inner.from_scalar(lam(i, level)),
            };
        }
        let base = BaseAlgebra::nested(r.clone());
        let yn = format!("y{level}");
        let xn = format!("x{level}");
        r = nested_ring(&r, map, base.one(), one.clone(), (&yn, &xn));
        names.push((yn, xn));
    }
    r
}

#[test]
fn lambda_towers_simple() {
    for n in [2, 3] {
        let r = lambda_tower(n);
        let d = simple(&r, &Bounds::default());
        assert_eq!(d.status, Status::Holds, "n={n}: {d:#?}");
    }
}

fn sra_pair(t: (i64, i64), c: (i64, i64)) -> (Status, Status) {
    let ctx = ScalarContext::rationals();
    let t = Scalar::from_ratio(&ctx, t.0, t.1).unwrap();
    let c = Scalar::from_ratio(&ctx, c.0, c.1).unwrap();
    let m1 = Scalar::from_int(&ctx, -1);
    let fc2 = BaseAlgebra::cyclic_group(&ctx, "s", 2, m1.clone()).unwrap();
    let two_t = t.scale_int(2);
    let v1 = fc2.add(&fc2.from_scalar(two_t.clone()), &fc2.monomial(1, c.scale_int(-4)));
    let one = Scalar::one(&ctx);
    // first order
    let r1 = AmbiskewRing::construct(
        AmbiskewSpec {
            base: fc2.clone(),
            alpha: Automorphism::new(&fc2, AutoMap::Scale(m1.clone())).unwrap(),
            gamma: Automorphism::identity(),
            v: v1.clone(),
            rho: one.clone(),
        },
        "y1",
        "x1",
    )
    .unwrap();
    let b = BaseAlgebra::nested(r1.clone());
    let r = nested_ring(&r1, AutoMap::Identity, b.from_scalar(two_t.clone()), one.clone(), ("y2", "x2"));
    let first = simple(&r, &Bounds::default()).status;
    // second order
    let b1 = AmbiskewRing::construct(
        AmbiskewSpec {
            base: fc2.clone(),
            alpha: Automorphism::identity(),
            gamma: Automorphism::identity(),
            v: fc2.from_scalar(two_t),
            rho: one.clone(),
        },
        "y2",
        "x2",
    )
    .unwrap();
    let tau = AutoMap::Extension { base: Box::new(AutoMap::Scale(m1)), y: fc2.one(), x: fc2.one() };
    let v = AlgElem::Ring(b1.embed(v1));
    let r = nested_ring(&b1, tau, v, one, ("y1", "x1"));
    let second = simple(&r, &Bounds::default()).status;
    (first, second)
}

#[test]
fn symplectic_reflection_both_orders() {
    let vals = [(-2, 1), (-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1), (3, 2)];
    for t in vals {
        for c in vals {
            // exact: simple iff t != 0 and 2c/t is not an odd integer
            let (tn, td, cn, cd) = (t.0, t.1, c.0, c.1);
            let (num, den): (i64, i64) = (2 * cn * td, cd * tn);
            let expect = tn != 0 && !(num % den == 0 && (num / den).rem_euclid(2) == 1);
            let (a, b) = sra_pair(t, c);
            let want = if expect { Status::Holds } else { Status::Fails };
            assert_eq!(a, want, "first order t={t:?} c={c:?}");
            assert_eq!(b, want, "second order t={t:?} c={c:?}");
        }
    }
}
