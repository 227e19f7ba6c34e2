use ambiskew::algebra::{AutoMap, Automorphism, BaseAlgebra};
use ambiskew::gwa::{gwa_simple, GwaSpec};
use ambiskew::ring::{AmbiskewRing, AmbiskewSpec};
use ambiskew::scalars::{Scalar, ScalarContext};
use ambiskew::verdict::{Certificate, Status};
use ambiskew::Bounds;

fn shift_weyl(p: u64) -> GwaSpec {
    let ctx = ScalarContext::new(p, 1, vec![]).unwrap();
    let a = BaseAlgebra::poly(&ctx, "t");
    let alpha =
        Automorphism::new(&a, AutoMap::Affine { scale: Scalar::one(&ctx), shift: Scalar::from_int(&ctx, -1) }).unwrap();
    let t = a.basis(1);
    GwaSpec::new(a, alpha, Automorphism::identity(), t).unwrap()
}

#[test]
fn weyl_presentation() {
    let g = shift_weyl(0);
    let a = g.base();
    let xy = g.mul(&g.x(), &g.y());
    let yx = g.mul(&g.y(), &g.x());
    assert_eq!(xy, g.from_base(a.basis(1)));
    assert_eq!(yx, g.from_base(a.sub(&a.basis(1), &a.one())));
    assert_eq!(g.sub(&xy, &yx), g.one());
}

#[test]
fn product_identities() {
    let g = shift_weyl(0);
    let a = g.base();
    let (alpha, u) = (g.alpha(), g.u());
    for m in 1..=6u32 {
        let mut xy = a.one();
        let mut yx = a.one();
        for i in 0..m as i64 {
            xy = a.mul(&xy, &alpha.apply_pow(a, -i, u));
            yx = a.mul(&yx, &alpha.apply_pow(a, i + 1, u));
        }
        let xm = g.pow(&g.x(), m);
        let ym = g.pow(&g.y(), m);
        assert_eq!(g.mul(&xm, &ym), g.from_base(xy), "m={m}");
        assert_eq!(g.mul(&ym, &xm), g.from_base(yx), "m={m}");
    }
}

#[test]
fn associativity_and_grading() {
    let g = shift_weyl(0);
    let a = g.base();
    let t = a.basis(1);
    let elems = [
        g.add(&g.x(), &g.from_base(t.clone())),
        g.add(&g.mul(&g.y(), &g.y()), &g.monomial(-1, a.from_int(3))),
        g.monomial(2, a.add(&t, &a.from_int(2))),
        g.sub(&g.monomial(-2, t.clone()), &g.y()),
    ];
    for f in &elems {
        for h in &elems {
            for k in &elems {
                let l = g.mul(&g.mul(f, h), k);
                let r = g.mul(f, &g.mul(h, k));
                assert_eq!(l, r);
            }
        }
    }
    let p = g.mul(&g.monomial(2, t.clone()), &g.monomial(-3, t));
    assert_eq!(p.degree(), Some(-1));
}

#[test]
fn projection_kills_casimir() {
    let ctx = ScalarContext::new(0, 1, vec!["q".into()]).unwrap();
    let a = BaseAlgebra::field(&ctx);
    let q = Scalar::param(&ctx, "q").unwrap();
    let spec = AmbiskewSpec {
        base: a.clone(),
        alpha: Automorphism::identity(),
        gamma: Automorphism::identity(),
        v: a.one(),
        rho: q.clone(),
    };
    let r = AmbiskewRing::construct(spec, "y", "x").unwrap();
    let g = GwaSpec::from_ambiskew(&r).unwrap();
    let u = a.from_scalar(Scalar::one(&ctx).sub(&q).inv().unwrap());
    assert_eq!(g.u(), &u);
    let z = r.sub(&r.w(), &r.embed(u.clone()));
    assert!(g.project(&z).is_zero());
    assert_eq!(g.mul(&g.x(), &g.y()), g.from_base(u.clone()));
    assert_eq!(g.mul(&g.y(), &g.x()), g.from_base(u));
}

#[test]
fn polynomial_view_matches_weyl() {
    let ctx = ScalarContext::rationals();
    let a = BaseAlgebra::field(&ctx);
    let spec = AmbiskewSpec {
        base: a.clone(),
        alpha: Automorphism::identity(),
        gamma: Automorphism::identity(),
        v: a.one(),
        rho: Scalar::one(&ctx),
    };
    let r = AmbiskewRing::construct(spec, "y", "x").unwrap();
    let g = GwaSpec::polynomial_view(&r, "w").unwrap();
    let d = gwa_simple(&g, &Bounds::default());
    assert_eq!(d.status, Status::Holds, "{d:?}");
}

#[test]
fn theorem_fixtures() {
    let d = gwa_simple(&shift_weyl(0), &Bounds::default());
    assert_eq!(d.status, Status::Holds, "{d:?}");

    let d = gwa_simple(&shift_weyl(3), &Bounds::default());
    assert_eq!(d.status, Status::Fails);
    let c = &d.condition("alpha_simple").unwrap().verdict;
    let g = shift_weyl(3);
    let a = g.base();
    let want = a.sub(&a.basis(3), &a.basis(1));
    assert_eq!(c.certificate, Certificate::StableIdeal { generator: want });

    let ctx = ScalarContext::rationals();
    let f = BaseAlgebra::field(&ctx);
    let g = GwaSpec::new(f.clone(), Automorphism::identity(), Automorphism::identity(), f.one()).unwrap();
    let d = gwa_simple(&g, &Bounds::default());
    assert_eq!(d.failed_condition.as_deref(), Some("powers_outer"));
    let c = &d.condition("powers_outer").unwrap().verdict;
    assert_eq!(c.certificate, Certificate::FiniteOrder { m: 1 });
}

#[test]
fn cyclic_zero_divisor() {
    let ctx = ScalarContext::rationals();
    let m1 = Scalar::from_int(&ctx, -1);
    let a = BaseAlgebra::cyclic_group(&ctx, "s", 2, m1.clone()).unwrap();
    let alpha = Automorphism::new(&a, AutoMap::Scale(m1)).unwrap();
    let u = a.add(&a.one(), &a.basis(1));
    let g = GwaSpec::new(a.clone(), alpha, Automorphism::identity(), u.clone()).unwrap();
    let d = gwa_simple(&g, &Bounds::default());
    assert_eq!(d.status, Status::Fails);
    let c = &d.condition("regular").unwrap().verdict;
    let Certificate::ZeroDivisor { annihilator } = &c.certificate else { panic!("{c:?}") };
    assert!(a.is_zero(&a.mul(&u, annihilator)));
}
