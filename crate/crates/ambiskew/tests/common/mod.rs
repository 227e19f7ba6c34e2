//! Random base algebras, ring data and elements shared by the property suites.
#![allow(dead_code)]

use std::sync::Arc;

use ambiskew::algebra::{AlgElem, Algebra, AutoMap, Automorphism, BaseAlgebra};
use ambiskew::ring::{AmbiskewRing, AmbiskewSpec, RElement};
use ambiskew::scalars::{Scalar, ScalarContext};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const FAMILIES: [&str; 6] = ["field", "cyclic", "laurent", "poly", "quadratic", "nested"];

pub fn small_scalar(ctx: &Arc<ScalarContext>, rng: &mut impl Rng) -> Scalar {
    let n = rng.gen_range(-3..=3);
    let d = rng.gen_range(1..=3);
    let mut s = Scalar::from_ratio(ctx, n, d).unwrap();
    if !ctx.params().is_empty() && rng.gen_bool(0.3) {
        s = s.add(&Scalar::param(ctx, &ctx.params()[0]).unwrap());
    }
    if ctx.cyclotomic_order() > 1 && rng.gen_bool(0.3) {
        s = s.mul(&Scalar::zeta(ctx));
    }
    s
}

/// A random element of `a`, supported on a small window of basis elements.
pub fn random_elem(a: &BaseAlgebra, rng: &mut impl Rng) -> AlgElem {
    let ctx = a.ctx().clone();
    match a.family_name() {
        "field" => a.from_scalar(small_scalar(&ctx, rng)),
        "ambiskew" => {
            let r = a.ring().unwrap();
            let inner = r.base();
            let mut f = RElement::zero();
            for _ in 0..rng.gen_range(1..=3) {
                let (i, j) = (rng.gen_range(0..=1), rng.gen_range(0..=1));
                f = r.add(&f, &r.monomial(i, random_elem(inner, rng), j));
            }
            AlgElem::Ring(f)
        }
        family => {
            let keys: Vec<i64> = match family {
                "laurent" => (-2..=2).collect(),
                "poly" => (0..=3).collect(),
                "quadratic" => vec![0, 1],
                _ => (0..3).collect(), // cyclic_group
            };
            let mut e = a.zero();
            for k in keys {
                if rng.gen_bool(0.6) {
                    e = a.add(&e, &a.scale(&a.basis(k), &small_scalar(&ctx, rng)));
                }
            }
            e
        }
    }
}

pub fn base_of(family: &str) -> Algebra {
    match family {
        "field" => BaseAlgebra::field(&ScalarContext::new(0, 1, vec!["q".into()]).unwrap()),
        "cyclic" => {
            let ctx = ScalarContext::new(0, 3, vec![]).unwrap();
            BaseAlgebra::cyclic_group(&ctx, "s", 3, Scalar::zeta(&ctx)).unwrap()
        }
        "laurent" => BaseAlgebra::laurent(&ScalarContext::rationals(), "t"),
        "poly" => BaseAlgebra::poly(&ScalarContext::rationals(), "t"),
        "quadratic" => {
            let ctx = ScalarContext::rationals();
            BaseAlgebra::quadratic(&ctx, "i", Scalar::from_int(&ctx, -1), true).unwrap()
        }
        "nested" => {
            let ctx = ScalarContext::rationals();
            let f = BaseAlgebra::field(&ctx);
            let spec = AmbiskewSpec {
                base: f.clone(),
                alpha: Automorphism::identity(),
                gamma: Automorphism::identity(),
                v: f.one(),
                rho: Scalar::one(&ctx),
            };
            BaseAlgebra::nested(AmbiskewRing::construct(spec, "y1", "x1").unwrap())
        }
        other => panic!("unknown family {other}"),
    }
}

/// A random automorphism of the family's base.
pub fn random_alpha(a: &BaseAlgebra, rng: &mut impl Rng) -> Automorphism {
    let ctx = a.ctx().clone();
    let int = |n: i64| Scalar::from_int(&ctx, n);
    let map = match a.family_name() {
        "field" => AutoMap::Identity,
        "cyclic_group" => [AutoMap::Identity, AutoMap::Scale(Scalar::zeta(&ctx))].choose(rng).unwrap().clone(),
        "laurent" => [AutoMap::Scale(int(2)), AutoMap::Scale(int(-1)), AutoMap::Identity].choose(rng).unwrap().clone(),
        "poly" => [
            AutoMap::Affine { scale: int(1), shift: int(1) },
            AutoMap::Scale(int(2)),
            AutoMap::Affine { scale: int(-1), shift: int(3) },
        ]
        .choose(rng)
        .unwrap()
        .clone(),
        "quadratic" => [AutoMap::Scale(int(-1)), AutoMap::Identity].choose(rng).unwrap().clone(),
        "ambiskew" => {
            let inner = a.ring().unwrap().base().clone();
            let c = Scalar::from_int(&ctx, rng.gen_range(1..=3));
            AutoMap::Extension {
                base: Box::new(AutoMap::Identity),
                y: inner.from_scalar(c.clone()),
                x: inner.from_scalar(c.inv().unwrap()),
            }
        }
        other => panic!("unknown family {other}"),
    };
    Automorphism::new(a, map).unwrap()
}

/// A random ambiskew ring over the family's base with `gamma = id`, so `v`
/// is taken central.
pub fn random_ring(family: &str, rng: &mut impl Rng) -> Arc<AmbiskewRing> {
    let a = base_of(family);
    let ctx = a.ctx().clone();
    let alpha = random_alpha(&a, rng);
    let v = if family == "nested" { a.from_scalar(small_scalar(&ctx, rng)) } else { random_elem(&a, rng) };
    let mut rho = Scalar::zero(&ctx);
    while rho.is_zero() {
        rho = small_scalar(&ctx, rng);
    }
    let spec = AmbiskewSpec { base: a, alpha, gamma: Automorphism::identity(), v, rho };
    AmbiskewRing::construct(spec, "y", "x").unwrap()
}

pub fn random_relem(r: &AmbiskewRing, rng: &mut impl Rng) -> RElement {
    let mut f = RElement::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let (i, j) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
        f = r.add(&f, &r.monomial(i, random_elem(r.base(), rng), j));
    }
    f
}

/// `v^(m)` summed term by term.
pub fn v_m_direct(r: &AmbiskewRing, m: u64) -> AlgElem {
    let a = r.base();
    let mut acc = a.zero();
    for l in 0..m as i64 {
        let term = a.scale(&r.alpha().apply_pow(a, l, r.v()), &r.rho().pow(l).unwrap());
        acc = a.add(&acc, &term);
    }
    acc
}

pub fn pow(r: &AmbiskewRing, f: &RElement, m: u32) -> RElement {
    (0..m).fold(r.one(), |acc, _| r.mul(&acc, f))
}

/// `x y^m - rho^m y^m x = v^(m) y^(m-1)` and
/// `x^m y - rho^m y x^m = x^(m-1) v^(m) = beta^(m-1)(v^(m)) x^(m-1)`.
pub fn commutation_identities(r: &AmbiskewRing, m: u32) {
    let a = r.base();
    let (x, y) = (r.x(), r.y());
    let vm = v_m_direct(r, m as u64);
    assert_eq!(vm, r.v_m(m as u64));
    let rm = r.rho().pow(m as i64).unwrap();
    let ym = pow(r, &y, m);
    let lhs = r.sub(&r.mul(&x, &ym), &r.scale(&r.mul(&ym, &x), &rm));
    assert_eq!(lhs, r.mul(&r.embed(vm.clone()), &pow(r, &y, m - 1)), "m={m}");
    let xm = pow(r, &x, m);
    let lhs = r.sub(&r.mul(&xm, &y), &r.scale(&r.mul(&y, &xm), &rm));
    let xm1 = pow(r, &x, m - 1);
    assert_eq!(lhs, r.mul(&xm1, &r.embed(vm.clone())), "m={m}");
    let bvm = r.beta().apply_pow(a, m as i64 - 1, &vm);
    assert_eq!(lhs, r.mul(&r.embed(bvm), &xm1), "m={m}");
}

/// `x^m y^m = prod_{l<m} alpha^-l(w)` and `y^m x^m = prod_{1<=l<=m} alpha^l(w)`,
/// with `alpha^l(w) = rho^-l (w - v^(l))` and `alpha^-l(w) = rho^l w + beta^l(v^(l))`.
pub fn product_identities(r: &AmbiskewRing, m: u32) {
    let a = r.base();
    let w = r.w();
    let mut left = r.one();
    let mut right = r.one();
    for l in 0..m as i64 {
        let vl = v_m_direct(r, l as u64);
        let am = r.add(&r.scale(&w, &r.rho().pow(l).unwrap()), &r.embed(r.beta().apply_pow(a, l, &vl)));
        left = r.mul(&left, &am);
        let k = l + 1;
        let vk = v_m_direct(r, k as u64);
        let ap = r.scale(&r.sub(&w, &r.embed(vk)), &r.rho().pow(-k).unwrap());
        right = r.mul(&right, &ap);
    }
    assert_eq!(r.mul(&pow(r, &r.x(), m), &pow(r, &r.y(), m)), left, "x^m y^m, m={m}");
    assert_eq!(r.mul(&pow(r, &r.y(), m), &pow(r, &r.x(), m)), right, "y^m x^m, m={m}");
}

/// Commutation identities for `m <= 8` and product identities for `m <= 6`
/// on `count` random rings cycling through the families.
pub fn identity_suite(seed: u64, count: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..count {
        let family = FAMILIES[k % FAMILIES.len()];
        let r = random_ring(family, &mut rng);
        for m in 1..=8 {
            commutation_identities(&r, m);
        }
        for m in 1..=6 {
            product_identities(&r, m);
        }
    }
}

/// `(fg)h = f(gh)` on `count` random triples per family.
pub fn associativity_suite(seed: u64, count: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for family in FAMILIES {
        let r = random_ring(family, &mut rng);
        for _ in 0..count {
            let (f, g, h) = (random_relem(&r, &mut rng), random_relem(&r, &mut rng), random_relem(&r, &mut rng));
            assert_eq!(r.mul(&r.mul(&f, &g), &h), r.mul(&f, &r.mul(&g, &h)), "{family}");
        }
    }
}
