mod common;

use ambiskew::algebra::{solve_splitting, AutoMap, Automorphism, BaseAlgebra, Splitting};
use ambiskew::oracle::{slow_mul, special_window, splitting_search};
use ambiskew::ring::{AmbiskewRing, AmbiskewSpec};
use ambiskew::scalars::{Scalar, ScalarContext};
use common::{random_relem, random_ring, FAMILIES};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn slow_square_in_weyl() {
    let ctx = ScalarContext::rationals();
    let f = BaseAlgebra::field(&ctx);
    let spec = AmbiskewSpec {
        base: f.clone(),
        alpha: Automorphism::identity(),
        gamma: Automorphism::identity(),
        v: f.one(),
        rho: Scalar::one(&ctx),
    };
    let r = AmbiskewRing::construct(spec, "y", "x").unwrap();
    let s = r.add(&r.x(), &r.y());
    let fast = r.mul(&s, &s);
    assert_eq!(slow_mul(&r, &s, &s, 1), fast);
    assert_eq!(r.display(&fast), "-1 + y^2 + 2*x*y + x^2");
}

#[test]
fn slow_and_fast_multipliers_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for family in FAMILIES {
        let r = random_ring(family, &mut rng);
        for k in 0..500u64 {
            let f = random_relem(&r, &mut rng);
            let g = random_relem(&r, &mut rng);
            let fast = r.mul(&f, &g);
            assert_eq!(slow_mul(&r, &f, &g, k), fast, "{family} #{k}");
            if k % 50 == 0 {
                // A different rewrite order reaches the same normal form.
                assert_eq!(slow_mul(&r, &f, &g, k + 10_000), fast, "{family} #{k}");
            }
        }
    }
}

fn solve(r: &AmbiskewRing) -> Splitting {
    solve_splitting(r.base(), r.alpha(), r.gamma(), r.v(), r.rho())
}

#[test]
fn splitting_search_matches_solver() {
    // FC_2 with rho = 1 and v = 1: no splitting element over the support {1, s}.
    let ctx = ScalarContext::rationals();
    let m1 = Scalar::from_int(&ctx, -1);
    let a = BaseAlgebra::cyclic_group(&ctx, "s", 2, m1.clone()).unwrap();
    let alpha = Automorphism::new(&a, AutoMap::Scale(m1)).unwrap();
    let spec =
        AmbiskewSpec { base: a.clone(), alpha, gamma: Automorphism::identity(), v: a.one(), rho: Scalar::one(&ctx) };
    let r = AmbiskewRing::construct(spec, "y", "x").unwrap();
    assert_eq!(splitting_search(&r, 4), Some(None));
    assert!(matches!(solve(&r), Splitting::None(_)));

    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for k in 0..60 {
        let family = FAMILIES[k % 5];
        let r = random_ring(family, &mut rng);
        let brute = splitting_search(&r, 6).expect("supported family");
        match (solve(&r), brute) {
            (Splitting::Found(u), Some(w)) => {
                let a = r.base();
                for s in [&u, &w] {
                    assert_eq!(a.sub(s, &a.scale(&r.alpha().apply(a, s), r.rho())), *r.v(), "{family}");
                }
            }
            (Splitting::None(_), None) => {}
            (Splitting::Unknown(_), _) => {}
            (fast, slow) => panic!("{family}: solver {fast:?} vs window search {slow:?}"),
        }
    }
}

#[test]
fn special_window_finds_heisenberg_witness() {
    let ctx = ScalarContext::rationals();
    let a = BaseAlgebra::laurent(&ctx, "t");
    let two = Scalar::from_int(&ctx, 2);
    let alpha = Automorphism::new(&a, AutoMap::Scale(two.clone())).unwrap();
    let found = special_window(&a, &alpha, &Automorphism::identity(), &two, 8, true);
    assert!(!found.is_empty());
    // alpha(t^i) = 2^i t^i = rho^j t^i exactly when i = j.
    for s in &found {
        assert_eq!(s.m, 0);
        assert_eq!(a.coeffs(&s.c).keys().copied().collect::<Vec<_>>(), vec![s.j]);
    }
    let none = special_window(&a, &alpha, &Automorphism::identity(), &Scalar::from_int(&ctx, 3), 8, false);
    assert!(none.is_empty());
}
