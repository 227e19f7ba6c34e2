mod common;

use ambiskew::lattice::integer_kernel;
use ambiskew::ring::{casimir_checks, conformality, Conformality};
use ambiskew::scalars::{Scalar, ScalarContext};
use common::{base_of, random_alpha, random_elem, random_ring, small_scalar, v_m_direct, FAMILIES};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn scalar(ctx: &std::sync::Arc<ScalarContext>, (n, d, k): (i64, i64, u32)) -> Scalar {
    // n/d + (q + 1)^k with q a free parameter
    let q = Scalar::param(ctx, "q").unwrap().add(&Scalar::one(ctx));
    Scalar::from_ratio(ctx, n, d).unwrap().add(&q.pow(k as i64).unwrap().scale_int(n.signum()))
}

fn triple() -> impl Strategy<Value = (i64, i64, u32)> {
    (-9i64..10, 1i64..6, 0u32..3)
}

fn rank(rows: &[Vec<BigInt>], n: usize) -> usize {
    let mut m: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for k in 0..n {
                    let t = &f * &m[r][k];
                    m[i][k] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_axioms(a in triple(), b in triple(), c in triple()) {
        let ctx = ScalarContext::new(0, 1, vec!["q".into()]).unwrap();
        let (a, b, c) = (scalar(&ctx, a), scalar(&ctx, b), scalar(&ctx, c));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        if !b.is_zero() {
            prop_assert_eq!(a.div(&b).unwrap().mul(&b), a.clone());
            prop_assert!(b.mul(&b.inv().unwrap()).is_one());
        }
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn cyclotomic_field_axioms(n in 2u64..9, e in 0i64..20, f in 0i64..20) {
        let ctx = ScalarContext::new(0, n, vec![]).unwrap();
        let z = Scalar::zeta(&ctx);
        prop_assert!(z.pow(n as i64).unwrap().is_one());
        prop_assert_eq!(z.pow(e).unwrap().mul(&z.pow(f).unwrap()), z.pow(e + f).unwrap());
        let s = z.pow(e).unwrap().add(&Scalar::from_int(&ctx, 2));
        prop_assert!(s.mul(&s.inv().unwrap()).is_one());
    }

    #[test]
    fn base_algebra_axioms(seed in any::<u64>(), fam in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = base_of(FAMILIES[fam]);
        let alpha = random_alpha(&a, &mut rng);
        let (x, y, z) = (random_elem(&a, &mut rng), random_elem(&a, &mut rng), random_elem(&a, &mut rng));
        prop_assert_eq!(a.mul(&a.mul(&x, &y), &z), a.mul(&x, &a.mul(&y, &z)));
        prop_assert_eq!(a.mul(&x, &a.add(&y, &z)), a.add(&a.mul(&x, &y), &a.mul(&x, &z)));
        prop_assert_eq!(alpha.apply(&a, &a.mul(&x, &y)), a.mul(&alpha.apply(&a, &x), &alpha.apply(&a, &y)));
        prop_assert_eq!(alpha.apply_inv(&a, &alpha.apply(&a, &x)), x.clone());
        prop_assert_eq!(alpha.apply_pow(&a, 3, &x), alpha.apply(&a, &alpha.apply(&a, &alpha.apply(&a, &x))));
        let s = small_scalar(a.ctx(), &mut rng);
        prop_assert_eq!(a.scale(&x, &s), a.mul(&a.from_scalar(s), &x));
    }

    #[test]
    fn v_m_recursion_and_casimir(seed in any::<u64>(), fam in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = random_ring(FAMILIES[fam], &mut rng);
        let a = r.base();
        for m in 0..6u64 {
            let next = a.add(r.v(), &a.scale(&r.alpha().apply(a, &r.v_m(m)), r.rho()));
            prop_assert_eq!(r.v_m(m + 1), next);
            prop_assert_eq!(r.v_m(m), v_m_direct(&r, m));
        }
        if let Conformality::Conformal { u, .. } = conformality(&r) {
            prop_assert_eq!(a.sub(&u, &a.scale(&r.alpha().apply(a, &u), r.rho())), r.v().clone());
            for (name, ok) in casimir_checks(&r, &u) {
                prop_assert!(ok, "{}", name);
            }
        }
    }

    #[test]
    fn integer_kernel_is_a_kernel_of_full_rank(
        rows in prop::collection::vec(prop::collection::vec(-6i64..7, 4), 1..4)
    ) {
        let rows: Vec<Vec<BigInt>> = rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
        let ker = integer_kernel(&rows, 4);
        for k in &ker {
            for row in &rows {
                let dot: BigInt = row.iter().zip(k).map(|(a, b)| a * b).sum();
                prop_assert!(dot.is_zero());
            }
        }
        prop_assert_eq!(ker.len(), 4 - rank(&rows, 4));
        prop_assert_eq!(rank(&ker, 4), ker.len());
        // a kernel basis of a saturated lattice never has an all-even vector
        for k in &ker {
            prop_assert!(k.iter().any(|x| !(x % BigInt::from(2)).is_zero()));
        }
    }
}
