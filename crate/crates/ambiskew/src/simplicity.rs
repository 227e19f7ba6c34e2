//! Simplicity criteria for `R(A, alpha, v, rho)` in characteristic 0 and p,
//! for iterated towers, and for skew Laurent extensions `A[w^{±1}; sigma]`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::{
    alpha_simple, is_unit, scalar_ratio, solve_in_span, AlgElem, AutoMap, Automorphism, BaseAlgebra, Family,
};
use crate::bounds::Bounds;
use crate::ring::{conformality, AmbiskewRing, Conformality};
use crate::scalars::{positive_integer_solution, root_of_unity_order, IntSolutions, RootOrder, Scalar};
use crate::verdict::{Certificate, Condition, Decision, Status, Verdict};

pub const THEOREM_CHAR0: &str = "char0";
pub const THEOREM_CHARP: &str = "charp";
pub const THEOREM_ITERATED: &str = "iterated";
pub const THEOREM_SKEW_LAURENT: &str = "skew_laurent";

/// Dispatches on the characteristic and the height of the tower.
pub fn simple(ring: &std::sync::Arc<AmbiskewRing>, bounds: &Bounds) -> Decision {
    if ring.ctx().characteristic() != 0 {
        simple_charp(ring, bounds)
    } else if ring.tower().len() > 1 {
        simple_iterated(ring, bounds)
    } else {
        simple_char0(ring, bounds)
    }
}

fn cond(name: &str, verdict: Verdict) -> Condition {
    Condition { name: name.to_string(), verdict }
}

/// The singularity condition: a splitting element disproves it.
pub fn singular_condition(ring: &AmbiskewRing) -> Verdict {
    match conformality(ring) {
        Conformality::Conformal { u, .. } => Verdict::fails(Certificate::Splitting { u }),
        Conformality::Singular(proof) => Verdict::holds(Certificate::Singular(proof)),
        Conformality::Inconclusive(reason) => Verdict::inconclusive(reason),
    }
}

/// Characteristic 0: `A` alpha-simple, data singular, every `v^(m)` a unit.
pub fn simple_char0(ring: &AmbiskewRing, bounds: &Bounds) -> Decision {
    let base = ring.base();
    let conditions = vec![
        cond("singular", singular_condition(ring)),
        cond("alpha_simple", alpha_simple(base, std::slice::from_ref(ring.alpha()), bounds)),
        cond("units", units_for_all_m(ring, bounds)),
    ];
    Decision::combine(THEOREM_CHAR0, conditions)
}

/// Characteristic p. The witness condition quantifies over every height
/// `n`, so it never holds from a bounded search.
pub fn simple_charp(ring: &AmbiskewRing, bounds: &Bounds) -> Decision {
    let base = ring.base();
    let conditions = vec![
        cond("charp_witness", charp_witness(ring, bounds)),
        cond("alpha_simple", alpha_simple(base, std::slice::from_ref(ring.alpha()), bounds)),
        cond("units", units_for_all_m(ring, bounds)),
    ];
    Decision::combine(THEOREM_CHARP, conditions)
}

/// A tower decided at its top level; the coefficient ring's simplicity
/// enters through the alpha-simplicity condition. A failure inherited from
/// an inner level reports that level.
pub fn simple_iterated(ring: &std::sync::Arc<AmbiskewRing>, bounds: &Bounds) -> Decision {
    let top = ring.tower().len() - 1;
    let mut d = simple_char0(ring, bounds);
    d.theorem = THEOREM_ITERATED.to_string();
    d.level = Some(top);
    if let Some(c) = d.failed_condition.as_deref().and_then(|n| d.condition(n)) {
        if let Certificate::Level { level, .. } = &c.verdict.certificate {
            d.level = Some(*level);
        }
    }
    d
}

// ------------------------------------------------------------ units

fn nonunit_at(ring: &AmbiskewRing, m: u64, value: AlgElem) -> Option<Verdict> {
    let a = ring.base();
    if is_field(a) && !a.is_zero(&value) {
        return None;
    }
    let v = is_unit(a, &value);
    match v.certificate {
        Certificate::NonUnit(proof) => Some(Verdict::fails(Certificate::NonUnitAt { m, value, proof })),
        _ => None,
    }
}

fn is_field(a: &BaseAlgebra) -> bool {
    matches!(a.family(), Family::Field | Family::Quadratic { field: true, .. })
}

/// Decides whether `v^(m)` is a unit for every `m >= 1`.
pub fn units_for_all_m(ring: &AmbiskewRing, bounds: &Bounds) -> Verdict {
    let a = ring.base();
    let v = ring.v();
    let p = ring.ctx().characteristic();
    let first = is_unit(a, v);
    match first.status {
        Status::Fails => return nonunit_at(ring, 1, v.clone()).expect("non-unit"),
        Status::Inconclusive => return Verdict::inconclusive("cannot decide whether v is a unit"),
        Status::Holds => {}
    }
    let Certificate::Inverse { inverse: v_inverse } = first.certificate else { unreachable!() };
    let rav = a.scale(&ring.alpha().apply(a, v), ring.rho());
    if let Some(mu) = scalar_ratio(a, &rav, v) {
        // v^(m) = [m]_mu v.
        let order = root_of_unity_order(&mu).expect("mu is nonzero");
        let fail_at = match order {
            RootOrder::Infinite => None,
            RootOrder::Finite(1) => (p != 0).then_some(p),
            RootOrder::Finite(k) => Some(k),
        };
        return match fail_at {
            Some(m) => nonunit_at(ring, m, ring.v_m(m))
                .unwrap_or_else(|| Verdict::inconclusive(format!("v^({m}) expected to vanish"))),
            None => Verdict::holds(Certificate::EigenUnits { mu, v_inverse }),
        };
    }
    if let Some(k) = find_period(ring, bounds.period_max) {
        if p != 0 {
            let m = p * k;
            return nonunit_at(ring, m, ring.v_m(m))
                .unwrap_or_else(|| Verdict::inconclusive("periodic sum expected to vanish"));
        }
        return periodic_units(ring, k, bounds);
    }
    for m in 2..=bounds.m_max {
        if let Some(f) = nonunit_at(ring, m, ring.v_m(m)) {
            return f;
        }
    }
    Verdict::exhausted("v^(m) unit check", bounds.m_max)
}

/// Smallest `k` with `rho^k alpha^k(v) = v`.
pub fn find_period(ring: &AmbiskewRing, period_max: u64) -> Option<u64> {
    let a = ring.base();
    let v = ring.v();
    let mut cur = v.clone();
    for k in 1..=period_max {
        cur = a.scale(&ring.alpha().apply(a, &cur), ring.rho());
        if cur == *v {
            return Some(k);
        }
    }
    None
}

/// With period `k`, `v^(qk+r) = q v^(k) + v^(r)`; each residue `r` is an
/// affine family in `q` whose non-unit members are found exactly.
fn periodic_units(ring: &AmbiskewRing, k: u64, bounds: &Bounds) -> Verdict {
    let a = ring.base();
    let vk = ring.v_m(k);
    for r in 0..k {
        let vr = ring.v_m(r);
        let q_min: u64 = if r == 0 { 1 } else { 0 };
        match affine_exceptions(a, &vk, &vr) {
            Exceptions::Finite(qs) => {
                for q in qs {
                    if q < BigInt::from(q_min) {
                        continue;
                    }
                    let value = a.add(&a.scale(&vk, &Scalar::from_bigint(a.ctx(), &q)), &vr);
                    let m = (&q * k + r).to_u64();
                    match is_unit(a, &value).status {
                        Status::Holds => {}
                        Status::Fails => {
                            let Some(m) = m else {
                                return Verdict::inconclusive("failing index exceeds 64 bits");
                            };
                            return nonunit_at(ring, m, value).expect("non-unit");
                        }
                        Status::Inconclusive => return Verdict::inconclusive("unit test inconclusive"),
                    }
                }
            }
            Exceptions::Cofinite => {
                // All but finitely many q fail; the first few contain one.
                for q in q_min..q_min + 64 {
                    let m = q * k + r;
                    if m > bounds.m_max.max(64 * k) {
                        break;
                    }
                    if let Some(f) = nonunit_at(ring, m, ring.v_m(m)) {
                        return f;
                    }
                }
                return Verdict::inconclusive("expected a non-unit v^(m) but none was found");
            }
            Exceptions::Unknown(reason) => return Verdict::inconclusive(reason),
        }
    }
    Verdict::holds(Certificate::PeriodicUnits { period: k })
}

/// Values of `q >= 0` at which `q*x + y` may fail to be a unit.
#[derive(Debug)]
pub enum Exceptions {
    /// Every other `q` gives a unit; these need a direct check.
    Finite(Vec<BigInt>),
    /// Only finitely many `q` give a unit.
    Cofinite,
    Unknown(String),
}

/// Integer roots `q >= 0` of `q*a + b = 0` (`None` when every q is a root).
pub(crate) fn integer_roots(a: &Scalar, b: &Scalar) -> Option<Vec<BigInt>> {
    if b.is_zero() && !a.is_zero() {
        return Some(vec![BigInt::zero()]);
    }
    match positive_integer_solution(a, b).expect("characteristic 0") {
        IntSolutions::None => Some(Vec::new()),
        IntSolutions::One(q) => Some(vec![q]),
        IntSolutions::All => None,
    }
}

pub fn affine_exceptions(alg: &BaseAlgebra, x: &AlgElem, y: &AlgElem) -> Exceptions {
    let zero = Scalar::zero(alg.ctx());
    let coeff = |e: &AlgElem, k: &i64| alg.coeffs(e).get(k).cloned().unwrap_or_else(|| zero.clone());
    let collect = |pairs: Vec<(Scalar, Scalar)>| -> Exceptions {
        let mut out = Vec::new();
        for (a, b) in pairs {
            match integer_roots(&a, &b) {
                Some(qs) => out.extend(qs),
                None => return Exceptions::Cofinite,
            }
        }
        out.sort();
        out.dedup();
        Exceptions::Finite(out)
    };
    match alg.family() {
        Family::Field => collect(vec![(coeff(x, &0), coeff(y, &0))]),
        Family::CyclicGroup { .. } => collect(alg.characters(x).into_iter().zip(alg.characters(y)).collect()),
        Family::Quadratic { field: true, .. } => {
            // Zero only where both coordinates vanish.
            let mut common: Option<Vec<BigInt>> = None;
            for k in [0, 1] {
                if let Some(qs) = integer_roots(&coeff(x, &k), &coeff(y, &k)) {
                    common = Some(match common {
                        None => qs,
                        Some(prev) => prev.into_iter().filter(|q| qs.contains(q)).collect(),
                    });
                }
            }
            match common {
                Some(qs) => Exceptions::Finite(qs),
                None => Exceptions::Cofinite,
            }
        }
        Family::Laurent | Family::Poly => {
            let keys: std::collections::BTreeSet<i64> =
                alg.coeffs(x).keys().chain(alg.coeffs(y).keys()).copied().collect();
            let single = keys.len() == 1 && (matches!(alg.family(), Family::Laurent) || keys.contains(&0));
            if !single {
                return Exceptions::Cofinite;
            }
            let k = keys.iter().next().unwrap();
            collect(vec![(coeff(x, k), coeff(y, k))])
        }
        Family::Nested(ring) => {
            let (fx, fy) = (alg.relem(x), alg.relem(y));
            let off_diagonal = fx.terms().keys().chain(fy.terms().keys()).any(|&k| k != (0, 0));
            if off_diagonal {
                return if ring.is_domain() {
                    Exceptions::Cofinite
                } else {
                    Exceptions::Unknown("off-diagonal terms in a ring with zero divisors".into())
                };
            }
            let inner = ring.base();
            let zero = inner.zero();
            let cx = fx.coefficient(0, 0).unwrap_or(&zero);
            let cy = fy.coefficient(0, 0).unwrap_or(&zero);
            affine_exceptions(inner, cx, cy)
        }
        Family::Quadratic { field: false, .. } => {
            Exceptions::Unknown("units of a non-field quadratic algebra along a line".into())
        }
    }
}

// ------------------------------------------------- characteristic p witness

/// Searches `rho^{p^n} alpha(u) - u = v^{p^n} + sum b_i v^{p^i}` with
/// `alpha(b_i) = rho^{p^i - p^n} b_i`, for `n <= n_max`, over commutative
/// bases with `gamma = id` and diagonal `alpha`.
fn charp_witness(ring: &AmbiskewRing, bounds: &Bounds) -> Verdict {
    let a = ring.base();
    let p = ring.ctx().characteristic();
    let rho = ring.rho();
    let diag = match ring.alpha().map() {
        AutoMap::Identity => Some(Scalar::one(a.ctx())),
        AutoMap::Scale(c) => Some(c.clone()),
        _ => None,
    };
    let (true, Some(c)) = (a.is_commutative() && ring.gamma().is_identity(a), diag) else {
        // Only the height-0 case, which is a splitting element up to sign.
        return match singular_condition(ring) {
            v if v.is_fails() => {
                let Certificate::Splitting { u } = v.certificate else { unreachable!() };
                Verdict::fails(Certificate::CharP { n: 0, u: a.neg(&u), b: Vec::new() })
            }
            _ => Verdict::inconclusive("witness search needs a commutative base with diagonal alpha"),
        };
    };
    for n in 0..=bounds.n_max {
        let pn = p.pow(n) as i64;
        let target = a.pow(ring.v(), pn as u64);
        let powers: Vec<AlgElem> = (0..n).map(|i| a.pow(ring.v(), p.pow(i))).collect();
        let window = index_window(a, &target, &powers);
        let rho_pn = rho.pow(pn).unwrap();
        let mut cols = Vec::new();
        let mut labels = Vec::new();
        for &k in &window {
            let b = a.basis(k);
            cols.push(a.sub(&a.scale(&ring.alpha().apply(a, &b), &rho_pn), &b));
            labels.push((None, k));
        }
        for (i, vp) in powers.iter().enumerate() {
            let want = rho.pow(p.pow(i as u32) as i64 - pn).unwrap();
            for &k in &window {
                if c.pow(k).unwrap() == want {
                    cols.push(a.neg(&a.mul(&a.basis(k), vp)));
                    labels.push((Some(i), k));
                }
            }
        }
        if cols.is_empty() {
            continue;
        }
        if let Some(sol) = solve_in_span(a, &cols, &target, 0) {
            let mut u = a.zero();
            let mut b = vec![a.zero(); n as usize];
            for ((slot, k), coef) in labels.into_iter().zip(sol) {
                let term = a.monomial(k, coef);
                match slot {
                    None => u = a.add(&u, &term),
                    Some(i) => b[i] = a.add(&b[i], &term),
                }
            }
            return Verdict::fails(Certificate::CharP { n, u, b });
        }
    }
    Verdict::exhausted("characteristic-p witness search over heights", bounds.n_max as u64)
}

/// Basis indices relevant to the witness equation.
fn index_window(a: &BaseAlgebra, target: &AlgElem, powers: &[AlgElem]) -> Vec<i64> {
    match a.family() {
        Family::Field => vec![0],
        Family::CyclicGroup { n, .. } => (0..*n as i64).collect(),
        Family::Quadratic { .. } => vec![0, 1],
        _ => {
            let range = |e: &AlgElem| a.exponent_range(e).unwrap_or((0, 0));
            let (tlo, thi) = range(target);
            let mut lo = tlo;
            let mut hi = thi;
            for pw in powers {
                let (plo, phi) = range(pw);
                lo = lo.min(tlo - phi);
                hi = hi.max(thi - plo);
            }
            if matches!(a.family(), Family::Poly) {
                lo = lo.max(0);
            }
            (lo..=hi).collect()
        }
    }
}

// ------------------------------------------------- skew Laurent extensions

/// Whether `sigma^m` is the identity for some `m >= 1` (inner equals
/// identity on commutative algebras).
pub fn powers_outer(alg: &BaseAlgebra, sigma: &Automorphism) -> Verdict {
    if !alg.is_commutative() {
        if sigma.is_identity(alg) {
            return Verdict::fails(Certificate::FiniteOrder { m: 1 });
        }
        return Verdict::inconclusive("inner automorphisms of a noncommutative base are not decided");
    }
    if sigma.is_identity(alg) {
        return Verdict::fails(Certificate::FiniteOrder { m: 1 });
    }
    let p = alg.ctx().characteristic();
    let order = match (sigma.map(), alg.family()) {
        (AutoMap::Affine { scale, .. }, _) if scale.is_one() => {
            if p == 0 {
                return Verdict::holds(Certificate::InfiniteOrder { reason: "nonzero shift".into() });
            }
            RootOrder::Finite(p)
        }
        (AutoMap::Affine { scale, .. }, _) => root_of_unity_order(scale).expect("nonzero"),
        (AutoMap::Scale(c), _) => root_of_unity_order(c).expect("nonzero"),
        _ => RootOrder::Finite(1),
    };
    match order {
        RootOrder::Finite(m) => Verdict::fails(Certificate::FiniteOrder { m }),
        RootOrder::Infinite => {
            Verdict::holds(Certificate::InfiniteOrder { reason: "scale factor is not a root of unity".into() })
        }
    }
}

/// `A[w^{±1}; sigma]` is simple iff `A` is sigma-simple and no power of
/// sigma is inner.
pub fn skew_laurent_simple(alg: &BaseAlgebra, sigma: &Automorphism, bounds: &Bounds) -> Decision {
    let conditions = vec![
        cond("sigma_simple", alpha_simple(alg, std::slice::from_ref(sigma), bounds)),
        cond("powers_outer", powers_outer(alg, sigma)),
    ];
    Decision::combine(THEOREM_SKEW_LAURENT, conditions)
}
