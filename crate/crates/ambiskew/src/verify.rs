//! Independent re-checking of report certificates by direct arithmetic.
//!
//! Failure witnesses (splitting elements, non-unit values, special
//! elements, stable ideals, lattice relations, ...) are checked against
//! their defining identities. Holding verdicts are checked as far as their
//! premises are arithmetic (eigenvalue relations, inverses, orders).

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::upoly::UPoly;
use crate::algebra::{scalar_ratio, AlgElem, AutoMap, Automorphism, BaseAlgebra, Family};
use crate::gwa::GwaSpec;
use crate::localization::TorusMatrix;
use crate::report::{tower_of, Report, Subject};
use crate::ring::{conformality, AmbiskewRing, Conformality};
use crate::scalars::{root_of_unity_order, RootOrder, Scalar};
use crate::verdict::{Certificate, NonUnitProof, SimpleArgument, SingularProof, Status};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("malformed certificate: {0}")]
    Malformed(String),
}

type VResult = Result<bool, VerifyError>;

fn malformed(msg: impl Into<String>) -> VerifyError {
    VerifyError::Malformed(msg.into())
}

/// Re-checks every decided condition of the report. Inconclusive
/// conditions carry no certificate and are skipped.
pub fn verify_certificate(report: &Report) -> VResult {
    if report.error.is_some() {
        return Err(malformed("the report is an error"));
    }
    for c in &report.decision.conditions {
        if c.verdict.status == Status::Inconclusive {
            continue;
        }
        let ok = match &report.subject {
            Subject::Ring(r) => ring_certificate(r, &c.name, &c.verdict.certificate)?,
            Subject::Gwa(g) => gwa_certificate(g, &c.verdict.certificate)?,
            Subject::Algebra { alg, autos } => algebra_certificate(alg, autos, &c.verdict.certificate)?,
            Subject::Torus(q) => torus_certificate(q, &c.verdict.certificate)?,
            Subject::Elements { alg, elems } => element_certificate(alg, elems, &c.verdict.certificate)?,
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

// ------------------------------------------------------------ helpers

/// `a` lies in `gA` (both sides, for the normal generators used here).
/// `None` when the algebra offers no membership test.
fn member(alg: &BaseAlgebra, a: &AlgElem, g: &AlgElem) -> Option<bool> {
    if alg.is_zero(g) {
        return Some(alg.is_zero(a));
    }
    if alg.is_zero(a) || *a == *g || scalar_ratio(alg, a, g).is_some() {
        return Some(true);
    }
    match alg.family() {
        Family::Field | Family::Quadratic { field: true, .. } => Some(true),
        Family::CyclicGroup { .. } => {
            let ca = alg.characters(a);
            let cg = alg.characters(g);
            Some(cg.iter().zip(&ca).all(|(x, y)| !x.is_zero() || y.is_zero()))
        }
        Family::Poly | Family::Laurent => Some(upoly(alg, g).divides(&upoly(alg, a))),
        _ => None,
    }
}

/// Dense polynomial with Laurent elements shifted to a nonzero constant term.
fn upoly(alg: &BaseAlgebra, a: &AlgElem) -> UPoly {
    let m = alg.coeffs(a);
    let shift = match alg.family() {
        Family::Laurent => m.keys().next().copied().unwrap_or(0),
        _ => 0,
    };
    UPoly::from_map(alg.ctx(), m, shift)
}

fn invertible(alg: &BaseAlgebra, a: &AlgElem, inv: &AlgElem) -> bool {
    alg.is_one(&alg.mul(a, inv)) && alg.is_one(&alg.mul(inv, a))
}

fn non_unit(alg: &BaseAlgebra, a: &AlgElem, proof: &NonUnitProof) -> bool {
    match (proof, alg.family()) {
        (NonUnitProof::Zero, _) => alg.is_zero(a),
        (NonUnitProof::CharacterZero { index }, Family::CyclicGroup { n, .. }) => {
            *index < *n && alg.characters(a)[*index as usize].is_zero()
        }
        (NonUnitProof::NotMonomial, Family::Laurent) => alg.coeffs(a).len() >= 2,
        (NonUnitProof::NotMonomial, Family::Poly) => alg.as_scalar(a).is_none(),
        (NonUnitProof::NormZero, Family::Quadratic { .. }) => {
            !alg.is_zero(a) && alg.is_zero(&alg.mul(a, &alg.conjugate(a)))
        }
        (NonUnitProof::OffDiagonal, Family::Nested(r)) => {
            r.is_domain() && alg.relem(a).terms().keys().any(|&k| k != (0, 0))
        }
        (NonUnitProof::Inner(p), Family::Nested(r)) => {
            let f = alg.relem(a);
            match f.coefficient(0, 0) {
                Some(c) if f.terms().len() == 1 => non_unit(r.base(), c, p),
                _ => false,
            }
        }
        _ => false,
    }
}

/// `v^(m) = sum_{l < m} rho^l alpha^l(v)` by direct summation.
fn v_m_direct(ring: &AmbiskewRing, m: u64) -> AlgElem {
    let a = ring.base();
    let mut acc = a.zero();
    let mut term = ring.v().clone();
    for _ in 0..m {
        acc = a.add(&acc, &term);
        term = a.scale(&ring.alpha().apply(a, &term), ring.rho());
    }
    acc
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

fn simple_argument(alg: &BaseAlgebra, autos: &[Automorphism], arg: &SimpleArgument) -> bool {
    let ctx = alg.ctx();
    match (arg, alg.family()) {
        (SimpleArgument::Field, f) => matches!(f, Family::Field | Family::Quadratic { field: true, .. }),
        (SimpleArgument::CyclicPrimitive { .. }, Family::CyclicGroup { n, epsilon }) => {
            // The exponents k with g(s) = epsilon^k s must generate Z/n.
            let s = alg.basis(1);
            let mut d = *n;
            for g in autos {
                let image = g.apply(alg, &s);
                let Some(k) = (0..*n).find(|&k| image == alg.scale(&s, &epsilon.pow(k as i64).unwrap())) else {
                    return false;
                };
                d = gcd_u64(d, k);
            }
            d == 1
        }
        (SimpleArgument::LaurentInfinite { automorphism }, Family::Laurent) => {
            let Some(g) = autos.get(*automorphism) else { return false };
            let t = alg.basis(1);
            let image = g.apply(alg, &t);
            match scalar_ratio(alg, &image, &t) {
                Some(c) => matches!(root_of_unity_order(&c), Ok(RootOrder::Infinite)),
                None => false,
            }
        }
        (SimpleArgument::PolyShift { automorphism }, Family::Poly) => {
            let Some(g) = autos.get(*automorphism) else { return false };
            let t = alg.basis(1);
            let d = alg.sub(&g.apply(alg, &t), &t);
            ctx.characteristic() == 0 && alg.as_scalar(&d).is_some_and(|c| !c.is_zero())
        }
        (SimpleArgument::SimpleRing | SimpleArgument::Decomposition { .. }, Family::Nested(_)) => true,
        _ => false,
    }
}

fn stable_ideal(alg: &BaseAlgebra, autos: &[Automorphism], g: &AlgElem) -> VResult {
    if alg.is_zero(g) {
        return Ok(false);
    }
    let unit = crate::algebra::is_unit(alg, g);
    if unit.status != Status::Fails {
        return Ok(false);
    }
    for s in autos {
        match member(alg, &s.apply(alg, g), g) {
            Some(true) => {}
            Some(false) => return Ok(false),
            None => return Err(malformed("no ideal membership test in this algebra")),
        }
    }
    Ok(true)
}

/// The `(i, j)` part of `v` is unreachable by `u - rho alpha(u)`.
fn singular(alg: &BaseAlgebra, alpha: &AutoMap, v: &AlgElem, rho: &Scalar, p: &SingularProof) -> bool {
    match p {
        SingularProof::Component { index, center, eigenvalue } => {
            if !(rho * eigenvalue).is_one() || matches!(alg.family(), Family::Nested(_)) {
                return false;
            }
            if matches!(alg.family(), Family::Field) {
                return *index == 0 && eigenvalue.is_one() && !alg.is_zero(v);
            }
            let c = center.clone().unwrap_or_else(|| Scalar::zero(alg.ctx()));
            let t = alg.sub(&alg.basis(1), &alg.from_scalar(c.clone()));
            // alpha must be diagonal on the basis (t - c)^k.
            let diagonal = match alpha {
                AutoMap::Identity | AutoMap::Scale(_) => c.is_zero(),
                AutoMap::Affine { .. } => scalar_ratio(alg, &alpha.apply(alg, &t), &t).is_some(),
                AutoMap::Extension { .. } => false,
            };
            if !diagonal {
                return false;
            }
            let power = if *index >= 0 { alg.pow(&t, *index as u64) } else { alg.basis(*index) };
            if alpha.apply(alg, &power) != alg.scale(&power, eigenvalue) {
                return false;
            }
            component(alg, v, &c, *index).is_some_and(|x| !x.is_zero())
        }
        SingularProof::Projection { i, j, inner } => {
            let Family::Nested(ring) = alg.family() else { return false };
            let base = ring.base();
            let (bmap, cy, cx) = match alpha {
                AutoMap::Identity => (AutoMap::Identity, base.one(), base.one()),
                AutoMap::Extension { base: b, y, x } => ((**b).clone(), y.clone(), x.clone()),
                _ => return false,
            };
            let (Some(sy), Some(sx)) = (base.as_scalar(&cy), base.as_scalar(&cx)) else { return false };
            let factor = &sx.pow(*i as i64).unwrap() * &sy.pow(*j as i64).unwrap();
            let zero = base.zero();
            let vij = alg.relem(v).coefficient(*i, *j).unwrap_or(&zero).clone();
            singular(base, &bmap, &vij, &(rho * &factor), inner)
        }
    }
}

/// Coefficient of `(t - c)^k` in `v` (Taylor expansion at `c`).
fn component(alg: &BaseAlgebra, v: &AlgElem, c: &Scalar, k: i64) -> Option<Scalar> {
    match alg.family() {
        Family::Field => (k == 0).then(|| alg.as_scalar(v).unwrap()),
        Family::Poly if !c.is_zero() => {
            // Substitute t -> t + c and read off the coefficient of t^k.
            let shifted = AutoMap::Affine { scale: Scalar::one(alg.ctx()), shift: c.clone() }.apply(alg, v);
            Some(alg.coeffs(&shifted).get(&k).cloned().unwrap_or_else(|| Scalar::zero(alg.ctx())))
        }
        Family::Nested(_) => None,
        _ => {
            let basis = alg.basis(k);
            let key = *alg.coeffs(&basis).keys().next()?;
            Some(alg.coeffs(v).get(&key).cloned().unwrap_or_else(|| Scalar::zero(alg.ctx())))
        }
    }
}

fn special(
    alg: &BaseAlgebra,
    alpha: &Automorphism,
    gamma: &Automorphism,
    rho: &Scalar,
    c: &AlgElem,
    m: i64,
    j: i64,
) -> bool {
    if alg.is_zero(c) || (m == 0 && j == 0) {
        return false;
    }
    let (Ok(rm), Ok(rj)) = (rho.pow(m), rho.pow(j)) else { return false };
    if gamma.apply(alg, c) != alg.scale(c, &rm) || alpha.apply(alg, c) != alg.scale(c, &rj) {
        return false;
    }
    alg.generators().iter().all(|g| alg.mul(c, &gamma.apply_pow(alg, j, g)) == alg.mul(&alpha.apply_pow(alg, m, g), c))
}

fn splitting_u(ring: &AmbiskewRing) -> Result<AlgElem, VerifyError> {
    match conformality(ring) {
        Conformality::Conformal { u, .. } => Ok(u),
        _ => Err(malformed("the ring has no splitting element")),
    }
}

// ------------------------------------------------------- per subject

fn ring_certificate(ring: &Arc<AmbiskewRing>, name: &str, c: &Certificate) -> VResult {
    let a = ring.base();
    let (alpha, gamma, rho, v) = (ring.alpha(), ring.gamma(), ring.rho(), ring.v());
    let autos: Vec<Automorphism> =
        if name == "alpha_gamma_simple" { vec![alpha.clone(), gamma.clone()] } else { vec![alpha.clone()] };
    Ok(match c {
        Certificate::Splitting { u } => {
            let lhs = a.sub(u, &a.scale(&alpha.apply(a, u), rho));
            let normal = a.generators().iter().all(|g| a.mul(u, g) == a.mul(&gamma.apply(a, g), u));
            lhs == *v && gamma.apply(a, u) == *u && normal
        }
        Certificate::Singular(p) => singular(a, alpha.map(), v, rho, p),
        Certificate::NonUnitAt { m, value, proof } => *value == v_m_direct(ring, *m) && non_unit(a, value, proof),
        Certificate::EigenUnits { mu, v_inverse } => {
            let p = ring.ctx().characteristic();
            let order_ok = match root_of_unity_order(mu) {
                Ok(RootOrder::Infinite) => true,
                Ok(RootOrder::Finite(1)) => p == 0,
                _ => false,
            };
            order_ok && a.scale(&alpha.apply(a, v), rho) == a.scale(v, mu) && invertible(a, v, v_inverse)
        }
        Certificate::PeriodicUnits { period } => {
            let k = *period as i64;
            let rk = rho.pow(k).map_err(|e| malformed(e.to_string()))?;
            a.scale(&alpha.apply_pow(a, k, v), &rk) == *v
        }
        Certificate::StableIdeal { generator } => stable_ideal(a, &autos, generator)?,
        Certificate::Simple(arg) => simple_argument(a, &autos, arg),
        Certificate::CharP { n, u, b } => {
            let p = ring.ctx().characteristic();
            if p == 0 || b.len() != *n as usize {
                return Ok(false);
            }
            let pn = p.pow(*n);
            let rpn = rho.pow(pn as i64).unwrap();
            let lhs = a.sub(&a.scale(&alpha.apply(a, u), &rpn), u);
            let mut rhs = a.pow(v, pn);
            for (i, bi) in b.iter().enumerate() {
                let pi = p.pow(i as u32);
                rhs = a.add(&rhs, &a.mul(bi, &a.pow(v, pi)));
                let want = rho.pow(pi as i64 - pn as i64).unwrap();
                if alpha.apply(a, bi) != a.scale(bi, &want) || gamma.apply(a, bi) != *bi {
                    return Ok(false);
                }
            }
            lhs == rhs
        }
        Certificate::Special { c, m, j } => special(a, alpha, gamma, rho, c, *m, *j),
        Certificate::RadicalFailsAt { m, factor } => {
            let u = splitting_u(ring)?;
            let d = v_m_direct(ring, *m);
            radical_obstruction(a, &u, &d, factor)?
        }
        Certificate::Level { level, inner } => {
            let tower = tower_of(a);
            let Some(r) = tower.get(*level) else { return Err(malformed("level outside the tower")) };
            ring_certificate(r, "", inner)?
        }
        Certificate::NoSpecial { .. } | Certificate::RadicalAll { .. } => true,
        other => return Err(malformed(format!("unexpected certificate for a ring: {other:?}"))),
    })
}

fn radical_obstruction(a: &BaseAlgebra, u: &AlgElem, d: &AlgElem, factor: &AlgElem) -> VResult {
    if a.is_zero(factor) {
        // d = 0 while u is not nilpotent.
        let reduced = match a.family() {
            Family::CyclicGroup { n, .. } => {
                let p = a.ctx().characteristic();
                p == 0 || n % p != 0
            }
            _ => a.is_domain(),
        };
        return Ok(a.is_zero(d) && !a.is_zero(u) && reduced);
    }
    if member(a, d, factor) != Some(true) {
        return Ok(false);
    }
    Ok(match a.family() {
        Family::Poly | Family::Laurent => {
            let f = upoly(a, factor);
            !f.is_constant() && f.gcd(&upoly(a, u)).is_constant()
        }
        Family::CyclicGroup { .. } => {
            let cf = a.characters(factor);
            let cu = a.characters(u);
            cf.iter().zip(&cu).any(|(x, y)| x.is_zero() && !y.is_zero())
        }
        _ => return Err(malformed("no radical obstruction test in this algebra")),
    })
}

fn common_factor(a: &BaseAlgebra, x: &AlgElem, y: &AlgElem, factor: &AlgElem) -> VResult {
    if a.is_zero(factor) {
        return Ok(a.is_zero(x) && a.is_zero(y));
    }
    if crate::algebra::is_unit(a, factor).status != Status::Fails {
        return Ok(false);
    }
    match (member(a, x, factor), member(a, y, factor)) {
        (Some(p), Some(q)) => Ok(p && q),
        _ => Err(malformed("no ideal membership test in this algebra")),
    }
}

fn gwa_certificate(g: &GwaSpec, c: &Certificate) -> VResult {
    let a = g.base();
    let alpha = g.alpha();
    let autos = [alpha.clone()];
    Ok(match c {
        Certificate::StableIdeal { generator } => stable_ideal(a, &autos, generator)?,
        Certificate::Simple(arg) => simple_argument(a, &autos, arg),
        Certificate::FiniteOrder { m } => {
            let k = *m as i64;
            k >= 1 && a.generators().iter().all(|x| alpha.apply_pow(a, k, x) == *x)
        }
        Certificate::InfiniteOrder { .. } => !alpha.is_identity(a),
        Certificate::Regular => !a.is_zero(g.u()),
        Certificate::ZeroDivisor { annihilator } => !a.is_zero(annihilator) && a.is_zero(&a.mul(g.u(), annihilator)),
        Certificate::CommonFactor { m, factor } => {
            let am = alpha.apply_pow(a, *m as i64, g.u());
            common_factor(a, g.u(), &am, factor)?
        }
        Certificate::Comaximal { .. } => true,
        Certificate::Level { level, inner } => {
            let tower = tower_of(a);
            let Some(r) = tower.get(*level) else { return Err(malformed("level outside the tower")) };
            ring_certificate(r, "", inner)?
        }
        other => return Err(malformed(format!("unexpected certificate for a generalized Weyl algebra: {other:?}"))),
    })
}

fn algebra_certificate(alg: &BaseAlgebra, autos: &[Automorphism], c: &Certificate) -> VResult {
    Ok(match c {
        Certificate::StableIdeal { generator } => stable_ideal(alg, autos, generator)?,
        Certificate::Simple(arg) => simple_argument(alg, autos, arg),
        Certificate::FiniteOrder { m } => {
            let k = *m as i64;
            let s = &autos[0];
            k >= 1 && alg.generators().iter().all(|x| s.apply_pow(alg, k, x) == *x)
        }
        Certificate::InfiniteOrder { .. } => !autos[0].is_identity(alg),
        Certificate::Level { level, inner } => {
            let tower = tower_of(alg);
            let Some(r) = tower.get(*level) else { return Err(malformed("level outside the tower")) };
            ring_certificate(r, "", inner)?
        }
        other => return Err(malformed(format!("unexpected certificate for an algebra: {other:?}"))),
    })
}

fn torus_certificate(q: &TorusMatrix, c: &Certificate) -> VResult {
    Ok(match c {
        Certificate::Relation { exponents } => {
            exponents.len() == q.size()
                && exponents.iter().any(|e| !num_traits::Zero::is_zero(e))
                && q.is_relation(exponents).map_err(|e| malformed(e.to_string()))?
        }
        Certificate::TrivialLattice => true,
        other => return Err(malformed(format!("unexpected certificate for a torus: {other:?}"))),
    })
}

fn element_certificate(alg: &BaseAlgebra, elems: &[AlgElem], c: &Certificate) -> VResult {
    let get = |i: usize| elems.get(i).ok_or_else(|| malformed("missing element"));
    Ok(match c {
        Certificate::Inverse { inverse } => invertible(alg, get(0)?, inverse),
        Certificate::NonUnit(p) => non_unit(alg, get(0)?, p),
        Certificate::RadicalPower { n, quotient } => alg.pow(get(0)?, *n as u64) == alg.mul(get(1)?, quotient),
        Certificate::RadicalObstruction { factor } => radical_obstruction(alg, get(0)?, get(1)?, factor)?,
        Certificate::CommonFactor { factor, .. } => common_factor(alg, get(0)?, get(1)?, factor)?,
        Certificate::Comaximal { .. } => true,
        other => return Err(malformed(format!("unexpected certificate for elements: {other:?}"))),
    })
}
