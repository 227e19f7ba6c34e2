//! Simplicity of the localization `S` of a conformal ring at the powers of
//! its Casimir element, and of quantum tori.
//!
//! `S` is never built: every condition lives in the coefficient algebra.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::{
    alpha_simple, is_unit, radical_membership, scalar_ratio, AlgElem, AutoMap, Automorphism, BaseAlgebra, Family,
};
use crate::bounds::Bounds;
use crate::lattice::{solve_constraints, Constraint};
use crate::ring::{conformality, AmbiskewRing, Conformality};
use crate::scalars::{mult_log, root_of_unity_order, Generator, RootOrder, Scalar, ScalarError};
use crate::simplicity::{find_period, integer_roots};
use crate::verdict::{Certificate, Condition, Decision, Status, Verdict};

pub const THEOREM_LOCALIZED: &str = "localized";
pub const THEOREM_LOCALIZED_NONNILPOTENT: &str = "localized_nonnilpotent";
pub const THEOREM_TORUS: &str = "torus_lattice";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LocalizationError {
    #[error("the data are singular: there is no Casimir element to invert")]
    Singular,
    #[error("invalid torus matrix: {0}")]
    InvalidTorus(String),
}

/// A nonzero `c` with `gamma(c) = rho^m c`, `alpha(c) = rho^j c` and
/// `c gamma^j(a) = alpha^m(a) c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialElement {
    pub c: AlgElem,
    pub m: i64,
    pub j: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialMode {
    /// Any `(m, j) != (0, 0)`.
    All,
    /// Only `m = 0`, `j != 0`.
    ZeroMOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecialSearch {
    Found(SpecialElement),
    None(String),
    Inconclusive(String),
}

/// Checks the defining identities of a special element on generators.
pub fn is_special(
    alg: &BaseAlgebra,
    alpha: &Automorphism,
    gamma: &Automorphism,
    rho: &Scalar,
    s: &SpecialElement,
) -> bool {
    if alg.is_zero(&s.c) {
        return false;
    }
    let (Ok(rm), Ok(rj)) = (rho.pow(s.m), rho.pow(s.j)) else { return false };
    if gamma.apply(alg, &s.c) != alg.scale(&s.c, &rm) || alpha.apply(alg, &s.c) != alg.scale(&s.c, &rj) {
        return false;
    }
    alg.generators()
        .iter()
        .all(|g| alg.mul(&s.c, &gamma.apply_pow(alg, s.j, g)) == alg.mul(&alpha.apply_pow(alg, s.m, g), &s.c))
}

/// `prod base^(coef . (i, m, j)) = 1`.
type Equation = Vec<(Scalar, [i64; 3])>;

/// Searches for an `(m, j)`-special element among basis monomials, reducing
/// the conditions to multiplicative relations among scalars and solving the
/// resulting integer lattice exactly.
pub fn special_element_search(
    alg: &BaseAlgebra,
    alpha: &Automorphism,
    gamma: &Automorphism,
    rho: &Scalar,
    mode: SpecialMode,
) -> SpecialSearch {
    if let Some(r) = shift_special(alg, alpha, gamma, rho, mode) {
        return r;
    }
    let (Some(ea), Some(eg)) = (alpha.diagonal_eigenvalues(alg), gamma.diagonal_eigenvalues(alg)) else {
        return SpecialSearch::Inconclusive("special elements are only searched for diagonal automorphisms".into());
    };
    let innermost = innermost(alg);
    let has_gen = !matches!(innermost.family(), Family::Field);
    let off = usize::from(has_gen);
    let mut eqs: Vec<Equation> = Vec::new();
    let one = Scalar::one(alg.ctx());
    let (at, gt) = if has_gen { (ea[0].clone(), eg[0].clone()) } else { (one.clone(), one.clone()) };
    eqs.push(vec![(gt.clone(), [1, 0, 0]), (rho.clone(), [0, -1, 0])]);
    eqs.push(vec![(at.clone(), [1, 0, 0]), (rho.clone(), [0, 0, -1])]);
    if has_gen {
        eqs.push(vec![(gt, [0, 0, 1]), (at, [0, -1, 0])]);
    }
    // Nested levels: y_k c = alpha_k(c) y_k and x_k c = beta_k(c) x_k.
    for (k, ring) in levels(alg).iter().enumerate() {
        let b = ring.base();
        let (lam, bet) = if has_gen {
            let (Some(la), Some(lg)) = (
                ring.alpha().scale_factor(b).or_else(|| first(ring.alpha().diagonal_eigenvalues(b))),
                ring.gamma().scale_factor(b).or_else(|| first(ring.gamma().diagonal_eigenvalues(b))),
            ) else {
                return SpecialSearch::Inconclusive("inner automorphisms are not diagonal".into());
            };
            let bet = lg.div(&la).expect("nonzero eigenvalue");
            (la, bet)
        } else {
            (one.clone(), one.clone())
        };
        let (ay, ax) = (ea[off + 2 * k].clone(), ea[off + 2 * k + 1].clone());
        let (gy, gx) = (eg[off + 2 * k].clone(), eg[off + 2 * k + 1].clone());
        eqs.push(vec![(gy, [0, 0, 1]), (ay, [0, -1, 0]), (lam, [-1, 0, 0])]);
        eqs.push(vec![(gx, [0, 0, 1]), (ax, [0, -1, 0]), (bet, [-1, 0, 0])]);
    }
    let mut cons = match lattice_rows(alg, &eqs) {
        Ok(c) => c,
        Err(e) => return SpecialSearch::Inconclusive(e),
    };
    if !has_gen {
        cons.push(Constraint::exact(ints(&[1, 0, 0])));
    }
    if mode == SpecialMode::ZeroMOnly {
        cons.push(Constraint::exact(ints(&[0, 1, 0])));
    }
    let basis = solve_constraints(&cons, 3);
    let pick = basis.iter().find(|b| !b[1].is_zero() || !b[2].is_zero());
    let complete = alg.is_commutative() || alg.is_domain();
    let Some(vec) = pick else {
        return if complete {
            SpecialSearch::None("the exponent lattice has no point with (m, j) != (0, 0)".into())
        } else {
            SpecialSearch::Inconclusive("no monomial candidate; non-monomial units are not searched".into())
        };
    };
    let mut k: Vec<i64> = match vec.iter().map(|x| x.to_i64()).collect::<Option<Vec<_>>>() {
        Some(k) => k,
        None => return SpecialSearch::Inconclusive("witness exponents exceed 64 bits".into()),
    };
    if matches!(innermost.family(), Family::Poly) && k[0] < 0 {
        k.iter_mut().for_each(|x| *x = -*x);
    }
    let c = lift(alg, &innermost_monomial(innermost, k[0]));
    let s = SpecialElement { c, m: k[1], j: k[2] };
    if is_special(alg, alpha, gamma, rho, &s) {
        SpecialSearch::Found(s)
    } else {
        SpecialSearch::Inconclusive("lattice witness failed the direct check".into())
    }
}

fn first(v: Option<Vec<Scalar>>) -> Option<Scalar> {
    v.and_then(|v| v.into_iter().next())
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn innermost(alg: &BaseAlgebra) -> &BaseAlgebra {
    match alg.ring() {
        Some(r) => innermost(r.base()),
        None => alg,
    }
}

/// Rings of the tower under `alg`, innermost first.
fn levels(alg: &BaseAlgebra) -> Vec<&AmbiskewRing> {
    match alg.ring() {
        Some(r) => {
            let mut v = levels(r.base());
            v.push(r);
            v
        }
        None => Vec::new(),
    }
}

fn innermost_monomial(alg: &BaseAlgebra, i: i64) -> AlgElem {
    match alg.family() {
        Family::Field => alg.one(),
        Family::Quadratic { .. } => alg.basis(i.rem_euclid(2)),
        _ => alg.basis(i),
    }
}

fn lift(alg: &BaseAlgebra, c: &AlgElem) -> AlgElem {
    match alg.ring() {
        Some(r) => AlgElem::Ring(r.embed(lift(r.base(), c))),
        None => c.clone(),
    }
}

/// Linear constraints on `(i, m, j)` from multiplicative equations.
fn lattice_rows(alg: &BaseAlgebra, eqs: &[Equation]) -> Result<Vec<Constraint>, String> {
    let torsion = BigInt::from(alg.ctx().torsion_order());
    let mut out = Vec::new();
    for eq in eqs {
        let mut free: BTreeMap<Generator, Vec<BigInt>> = BTreeMap::new();
        let mut tors = vec![BigInt::zero(); 3];
        for (s, coef) in eq {
            if s.is_one() {
                continue;
            }
            let log = mult_log(s)?;
            for (g, e) in &log.free {
                let row = free.entry(g.clone()).or_insert_with(|| vec![BigInt::zero(); 3]);
                for (r, c) in row.iter_mut().zip(coef) {
                    *r += e * c;
                }
            }
            for (r, c) in tors.iter_mut().zip(coef) {
                *r += BigInt::from(log.torsion) * c;
            }
        }
        out.extend(free.into_values().map(Constraint::exact));
        if !torsion.is_one() && tors.iter().any(|x| !x.is_zero()) {
            out.push(Constraint::congruence(tors, torsion.clone()));
        }
    }
    Ok(out)
}

/// Polynomial bases with a shift: special elements are constants, and the
/// normality condition is `j g = m b` for shifts `b`, `g` of alpha, gamma.
fn shift_special(
    alg: &BaseAlgebra,
    alpha: &Automorphism,
    gamma: &Automorphism,
    rho: &Scalar,
    mode: SpecialMode,
) -> Option<SpecialSearch> {
    if !matches!(alg.family(), Family::Poly) {
        return None;
    }
    let shift = |m: &AutoMap| -> Option<Option<Scalar>> {
        match m {
            AutoMap::Identity => Some(Some(Scalar::zero(alg.ctx()))),
            AutoMap::Affine { scale, shift } if scale.is_one() => Some(Some(shift.clone())),
            AutoMap::Affine { .. } | AutoMap::Scale(_) => Some(None),
            AutoMap::Extension { .. } => None,
        }
    };
    let (Some(Some(b)), Some(Some(g))) = (shift(alpha.map()), shift(gamma.map())) else { return None };
    if b.is_zero() && g.is_zero() {
        return None;
    }
    if alg.ctx().characteristic() != 0 {
        return Some(SpecialSearch::Inconclusive("shifts in positive characteristic".into()));
    }
    let eqs: Vec<Equation> = vec![vec![(rho.clone(), [0, 1, 0])], vec![(rho.clone(), [0, 0, 1])]];
    let mut cons = match lattice_rows(alg, &eqs) {
        Ok(c) => c,
        Err(e) => return Some(SpecialSearch::Inconclusive(e)),
    };
    cons.push(Constraint::exact(ints(&[1, 0, 0])));
    // j g - m b = 0.
    if b.is_zero() {
        cons.push(Constraint::exact(ints(&[0, 0, 1])));
    } else {
        match g.div(&b).unwrap().as_rational() {
            Some(r) => cons.push(Constraint::exact(vec![BigInt::zero(), r.denom().clone(), -r.numer().clone()])),
            None => {
                cons.push(Constraint::exact(ints(&[0, 1, 0])));
                cons.push(Constraint::exact(ints(&[0, 0, 1])));
            }
        }
    }
    if mode == SpecialMode::ZeroMOnly {
        cons.push(Constraint::exact(ints(&[0, 1, 0])));
    }
    let basis = solve_constraints(&cons, 3);
    Some(match basis.iter().find(|v| !v[1].is_zero() || !v[2].is_zero()) {
        Some(v) => {
            let s = SpecialElement { c: alg.one(), m: v[1].to_i64()?, j: v[2].to_i64()? };
            if is_special(alg, alpha, gamma, rho, &s) {
                SpecialSearch::Found(s)
            } else {
                SpecialSearch::Inconclusive("lattice witness failed the direct check".into())
            }
        }
        None => SpecialSearch::None("alpha(c) = rho^j c forces c constant and the exponent lattice is trivial".into()),
    })
}

fn special_verdict(search: SpecialSearch) -> Verdict {
    match search {
        SpecialSearch::Found(s) => Verdict::fails(Certificate::Special { c: s.c, m: s.m, j: s.j }),
        SpecialSearch::None(reason) => Verdict::holds(Certificate::NoSpecial { reason }),
        SpecialSearch::Inconclusive(reason) => Verdict::inconclusive(reason),
    }
}

/// Whether `u` is known not to be nilpotent: a unit, or nonzero in a domain.
fn non_nilpotent(alg: &BaseAlgebra, u: &AlgElem) -> bool {
    !alg.is_zero(u) && (alg.is_domain() || is_unit(alg, u).is_holds())
}

fn reduced(alg: &BaseAlgebra) -> bool {
    match alg.family() {
        Family::Nested(_) => alg.is_domain(),
        Family::CyclicGroup { n, .. } => {
            let p = alg.ctx().characteristic();
            p == 0 || n % p != 0
        }
        _ => true,
    }
}

/// Decides simplicity of the localization at the Casimir element.
pub fn localized_simple(ring: &AmbiskewRing, bounds: &Bounds) -> Result<Decision, LocalizationError> {
    let u = match conformality(ring) {
        Conformality::Conformal { u, .. } => u,
        Conformality::Singular(_) => return Err(LocalizationError::Singular),
        Conformality::Inconclusive(reason) => {
            let conditions = vec![Condition { name: "conformal".into(), verdict: Verdict::inconclusive(reason) }];
            return Ok(Decision::combine(THEOREM_LOCALIZED, conditions));
        }
    };
    let a = ring.base();
    let gammas = [ring.alpha().clone(), ring.gamma().clone()];
    let simple = alpha_simple(a, &gammas, bounds);
    let (theorem, name, mode) = if non_nilpotent(a, &u) {
        (THEOREM_LOCALIZED_NONNILPOTENT, "special_zero_m", SpecialMode::ZeroMOnly)
    } else {
        (THEOREM_LOCALIZED, "special", SpecialMode::All)
    };
    let special = special_verdict(special_element_search(a, ring.alpha(), ring.gamma(), ring.rho(), mode));
    let conditions = vec![
        Condition { name: "alpha_gamma_simple".into(), verdict: simple },
        Condition { name: name.into(), verdict: special },
        Condition { name: "radical".into(), verdict: radical_all_m(ring, &u, bounds) },
    ];
    Ok(Decision::combine(theorem, conditions))
}

fn radical_fails(m: u64, verdict: Verdict) -> Verdict {
    match verdict.certificate {
        Certificate::RadicalObstruction { factor } => Verdict::fails(Certificate::RadicalFailsAt { m, factor }),
        _ => verdict,
    }
}

/// For every `m >= 1`, some power of `u` lies in `v^(m) A`.
pub fn radical_all_m(ring: &AmbiskewRing, u: &AlgElem, bounds: &Bounds) -> Verdict {
    let a = ring.base();
    let v = ring.v();
    let p = ring.ctx().characteristic();
    if a.is_zero(u) {
        return Verdict::holds(Certificate::RadicalAll { reason: "u = 0".into() });
    }
    // v^(m) = 0 needs u nilpotent, impossible in a reduced algebra.
    let vanishing = |m: u64| -> Verdict {
        if reduced(a) {
            Verdict::fails(Certificate::RadicalFailsAt { m, factor: a.zero() })
        } else {
            Verdict::inconclusive(format!("v^({m}) = 0 and nilpotency of u is not decided"))
        }
    };
    if a.is_zero(v) {
        return vanishing(1);
    }
    let rav = a.scale(&ring.alpha().apply(a, v), ring.rho());
    if let Some(mu) = scalar_ratio(a, &rav, v) {
        let zero_at = match root_of_unity_order(&mu).expect("nonzero") {
            RootOrder::Infinite => None,
            RootOrder::Finite(1) => (p != 0).then_some(p),
            RootOrder::Finite(k) => Some(k),
        };
        if let Some(m) = zero_at {
            return vanishing(m);
        }
        // Every v^(m) = [m]_mu v is an associate of v.
        let r = radical_membership(a, u, v);
        return match r.status {
            Status::Holds => Verdict::holds(Certificate::RadicalAll {
                reason: format!("v^(m) = [m]_mu v with mu = {mu} and some power of u in vA"),
            }),
            _ => radical_fails(1, r),
        };
    }
    if let (Family::CyclicGroup { .. }, 0, Some(k)) = (a.family(), p, find_period(ring, bounds.period_max)) {
        return cyclic_radical(ring, u, k);
    }
    for m in 1..=bounds.m_max {
        let r = radical_membership(a, u, &ring.v_m(m));
        match r.status {
            Status::Holds => {}
            Status::Fails => return radical_fails(m, r),
            Status::Inconclusive => return r,
        }
    }
    Verdict::exhausted("radical condition", bounds.m_max)
}

/// On `F C_n`, `u^n in dA` iff every character vanishing on `d` vanishes on
/// `u`; with period `k` each character of `v^(qk+r)` is affine in `q`.
fn cyclic_radical(ring: &AmbiskewRing, u: &AlgElem, k: u64) -> Verdict {
    let a = ring.base();
    let cu = a.characters(u);
    let ck = a.characters(&ring.v_m(k));
    for r in 0..k {
        let cr = a.characters(&ring.v_m(r));
        let q_min = BigInt::from(u64::from(r == 0));
        for l in 0..cu.len() {
            if cu[l].is_zero() {
                continue;
            }
            let q = match integer_roots(&ck[l], &cr[l]) {
                None => Some(q_min.clone()),
                Some(qs) => qs.into_iter().find(|q| *q >= q_min),
            };
            if let Some(q) = q {
                let Some(m) = (q * k + r).to_u64() else {
                    return Verdict::inconclusive("failing index exceeds 64 bits");
                };
                let r = radical_membership(a, u, &ring.v_m(m));
                return radical_fails(m, r);
            }
        }
    }
    Verdict::holds(Certificate::RadicalAll { reason: format!("characters of v^(m) checked over the period {k}") })
}

// ------------------------------------------------------------ quantum tori

/// `Q = (q_ij)` with `q_ii = 1` and `q_ji = q_ij^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusMatrix {
    entries: Vec<Vec<Scalar>>,
}

impl TorusMatrix {
    pub fn new(entries: Vec<Vec<Scalar>>) -> Result<Self, LocalizationError> {
        let n = entries.len();
        if n == 0 {
            return Err(LocalizationError::InvalidTorus("empty matrix".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(LocalizationError::InvalidTorus(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            if !row[i].is_one() {
                return Err(LocalizationError::InvalidTorus(format!("diagonal entry ({0},{0}) is not 1", i + 1)));
            }
            for j in 0..n {
                let prod = &row[j] * &entries[j][i];
                if !prod.is_one() {
                    return Err(LocalizationError::InvalidTorus(format!(
                        "entries ({0},{1}) and ({1},{0}) are not inverse",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(TorusMatrix { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<Scalar>] {
        &self.entries
    }

    /// The top-left `k x k` block.
    pub fn block(&self, k: usize) -> Result<Self, LocalizationError> {
        TorusMatrix::new(self.entries.iter().take(k).map(|r| r[..k.min(r.len())].to_vec()).collect())
    }

    /// Whether `prod_k q_{k,i}^{m_k} = 1` for every column `i`.
    pub fn is_relation(&self, m: &[BigInt]) -> Result<bool, ScalarError> {
        let n = self.size();
        for i in 0..n {
            let mut acc = self.entries[0][0].clone();
            for (k, e) in m.iter().enumerate() {
                let e = e.to_i64().ok_or(ScalarError::ExponentTooLarge)?;
                acc = &acc * &self.entries[k][i].pow(e)?;
            }
            if !acc.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The torus is simple iff the only integer relation among the columns is
/// trivial.
pub fn quantum_torus_simple(q: &TorusMatrix) -> Verdict {
    let n = q.size();
    let ctx = q.entries[0][0].ctx();
    let torsion = BigInt::from(ctx.torsion_order());
    let mut cons = Vec::new();
    for i in 0..n {
        let mut free: BTreeMap<Generator, Vec<BigInt>> = BTreeMap::new();
        let mut tors = vec![BigInt::zero(); n];
        for k in 0..n {
            let log = match mult_log(&q.entries[k][i]) {
                Ok(l) => l,
                Err(e) => return Verdict::inconclusive(format!("entry ({},{}): {e}", k + 1, i + 1)),
            };
            for (g, e) in log.free {
                free.entry(g).or_insert_with(|| vec![BigInt::zero(); n])[k] += e;
            }
            tors[k] = BigInt::from(log.torsion);
        }
        cons.extend(free.into_values().map(Constraint::exact));
        if !torsion.is_one() {
            cons.push(Constraint::congruence(tors, torsion.clone()));
        }
    }
    let basis = solve_constraints(&cons, n);
    match basis.into_iter().next() {
        None => Verdict::holds(Certificate::TrivialLattice),
        Some(mut v) => {
            // Sign-normalize: first nonzero entry positive, gcd 1 where possible.
            let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if !g.is_zero() && !g.is_one() && q.is_relation(&v.iter().map(|x| x / &g).collect::<Vec<_>>()) == Ok(true) {
                v.iter_mut().for_each(|x| *x /= &g);
            }
            if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
                v.iter_mut().for_each(|x| *x = -x.clone());
            }
            Verdict::fails(Certificate::Relation { exponents: v })
        }
    }
}
