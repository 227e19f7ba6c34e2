//! Generalized Weyl algebras `T(A, alpha, u)`: `XY = u`, `YX = alpha(u)`,
//! `Ya = alpha(a) Y`, `Xa = beta(a) X` with `beta = alpha^-1 gamma`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::{
    alpha_simple, comaximal, is_unit, join_terms, AlgElem, Algebra, AlgebraError, AutoMap, Automorphism, BaseAlgebra,
    Family,
};
use crate::bounds::Bounds;
use crate::ring::{conformality, AmbiskewRing, Conformality, RElement};
use crate::scalars::Scalar;
use crate::simplicity::powers_outer;
use crate::verdict::{Certificate, Condition, Decision, Status, Verdict};

pub const THEOREM_GWA: &str = "gwa";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GwaError {
    #[error("the data are singular: no splitting element to quotient by")]
    Singular,
    #[error("cannot decide whether the data are conformal: {0}")]
    Undecided(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("elements belong to different algebras")]
    Mismatch,
}

#[derive(Clone, Debug)]
pub struct GwaSpec {
    base: Algebra,
    alpha: Automorphism,
    gamma: Automorphism,
    beta: Automorphism,
    u: AlgElem,
}

/// A normal-form element `sum_d c_d Z_d` with `Z_d = Y^d` for `d > 0`,
/// `X^-d` for `d < 0` and `1` for `d = 0`, coefficients on the left.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GwaElement {
    terms: BTreeMap<i64, AlgElem>,
}

impl GwaElement {
    pub fn zero() -> Self {
        GwaElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<i64, AlgElem> {
        &self.terms
    }

    /// The coefficient of degree `d`, if nonzero.
    pub fn coefficient(&self, d: i64) -> Option<&AlgElem> {
        self.terms.get(&d)
    }

    /// Whether the element lies in a single graded component.
    pub fn degree(&self) -> Option<i64> {
        match self.terms.len() {
            1 => self.terms.keys().next().copied(),
            _ => None,
        }
    }
}

impl GwaSpec {
    /// Validates `alpha gamma = gamma alpha`, the gamma-normality of `u` and
    /// `gamma(u) = u`.
    pub fn new(base: Algebra, alpha: Automorphism, gamma: Automorphism, u: AlgElem) -> Result<Self, GwaError> {
        base.check(&u)?;
        let ag = alpha.compose(&base, &gamma);
        let ga = gamma.compose(&base, &alpha);
        if !ag.same_as(&base, &ga) {
            return Err(AlgebraError::InvalidRing("alpha and gamma do not commute".into()).into());
        }
        for g in base.generators() {
            if base.mul(&u, &g) != base.mul(&gamma.apply(&base, &g), &u) {
                return Err(AlgebraError::InvalidRing("u is not gamma-normal".into()).into());
            }
        }
        if gamma.apply(&base, &u) != u {
            return Err(AlgebraError::InvalidRing("gamma(u) != u".into()).into());
        }
        let beta = alpha.inverse().compose(&base, &gamma);
        Ok(GwaSpec { base, alpha, gamma, beta, u })
    }

    /// `T = R / zR` for conformal data, with `u` the splitting element.
    pub fn from_ambiskew(ring: &AmbiskewRing) -> Result<Self, GwaError> {
        match conformality(ring) {
            Conformality::Conformal { u, .. } => {
                GwaSpec::new(ring.base().clone(), ring.alpha().clone(), ring.gamma().clone(), u)
            }
            Conformality::Singular(_) => Err(GwaError::Singular),
            Conformality::Inconclusive(r) => Err(GwaError::Undecided(r)),
        }
    }

    /// Over a field `R(F, id, v, rho)` is itself a generalized Weyl algebra
    /// over `F[w]` with `w = xy`, `alpha(w) = rho^-1 (w - v)` and `u = w`.
    pub fn polynomial_view(ring: &AmbiskewRing, generator: &str) -> Result<Self, GwaError> {
        let a = ring.base();
        if !matches!(a.family(), Family::Field) {
            return Err(AlgebraError::InvalidAlgebra("the polynomial view needs a field base".into()).into());
        }
        let v = a.as_scalar(ring.v()).expect("field elements are scalars");
        let rinv = ring.rho().inv().expect("rho nonzero");
        let poly = BaseAlgebra::poly(ring.ctx(), generator);
        let alpha = Automorphism::new(&poly, AutoMap::Affine { scale: rinv.clone(), shift: (&v * &rinv).neg() })?;
        let u = poly.basis(1);
        GwaSpec::new(poly, alpha, Automorphism::identity(), u)
    }

    pub fn base(&self) -> &Algebra {
        &self.base
    }

    pub fn alpha(&self) -> &Automorphism {
        &self.alpha
    }

    pub fn gamma(&self) -> &Automorphism {
        &self.gamma
    }

    pub fn beta(&self) -> &Automorphism {
        &self.beta
    }

    pub fn u(&self) -> &AlgElem {
        &self.u
    }

    pub fn from_base(&self, a: AlgElem) -> GwaElement {
        self.monomial(0, a)
    }

    pub fn monomial(&self, d: i64, a: AlgElem) -> GwaElement {
        let mut terms = BTreeMap::new();
        if !self.base.is_zero(&a) {
            terms.insert(d, a);
        }
        GwaElement { terms }
    }

    pub fn one(&self) -> GwaElement {
        self.from_base(self.base.one())
    }

    pub fn y(&self) -> GwaElement {
        self.monomial(1, self.base.one())
    }

    pub fn x(&self) -> GwaElement {
        self.monomial(-1, self.base.one())
    }

    pub fn add(&self, f: &GwaElement, g: &GwaElement) -> GwaElement {
        let mut terms = f.terms.clone();
        for (d, c) in &g.terms {
            add_term(&self.base, &mut terms, *d, c.clone());
        }
        GwaElement { terms }
    }

    pub fn neg(&self, f: &GwaElement) -> GwaElement {
        GwaElement { terms: f.terms.iter().map(|(d, c)| (*d, self.base.neg(c))).collect() }
    }

    pub fn sub(&self, f: &GwaElement, g: &GwaElement) -> GwaElement {
        self.add(f, &self.neg(g))
    }

    /// The automorphism moving coefficients past `Z_d`: `Z_d a = sigma_d(a) Z_d`.
    fn past(&self, d: i64, a: &AlgElem) -> AlgElem {
        if d >= 0 {
            self.alpha.apply_pow(&self.base, d, a)
        } else {
            self.beta.apply_pow(&self.base, -d, a)
        }
    }

    /// `Y^k X^k = alpha^k(u) ... alpha(u)` for `k >= 0`.
    fn yx_power(&self, k: i64) -> AlgElem {
        let a = &self.base;
        let mut acc = a.one();
        for l in 1..=k {
            acc = a.mul(&self.alpha.apply_pow(a, l, &self.u), &acc);
        }
        acc
    }

    /// `X^k Y^k = beta^(k-1)(u) ... beta(u) u` for `k >= 0`.
    fn xy_power(&self, k: i64) -> AlgElem {
        let a = &self.base;
        let mut acc = a.one();
        for l in 0..k {
            acc = a.mul(&self.beta.apply_pow(a, l, &self.u), &acc);
        }
        acc
    }

    /// `Z_d Z_e` as `c Z_{d+e}`.
    fn mono_product(&self, d: i64, e: i64) -> AlgElem {
        let a = &self.base;
        if d.signum() * e.signum() >= 0 {
            return a.one();
        }
        if d > 0 {
            // Y^d X^k with k = -e.
            let k = -e;
            if d >= k {
                self.alpha.apply_pow(a, d - k, &self.yx_power(k))
            } else {
                self.yx_power(d)
            }
        } else {
            // X^k Y^e with k = -d.
            let k = -d;
            if e >= k {
                self.xy_power(k)
            } else {
                self.beta.apply_pow(a, k - e, &self.xy_power(e))
            }
        }
    }

    /// Normal form of `f g`.
    pub fn mul(&self, f: &GwaElement, g: &GwaElement) -> GwaElement {
        let a = &self.base;
        let mut terms = BTreeMap::new();
        for (d, b) in &f.terms {
            for (e, c) in &g.terms {
                let coeff = a.mul(&a.mul(b, &self.past(*d, c)), &self.mono_product(*d, *e));
                add_term(a, &mut terms, d + e, coeff);
            }
        }
        GwaElement { terms }
    }

    pub fn pow(&self, f: &GwaElement, e: u32) -> GwaElement {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, f);
        }
        acc
    }

    /// Image of `sum x^i a y^j` under `R -> R/zR`.
    pub fn project(&self, f: &RElement) -> GwaElement {
        let mut out = GwaElement::zero();
        for (&(i, j), c) in f.terms() {
            let t = self.mul(&self.mul(&self.pow(&self.x(), i), &self.from_base(c.clone())), &self.pow(&self.y(), j));
            out = self.add(&out, &t);
        }
        out
    }

    pub fn display(&self, f: &GwaElement) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let a = &self.base;
        let mut parts = Vec::new();
        for (d, c) in &f.terms {
            let mono = match *d {
                0 => String::new(),
                1 => "Y".into(),
                -1 => "X".into(),
                d if d > 0 => format!("Y^{d}"),
                d => format!("X^{}", -d),
            };
            let t = a.terms_text(c);
            if mono.is_empty() {
                parts.extend(t);
            } else if t.len() == 1 {
                let (neg, text) = &t[0];
                parts.push((*neg, if text == "1" { mono } else { format!("{text}*{mono}") }));
            } else {
                parts.push((false, format!("{}*{mono}", a.display_factor(c))));
            }
        }
        join_terms(&parts)
    }
}

fn add_term(a: &BaseAlgebra, terms: &mut BTreeMap<i64, AlgElem>, d: i64, c: AlgElem) {
    let sum = match terms.remove(&d) {
        Some(prev) => a.add(&prev, &c),
        None => c,
    };
    if !a.is_zero(&sum) {
        terms.insert(d, sum);
    }
}

/// Simplicity of `T(A, alpha, u)`: `A` alpha-simple, no power of alpha
/// inner, `u` regular and `uA + alpha^m(u)A = A` for all `m >= 1`.
pub fn gwa_simple(spec: &GwaSpec, bounds: &Bounds) -> Decision {
    let a = spec.base();
    let conditions = vec![
        Condition { name: "alpha_simple".into(), verdict: alpha_simple(a, std::slice::from_ref(spec.alpha()), bounds) },
        Condition { name: "powers_outer".into(), verdict: powers_outer(a, spec.alpha()) },
        Condition { name: "regular".into(), verdict: regular(a, spec.u()) },
        Condition { name: "comaximal".into(), verdict: comaximal_all_m(spec, bounds) },
    ];
    Decision::combine(THEOREM_GWA, conditions)
}

/// Whether `u` is a non-zero-divisor.
pub fn regular(a: &BaseAlgebra, u: &AlgElem) -> Verdict {
    if a.is_zero(u) {
        return Verdict::fails(Certificate::ZeroDivisor { annihilator: a.one() });
    }
    if a.is_domain() || is_unit(a, u).is_holds() {
        return Verdict::holds(Certificate::Regular);
    }
    match a.family() {
        // A product of fields: regular means invertible.
        Family::CyclicGroup { .. } => {
            let ch = a.characters(u);
            let idem: Vec<Scalar> =
                ch.iter().map(|c| if c.is_zero() { Scalar::one(a.ctx()) } else { Scalar::zero(a.ctx()) }).collect();
            Verdict::fails(Certificate::ZeroDivisor { annihilator: a.from_characters(&idem) })
        }
        Family::Quadratic { .. } => {
            // u * conj(u) = N(u) is a scalar; N(u) = 0 makes conj(u) an annihilator.
            Verdict::fails(Certificate::ZeroDivisor { annihilator: a.conjugate(u) })
        }
        _ => Verdict::inconclusive("regularity in this algebra is not decided"),
    }
}

fn at_m(m: u64, v: Verdict) -> Verdict {
    match v.certificate {
        Certificate::CommonFactor { factor, .. } => Verdict::fails(Certificate::CommonFactor { m, factor }),
        _ => v,
    }
}

/// `uA + alpha^m(u)A = A` for every `m >= 1`.
pub fn comaximal_all_m(spec: &GwaSpec, bounds: &Bounds) -> Verdict {
    let a = spec.base();
    let u = spec.u();
    if is_unit(a, u).is_holds() {
        return Verdict::holds(Certificate::Comaximal { reason: "u is a unit".into() });
    }
    if a.is_zero(u) {
        return Verdict::fails(Certificate::CommonFactor { m: 1, factor: a.zero() });
    }
    let alpha = spec.alpha();
    // alpha(u) = mu u: every alpha^m(u) is an associate of u.
    let au = alpha.apply(a, u);
    if crate::algebra::scalar_ratio(a, &au, u).is_some() {
        return at_m(1, comaximal(a, u, &au));
    }
    let mut bound = bounds.m_max;
    let mut exact = None;
    if let (Family::Poly, AutoMap::Affine { scale, shift }) = (a.family(), alpha.map()) {
        if scale.is_one() && a.ctx().characteristic() == 0 {
            if let Some(mb) = shift_bound(a, u, shift) {
                bound = mb;
                exact = Some(format!("root differences of u are bounded, so only m <= {mb} can fail"));
            }
        }
    }
    let mut cur = u.clone();
    for m in 1..=bound {
        cur = alpha.apply(a, &cur);
        if cur == *u {
            // Periodic: alpha^m(u) = u is not comaximal with u.
            return at_m(m, comaximal(a, u, &cur));
        }
        let v = comaximal(a, u, &cur);
        match v.status {
            Status::Holds => {}
            Status::Fails => return at_m(m, v),
            Status::Inconclusive => return v,
        }
    }
    match exact {
        Some(reason) => Verdict::holds(Certificate::Comaximal { reason }),
        None => Verdict::exhausted("comaximality of u and alpha^m(u)", bounds.m_max),
    }
}

/// For `alpha(t) = t + b` over the rationals, `u(t)` and `u(t + mb)` share a
/// root only if `|m b| <= 2B` with `B` the Cauchy bound of `u`.
fn shift_bound(a: &BaseAlgebra, u: &AlgElem, b: &Scalar) -> Option<u64> {
    let coeffs: Vec<BigRational> = a.coeffs(u).values().map(|c| c.as_rational()).collect::<Option<_>>()?;
    let b = b.as_rational()?;
    let lead = coeffs.last()?.clone();
    let mut max = BigRational::zero();
    for c in &coeffs[..coeffs.len() - 1] {
        let r = (c / &lead).abs();
        if r > max {
            max = r;
        }
    }
    let cauchy = max + BigRational::from_integer(1.into());
    let m = (cauchy * BigRational::from_integer(2.into()) / b.abs()).floor();
    m.to_integer().to_u64()
}

/// Shared construction for DSL and tests: `T(A, alpha, u)` with gamma the
/// normalizing automorphism of `u`.
pub fn gwa_with_normalizer(base: Algebra, alpha: Automorphism, u: AlgElem) -> Result<GwaSpec, GwaError> {
    let gamma = crate::algebra::normalizing_auto(&base, &u)
        .ok_or_else(|| AlgebraError::InvalidRing("u is not normal".into()))?;
    GwaSpec::new(base, alpha, gamma, u)
}
