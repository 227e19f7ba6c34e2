//! Ambiskew polynomial rings `R(A, alpha, v, rho)`: construction,
//! validation and normal-form arithmetic on elements `sum x^i a_ij y^j`.

mod conformal;

use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

use crate::algebra::{AlgElem, Algebra, AlgebraError, AutoMap, Automorphism, BaseAlgebra, Result};
use crate::scalars::{Scalar, ScalarContext};

pub use conformal::{casimir_checks, conformality, Conformality};

/// The defining data `(A, alpha, gamma, v, rho)`.
#[derive(Clone, Debug)]
pub struct AmbiskewSpec {
    pub base: Algebra,
    pub alpha: Automorphism,
    pub gamma: Automorphism,
    pub v: AlgElem,
    pub rho: Scalar,
}

/// A normal-form element `sum x^i a_ij y^j`, keyed by `(i, j)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RElement {
    terms: BTreeMap<(u32, u32), AlgElem>,
}

impl RElement {
    pub fn zero() -> Self {
        RElement { terms: BTreeMap::new() }
    }

    /// Builds an element from terms that are already nonzero.
    pub fn from_terms(terms: BTreeMap<(u32, u32), AlgElem>) -> Self {
        RElement { terms }
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), AlgElem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, i: u32, j: u32) -> Option<&AlgElem> {
        self.terms.get(&(i, j))
    }

    /// Degrees `j - i` occurring, with `deg y = 1` and `deg x = -1`.
    pub fn z_degrees(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.terms.keys().map(|&(i, j)| j as i64 - i as i64).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

#[derive(Debug)]
pub struct AmbiskewRing {
    spec: AmbiskewSpec,
    beta: Automorphism,
    y_name: String,
    x_name: String,
    vm: RwLock<Vec<AlgElem>>,
}

impl AmbiskewRing {
    /// Validates the data and builds the ring. When `v = 0` the supplied
    /// `gamma` is replaced by the identity.
    pub fn construct(mut spec: AmbiskewSpec, y_name: &str, x_name: &str) -> Result<Arc<Self>> {
        let a = spec.base.clone();
        a.check(&spec.v)?;
        if spec.rho.is_zero() {
            return Err(AlgebraError::InvalidRing("rho must be nonzero".into()));
        }
        if a.is_zero(&spec.v) {
            spec.gamma = Automorphism::identity();
        }
        let names = a.generator_names();
        for n in [y_name, x_name] {
            if names.iter().any(|g| g == n) || a.ctx().param_index(n).is_some() || n == "zeta" || n.is_empty() {
                return Err(AlgebraError::InvalidRing(format!("generator name '{n}' is already in use")));
            }
        }
        if y_name == x_name {
            return Err(AlgebraError::InvalidRing("y and x need distinct names".into()));
        }
        let ag = spec.alpha.compose(&a, &spec.gamma);
        let ga = spec.gamma.compose(&a, &spec.alpha);
        if !ag.same_as(&a, &ga) {
            return Err(AlgebraError::InvalidRing("alpha and gamma do not commute".into()));
        }
        for (name, g) in names.iter().zip(a.generators()) {
            let lhs = a.mul(&spec.v, &g);
            let rhs = a.mul(&spec.gamma.apply(&a, &g), &spec.v);
            if lhs != rhs {
                return Err(AlgebraError::InvalidRing(format!("v is not gamma-normal: v*{name} != gamma({name})*v")));
            }
        }
        if spec.gamma.apply(&a, &spec.v) != spec.v {
            return Err(AlgebraError::InvalidRing("gamma(v) != v".into()));
        }
        let beta = spec.alpha.inverse().compose(&a, &spec.gamma);
        let vm = RwLock::new(vec![a.zero(), spec.v.clone()]);
        Ok(Arc::new(AmbiskewRing { spec, beta, y_name: y_name.to_string(), x_name: x_name.to_string(), vm }))
    }

    pub fn spec(&self) -> &AmbiskewSpec {
        &self.spec
    }

    pub fn base(&self) -> &Algebra {
        &self.spec.base
    }

    pub fn ctx(&self) -> &Arc<ScalarContext> {
        self.spec.base.ctx()
    }

    pub fn alpha(&self) -> &Automorphism {
        &self.spec.alpha
    }

    pub fn gamma(&self) -> &Automorphism {
        &self.spec.gamma
    }

    pub fn beta(&self) -> &Automorphism {
        &self.beta
    }

    pub fn v(&self) -> &AlgElem {
        &self.spec.v
    }

    pub fn rho(&self) -> &Scalar {
        &self.spec.rho
    }

    pub fn y_name(&self) -> &str {
        &self.y_name
    }

    pub fn x_name(&self) -> &str {
        &self.x_name
    }

    /// An iterated skew polynomial ring over a domain is a domain.
    pub fn is_domain(&self) -> bool {
        self.spec.base.is_domain()
    }

    /// The chain of rings from the innermost level up to this one.
    pub fn tower(self: &Arc<Self>) -> Vec<Arc<AmbiskewRing>> {
        let mut chain = match self.base().ring() {
            Some(inner) => inner.tower(),
            None => Vec::new(),
        };
        chain.push(self.clone());
        chain
    }

    // ---- elements ----

    pub fn embed(&self, a: AlgElem) -> RElement {
        let mut terms = BTreeMap::new();
        if !self.base().is_zero(&a) {
            terms.insert((0, 0), a);
        }
        RElement { terms }
    }

    pub fn one(&self) -> RElement {
        self.embed(self.base().one())
    }

    pub fn from_scalar(&self, s: Scalar) -> RElement {
        self.embed(self.base().from_scalar(s))
    }

    pub fn monomial(&self, i: u32, a: AlgElem, j: u32) -> RElement {
        let mut terms = BTreeMap::new();
        if !self.base().is_zero(&a) {
            terms.insert((i, j), a);
        }
        RElement { terms }
    }

    pub fn x(&self) -> RElement {
        self.monomial(1, self.base().one(), 0)
    }

    pub fn y(&self) -> RElement {
        self.monomial(0, self.base().one(), 1)
    }

    /// `w = xy`.
    pub fn w(&self) -> RElement {
        self.monomial(1, self.base().one(), 1)
    }

    fn add_term(&self, out: &mut BTreeMap<(u32, u32), AlgElem>, key: (u32, u32), a: AlgElem) {
        let base = self.base();
        if base.is_zero(&a) {
            return;
        }
        match out.remove(&key) {
            Some(prev) => {
                let s = base.add(&prev, &a);
                if !base.is_zero(&s) {
                    out.insert(key, s);
                }
            }
            None => {
                out.insert(key, a);
            }
        }
    }

    pub fn add(&self, f: &RElement, g: &RElement) -> RElement {
        let mut out = f.terms.clone();
        for (k, a) in &g.terms {
            self.add_term(&mut out, *k, a.clone());
        }
        RElement { terms: out }
    }

    pub fn neg(&self, f: &RElement) -> RElement {
        RElement { terms: f.terms.iter().map(|(k, a)| (*k, self.base().neg(a))).collect() }
    }

    pub fn sub(&self, f: &RElement, g: &RElement) -> RElement {
        self.add(f, &self.neg(g))
    }

    pub fn scale(&self, f: &RElement, s: &Scalar) -> RElement {
        if s.is_zero() {
            return RElement::zero();
        }
        RElement { terms: f.terms.iter().map(|(k, a)| (*k, self.base().scale(a, s))).collect() }
    }

    /// `v^(m) = sum_{l<m} rho^l alpha^l(v)`, via `v^(m+1) = v + rho alpha(v^(m))`.
    pub fn v_m(&self, m: u64) -> AlgElem {
        let m = m as usize;
        if let Some(v) = self.vm.read().expect("cache lock").get(m) {
            return v.clone();
        }
        let mut cache = self.vm.write().expect("cache lock");
        let base = self.base();
        while cache.len() <= m {
            let prev = cache.last().unwrap();
            let next = base.add(&self.spec.v, &base.scale(&self.alpha().apply(base, prev), &self.spec.rho));
            cache.push(next);
        }
        cache[m].clone()
    }

    /// `f * x`, using `y^q x = rho^-q (x y^q - v^(q) y^(q-1))` and
    /// `a x = x beta^-1(a)`.
    fn right_mul_x(&self, f: &RElement) -> RElement {
        let base = self.base();
        let rho_inv = self.rho().inv().expect("rho nonzero");
        let mut out = BTreeMap::new();
        for (&(p, q), c) in &f.terms {
            let r = rho_inv.pow(q as i64).unwrap();
            let moved = base.scale(&self.beta.apply_inv(base, c), &r);
            self.add_term(&mut out, (p + 1, q), moved);
            if q >= 1 {
                let tail = base.scale(&base.mul(c, &self.v_m(q as u64)), &r.neg());
                self.add_term(&mut out, (p, q - 1), tail);
            }
        }
        RElement { terms: out }
    }

    /// `f * b` for `b` in `A`, using `y^q b = alpha^q(b) y^q`.
    fn right_mul_a(&self, f: &RElement, b: &AlgElem) -> RElement {
        let base = self.base();
        let mut powers: BTreeMap<u32, AlgElem> = BTreeMap::new();
        let mut out = BTreeMap::new();
        for (&(p, q), c) in &f.terms {
            let img = powers.entry(q).or_insert_with(|| self.alpha().apply_pow(base, q as i64, b)).clone();
            self.add_term(&mut out, (p, q), base.mul(c, &img));
        }
        RElement { terms: out }
    }

    /// Normal form of `f * g`.
    pub fn mul(&self, f: &RElement, g: &RElement) -> RElement {
        if f.is_zero() || g.is_zero() {
            return RElement::zero();
        }
        let mut by_x: BTreeMap<u32, Vec<(u32, &AlgElem)>> = BTreeMap::new();
        for (&(k, l), b) in &g.terms {
            by_x.entry(k).or_default().push((l, b));
        }
        let mut out = BTreeMap::new();
        let mut fx = f.clone();
        let mut level = 0;
        for (k, parts) in by_x {
            while level < k {
                fx = self.right_mul_x(&fx);
                level += 1;
            }
            for (l, b) in parts {
                let t = self.right_mul_a(&fx, b);
                for ((p, q), c) in t.terms {
                    self.add_term(&mut out, (p, q + l), c);
                }
            }
        }
        RElement { terms: out }
    }

    pub fn pow(&self, f: &RElement, e: u32) -> RElement {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, f);
        }
        acc
    }

    /// Signed terms of `f` in the DSL grammar.
    pub fn terms_text(&self, f: &RElement) -> Vec<(bool, String)> {
        let base = self.base();
        let power = |name: &str, k: u32| match k {
            0 => String::new(),
            1 => name.to_string(),
            k => format!("{name}^{k}"),
        };
        f.terms
            .iter()
            .flat_map(|(&(i, j), c)| {
                let (xs, ys) = (power(&self.x_name, i), power(&self.y_name, j));
                if i == 0 && j == 0 {
                    return base.terms_text(c);
                }
                let mono: Vec<&str> = [xs.as_str(), ys.as_str()].into_iter().filter(|s| !s.is_empty()).collect();
                if let Some(s) = base.as_scalar(c) {
                    return vec![crate::algebra::scalar_term(&s, &mono.join("*"))];
                }
                let parts = base.terms_text(c);
                let (neg, body) = if parts.len() == 1 {
                    parts[0].clone()
                } else {
                    (false, format!("({})", crate::algebra::join_terms(&parts)))
                };
                let factors: Vec<&str> =
                    [xs.as_str(), body.as_str(), ys.as_str()].into_iter().filter(|s| !s.is_empty()).collect();
                vec![(neg, factors.join("*"))]
            })
            .collect()
    }

    pub fn display(&self, f: &RElement) -> String {
        crate::algebra::join_terms(&self.terms_text(f))
    }

    /// Checks that an extension map respects every defining relation.
    pub(crate) fn check_extension(&self, map: &AutoMap) -> Result<()> {
        let AutoMap::Extension { base: bmap, y, x } = map else {
            return Err(AlgebraError::InvalidAutomorphism("expected an extension map".into()));
        };
        let a = self.base();
        let phi_a = |e: &AlgElem| self.embed(bmap.apply(a, e));
        let py = self.mul(&self.embed(y.clone()), &self.y());
        let px = self.mul(&self.embed(x.clone()), &self.x());
        for (name, g) in a.generator_names().iter().zip(a.generators()) {
            let lhs = self.mul(&py, &phi_a(&g));
            let rhs = self.mul(&phi_a(&self.alpha().apply(a, &g)), &py);
            if lhs != rhs {
                return Err(AlgebraError::InvalidAutomorphism(format!(
                    "relation {y0}*{name} = alpha({name})*{y0} is not preserved",
                    y0 = self.y_name
                )));
            }
            let lhs = self.mul(&px, &phi_a(&g));
            let rhs = self.mul(&phi_a(&self.beta.apply(a, &g)), &px);
            if lhs != rhs {
                return Err(AlgebraError::InvalidAutomorphism(format!(
                    "relation {x0}*{name} = beta({name})*{x0} is not preserved",
                    x0 = self.x_name
                )));
            }
        }
        let lhs = self.sub(&self.mul(&px, &py), &self.scale(&self.mul(&py, &px), self.rho()));
        if lhs != phi_a(self.v()) {
            return Err(AlgebraError::InvalidAutomorphism(format!(
                "relation {}*{} - rho*{}*{} = v is not preserved",
                self.x_name, self.y_name, self.y_name, self.x_name
            )));
        }
        Ok(())
    }

    /// The automorphism of `R` extending `alpha` with `y -> lambda y` and
    /// `x -> mu lambda^-1 x`, valid when `alpha(v) = mu v`.
    pub fn extend_autos(self: &Arc<Self>, lambda: &Scalar, mu: &Scalar) -> Result<Automorphism> {
        let a = self.base();
        let av = self.alpha().apply(a, self.v());
        if av != a.scale(self.v(), mu) {
            return Err(AlgebraError::InvalidAutomorphism("alpha(v) is not mu*v".into()));
        }
        let nested = BaseAlgebra::nested(self.clone());
        let map = AutoMap::Extension {
            base: Box::new(self.alpha().map().clone()),
            y: a.from_scalar(lambda.clone()),
            x: a.from_scalar(&mu.clone() * &lambda.inv()?),
        };
        Automorphism::new(&nested, map)
    }

    /// The automorphism of `R` extending `gamma` with `y -> rho y` and
    /// `x -> rho^-1 x`.
    pub fn gamma_extension(self: &Arc<Self>) -> Result<Automorphism> {
        let a = self.base();
        let nested = BaseAlgebra::nested(self.clone());
        let map = AutoMap::Extension {
            base: Box::new(self.gamma().map().clone()),
            y: a.from_scalar(self.rho().clone()),
            x: a.from_scalar(self.rho().inv()?),
        };
        Automorphism::new(&nested, map)
    }
}
