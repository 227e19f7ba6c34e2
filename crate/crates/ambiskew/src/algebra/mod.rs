//! Coefficient algebras `A`: the field itself, cyclic group algebras,
//! Laurent and polynomial rings in one variable, quadratic extensions, and
//! ambiskew rings used as bases of further iterations.

mod auto;
mod decide;
pub mod upoly;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::ring::{AmbiskewRing, RElement};
use crate::scalars::{root_of_unity_order, RootOrder, Scalar, ScalarContext, ScalarError};

pub use auto::{AutoMap, Automorphism};
pub use decide::{alpha_simple, comaximal, is_unit, normalizing_auto, radical_membership, solve_splitting, Splitting};
pub(crate) use decide::{scalar_ratio, solve_in_span};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("element does not belong to this algebra")]
    Mismatch,
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid ring data: {0}")]
    InvalidRing(String),
    #[error("{0} is not a unit")]
    NotUnit(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;

#[derive(Clone, Debug)]
pub enum Family {
    Field,
    /// `F C_n` with generator `s`, `s^n = 1`, and a distinguished primitive
    /// n-th root of unity `epsilon` used by its automorphisms.
    CyclicGroup {
        n: u64,
        epsilon: Scalar,
    },
    Laurent,
    Poly,
    /// `F[s]/(s^2 - d)`; `field` records the user's assertion that `s^2 - d`
    /// is irreducible.
    Quadratic {
        d: Scalar,
        field: bool,
    },
    Nested(Arc<AmbiskewRing>),
}

#[derive(Debug)]
pub struct BaseAlgebra {
    ctx: Arc<ScalarContext>,
    family: Family,
    generator: String,
}

pub type Algebra = Arc<BaseAlgebra>;

/// An element of a coefficient algebra.
///
/// Commutative families use a sparse map from basis exponent to coefficient;
/// nested ambiskew bases use the ring's normal form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AlgElem {
    Comm(BTreeMap<i64, Scalar>),
    Ring(RElement),
}

impl BaseAlgebra {
    pub fn field(ctx: &Arc<ScalarContext>) -> Algebra {
        Arc::new(BaseAlgebra { ctx: ctx.clone(), family: Family::Field, generator: String::new() })
    }

    pub fn cyclic_group(ctx: &Arc<ScalarContext>, generator: &str, n: u64, epsilon: Scalar) -> Result<Algebra> {
        if n == 0 {
            return Err(AlgebraError::InvalidAlgebra("cyclic group order must be positive".into()));
        }
        if epsilon.is_zero() || root_of_unity_order(&epsilon)? != RootOrder::Finite(n) {
            return Err(AlgebraError::InvalidAlgebra(format!(
                "epsilon = {epsilon} is not a primitive {n}-th root of unity"
            )));
        }
        Ok(Arc::new(BaseAlgebra {
            ctx: ctx.clone(),
            family: Family::CyclicGroup { n, epsilon },
            generator: generator.to_string(),
        }))
    }

    pub fn laurent(ctx: &Arc<ScalarContext>, generator: &str) -> Algebra {
        Arc::new(BaseAlgebra { ctx: ctx.clone(), family: Family::Laurent, generator: generator.to_string() })
    }

    pub fn poly(ctx: &Arc<ScalarContext>, generator: &str) -> Algebra {
        Arc::new(BaseAlgebra { ctx: ctx.clone(), family: Family::Poly, generator: generator.to_string() })
    }

    pub fn quadratic(ctx: &Arc<ScalarContext>, generator: &str, d: Scalar, field: bool) -> Result<Algebra> {
        if d.is_zero() {
            return Err(AlgebraError::InvalidAlgebra("quadratic extension needs d != 0".into()));
        }
        if ctx.characteristic() == 2 {
            return Err(AlgebraError::InvalidAlgebra("quadratic extensions need characteristic != 2".into()));
        }
        Ok(Arc::new(BaseAlgebra {
            ctx: ctx.clone(),
            family: Family::Quadratic { d, field },
            generator: generator.to_string(),
        }))
    }

    pub fn nested(ring: Arc<AmbiskewRing>) -> Algebra {
        let ctx = ring.ctx().clone();
        Arc::new(BaseAlgebra { ctx, family: Family::Nested(ring), generator: String::new() })
    }

    pub fn ctx(&self) -> &Arc<ScalarContext> {
        &self.ctx
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn generator_name(&self) -> &str {
        &self.generator
    }

    pub fn ring(&self) -> Option<&Arc<AmbiskewRing>> {
        match &self.family {
            Family::Nested(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_commutative(&self) -> bool {
        !matches!(self.family, Family::Nested(_))
    }

    /// Whether the algebra is known to have no zero divisors.
    pub fn is_domain(&self) -> bool {
        match &self.family {
            Family::Field | Family::Laurent | Family::Poly => true,
            Family::CyclicGroup { n, .. } => *n == 1,
            Family::Quadratic { field, .. } => *field,
            Family::Nested(r) => r.is_domain(),
        }
    }

    pub fn family_name(&self) -> &'static str {
        match &self.family {
            Family::Field => "field",
            Family::CyclicGroup { .. } => "cyclic_group",
            Family::Laurent => "laurent",
            Family::Poly => "poly",
            Family::Quadratic { .. } => "quadratic",
            Family::Nested(_) => "ambiskew",
        }
    }

    /// All generator names visible in this algebra, innermost first.
    pub fn generator_names(&self) -> Vec<String> {
        match &self.family {
            Family::Field => Vec::new(),
            Family::Nested(r) => {
                let mut v = r.base().generator_names();
                v.push(r.y_name().to_string());
                v.push(r.x_name().to_string());
                v
            }
            _ => vec![self.generator.clone()],
        }
    }

    /// Algebra generators as elements (innermost first, matching
    /// `generator_names`).
    pub fn generators(&self) -> Vec<AlgElem> {
        match &self.family {
            Family::Field => Vec::new(),
            Family::Nested(r) => {
                let mut v: Vec<AlgElem> =
                    r.base().generators().into_iter().map(|a| AlgElem::Ring(r.embed(a))).collect();
                v.push(AlgElem::Ring(r.y()));
                v.push(AlgElem::Ring(r.x()));
                v
            }
            _ => vec![self.basis(1)],
        }
    }

    /// The element named `name` (a generator at any nesting depth).
    pub fn generator(&self, name: &str) -> Option<AlgElem> {
        let names = self.generator_names();
        names.iter().position(|n| n == name).map(|i| self.generators().swap_remove(i))
    }

    /// Basis monomial `gen^i` of a commutative family.
    pub fn basis(&self, i: i64) -> AlgElem {
        let mut m = BTreeMap::new();
        m.insert(i, Scalar::one(&self.ctx));
        self.normalize_comm(m)
    }

    pub fn monomial(&self, i: i64, c: Scalar) -> AlgElem {
        let mut m = BTreeMap::new();
        m.insert(i, c);
        self.normalize_comm(m)
    }

    pub fn zero(&self) -> AlgElem {
        match &self.family {
            Family::Nested(_) => AlgElem::Ring(RElement::zero()),
            _ => AlgElem::Comm(BTreeMap::new()),
        }
    }

    pub fn one(&self) -> AlgElem {
        self.from_scalar(Scalar::one(&self.ctx))
    }

    pub fn from_scalar(&self, s: Scalar) -> AlgElem {
        match &self.family {
            Family::Nested(r) => AlgElem::Ring(r.embed(r.base().from_scalar(s))),
            _ => {
                let mut m = BTreeMap::new();
                if !s.is_zero() {
                    m.insert(0, s);
                }
                AlgElem::Comm(m)
            }
        }
    }

    pub fn from_int(&self, n: i64) -> AlgElem {
        self.from_scalar(Scalar::from_int(&self.ctx, n))
    }

    /// The scalar value when `a` lies in the copy of the coefficient field.
    pub fn as_scalar(&self, a: &AlgElem) -> Option<Scalar> {
        match (a, &self.family) {
            (AlgElem::Comm(m), _) => {
                if m.is_empty() {
                    Some(Scalar::zero(&self.ctx))
                } else if m.len() == 1 {
                    m.get(&0).cloned()
                } else {
                    None
                }
            }
            (AlgElem::Ring(f), Family::Nested(r)) => {
                if f.is_zero() {
                    return Some(Scalar::zero(&self.ctx));
                }
                if f.terms().len() != 1 {
                    return None;
                }
                f.terms().get(&(0, 0)).and_then(|c| r.base().as_scalar(c))
            }
            _ => None,
        }
    }

    pub fn is_zero(&self, a: &AlgElem) -> bool {
        match a {
            AlgElem::Comm(m) => m.is_empty(),
            AlgElem::Ring(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self, a: &AlgElem) -> bool {
        self.as_scalar(a).is_some_and(|s| s.is_one())
    }

    /// The commutative coefficient map of `a`.
    pub fn coeffs<'a>(&self, a: &'a AlgElem) -> &'a BTreeMap<i64, Scalar> {
        match a {
            AlgElem::Comm(m) => m,
            AlgElem::Ring(_) => panic!("nested element has no commutative coefficient map"),
        }
    }

    pub fn relem<'a>(&self, a: &'a AlgElem) -> &'a RElement {
        match a {
            AlgElem::Ring(f) => f,
            AlgElem::Comm(_) => panic!("commutative element used in nested algebra"),
        }
    }

    pub fn check(&self, a: &AlgElem) -> Result<()> {
        match (a, &self.family) {
            (AlgElem::Ring(_), Family::Nested(_)) => Ok(()),
            (AlgElem::Comm(m), f) => {
                let ok = m.keys().all(|&k| match f {
                    Family::Field => k == 0,
                    Family::CyclicGroup { n, .. } => k >= 0 && (k as u64) < *n,
                    Family::Laurent => true,
                    Family::Poly => k >= 0,
                    Family::Quadratic { .. } => k == 0 || k == 1,
                    Family::Nested(_) => false,
                });
                if ok {
                    Ok(())
                } else {
                    Err(AlgebraError::Mismatch)
                }
            }
            _ => Err(AlgebraError::Mismatch),
        }
    }

    /// Reduces exponents into the family's basis and drops zeros.
    fn normalize_comm(&self, m: BTreeMap<i64, Scalar>) -> AlgElem {
        let mut out: BTreeMap<i64, Scalar> = BTreeMap::new();
        let mut push = |k: i64, c: Scalar| {
            let e = out.entry(k).or_insert_with(|| Scalar::zero(&self.ctx));
            *e = &*e + &c;
        };
        for (k, c) in m {
            match &self.family {
                Family::CyclicGroup { n, .. } => push(k.rem_euclid(*n as i64), c),
                Family::Quadratic { d, .. } => {
                    let (q, r) = (k.div_euclid(2), k.rem_euclid(2));
                    push(r, &c * &d.pow(q).expect("d is nonzero"));
                }
                Family::Field => {
                    assert_eq!(k, 0, "field elements are scalars");
                    push(0, c)
                }
                Family::Poly => {
                    assert!(k >= 0, "negative exponent in a polynomial ring");
                    push(k, c)
                }
                _ => push(k, c),
            }
        }
        out.retain(|_, c| !c.is_zero());
        AlgElem::Comm(out)
    }

    pub fn add(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        match (a, b) {
            (AlgElem::Comm(x), AlgElem::Comm(y)) => {
                let mut out = x.clone();
                for (k, c) in y {
                    match out.get_mut(k) {
                        Some(e) => {
                            *e = &*e + c;
                            if e.is_zero() {
                                out.remove(k);
                            }
                        }
                        None => {
                            out.insert(*k, c.clone());
                        }
                    }
                }
                AlgElem::Comm(out)
            }
            (AlgElem::Ring(x), AlgElem::Ring(y)) => AlgElem::Ring(self.ring().expect("nested").add(x, y)),
            _ => panic!("{}", AlgebraError::Mismatch),
        }
    }

    pub fn neg(&self, a: &AlgElem) -> AlgElem {
        match a {
            AlgElem::Comm(x) => AlgElem::Comm(x.iter().map(|(k, c)| (*k, c.neg())).collect()),
            AlgElem::Ring(f) => AlgElem::Ring(self.ring().expect("nested").neg(f)),
        }
    }

    pub fn sub(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &AlgElem, s: &Scalar) -> AlgElem {
        if s.is_zero() {
            return self.zero();
        }
        match a {
            AlgElem::Comm(x) => AlgElem::Comm(x.iter().map(|(k, c)| (*k, c * s)).collect()),
            AlgElem::Ring(f) => AlgElem::Ring(self.ring().expect("nested").scale(f, s)),
        }
    }

    pub fn mul(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        match (a, b) {
            (AlgElem::Comm(x), AlgElem::Comm(y)) => {
                if x.is_empty() || y.is_empty() {
                    return self.zero();
                }
                let mut out: BTreeMap<i64, Scalar> = BTreeMap::new();
                for (i, c) in x {
                    for (j, d) in y {
                        let e = out.entry(i + j).or_insert_with(|| Scalar::zero(&self.ctx));
                        *e = &*e + &(c * d);
                    }
                }
                self.normalize_comm(out)
            }
            (AlgElem::Ring(f), AlgElem::Ring(g)) => AlgElem::Ring(self.ring().expect("nested").mul(f, g)),
            _ => panic!("{}", AlgebraError::Mismatch),
        }
    }

    pub fn pow(&self, a: &AlgElem, e: u64) -> AlgElem {
        let mut acc = self.one();
        let mut b = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }

    /// Lowest and highest exponents of a nonzero commutative element.
    pub fn exponent_range(&self, a: &AlgElem) -> Option<(i64, i64)> {
        let m = self.coeffs(a);
        Some((*m.keys().next()?, *m.keys().next_back()?))
    }

    /// Character values `a(epsilon^l)` of a cyclic group algebra element.
    pub fn characters(&self, a: &AlgElem) -> Vec<Scalar> {
        let Family::CyclicGroup { n, epsilon } = &self.family else {
            panic!("characters are only defined on cyclic group algebras");
        };
        (0..*n)
            .map(|l| {
                let el = epsilon.pow(l as i64).unwrap();
                let mut acc = Scalar::zero(&self.ctx);
                for (i, c) in self.coeffs(a) {
                    acc = &acc + &(c * &el.pow(*i).unwrap());
                }
                acc
            })
            .collect()
    }

    /// Inverse of `characters`: the element with the given character values.
    pub fn from_characters(&self, vals: &[Scalar]) -> AlgElem {
        let Family::CyclicGroup { n, epsilon } = &self.family else {
            panic!("characters are only defined on cyclic group algebras");
        };
        let ninv = Scalar::from_int(&self.ctx, *n as i64).inv().expect("n invertible");
        let mut m = BTreeMap::new();
        for i in 0..*n as i64 {
            let mut acc = Scalar::zero(&self.ctx);
            for (l, val) in vals.iter().enumerate() {
                acc = &acc + &(val * &epsilon.pow(-(i * l as i64)).unwrap());
            }
            m.insert(i, &acc * &ninv);
        }
        self.normalize_comm(m)
    }

    /// Quadratic conjugate `a - b s` of `a + b s`.
    pub fn conjugate(&self, a: &AlgElem) -> AlgElem {
        let m = self.coeffs(a);
        AlgElem::Comm(m.iter().map(|(k, c)| (*k, if *k == 1 { c.neg() } else { c.clone() })).collect())
    }

    /// Renders `a` as a sum of signed terms in the DSL grammar.
    pub fn terms_text(&self, a: &AlgElem) -> Vec<(bool, String)> {
        match a {
            AlgElem::Comm(m) => m
                .iter()
                .map(|(k, c)| {
                    let mono = match (*k, &self.family) {
                        (0, _) => String::new(),
                        (1, _) => self.generator.clone(),
                        (k, _) => format!("{}^{}", self.generator, k),
                    };
                    scalar_term(c, &mono)
                })
                .collect(),
            AlgElem::Ring(f) => self.ring().expect("nested").terms_text(f),
        }
    }

    pub fn display(&self, a: &AlgElem) -> String {
        join_terms(&self.terms_text(a))
    }

    /// `display` wrapped in parentheses when it is not a single factor.
    pub fn display_factor(&self, a: &AlgElem) -> String {
        let t = self.terms_text(a);
        if t.len() == 1 && !t[0].0 {
            t[0].1.clone()
        } else {
            format!("({})", join_terms(&t))
        }
    }
}

pub(crate) fn scalar_term(c: &Scalar, mono: &str) -> (bool, String) {
    let text = c.to_string();
    if has_top_level_sum(&text) {
        return if mono.is_empty() { (false, text) } else { (false, format!("({text})*{mono}")) };
    }
    let (neg, mag) = match text.strip_prefix('-') {
        Some(rest) => (true, rest.to_string()),
        None => (false, text),
    };
    if mono.is_empty() {
        (neg, mag)
    } else if mag == "1" {
        (neg, mono.to_string())
    } else {
        (neg, format!("{mag}*{mono}"))
    }
}

/// True when `s` has a `+` or binary `-` outside parentheses.
pub(crate) fn has_top_level_sum(s: &str) -> bool {
    let mut depth = 0i32;
    let bytes = s.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 && i > 0 && bytes[i - 1] == b' ' => return true,
            _ => {}
        }
    }
    false
}

pub(crate) fn join_terms(terms: &[(bool, String)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (neg, body)) in terms.iter().enumerate() {
        let body = if has_top_level_sum(body) { format!("({body})") } else { body.clone() };
        if i == 0 {
            if *neg {
                out.push('-');
            }
        } else {
            out.push_str(if *neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Field => write!(f, "field"),
            Family::CyclicGroup { n, epsilon } => write!(f, "cyclic_group(n={n}, epsilon={epsilon})"),
            Family::Laurent => write!(f, "laurent"),
            Family::Poly => write!(f, "poly"),
            Family::Quadratic { d, .. } => write!(f, "quadratic(d={d})"),
            Family::Nested(r) => write!(f, "ambiskew({})", r.y_name()),
        }
    }
}
