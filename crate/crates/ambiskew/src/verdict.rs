//! Three-valued verdicts and the witnesses that back them.

use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra::AlgElem;
use crate::scalars::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
    Inconclusive,
}

/// Why an element is not a unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonUnitProof {
    /// The element is zero.
    Zero,
    /// A character of a cyclic group algebra vanishes on it.
    CharacterZero { index: u64 },
    /// A Laurent element with more than one term, or a polynomial of positive
    /// degree.
    NotMonomial,
    /// `a * conj(a) = 0` in a quadratic algebra.
    NormZero,
    /// An element of a nested domain outside bidegree (0, 0).
    OffDiagonal,
    /// An element of bidegree (0, 0) whose coefficient is a non-unit.
    Inner(Box<NonUnitProof>),
}

/// Why `v = u - rho*alpha(u)` has no solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SingularProof {
    /// `alpha` scales the basis element `(t - center)^index` by `eigenvalue`,
    /// `rho * eigenvalue = 1`, and `v` has a nonzero coefficient there.
    Component { index: i64, center: Option<Scalar>, eigenvalue: Scalar },
    /// `alpha` preserves bidegrees of a nested base and acts on bidegree
    /// `(i, j)` as `c_x^i c_y^j` times its base part, so the `(i, j)` part of
    /// `v` is already singular for the restricted data with
    /// `rho' = rho c_x^i c_y^j`.
    Projection { i: u32, j: u32, inner: Box<SingularProof> },
}

/// Family-level reasons an algebra is simple with respect to a set of
/// automorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimpleArgument {
    /// A field (or a quadratic extension asserted to be one).
    Field,
    /// `F C_n` and some automorphism `s -> epsilon^k s` with `gcd(k, n) = 1`.
    CyclicPrimitive { automorphism: usize, exponent: u64 },
    /// `F[t^{±1}]` and some `t -> c t` with `c` not a root of unity.
    LaurentInfinite { automorphism: usize },
    /// `F[t]` in characteristic 0 and some shift `t -> t + b`, `b != 0`.
    PolyShift { automorphism: usize },
    /// A nested ring whose automorphisms all fix it and which is simple.
    SimpleRing,
    /// A nested ring over `F C_n` fixed pointwise on `s` by all maps:
    /// it decomposes into simple factors permuted transitively.
    Decomposition { factors: u64 },
}

/// Evidence attached to a verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    None,
    /// A search ran to the stated bound without deciding.
    Exhausted {
        search: String,
        bound: u64,
    },
    Inverse {
        inverse: AlgElem,
    },
    NonUnit(NonUnitProof),
    Splitting {
        u: AlgElem,
    },
    Singular(SingularProof),
    /// `v^(m)` is not a unit.
    NonUnitAt {
        m: u64,
        value: AlgElem,
        proof: NonUnitProof,
    },
    /// `rho*alpha(v) = mu*v`, `v` invertible, and `[m]_mu != 0` for all m.
    EigenUnits {
        mu: Scalar,
        v_inverse: AlgElem,
    },
    /// `rho^k alpha^k (v) = v`, so `v^(qk+r) = q v^(k) + v^(r)`, checked unit
    /// for every `q` and `r` componentwise.
    PeriodicUnits {
        period: u64,
    },
    /// A nonzero proper ideal generated by `generator` is stable.
    StableIdeal {
        generator: AlgElem,
    },
    Simple(SimpleArgument),
    /// Characteristic-p obstruction: `rho^(p^n) alpha(u) - u = v^(p^n) + sum b_i v^(p^i)`.
    CharP {
        n: u32,
        u: AlgElem,
        b: Vec<AlgElem>,
    },
    /// An `(m, j)`-special element.
    Special {
        c: AlgElem,
        m: i64,
        j: i64,
    },
    /// The integer lattice of candidate exponents has no admissible point.
    NoSpecial {
        reason: String,
    },
    /// `prod_k q_{k,i}^{m_k} = 1` for every column `i`.
    Relation {
        exponents: Vec<BigInt>,
    },
    /// The relation lattice is trivial.
    TrivialLattice,
    /// `alpha^m` is the identity.
    FiniteOrder {
        m: u64,
    },
    /// `alpha` has infinite order.
    InfiniteOrder {
        reason: String,
    },
    /// `u` is regular.
    Regular,
    /// `a * annihilator = 0` with both nonzero.
    ZeroDivisor {
        annihilator: AlgElem,
    },
    /// `factor` is a common non-unit divisor (or a common vanishing
    /// character) of `u` and `alpha^m(u)`.
    CommonFactor {
        m: u64,
        factor: AlgElem,
    },
    /// `u` and `alpha^m(u)` are comaximal for all m.
    Comaximal {
        reason: String,
    },
    /// `u^n = d * quotient`.
    RadicalPower {
        n: u32,
        quotient: AlgElem,
    },
    /// No power of `u` lies in `dA`: a prime factor or character separates
    /// them.
    RadicalObstruction {
        factor: AlgElem,
    },
    /// Failure of the radical condition for `d = v^(m)`.
    RadicalFailsAt {
        m: u64,
        factor: AlgElem,
    },
    /// All `v^(m)` contain a power of `u`.
    RadicalAll {
        reason: String,
    },
    /// The verdict of an inner level of a tower.
    Level {
        level: usize,
        inner: Box<Certificate>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub certificate: Certificate,
    pub reason: Option<String>,
}

impl Verdict {
    pub fn holds(certificate: Certificate) -> Self {
        Verdict { status: Status::Holds, certificate, reason: None }
    }

    pub fn fails(certificate: Certificate) -> Self {
        Verdict { status: Status::Fails, certificate, reason: None }
    }

    pub fn inconclusive(reason: impl Into<String>) -> Self {
        Verdict { status: Status::Inconclusive, certificate: Certificate::None, reason: Some(reason.into()) }
    }

    pub fn exhausted(search: impl Into<String>, bound: u64) -> Self {
        let search = search.into();
        Verdict {
            status: Status::Inconclusive,
            reason: Some(format!("{search}: bound {bound} reached")),
            certificate: Certificate::Exhausted { search, bound },
        }
    }

    pub fn with_reason(mut self, reason: impl Into<String>) -> Self {
        self.reason = Some(reason.into());
        self
    }

    pub fn is_holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.status == Status::Fails
    }
}

/// One evaluated condition of a theorem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub name: String,
    pub verdict: Verdict,
}

/// The outcome of a theorem-level criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub theorem: String,
    pub status: Status,
    pub conditions: Vec<Condition>,
    /// Name of the first failing condition.
    pub failed_condition: Option<String>,
    /// Tower level (0 = innermost) the verdict refers to, for iterated rings.
    pub level: Option<usize>,
}

impl Decision {
    /// Combines conditions: any failure decides, otherwise any
    /// inconclusive condition makes the decision inconclusive.
    pub fn combine(theorem: &str, conditions: Vec<Condition>) -> Self {
        let failed = conditions.iter().find(|c| c.verdict.is_fails()).map(|c| c.name.clone());
        let status = if failed.is_some() {
            Status::Fails
        } else if conditions.iter().any(|c| c.verdict.status == Status::Inconclusive) {
            Status::Inconclusive
        } else {
            Status::Holds
        };
        Decision { theorem: theorem.to_string(), status, conditions, failed_condition: failed, level: None }
    }

    pub fn condition(&self, name_prefix: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name.starts_with(name_prefix))
    }
}
