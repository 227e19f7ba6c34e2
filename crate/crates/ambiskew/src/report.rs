//! Running check directives and rendering their reports as JSON or text.

use std::sync::Arc;
use std::time::{Duration, Instant};

use serde_json::{json, Map, Value};

use crate::algebra::{
    alpha_simple, comaximal, is_unit, radical_membership, AlgElem, Algebra, Automorphism, BaseAlgebra,
};
use crate::bounds::Bounds;
use crate::dsl::{CheckKind, SpecDocument};
use crate::gwa::{gwa_simple, GwaSpec};
use crate::localization::{
    localized_simple, quantum_torus_simple, special_element_search, SpecialMode, SpecialSearch, TorusMatrix,
    THEOREM_TORUS,
};
use crate::ring::{conformality, AmbiskewRing, Conformality};
use crate::simplicity::{simple, skew_laurent_simple, units_for_all_m};
use crate::verdict::{Certificate, Condition, Decision, NonUnitProof, SimpleArgument, SingularProof, Status, Verdict};

/// Identifier of the JSON layout; bumped on incompatible changes.
pub const SCHEMA: &str = "ambiskew-report/1";

/// What a report is about, kept for re-checking its certificates.
#[derive(Clone, Debug)]
pub enum Subject {
    Ring(Arc<AmbiskewRing>),
    Gwa(Arc<GwaSpec>),
    Algebra {
        alg: Algebra,
        autos: Vec<Automorphism>,
    },
    Torus(TorusMatrix),
    /// Elements of an algebra: `[a]` for unit checks, `[u, d]` for
    /// radical membership, `[a, b]` for comaximality.
    Elements {
        alg: Algebra,
        elems: Vec<AlgElem>,
    },
}

#[derive(Clone, Debug)]
pub struct Report {
    pub query: String,
    pub line: usize,
    pub check: String,
    pub subject: Subject,
    pub decision: Decision,
    /// The Casimir element, for conformality checks.
    pub casimir: Option<String>,
    pub error: Option<String>,
    pub bounds: Bounds,
    pub elapsed: Option<Duration>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub timing: bool,
}

impl Report {
    pub fn status(&self) -> Status {
        self.decision.status
    }

    /// The certificate that decides the report: the failing condition's, or
    /// the only condition's.
    pub fn certificate(&self) -> Option<&Certificate> {
        if let Some(name) = &self.decision.failed_condition {
            return self.decision.condition(name).map(|c| &c.verdict.certificate);
        }
        match self.decision.conditions.as_slice() {
            [c] => Some(&c.verdict.certificate),
            _ => None,
        }
    }

    /// Whether the report is a definite answer (no inconclusive verdict and
    /// no error).
    pub fn is_definite(&self) -> bool {
        self.error.is_none() && self.status() != Status::Inconclusive
    }
}

fn single(theorem: &str, name: &str, verdict: Verdict) -> Decision {
    let mut d = Decision::combine(theorem, vec![Condition { name: name.into(), verdict }]);
    d.theorem = theorem.to_string();
    d
}

/// Runs every check of the document in source order.
pub fn run_checks(doc: &SpecDocument, bounds: &Bounds, opts: RunOptions) -> Vec<Report> {
    doc.checks
        .iter()
        .map(|c| {
            let start = Instant::now();
            let mut r = run_one(&c.kind, bounds);
            r.query = c.call.to_string();
            r.line = c.call.span.line;
            r.check = c.call.name.clone();
            if opts.timing {
                r.elapsed = Some(start.elapsed());
            }
            r
        })
        .collect()
}

fn run_one(kind: &CheckKind, bounds: &Bounds) -> Report {
    let mut casimir = None;
    let mut error = None;
    let (subject, decision) = match kind {
        CheckKind::Simple(r) => (Subject::Ring(r.clone()), simple(r, bounds)),
        CheckKind::GwaSimple(g) => (Subject::Gwa(g.clone()), gwa_simple(g, bounds)),
        CheckKind::Conformal(r) => {
            let v = match conformality(r) {
                Conformality::Conformal { u, z } => {
                    casimir = Some(r.display(&z));
                    Verdict::holds(Certificate::Splitting { u })
                }
                Conformality::Singular(p) => Verdict::fails(Certificate::Singular(p)),
                Conformality::Inconclusive(reason) => Verdict::inconclusive(reason),
            };
            (Subject::Ring(r.clone()), single("", "conformal", v))
        }
        CheckKind::Units(r) => (Subject::Ring(r.clone()), single("", "units", units_for_all_m(r, bounds))),
        CheckKind::LocalizedSimple(r) => {
            let d = match localized_simple(r, bounds) {
                Ok(d) => d,
                Err(e) => {
                    error = Some(e.to_string());
                    single("", "conformal", Verdict::inconclusive(e.to_string()))
                }
            };
            (Subject::Ring(r.clone()), d)
        }
        CheckKind::Special(r) => {
            let v = match special_element_search(r.base(), r.alpha(), r.gamma(), r.rho(), SpecialMode::All) {
                SpecialSearch::Found(s) => Verdict::holds(Certificate::Special { c: s.c, m: s.m, j: s.j }),
                SpecialSearch::None(reason) => Verdict::fails(Certificate::NoSpecial { reason }),
                SpecialSearch::Inconclusive(reason) => Verdict::inconclusive(reason),
            };
            (Subject::Ring(r.clone()), single("", "special", v))
        }
        CheckKind::Torus(q) => (Subject::Torus(q.clone()), single(THEOREM_TORUS, "torus", quantum_torus_simple(q))),
        CheckKind::AlphaSimple { alg, autos } => (
            Subject::Algebra { alg: alg.clone(), autos: autos.clone() },
            single("", "alpha_simple", alpha_simple(alg, autos, bounds)),
        ),
        CheckKind::SkewLaurent { alg, sigma } => {
            (Subject::Algebra { alg: alg.clone(), autos: vec![sigma.clone()] }, skew_laurent_simple(alg, sigma, bounds))
        }
        CheckKind::Unit { alg, a } => {
            (Subject::Elements { alg: alg.clone(), elems: vec![a.clone()] }, single("", "unit", is_unit(alg, a)))
        }
        CheckKind::Radical { alg, u, d } => (
            Subject::Elements { alg: alg.clone(), elems: vec![u.clone(), d.clone()] },
            single("", "radical", radical_membership(alg, u, d)),
        ),
        CheckKind::Comaximal { alg, a, b } => (
            Subject::Elements { alg: alg.clone(), elems: vec![a.clone(), b.clone()] },
            single("", "comaximal", comaximal(alg, a, b)),
        ),
    };
    Report {
        query: String::new(),
        line: 0,
        check: String::new(),
        subject,
        decision,
        casimir,
        error,
        bounds: *bounds,
        elapsed: None,
    }
}

// ------------------------------------------------------------- rendering

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Holds => "holds",
        Status::Fails => "fails",
        Status::Inconclusive => "inconclusive",
    }
}

/// The algebra in which a subject's certificates live.
fn subject_algebra(s: &Subject) -> Option<&BaseAlgebra> {
    match s {
        Subject::Ring(r) => Some(r.base()),
        Subject::Gwa(g) => Some(g.base()),
        Subject::Algebra { alg, .. } | Subject::Elements { alg, .. } => Some(alg),
        Subject::Torus(_) => None,
    }
}

/// The tower whose levels `Certificate::Level` refers to.
pub(crate) fn tower_of(alg: &BaseAlgebra) -> Vec<Arc<AmbiskewRing>> {
    alg.ring().map(|r| r.tower()).unwrap_or_default()
}

fn non_unit_json(p: &NonUnitProof) -> Value {
    match p {
        NonUnitProof::Zero => json!({"kind": "zero"}),
        NonUnitProof::CharacterZero { index } => json!({"kind": "character_zero", "index": index}),
        NonUnitProof::NotMonomial => json!({"kind": "not_monomial"}),
        NonUnitProof::NormZero => json!({"kind": "norm_zero"}),
        NonUnitProof::OffDiagonal => json!({"kind": "off_diagonal"}),
        NonUnitProof::Inner(p) => json!({"kind": "inner", "inner": non_unit_json(p)}),
    }
}

fn singular_json(p: &SingularProof) -> Value {
    match p {
        SingularProof::Component { index, center, eigenvalue } => json!({
            "kind": "component",
            "index": index,
            "center": center.as_ref().map(|c| c.to_string()),
            "eigenvalue": eigenvalue.to_string(),
        }),
        SingularProof::Projection { i, j, inner } => {
            json!({"kind": "projection", "i": i, "j": j, "inner": singular_json(inner)})
        }
    }
}

fn argument_json(a: &SimpleArgument) -> Value {
    match a {
        SimpleArgument::Field => json!({"kind": "field"}),
        SimpleArgument::CyclicPrimitive { automorphism, exponent } => {
            json!({"kind": "cyclic_primitive", "automorphism": automorphism, "exponent": exponent})
        }
        SimpleArgument::LaurentInfinite { automorphism } => {
            json!({"kind": "laurent_infinite_order", "automorphism": automorphism})
        }
        SimpleArgument::PolyShift { automorphism } => json!({"kind": "poly_shift", "automorphism": automorphism}),
        SimpleArgument::SimpleRing => json!({"kind": "simple_ring"}),
        SimpleArgument::Decomposition { factors } => json!({"kind": "decomposition", "factors": factors}),
    }
}

/// JSON form of a certificate; elements are printed in `alg`.
pub fn certificate_json(c: &Certificate, alg: Option<&BaseAlgebra>) -> Value {
    let show = |a: &AlgElem| match alg {
        Some(alg) => Value::String(alg.display(a)),
        None => Value::Null,
    };
    match c {
        Certificate::None => json!({"kind": "none"}),
        Certificate::Exhausted { search, bound } => json!({"kind": "exhausted", "search": search, "bound": bound}),
        Certificate::Inverse { inverse } => json!({"kind": "inverse", "inverse": show(inverse)}),
        Certificate::NonUnit(p) => json!({"kind": "non_unit", "proof": non_unit_json(p)}),
        Certificate::Splitting { u } => json!({"kind": "splitting", "u": show(u)}),
        Certificate::Singular(p) => json!({"kind": "singular", "proof": singular_json(p)}),
        Certificate::NonUnitAt { m, value, proof } => {
            json!({"kind": "non_unit_at", "m": m, "value": show(value), "proof": non_unit_json(proof)})
        }
        Certificate::EigenUnits { mu, v_inverse } => {
            json!({"kind": "eigen_units", "mu": mu.to_string(), "v_inverse": show(v_inverse)})
        }
        Certificate::PeriodicUnits { period } => json!({"kind": "periodic_units", "period": period}),
        Certificate::StableIdeal { generator } => json!({"kind": "stable_ideal", "generator": show(generator)}),
        Certificate::Simple(a) => json!({"kind": "simple", "argument": argument_json(a)}),
        Certificate::CharP { n, u, b } => {
            json!({"kind": "charp", "n": n, "u": show(u), "b": b.iter().map(show).collect::<Vec<_>>()})
        }
        Certificate::Special { c, m, j } => json!({"kind": "special", "c": show(c), "m": m, "j": j}),
        Certificate::NoSpecial { reason } => json!({"kind": "no_special", "reason": reason}),
        Certificate::Relation { exponents } => json!({
            "kind": "relation",
            "exponents": exponents.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        }),
        Certificate::TrivialLattice => json!({"kind": "trivial_lattice"}),
        Certificate::FiniteOrder { m } => json!({"kind": "finite_order", "m": m}),
        Certificate::InfiniteOrder { reason } => json!({"kind": "infinite_order", "reason": reason}),
        Certificate::Regular => json!({"kind": "regular"}),
        Certificate::ZeroDivisor { annihilator } => json!({"kind": "zero_divisor", "annihilator": show(annihilator)}),
        Certificate::CommonFactor { m, factor } => json!({"kind": "common_factor", "m": m, "factor": show(factor)}),
        Certificate::Comaximal { reason } => json!({"kind": "comaximal", "reason": reason}),
        Certificate::RadicalPower { n, quotient } => {
            json!({"kind": "radical_power", "n": n, "quotient": show(quotient)})
        }
        Certificate::RadicalObstruction { factor } => json!({"kind": "radical_obstruction", "factor": show(factor)}),
        Certificate::RadicalFailsAt { m, factor } => {
            json!({"kind": "radical_fails_at", "m": m, "factor": show(factor)})
        }
        Certificate::RadicalAll { reason } => json!({"kind": "radical_all", "reason": reason}),
        Certificate::Level { level, inner } => {
            let tower = alg.map(tower_of).unwrap_or_default();
            let inner_alg = tower.get(*level).map(|r| r.base().as_ref());
            json!({"kind": "level", "level": level, "inner": certificate_json(inner, inner_alg)})
        }
    }
}

impl Report {
    pub fn to_json(&self) -> Value {
        let alg = subject_algebra(&self.subject);
        let conditions: Vec<Value> = self
            .decision
            .conditions
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "status": status_str(c.verdict.status),
                    "certificate": certificate_json(&c.verdict.certificate, alg),
                    "reason": c.verdict.reason,
                })
            })
            .collect();
        let mut m = Map::new();
        m.insert("schema".into(), json!(SCHEMA));
        m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        m.insert("query".into(), json!(self.query));
        m.insert("line".into(), json!(self.line));
        m.insert("check".into(), json!(self.check));
        m.insert("status".into(), json!(status_str(self.status())));
        let theorem = (!self.decision.theorem.is_empty()).then(|| self.decision.theorem.clone());
        m.insert("theorem".into(), json!(theorem));
        m.insert("failed_condition".into(), json!(self.decision.failed_condition));
        m.insert("level".into(), json!(self.decision.level));
        m.insert("certificate".into(), self.certificate().map(|c| certificate_json(c, alg)).unwrap_or(Value::Null));
        m.insert("conditions".into(), Value::Array(conditions));
        if let Some(z) = &self.casimir {
            m.insert("casimir".into(), json!(z));
        }
        m.insert("error".into(), json!(self.error));
        m.insert("bounds".into(), serde_json::to_value(self.bounds).expect("bounds serialize"));
        if let Some(t) = self.elapsed {
            m.insert("elapsed_ms".into(), json!(t.as_secs_f64() * 1000.0));
        }
        Value::Object(m)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} (line {}): {}\n", self.query, self.line, status_str(self.status()));
        if !self.decision.theorem.is_empty() {
            out += &format!("  theorem: {}\n", self.decision.theorem);
        }
        if let Some(e) = &self.error {
            out += &format!("  error: {e}\n");
        }
        let alg = subject_algebra(&self.subject);
        for c in &self.decision.conditions {
            out += &format!("  {}: {}", c.name, status_str(c.verdict.status));
            let cert = certificate_json(&c.verdict.certificate, alg);
            if cert["kind"] != "none" {
                out += &format!(" [{}]", compact(&cert));
            }
            if let Some(r) = &c.verdict.reason {
                out += &format!(" ({r})");
            }
            out.push('\n');
        }
        if let Some(z) = &self.casimir {
            out += &format!("  casimir: {z}\n");
        }
        if let Some(t) = self.elapsed {
            out += &format!("  time: {:.3} ms\n", t.as_secs_f64() * 1000.0);
        }
        out
    }
}

/// `kind key=value ...` with nested objects in braces.
fn compact(v: &Value) -> String {
    match v {
        Value::Object(m) => {
            let mut parts = Vec::new();
            if let Some(Value::String(k)) = m.get("kind") {
                parts.push(k.clone());
            }
            for (k, x) in m {
                if k != "kind" && !x.is_null() {
                    parts.push(format!("{k}={}", compact(x)));
                }
            }
            if parts.len() == 1 {
                parts.pop().unwrap()
            } else {
                format!("{{{}}}", parts.join(" "))
            }
        }
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(compact).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

/// All reports of a run as one JSON document.
pub fn reports_json(reports: &[Report]) -> Value {
    json!({
        "schema": SCHEMA,
        "reports": reports.iter().map(Report::to_json).collect::<Vec<_>>(),
    })
}
