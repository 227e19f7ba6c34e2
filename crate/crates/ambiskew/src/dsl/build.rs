//! Semantic pass: turns the syntax tree into algebras, automorphisms, rings
//! and resolved check directives.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::ast::{Arg, Call, Document, Expr, ExprKind, StmtKind, Value};
use super::eval::{eval, eval_scalar};
use super::{DslError, Span};
use crate::algebra::{normalizing_auto, AlgElem, Algebra, AutoMap, Automorphism, BaseAlgebra, Family};
use crate::gwa::{GwaError, GwaSpec};
use crate::localization::TorusMatrix;
use crate::ring::{AmbiskewRing, AmbiskewSpec};
use crate::scalars::{Scalar, ScalarContext};

#[derive(Clone, Debug)]
pub enum Entity {
    Base(Algebra),
    Auto {
        on: String,
        auto: Automorphism,
    },
    /// An ambiskew ring together with its view as a coefficient algebra.
    Ring {
        ring: Arc<AmbiskewRing>,
        as_base: Algebra,
    },
    Gwa(Arc<GwaSpec>),
    Torus(TorusMatrix),
}

impl Entity {
    fn kind_name(&self) -> &'static str {
        match self {
            Entity::Base(_) => "base",
            Entity::Auto { .. } => "automorphism",
            Entity::Ring { .. } => "ring",
            Entity::Gwa(_) => "generalized Weyl algebra",
            Entity::Torus(_) => "torus matrix",
        }
    }
}

#[derive(Clone, Debug)]
pub enum CheckKind {
    Simple(Arc<AmbiskewRing>),
    GwaSimple(Arc<GwaSpec>),
    Conformal(Arc<AmbiskewRing>),
    Units(Arc<AmbiskewRing>),
    LocalizedSimple(Arc<AmbiskewRing>),
    Special(Arc<AmbiskewRing>),
    Torus(TorusMatrix),
    AlphaSimple { alg: Algebra, autos: Vec<Automorphism> },
    SkewLaurent { alg: Algebra, sigma: Automorphism },
    Unit { alg: Algebra, a: AlgElem },
    Radical { alg: Algebra, u: AlgElem, d: AlgElem },
    Comaximal { alg: Algebra, a: AlgElem, b: AlgElem },
}

#[derive(Clone, Debug)]
pub struct CheckSpec {
    /// The directive as written (canonical printing).
    pub call: Call,
    pub kind: CheckKind,
}

/// A validated document: the syntax tree plus everything it declares.
#[derive(Clone, Debug)]
pub struct SpecDocument {
    pub ast: Document,
    pub ctx: Arc<ScalarContext>,
    /// Declarations in source order.
    pub entities: Vec<(String, Entity)>,
    pub checks: Vec<CheckSpec>,
}

/// Arguments of a call split into positional and named parts.
struct Args<'a> {
    call: &'a Call,
    pos: Vec<&'a Value>,
    named: BTreeMap<&'a str, &'a Value>,
}

impl<'a> Args<'a> {
    fn new(call: &'a Call, allowed: &[&str]) -> Result<Self, DslError> {
        let mut pos = Vec::new();
        let mut named = BTreeMap::new();
        for a in &call.args {
            match a {
                Arg::Pos(v) => {
                    if !named.is_empty() {
                        return Err(DslError::semantic(call.span, "positional argument after a named one"));
                    }
                    pos.push(v);
                }
                Arg::Named(k, v) => {
                    if !allowed.contains(&k.as_str()) {
                        return Err(DslError::semantic(
                            value_span(v, call.span),
                            format!(
                                "unknown argument '{k}' for {} (expected one of: {})",
                                call.name,
                                allowed.join(", ")
                            ),
                        ));
                    }
                    if named.insert(k.as_str(), v).is_some() {
                        return Err(DslError::semantic(
                            value_span(v, call.span),
                            format!("argument '{k}' given twice"),
                        ));
                    }
                }
            }
        }
        Ok(Args { call, pos, named })
    }

    fn positional(&self, n: usize) -> Result<(), DslError> {
        if self.pos.len() != n {
            return Err(DslError::semantic(
                self.call.span,
                format!("{} takes {n} positional argument(s), found {}", self.call.name, self.pos.len()),
            ));
        }
        Ok(())
    }

    fn at_least(&self, n: usize) -> Result<(), DslError> {
        if self.pos.len() < n {
            return Err(DslError::semantic(
                self.call.span,
                format!("{} takes at least {n} positional argument(s)", self.call.name),
            ));
        }
        Ok(())
    }

    fn pos_expr(&self, i: usize) -> Result<&'a Expr, DslError> {
        expr_of(self.pos[i], self.call.span)
    }

    fn pos_ident(&self, i: usize) -> Result<(&'a str, Span), DslError> {
        ident_of(self.pos[i], self.call.span)
    }

    fn named_expr(&self, key: &str) -> Result<Option<&'a Expr>, DslError> {
        self.named.get(key).map(|v| expr_of(v, self.call.span)).transpose()
    }

    fn required(&self, key: &str) -> Result<&'a Expr, DslError> {
        self.named_expr(key)?
            .ok_or_else(|| DslError::semantic(self.call.span, format!("{} needs '{key} = ...'", self.call.name)))
    }
}

fn value_span(v: &Value, fallback: Span) -> Span {
    match v {
        Value::Expr(e) => e.span,
        Value::List(items) => items.first().map(|i| value_span(i, fallback)).unwrap_or(fallback),
    }
}

fn expr_of(v: &Value, span: Span) -> Result<&Expr, DslError> {
    match v {
        Value::Expr(e) => Ok(e),
        Value::List(_) => Err(DslError::semantic(span, "expected an expression, found a list")),
    }
}

fn ident_of(v: &Value, span: Span) -> Result<(&str, Span), DslError> {
    match v {
        Value::Expr(Expr { kind: ExprKind::Ident(s), span }) => Ok((s, *span)),
        other => Err(DslError::semantic(value_span(other, span), format!("expected a name, found {other}"))),
    }
}

fn int_of(e: &Expr) -> Result<u64, DslError> {
    match &e.kind {
        ExprKind::Int(s) => s.parse().map_err(|_| DslError::semantic(e.span, format!("{s} is too large"))),
        _ => Err(DslError::semantic(e.span, format!("expected a non-negative integer, found {e}"))),
    }
}

fn bool_of(e: &Expr) -> Result<bool, DslError> {
    match &e.kind {
        ExprKind::Ident(s) if s == "true" => Ok(true),
        ExprKind::Ident(s) if s == "false" => Ok(false),
        _ => Err(DslError::semantic(e.span, format!("expected true or false, found {e}"))),
    }
}

impl SpecDocument {
    pub(crate) fn build(ast: Document) -> Result<Self, DslError> {
        let mut doc = SpecDocument {
            ast: Document::default(),
            ctx: ScalarContext::rationals(),
            entities: Vec::new(),
            checks: Vec::new(),
        };
        for (idx, stmt) in ast.stmts.iter().enumerate() {
            let span = stmt.span;
            match &stmt.kind {
                StmtKind::Scalars(args) => {
                    if idx != 0 {
                        return Err(DslError::semantic(span, "the scalars declaration must come first"));
                    }
                    doc.ctx = scalars(args, span)?;
                }
                StmtKind::Base { name, def } => {
                    let alg = doc.base(def)?;
                    doc.declare(name, span, Entity::Base(alg))?;
                }
                StmtKind::Auto { name, on, maps } => {
                    let alg = doc.algebra(on, span)?;
                    let auto = automorphism(&alg, maps, span)?;
                    doc.declare(name, span, Entity::Auto { on: on.clone(), auto })?;
                }
                StmtKind::Ring { name, def } => {
                    let e = doc.ring(def)?;
                    doc.declare(name, span, e)?;
                }
                StmtKind::Torus { name, rows } => {
                    let mut entries = Vec::new();
                    for row in rows {
                        entries.push(row.iter().map(|e| eval_scalar(&doc.ctx, e)).collect::<Result<Vec<_>, _>>()?);
                    }
                    let q = TorusMatrix::new(entries).map_err(|e| DslError::semantic(span, e.to_string()))?;
                    doc.declare(name, span, Entity::Torus(q))?;
                }
                StmtKind::Check(call) => {
                    let kind = doc.check(call)?;
                    doc.checks.push(CheckSpec { call: call.clone(), kind });
                }
            }
        }
        doc.ast = ast;
        Ok(doc)
    }

    pub fn entity(&self, name: &str) -> Option<&Entity> {
        self.entities.iter().find(|(n, _)| n == name).map(|(_, e)| e)
    }

    fn declare(&mut self, name: &str, span: Span, e: Entity) -> Result<(), DslError> {
        if name == "id" || self.entity(name).is_some() {
            return Err(DslError::semantic(span, format!("name '{name}' is already declared")));
        }
        self.entities.push((name.to_string(), e));
        Ok(())
    }

    fn lookup(&self, name: &str, span: Span) -> Result<&Entity, DslError> {
        self.entity(name).ok_or_else(|| DslError::semantic(span, format!("unknown name '{name}'")))
    }

    /// A base, or a ring used as a coefficient algebra.
    fn algebra(&self, name: &str, span: Span) -> Result<Algebra, DslError> {
        match self.lookup(name, span)? {
            Entity::Base(a) => Ok(a.clone()),
            Entity::Ring { as_base, .. } => Ok(as_base.clone()),
            other => Err(DslError::semantic(span, format!("'{name}' is a {}, not an algebra", other.kind_name()))),
        }
    }

    fn ambiskew(&self, name: &str, span: Span) -> Result<Arc<AmbiskewRing>, DslError> {
        match self.lookup(name, span)? {
            Entity::Ring { ring, .. } => Ok(ring.clone()),
            other => {
                Err(DslError::semantic(span, format!("'{name}' is a {}, not an ambiskew ring", other.kind_name())))
            }
        }
    }

    /// `id`, or an automorphism declared on `on`.
    fn auto(&self, name: &str, span: Span, on: &str) -> Result<Automorphism, DslError> {
        if name == "id" {
            return Ok(Automorphism::identity());
        }
        match self.lookup(name, span)? {
            Entity::Auto { on: carrier, auto } if carrier == on => Ok(auto.clone()),
            Entity::Auto { on: carrier, .. } => {
                Err(DslError::semantic(span, format!("'{name}' is an automorphism of {carrier}, not of {on}")))
            }
            other => Err(DslError::semantic(span, format!("'{name}' is a {}, not an automorphism", other.kind_name()))),
        }
    }

    fn base(&self, def: &Call) -> Result<Algebra, DslError> {
        let ctx = &self.ctx;
        let generator = |args: &Args, default: &str| -> Result<String, DslError> {
            let name = match args.pos.first() {
                Some(_) => args.pos_ident(0)?.0.to_string(),
                None => match args.named.get("gen") {
                    Some(v) => ident_of(v, def.span)?.0.to_string(),
                    None => default.to_string(),
                },
            };
            if name == "zeta" || ctx.param_index(&name).is_some() || name == "X" || name == "Y" {
                return Err(DslError::semantic(
                    def.span,
                    format!("generator name '{name}' clashes with a scalar name"),
                ));
            }
            Ok(name)
        };
        let err = |e: crate::algebra::AlgebraError| DslError::semantic(def.span, e.to_string());
        match def.name.as_str() {
            "field" => {
                Args::new(def, &[])?.positional(0)?;
                Ok(BaseAlgebra::field(ctx))
            }
            "cyclic_group" => {
                let args = Args::new(def, &["n", "epsilon", "gen"])?;
                if args.pos.len() > 1 {
                    args.positional(1)?;
                }
                let g = generator(&args, "s")?;
                let n = int_of(args.required("n")?)?;
                let eps = match args.named_expr("epsilon")? {
                    Some(e) => eval_scalar(ctx, e)?,
                    None => Scalar::zeta(ctx),
                };
                BaseAlgebra::cyclic_group(ctx, &g, n, eps).map_err(err)
            }
            "laurent" | "poly" => {
                let args = Args::new(def, &["gen"])?;
                if args.pos.len() > 1 {
                    args.positional(1)?;
                }
                let g = generator(&args, "t")?;
                Ok(if def.name == "laurent" { BaseAlgebra::laurent(ctx, &g) } else { BaseAlgebra::poly(ctx, &g) })
            }
            "quadratic" => {
                let args = Args::new(def, &["d", "field", "gen"])?;
                if args.pos.len() > 1 {
                    args.positional(1)?;
                }
                let g = generator(&args, "s")?;
                let d = eval_scalar(ctx, args.required("d")?)?;
                let field = args.named_expr("field")?.map(bool_of).transpose()?.unwrap_or(true);
                BaseAlgebra::quadratic(ctx, &g, d, field).map_err(err)
            }
            other => Err(DslError::semantic(
                def.span,
                format!("unknown algebra family '{other}' (expected field, cyclic_group, laurent, poly or quadratic)"),
            )),
        }
    }

    fn ring(&self, def: &Call) -> Result<Entity, DslError> {
        let span = def.span;
        let gwa_err = |e: GwaError| DslError::semantic(span, e.to_string());
        match def.name.as_str() {
            "ambiskew" => {
                let args = Args::new(def, &["v", "rho", "gamma", "names"])?;
                args.positional(2)?;
                let (an, aspan) = args.pos_ident(0)?;
                let base = self.algebra(an, aspan)?;
                let (alpha_name, alspan) = args.pos_ident(1)?;
                let alpha = self.auto(alpha_name, alspan, an)?;
                let v = eval(&base, args.required("v")?)?;
                let rho_e = args.required("rho")?;
                let rho = eval_scalar(&self.ctx, rho_e)?;
                if rho.is_zero() {
                    return Err(DslError::semantic(rho_e.span, "rho must be nonzero"));
                }
                let gamma = match args.named.get("gamma") {
                    Some(g) => {
                        let (gn, gspan) = ident_of(g, span)?;
                        self.auto(gn, gspan, an)?
                    }
                    None if base.is_zero(&v) => Automorphism::identity(),
                    None => normalizing_auto(&base, &v).ok_or_else(|| {
                        DslError::semantic(span, "no automorphism gamma with v*a = gamma(a)*v was found; pass gamma = ...")
                    })?,
                };
                let (y, x) = match args.named.get("names") {
                    Some(Value::List(items)) if items.len() == 2 => {
                        (ident_of(&items[0], span)?.0.to_string(), ident_of(&items[1], span)?.0.to_string())
                    }
                    Some(other) => {
                        return Err(DslError::semantic(value_span(other, span), "names takes a list [y, x] of two names"))
                    }
                    None => ("y".to_string(), "x".to_string()),
                };
                let spec = AmbiskewSpec { base, alpha, gamma, v, rho };
                let ring = AmbiskewRing::construct(spec, &y, &x).map_err(|e| DslError::semantic(span, e.to_string()))?;
                let as_base = BaseAlgebra::nested(ring.clone());
                Ok(Entity::Ring { ring, as_base })
            }
            "gwa" => {
                let args = Args::new(def, &["u", "gamma"])?;
                args.positional(2)?;
                let (an, aspan) = args.pos_ident(0)?;
                let base = self.algebra(an, aspan)?;
                let (alpha_name, alspan) = args.pos_ident(1)?;
                let alpha = self.auto(alpha_name, alspan, an)?;
                let u = eval(&base, args.required("u")?)?;
                let spec = match args.named.get("gamma") {
                    Some(g) => {
                        let (gn, gspan) = ident_of(g, span)?;
                        let gamma = self.auto(gn, gspan, an)?;
                        GwaSpec::new(base, alpha, gamma, u)
                    }
                    None => crate::gwa::gwa_with_normalizer(base, alpha, u),
                }
                .map_err(gwa_err)?;
                Ok(Entity::Gwa(Arc::new(spec)))
            }
            "quotient_by_casimir" => {
                let args = Args::new(def, &[])?;
                args.positional(1)?;
                let (rn, rspan) = args.pos_ident(0)?;
                let ring = self.ambiskew(rn, rspan)?;
                Ok(Entity::Gwa(Arc::new(GwaSpec::from_ambiskew(&ring).map_err(gwa_err)?)))
            }
            "polynomial_view" => {
                let args = Args::new(def, &[])?;
                args.positional(2)?;
                let (rn, rspan) = args.pos_ident(0)?;
                let ring = self.ambiskew(rn, rspan)?;
                let (w, _) = args.pos_ident(1)?;
                Ok(Entity::Gwa(Arc::new(GwaSpec::polynomial_view(&ring, w).map_err(gwa_err)?)))
            }
            other => Err(DslError::semantic(
                span,
                format!("unknown ring constructor '{other}' (expected ambiskew, gwa, quotient_by_casimir or polynomial_view)"),
            )),
        }
    }

    fn check(&self, call: &Call) -> Result<CheckKind, DslError> {
        let args = Args::new(call, &[])?;
        let name_at = |i: usize| args.pos_ident(i);
        let ring_arg = || -> Result<Arc<AmbiskewRing>, DslError> {
            args.positional(1)?;
            let (n, s) = name_at(0)?;
            self.ambiskew(n, s)
        };
        Ok(match call.name.as_str() {
            "simple" => {
                args.positional(1)?;
                let (n, s) = name_at(0)?;
                match self.lookup(n, s)? {
                    Entity::Ring { ring, .. } => CheckKind::Simple(ring.clone()),
                    Entity::Gwa(g) => CheckKind::GwaSimple(g.clone()),
                    other => {
                        return Err(DslError::semantic(s, format!("'{n}' is a {}, not a ring", other.kind_name())))
                    }
                }
            }
            "conformal" => CheckKind::Conformal(ring_arg()?),
            "units" => CheckKind::Units(ring_arg()?),
            "localized_simple" => CheckKind::LocalizedSimple(ring_arg()?),
            "special" => CheckKind::Special(ring_arg()?),
            "torus" => {
                args.positional(1)?;
                let (n, s) = name_at(0)?;
                match self.lookup(n, s)? {
                    Entity::Torus(q) => CheckKind::Torus(q.clone()),
                    other => {
                        return Err(DslError::semantic(
                            s,
                            format!("'{n}' is a {}, not a torus matrix", other.kind_name()),
                        ))
                    }
                }
            }
            "alpha_simple" | "skew_laurent" => {
                args.at_least(2)?;
                let (an, s) = name_at(0)?;
                let alg = self.algebra(an, s)?;
                let mut autos = Vec::new();
                for i in 1..args.pos.len() {
                    let (g, gs) = name_at(i)?;
                    autos.push(self.auto(g, gs, an)?);
                }
                if call.name == "skew_laurent" {
                    args.positional(2)?;
                    CheckKind::SkewLaurent { alg, sigma: autos.pop().expect("one automorphism") }
                } else {
                    CheckKind::AlphaSimple { alg, autos }
                }
            }
            "unit" | "radical" | "comaximal" => {
                let n = if call.name == "unit" { 2 } else { 3 };
                args.positional(n)?;
                let (an, s) = name_at(0)?;
                let alg = self.algebra(an, s)?;
                let mut el = Vec::new();
                for i in 1..n {
                    el.push(eval(&alg, args.pos_expr(i)?)?);
                }
                let mut el = el.into_iter();
                let mut next = || el.next().expect("arity checked");
                match call.name.as_str() {
                    "unit" => CheckKind::Unit { alg, a: next() },
                    "radical" => CheckKind::Radical { alg, u: next(), d: next() },
                    _ => CheckKind::Comaximal { alg, a: next(), b: next() },
                }
            }
            other => {
                return Err(DslError::semantic(
                    call.span,
                    format!(
                        "unknown check '{other}' (expected simple, conformal, units, localized_simple, special, torus, \
                         alpha_simple, skew_laurent, unit, radical or comaximal)"
                    ),
                ))
            }
        })
    }

    /// Evaluates `expr` in the named ring (default: the last ring declared)
    /// and renders its normal form.
    pub fn eval_in(&self, ring: Option<&str>, expr: &str) -> Result<String, DslError> {
        let e = super::parse_expr(expr)?;
        let target = match ring {
            Some(n) => self.lookup(n, Span::default())?,
            None => self
                .entities
                .iter()
                .rev()
                .map(|(_, e)| e)
                .find(|e| matches!(e, Entity::Ring { .. } | Entity::Gwa(_) | Entity::Base(_)))
                .ok_or_else(|| {
                    DslError::semantic(Span::default(), "the document declares no algebra to evaluate in")
                })?,
        };
        match target {
            Entity::Base(a) | Entity::Ring { as_base: a, .. } => Ok(a.display(&eval(a, &e)?)),
            Entity::Gwa(g) => Ok(g.display(&eval(g.as_ref(), &e)?)),
            other => Err(DslError::semantic(Span::default(), format!("cannot evaluate in a {}", other.kind_name()))),
        }
    }
}

fn scalars(args: &[Arg], span: Span) -> Result<Arc<ScalarContext>, DslError> {
    let call = Call { name: "scalars".into(), args: args.to_vec(), span };
    let a = Args::new(&call, &["char", "cyclotomic", "params", "relations"])?;
    a.positional(0)?;
    let p = a.named_expr("char")?.map(int_of).transpose()?.unwrap_or(0);
    let n = a.named_expr("cyclotomic")?.map(int_of).transpose()?.unwrap_or(1);
    let rel = a.named_expr("relations")?.map(bool_of).transpose()?.unwrap_or(true);
    let mut params = Vec::new();
    match a.named.get("params") {
        None => {}
        Some(Value::List(items)) => {
            for it in items {
                let (name, s) = ident_of(it, span)?;
                if matches!(name, "true" | "false" | "id" | "X" | "Y") {
                    return Err(DslError::semantic(s, format!("'{name}' is reserved")));
                }
                params.push(name.to_string());
            }
        }
        Some(v) => return Err(DslError::semantic(value_span(v, span), "params takes a list [p1, p2, ...]")),
    }
    ScalarContext::with_relations(p, n, params, rel).map_err(|e| DslError::semantic(span, e.to_string()))
}

/// Builds an automorphism from generator images; unlisted generators are
/// fixed.
fn automorphism(alg: &Algebra, maps: &[(String, Expr)], span: Span) -> Result<Automorphism, DslError> {
    let names = alg.generator_names();
    let mut images: BTreeMap<String, AlgElem> = BTreeMap::new();
    for (g, e) in maps {
        if !names.contains(g) {
            return Err(DslError::semantic(e.span, format!("'{g}' is not a generator of this algebra")));
        }
        if images.insert(g.clone(), eval(alg, e)?).is_some() {
            return Err(DslError::semantic(e.span, format!("'{g}' is mapped twice")));
        }
    }
    let map = image_map(alg, &images).map_err(|m| DslError::semantic(span, m))?;
    Automorphism::new(alg, map).map_err(|e| DslError::semantic(span, e.to_string()))
}

fn image_map(alg: &BaseAlgebra, images: &BTreeMap<String, AlgElem>) -> Result<AutoMap, String> {
    match alg.family() {
        Family::Field => Ok(AutoMap::Identity),
        Family::Nested(ring) => {
            let inner = ring.base();
            let mut inner_images = BTreeMap::new();
            let mut cy = inner.one();
            let mut cx = inner.one();
            for (g, img) in images {
                let f = alg.relem(img);
                let single = |i: u32, j: u32| -> Option<AlgElem> {
                    (f.terms().len() == 1).then(|| f.coefficient(i, j).cloned()).flatten()
                };
                if g == ring.y_name() {
                    cy = single(0, 1).ok_or_else(|| format!("{g} must map to a multiple c*{g}"))?;
                } else if g == ring.x_name() {
                    // x a = beta(a) x, so the left coefficient of x*a is beta(a).
                    let a = single(1, 0).ok_or_else(|| format!("{g} must map to a multiple c*{g}"))?;
                    cx = ring.beta().apply(inner, &a);
                } else {
                    let c = if f.is_zero() { Some(inner.zero()) } else { single(0, 0) };
                    let c = c.ok_or_else(|| format!("the image of {g} must lie in the coefficient algebra"))?;
                    inner_images.insert(g.clone(), c);
                }
            }
            let base = image_map(inner, &inner_images)?;
            if matches!(base, AutoMap::Identity) && inner.is_one(&cy) && inner.is_one(&cx) {
                return Ok(AutoMap::Identity);
            }
            Ok(AutoMap::Extension { base: Box::new(base), y: cy, x: cx })
        }
        family => {
            let Some(img) = images.get(alg.generator_name()) else { return Ok(AutoMap::Identity) };
            let g = alg.generator_name();
            let m = alg.coeffs(img);
            let scale = m.get(&1).cloned();
            let shift = m.get(&0).cloned();
            let others = m.keys().any(|k| *k != 0 && *k != 1);
            match (family, scale, shift, others) {
                (_, Some(c), None, false) if c.is_one() => Ok(AutoMap::Identity),
                (_, Some(c), None, false) => Ok(AutoMap::Scale(c)),
                (Family::Poly, Some(scale), Some(shift), false) => Ok(AutoMap::Affine { scale, shift }),
                (Family::Poly, ..) => Err(format!("{g} must map to a*{g} + b")),
                _ => Err(format!("{g} must map to a multiple c*{g}")),
            }
        }
    }
}
