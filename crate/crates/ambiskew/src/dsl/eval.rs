//! Evaluation of expressions in a coefficient algebra, a ring, or a
//! generalized Weyl algebra.

use std::sync::Arc;

use num_bigint::BigInt;

use super::ast::{BinOp, Expr, ExprKind};
use super::DslError;
use crate::algebra::{is_unit, AlgElem, Algebra, BaseAlgebra};
use crate::gwa::{GwaElement, GwaSpec};
use crate::scalars::{Scalar, ScalarContext};
use crate::verdict::Certificate;

pub(crate) trait Target {
    type E: Clone;
    fn ctx(&self) -> &Arc<ScalarContext>;
    fn scalar(&self, s: Scalar) -> Self::E;
    fn generator(&self, name: &str) -> Option<Self::E>;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inverse(&self, a: &Self::E) -> Option<Self::E>;
    fn one(&self) -> Self::E {
        self.scalar(Scalar::one(self.ctx()))
    }
}

pub(crate) fn eval<T: Target>(t: &T, e: &Expr) -> Result<T::E, DslError> {
    match &e.kind {
        ExprKind::Int(s) => {
            let n: BigInt = s.parse().expect("lexer yields digits");
            Ok(t.scalar(Scalar::from_bigint(t.ctx(), &n)))
        }
        ExprKind::Ident(name) => {
            if let Some(g) = t.generator(name) {
                return Ok(g);
            }
            if name == "zeta" {
                return Ok(t.scalar(Scalar::zeta(t.ctx())));
            }
            match Scalar::param(t.ctx(), name) {
                Ok(p) => Ok(t.scalar(p)),
                Err(_) => Err(DslError::semantic(e.span, format!("unknown identifier '{name}'"))),
            }
        }
        ExprKind::Neg(a) => Ok(t.neg(&eval(t, a)?)),
        ExprKind::Bin(op, a, b) => {
            let x = eval(t, a)?;
            let y = eval(t, b)?;
            Ok(match op {
                BinOp::Add => t.add(&x, &y),
                BinOp::Sub => t.add(&x, &t.neg(&y)),
                BinOp::Mul => t.mul(&x, &y),
                BinOp::Div => {
                    let inv = t
                        .inverse(&y)
                        .ok_or_else(|| DslError::semantic(b.span, format!("cannot divide by {b}: not a unit")))?;
                    t.mul(&x, &inv)
                }
            })
        }
        ExprKind::Pow(a, k) => {
            let mut base = eval(t, a)?;
            if *k < 0 {
                base = t.inverse(&base).ok_or_else(|| {
                    DslError::semantic(a.span, format!("{a} is not a unit, so it has no negative powers"))
                })?;
            }
            let mut acc = t.one();
            for _ in 0..k.unsigned_abs() {
                acc = t.mul(&acc, &base);
            }
            Ok(acc)
        }
    }
}

impl Target for Algebra {
    type E = AlgElem;

    fn ctx(&self) -> &Arc<ScalarContext> {
        BaseAlgebra::ctx(self)
    }

    fn scalar(&self, s: Scalar) -> AlgElem {
        self.from_scalar(s)
    }

    fn generator(&self, name: &str) -> Option<AlgElem> {
        BaseAlgebra::generator(self, name)
    }

    fn add(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        BaseAlgebra::add(self, a, b)
    }

    fn neg(&self, a: &AlgElem) -> AlgElem {
        BaseAlgebra::neg(self, a)
    }

    fn mul(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        BaseAlgebra::mul(self, a, b)
    }

    fn inverse(&self, a: &AlgElem) -> Option<AlgElem> {
        match is_unit(self, a).certificate {
            Certificate::Inverse { inverse } => Some(inverse),
            _ => None,
        }
    }
}

impl Target for GwaSpec {
    type E = GwaElement;

    fn ctx(&self) -> &Arc<ScalarContext> {
        self.base().ctx()
    }

    fn scalar(&self, s: Scalar) -> GwaElement {
        self.from_base(self.base().from_scalar(s))
    }

    fn generator(&self, name: &str) -> Option<GwaElement> {
        match name {
            "X" => Some(self.x()),
            "Y" => Some(self.y()),
            _ => self.base().generator(name).map(|a| self.from_base(a)),
        }
    }

    fn add(&self, a: &GwaElement, b: &GwaElement) -> GwaElement {
        GwaSpec::add(self, a, b)
    }

    fn neg(&self, a: &GwaElement) -> GwaElement {
        GwaSpec::neg(self, a)
    }

    fn mul(&self, a: &GwaElement, b: &GwaElement) -> GwaElement {
        GwaSpec::mul(self, a, b)
    }

    fn inverse(&self, a: &GwaElement) -> Option<GwaElement> {
        let c = a.coefficient(0).filter(|_| a.degree() == Some(0))?;
        match is_unit(self.base(), c).certificate {
            Certificate::Inverse { inverse } => Some(self.from_base(inverse)),
            _ => None,
        }
    }
}

/// Evaluates to a scalar of the context.
pub(crate) fn eval_scalar(ctx: &Arc<ScalarContext>, e: &Expr) -> Result<Scalar, DslError> {
    let f = BaseAlgebra::field(ctx);
    let v = eval(&f, e)?;
    Ok(f.as_scalar(&v).expect("field elements are scalars"))
}
