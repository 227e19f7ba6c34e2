use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::context::{Constant, ScalarContext};
use super::mpoly::MPoly;
use super::ScalarError;

/// A canonical fraction of polynomials in the context parameters.
///
/// The numerator and denominator are coprime and the denominator has leading
/// coefficient one, so structural equality is mathematical equality.
#[derive(Clone)]
pub struct Scalar {
    ctx: Arc<ScalarContext>,
    num: MPoly,
    den: MPoly,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        debug_assert!(Arc::ptr_eq(&self.ctx, &other.ctx) || *self.ctx == *other.ctx);
        self.num == other.num && self.den == other.den
    }
}

impl Eq for Scalar {}

impl std::hash::Hash for Scalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl Scalar {
    pub fn from_parts(ctx: &Arc<ScalarContext>, num: MPoly, den: MPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalized(ctx.clone(), num, den))
    }

    fn normalized(ctx: Arc<ScalarContext>, num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            let one = MPoly::one(&ctx);
            return Scalar { ctx, num, den: one };
        }
        if den.is_constant() {
            let inv = ctx.c_inv(den.lead_coeff().unwrap()).expect("nonzero");
            let num = num.scale(&ctx, &inv);
            let one = MPoly::one(&ctx);
            return Scalar { ctx, num, den: one };
        }
        let g = num.gcd(&ctx, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&ctx, &g).expect("gcd divides"), den.div_exact(&ctx, &g).expect("gcd divides"))
        };
        let lc_inv = ctx.c_inv(den.lead_coeff().unwrap()).expect("nonzero");
        Scalar { num: num.scale(&ctx, &lc_inv), den: den.scale(&ctx, &lc_inv), ctx }
    }

    pub fn zero(ctx: &Arc<ScalarContext>) -> Self {
        Scalar { ctx: ctx.clone(), num: MPoly::zero(), den: MPoly::one(ctx) }
    }

    pub fn one(ctx: &Arc<ScalarContext>) -> Self {
        Self::from_int(ctx, 1)
    }

    pub fn from_int(ctx: &Arc<ScalarContext>, n: i64) -> Self {
        Self::from_constant(ctx, ctx.c_int(n))
    }

    pub fn from_bigint(ctx: &Arc<ScalarContext>, n: &BigInt) -> Self {
        Self::from_constant(ctx, ctx.c_bigint(n))
    }

    pub fn from_rational(ctx: &Arc<ScalarContext>, r: &BigRational) -> Result<Self, ScalarError> {
        Ok(Self::from_constant(ctx, ctx.c_rat_checked(r)?))
    }

    pub fn from_ratio(ctx: &Arc<ScalarContext>, n: i64, d: i64) -> Result<Self, ScalarError> {
        Self::from_rational(ctx, &BigRational::new(n.into(), d.into()))
    }

    pub fn from_constant(ctx: &Arc<ScalarContext>, c: Constant) -> Self {
        Scalar { ctx: ctx.clone(), num: MPoly::constant(ctx, c), den: MPoly::one(ctx) }
    }

    pub fn zeta(ctx: &Arc<ScalarContext>) -> Self {
        Self::from_constant(ctx, ctx.c_zeta())
    }

    pub fn param(ctx: &Arc<ScalarContext>, name: &str) -> Result<Self, ScalarError> {
        let i = ctx.param_index(name).ok_or_else(|| ScalarError::UnknownParameter(name.to_string()))?;
        Ok(Scalar { ctx: ctx.clone(), num: MPoly::var(ctx, i), den: MPoly::one(ctx) })
    }

    pub fn ctx(&self) -> &Arc<ScalarContext> {
        &self.ctx
    }

    pub fn numer(&self) -> &MPoly {
        &self.num
    }

    pub fn denom(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_constant() && self.num.is_constant() && self.num.lead_coeff().is_some_and(|c| self.ctx.c_is_one(c))
    }

    /// The value when it is free of parameters.
    pub fn constant(&self) -> Option<Constant> {
        if self.den.is_constant() {
            self.num.constant_value(&self.ctx)
        } else {
            None
        }
    }

    pub fn depends_on_params(&self) -> bool {
        self.constant().is_none()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.constant().and_then(|c| self.ctx.c_as_rational(&c))
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    pub fn add(&self, other: &Self) -> Self {
        let ctx = &self.ctx;
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::normalized(ctx.clone(), self.num.add(ctx, &other.num), self.den.clone());
        }
        if self.den.is_constant() && other.den.is_constant() {
            let num = self.num.mul(ctx, &other.den).add(ctx, &other.num.mul(ctx, &self.den));
            return Self::normalized(ctx.clone(), num, self.den.mul(ctx, &other.den));
        }
        // With g = gcd(d1, d2), only g can share factors with the new numerator.
        let g = self.den.gcd(ctx, &other.den);
        let d1 = self.den.div_exact(ctx, &g).expect("gcd divides");
        let d2 = other.den.div_exact(ctx, &g).expect("gcd divides");
        let num = self.num.mul(ctx, &d2).add(ctx, &other.num.mul(ctx, &d1));
        if num.is_zero() {
            return Self::zero(ctx);
        }
        let h = num.gcd(ctx, &g);
        let (num, g) = if h.is_constant() {
            (num, g)
        } else {
            (num.div_exact(ctx, &h).expect("gcd divides"), g.div_exact(ctx, &h).expect("gcd divides"))
        };
        Self::monic_den(ctx.clone(), num, d1.mul(ctx, &d2).mul(ctx, &g))
    }

    pub fn neg(&self) -> Self {
        Scalar { ctx: self.ctx.clone(), num: self.num.neg(&self.ctx), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let ctx = &self.ctx;
        if self.is_zero() || other.is_zero() {
            return Self::zero(ctx);
        }
        if self.den.is_constant() && other.den.is_constant() {
            return Scalar { ctx: ctx.clone(), num: self.num.mul(ctx, &other.num), den: self.den.clone() };
        }
        // Cross-cancel so the product of reduced fractions stays reduced.
        let cancel = |n: &MPoly, d: &MPoly| -> (MPoly, MPoly) {
            if d.is_constant() {
                return (n.clone(), d.clone());
            }
            let g = n.gcd(ctx, d);
            if g.is_constant() {
                (n.clone(), d.clone())
            } else {
                (n.div_exact(ctx, &g).expect("gcd divides"), d.div_exact(ctx, &g).expect("gcd divides"))
            }
        };
        let (n1, d2) = cancel(&self.num, &other.den);
        let (n2, d1) = cancel(&other.num, &self.den);
        Self::monic_den(ctx.clone(), n1.mul(ctx, &n2), d1.mul(ctx, &d2))
    }

    /// Scales a coprime pair so the denominator is monic.
    fn monic_den(ctx: Arc<ScalarContext>, num: MPoly, den: MPoly) -> Self {
        if den.is_constant() {
            return Self::normalized(ctx, num, den);
        }
        let lc_inv = ctx.c_inv(den.lead_coeff().unwrap()).expect("nonzero");
        Scalar { num: num.scale(&ctx, &lc_inv), den: den.scale(&ctx, &lc_inv), ctx }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalized(self.ctx.clone(), self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = u32::try_from(e.unsigned_abs()).map_err(|_| ScalarError::ExponentTooLarge)?;
        let ctx = &self.ctx;
        Ok(Scalar { ctx: ctx.clone(), num: base.num.pow(ctx, k), den: base.den.pow(ctx, k) })
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.mul(&Scalar::from_int(&self.ctx, n))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                self.$f(rhs)
            }
        }
        impl std::ops::$tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$f(&rhs)
            }
        }
        impl std::ops::$tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$f(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

pub(crate) fn format_poly(ctx: &ScalarContext, p: &MPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (e, c) in p.terms() {
        let mono: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| {
                let name = &ctx.params()[i];
                if k == 1 {
                    name.clone()
                } else {
                    format!("{name}^{k}")
                }
            })
            .collect();
        let mono = mono.join("*");
        let text = ctx.c_display(c);
        let (neg, mag) = if ctx.c_is_compound(c) && p.terms().len() == 1 && mono.is_empty() {
            (false, text)
        } else if ctx.c_is_compound(c) {
            (false, format!("({text})"))
        } else if let Some(rest) = text.strip_prefix('-') {
            (true, rest.to_string())
        } else {
            (false, text)
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&mag);
        } else if mag == "1" {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    out
}

impl Scalar {
    /// True when the printed form must be parenthesized as a factor.
    pub fn is_compound(&self) -> bool {
        if !self.den.is_one_poly(&self.ctx) {
            return true;
        }
        let t = self.num.terms();
        t.len() > 1 || t.first().is_some_and(|(_, c)| self.ctx.c_is_compound(c))
    }
}

impl MPoly {
    pub(crate) fn is_one_poly(&self, ctx: &ScalarContext) -> bool {
        self.is_constant() && self.lead_coeff().is_some_and(|c| ctx.c_is_one(c))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = format_poly(&self.ctx, &self.num);
        if self.den.is_one_poly(&self.ctx) {
            return f.write_str(&num);
        }
        let den = format_poly(&self.ctx, &self.den);
        let num = if self.num.terms().len() > 1 { format!("({num})") } else { num };
        let den =
            if self.den.terms().len() > 1 || den.contains('*') || den.contains('(') { format!("({den})") } else { den };
        write!(f, "{num}/{den}")
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let ctx = ScalarContext::new(0, 1, vec!["q".into()]).unwrap();
        let two = Scalar::from_int(&ctx, 2);
        assert_eq!(two.inv().unwrap(), Scalar::from_ratio(&ctx, 1, 2).unwrap());
        let q = Scalar::param(&ctx, "q").unwrap();
        let one = Scalar::one(&ctx);
        let qm1 = &q - &one;
        let a = q.div(&qm1).unwrap();
        let b = one.neg().div(&qm1).unwrap();
        assert_eq!(a + b, one);
        let c4 = ScalarContext::new(0, 4, vec![]).unwrap();
        let z = Scalar::zeta(&c4);
        assert_eq!(&z * &z, Scalar::from_int(&c4, -1));
        assert!(Scalar::zero(&ctx).inv().is_err());
    }

    #[test]
    fn display() {
        let ctx = ScalarContext::new(0, 3, vec!["q".into(), "r".into()]).unwrap();
        let q = Scalar::param(&ctx, "q").unwrap();
        let one = Scalar::one(&ctx);
        let x = one.div(&(&one - &q)).unwrap();
        assert_eq!(x.to_string(), "-1/(q - 1)");
        let z = Scalar::zeta(&ctx);
        assert_eq!((&z + &one).to_string(), "1 + zeta");
        assert_eq!((&z * &z).to_string(), "-1 - zeta");
    }
}
