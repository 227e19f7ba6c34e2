//! Discrete logarithms of scalars that are a root of unity times a rational
//! times a parameter monomial, used to turn multiplicative relations into
//! integer lattices.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::context::{pow_mod, Constant, ScalarContext};
use super::mpoly::MPoly;
use super::Scalar;

/// A free generator of the multiplicative group modulo torsion.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Prime(BigInt),
    Param(usize),
}

/// `s = omega^torsion * prod g^free[g]` where `omega` generates the roots of
/// unity of the constant field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultLog {
    pub torsion: u64,
    pub free: BTreeMap<Generator, BigInt>,
}

/// The chosen generator of the roots of unity in the constant field.
pub fn torsion_generator(ctx: &Arc<ScalarContext>) -> Scalar {
    if ctx.characteristic() == 0 {
        let z = Scalar::zeta(ctx);
        if ctx.cyclotomic_order().is_multiple_of(2) {
            z
        } else {
            z.neg()
        }
    } else {
        Scalar::from_int(ctx, primitive_root(ctx.characteristic()) as i64)
    }
}

fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let n = p - 1;
    let mut factors = Vec::new();
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p).find(|&g| factors.iter().all(|&f| pow_mod(g, n / f, p) != 1)).expect("primitive root exists")
}

const TRIAL_LIMIT: u64 = 1_000_000;

fn factor_into(n: &BigInt, sign: i64, out: &mut BTreeMap<Generator, BigInt>) -> Result<(), String> {
    let mut n = n.abs();
    let mut d = 2u64;
    while d < TRIAL_LIMIT && BigInt::from(d) * BigInt::from(d) <= n {
        let bd = BigInt::from(d);
        while (&n % &bd).is_zero() {
            n /= &bd;
            *out.entry(Generator::Prime(bd.clone())).or_insert_with(BigInt::zero) += sign;
        }
        d += 1;
    }
    if n > BigInt::one() {
        if n > BigInt::from(TRIAL_LIMIT) * BigInt::from(TRIAL_LIMIT) {
            return Err(format!("cannot factor {n}"));
        }
        *out.entry(Generator::Prime(n)).or_insert_with(BigInt::zero) += sign;
    }
    Ok(())
}

/// Logarithm of `s`; `Err` explains why the scalar is outside the decidable
/// class (more than one term, a non-torsion cyclotomic unit, ...).
pub fn mult_log(s: &Scalar) -> Result<MultLog, String> {
    let ctx = s.ctx();
    if s.is_zero() {
        return Err("zero has no logarithm".into());
    }
    let (num, den) = (s.numer(), s.denom());
    if !num.is_monomial() || !den.is_monomial() {
        return Err(format!("{s} is not a monomial in the parameters"));
    }
    let mut free = BTreeMap::new();
    let (ne, nc) = &num.terms()[0];
    let (de, _) = &den.terms()[0];
    for (i, (a, b)) in ne.iter().zip(de).enumerate() {
        let e = *a as i64 - *b as i64;
        if e != 0 {
            free.insert(Generator::Param(i), BigInt::from(e));
        }
    }
    let m = ctx.torsion_order();
    let torsion;
    match nc {
        Constant::Mod(x) => {
            let g = primitive_root(ctx.characteristic());
            let p = ctx.characteristic();
            let mut cur = 1 % p;
            let mut k = 0;
            while cur != *x {
                cur = cur * g % p;
                k += 1;
            }
            torsion = k;
        }
        Constant::Cyc(_) => {
            let omega_inv = ctx.c_inv(&torsion_generator(ctx).constant().unwrap()).unwrap();
            let mut cur = nc.clone();
            let mut found = None;
            for k in 0..m {
                if let Some(r) = ctx.c_as_rational(&cur) {
                    if r.is_positive() {
                        found = Some((k, r));
                        break;
                    }
                }
                cur = ctx.c_mul(&cur, &omega_inv);
            }
            let (k, r) = found.ok_or_else(|| format!("{s}: constant is not a root of unity times a rational"))?;
            if !r.is_one() && !ctx.rational_relations() {
                return Err(format!("{s}: rational relations are disabled"));
            }
            factor_into(r.numer(), 1, &mut free)?;
            factor_into(r.denom(), -1, &mut free)?;
            free.retain(|_, e| !e.is_zero());
            torsion = k;
        }
    }
    Ok(MultLog { torsion, free })
}

/// Rebuilds the scalar described by a logarithm.
pub fn exp_log(ctx: &Arc<ScalarContext>, log: &MultLog) -> Scalar {
    let mut acc = torsion_generator(ctx).pow(log.torsion as i64).expect("unit");
    for (g, e) in &log.free {
        let e = e.to_i64().expect("small exponent");
        let base = match g {
            Generator::Prime(p) => {
                Scalar::from_rational(ctx, &BigRational::from_integer(p.clone())).expect("prime embeds")
            }
            Generator::Param(i) => Scalar::from_parts(ctx, MPoly::var(ctx, *i), MPoly::one(ctx)).unwrap(),
        };
        acc = &acc * &base.pow(e).expect("nonzero base");
    }
    acc
}

impl MultLog {
    /// `self * k` in the logarithmic group.
    pub fn scaled(&self, k: &BigInt, m: u64) -> MultLog {
        let t = (BigInt::from(self.torsion) * k).mod_floor(&BigInt::from(m));
        MultLog {
            torsion: t.to_u64().unwrap(),
            free: self.free.iter().map(|(g, e)| (g.clone(), e * k)).filter(|(_, e)| !e.is_zero()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn logs_roundtrip() {
        let ctx = ScalarContext::new(0, 3, vec!["q".into(), "r".into()]).unwrap();
        let q = Scalar::param(&ctx, "q").unwrap();
        let z = Scalar::zeta(&ctx);
        let s = &(&z * &Scalar::from_ratio(&ctx, -12, 35).unwrap()) * &q.pow(-2).unwrap();
        let log = mult_log(&s).unwrap();
        assert_eq!(exp_log(&ctx, &log), s);
        assert_eq!(log.free.get(&Generator::Param(0)), Some(&BigInt::from(-2)));
        assert_eq!(log.free.get(&Generator::Prime(2.into())), Some(&BigInt::from(2)));
        assert!(mult_log(&(&q + &Scalar::one(&ctx))).is_err());
    }

    #[test]
    fn prime_field_logs() {
        let ctx = ScalarContext::new(11, 1, vec![]).unwrap();
        for a in 1..11 {
            let s = Scalar::from_int(&ctx, a);
            assert_eq!(exp_log(&ctx, &mult_log(&s).unwrap()), s);
        }
    }

    #[test]
    fn non_torsion_cyclotomic_unit_is_rejected() {
        let ctx = ScalarContext::new(0, 5, vec![]).unwrap();
        let s = &Scalar::one(&ctx) + &Scalar::zeta(&ctx);
        assert!(mult_log(&s).is_err());
    }
}
