//! Exact coefficient fields `Q(zeta_N)(p_1..p_k)` and `F_p(p_1..p_k)` with
//! the root-of-unity, q-integer and binomial utilities the deciders need.

mod context;
mod mpoly;
mod multiplicative;
mod scalar;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use context::{Constant, ScalarContext};
pub use mpoly::{Exponents, MPoly};
pub use multiplicative::{exp_log, mult_log, torsion_generator, Generator, MultLog};
pub use scalar::Scalar;

pub(crate) use context::is_prime;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid scalar context: {0}")]
    InvalidContext(String),
    #[error("unknown parameter '{0}'")]
    UnknownParameter(String),
    #[error("exponent too large")]
    ExponentTooLarge,
    #[error("root_of_unity_order is undefined for zero")]
    ZeroOrder,
    #[error("operation requires characteristic 0")]
    NeedsCharacteristicZero,
    #[error("binomial digit rule needs n >= r (got n={n}, r={r})")]
    BinomialRange { n: u64, r: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// Multiplicative order of a nonzero scalar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootOrder {
    Finite(u64),
    Infinite,
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    out.sort_unstable();
    out
}

/// Order of `c` as a root of unity. Parameters are transcendental, so any
/// scalar depending on them has infinite order.
pub fn root_of_unity_order(c: &Scalar) -> Result<RootOrder, ScalarError> {
    if c.is_zero() {
        return Err(ScalarError::ZeroOrder);
    }
    let Some(k) = c.constant() else {
        return Ok(RootOrder::Infinite);
    };
    let ctx = c.ctx();
    let m = ctx.torsion_order();
    let one = ctx.c_one();
    if ctx.c_pow(&k, m as i64)? != one {
        return Ok(RootOrder::Infinite);
    }
    for d in divisors(m) {
        if ctx.c_pow(&k, d as i64)? == one {
            return Ok(RootOrder::Finite(d));
        }
    }
    unreachable!("c^m = 1 for the full torsion order")
}

/// `[m]_q = 1 + q + ... + q^(m-1)`.
pub fn q_integer(m: u64, q: &Scalar) -> Scalar {
    let ctx = q.ctx();
    let mut acc = Scalar::zero(ctx);
    let mut p = Scalar::one(ctx);
    for _ in 0..m {
        acc = &acc + &p;
        p = &p * q;
    }
    acc
}

/// Positive integers `m` with `m*a + b = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntSolutions {
    None,
    All,
    One(BigInt),
}

pub fn positive_integer_solution(a: &Scalar, b: &Scalar) -> Result<IntSolutions, ScalarError> {
    if a.ctx().characteristic() != 0 {
        return Err(ScalarError::NeedsCharacteristicZero);
    }
    if a.is_zero() {
        return Ok(if b.is_zero() { IntSolutions::All } else { IntSolutions::None });
    }
    let m = b.neg().div(a)?;
    match m.as_integer() {
        Some(k) if k.is_positive() => Ok(IntSolutions::One(k)),
        _ => Ok(IntSolutions::None),
    }
}

/// Lucas' digit rule: `C(n, r)` is nonzero mod `p` iff every base-p digit
/// of `r` is at most the matching digit of `n`.
pub fn lucas_binomial_nonzero(n: u64, r: u64, p: u64) -> Result<bool, ScalarError> {
    if !is_prime(p) {
        return Err(ScalarError::NotPrime(p));
    }
    if r > n {
        return Err(ScalarError::BinomialRange { n, r });
    }
    let (mut n, mut r) = (n, r);
    while r > 0 {
        if r % p > n % p {
            return Ok(false);
        }
        n /= p;
        r /= p;
    }
    Ok(true)
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, r: u64) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
