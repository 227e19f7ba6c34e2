use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ScalarError;

/// An element of the constant field: either `Q(zeta_N)` stored as a reduced
/// residue modulo the cyclotomic polynomial, or a residue modulo `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constant {
    /// Coefficients of `zeta^0, zeta^1, ...`, trailing zeros trimmed.
    Cyc(Vec<BigRational>),
    Mod(u64),
}

/// The coefficient field `Q(zeta_N)(p_1..p_k)` or `F_p(p_1..p_k)`.
#[derive(Debug)]
pub struct ScalarContext {
    characteristic: u64,
    cyclotomic_order: u64,
    params: Vec<String>,
    rational_relations: bool,
    /// Monic cyclotomic polynomial, low degree first (characteristic 0 only).
    modulus: Vec<BigRational>,
}

impl PartialEq for ScalarContext {
    fn eq(&self, other: &Self) -> bool {
        self.characteristic == other.characteristic
            && self.cyclotomic_order == other.cyclotomic_order
            && self.params == other.params
            && self.rational_relations == other.rational_relations
    }
}

impl Eq for ScalarContext {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Rational polynomial helpers (low degree first).
pub(crate) mod qpoly {
    use super::*;

    pub fn trim(p: &mut Vec<BigRational>) {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    }

    pub fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(&mut out);
        out
    }

    pub fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let n = a.len().max(b.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            out.push(x - y);
        }
        trim(&mut out);
        out
    }

    /// Quotient and remainder of `a` by nonzero `b`.
    pub fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut rem = a.to_vec();
        trim(&mut rem);
        let db = b.len() - 1;
        let lead = b[db].clone();
        if rem.len() < b.len() {
            return (Vec::new(), rem);
        }
        let mut quot = vec![BigRational::zero(); rem.len() - db];
        while rem.len() >= b.len() {
            let shift = rem.len() - b.len();
            let c = rem.last().unwrap() / &lead;
            for (i, bc) in b.iter().enumerate() {
                rem[shift + i] -= &c * bc;
            }
            quot[shift] = c;
            trim(&mut rem);
        }
        trim(&mut quot);
        (quot, rem)
    }
}

impl ScalarContext {
    pub fn new(characteristic: u64, cyclotomic_order: u64, params: Vec<String>) -> Result<Arc<Self>, ScalarError> {
        Self::with_relations(characteristic, cyclotomic_order, params, true)
    }

    pub fn with_relations(
        characteristic: u64,
        cyclotomic_order: u64,
        params: Vec<String>,
        rational_relations: bool,
    ) -> Result<Arc<Self>, ScalarError> {
        if characteristic != 0 {
            if !is_prime(characteristic) {
                return Err(ScalarError::InvalidContext(format!(
                    "characteristic {characteristic} is neither 0 nor a prime"
                )));
            }
            if characteristic >= 1 << 31 {
                return Err(ScalarError::InvalidContext("characteristic must be below 2^31".into()));
            }
            if cyclotomic_order != 1 {
                return Err(ScalarError::InvalidContext(
                    "cyclotomic extensions are only available in characteristic 0".into(),
                ));
            }
        }
        if cyclotomic_order == 0 {
            return Err(ScalarError::InvalidContext("cyclotomic order must be at least 1".into()));
        }
        if cyclotomic_order > 10_000 {
            return Err(ScalarError::InvalidContext("cyclotomic order too large".into()));
        }
        for (i, p) in params.iter().enumerate() {
            if !valid_identifier(p) || p == "zeta" {
                return Err(ScalarError::InvalidContext(format!("invalid parameter name '{p}'")));
            }
            if params[..i].contains(p) {
                return Err(ScalarError::InvalidContext(format!("duplicate parameter '{p}'")));
            }
        }
        let modulus = if characteristic == 0 { cyclotomic_polynomial(cyclotomic_order) } else { Vec::new() };
        Ok(Arc::new(ScalarContext { characteristic, cyclotomic_order, params, rational_relations, modulus }))
    }

    /// `Q` with no parameters.
    pub fn rationals() -> Arc<Self> {
        Self::new(0, 1, Vec::new()).expect("rational context")
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn cyclotomic_order(&self) -> u64 {
        self.cyclotomic_order
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|p| p == name)
    }

    pub fn rational_relations(&self) -> bool {
        self.rational_relations
    }

    pub fn nvars(&self) -> usize {
        self.params.len()
    }

    /// Degree of the constant field over the prime field.
    pub fn cyclotomic_degree(&self) -> usize {
        if self.characteristic == 0 {
            self.modulus.len() - 1
        } else {
            1
        }
    }

    /// Order of the group of roots of unity in the constant field.
    pub fn torsion_order(&self) -> u64 {
        if self.characteristic == 0 {
            let n = self.cyclotomic_order;
            if n.is_multiple_of(2) {
                n
            } else {
                2 * n
            }
        } else {
            self.characteristic - 1
        }
    }

    // ---- constant arithmetic ----

    pub fn c_zero(&self) -> Constant {
        if self.characteristic == 0 {
            Constant::Cyc(Vec::new())
        } else {
            Constant::Mod(0)
        }
    }

    pub fn c_one(&self) -> Constant {
        self.c_int(1)
    }

    pub fn c_int(&self, n: i64) -> Constant {
        self.c_bigint(&BigInt::from(n))
    }

    pub fn c_bigint(&self, n: &BigInt) -> Constant {
        if self.characteristic == 0 {
            self.c_rat(BigRational::from_integer(n.clone()))
        } else {
            let p = BigInt::from(self.characteristic);
            let r = ((n % &p) + &p) % &p;
            Constant::Mod(u64::try_from(r).expect("residue fits"))
        }
    }

    /// Embeds a rational; in characteristic p fails when the denominator vanishes.
    pub fn c_rat_checked(&self, r: &BigRational) -> Result<Constant, ScalarError> {
        if self.characteristic == 0 {
            Ok(self.c_rat(r.clone()))
        } else {
            let den = self.c_bigint(r.denom());
            if self.c_is_zero(&den) {
                return Err(ScalarError::DivisionByZero);
            }
            let num = self.c_bigint(r.numer());
            Ok(self.c_mul(&num, &self.c_inv(&den)?))
        }
    }

    pub(crate) fn c_rat(&self, r: BigRational) -> Constant {
        assert_eq!(self.characteristic, 0);
        if r.is_zero() {
            Constant::Cyc(Vec::new())
        } else {
            Constant::Cyc(vec![r])
        }
    }

    /// The distinguished primitive root `zeta_N`.
    pub fn c_zeta(&self) -> Constant {
        if self.characteristic != 0 {
            return self.c_one();
        }
        self.reduce(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn c_is_zero(&self, a: &Constant) -> bool {
        match a {
            Constant::Cyc(v) => v.is_empty(),
            Constant::Mod(x) => *x == 0,
        }
    }

    pub fn c_is_one(&self, a: &Constant) -> bool {
        *a == self.c_one()
    }

    /// The rational value of a constant lying in the prime field `Q`.
    pub fn c_as_rational(&self, a: &Constant) -> Option<BigRational> {
        match a {
            Constant::Cyc(v) if v.is_empty() => Some(BigRational::zero()),
            Constant::Cyc(v) if v.len() == 1 => Some(v[0].clone()),
            _ => None,
        }
    }

    fn reduce(&self, mut v: Vec<BigRational>) -> Constant {
        qpoly::trim(&mut v);
        if v.len() >= self.modulus.len() {
            v = qpoly::divrem(&v, &self.modulus).1;
        }
        Constant::Cyc(v)
    }

    pub fn c_add(&self, a: &Constant, b: &Constant) -> Constant {
        match (a, b) {
            (Constant::Cyc(x), Constant::Cyc(y)) => {
                let n = x.len().max(y.len());
                let mut out = Vec::with_capacity(n);
                for i in 0..n {
                    let s = match (x.get(i), y.get(i)) {
                        (Some(p), Some(q)) => p + q,
                        (Some(p), None) => p.clone(),
                        (None, Some(q)) => q.clone(),
                        (None, None) => unreachable!(),
                    };
                    out.push(s);
                }
                qpoly::trim(&mut out);
                Constant::Cyc(out)
            }
            (Constant::Mod(x), Constant::Mod(y)) => Constant::Mod((x + y) % self.characteristic),
            _ => panic!("constant kinds from different contexts"),
        }
    }

    pub fn c_neg(&self, a: &Constant) -> Constant {
        match a {
            Constant::Cyc(x) => Constant::Cyc(x.iter().map(|c| -c).collect()),
            Constant::Mod(x) => Constant::Mod((self.characteristic - x) % self.characteristic),
        }
    }

    pub fn c_sub(&self, a: &Constant, b: &Constant) -> Constant {
        self.c_add(a, &self.c_neg(b))
    }

    pub fn c_mul(&self, a: &Constant, b: &Constant) -> Constant {
        match (a, b) {
            (Constant::Cyc(x), Constant::Cyc(y)) => {
                if x.len() <= 1 && y.len() <= 1 {
                    if x.is_empty() || y.is_empty() {
                        return Constant::Cyc(Vec::new());
                    }
                    return Constant::Cyc(vec![&x[0] * &y[0]]);
                }
                self.reduce(qpoly::mul(x, y))
            }
            (Constant::Mod(x), Constant::Mod(y)) => Constant::Mod(x * y % self.characteristic),
            _ => panic!("constant kinds from different contexts"),
        }
    }

    pub fn c_inv(&self, a: &Constant) -> Result<Constant, ScalarError> {
        if self.c_is_zero(a) {
            return Err(ScalarError::DivisionByZero);
        }
        match a {
            Constant::Cyc(x) => {
                if x.len() == 1 {
                    return Ok(Constant::Cyc(vec![x[0].recip()]));
                }
                // Extended Euclid: find s with s*x = 1 mod modulus.
                let (mut r0, mut r1) = (self.modulus.clone(), x.clone());
                let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) = (Vec::new(), vec![BigRational::one()]);
                while r1.len() > 1 {
                    let (q, r) = qpoly::divrem(&r0, &r1);
                    let s2 = qpoly::sub(&s0, &qpoly::mul(&q, &s1));
                    r0 = std::mem::replace(&mut r1, r);
                    s0 = std::mem::replace(&mut s1, s2);
                }
                // r1 is a nonzero constant since the modulus is irreducible.
                let c = r1[0].recip();
                let s: Vec<BigRational> = s1.iter().map(|t| t * &c).collect();
                Ok(self.reduce(s))
            }
            Constant::Mod(x) => Ok(Constant::Mod(pow_mod(*x, self.characteristic - 2, self.characteristic))),
        }
    }

    pub fn c_pow(&self, a: &Constant, e: i64) -> Result<Constant, ScalarError> {
        let base = if e < 0 { self.c_inv(a)? } else { a.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.c_one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.c_mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.c_mul(&b, &b);
            }
        }
        Ok(acc)
    }

    /// Writes a constant in the DSL scalar grammar.
    pub fn c_display(&self, a: &Constant) -> String {
        match a {
            Constant::Mod(x) => x.to_string(),
            Constant::Cyc(v) => {
                if v.is_empty() {
                    return "0".into();
                }
                let mut out = String::new();
                for (i, c) in v.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let neg = c.is_negative();
                    let mag = c.abs();
                    if out.is_empty() {
                        if neg {
                            out.push('-');
                        }
                    } else {
                        out.push_str(if neg { " - " } else { " + " });
                    }
                    let zeta = match i {
                        0 => String::new(),
                        1 => "zeta".into(),
                        k => format!("zeta^{k}"),
                    };
                    if zeta.is_empty() {
                        out.push_str(&mag.to_string());
                    } else if mag.is_one() {
                        out.push_str(&zeta);
                    } else {
                        out.push_str(&format!("{mag}*{zeta}"));
                    }
                }
                out
            }
        }
    }

    /// True when the constant needs parentheses as a factor.
    pub(crate) fn c_is_compound(&self, a: &Constant) -> bool {
        match a {
            Constant::Mod(_) => false,
            Constant::Cyc(v) => v.iter().filter(|c| !c.is_zero()).count() > 1,
        }
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Phi_n by dividing `x^n - 1` by Phi_d for the proper divisors d of n.
pub(crate) fn cyclotomic_polynomial(n: u64) -> Vec<BigRational> {
    let mut p = vec![BigRational::zero(); n as usize + 1];
    p[0] = -BigRational::one();
    p[n as usize] = BigRational::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            p = qpoly::divrem(&p, &phi_d).0;
        }
    }
    p
}
