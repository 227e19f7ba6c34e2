//! Multivariate polynomials over the constant field, kept sorted in
//! descending graded-lexicographic order.

use std::cmp::Ordering;

use super::context::{Constant, ScalarContext};

pub type Exponents = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly {
    terms: Vec<(Exponents, Constant)>,
}

pub(crate) fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: Vec::new() }
    }

    pub fn constant(ctx: &ScalarContext, c: Constant) -> Self {
        if ctx.c_is_zero(&c) {
            Self::zero()
        } else {
            MPoly { terms: vec![(vec![0; ctx.nvars()], c)] }
        }
    }

    pub fn one(ctx: &ScalarContext) -> Self {
        Self::constant(ctx, ctx.c_one())
    }

    pub fn var(ctx: &ScalarContext, i: usize) -> Self {
        let mut e = vec![0; ctx.nvars()];
        e[i] = 1;
        MPoly { terms: vec![(e, ctx.c_one())] }
    }

    pub fn monomial(ctx: &ScalarContext, e: Exponents, c: Constant) -> Self {
        if ctx.c_is_zero(&c) {
            Self::zero()
        } else {
            MPoly { terms: vec![(e, c)] }
        }
    }

    fn from_unsorted(ctx: &ScalarContext, mut terms: Vec<(Exponents, Constant)>) -> Self {
        terms.sort_by(|a, b| grlex(&b.0, &a.0));
        let mut out: Vec<(Exponents, Constant)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 = ctx.c_add(&last.1, &c),
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !ctx.c_is_zero(c));
        MPoly { terms: out }
    }

    pub fn terms(&self) -> &[(Exponents, Constant)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_value(&self, ctx: &ScalarContext) -> Option<Constant> {
        if self.is_zero() {
            Some(ctx.c_zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn lead_coeff(&self) -> Option<&Constant> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.iter().map(|(e, _)| e.iter().map(|&x| x as u64).sum::<u64>()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[var]).max().unwrap_or(0)
    }

    pub fn add(&self, ctx: &ScalarContext, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match grlex(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ctx.c_add(&a[i].1, &b[j].1);
                    if !ctx.c_is_zero(&c) {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        MPoly { terms: out }
    }

    pub fn neg(&self, ctx: &ScalarContext) -> Self {
        MPoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), ctx.c_neg(c))).collect() }
    }

    pub fn sub(&self, ctx: &ScalarContext, other: &Self) -> Self {
        self.add(ctx, &other.neg(ctx))
    }

    pub fn scale(&self, ctx: &ScalarContext, c: &Constant) -> Self {
        if ctx.c_is_zero(c) {
            return Self::zero();
        }
        MPoly { terms: self.terms.iter().map(|(e, d)| (e.clone(), ctx.c_mul(d, c))).collect() }
    }

    pub fn mul(&self, ctx: &ScalarContext, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_constant() {
            return other.scale(ctx, &self.terms[0].1);
        }
        if other.is_constant() {
            return self.scale(ctx, &other.terms[0].1);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                terms.push((e, ctx.c_mul(ca, cb)));
            }
        }
        Self::from_unsorted(ctx, terms)
    }

    pub fn pow(&self, ctx: &ScalarContext, mut e: u32) -> Self {
        let mut acc = Self::one(ctx);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(ctx, &b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(ctx, &b);
            }
        }
        acc
    }

    /// Exact division; `None` when `other` does not divide `self`.
    pub fn div_exact(&self, ctx: &ScalarContext, other: &Self) -> Option<Self> {
        assert!(!other.is_zero(), "division by zero polynomial");
        if other.is_constant() {
            let inv = ctx.c_inv(&other.terms[0].1).ok()?;
            return Some(self.scale(ctx, &inv));
        }
        let (le, lc) = &other.terms[0];
        let lc_inv = ctx.c_inv(lc).ok()?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((re, rc)) = rem.terms.first().cloned() {
            if !re.iter().zip(le).all(|(a, b)| a >= b) {
                return None;
            }
            let e: Exponents = re.iter().zip(le).map(|(a, b)| a - b).collect();
            let c = ctx.c_mul(&rc, &lc_inv);
            let t = MPoly { terms: vec![(e.clone(), c.clone())] };
            rem = rem.sub(ctx, &t.mul(ctx, other));
            quot.push((e, c));
        }
        Some(Self::from_unsorted(ctx, quot))
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self, ctx: &ScalarContext) -> Self {
        match self.terms.first() {
            None => Self::zero(),
            Some((_, c)) => self.scale(ctx, &ctx.c_inv(c).expect("nonzero lead")),
        }
    }

    /// Substitutes constants for all variables.
    pub fn evaluate(&self, ctx: &ScalarContext, point: &[Constant]) -> Constant {
        let mut acc = ctx.c_zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = ctx.c_mul(&t, &ctx.c_pow(&point[v], k as i64).expect("nonneg power"));
                }
            }
            acc = ctx.c_add(&acc, &t);
        }
        acc
    }

    fn vars_used(&self) -> Vec<bool> {
        let n = self.terms.first().map_or(0, |t| t.0.len());
        let mut used = vec![false; n];
        for (e, _) in &self.terms {
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    used[i] = true;
                }
            }
        }
        used
    }

    /// Coefficients with respect to `var`, indexed by power.
    fn to_univariate(&self, ctx: &ScalarContext, var: usize) -> Vec<MPoly> {
        let deg = self.degree_in(var) as usize;
        let mut parts: Vec<Vec<(Exponents, Constant)>> = vec![Vec::new(); deg + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[var] as usize;
            e2[var] = 0;
            parts[k].push((e2, c.clone()));
        }
        parts.into_iter().map(|t| Self::from_unsorted(ctx, t)).collect()
    }

    fn from_univariate(ctx: &ScalarContext, coeffs: &[MPoly], var: usize) -> Self {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (e, d) in &c.terms {
                let mut e2 = e.clone();
                e2[var] += k as u32;
                terms.push((e2, d.clone()));
            }
        }
        Self::from_unsorted(ctx, terms)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, ctx: &ScalarContext, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic(ctx);
        }
        if other.is_zero() {
            return self.monic(ctx);
        }
        if self.is_constant() || other.is_constant() {
            return Self::one(ctx);
        }
        if self.is_monomial() || other.is_monomial() {
            let (m, p) = if self.is_monomial() { (self, other) } else { (other, self) };
            let mut e = m.terms[0].0.clone();
            for (pe, _) in &p.terms {
                for (x, y) in e.iter_mut().zip(pe) {
                    *x = (*x).min(*y);
                }
            }
            return MPoly { terms: vec![(e, ctx.c_one())] };
        }
        let ua = self.vars_used();
        let ub = other.vars_used();
        let var = (0..ua.len()).rev().find(|&i| ua[i] || ub[i]).expect("non-constant");
        let a = self.to_univariate(ctx, var);
        let b = other.to_univariate(ctx, var);
        let only_var = ua.iter().zip(&ub).enumerate().all(|(i, (x, y))| i == var || (!x && !y));
        if only_var {
            return univariate_gcd(ctx, a, b, var);
        }
        let ca = content(ctx, &a);
        let cb = content(ctx, &b);
        let c = ca.gcd(ctx, &cb);
        let pa: Vec<MPoly> = a.iter().map(|x| x.div_exact(ctx, &ca).expect("content divides")).collect();
        let pb: Vec<MPoly> = b.iter().map(|x| x.div_exact(ctx, &cb).expect("content divides")).collect();
        let g = primitive_prs(ctx, pa, pb);
        let g = MPoly::from_univariate(ctx, &g, var);
        c.mul(ctx, &g).monic(ctx)
    }
}

fn trim(p: &mut Vec<MPoly>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn content(ctx: &ScalarContext, coeffs: &[MPoly]) -> MPoly {
    let mut g = MPoly::zero();
    for c in coeffs {
        g = g.gcd(ctx, c);
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    g
}

/// Euclid over the constant field when only `var` occurs.
fn univariate_gcd(ctx: &ScalarContext, a: Vec<MPoly>, b: Vec<MPoly>, var: usize) -> MPoly {
    let to_c = |p: Vec<MPoly>| -> Vec<Constant> {
        p.into_iter().map(|c| c.constant_value(ctx).expect("constant coefficient")).collect()
    };
    let mut r0 = to_c(a);
    let mut r1 = to_c(b);
    while !r1.is_empty() {
        let r = const_rem(ctx, &r0, &r1);
        r0 = std::mem::replace(&mut r1, r);
    }
    let coeffs: Vec<MPoly> = r0.into_iter().map(|c| MPoly::constant(ctx, c)).collect();
    MPoly::from_univariate(ctx, &coeffs, var).monic(ctx)
}

fn const_rem(ctx: &ScalarContext, a: &[Constant], b: &[Constant]) -> Vec<Constant> {
    let mut rem = a.to_vec();
    let lead_inv = ctx.c_inv(b.last().unwrap()).unwrap();
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = ctx.c_mul(rem.last().unwrap(), &lead_inv);
        for (i, bc) in b.iter().enumerate() {
            rem[shift + i] = ctx.c_sub(&rem[shift + i], &ctx.c_mul(&c, bc));
        }
        while rem.last().is_some_and(|x| ctx.c_is_zero(x)) {
            rem.pop();
        }
    }
    rem
}

/// Pseudo-remainder of `a` by `b` (coefficients in a polynomial ring).
fn prem(ctx: &ScalarContext, a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let mut rem = a.to_vec();
    let lb = b.last().unwrap().clone();
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let lr = rem.last().unwrap().clone();
        for c in rem.iter_mut() {
            *c = c.mul(ctx, &lb);
        }
        for (i, bc) in b.iter().enumerate() {
            rem[shift + i] = rem[shift + i].sub(ctx, &bc.mul(ctx, &lr));
        }
        trim(&mut rem);
    }
    rem
}

fn primitive_part(ctx: &ScalarContext, p: Vec<MPoly>) -> Vec<MPoly> {
    let c = content(ctx, &p);
    p.iter().map(|x| x.div_exact(ctx, &c).expect("content divides")).collect()
}

fn primitive_prs(ctx: &ScalarContext, a: Vec<MPoly>, b: Vec<MPoly>) -> Vec<MPoly> {
    let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    while !b.is_empty() {
        let r = prem(ctx, &a, &b);
        let r = if r.is_empty() { r } else { primitive_part(ctx, r) };
        a = std::mem::replace(&mut b, r);
    }
    if a.len() == 1 {
        return vec![MPoly::one(ctx)];
    }
    a
}
