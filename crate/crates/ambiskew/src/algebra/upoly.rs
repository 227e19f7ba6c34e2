//! Dense univariate polynomials over the scalar field, used for Euclidean
//! computations in `F[t]` and `F[t^{±1}]`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::scalars::{Scalar, ScalarContext};

/// Coefficients, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    pub coeffs: Vec<Scalar>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    /// From a sparse map with nonnegative keys, shifted down by `shift`.
    pub fn from_map(ctx: &Arc<ScalarContext>, m: &BTreeMap<i64, Scalar>, shift: i64) -> Self {
        let Some(&hi) = m.keys().next_back() else { return UPoly { coeffs: Vec::new() } };
        let mut coeffs = vec![Scalar::zero(ctx); (hi - shift + 1) as usize];
        for (k, c) in m {
            coeffs[(k - shift) as usize] = c.clone();
        }
        Self::new(coeffs)
    }

    pub fn to_map(&self, shift: i64) -> BTreeMap<i64, Scalar> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64 + shift, c.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial at -1.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UPoly { coeffs: Vec::new() };
        }
        let ctx = self.coeffs[0].ctx();
        let mut out = vec![Scalar::zero(ctx); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn divrem(&self, other: &Self) -> (Self, Self) {
        assert!(!other.is_zero(), "polynomial division by zero");
        let ctx = other.coeffs[0].ctx().clone();
        let mut rem = self.coeffs.clone();
        let db = other.coeffs.len() - 1;
        let lead_inv = other.lead().unwrap().inv().unwrap();
        if rem.len() <= db {
            return (UPoly { coeffs: Vec::new() }, self.clone());
        }
        let mut quot = vec![Scalar::zero(&ctx); rem.len() - db];
        while rem.len() > db {
            let shift = rem.len() - 1 - db;
            let c = rem.last().unwrap() * &lead_inv;
            for (i, b) in other.coeffs.iter().enumerate() {
                rem[shift + i] = &rem[shift + i] - &(&c * b);
            }
            quot[shift] = c;
            while rem.last().is_some_and(|x| x.is_zero()) {
                rem.pop();
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inv().unwrap();
                UPoly { coeffs: self.coeffs.iter().map(|c| c * &inv).collect() }
            }
        }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.divrem(self).1.is_zero()
    }
}
