use std::collections::BTreeMap;

use super::{decide, AlgElem, AlgebraError, BaseAlgebra, Family, Result};
use crate::ring::RElement;
use crate::scalars::Scalar;

/// The action of an automorphism on generators.
#[derive(Clone, Debug)]
pub enum AutoMap {
    Identity,
    /// `g -> c g` on the generator of a one-generator family.
    Scale(Scalar),
    /// `t -> a t + b` on a polynomial ring.
    Affine {
        scale: Scalar,
        shift: Scalar,
    },
    /// On an ambiskew ring: `base` on the coefficient algebra together with
    /// `y -> c_y y` and `x -> c_x x` for coefficients `c_y, c_x` in it.
    Extension {
        base: Box<AutoMap>,
        y: AlgElem,
        x: AlgElem,
    },
}

impl AutoMap {
    pub fn apply(&self, alg: &BaseAlgebra, a: &AlgElem) -> AlgElem {
        match self {
            AutoMap::Identity => a.clone(),
            AutoMap::Scale(c) => match &alg.family {
                Family::Field => a.clone(),
                Family::Nested(_) => panic!("scale maps do not act on nested algebras"),
                _ => {
                    let m = alg.coeffs(a);
                    AlgElem::Comm(m.iter().map(|(k, v)| (*k, v * &c.pow(*k).expect("nonzero eigenvalue"))).collect())
                }
            },
            AutoMap::Affine { scale, shift } => {
                let image = alg.add(&alg.monomial(1, scale.clone()), &alg.from_scalar(shift.clone()));
                let m = alg.coeffs(a);
                let Some((_, hi)) = alg.exponent_range(a) else { return alg.zero() };
                // Horner evaluation at the image of t.
                let mut acc = alg.zero();
                for k in (0..=hi).rev() {
                    acc = alg.mul(&acc, &image);
                    if let Some(c) = m.get(&k) {
                        acc = alg.add(&acc, &alg.from_scalar(c.clone()));
                    }
                }
                acc
            }
            AutoMap::Extension { base, y, x } => {
                let ring = alg.ring().expect("extension maps act on nested algebras");
                let inner = ring.base();
                let f = alg.relem(a);
                if f.is_zero() {
                    return alg.zero();
                }
                let sy = inner.as_scalar(y);
                let sx = inner.as_scalar(x);
                if let (Some(sy), Some(sx)) = (sy, sx) {
                    let mut out = BTreeMap::new();
                    for (&(i, j), c) in f.terms() {
                        let k = &sx.pow(i as i64).unwrap() * &sy.pow(j as i64).unwrap();
                        let img = inner.scale(&base.apply(inner, c), &k);
                        if !inner.is_zero(&img) {
                            out.insert((i, j), img);
                        }
                    }
                    return AlgElem::Ring(RElement::from_terms(out));
                }
                let (max_i, max_j) = f.terms().keys().fold((0, 0), |(a, b), &(i, j)| (a.max(i), b.max(j)));
                let ximg = ring.mul(&ring.embed(x.clone()), &ring.x());
                let yimg = ring.mul(&ring.embed(y.clone()), &ring.y());
                let mut xp = vec![ring.one()];
                for _ in 0..max_i {
                    xp.push(ring.mul(xp.last().unwrap(), &ximg));
                }
                let mut yp = vec![ring.one()];
                for _ in 0..max_j {
                    yp.push(ring.mul(yp.last().unwrap(), &yimg));
                }
                let mut acc = RElement::zero();
                for (&(i, j), c) in f.terms() {
                    let mid = ring.embed(base.apply(inner, c));
                    let t = ring.mul(&ring.mul(&xp[i as usize], &mid), &yp[j as usize]);
                    acc = ring.add(&acc, &t);
                }
                AlgElem::Ring(acc)
            }
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, alg: &BaseAlgebra, other: &AutoMap) -> AutoMap {
        match (self, other) {
            (AutoMap::Identity, g) => g.clone(),
            (f, AutoMap::Identity) => f.clone(),
            (AutoMap::Scale(a), AutoMap::Scale(b)) => AutoMap::Scale(a * b),
            (AutoMap::Extension { .. }, AutoMap::Extension { .. }) => {
                let ring = alg.ring().expect("nested");
                let inner = ring.base();
                let (fb, fy, fx) = self.extension_parts(alg);
                let (gb, gy, gx) = other.extension_parts(alg);
                let y = inner.mul(&fb.apply(inner, &gy), &fy);
                let x = inner.mul(&fb.apply(inner, &gx), &fx);
                AutoMap::Extension { base: Box::new(fb.compose(inner, &gb)), y, x }
            }
            _ => {
                let (a, b) = self.affine_parts(alg);
                let (c, d) = other.affine_parts(alg);
                let scale = &a * &c;
                let shift = &(&a * &d) + &b;
                if shift.is_zero() {
                    AutoMap::Scale(scale)
                } else {
                    AutoMap::Affine { scale, shift }
                }
            }
        }
    }

    fn affine_parts(&self, alg: &BaseAlgebra) -> (Scalar, Scalar) {
        let ctx = alg.ctx();
        match self {
            AutoMap::Identity => (Scalar::one(ctx), Scalar::zero(ctx)),
            AutoMap::Scale(c) => (c.clone(), Scalar::zero(ctx)),
            AutoMap::Affine { scale, shift } => (scale.clone(), shift.clone()),
            AutoMap::Extension { .. } => panic!("extension map composed with a one-variable map"),
        }
    }

    pub(crate) fn extension_parts(&self, alg: &BaseAlgebra) -> (AutoMap, AlgElem, AlgElem) {
        let inner = alg.ring().expect("nested").base();
        match self {
            AutoMap::Identity => (AutoMap::Identity, inner.one(), inner.one()),
            AutoMap::Extension { base, y, x } => ((**base).clone(), y.clone(), x.clone()),
            _ => panic!("one-variable map used on a nested algebra"),
        }
    }

    /// Describes the map in the DSL's `auto` syntax (generator images).
    pub fn describe(&self, alg: &BaseAlgebra) -> String {
        let names = alg.generator_names();
        let gens = alg.generators();
        let parts: Vec<String> =
            names.iter().zip(&gens).map(|(n, g)| format!("{n} -> {}", alg.display(&self.apply(alg, g)))).collect();
        format!("{{ {} }}", parts.join(", "))
    }
}

/// An automorphism together with its inverse.
#[derive(Clone, Debug)]
pub struct Automorphism {
    forward: AutoMap,
    inverse: AutoMap,
}

impl Automorphism {
    pub fn identity() -> Self {
        Automorphism { forward: AutoMap::Identity, inverse: AutoMap::Identity }
    }

    /// Validates `map` against the algebra's defining relations and caches
    /// its inverse.
    pub fn new(alg: &BaseAlgebra, map: AutoMap) -> Result<Self> {
        let bad = |msg: String| Err(AlgebraError::InvalidAutomorphism(msg));
        let inverse = match (&map, &alg.family) {
            (AutoMap::Identity, _) => AutoMap::Identity,
            (AutoMap::Scale(c), Family::Field) => {
                if !c.is_one() {
                    return bad("the base field has no generators to rescale".into());
                }
                AutoMap::Identity
            }
            (AutoMap::Scale(c), Family::CyclicGroup { n, .. }) => {
                if c.is_zero() || !c.pow(*n as i64)?.is_one() {
                    return bad(format!("s -> ({c})*s does not preserve s^{n} = 1"));
                }
                AutoMap::Scale(c.inv()?)
            }
            (AutoMap::Scale(c), Family::Laurent | Family::Poly) => {
                if c.is_zero() {
                    return bad("scaling by zero is not invertible".into());
                }
                AutoMap::Scale(c.inv()?)
            }
            (AutoMap::Scale(c), Family::Quadratic { .. }) => {
                if !(c * c).is_one() {
                    return bad(format!("s -> ({c})*s does not preserve s^2 = d"));
                }
                AutoMap::Scale(c.inv()?)
            }
            (AutoMap::Affine { scale, shift }, Family::Poly) => {
                if scale.is_zero() {
                    return bad("affine map with zero scale".into());
                }
                let inv = scale.inv()?;
                AutoMap::Affine { shift: (&inv * shift).neg(), scale: inv }
            }
            (AutoMap::Extension { base, y, x }, Family::Nested(ring)) => {
                let inner = ring.base();
                inner.check(y)?;
                inner.check(x)?;
                let base_auto = Automorphism::new(inner, (**base).clone())?;
                let yinv = decide::unit_inverse(inner, &base_auto.apply_inv(inner, y))
                    .ok_or_else(|| AlgebraError::InvalidAutomorphism(format!("{} is not a unit", inner.display(y))))?;
                let xinv = decide::unit_inverse(inner, &base_auto.apply_inv(inner, x))
                    .ok_or_else(|| AlgebraError::InvalidAutomorphism(format!("{} is not a unit", inner.display(x))))?;
                let inverse = AutoMap::Extension { base: Box::new(base_auto.inverse.clone()), y: yinv, x: xinv };
                ring.check_extension(&map)?;
                ring.check_extension(&inverse)?;
                inverse
            }
            _ => return bad(format!("map kind not supported on {} algebras", alg.family_name())),
        };
        Ok(Automorphism { forward: map, inverse })
    }

    pub fn map(&self) -> &AutoMap {
        &self.forward
    }

    pub fn inverse_map(&self) -> &AutoMap {
        &self.inverse
    }

    pub fn apply(&self, alg: &BaseAlgebra, a: &AlgElem) -> AlgElem {
        self.forward.apply(alg, a)
    }

    pub fn apply_inv(&self, alg: &BaseAlgebra, a: &AlgElem) -> AlgElem {
        self.inverse.apply(alg, a)
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism { forward: self.inverse.clone(), inverse: self.forward.clone() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, alg: &BaseAlgebra, other: &Automorphism) -> Automorphism {
        Automorphism {
            forward: self.forward.compose(alg, &other.forward),
            inverse: other.inverse.compose(alg, &self.inverse),
        }
    }

    pub fn pow(&self, alg: &BaseAlgebra, k: i64) -> Automorphism {
        let step = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Automorphism::identity();
        for _ in 0..k.unsigned_abs() {
            acc = step.compose(alg, &acc);
        }
        acc
    }

    /// Applies `self^k`.
    pub fn apply_pow(&self, alg: &BaseAlgebra, k: i64, a: &AlgElem) -> AlgElem {
        let mut out = a.clone();
        for _ in 0..k.unsigned_abs() {
            out = if k > 0 { self.apply(alg, &out) } else { self.apply_inv(alg, &out) };
        }
        out
    }

    /// Equality of actions, tested on generators.
    pub fn same_as(&self, alg: &BaseAlgebra, other: &Automorphism) -> bool {
        alg.generators().iter().all(|g| self.apply(alg, g) == other.apply(alg, g))
    }

    pub fn is_identity(&self, alg: &BaseAlgebra) -> bool {
        alg.generators().iter().all(|g| self.apply(alg, g) == *g)
    }

    /// The scalar `c` when the map is `g -> c g` on a one-generator family
    /// (identity gives `c = 1`).
    pub fn scale_factor(&self, alg: &BaseAlgebra) -> Option<Scalar> {
        match (&self.forward, &alg.family) {
            (_, Family::Nested(_)) => None,
            (AutoMap::Identity, _) => Some(Scalar::one(alg.ctx())),
            (AutoMap::Scale(c), Family::Field) => Some(c.clone()),
            (AutoMap::Scale(c), _) => Some(c.clone()),
            (AutoMap::Affine { scale, shift }, _) if shift.is_zero() => Some(scale.clone()),
            _ => None,
        }
    }

    /// Scalar eigenvalues on the generators of a nested algebra, innermost
    /// first, when every generator is rescaled by a scalar.
    pub fn diagonal_eigenvalues(&self, alg: &BaseAlgebra) -> Option<Vec<Scalar>> {
        match &alg.family {
            Family::Field => Some(Vec::new()),
            Family::Nested(ring) => {
                let inner = ring.base();
                let (b, y, x) = self.forward.extension_parts(alg);
                let mut v = Automorphism { inverse: AutoMap::Identity, forward: b }.diagonal_eigenvalues(inner)?;
                v.push(inner.as_scalar(&y)?);
                v.push(inner.as_scalar(&x)?);
                Some(v)
            }
            _ => self.scale_factor(alg).map(|c| vec![c]),
        }
    }
}

/// The map scaling each generator by the given scalar, innermost first.
pub(crate) fn diagonal_map(alg: &BaseAlgebra, eigen: &[Scalar]) -> AutoMap {
    match &alg.family {
        Family::Field => AutoMap::Identity,
        Family::Nested(ring) => {
            let inner = ring.base();
            let k = eigen.len() - 2;
            AutoMap::Extension {
                base: Box::new(diagonal_map(inner, &eigen[..k])),
                y: inner.from_scalar(eigen[k].clone()),
                x: inner.from_scalar(eigen[k + 1].clone()),
            }
        }
        _ => AutoMap::Scale(eigen[0].clone()),
    }
}
