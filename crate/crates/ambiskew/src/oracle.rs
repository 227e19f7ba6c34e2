//! Slow, independent cross-checks for the fast paths: a word-rewriting
//! multiplier, a linear-algebra splitting search over a basis window, and a
//! windowed search for special monomials.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgElem, Automorphism, BaseAlgebra, Family};
use crate::localization::{is_special, SpecialElement};
use crate::ring::{AmbiskewRing, RElement};
use crate::scalars::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Letter {
    X,
    Y,
    Coef(AlgElem),
}

type Word = Vec<Letter>;

fn word_of(i: u32, a: &AlgElem, j: u32) -> Word {
    let mut w = vec![Letter::X; i as usize];
    w.push(Letter::Coef(a.clone()));
    w.extend(std::iter::repeat_n(Letter::Y, j as usize));
    w
}

/// Positions where a single rewrite applies.
fn redexes(w: &Word) -> Vec<usize> {
    (0..w.len().saturating_sub(1))
        .filter(|&k| {
            matches!(
                (&w[k], &w[k + 1]),
                (Letter::Y, Letter::Coef(_))
                    | (Letter::Coef(_), Letter::X)
                    | (Letter::Y, Letter::X)
                    | (Letter::Coef(_), Letter::Coef(_))
            )
        })
        .collect()
}

/// Applies the rewrite at `k`, returning the replacement words.
fn rewrite(ring: &AmbiskewRing, w: &Word, k: usize) -> Vec<Word> {
    let a = ring.base();
    let splice = |mid: Vec<Letter>| {
        let mut out = w[..k].to_vec();
        out.extend(mid);
        out.extend_from_slice(&w[k + 2..]);
        out
    };
    match (&w[k], &w[k + 1]) {
        // y a = alpha(a) y
        (Letter::Y, Letter::Coef(c)) => vec![splice(vec![Letter::Coef(ring.alpha().apply(a, c)), Letter::Y])],
        // x b = beta(b) x, so a x = x beta^-1(a)
        (Letter::Coef(c), Letter::X) => vec![splice(vec![Letter::X, Letter::Coef(ring.beta().apply_inv(a, c))])],
        // yx = rho^-1 xy - rho^-1 v
        (Letter::Y, Letter::X) => {
            let ri = ring.rho().inv().expect("rho is nonzero");
            vec![
                splice(vec![Letter::Coef(a.from_scalar(ri.clone())), Letter::X, Letter::Y]),
                splice(vec![Letter::Coef(a.scale(ring.v(), &ri.neg()))]),
            ]
        }
        (Letter::Coef(b), Letter::Coef(c)) => vec![splice(vec![Letter::Coef(a.mul(b, c))])],
        _ => unreachable!("not a redex"),
    }
}

fn read_normal(ring: &AmbiskewRing, w: &Word) -> RElement {
    let a = ring.base();
    let i = w.iter().filter(|l| **l == Letter::X).count() as u32;
    let j = w.iter().filter(|l| **l == Letter::Y).count() as u32;
    let c = w
        .iter()
        .find_map(|l| match l {
            Letter::Coef(c) => Some(c.clone()),
            _ => None,
        })
        .unwrap_or_else(|| a.one());
    ring.monomial(i, c, j)
}

/// Multiplies by rewriting words one step at a time, choosing the term and
/// the redex at random.
pub fn slow_mul(ring: &AmbiskewRing, f: &RElement, g: &RElement, seed: u64) -> RElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pending: Vec<Word> = Vec::new();
    for (&(i1, j1), a1) in f.terms() {
        for (&(i2, j2), a2) in g.terms() {
            let mut w = word_of(i1, a1, j1);
            w.extend(word_of(i2, a2, j2));
            pending.push(w);
        }
    }
    let mut out = RElement::zero();
    while !pending.is_empty() {
        let idx = rng.gen_range(0..pending.len());
        let w = pending.swap_remove(idx);
        if w.iter().any(|l| matches!(l, Letter::Coef(c) if ring.base().is_zero(c))) {
            continue;
        }
        let r = redexes(&w);
        match r.choose(&mut rng) {
            Some(&k) => pending.extend(rewrite(ring, &w, k)),
            None => out = ring.add(&out, &read_normal(ring, &w)),
        }
    }
    out
}

// ------------------------------------------------------------ linear algebra

/// Solves `M c = b` exactly; `None` when inconsistent.
fn solve(mut rows: Vec<(Vec<Scalar>, Scalar)>, n: usize) -> Option<Vec<Scalar>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k].0[col].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r].0[col].inv().expect("nonzero pivot");
        let (pr, pb) = (rows[r].0.iter().map(|x| x.mul(&inv)).collect::<Vec<_>>(), rows[r].1.mul(&inv));
        rows[r] = (pr.clone(), pb.clone());
        for k in 0..rows.len() {
            if k != r && !rows[k].0[col].is_zero() {
                let f = rows[k].0[col].clone();
                for c in 0..n {
                    rows[k].0[c] = rows[k].0[c].sub(&f.mul(&pr[c]));
                }
                rows[k].1 = rows[k].1.sub(&f.mul(&pb));
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|(_, b)| !b.is_zero()) {
        return None;
    }
    let zero = rows.first().map(|(_, b)| Scalar::zero(b.ctx()))?;
    let mut x = vec![zero; n];
    for (k, &col) in pivots.iter().enumerate() {
        x[col] = rows[k].1.clone();
    }
    Some(x)
}

/// Basis elements with exponents in `-window..=window` (clipped to the family).
fn basis_window(alg: &BaseAlgebra, window: i64) -> Option<Vec<AlgElem>> {
    let range: Vec<i64> = match alg.family() {
        Family::Field => vec![0],
        Family::Poly => (0..=window).collect(),
        Family::Laurent => (-window..=window).collect(),
        Family::CyclicGroup { n, .. } => (0..*n as i64).collect(),
        Family::Quadratic { .. } => vec![0, 1],
        Family::Nested(_) => return None,
    };
    Some(range.into_iter().map(|k| alg.basis(k)).collect())
}

/// Searches for a splitting element `u` in the span of a basis window:
/// `u - rho alpha(u) = v`, `gamma(u) = u` and `u g = gamma(g) u` on
/// generators. `None` when the base is not supported.
pub fn splitting_search(ring: &AmbiskewRing, window: i64) -> Option<Option<AlgElem>> {
    let a = ring.base();
    let basis = basis_window(a, window)?;
    let n = basis.len();
    let zero = Scalar::zero(a.ctx());
    // Each block lists the images of the basis vectors and the target.
    let mut blocks: Vec<(Vec<AlgElem>, AlgElem)> = Vec::new();
    let image = |f: &dyn Fn(&AlgElem) -> AlgElem| basis.iter().map(f).collect::<Vec<_>>();
    blocks.push((image(&|b| a.sub(b, &a.scale(&ring.alpha().apply(a, b), ring.rho()))), ring.v().clone()));
    blocks.push((image(&|b| a.sub(&ring.gamma().apply(a, b), b)), a.zero()));
    for g in a.generators() {
        let gg = ring.gamma().apply(a, &g);
        blocks.push((image(&|b| a.sub(&a.mul(b, &g), &a.mul(&gg, b))), a.zero()));
    }
    let mut rows = Vec::new();
    for (imgs, target) in &blocks {
        let mut keys: Vec<i64> = a.coeffs(target).keys().copied().collect();
        for m in imgs {
            keys.extend(a.coeffs(m).keys().copied());
        }
        keys.sort_unstable();
        keys.dedup();
        for k in keys {
            let row = imgs.iter().map(|m| a.coeffs(m).get(&k).cloned().unwrap_or_else(|| zero.clone())).collect();
            rows.push((row, a.coeffs(target).get(&k).cloned().unwrap_or_else(|| zero.clone())));
        }
    }
    if rows.is_empty() {
        return Some(Some(a.zero()));
    }
    Some(solve(rows, n).map(|c| basis.iter().zip(c).fold(a.zero(), |acc, (b, s)| a.add(&acc, &a.scale(b, &s)))))
}

/// All `(m, j)`-special basis monomials `t^i` with `|i|, |m|, |j| <= window`,
/// in lexicographic order of `(i, m, j)`. Restrict to `m = 0` with `zero_m`.
pub fn special_window(
    alg: &BaseAlgebra,
    alpha: &Automorphism,
    gamma: &Automorphism,
    rho: &Scalar,
    window: i64,
    zero_m: bool,
) -> Vec<SpecialElement> {
    let Some(basis) = basis_window(alg, window) else { return Vec::new() };
    let ms: Vec<i64> = if zero_m { vec![0] } else { (-window..=window).collect() };
    let mut found = BTreeMap::new();
    for (idx, c) in basis.iter().enumerate() {
        for &m in &ms {
            for j in -window..=window {
                if (m, j) == (0, 0) {
                    continue;
                }
                let s = SpecialElement { c: c.clone(), m, j };
                if is_special(alg, alpha, gamma, rho, &s) {
                    found.insert((idx, m, j), s);
                }
            }
        }
    }
    found.into_values().collect()
}
