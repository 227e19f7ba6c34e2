//! Splitting elements and the Casimir element `z = xy - u`.

use super::{AmbiskewRing, RElement};
use crate::algebra::{solve_splitting, AlgElem, Splitting};
use crate::verdict::SingularProof;

#[derive(Clone, Debug)]
pub enum Conformality {
    Conformal { u: AlgElem, z: RElement },
    Singular(SingularProof),
    Inconclusive(String),
}

/// Solves for a splitting element and, when one exists, returns it with the
/// Casimir element.
pub fn conformality(ring: &AmbiskewRing) -> Conformality {
    match solve_splitting(ring.base(), ring.alpha(), ring.gamma(), ring.v(), ring.rho()) {
        Splitting::Found(u) => {
            let z = ring.sub(&ring.w(), &ring.embed(u.clone()));
            Conformality::Conformal { u, z }
        }
        Splitting::None(proof) => Conformality::Singular(proof),
        Splitting::Unknown(reason) => Conformality::Inconclusive(reason),
    }
}

/// Checks the normality relations of `z = xy - u`: `zy = rho yz`,
/// `zx = rho^-1 xz`, `za = gamma(a) z` on generators of `A`, and `zu = uz`.
pub fn casimir_checks(ring: &AmbiskewRing, u: &AlgElem) -> Vec<(String, bool)> {
    let a = ring.base();
    let z = ring.sub(&ring.w(), &ring.embed(u.clone()));
    let rho = ring.rho();
    let rho_inv = rho.inv().expect("rho nonzero");
    let (x, y) = (ring.x(), ring.y());
    let mut out = vec![
        (
            format!("z*{} = rho*{}*z", ring.y_name(), ring.y_name()),
            ring.mul(&z, &y) == ring.scale(&ring.mul(&y, &z), rho),
        ),
        (
            format!("z*{} = rho^-1*{}*z", ring.x_name(), ring.x_name()),
            ring.mul(&z, &x) == ring.scale(&ring.mul(&x, &z), &rho_inv),
        ),
    ];
    for (name, g) in a.generator_names().into_iter().zip(a.generators()) {
        let lhs = ring.mul(&z, &ring.embed(g.clone()));
        let rhs = ring.mul(&ring.embed(ring.gamma().apply(a, &g)), &z);
        out.push((format!("z*{name} = gamma({name})*z"), lhs == rhs));
    }
    let ue = ring.embed(u.clone());
    out.push(("z*u = u*z".into(), ring.mul(&z, &ue) == ring.mul(&ue, &z)));
    out
}
