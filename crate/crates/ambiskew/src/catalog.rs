//! Built-in example documents, used as golden fixtures and by
//! `ambiskew catalog`.

use crate::bounds::Bounds;
use crate::dsl::{parse_spec, DslError};
use crate::report::{run_checks, Report, RunOptions};

#[derive(Clone, Copy, Debug)]
pub struct Entry {
    pub name: &'static str,
    pub description: &'static str,
    pub source: &'static str,
}

macro_rules! entry {
    ($name:literal, $desc:literal) => {
        Entry { name: $name, description: $desc, source: include_str!(concat!("../catalog/", $name, ".ask")) }
    };
}

const ENTRIES: &[Entry] = &[
    entry!("weyl", "first Weyl algebra over the rationals"),
    entry!("weyl_f5", "first Weyl algebra over F_5"),
    entry!("quantum_plane", "quantum plane with a transcendental parameter"),
    entry!("quantum_plane_root", "quantum plane at a fifth root of unity"),
    entry!("quantum_weyl", "quantized Weyl algebra"),
    entry!("complex_conjugation_grid", "Gaussian rationals under conjugation, 15 choices of v and rho"),
    entry!("lambda_tower_2", "two-level quantized Weyl tower"),
    entry!("lambda_tower_3", "three-level quantized Weyl tower"),
    entry!("cyclic_c2", "group algebra of C_2"),
    entry!("cyclic_c4", "group algebra of C_4 and a second level over it"),
    entry!("symplectic_reflection", "symplectic reflection algebra of S_2 in both orders"),
    entry!("heisenberg", "Laurent base with alpha(t) = q*t"),
    entry!("torus", "quantum torus relation lattices"),
    entry!("smith", "shift on F[t] and localization at the Casimir element"),
    entry!("gwa_shift", "shift generalized Weyl algebra in characteristic 0"),
    entry!("gwa_shift_char3", "shift generalized Weyl algebra in characteristic 3"),
    entry!("gwa_identity", "generalized Weyl algebra with trivial data"),
    entry!("skew_laurent", "skew Laurent extensions"),
    entry!("weyl_view", "polynomial view and Casimir quotient"),
];

pub fn list() -> &'static [Entry] {
    ENTRIES
}

pub fn get(name: &str) -> Option<&'static Entry> {
    ENTRIES.iter().find(|e| e.name == name)
}

impl Entry {
    pub fn run(&self, bounds: &Bounds, opts: RunOptions) -> Result<Vec<Report>, DslError> {
        let doc = parse_spec(self.source)?;
        Ok(run_checks(&doc, bounds, opts))
    }
}
