//! Search bounds shared by the deciders.

use serde::Serialize;

/// Limits for the searches that cannot be closed by a structural argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    /// Largest `m` tried when checking `v^(m)` (or `alpha^m(u)`) one at a time.
    pub m_max: u64,
    /// Largest height `n` searched for characteristic-p witnesses.
    pub n_max: u32,
    /// Largest period tried when looking for `rho^k alpha^k(v) = c v`.
    pub period_max: u64,
    /// Exponent window for brute-force special-element searches.
    pub special_window: i64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { m_max: 200, n_max: 3, period_max: 64, special_window: 64 }
    }
}

impl Bounds {
    /// Defaults overridden by `AMBISKEW_M_MAX`, `AMBISKEW_N_MAX`,
    /// `AMBISKEW_PERIOD_MAX` and `AMBISKEW_SPECIAL_WINDOW` when set.
    pub fn from_env() -> Self {
        let mut b = Bounds::default();
        let read = |name: &str| std::env::var(name).ok().and_then(|s| s.trim().parse::<u64>().ok());
        if let Some(v) = read("AMBISKEW_M_MAX") {
            b.m_max = v;
        }
        if let Some(v) = read("AMBISKEW_N_MAX") {
            b.n_max = v as u32;
        }
        if let Some(v) = read("AMBISKEW_PERIOD_MAX") {
            b.period_max = v;
        }
        if let Some(v) = read("AMBISKEW_SPECIAL_WINDOW") {
            b.special_window = v as i64;
        }
        b
    }
}
