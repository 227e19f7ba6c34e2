//! Exact arithmetic for ambiskew polynomial rings `R(A, alpha, v, rho)` and
//! generalized Weyl algebras, together with certificate-producing deciders
//! for their simplicity criteria.

pub mod algebra;
pub mod bounds;
pub mod catalog;
pub mod dsl;
pub mod gwa;
pub mod lattice;
pub mod localization;
pub mod oracle;
pub mod report;
pub mod ring;
pub mod scalars;
pub mod simplicity;
pub mod verdict;
pub mod verify;

pub use bounds::Bounds;
