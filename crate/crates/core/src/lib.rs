//! Exact bilayer-graphene bound states in one-dimensional magnetic fields.
//!
//! The bilayer Hamiltonian in a field `B(x)` along `z` decouples, for each
//! conserved momentum `k` along `y`, into a pair of scalar Schrödinger
//! operators `H0` and `H2` linked by a second-order intertwiner. The crate
//! provides the closed forms for six solvable field profiles, the
//! intertwining machinery, observables built on top of them, and an
//! independent finite-difference solver used to cross-check everything.

pub mod error;
pub mod fieldcases;
pub mod jet;
pub mod observables;
pub mod oracle;
pub mod orthopoly;
pub mod quadrature;
pub mod susy;
#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use fieldcases::{
    make_case, CaseDefinition, CaseKind, CaseParams, Domain, EigenfunctionSpec, LevelCount,
    Partner, RawParams,
};
