//! λ-graph systems for subshifts and their K-theoretic invariants.
//!
//! The crate is organized bottom-up:
//!
//! * [`subshift`] describes subshifts and scans their languages,
//! * [`language`] answers block, past/future and synchronization queries,
//! * [`lambda`] builds and checks λ-graph systems,
//! * [`flow`] performs symbol expansion,
//! * [`invariants`] computes level K-groups and Bowen–Franks groups exactly.

pub mod alphabet;
pub mod cli;
pub mod error;
pub mod flow;
pub mod flowcheck;
pub mod invariants;
pub mod lambda;
pub mod language;
pub mod subshift;

pub use alphabet::{Alphabet, Symbol, Word};
pub use error::{Error, Result};

/// Three-valued answer for predicates that are only semi-decidable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl std::fmt::Display for Tri {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Tri::Yes => "Yes",
            Tri::No => "No",
            Tri::Unknown => "Unknown",
        })
    }
}
