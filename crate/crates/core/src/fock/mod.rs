//! Fermionic Fock spaces: modes, canonical monomials, states, graded bases.

pub mod basis;
pub mod cache;
pub mod mode;
pub mod monomial;
pub mod state;

pub use basis::{enumerate_basis, enumerate_half, fermionic_character, GradedBasis, Parity};
pub use cache::BasisCache;
pub use mode::{AlgebraConfig, ModeKey, Sector};
pub use monomial::{canonical_form, Canonical, Monomial};
pub use state::{GradingInfo, State};

use crate::linalg::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FockError {
    #[error("rank d = {0} is outside 1..=16")]
    InvalidRank(u32),
    #[error("mode depth {0} is not an integer or half-integer")]
    BadDepth(String),
    #[error("malformed mode token {0:?}")]
    BadToken(String),
    #[error("mode {mode} is not on the {sector} lattice")]
    WrongLattice { mode: String, sector: Sector },
    #[error("mode {mode} is not a creation mode of the {sector} sector")]
    NotCreation { mode: String, sector: Sector },
    #[error("state mixes conformal weights {0} and {1}")]
    MixedWeight(Rational, Rational),
    #[error("cannot combine {0} and {1} states")]
    MixedSector(Sector, Sector),
    #[error("the zero state has no weight")]
    ZeroState,
    #[error("weight {weight} is not admissible in the {sector} sector")]
    BadWeight { weight: Rational, sector: Sector },
    #[error("basis cache: {0}")]
    Cache(String),
}
