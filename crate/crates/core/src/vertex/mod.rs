//! Vertex-algebraic operations on Fock states.

pub mod checks;
pub mod generators;
pub mod modes;
pub mod product;
pub mod sp;

pub use checks::{commutator_check, lambda_bracket_check, skew_symmetry_check, virasoro_check, CheckReport};
pub use generators::{b_state, j4_state, omega, z_state, GenKind, Quadratic, QuadraticGenerators};
pub use modes::{apply_mode, contraction};
pub use product::{nth_product, nth_product_iterate, virasoro, zero_mode};
pub use sp::{sp_derivation, SpBasisElement};

use crate::fock::{FockError, Sector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VertexError {
    #[error("the {0} sector is not supported by this operation")]
    UnsupportedSector(Sector),
    #[error("left operand must lie in the untwisted sector, found {0}")]
    NotVacuumSector(Sector),
    #[error(transparent)]
    Fock(#[from] FockError),
}
