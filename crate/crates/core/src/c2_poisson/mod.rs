//! The `C_2` quotient of the even subalgebra and its Poisson structure.

pub mod bd;
pub mod relations;
pub mod report;
pub mod slice;

pub use bd::{verify_bd_basis, BdElement, BdReport, BdSet};
pub use relations::{
    nilpotency_degree, omega_central_check, omega_power_coefficient, omega_power_identity, poisson_axioms_check,
    product_of, relation_suite, top_state, NilpotencyReport, RelationId, RelationOutcome,
};
pub use report::{
    c2_quotient_dims, expected_total, expected_weights_d1, graded_dims_with, min_max_weight, GradedDimReport, WeightRow,
};
pub use slice::{BlockSlice, C2Context, Charge, QuotientCoords, ResourceGuard, RowSource, WeightBasis};

use crate::fock::{FockError, State};
use crate::vertex::{nth_product, VertexError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum C2Error {
    #[error("resource guard tripped: {0}")]
    Truncated(String),
    #[error("not an even untwisted state: {0}")]
    NotEven(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error(transparent)]
    Vertex(#[from] VertexError),
}

/// Representative of the Poisson product `a * b = a_{(-1)} b`.
pub fn poisson_product(ctx: &C2Context, a: &State, b: &State) -> Result<State, C2Error> {
    Ok(nth_product(ctx.cfg(), a, -1, b)?)
}

/// Representative of the Poisson bracket `{a, b} = a_{(0)} b`.
pub fn poisson_bracket(ctx: &C2Context, a: &State, b: &State) -> Result<State, C2Error> {
    Ok(nth_product(ctx.cfg(), a, 0, b)?)
}

/// `a^{*k}` in the quotient, represented by iterated `(-1)` products.
pub fn poisson_power(ctx: &C2Context, a: &State, k: u32) -> Result<State, C2Error> {
    let mut acc = State::vacuum(a.sector());
    for _ in 0..k {
        acc = nth_product(ctx.cfg(), a, -1, &acc)?;
    }
    Ok(acc)
}
