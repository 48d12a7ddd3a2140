//! Zhu's algebra: products, top-component representations, the algebra
//! `A_d` they generate, and a truncated direct computation of `V / O(V)`.

pub mod ad;
pub mod direct;
pub mod j4;
pub mod reps;
pub mod twisted;

pub use ad::{
    build_ad, center_dim, coprimality_check, expected_block_poly, expected_min_poly, sp_invariants,
    symmetric_functionals_dim, AdAlgebra, BlockPoly, CoprimalityReport, InvariantsReport,
};
pub use direct::{direct_zhu_dim, o_span_contains, CapRow, OSpan, ZhuTruncation, STABILITY_WINDOW};
pub use j4::{j4_relation_in_o_span, verify_j4, J4Block, J4Report, J4_COEFFS};
pub use reps::{build_rep_block, machinery_matrix, multiplicativity_check, oracle_rep_check, ModuleId, RepBlock};
pub use twisted::{propagator_correction, twisted_matrix};

use crate::fock::State;
use crate::linalg::{binomial, Rational};
use crate::vertex::{nth_product, VertexError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ZhuError {
    #[error("{module}: state not supported by the zero-mode machinery on this top")]
    Twisted { module: &'static str },
    #[error("closure has dimension {achieved}, expected {expected}")]
    Dimension { achieved: usize, expected: usize },
    #[error("requires d = {required}, got d = {got}")]
    WrongRank { required: u32, got: u32 },
    #[error(transparent)]
    Vertex(#[from] VertexError),
    #[error(transparent)]
    Fock(#[from] crate::fock::FockError),
    #[error(transparent)]
    Linalg(#[from] crate::linalg::LinalgError),
    #[error(transparent)]
    C2(#[from] crate::c2_poisson::C2Error),
}

fn residue_sum(cfg: &crate::fock::AlgebraConfig, a: &State, b: &State, shift: i64) -> Result<State, ZhuError> {
    let mut out = State::zero(b.sector());
    for (half, part) in a.components() {
        let wt = (half / 2) as i64;
        for k in 0..=wt {
            out.add_scaled(&binomial(wt, k), &nth_product(cfg, &part, k - shift, b)?);
        }
    }
    Ok(out)
}

/// `a * b = Res_z Y(a, z) b (1 + z)^{wt a} / z`, extended linearly over weight components of `a`.
pub fn zhu_star(cfg: &crate::fock::AlgebraConfig, a: &State, b: &State) -> Result<State, ZhuError> {
    residue_sum(cfg, a, b, 1)
}

/// `a o b = Res_z Y(a, z) b (1 + z)^{wt a} / z^2`.
pub fn zhu_circ(cfg: &crate::fock::AlgebraConfig, a: &State, b: &State) -> Result<State, ZhuError> {
    residue_sum(cfg, a, b, 2)
}

/// `a o_n b = Res_z Y(a, z) b (1 + z)^{wt a} / z^{2+n}`, which lies in `O(V)` for `n >= 0`.
pub fn zhu_circ_n(cfg: &crate::fock::AlgebraConfig, a: &State, n: i64, b: &State) -> Result<State, ZhuError> {
    residue_sum(cfg, a, b, 2 + n)
}

/// `a^{*k}`, with `a^{*0} = 1`.
pub fn zhu_power(cfg: &crate::fock::AlgebraConfig, a: &State, k: u32) -> Result<State, ZhuError> {
    let mut acc = State::vacuum(a.sector());
    for _ in 0..k {
        acc = zhu_star(cfg, a, &acc)?;
    }
    Ok(acc)
}

pub(crate) fn r(n: i64) -> Rational {
    Rational::from_int(n)
}
