use serde::Serialize;

use super::direct::OSpan;
use super::reps::{build_rep_block, machinery_matrix, ModuleId};
use super::zhu_power;
use super::ZhuError;
use crate::fock::AlgebraConfig;
use crate::linalg::{MatrixQ, Rational};
use crate::vertex::{j4_state, omega};

/// Coefficients of `[omega]^5, [omega]^4, [omega]^3` in `[J^4]`, as `(num, den)`.
pub const J4_COEFFS: [(i64, i64); 3] = [(-144, 5), (24, 1), (29, 5)];

#[derive(Clone, Debug, Serialize)]
pub struct J4Block {
    pub module: ModuleId,
    /// `agree` or `mismatch`.
    pub status: String,
    /// `c` such that `o(J^4) - rhs = c o(omega)` on this block, when one exists.
    pub residual_omega_multiple: Option<Rational>,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct J4Report {
    pub coeffs: Vec<Rational>,
    pub blocks: Vec<J4Block>,
}

impl J4Report {
    /// Both untwisted blocks agree.
    pub fn pass(&self) -> bool {
        self.blocks.iter().filter(|b| !b.module.is_twisted()).all(|b| b.status == "agree")
    }

    pub fn all_blocks_agree(&self) -> bool {
        self.blocks.iter().all(|b| b.status == "agree")
    }

    /// The common `c` with `o(J^4) = rhs + c o(omega)` on every block, if there is one.
    pub fn common_omega_correction(&self) -> Option<Rational> {
        let first = self.blocks.first()?.residual_omega_multiple.clone()?;
        self.blocks.iter().all(|b| b.residual_omega_multiple.as_ref() == Some(&first)).then_some(first)
    }
}

/// Compares `o(J^4)` computed from modes with the polynomial in `o(omega)` on each block.
/// `coeffs` overrides the three coefficients (for negative controls).
pub fn verify_j4(cfg: &AlgebraConfig, coeffs: Option<[Rational; 3]>) -> Result<J4Report, ZhuError> {
    if cfg.d() != 2 {
        return Err(ZhuError::WrongRank { required: 2, got: cfg.d() });
    }
    let coeffs = coeffs.unwrap_or_else(|| J4_COEFFS.map(|(n, d)| Rational::new(n, d)));
    let j4 = j4_state(cfg);
    let mut blocks = Vec::new();
    for module in ModuleId::AD_BLOCKS {
        let block = build_rep_block(cfg, module);
        let w = &block.omega;
        let rhs = w.pow(5).scale(&coeffs[0]).add(&w.pow(4).scale(&coeffs[1])).add(&w.pow(3).scale(&coeffs[2]));
        let lhs: MatrixQ = machinery_matrix(cfg, module, &j4)?;
        let ok = lhs == rhs;
        let residual = lhs.sub(&rhs);
        blocks.push(J4Block {
            module,
            status: if ok { "agree" } else { "mismatch" }.into(),
            residual_omega_multiple: omega_multiple(&residual, w),
            lhs: (!ok).then(|| lhs.to_csv()),
            rhs: (!ok).then(|| rhs.to_csv()),
        });
    }
    Ok(J4Report { coeffs: coeffs.to_vec(), blocks })
}

/// `c` with `residual = c * omega`, if one exists.
fn omega_multiple(residual: &MatrixQ, omega: &MatrixQ) -> Option<Rational> {
    if residual.is_zero() {
        return Some(Rational::ZERO);
    }
    let (i, j) = (0..omega.nrows())
        .flat_map(|i| (0..omega.ncols()).map(move |j| (i, j)))
        .find(|&(i, j)| !omega.get(i, j).is_zero())?;
    let c = residual.get(i, j) / omega.get(i, j);
    (omega.scale(&c) == *residual).then_some(c)
}

/// Whether `J^4 - (c_5 omega^{*5} + c_4 omega^{*4} + c_3 omega^{*3} + extra omega)` lies in `O(V)`,
/// decided inside a truncated span (requires cap >= 10).
pub fn j4_relation_in_o_span(span: &OSpan, coeffs: [Rational; 3], extra_omega: &Rational) -> Result<bool, ZhuError> {
    let cfg = span.cfg();
    let w = omega(cfg);
    let mut s = j4_state(cfg);
    for (k, c) in (3..=5).rev().zip(&coeffs) {
        s = s.minus(&zhu_power(cfg, &w, k)?.scale(c));
    }
    s = s.minus(&w.scale(extra_omega));
    span.contains(&s)
}
