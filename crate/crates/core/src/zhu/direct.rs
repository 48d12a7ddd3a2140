use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use super::{zhu_circ_n, ZhuError};
use crate::c2_poisson::{expected_total, C2Error, Charge};
use crate::fock::{enumerate_half, AlgebraConfig, Monomial, Parity, Sector, State};
use crate::linalg::{Echelon, Fp, MatrixQ, Rational, SparseVec, SparseVector};
use crate::vertex::QuadraticGenerators;

/// One charge block of `V_{<= cap}`, columns ordered by descending weight.
#[derive(Clone, Debug)]
struct OBlock {
    columns: Vec<Monomial>,
    index: HashMap<Monomial, u32>,
    rank: usize,
    functionals: Vec<SparseVector>,
    rows: usize,
    exact_fallback: bool,
}

impl OBlock {
    fn coords(&self, s: &State) -> Option<SparseVector> {
        let mut pairs = Vec::with_capacity(s.len());
        for (m, c) in s.iter() {
            pairs.push((*self.index.get(m)?, c.clone()));
        }
        Some(SparseVector::from_pairs(pairs))
    }
}

/// The span of the `O(V)` elements `u o_n b` (`u` a strong generator, `n >= 0`) inside `V_{<= cap}`.
#[derive(Clone, Debug)]
pub struct OSpan {
    pub cap: i64,
    cfg: AlgebraConfig,
    blocks: BTreeMap<Charge, OBlock>,
}

fn charge_of(cfg: &AlgebraConfig, m: &Monomial) -> Charge {
    m.charge(cfg)
}

impl OSpan {
    pub fn build(cfg: &AlgebraConfig, cap: i64, max_rows_per_block: usize) -> Result<Self, ZhuError> {
        let by_weight: Vec<Vec<Monomial>> =
            (0..=cap).map(|w| enumerate_half(cfg, Sector::Untwisted, 2 * w as i32, Parity::Even)).collect();
        let mut columns: BTreeMap<Charge, Vec<Monomial>> = BTreeMap::new();
        for w in (0..=cap).rev() {
            for m in &by_weight[w as usize] {
                columns.entry(charge_of(cfg, m)).or_default().push(m.clone());
            }
        }
        let mut sources: BTreeMap<(i64, Charge), Vec<Monomial>> = BTreeMap::new();
        for (w, list) in by_weight.iter().enumerate() {
            for m in list {
                sources.entry((w as i64, charge_of(cfg, m))).or_default().push(m.clone());
            }
        }
        let gens: Vec<(i64, Charge, State)> = QuadraticGenerators::new(cfg)
            .list
            .into_iter()
            .map(|(q, s)| {
                let c = charge_of(cfg, s.iter().next().unwrap().0);
                (q.weight(), c, s)
            })
            .collect();
        let keys: Vec<Charge> = columns.keys().cloned().collect();
        let blocks: Vec<Result<OBlock, ZhuError>> = keys
            .par_iter()
            .map(|charge| {
                let cols = columns[charge].clone();
                let index = cols.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
                let mut block =
                    OBlock { columns: cols, index, rank: 0, functionals: Vec::new(), rows: 0, exact_fallback: false };
                let mut rows = Vec::new();
                for (wu, cu, u) in &gens {
                    let cb: Charge = charge.iter().zip(cu.iter()).map(|(a, b)| a - b).collect();
                    for wb in 0..=cap - wu - 1 {
                        let Some(bs) = sources.get(&(wb, cb.clone())) else { continue };
                        for n in 0..=cap - wu - 1 - wb {
                            for b in bs {
                                let row = zhu_circ_n(cfg, u, n, &State::monomial(Sector::Untwisted, b.clone()))?;
                                let v = block.coords(&row).ok_or_else(|| {
                                    C2Error::Internal(format!("o-row outside V_<=cap in charge {charge:?}"))
                                })?;
                                if !v.is_zero() {
                                    rows.push(v);
                                }
                                if rows.len() > max_rows_per_block {
                                    return Err(C2Error::Truncated(format!(
                                        "more than {max_rows_per_block} rows in charge {charge:?}"
                                    ))
                                    .into());
                                }
                            }
                        }
                    }
                }
                block.rows = rows.len();
                certify(&mut block, rows)?;
                Ok(block)
            })
            .collect();
        let mut out = BTreeMap::new();
        for (k, b) in keys.into_iter().zip(blocks) {
            out.insert(k, b?);
        }
        Ok(Self { cap, cfg: *cfg, blocks: out })
    }

    pub fn cfg(&self) -> &AlgebraConfig {
        &self.cfg
    }

    pub fn ambient_dim(&self) -> usize {
        self.blocks.values().map(|b| b.columns.len()).sum()
    }

    pub fn rank(&self) -> usize {
        self.blocks.values().map(|b| b.rank).sum()
    }

    pub fn quotient_dim(&self) -> usize {
        self.ambient_dim() - self.rank()
    }

    pub fn rows(&self) -> usize {
        self.blocks.values().map(|b| b.rows).sum()
    }

    pub fn exact_fallbacks(&self) -> usize {
        self.blocks.values().filter(|b| b.exact_fallback).count()
    }

    /// Whether an even untwisted state supported in weights `<= cap` lies in the span.
    pub fn contains(&self, s: &State) -> Result<bool, ZhuError> {
        let mut parts: BTreeMap<Charge, State> = BTreeMap::new();
        for (m, c) in s.iter() {
            parts
                .entry(charge_of(&self.cfg, m))
                .or_insert_with(|| State::zero(Sector::Untwisted))
                .add_term(m.clone(), c.clone());
        }
        for (charge, part) in parts {
            let block = self.blocks.get(&charge).ok_or_else(|| C2Error::NotEven(part.display(&self.cfg)))?;
            let v = block.coords(&part).ok_or_else(|| C2Error::Truncated(format!("state exceeds cap {}", self.cap)))?;
            if block.functionals.iter().any(|phi| !v.dot(phi).is_zero()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Rank of `rows` with exact functionals spanning their annihilator. Elimination runs mod p;
/// the mod-p kernel is lifted by rational reconstruction and accepted only if it annihilates
/// every row exactly (then rank over Q equals rank mod p). Otherwise exact elimination is used.
fn certify(block: &mut OBlock, rows: Vec<SparseVector>) -> Result<(), ZhuError> {
    let width = block.columns.len();
    let mut modp: Echelon<Fp> = Echelon::new(width.max(1));
    let mut convertible = true;
    for r in &rows {
        match r.map(Fp::from_rational) {
            Some(v) => {
                modp.insert(&v);
            }
            None => {
                convertible = false;
                break;
            }
        }
        if modp.is_full() {
            break;
        }
    }
    if convertible {
        let rank = modp.rank();
        let lifted: Option<Vec<SparseVector>> =
            modp.kernel().iter().map(|k| k.map(|x: &Fp| x.reconstruct())).collect::<Option<Vec<SparseVec<Rational>>>>();
        if let Some(functionals) = lifted {
            if rows.iter().all(|r| functionals.iter().all(|phi| r.dot(phi).is_zero())) {
                block.rank = rank;
                block.functionals = functionals;
                return Ok(());
            }
        }
    }
    block.exact_fallback = true;
    block.functionals = MatrixQ::from_rows(width, rows)?.kernel();
    block.rank = width - block.functionals.len();
    Ok(())
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CapRow {
    pub cap: i64,
    pub ambient_dim: usize,
    pub rank: usize,
    pub quotient_dim: usize,
    pub rows: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZhuTruncation {
    pub d: u32,
    pub cap: i64,
    pub per_cap: Vec<CapRow>,
    pub stabilized: bool,
    /// Reported only when stabilized.
    pub dim: Option<usize>,
    pub expected: u64,
    pub truncated: Option<String>,
}

impl ZhuTruncation {
    pub fn pass(&self) -> bool {
        self.stabilized && self.dim.map(|d| d as u64) == Some(self.expected)
    }
}

/// Number of consecutive caps that must agree.
pub const STABILITY_WINDOW: i64 = 3;

/// Quotient dimensions of `V_{<= c}` by the `O(V)` span for `c` in the last caps up to `cap`.
pub fn direct_zhu_dim(
    cfg: &AlgebraConfig,
    cap: i64,
    max_rows_per_block: usize,
) -> Result<(ZhuTruncation, Option<OSpan>), ZhuError> {
    let mut report = ZhuTruncation {
        d: cfg.d(),
        cap,
        per_cap: Vec::new(),
        stabilized: false,
        dim: None,
        expected: expected_total(cfg.d()),
        truncated: None,
    };
    let mut last = None;
    for c in (cap - STABILITY_WINDOW + 1).max(0)..=cap {
        match OSpan::build(cfg, c, max_rows_per_block) {
            Ok(span) => {
                log::info!(
                    "d={} cap={c}: ambient {} rank {} quotient {}",
                    cfg.d(),
                    span.ambient_dim(),
                    span.rank(),
                    span.quotient_dim()
                );
                report.per_cap.push(CapRow {
                    cap: c,
                    ambient_dim: span.ambient_dim(),
                    rank: span.rank(),
                    quotient_dim: span.quotient_dim(),
                    rows: span.rows(),
                });
                last = Some(span);
            }
            Err(ZhuError::C2(C2Error::Truncated(msg))) => {
                report.truncated = Some(format!("cap {c}: {msg}"));
                return Ok((report, None));
            }
            Err(e) => return Err(e),
        }
    }
    let dims: Vec<usize> = report.per_cap.iter().map(|r| r.quotient_dim).collect();
    report.stabilized = dims.len() == STABILITY_WINDOW as usize && dims.windows(2).all(|w| w[0] == w[1]);
    if report.stabilized {
        report.dim = dims.last().copied();
    }
    Ok((report, last))
}

/// Convenience wrapper for [`OSpan::contains`].
pub fn o_span_contains(span: &OSpan, s: &State) -> Result<bool, ZhuError> {
    span.contains(s)
}
