use super::twisted::twisted_matrix;
use serde::Serialize;

use super::{r, zhu_star, ZhuError};
use crate::fock::{
    canonical_form, enumerate_half, AlgebraConfig, Canonical, GradedBasis, ModeKey, Monomial, Parity, Sector, State,
};
use crate::linalg::{MatrixQ, Rational};
use crate::vertex::checks::CheckReport;
use crate::vertex::{nth_product, GenKind, Quadratic, QuadraticGenerators};

/// Modules whose top components carry the representations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ModuleId {
    SfThetaPlus,
    SfThetaMinus,
    SfPlus,
    SfMinus,
    SfHatPlus,
}

impl ModuleId {
    pub const ALL: [ModuleId; 5] =
        [ModuleId::SfThetaPlus, ModuleId::SfThetaMinus, ModuleId::SfPlus, ModuleId::SfMinus, ModuleId::SfHatPlus];
    /// The blocks of `A_d`, in stacking order.
    pub const AD_BLOCKS: [ModuleId; 4] =
        [ModuleId::SfHatPlus, ModuleId::SfMinus, ModuleId::SfThetaPlus, ModuleId::SfThetaMinus];
    pub const UNTWISTED: [ModuleId; 3] = [ModuleId::SfPlus, ModuleId::SfMinus, ModuleId::SfHatPlus];

    pub fn name(&self) -> &'static str {
        match self {
            ModuleId::SfThetaPlus => "SFtheta_plus",
            ModuleId::SfThetaMinus => "SFtheta_minus",
            ModuleId::SfPlus => "SF_plus",
            ModuleId::SfMinus => "SF_minus",
            ModuleId::SfHatPlus => "SFhat_plus",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.name() == s)
    }

    pub fn dim(&self, d: u32) -> usize {
        match self {
            ModuleId::SfThetaPlus | ModuleId::SfPlus => 1,
            ModuleId::SfThetaMinus | ModuleId::SfMinus => 2 * d as usize,
            ModuleId::SfHatPlus => 1 << (2 * d - 1),
        }
    }

    pub fn is_twisted(&self) -> bool {
        matches!(self, ModuleId::SfThetaPlus | ModuleId::SfThetaMinus)
    }
}

/// Matrices of the strong generators on one top component (column `k` is the image of basis vector `k`).
#[derive(Clone, Debug)]
pub struct RepBlock {
    pub module: ModuleId,
    pub dim: usize,
    pub gens: Vec<(Quadratic, MatrixQ)>,
    pub omega: MatrixQ,
}

impl RepBlock {
    pub fn get(&self, q: &Quadratic) -> Option<&MatrixQ> {
        self.gens.iter().find(|(g, _)| g == q).map(|(_, m)| m)
    }
}

fn bump(m: &mut MatrixQ, to: usize, from: usize, c: &Rational) {
    let v = m.get(to, from) + c;
    m.set(to, from, v);
}

/// Tables on the `2d`-dimensional tops, basis `e^1..e^d, f^1..f^d`.
fn vector_table(cfg: &AlgebraConfig, q: &Quadratic, small: &Rational, large: &Rational, shift: &Rational) -> MatrixQ {
    let d = cfg.d() as usize;
    let (i, j) = (q.i as usize - 1, q.j as usize - 1);
    let (ei, ej, fi, fj) = (i, j, d + i, d + j);
    let mut m = MatrixQ::zero(2 * d, 2 * d);
    let (s, l) = (small, large);
    match q.kind {
        GenKind::SmallE => {
            bump(&mut m, ej, fi, s);
            bump(&mut m, ei, fj, &-s);
        }
        GenKind::SmallF => {
            bump(&mut m, fi, ej, s);
            bump(&mut m, fj, ei, &-s);
        }
        GenKind::SmallH => {
            bump(&mut m, ei, ej, s);
            bump(&mut m, fj, fi, s);
            if i == j {
                for k in 0..2 * d {
                    bump(&mut m, k, k, shift);
                }
            }
        }
        GenKind::LargeE => {
            bump(&mut m, ej, fi, &-l);
            bump(&mut m, ei, fj, &-l);
        }
        GenKind::LargeF => {
            bump(&mut m, fi, ej, l);
            bump(&mut m, fj, ei, l);
        }
        GenKind::LargeH => {
            bump(&mut m, ei, ej, l);
            bump(&mut m, fj, fi, &-l);
        }
    }
    m
}

/// Even zero-mode monomials, ordered by length and then canonically.
pub fn zero_mode_basis(cfg: &AlgebraConfig) -> Vec<Monomial> {
    let mut v = enumerate_half(cfg, Sector::ZeroExtended, 0, Parity::Even);
    v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    v
}

fn grassmann_table(cfg: &AlgebraConfig, q: &Quadratic, basis: &GradedBasis) -> MatrixQ {
    let n = basis.len();
    let mut m = MatrixQ::zero(n, n);
    let (a, b) = match q.kind {
        GenKind::SmallE => (cfg.e(q.i), cfg.e(q.j)),
        GenKind::SmallF => (cfg.f(q.i), cfg.f(q.j)),
        GenKind::SmallH => (cfg.e(q.i), cfg.f(q.j)),
        _ => return m,
    };
    for (col, mono) in basis.monomials().iter().enumerate() {
        let mut modes = vec![ModeKey::new(a, 0), ModeKey::new(b, 0)];
        modes.extend_from_slice(mono.modes());
        if let Ok(Canonical::Term { sign, monomial }) = canonical_form(Sector::ZeroExtended, &modes) {
            let row = basis.position(&monomial).expect("even zero-mode monomial");
            bump(&mut m, row, col, &r(sign as i64));
        }
    }
    m
}

/// The table-driven representation on the top of `module`.
pub fn build_rep_block(cfg: &AlgebraConfig, module: ModuleId) -> RepBlock {
    let gens = QuadraticGenerators::new(cfg);
    let dim = module.dim(cfg.d());
    let hat_basis =
        (module == ModuleId::SfHatPlus).then(|| GradedBasis::new(Sector::ZeroExtended, 0, zero_mode_basis(cfg)));
    let table = |q: &Quadratic| -> MatrixQ {
        match module {
            ModuleId::SfPlus => MatrixQ::zero(1, 1),
            ModuleId::SfThetaPlus => {
                if q.kind == GenKind::SmallH && q.i == q.j {
                    MatrixQ::scalar(1, &Rational::new(-1, 8))
                } else {
                    MatrixQ::zero(1, 1)
                }
            }
            ModuleId::SfMinus => vector_table(cfg, q, &r(1), &r(1), &r(0)),
            ModuleId::SfThetaMinus => {
                vector_table(cfg, q, &Rational::new(1, 2), &Rational::new(1, 4), &Rational::new(-1, 8))
            }
            ModuleId::SfHatPlus => grassmann_table(cfg, q, hat_basis.as_ref().unwrap()),
        }
    };
    let list: Vec<(Quadratic, MatrixQ)> = gens.list.iter().map(|(q, _)| (*q, table(q))).collect();
    let mut omega = MatrixQ::zero(dim, dim);
    for i in 1..=cfg.d() {
        omega = omega.add(&table(&Quadratic::new(GenKind::SmallH, i, i)));
    }
    RepBlock { module, dim, gens: list, omega }
}

/// Top component of an untwisted module as a graded basis.
pub fn top_basis(cfg: &AlgebraConfig, module: ModuleId) -> Result<GradedBasis, ZhuError> {
    Ok(match module {
        ModuleId::SfPlus => GradedBasis::new(Sector::Untwisted, 0, vec![Monomial::vacuum()]),
        ModuleId::SfMinus => {
            let ms = (1..=cfg.num_generators())
                .map(|g| match canonical_form(Sector::Untwisted, &[ModeKey::new(g, -1)]) {
                    Ok(Canonical::Term { monomial, .. }) => monomial,
                    _ => unreachable!("single creation mode"),
                })
                .collect();
            GradedBasis::new(Sector::Untwisted, 2, ms)
        }
        ModuleId::SfHatPlus => GradedBasis::new(Sector::ZeroExtended, 0, zero_mode_basis(cfg)),
        m => return Err(ZhuError::Twisted { module: m.name() }),
    })
}

/// `o(a)` on a top computed from modes: `o(a) = sum_w a^{(w)}_{(w - 1)}` on untwisted tops; on twisted
/// tops only states of length at most two are supported.
pub fn machinery_matrix(cfg: &AlgebraConfig, module: ModuleId, a: &State) -> Result<MatrixQ, ZhuError> {
    match module {
        ModuleId::SfThetaPlus => return twisted_matrix(cfg, false, a),
        ModuleId::SfThetaMinus => return twisted_matrix(cfg, true, a),
        _ => {}
    }
    let basis = top_basis(cfg, module)?;
    let n = basis.len();
    let mut m = MatrixQ::zero(n, n);
    for (col, mono) in basis.monomials().iter().enumerate() {
        let v = State::monomial(basis.sector, mono.clone());
        let mut image = State::zero(basis.sector);
        for (half, part) in a.components() {
            image = image.plus(&nth_product(cfg, &part, (half / 2) as i64 - 1, &v)?);
        }
        let coords = basis
            .coords(&image)
            .ok_or_else(|| crate::fock::FockError::BadToken(format!("o(a) leaves the top of {}", module.name())))?;
        for (row, x) in coords.entries() {
            m.set(*row as usize, col, x.clone());
        }
    }
    Ok(m)
}

/// Compares the tables with the mode machinery on a top.
pub fn oracle_rep_check(cfg: &AlgebraConfig, module: ModuleId) -> Result<CheckReport, ZhuError> {
    let block = build_rep_block(cfg, module);
    let gens = QuadraticGenerators::new(cfg);
    let mut report = CheckReport::new(format!("oracle {}", module.name()));
    for ((q, state), (_, table)) in gens.list.iter().zip(&block.gens) {
        let machine = machinery_matrix(cfg, module, state)?;
        report.record(machine == *table, || format!("{q}: table {table:?} machinery {machine:?}"));
    }
    Ok(report)
}

/// `o(g * h) = o(g) o(h)` for all pairs of strong generators on an untwisted top.
pub fn multiplicativity_check(cfg: &AlgebraConfig, module: ModuleId) -> Result<CheckReport, ZhuError> {
    let gens = QuadraticGenerators::new(cfg);
    let mats: Vec<MatrixQ> =
        gens.list.iter().map(|(_, s)| machinery_matrix(cfg, module, s)).collect::<Result<_, _>>()?;
    let mut report = CheckReport::new(format!("multiplicativity {}", module.name()));
    for (x, (qg, g)) in gens.list.iter().enumerate() {
        for (y, (qh, h)) in gens.list.iter().enumerate() {
            let prod = machinery_matrix(cfg, module, &zhu_star(cfg, g, h)?)?;
            report.record(prod == mats[x].mul(&mats[y]), || format!("{qg} * {qh}"));
        }
    }
    Ok(report)
}
