use serde::Serialize;

use super::reps::{build_rep_block, zero_mode_basis, ModuleId, RepBlock};
use super::ZhuError;
use crate::c2_poisson::expected_total;
use crate::fock::{AlgebraConfig, GradedBasis, Sector, State};
use crate::linalg::{algebra_closure, min_poly, AlgebraBasis, Echelon, MatrixQ, Polynomial, Rational, SparseVector};
use crate::vertex::{sp_derivation, Quadratic, SpBasisElement};

/// The block-diagonal image of the strong generators and the algebra they generate.
#[derive(Clone, Debug)]
pub struct AdAlgebra {
    pub d: u32,
    pub blocks: Vec<RepBlock>,
    pub gens: Vec<(Quadratic, MatrixQ)>,
    pub omega: MatrixQ,
    pub basis: AlgebraBasis,
}

impl AdAlgebra {
    pub fn size(&self) -> usize {
        self.blocks.iter().map(|b| b.dim).sum()
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn expected_dim(&self) -> u64 {
        expected_total(self.d)
    }

    pub fn offset(&self, module: ModuleId) -> usize {
        self.blocks.iter().take_while(|b| b.module != module).map(|b| b.dim).sum()
    }
}

/// Stacks the four blocks and closes under multiplication; the dimension is reported, not asserted.
pub fn build_ad(cfg: &AlgebraConfig) -> Result<AdAlgebra, ZhuError> {
    let blocks: Vec<RepBlock> = ModuleId::AD_BLOCKS.iter().map(|m| build_rep_block(cfg, *m)).collect();
    let stack = |pick: &dyn Fn(&RepBlock) -> &MatrixQ| -> MatrixQ {
        let parts: Vec<&MatrixQ> = blocks.iter().map(pick).collect();
        MatrixQ::block_diagonal(&parts)
    };
    let gens: Vec<(Quadratic, MatrixQ)> =
        blocks[0].gens.iter().enumerate().map(|(k, (q, _))| (*q, stack(&|b: &RepBlock| &b.gens[k].1))).collect();
    let omega = stack(&|b: &RepBlock| &b.omega);
    let n: usize = blocks.iter().map(|b| b.dim).sum();
    let mats: Vec<MatrixQ> = gens.iter().map(|(_, m)| m.clone()).collect();
    let basis = algebra_closure(&mats, &MatrixQ::identity(n))?;
    Ok(AdAlgebra { d: cfg.d(), blocks, gens, omega, basis })
}

/// The polynomial in `[omega]` killed by each block's representation.
pub fn expected_block_poly(d: u32, module: ModuleId) -> Polynomial {
    let d8 = Rational::new(d as i64, 8);
    match module {
        ModuleId::SfHatPlus => Polynomial::x_pow(d as usize + 1),
        ModuleId::SfMinus => Polynomial::linear(Rational::ONE),
        ModuleId::SfThetaPlus => Polynomial::linear(-d8),
        ModuleId::SfThetaMinus => Polynomial::linear(Rational::new(1, 2) - d8),
        ModuleId::SfPlus => Polynomial::x(),
    }
}

/// `m_d(x) = x^{d+1} (x - 1) (x + d/8) (x + d/8 - 1/2)`.
pub fn expected_min_poly(d: u32) -> Polynomial {
    let polys: Vec<Polynomial> = ModuleId::AD_BLOCKS.iter().map(|m| expected_block_poly(d, *m)).collect();
    Polynomial::product(polys.iter())
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockPoly {
    pub module: ModuleId,
    pub min_poly: Polynomial,
    pub expected: Polynomial,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoprimalityReport {
    pub d: u32,
    pub blocks: Vec<BlockPoly>,
    pub pairwise_coprime: bool,
    pub stacked: Polynomial,
    pub expected_stacked: Polynomial,
}

impl CoprimalityReport {
    pub fn pass(&self) -> bool {
        self.pairwise_coprime
            && self.blocks.iter().all(|b| b.min_poly == b.expected)
            && self.stacked == self.expected_stacked
    }
}

pub fn coprimality_check(ad: &AdAlgebra) -> Result<CoprimalityReport, ZhuError> {
    let mut blocks = Vec::new();
    for b in &ad.blocks {
        blocks.push(BlockPoly {
            module: b.module,
            min_poly: min_poly(&b.omega)?,
            expected: expected_block_poly(ad.d, b.module),
        });
    }
    let mut pairwise_coprime = true;
    for (i, a) in blocks.iter().enumerate() {
        for b in &blocks[i + 1..] {
            pairwise_coprime &= a.min_poly.is_coprime(&b.min_poly);
        }
    }
    Ok(CoprimalityReport {
        d: ad.d,
        blocks,
        pairwise_coprime,
        stacked: min_poly(&ad.omega)?,
        expected_stacked: expected_min_poly(ad.d),
    })
}

/// Elements `sum c_k B_k` of the algebra annihilated by every map whose
/// (concatenated, flattened) images of the basis are given by `images`.
fn common_kernel(
    basis: &[MatrixQ],
    width: usize,
    images: impl Fn(&MatrixQ) -> Vec<SparseVector>,
) -> Result<Vec<MatrixQ>, ZhuError> {
    let rows: Vec<SparseVector> =
        basis.iter().map(|b| SparseVector::from_pairs(images(b).into_iter().flat_map(|v| v.into_entries()))).collect();
    let coeffs = MatrixQ::from_rows(width.max(1), rows)?.transpose().kernel();
    let n = basis.first().map(|b| b.nrows()).unwrap_or(0);
    Ok(coeffs
        .iter()
        .map(|c| c.entries().iter().fold(MatrixQ::zero(n, n), |acc, (k, x)| acc.add_scaled(x, &basis[*k as usize])))
        .collect())
}

fn concat(blocks: Vec<SparseVector>, block_width: usize) -> Vec<SparseVector> {
    // Shift each flattened block into its own column range.
    blocks
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            SparseVector::from_pairs(v.entries().iter().map(|(c, x)| (c + (i * block_width) as u32, x.clone())))
        })
        .collect()
}

/// Elements commuting with every stacked generator.
pub fn center_dim(ad: &AdAlgebra) -> Result<(usize, Vec<MatrixQ>), ZhuError> {
    let n = ad.size();
    let center = common_kernel(ad.basis.elements(), ad.gens.len() * n * n, |b| {
        concat(ad.gens.iter().map(|(_, g)| b.commutator(g).flatten()).collect(), n * n)
    })?;
    Ok((center.len(), center))
}

/// `dim A - dim [A, A]`, the dimension of trace-like functionals.
pub fn symmetric_functionals_dim(basis: &AlgebraBasis) -> usize {
    let els = basis.elements();
    let n = basis.size();
    let mut span: Echelon<Rational> = Echelon::new((n * n).max(1));
    for (i, a) in els.iter().enumerate() {
        for b in &els[i + 1..] {
            span.insert(&a.commutator(b).flatten());
        }
    }
    els.len() - span.rank()
}

/// Leibniz action of an `sp(2d)` element on the even Grassmann algebra of zero modes.
fn grassmann_derivation(cfg: &AlgebraConfig, x: SpBasisElement, basis: &GradedBasis) -> MatrixQ {
    let n = basis.len();
    let mut m = MatrixQ::zero(n, n);
    for (col, mono) in basis.monomials().iter().enumerate() {
        let image = sp_derivation(cfg, x, &State::monomial(Sector::ZeroExtended, mono.clone()));
        for (row, c) in image.iter() {
            m.set(basis.position(row).expect("even zero-mode monomial"), col, c.clone());
        }
    }
    m
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantsReport {
    pub d: u32,
    pub dim: usize,
    pub expected: usize,
    /// `(2k, dim of invariants in degree 2k)` of the exterior algebra block.
    pub per_degree: Vec<(usize, usize)>,
    pub in_omega_span: bool,
}

impl InvariantsReport {
    pub fn pass(&self) -> bool {
        self.dim == self.expected && self.per_degree.iter().all(|(_, k)| *k == 1) && self.in_omega_span
    }
}

/// Invariants of the `sp(2d)` derivations of `A_d`.
pub fn sp_invariants(cfg: &AlgebraConfig, ad: &AdAlgebra) -> Result<InvariantsReport, ZhuError> {
    let d = cfg.d();
    let hat = GradedBasis::new(Sector::ZeroExtended, 0, zero_mode_basis(cfg));
    let xs: Vec<(SpBasisElement, MatrixQ, MatrixQ)> = SpBasisElement::all(cfg)
        .into_iter()
        .map(|x| {
            let v = x.matrix(cfg);
            let lam = grassmann_derivation(cfg, x, &hat);
            let parts: Vec<MatrixQ> = ad
                .blocks
                .iter()
                .map(|b| match b.module {
                    ModuleId::SfHatPlus => lam.clone(),
                    ModuleId::SfMinus | ModuleId::SfThetaMinus => v.clone(),
                    _ => MatrixQ::zero(b.dim, b.dim),
                })
                .collect();
            let refs: Vec<&MatrixQ> = parts.iter().collect();
            (x, MatrixQ::block_diagonal(&refs), lam)
        })
        .collect();
    let n = ad.size();
    let invariants = common_kernel(ad.basis.elements(), xs.len() * n * n, |b| {
        concat(xs.iter().map(|(_, x, _)| x.commutator(b).flatten()).collect(), n * n)
    })?;

    let mut per_degree = Vec::new();
    for k in 0..=d as usize {
        let cols: Vec<usize> = (0..hat.len()).filter(|&i| hat.monomials()[i].len() == 2 * k).collect();
        let rows: Vec<SparseVector> = cols
            .iter()
            .map(|&c| {
                let images: Vec<SparseVector> = xs.iter().map(|(_, _, lam)| column(lam, c)).collect();
                let flat = concat(images, hat.len());
                SparseVector::from_pairs(flat.into_iter().flat_map(|v| v.into_entries()))
            })
            .collect();
        let width = xs.len() * hat.len();
        let ker = MatrixQ::from_rows(width.max(1), rows)?.transpose().kernel();
        per_degree.push((2 * k, ker.len()));
    }

    let deg = min_poly(&ad.omega)?.degree().unwrap_or(0);
    let mut powers: Echelon<Rational> = Echelon::new((n * n).max(1));
    let mut p = MatrixQ::identity(n);
    for _ in 0..deg {
        powers.insert(&p.flatten());
        p = p.mul(&ad.omega);
    }
    let in_omega_span = invariants.iter().all(|m| powers.contains(&m.flatten()));
    Ok(InvariantsReport { d, dim: invariants.len(), expected: d as usize + 4, per_degree, in_omega_span })
}

fn column(m: &MatrixQ, c: usize) -> SparseVector {
    SparseVector::from_pairs((0..m.nrows()).map(|r| (r as u32, m.get(r, c))).filter(|(_, x)| !x.is_zero()))
}
