use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;
use smallvec::SmallVec;

use super::C2Error;
use crate::fock::{
    enumerate_half, fermionic_character, AlgebraConfig, BasisCache, GradedBasis, Monomial, Parity, Sector, State,
};
use crate::linalg::{Echelon, Fp, MatrixQ, Rational, SparseVec, SparseVector};
use crate::vertex::{nth_product, QuadraticGenerators};

/// Cartan charge `(#e^i - #f^i)_i`; every operation used here preserves it.
pub type Charge = SmallVec<[i8; 8]>;

/// Which spanning family of `C_2` to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowSource {
    /// `g_{(-n-2)} b` for quadratic strong generators `g`, `n >= 0`, basis `b`.
    StrongGenerators,
    /// `a_{(-2)} b` for all even basis monomials `a, b`.
    Definitional,
}

/// Limits that turn a runaway computation into a truncated report.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ResourceGuard {
    pub max_basis_per_weight: usize,
    pub max_rows_per_block: usize,
}

impl Default for ResourceGuard {
    fn default() -> Self {
        Self { max_basis_per_weight: 2_000_000, max_rows_per_block: 4_000_000 }
    }
}

/// Even basis of one weight, split into charge blocks.
#[derive(Clone, Debug)]
pub struct WeightBasis {
    pub weight: i64,
    pub blocks: BTreeMap<Charge, GradedBasis>,
}

impl WeightBasis {
    fn from_monomials(cfg: &AlgebraConfig, weight: i64, list: Vec<Monomial>) -> Self {
        let mut groups: BTreeMap<Charge, Vec<Monomial>> = BTreeMap::new();
        for m in list {
            groups.entry(m.charge(cfg)).or_default().push(m);
        }
        let blocks =
            groups.into_iter().map(|(c, ms)| (c, GradedBasis::new(Sector::Untwisted, 2 * weight as i32, ms))).collect();
        Self { weight, blocks }
    }

    pub fn len(&self) -> usize {
        self.blocks.values().map(|b| b.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `C_2` restricted to one (weight, charge) block.
#[derive(Clone, Debug, Serialize)]
pub struct BlockSlice {
    pub weight: i64,
    pub charge: Vec<i8>,
    pub width: usize,
    pub rank: usize,
    /// Exact functionals spanning the annihilator of the `C_2` rows.
    #[serde(skip)]
    pub functionals: Vec<SparseVector>,
    pub rows_generated: usize,
    /// Set when the modular shortcut was not conclusive and exact elimination ran.
    pub exact_fallback: bool,
}

impl BlockSlice {
    pub fn quotient_dim(&self) -> usize {
        self.width - self.rank
    }
}

#[derive(Clone, Debug)]
struct GenInfo {
    state: State,
    weight: i64,
    charge: Charge,
}

fn state_charge(cfg: &AlgebraConfig, s: &State) -> Charge {
    s.iter().next().map(|(m, _)| m.charge(cfg)).unwrap_or_else(|| SmallVec::from_elem(0, cfg.d() as usize))
}

fn sub_charge(a: &Charge, b: &Charge) -> Charge {
    a.iter().zip(b.iter()).map(|(x, y)| x - y).collect()
}

/// Quotient coordinates of a homogeneous state, per charge block.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuotientCoords {
    pub weight: i64,
    pub blocks: BTreeMap<Charge, SparseVector>,
}

impl QuotientCoords {
    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(|v| v.is_zero())
    }
}

/// Lazily computed `C_2` data of the even subalgebra for one rank.
pub struct C2Context {
    cfg: AlgebraConfig,
    gens: Vec<GenInfo>,
    bases: BTreeMap<i64, WeightBasis>,
    blocks: HashMap<(i64, Charge), BlockSlice>,
    guard: ResourceGuard,
    source: RowSource,
    cache: Option<BasisCache>,
}

impl C2Context {
    pub fn new(cfg: AlgebraConfig) -> Self {
        let gens = QuadraticGenerators::new(&cfg)
            .list
            .into_iter()
            .map(|(q, s)| GenInfo { charge: state_charge(&cfg, &s), state: s, weight: q.weight() })
            .collect();
        Self {
            cfg,
            gens,
            bases: BTreeMap::new(),
            blocks: HashMap::new(),
            guard: ResourceGuard::default(),
            source: RowSource::StrongGenerators,
            cache: None,
        }
    }

    pub fn with_guard(mut self, guard: ResourceGuard) -> Self {
        self.guard = guard;
        self
    }

    pub fn with_source(mut self, source: RowSource) -> Self {
        self.source = source;
        self
    }

    pub fn with_cache(mut self, cache: Option<BasisCache>) -> Self {
        self.cache = cache;
        self
    }

    pub fn cfg(&self) -> &AlgebraConfig {
        &self.cfg
    }

    pub fn source(&self) -> RowSource {
        self.source
    }

    /// Even basis of weight `w`, enumerated on first use.
    pub fn basis(&mut self, w: i64) -> Result<&WeightBasis, C2Error> {
        if !self.bases.contains_key(&w) {
            let bound = fermionic_character(self.cfg.d(), w.max(0) as usize)[w.max(0) as usize];
            if bound > self.guard.max_basis_per_weight as u128 {
                return Err(C2Error::Truncated(format!("weight {w} has {bound} states")));
            }
            let list = match &self.cache {
                Some(cache) => cache.load_or_compute(&self.cfg, Sector::Untwisted, &Rational::from_int(w), true)?,
                None => enumerate_half(&self.cfg, Sector::Untwisted, 2 * w as i32, Parity::Even),
            };
            self.bases.insert(w, WeightBasis::from_monomials(&self.cfg, w, list));
        }
        Ok(&self.bases[&w])
    }

    pub fn ambient_dim(&mut self, w: i64) -> Result<usize, C2Error> {
        Ok(self.basis(w)?.len())
    }

    pub fn charges(&mut self, w: i64) -> Result<Vec<Charge>, C2Error> {
        Ok(self.basis(w)?.blocks.keys().cloned().collect())
    }

    fn ensure_lower_bases(&mut self, w: i64) -> Result<(), C2Error> {
        for v in 0..=w {
            self.basis(v)?;
        }
        Ok(())
    }

    /// The slice of block `(w, charge)`.
    pub fn block(&mut self, w: i64, charge: &Charge) -> Result<&BlockSlice, C2Error> {
        let key = (w, charge.clone());
        if !self.blocks.contains_key(&key) {
            self.ensure_lower_bases(w)?;
            let slice = self.compute_block(w, charge)?;
            self.blocks.insert(key.clone(), slice);
        }
        Ok(&self.blocks[&key])
    }

    /// All blocks of one weight, computed in parallel.
    pub fn weight_blocks(&mut self, w: i64) -> Result<Vec<&BlockSlice>, C2Error> {
        self.ensure_lower_bases(w)?;
        let missing: Vec<Charge> =
            self.bases[&w].blocks.keys().filter(|c| !self.blocks.contains_key(&(w, (*c).clone()))).cloned().collect();
        let this = &*self;
        let computed: Vec<Result<BlockSlice, C2Error>> = missing.par_iter().map(|c| this.compute_block(w, c)).collect();
        for (c, r) in missing.into_iter().zip(computed) {
            self.blocks.insert((w, c), r?);
        }
        let keys: Vec<Charge> = self.bases[&w].blocks.keys().cloned().collect();
        Ok(keys.iter().map(|c| &self.blocks[&(w, c.clone())]).collect())
    }

    /// Calls `f` on every spanning row of the block until it returns `false`.
    fn for_each_row(
        &self,
        w: i64,
        charge: &Charge,
        mut f: impl FnMut(State) -> Result<bool, C2Error>,
    ) -> Result<(), C2Error> {
        let cfg = &self.cfg;
        match self.source {
            RowSource::StrongGenerators => {
                for wb in (0..=w - 3).rev() {
                    for g in &self.gens {
                        let n = w - g.weight - wb - 1;
                        if n < 0 {
                            continue;
                        }
                        let Some(bb) = self.bases[&wb].blocks.get(&sub_charge(charge, &g.charge)) else { continue };
                        for m in bb.monomials() {
                            let b = State::monomial(Sector::Untwisted, m.clone());
                            if !f(nth_product(cfg, &g.state, -n - 2, &b)?)? {
                                return Ok(());
                            }
                        }
                    }
                }
            }
            RowSource::Definitional => {
                for wa in 1..w {
                    let wb = w - 1 - wa;
                    for (ca, ba) in &self.bases[&wa].blocks {
                        let Some(bb) = self.bases[&wb].blocks.get(&sub_charge(charge, ca)) else { continue };
                        for ma in ba.monomials() {
                            let a = State::monomial(Sector::Untwisted, ma.clone());
                            for mb in bb.monomials() {
                                let b = State::monomial(Sector::Untwisted, mb.clone());
                                if !f(nth_product(cfg, &a, -2, &b)?)? {
                                    return Ok(());
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn compute_block(&self, w: i64, charge: &Charge) -> Result<BlockSlice, C2Error> {
        let basis = &self.bases[&w].blocks[charge];
        let width = basis.len();
        let mut modp: Echelon<Fp> = Echelon::new(width);
        let mut selected: Vec<SparseVector> = Vec::new();
        let mut rows: Vec<SparseVector> = Vec::new();
        let mut generated = 0usize;
        let mut inconclusive = false;
        self.for_each_row(w, charge, |row| {
            generated += 1;
            if generated > self.guard.max_rows_per_block {
                return Err(C2Error::Truncated(format!(
                    "more than {} rows in block w={w} charge={charge:?}",
                    self.guard.max_rows_per_block
                )));
            }
            let v = basis
                .coords(&row)
                .ok_or_else(|| C2Error::Internal(format!("row outside block w={w} charge={charge:?}")))?;
            if v.is_zero() {
                return Ok(true);
            }
            match v.map(Fp::from_rational) {
                Some(vp) => {
                    if modp.insert(&vp) {
                        selected.push(v.clone());
                    }
                }
                None => inconclusive = true,
            }
            if modp.is_full() && !inconclusive {
                return Ok(false);
            }
            rows.push(v);
            Ok(true)
        })?;
        let mut slice = BlockSlice {
            weight: w,
            charge: charge.to_vec(),
            width,
            rank: modp.rank(),
            functionals: Vec::new(),
            rows_generated: generated,
            exact_fallback: false,
        };
        if modp.is_full() && !inconclusive {
            return Ok(slice);
        }
        // Independent mod p implies independent over Q; the kernel of the
        // selected rows certifies the rank once it annihilates every row.
        let functionals = MatrixQ::from_rows(width, selected).map_err(|e| C2Error::Internal(e.to_string()))?.kernel();
        let certified = !inconclusive && rows.iter().all(|r| functionals.iter().all(|phi| r.dot(phi).is_zero()));
        if certified {
            slice.functionals = functionals;
            return Ok(slice);
        }
        let all = MatrixQ::from_rows(width, rows).map_err(|e| C2Error::Internal(e.to_string()))?;
        slice.functionals = all.kernel();
        slice.rank = width - slice.functionals.len();
        slice.exact_fallback = true;
        Ok(slice)
    }

    /// Quotient coordinates of a homogeneous even state.
    pub fn quotient_coords(&mut self, s: &State) -> Result<QuotientCoords, C2Error> {
        if s.sector() != Sector::Untwisted {
            return Err(C2Error::NotEven("state is not in the untwisted sector".into()));
        }
        if !s.is_even() {
            return Err(C2Error::NotEven(s.display(&self.cfg)));
        }
        if s.is_zero() {
            return Ok(QuotientCoords::default());
        }
        let w = s.weight(&self.cfg)?;
        let w = w.to_i64_pair().map(|(p, _)| p).unwrap_or(0);
        let mut parts: BTreeMap<Charge, State> = BTreeMap::new();
        for (m, c) in s.iter() {
            parts
                .entry(m.charge(&self.cfg))
                .or_insert_with(|| State::zero(Sector::Untwisted))
                .add_term(m.clone(), c.clone());
        }
        let mut out = QuotientCoords { weight: w, blocks: BTreeMap::new() };
        for (charge, part) in parts {
            let slice = self.block(w, &charge)?.clone();
            let basis = &self.bases[&w].blocks[&charge];
            let v = basis.coords(&part).ok_or_else(|| C2Error::Internal("state outside its block".into()))?;
            let q =
                SparseVector::from_pairs(slice.functionals.iter().enumerate().map(|(j, phi)| (j as u32, v.dot(phi))));
            out.blocks.insert(charge, q);
        }
        Ok(out)
    }

    /// Whether `a - b` lies in `C_2`.
    pub fn eq_mod_c2(&mut self, a: &State, b: &State) -> Result<bool, C2Error> {
        Ok(self.quotient_coords(&a.minus(b))?.is_zero())
    }

    /// Coordinates in the full quotient space of weight `w` (blocks ordered by charge).
    pub fn flatten(&mut self, q: &QuotientCoords) -> Result<SparseVec<Rational>, C2Error> {
        let w = q.weight;
        let blocks = self.weight_blocks(w)?;
        let mut offset = 0u32;
        let mut pairs = Vec::new();
        for b in blocks {
            let charge: Charge = b.charge.iter().copied().collect();
            if let Some(v) = q.blocks.get(&charge) {
                pairs.extend(v.entries().iter().map(|(j, c)| (offset + j, c.clone())));
            }
            offset += b.functionals.len() as u32;
        }
        Ok(SparseVector::from_pairs(pairs))
    }

    /// Total quotient dimension at weight `w`.
    pub fn quotient_dim(&mut self, w: i64) -> Result<usize, C2Error> {
        Ok(self.weight_blocks(w)?.iter().map(|b| b.quotient_dim()).sum())
    }

    pub fn rows_generated(&mut self, w: i64) -> Result<usize, C2Error> {
        Ok(self.weight_blocks(w)?.iter().map(|b| b.rows_generated).sum())
    }
}
