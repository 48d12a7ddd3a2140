use std::collections::BTreeMap;

use serde::Serialize;

use super::slice::C2Context;
use super::C2Error;
use crate::fock::{AlgebraConfig, ModeKey, Sector, State};
use crate::linalg::{Echelon, Rational};

#[derive(Clone, Debug)]
pub struct BdElement {
    pub name: String,
    pub weight: i64,
    pub state: State,
}

/// The candidate basis: even products of `x_{-1}` modes, then the length-two list.
#[derive(Clone, Debug)]
pub struct BdSet {
    pub part1: Vec<BdElement>,
    pub part2: Vec<BdElement>,
}

fn element(cfg: &AlgebraConfig, modes: &[(u8, i64)]) -> BdElement {
    let keys: Vec<ModeKey> = modes.iter().map(|&(g, m)| ModeKey::new(g, -m)).collect();
    let name = modes
        .iter()
        .map(|&(g, m)| if m == 1 { cfg.gen_name(g) } else { format!("{}_{{-{m}}}", cfg.gen_name(g)) })
        .collect::<Vec<_>>()
        .join(" ");
    let state = State::from_modes(Sector::Untwisted, &keys).expect("creation modes");
    BdElement { name: if modes.is_empty() { "1".into() } else { name }, weight: modes.iter().map(|p| p.1).sum(), state }
}

impl BdSet {
    pub fn new(cfg: &AlgebraConfig) -> Self {
        let n = cfg.num_generators();
        let mut part1 = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() % 2 == 0 {
                let modes: Vec<(u8, i64)> = (0..n).filter(|b| mask >> b & 1 == 1).map(|b| (b + 1, 1)).collect();
                part1.push(element(cfg, &modes));
            }
        }
        part1.sort_by_key(|e| e.weight);
        let mut part2 = Vec::new();
        for (m, strict) in [(2, false), (3, true), (4, false), (5, true)] {
            for i in 1..=n {
                for j in i..=n {
                    if !(strict && i == j) {
                        part2.push(element(cfg, &[(i, m), (j, 1)]));
                    }
                }
            }
        }
        part2.push(element(cfg, &[(cfg.e(1), 7), (cfg.f(1), 1)]));
        Self { part1, part2 }
    }

    pub fn len(&self) -> usize {
        self.part1.len() + self.part2.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = &BdElement> {
        self.part1.iter().chain(self.part2.iter())
    }

    /// Removes the element with the given name; returns whether it was present.
    pub fn drop_named(&mut self, name: &str) -> bool {
        let before = self.len();
        self.part1.retain(|e| e.name != name);
        self.part2.retain(|e| e.name != name);
        before != self.len()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BdWeightRow {
    pub weight: i64,
    pub candidates: usize,
    pub independent: usize,
    pub quotient_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BdReport {
    pub d: u32,
    pub size: usize,
    pub rank: usize,
    pub expected: u64,
    pub per_weight: Vec<BdWeightRow>,
    pub first_dependent: Option<String>,
}

impl BdReport {
    pub fn pass(&self) -> bool {
        self.first_dependent.is_none()
            && self.rank as u64 == self.expected
            && self.per_weight.iter().all(|r| r.independent == r.quotient_dim && r.candidates == r.independent)
    }
}

/// Checks that the images of `set` form a basis of the quotient up to weight `max(8, 2d)`.
pub fn verify_bd_basis(ctx: &mut C2Context, set: &BdSet) -> Result<BdReport, C2Error> {
    let d = ctx.cfg().d();
    let mut by_weight: BTreeMap<i64, Vec<&BdElement>> = BTreeMap::new();
    for e in set.iter() {
        by_weight.entry(e.weight).or_default().push(e);
    }
    let top = 8.max(2 * d as i64);
    let mut report = BdReport {
        d,
        size: set.len(),
        rank: 0,
        expected: super::expected_total(d),
        per_weight: Vec::new(),
        first_dependent: None,
    };
    for w in 0..=top {
        let quotient_dim = ctx.quotient_dim(w)?;
        let elems = by_weight.get(&w).cloned().unwrap_or_default();
        let mut ech: Echelon<Rational> = Echelon::new(quotient_dim);
        let mut independent = 0;
        for e in &elems {
            let q = ctx.quotient_coords(&e.state)?;
            let v = ctx.flatten(&q)?;
            if ech.insert(&v) {
                independent += 1;
            } else if report.first_dependent.is_none() {
                report.first_dependent = Some(e.name.clone());
            }
        }
        report.rank += independent;
        report.per_weight.push(BdWeightRow { weight: w, candidates: elems.len(), independent, quotient_dim });
    }
    Ok(report)
}
