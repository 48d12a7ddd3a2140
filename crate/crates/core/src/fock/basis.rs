use std::collections::HashMap;

use smallvec::SmallVec;

use super::mode::{AlgebraConfig, ModeKey, Sector};
use super::monomial::Monomial;
use super::state::State;
use super::FockError;
use crate::linalg::{Rational, SparseVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
    All,
}

impl Parity {
    pub fn accepts(&self, len: usize) -> bool {
        match self {
            Parity::Even => len.is_multiple_of(2),
            Parity::Odd => len % 2 == 1,
            Parity::All => true,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
            Parity::All => "all",
        }
    }
}

/// Modes that may appear in a monomial of oscillator weight `<= max_half / 2`,
/// listed in canonical order.
fn available_modes(cfg: &AlgebraConfig, sector: Sector, max_half: i32) -> Vec<ModeKey> {
    let mut out = Vec::new();
    let mut h = max_half;
    while h >= 1 {
        if sector.is_creation(-h) {
            for g in 1..=cfg.num_generators() {
                out.push(ModeKey::from_half(g, -h));
            }
        }
        h -= 1;
    }
    if sector == Sector::ZeroExtended {
        for g in 1..=cfg.num_generators() {
            out.push(ModeKey::from_half(g, 0));
        }
    }
    out
}

/// All canonical monomials with oscillator weight `osc_half / 2`, in
/// lexicographic canonical order.
pub fn enumerate_half(cfg: &AlgebraConfig, sector: Sector, osc_half: i32, parity: Parity) -> Vec<Monomial> {
    let mut out = Vec::new();
    if osc_half < 0 {
        return out;
    }
    let modes = available_modes(cfg, sector, osc_half);
    let mut stack: SmallVec<[ModeKey; 8]> = SmallVec::new();
    fn go(
        modes: &[ModeKey],
        start: usize,
        remaining: i32,
        parity: Parity,
        stack: &mut SmallVec<[ModeKey; 8]>,
        out: &mut Vec<Monomial>,
    ) {
        if remaining == 0 && parity.accepts(stack.len()) {
            out.push(Monomial::from_canonical_unchecked(stack.clone()));
        }
        for i in start..modes.len() {
            let w = -modes[i].half();
            if w > remaining {
                continue;
            }
            stack.push(modes[i]);
            go(modes, i + 1, remaining - w, parity, stack, out);
            stack.pop();
        }
    }
    go(&modes, 0, osc_half, parity, &mut stack, &mut out);
    out
}

/// Basis of the weight-`w` space of a sector (conformal weight, including the
/// twisted vacuum offset).
pub fn enumerate_basis(
    cfg: &AlgebraConfig,
    sector: Sector,
    w: &Rational,
    even_only: bool,
) -> Result<Vec<Monomial>, FockError> {
    let osc = w - &sector.offset(cfg);
    let twice = &osc * &Rational::from_int(2);
    let bad = || FockError::BadWeight { weight: w.clone(), sector };
    let half = match twice.to_i64_pair() {
        Some((n, 1)) => n,
        _ => return Err(bad()),
    };
    if half < 0 {
        return Ok(Vec::new());
    }
    let admissible = match sector {
        Sector::Twisted => true,
        _ => half % 2 == 0,
    };
    if !admissible || half > i16::MAX as i64 {
        return Err(bad());
    }
    let parity = if even_only { Parity::Even } else { Parity::All };
    Ok(enumerate_half(cfg, sector, half as i32, parity))
}

/// Coefficients of `prod_{n>=1} (1+q^n)^{2d}` up to `q^max`, by repeated
/// power-series multiplication.
pub fn fermionic_character(d: u32, max: usize) -> Vec<u128> {
    let mut series = vec![0u128; max + 1];
    series[0] = 1;
    for n in 1..=max {
        for _ in 0..2 * d {
            for k in (n..=max).rev() {
                series[k] += series[k - n];
            }
        }
    }
    series
}

/// A basis of one graded piece together with a reverse index.
#[derive(Clone, Debug)]
pub struct GradedBasis {
    pub sector: Sector,
    pub osc_half: i32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, u32>,
}

impl GradedBasis {
    pub fn new(sector: Sector, osc_half: i32, monomials: Vec<Monomial>) -> Self {
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
        Self { sector, osc_half, monomials, index }
    }

    pub fn build(cfg: &AlgebraConfig, sector: Sector, osc_half: i32, parity: Parity) -> Self {
        Self::new(sector, osc_half, enumerate_half(cfg, sector, osc_half, parity))
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).map(|&i| i as usize)
    }

    /// Coordinates of `s`; `None` if it has a term outside this basis.
    pub fn coords(&self, s: &State) -> Option<SparseVector> {
        let mut pairs = Vec::with_capacity(s.len());
        for (m, c) in s.iter() {
            pairs.push((*self.index.get(m)?, c.clone()));
        }
        Some(SparseVector::from_pairs(pairs))
    }

    pub fn state(&self, v: &SparseVector) -> State {
        let mut s = State::zero(self.sector);
        for (i, c) in v.entries() {
            s.add_term(self.monomials[*i as usize].clone(), c.clone());
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let cfg = AlgebraConfig::new(1).unwrap();
        let two = Rational::from_int(2);
        let even = enumerate_basis(&cfg, Sector::Untwisted, &two, true).unwrap();
        assert_eq!(even.len(), 1);
        assert_eq!(even[0].modes(), &[ModeKey::new(1, -1), ModeKey::new(2, -1)]);
        assert_eq!(enumerate_basis(&cfg, Sector::Untwisted, &two, false).unwrap().len(), 3);
        let zero = enumerate_basis(&cfg, Sector::ZeroExtended, &Rational::ZERO, true).unwrap();
        assert_eq!(zero.len(), 2);
    }

    #[test]
    fn zero_mode_tops() {
        for d in 1..=4u32 {
            let cfg = AlgebraConfig::new(d).unwrap();
            let top = enumerate_basis(&cfg, Sector::ZeroExtended, &Rational::ZERO, true).unwrap();
            assert_eq!(top.len(), 1 << (2 * d - 1));
        }
    }

    #[test]
    fn twisted_weights() {
        let cfg = AlgebraConfig::new(2).unwrap();
        let top = enumerate_basis(&cfg, Sector::Twisted, &Rational::new(1, 4), false).unwrap();
        assert_eq!(top.len(), 4);
        assert!(enumerate_basis(&cfg, Sector::Untwisted, &Rational::new(1, 2), false).is_err());
    }

    #[test]
    fn character_coefficients() {
        assert_eq!(fermionic_character(1, 4), vec![1, 2, 3, 6, 9]);
    }
}
