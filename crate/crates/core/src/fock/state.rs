use std::collections::BTreeMap;

use serde::Serialize;

use super::mode::{AlgebraConfig, ModeKey, Sector};
use super::monomial::{canonical_form, Canonical, Monomial};
use super::FockError;
use crate::linalg::Rational;

/// Finite rational combination of monomials in one sector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct State {
    sector: Sector,
    terms: BTreeMap<Monomial, Rational>,
}

/// Grading data of a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradingInfo {
    pub oscillator_weight: Rational,
    pub sector_offset: Rational,
    pub parity: u8,
}

impl GradingInfo {
    pub fn of(cfg: &AlgebraConfig, sector: Sector, m: &Monomial) -> Self {
        Self { oscillator_weight: m.oscillator_weight(), sector_offset: sector.offset(cfg), parity: m.parity() }
    }

    pub fn conformal_weight(&self) -> Rational {
        &self.oscillator_weight + &self.sector_offset
    }
}

impl State {
    pub fn zero(sector: Sector) -> Self {
        Self { sector, terms: BTreeMap::new() }
    }

    pub fn vacuum(sector: Sector) -> Self {
        Self::monomial(sector, Monomial::vacuum())
    }

    pub fn monomial(sector: Sector, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, Rational::ONE);
        Self { sector, terms }
    }

    /// Product of the given creation modes on the vacuum, canonicalized.
    pub fn from_modes(sector: Sector, modes: &[ModeKey]) -> Result<Self, FockError> {
        Ok(match canonical_form(sector, modes)? {
            Canonical::Zero => Self::zero(sector),
            Canonical::Term { sign, monomial } => {
                let mut s = Self::zero(sector);
                s.add_term(monomial, Rational::from_int(sign as i64));
                s
            }
        })
    }

    /// Builds from `(monomial, coefficient)` pairs, validating the sector.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(
        sector: Sector,
        terms: I,
    ) -> Result<Self, FockError> {
        let mut s = Self::zero(sector);
        for (m, c) in terms {
            if let Some(bad) = m.modes().iter().find(|k| !sector.is_creation(k.half())) {
                return Err(FockError::NotCreation { mode: format!("{bad:?}"), sector });
            }
            s.add_term(m, c);
        }
        Ok(s)
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// `self += k * other`; panics on a sector mismatch.
    pub fn add_scaled(&mut self, k: &Rational, other: &State) {
        assert_eq!(self.sector, other.sector, "mixed-sector arithmetic");
        if k.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * k);
        }
    }

    pub fn checked_add(&self, other: &State) -> Result<State, FockError> {
        if self.sector != other.sector {
            return Err(FockError::MixedSector(self.sector, other.sector));
        }
        let mut s = self.clone();
        s.add_scaled(&Rational::ONE, other);
        Ok(s)
    }

    pub fn plus(&self, other: &State) -> State {
        let mut s = self.clone();
        s.add_scaled(&Rational::ONE, other);
        s
    }

    pub fn minus(&self, other: &State) -> State {
        let mut s = self.clone();
        s.add_scaled(&Rational::from_int(-1), other);
        s
    }

    pub fn scale(&self, k: &Rational) -> State {
        if k.is_zero() {
            return Self::zero(self.sector);
        }
        Self { sector: self.sector, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    /// Largest oscillator weight present, in half units (0 for the zero state).
    pub fn max_oscillator_half(&self) -> i32 {
        self.terms.keys().map(|m| m.oscillator_half()).max().unwrap_or(0)
    }

    pub fn min_oscillator_half(&self) -> i32 {
        self.terms.keys().map(|m| m.oscillator_half()).min().unwrap_or(0)
    }

    /// Conformal weight of a homogeneous state; the zero state has none.
    pub fn weight(&self, cfg: &AlgebraConfig) -> Result<Rational, FockError> {
        let mut found: Option<i32> = None;
        for m in self.terms.keys() {
            let w = m.oscillator_half();
            match found {
                None => found = Some(w),
                Some(f) if f != w => {
                    let off = self.sector.offset(cfg);
                    return Err(FockError::MixedWeight(
                        Rational::new(f as i64, 2) + &off,
                        Rational::new(w as i64, 2) + &off,
                    ));
                }
                _ => {}
            }
        }
        match found {
            Some(h) => Ok(Rational::new(h as i64, 2) + self.sector.offset(cfg)),
            None => Err(FockError::ZeroState),
        }
    }

    /// Parity if homogeneous.
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms.keys().map(|m| m.parity());
        let p = it.next()?;
        it.all(|q| q == p).then_some(p)
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|m| m.is_even())
    }

    /// Splits into homogeneous oscillator-weight components.
    pub fn components(&self) -> BTreeMap<i32, State> {
        let mut out: BTreeMap<i32, State> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.oscillator_half()).or_insert_with(|| State::zero(self.sector)).add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn display(&self, cfg: &AlgebraConfig) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c}) {}", m.display(cfg))).collect();
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights() {
        let cfg = AlgebraConfig::new(1).unwrap();
        let s = State::from_modes(Sector::Untwisted, &[ModeKey::new(1, -2), ModeKey::new(2, -1)]).unwrap();
        assert_eq!(s.weight(&cfg).unwrap(), Rational::from_int(3));
        let cfg2 = AlgebraConfig::new(2).unwrap();
        assert_eq!(State::vacuum(Sector::Twisted).weight(&cfg2).unwrap(), Rational::new(-1, 4));
        let t = State::from_modes(Sector::Twisted, &[ModeKey::from_half(1, -1)]).unwrap();
        assert_eq!(t.weight(&cfg).unwrap(), Rational::new(3, 8));
    }

    #[test]
    fn mixed_weight_is_an_error() {
        let cfg = AlgebraConfig::new(1).unwrap();
        let a = State::from_modes(Sector::Untwisted, &[ModeKey::new(1, -1)]).unwrap();
        let b = State::from_modes(Sector::Untwisted, &[ModeKey::new(1, -2)]).unwrap();
        let err = a.plus(&b).weight(&cfg).unwrap_err();
        assert_eq!(err, FockError::MixedWeight(Rational::from_int(2), Rational::from_int(1)));
    }

    #[test]
    fn mixed_sector_rejected() {
        let a = State::vacuum(Sector::Untwisted);
        let b = State::vacuum(Sector::Twisted);
        assert!(a.checked_add(&b).is_err());
        let bad = State::from_terms(
            Sector::Untwisted,
            [(Monomial::from_canonical_unchecked(smallvec::smallvec![ModeKey::from_half(1, -1)]), Rational::ONE)],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn cancellation_leaves_zero() {
        let a = State::from_modes(Sector::Untwisted, &[ModeKey::new(1, -1), ModeKey::new(2, -1)]).unwrap();
        let b = State::from_modes(Sector::Untwisted, &[ModeKey::new(2, -1), ModeKey::new(1, -1)]).unwrap();
        assert!(a.plus(&b).is_zero());
    }
}
