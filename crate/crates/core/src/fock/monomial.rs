use std::fmt;

use smallvec::SmallVec;

use super::mode::{AlgebraConfig, ModeKey, Sector};
use super::FockError;
use crate::linalg::Rational;

/// Canonically ordered product of creation (or Grassmann zero) modes applied
/// to a sector vacuum. The empty monomial is the vacuum itself.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(SmallVec<[ModeKey; 8]>);

impl Monomial {
    pub fn vacuum() -> Self {
        Self(SmallVec::new())
    }

    pub fn modes(&self) -> &[ModeKey] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parity(&self) -> u8 {
        (self.0.len() % 2) as u8
    }

    pub fn is_even(&self) -> bool {
        self.0.len().is_multiple_of(2)
    }

    /// Sum of `-depth` over the modes, in half units.
    pub fn oscillator_half(&self) -> i32 {
        self.0.iter().map(|m| -m.half()).sum()
    }

    pub fn oscillator_weight(&self) -> Rational {
        Rational::new(self.oscillator_half() as i64, 2)
    }

    /// Cartan charges `#e^i - #f^i` for `i = 1..=d`.
    pub fn charge(&self, cfg: &AlgebraConfig) -> SmallVec<[i8; 8]> {
        let mut c: SmallVec<[i8; 8]> = SmallVec::from_elem(0, cfg.d() as usize);
        for m in &self.0 {
            let i = cfg.flavor(m.gen()) as usize - 1;
            if cfg.is_e(m.gen()) {
                c[i] += 1;
            } else {
                c[i] -= 1;
            }
        }
        c
    }

    /// Monomial without the first mode.
    pub fn tail(&self) -> Monomial {
        Monomial(self.0[1..].iter().copied().collect())
    }

    pub fn first(&self) -> Option<ModeKey> {
        self.0.first().copied()
    }

    /// Wraps modes that are already strictly canonical.
    pub(crate) fn from_canonical_unchecked(modes: SmallVec<[ModeKey; 8]>) -> Self {
        debug_assert!(modes.windows(2).all(|w| w[0] < w[1]));
        Self(modes)
    }

    /// Parses the cache/CLI token form `g1:-2/1,g3:-1/1`.
    pub fn parse_tokens(line: &str) -> Result<Vec<ModeKey>, FockError> {
        let line = line.trim();
        if line.is_empty() {
            return Ok(Vec::new());
        }
        line.split(',')
            .map(|tok| {
                let bad = || FockError::BadToken(tok.to_string());
                let rest = tok.trim().strip_prefix('g').ok_or_else(bad)?;
                let (g, depth) = rest.split_once(':').ok_or_else(bad)?;
                let gen: u8 = g.parse().map_err(|_| bad())?;
                let depth: Rational = depth.parse().map_err(|_| bad())?;
                ModeKey::from_depth(gen, &depth)
            })
            .collect()
    }

    /// Token form with explicit `num/den` depths.
    pub fn to_tokens(&self) -> String {
        self.0
            .iter()
            .map(|m| {
                let (n, d) = if m.half() % 2 == 0 { (m.half() / 2, 1) } else { (m.half(), 2) };
                format!("g{}:{}/{}", m.gen(), n, d)
            })
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn display(&self, cfg: &AlgebraConfig) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let parts: Vec<String> = self.0.iter().map(|m| m.display(cfg)).collect();
        format!("{} 1", parts.join(" "))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_tokens())
    }
}

/// Result of reordering a product of anticommuting modes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Canonical {
    Zero,
    Term { sign: i8, monomial: Monomial },
}

/// Sorts `raw` into canonical order, tracking the transposition sign.
///
/// Creation modes of one sector pairwise anticommute without contraction
/// (their depths never sum to zero), so reordering only produces a sign.
/// A repeated mode squares to zero.
pub fn canonical_form(sector: Sector, raw: &[ModeKey]) -> Result<Canonical, FockError> {
    for m in raw {
        if !sector.admits(m.half()) {
            return Err(FockError::WrongLattice { mode: format!("{m:?}"), sector });
        }
        if !sector.is_creation(m.half()) {
            return Err(FockError::NotCreation { mode: format!("{m:?}"), sector });
        }
    }
    let mut v: SmallVec<[ModeKey; 8]> = raw.iter().copied().collect();
    let mut sign = 1i8;
    // Insertion sort keeps the inversion count explicit.
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] >= v[j] {
            if v[j - 1] == v[j] {
                return Ok(Canonical::Zero);
            }
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    Ok(Canonical::Term { sign, monomial: Monomial(v) })
}

/// Inserts `mode` at the front of a canonical monomial and re-sorts.
pub(crate) fn prepend(mode: ModeKey, m: &Monomial) -> Option<(i8, Monomial)> {
    let modes = m.modes();
    let pos = match modes.binary_search(&mode) {
        Ok(_) => return None,
        Err(p) => p,
    };
    let mut v: SmallVec<[ModeKey; 8]> = SmallVec::with_capacity(modes.len() + 1);
    v.extend_from_slice(&modes[..pos]);
    v.push(mode);
    v.extend_from_slice(&modes[pos..]);
    let sign = if pos % 2 == 0 { 1 } else { -1 };
    Some((sign, Monomial(v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mk(g: u8, n: i64) -> ModeKey {
        ModeKey::new(g, n)
    }

    #[test]
    fn odd_square_vanishes() {
        // d = 1: e1 = gen 1, f1 = gen 2
        let r = canonical_form(Sector::Untwisted, &[mk(1, -1), mk(1, -1)]).unwrap();
        assert_eq!(r, Canonical::Zero);
    }

    #[test]
    fn one_transposition() {
        let r = canonical_form(Sector::Untwisted, &[mk(2, -1), mk(1, -2)]).unwrap();
        match r {
            Canonical::Term { sign, monomial } => {
                assert_eq!(sign, -1);
                assert_eq!(monomial.modes(), &[mk(1, -2), mk(2, -1)]);
            }
            _ => panic!("unexpected zero"),
        }
    }

    #[test]
    fn sort_by_generator_at_equal_depth() {
        // d = 2: e1=1, e2=2, f1=3, f2=4; input e1 f1 e2 f2
        let r = canonical_form(Sector::Untwisted, &[mk(1, -1), mk(3, -1), mk(2, -1), mk(4, -1)]).unwrap();
        match r {
            Canonical::Term { sign, monomial } => {
                assert_eq!(sign, -1);
                assert_eq!(monomial.modes(), &[mk(1, -1), mk(2, -1), mk(3, -1), mk(4, -1)]);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn rejects_annihilators_and_wrong_lattice() {
        assert!(canonical_form(Sector::Untwisted, &[mk(1, 2)]).is_err());
        assert!(canonical_form(Sector::Untwisted, &[mk(1, 0)]).is_err());
        assert!(canonical_form(Sector::ZeroExtended, &[mk(1, 0)]).is_ok());
        assert!(canonical_form(Sector::Twisted, &[mk(1, -1)]).is_err());
        assert!(canonical_form(Sector::Twisted, &[ModeKey::from_half(1, -1)]).is_ok());
    }

    #[test]
    fn zero_modes_trail() {
        let r = canonical_form(Sector::ZeroExtended, &[mk(2, 0), mk(1, -1), mk(1, 0)]).unwrap();
        match r {
            Canonical::Term { monomial, .. } => {
                assert_eq!(monomial.modes(), &[mk(1, -1), mk(1, 0), mk(2, 0)]);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn token_round_trip() {
        let m = Monomial::from_canonical_unchecked(SmallVec::from_slice(&[mk(1, -3), ModeKey::from_half(2, -1)]));
        assert_eq!(m.to_tokens(), "g1:-3/1,g2:-1/2");
        assert_eq!(Monomial::parse_tokens(&m.to_tokens()).unwrap(), m.modes().to_vec());
    }
}
