use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::FockError;
use crate::linalg::Rational;

/// Rank and symplectic pairing of the generator space.
///
/// Generators are numbered `1..=2d` with `x^i = e^i` for `i <= d` and
/// `x^{i+d} = f^i`. The pairing is `<e^i, f^j> = pairing_sign * delta_ij`, and
/// the standard normalization is `pairing_sign = -1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraConfig {
    d: u8,
    pairing_sign: i8,
}

impl AlgebraConfig {
    pub const MAX_RANK: u8 = 16;

    pub fn new(d: u32) -> Result<Self, FockError> {
        if d == 0 || d > Self::MAX_RANK as u32 {
            return Err(FockError::InvalidRank(d));
        }
        Ok(Self { d: d as u8, pairing_sign: -1 })
    }

    /// Same rank with `<e^i, f^i> = +1`; only useful as a negative control.
    pub fn with_flipped_pairing(self) -> Self {
        Self { pairing_sign: -self.pairing_sign, ..self }
    }

    pub fn d(&self) -> u32 {
        self.d as u32
    }

    pub fn num_generators(&self) -> u8 {
        2 * self.d
    }

    /// Generator index of `e^i` (1-based `i`).
    pub fn e(&self, i: u32) -> u8 {
        debug_assert!(i >= 1 && i <= self.d());
        i as u8
    }

    /// Generator index of `f^i` (1-based `i`).
    pub fn f(&self, i: u32) -> u8 {
        debug_assert!(i >= 1 && i <= self.d());
        (i as u8) + self.d
    }

    pub fn is_e(&self, gen: u8) -> bool {
        gen >= 1 && gen <= self.d
    }

    /// The index `i` such that `gen` is `e^i` or `f^i`.
    pub fn flavor(&self, gen: u8) -> u32 {
        if self.is_e(gen) {
            gen as u32
        } else {
            (gen - self.d) as u32
        }
    }

    /// `<x^a, x^b>` for generator indices.
    pub fn pairing(&self, a: u8, b: u8) -> i64 {
        let s = self.pairing_sign as i64;
        if self.is_e(a) && !self.is_e(b) && self.flavor(a) == self.flavor(b) {
            s
        } else if !self.is_e(a) && self.is_e(b) && self.flavor(a) == self.flavor(b) {
            -s
        } else {
            0
        }
    }

    pub fn gen_name(&self, gen: u8) -> String {
        if self.is_e(gen) {
            format!("e{}", gen)
        } else {
            format!("f{}", gen - self.d)
        }
    }
}

/// Which module the modes act on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sector {
    /// SF(d) itself: integer modes, creation modes `<= -1`.
    Untwisted,
    /// The parity-twisted module: half-odd-integer modes.
    Twisted,
    /// SF(d) extended by Grassmann zero modes `e^i_0, f^i_0`.
    ZeroExtended,
}

impl Sector {
    pub const ALL: [Sector; 3] = [Sector::Untwisted, Sector::Twisted, Sector::ZeroExtended];

    pub fn name(&self) -> &'static str {
        match self {
            Sector::Untwisted => "untwisted",
            Sector::Twisted => "twisted",
            Sector::ZeroExtended => "zero_extended",
        }
    }

    pub fn from_name(s: &str) -> Option<Sector> {
        Sector::ALL.into_iter().find(|x| x.name() == s)
    }

    /// Whether a mode of depth `half / 2` lives in this sector's lattice.
    pub fn admits(&self, half: i32) -> bool {
        match self {
            Sector::Twisted => half.rem_euclid(2) == 1,
            _ => half.rem_euclid(2) == 0,
        }
    }

    /// Whether a mode may appear inside a monomial (creation, or Grassmann zero mode).
    pub fn is_creation(&self, half: i32) -> bool {
        self.admits(half) && (half < 0 || (half == 0 && *self == Sector::ZeroExtended))
    }

    /// Vacuum conformal weight `-d/8` for the twisted sector, else 0.
    pub fn offset(&self, cfg: &AlgebraConfig) -> Rational {
        match self {
            Sector::Twisted => Rational::new(-(cfg.d() as i64), 8),
            _ => Rational::ZERO,
        }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A generator mode `x^gen_{depth}` with the depth kept in half units.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModeKey {
    gen: u8,
    half: i16,
}

impl ModeKey {
    /// Integer mode `x^gen_n`.
    pub fn new(gen: u8, n: i64) -> Self {
        Self { gen, half: (2 * n) as i16 }
    }

    /// Mode with depth `half / 2`.
    pub fn from_half(gen: u8, half: i32) -> Self {
        Self { gen, half: half as i16 }
    }

    pub fn from_depth(gen: u8, depth: &Rational) -> Result<Self, FockError> {
        let twice = depth * &Rational::from_int(2);
        match twice.to_i64_pair() {
            Some((n, 1)) if n.abs() < i16::MAX as i64 => Ok(Self { gen, half: n as i16 }),
            _ => Err(FockError::BadDepth(depth.to_string())),
        }
    }

    pub fn gen(&self) -> u8 {
        self.gen
    }

    pub fn half(&self) -> i32 {
        self.half as i32
    }

    pub fn depth(&self) -> Rational {
        Rational::new(self.half as i64, 2)
    }

    /// Integer depth; panics for half-integer modes.
    pub fn int_depth(&self) -> i64 {
        assert!(self.half % 2 == 0, "half-integer mode has no integer depth");
        (self.half / 2) as i64
    }

    pub fn with_gen(&self, gen: u8) -> Self {
        Self { gen, half: self.half }
    }

    pub fn display(&self, cfg: &AlgebraConfig) -> String {
        format!("{}_{}", cfg.gen_name(self.gen), self.depth())
    }
}

impl Ord for ModeKey {
    /// Canonical order: larger `|depth|` first, then smaller generator index.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .half
            .unsigned_abs()
            .cmp(&self.half.unsigned_abs())
            .then(self.gen.cmp(&other.gen))
            .then(self.half.cmp(&other.half))
    }
}

impl PartialOrd for ModeKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
