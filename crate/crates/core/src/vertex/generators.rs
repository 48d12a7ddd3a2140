use std::fmt;

use super::product::nth_product;
use crate::fock::{AlgebraConfig, ModeKey, Sector, State};
use crate::linalg::{factorial, Rational};

/// The six families of quadratic strong generators of the even subalgebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    SmallE,
    SmallF,
    SmallH,
    LargeE,
    LargeF,
    LargeH,
}

impl GenKind {
    pub const ALL: [GenKind; 6] =
        [GenKind::SmallE, GenKind::SmallF, GenKind::SmallH, GenKind::LargeE, GenKind::LargeF, GenKind::LargeH];

    pub fn is_large(&self) -> bool {
        matches!(self, GenKind::LargeE | GenKind::LargeF | GenKind::LargeH)
    }

    pub fn weight(&self) -> i64 {
        if self.is_large() {
            3
        } else {
            2
        }
    }

    fn letter(&self) -> &'static str {
        match self {
            GenKind::SmallE => "e",
            GenKind::SmallF => "f",
            GenKind::SmallH => "h",
            GenKind::LargeE => "E",
            GenKind::LargeF => "F",
            GenKind::LargeH => "H",
        }
    }
}

/// One quadratic generator `kind^{ij}` (1-based flavours).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quadratic {
    pub kind: GenKind,
    pub i: u32,
    pub j: u32,
}

impl fmt::Display for Quadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.kind.letter(), self.i, self.j)
    }
}

fn pair(a: u8, ma: i64, b: u8, mb: i64) -> State {
    State::from_modes(Sector::Untwisted, &[ModeKey::new(a, -ma), ModeKey::new(b, -mb)]).expect("creation modes")
}

impl Quadratic {
    pub fn new(kind: GenKind, i: u32, j: u32) -> Self {
        Self { kind, i, j }
    }

    pub fn weight(&self) -> i64 {
        self.kind.weight()
    }

    /// The defining state, e.g. `h^{ij} = e^i_{-1} f^j_{-1} 1`.
    pub fn state(&self, cfg: &AlgebraConfig) -> State {
        let (ei, ej, fi, fj) = (cfg.e(self.i), cfg.e(self.j), cfg.f(self.i), cfg.f(self.j));
        let half = Rational::new(1, 2);
        match self.kind {
            GenKind::SmallE => pair(ei, 1, ej, 1),
            GenKind::SmallF => pair(fi, 1, fj, 1),
            GenKind::SmallH => pair(ei, 1, fj, 1),
            GenKind::LargeE => pair(ei, 2, ej, 1).plus(&pair(ej, 2, ei, 1)).scale(&half),
            GenKind::LargeF => pair(fi, 2, fj, 1).plus(&pair(fj, 2, fi, 1)).scale(&half),
            GenKind::LargeH => pair(ei, 2, fj, 1).plus(&pair(fj, 2, ei, 1)).scale(&half),
        }
    }
}

/// The strong generating set, with the redundant index orders removed.
#[derive(Clone, Debug)]
pub struct QuadraticGenerators {
    pub list: Vec<(Quadratic, State)>,
}

impl QuadraticGenerators {
    pub fn new(cfg: &AlgebraConfig) -> Self {
        let d = cfg.d();
        let mut list = Vec::new();
        for kind in GenKind::ALL {
            for i in 1..=d {
                for j in 1..=d {
                    let keep = match kind {
                        GenKind::SmallE | GenKind::SmallF => i < j,
                        GenKind::LargeE | GenKind::LargeF => i <= j,
                        GenKind::SmallH | GenKind::LargeH => true,
                    };
                    if keep {
                        let q = Quadratic::new(kind, i, j);
                        list.push((q, q.state(cfg)));
                    }
                }
            }
        }
        let gens = Self { list };
        debug_assert!(gens.symmetries_hold(cfg));
        gens
    }

    pub fn small(&self) -> impl Iterator<Item = &(Quadratic, State)> {
        self.list.iter().filter(|(q, _)| !q.kind.is_large())
    }

    pub fn large(&self) -> impl Iterator<Item = &(Quadratic, State)> {
        self.list.iter().filter(|(q, _)| q.kind.is_large())
    }

    pub fn get(&self, q: &Quadratic) -> Option<&State> {
        self.list.iter().find(|(p, _)| p == q).map(|(_, s)| s)
    }

    /// `e^{ij} = -e^{ji}`, `f^{ij} = -f^{ji}`, `E^{ij} = E^{ji}`, `F^{ij} = F^{ji}`,
    /// and `omega = sum_i h^{ii}`.
    pub fn symmetries_hold(&self, cfg: &AlgebraConfig) -> bool {
        let d = cfg.d();
        for i in 1..=d {
            for j in 1..=d {
                for (kind, sign) in
                    [(GenKind::SmallE, -1), (GenKind::SmallF, -1), (GenKind::LargeE, 1), (GenKind::LargeF, 1)]
                {
                    let a = Quadratic::new(kind, i, j).state(cfg);
                    let b = Quadratic::new(kind, j, i).state(cfg);
                    if a != b.scale(&Rational::from_int(sign)) {
                        return false;
                    }
                }
            }
        }
        let mut w = State::zero(Sector::Untwisted);
        for i in 1..=d {
            w = w.plus(&Quadratic::new(GenKind::SmallH, i, i).state(cfg));
        }
        w == omega(cfg)
    }
}

/// The conformal vector `sum_i e^i_{-1} f^i_{-1} 1`.
pub fn omega(cfg: &AlgebraConfig) -> State {
    let mut w = State::zero(Sector::Untwisted);
    for i in 1..=cfg.d() {
        w = w.plus(&pair(cfg.e(i), 1, cfg.f(i), 1));
    }
    w
}

/// `Z = h^{11}_{(-1)} h^{22}`; requires `d >= 2`.
pub fn z_state(cfg: &AlgebraConfig) -> State {
    let h11 = Quadratic::new(GenKind::SmallH, 1, 1).state(cfg);
    let h22 = Quadratic::new(GenKind::SmallH, 2, 2).state(cfg);
    nth_product(cfg, &h11, -1, &h22).expect("untwisted operands")
}

/// `J^4 = sum_{i <= min(d, 2)} (e^i_{-3} f^i - f^i_{-3} e^i)`.
pub fn j4_state(cfg: &AlgebraConfig) -> State {
    let mut s = State::zero(Sector::Untwisted);
    for i in 1..=cfg.d().min(2) {
        s = s.plus(&pair(cfg.e(i), 3, cfg.f(i), 1)).minus(&pair(cfg.f(i), 3, cfg.e(i), 1));
    }
    s
}

/// `B_{m_1..m_k}(a^1..a^k) = prod (m_i - 1)! / (sum m_i - 1)! * a^1_{-m_1} ... a^k_{-m_k} 1`.
pub fn b_state(ms: &[i64], gens: &[u8]) -> State {
    assert_eq!(ms.len(), gens.len());
    let modes: Vec<ModeKey> = ms.iter().zip(gens).map(|(&m, &g)| ModeKey::new(g, -m)).collect();
    let s = State::from_modes(Sector::Untwisted, &modes).expect("creation modes");
    let num: Rational = ms.iter().map(|&m| factorial((m - 1) as u32)).product();
    let total: i64 = ms.iter().sum();
    s.scale(&(num / factorial((total - 1) as u32)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_counts_and_symmetries() {
        for d in 1..=3 {
            let cfg = AlgebraConfig::new(d).unwrap();
            let g = QuadraticGenerators::new(&cfg);
            let d = d as usize;
            assert_eq!(g.small().count(), d * (d - 1) + d * d);
            assert_eq!(g.large().count(), d * (d + 1) + d * d);
            assert!(g.symmetries_hold(&cfg));
        }
    }

    #[test]
    fn b_normalization() {
        // B_{2,1} = 1!0!/2! x_{-2} y
        let s = b_state(&[2, 1], &[1, 2]);
        assert_eq!(s.iter().next().unwrap().1, &Rational::new(1, 2));
    }
}
