use std::fmt;

use crate::fock::{canonical_form, AlgebraConfig, Canonical, ModeKey, State};
use crate::linalg::{MatrixQ, Rational};

/// A basis element of `sp(2d)`, acting on the generators `e^k, f^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpBasisElement {
    H(u32),
    X(u32, u32),
    Y(u32, u32),
    Z(u32, u32),
    U(u32),
    V(u32),
}

impl fmt::Display for SpBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpBasisElement::H(i) => write!(f, "H{i}"),
            SpBasisElement::X(i, j) => write!(f, "X{i}{j}"),
            SpBasisElement::Y(i, j) => write!(f, "Y{i}{j}"),
            SpBasisElement::Z(i, j) => write!(f, "Z{i}{j}"),
            SpBasisElement::U(i) => write!(f, "U{i}"),
            SpBasisElement::V(i) => write!(f, "V{i}"),
        }
    }
}

impl SpBasisElement {
    /// The `2d^2 + d` basis elements (`X_{ij}` for `i != j`, `Y_{ij}, Z_{ij}` for `i < j`).
    pub fn all(cfg: &AlgebraConfig) -> Vec<SpBasisElement> {
        let d = cfg.d();
        let mut v = Vec::new();
        for i in 1..=d {
            v.push(SpBasisElement::H(i));
        }
        for i in 1..=d {
            for j in 1..=d {
                if i != j {
                    v.push(SpBasisElement::X(i, j));
                }
            }
        }
        for i in 1..=d {
            for j in i + 1..=d {
                v.push(SpBasisElement::Y(i, j));
                v.push(SpBasisElement::Z(i, j));
            }
        }
        for i in 1..=d {
            v.push(SpBasisElement::U(i));
            v.push(SpBasisElement::V(i));
        }
        v
    }

    /// Image of generator `gen` as `(generator, coefficient)` pairs.
    pub fn image(&self, cfg: &AlgebraConfig, gen: u8) -> Vec<(u8, i64)> {
        let k = cfg.flavor(gen);
        let is_e = cfg.is_e(gen);
        let delta = |a: u32, b: u32| a == b;
        let mut out = Vec::new();
        match *self {
            SpBasisElement::H(i) => {
                if delta(i, k) {
                    out.push(if is_e { (cfg.e(i), 1) } else { (cfg.f(i), -1) });
                }
            }
            SpBasisElement::X(i, j) => {
                if is_e && delta(j, k) {
                    out.push((cfg.e(i), 1));
                }
                if !is_e && delta(i, k) {
                    out.push((cfg.f(j), -1));
                }
            }
            SpBasisElement::Y(i, j) => {
                if !is_e {
                    if delta(j, k) {
                        out.push((cfg.e(i), 1));
                    }
                    if delta(i, k) {
                        out.push((cfg.e(j), 1));
                    }
                }
            }
            SpBasisElement::Z(i, j) => {
                if is_e {
                    if delta(j, k) {
                        out.push((cfg.f(i), 1));
                    }
                    if delta(i, k) {
                        out.push((cfg.f(j), 1));
                    }
                }
            }
            SpBasisElement::U(i) => {
                if !is_e && delta(i, k) {
                    out.push((cfg.e(i), 1));
                }
            }
            SpBasisElement::V(i) => {
                if is_e && delta(i, k) {
                    out.push((cfg.f(i), 1));
                }
            }
        }
        out
    }

    /// Matrix on the generator space in the basis `e^1..e^d, f^1..f^d`
    /// (column `k` holds the image of basis vector `k`).
    pub fn matrix(&self, cfg: &AlgebraConfig) -> MatrixQ {
        let n = cfg.num_generators() as usize;
        let mut m = MatrixQ::zero(n, n);
        for g in 1..=cfg.num_generators() {
            for (h, c) in self.image(cfg, g) {
                let r = (h - 1) as usize;
                let col = (g - 1) as usize;
                let v = m.get(r, col) + Rational::from_int(c);
                m.set(r, col, v);
            }
        }
        m
    }
}

/// Leibniz action of an `sp(2d)` element on a state of any sector.
pub fn sp_derivation(cfg: &AlgebraConfig, x: SpBasisElement, s: &State) -> State {
    let mut out = State::zero(s.sector());
    for (m, c) in s.iter() {
        for (pos, k) in m.modes().iter().enumerate() {
            for (g, coeff) in x.image(cfg, k.gen()) {
                let mut modes: Vec<ModeKey> = m.modes().to_vec();
                modes[pos] = k.with_gen(g);
                if let Ok(Canonical::Term { sign, monomial }) = canonical_form(s.sector(), &modes) {
                    out.add_term(monomial, c * &Rational::from_int(coeff * sign as i64));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::Sector;
    use crate::vertex::generators::omega;

    fn st(modes: &[(u8, i64)]) -> State {
        let ks: Vec<ModeKey> = modes.iter().map(|&(g, n)| ModeKey::new(g, n)).collect();
        State::from_modes(Sector::Untwisted, &ks).unwrap()
    }

    #[test]
    fn dimension_and_symplectic() {
        for d in 1..=4 {
            let cfg = AlgebraConfig::new(d).unwrap();
            let all = SpBasisElement::all(&cfg);
            assert_eq!(all.len() as u32, 2 * d * d + d);
            // X^T J + J X = 0 with J the Gram matrix of the pairing.
            let n = 2 * d as usize;
            let mut j = MatrixQ::zero(n, n);
            for a in 1..=cfg.num_generators() {
                for b in 1..=cfg.num_generators() {
                    j.set((a - 1) as usize, (b - 1) as usize, Rational::from_int(cfg.pairing(a, b)));
                }
            }
            for x in all {
                let m = x.matrix(&cfg);
                assert!(m.transpose().mul(&j).add(&j.mul(&m)).is_zero(), "{x}");
            }
        }
    }

    #[test]
    fn omega_is_invariant() {
        for d in 1..=4 {
            let cfg = AlgebraConfig::new(d).unwrap();
            for x in SpBasisElement::all(&cfg) {
                assert!(sp_derivation(&cfg, x, &omega(&cfg)).is_zero(), "{x}");
            }
        }
    }

    #[test]
    fn table_examples() {
        let cfg = AlgebraConfig::new(1).unwrap();
        assert!(sp_derivation(&cfg, SpBasisElement::H(1), &st(&[(1, -1), (2, -1)])).is_zero());
        let v = sp_derivation(&cfg, SpBasisElement::V(1), &st(&[(1, -6), (1, -1)]));
        assert_eq!(v, st(&[(2, -6), (1, -1)]).plus(&st(&[(1, -6), (2, -1)])));
        let cfg2 = AlgebraConfig::new(2).unwrap();
        assert!(sp_derivation(&cfg2, SpBasisElement::U(1), &st(&[(1, -1), (2, -1)])).is_zero());
    }
}
