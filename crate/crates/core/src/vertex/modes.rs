use super::VertexError;
use crate::fock::{AlgebraConfig, FockError, ModeKey, Monomial, Sector, State};
use crate::linalg::Rational;

/// Anticommutator `{x_m, y_n} = m <x, y> delta_{m+n,0}`.
pub fn contraction(cfg: &AlgebraConfig, a: ModeKey, b: ModeKey) -> Rational {
    if a.half() + b.half() != 0 || a.half() == 0 {
        return Rational::ZERO;
    }
    let p = cfg.pairing(a.gen(), b.gen());
    if p == 0 {
        return Rational::ZERO;
    }
    Rational::new(a.half() as i64 * p, 2)
}

/// Adds `coeff * k m` to `out`.
pub(crate) fn act_monomial(
    cfg: &AlgebraConfig,
    sector: Sector,
    k: ModeKey,
    m: &Monomial,
    coeff: &Rational,
    out: &mut State,
) {
    if sector.is_creation(k.half()) {
        if let Some((sign, pm)) = crate::fock::monomial::prepend(k, m) {
            out.add_term(pm, if sign > 0 { coeff.clone() } else { -coeff });
        }
        return;
    }
    if k.half() <= 0 {
        // Zero modes without a Grassmann partner anticommute through and kill the vacuum.
        return;
    }
    for (i, x) in m.modes().iter().enumerate() {
        if x.half() != -k.half() {
            continue;
        }
        let c = contraction(cfg, k, *x);
        if c.is_zero() {
            continue;
        }
        let mut rest: smallvec::SmallVec<[ModeKey; 8]> = m.modes().iter().copied().collect();
        rest.remove(i);
        let v = c * coeff;
        out.add_term(Monomial::from_canonical_unchecked(rest), if i % 2 == 0 { v } else { -v });
    }
}

/// Action of a single mode of any depth on a state.
pub fn apply_mode(cfg: &AlgebraConfig, k: ModeKey, s: &State) -> Result<State, VertexError> {
    let sector = s.sector();
    if !sector.admits(k.half()) {
        return Err(FockError::WrongLattice { mode: k.display(cfg), sector }.into());
    }
    let mut out = State::zero(sector);
    for (m, c) in s.iter() {
        act_monomial(cfg, sector, k, m, c, &mut out);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contraction_values() {
        let cfg = AlgebraConfig::new(1).unwrap();
        assert_eq!(contraction(&cfg, ModeKey::new(1, 3), ModeKey::new(2, -3)), Rational::from_int(-3));
        assert_eq!(contraction(&cfg, ModeKey::new(1, 2), ModeKey::new(1, -2)), Rational::ZERO);
        assert_eq!(contraction(&cfg, ModeKey::new(1, 0), ModeKey::new(2, 0)), Rational::ZERO);
    }

    #[test]
    fn annihilation_contracts() {
        let cfg = AlgebraConfig::new(1).unwrap();
        let s = State::from_modes(Sector::Untwisted, &[ModeKey::new(2, -1)]).unwrap();
        let r = apply_mode(&cfg, ModeKey::new(1, 1), &s).unwrap();
        assert_eq!(r, State::vacuum(Sector::Untwisted).scale(&Rational::from_int(-1)));
        let v = State::vacuum(Sector::Untwisted);
        assert!(apply_mode(&cfg, ModeKey::new(1, 2), &v).unwrap().is_zero());
        let c = apply_mode(&cfg, ModeKey::new(1, -1), &v).unwrap();
        assert_eq!(c, State::from_modes(Sector::Untwisted, &[ModeKey::new(1, -1)]).unwrap());
    }

    #[test]
    fn sign_from_position() {
        // f_1 e_{-2} f_{-1} 1 = -e_{-2} {f_1, f_{-1}} + ... = 0, and e_1 acting picks position 1.
        let cfg = AlgebraConfig::new(1).unwrap();
        let s = State::from_modes(Sector::Untwisted, &[ModeKey::new(1, -2), ModeKey::new(2, -1)]).unwrap();
        let r = apply_mode(&cfg, ModeKey::new(1, 1), &s).unwrap();
        let want = State::from_modes(Sector::Untwisted, &[ModeKey::new(1, -2)]).unwrap();
        assert_eq!(r, want);
    }

    #[test]
    fn wrong_lattice_rejected() {
        let cfg = AlgebraConfig::new(1).unwrap();
        assert!(apply_mode(&cfg, ModeKey::from_half(1, 1), &State::vacuum(Sector::Untwisted)).is_err());
    }
}
