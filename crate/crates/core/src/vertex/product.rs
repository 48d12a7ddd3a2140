use super::modes::act_monomial;
use super::VertexError;
use crate::fock::{AlgebraConfig, ModeKey, Monomial, Sector, State};
use crate::linalg::{binomial, Rational};

fn check_sectors(a: &State, b: &State) -> Result<(), VertexError> {
    if a.sector() != Sector::Untwisted {
        return Err(VertexError::NotVacuumSector(a.sector()));
    }
    if b.sector() == Sector::Twisted {
        return Err(VertexError::UnsupportedSector(Sector::Twisted));
    }
    Ok(())
}

fn apply_to_state(cfg: &AlgebraConfig, k: ModeKey, s: &State, coeff: &Rational) -> State {
    let mut out = State::zero(s.sector());
    for (m, c) in s.iter() {
        act_monomial(cfg, s.sector(), k, m, &(c * coeff), &mut out);
    }
    out
}

/// `a_{(n)} b`.
///
/// The field of a monomial `x^1_{-n_1} ... x^k_{-n_k} 1` is the normally
/// ordered product of the derivative fields `d^{(n_i - 1)} x^i(z)`, so the
/// coefficient of `z^{-n-1}` is a finite sum of normally ordered strings of
/// modes `x^i_{p_i}` with `sum (p_i + n_i) = n + 1`, weighted by
/// `prod C(-p_i - 1, n_i - 1)`.
pub fn nth_product(cfg: &AlgebraConfig, a: &State, n: i64, b: &State) -> Result<State, VertexError> {
    check_sectors(a, b)?;
    let mut out = State::zero(b.sector());
    for (ma, ca) in a.iter() {
        wick(cfg, ma, n, b, ca, &mut out);
    }
    Ok(out)
}

struct Wick<'a> {
    cfg: &'a AlgebraConfig,
    gens: Vec<u8>,
    depths: Vec<i64>,
    total: i64,
    zero_modes: bool,
}

fn wick(cfg: &AlgebraConfig, ma: &Monomial, n: i64, b: &State, coeff: &Rational, out: &mut State) {
    let gens: Vec<u8> = ma.modes().iter().map(|k| k.gen()).collect();
    let depths: Vec<i64> = ma.modes().iter().map(|k| -k.int_depth()).collect();
    let total = n + 1 - depths.iter().sum::<i64>();
    let w = Wick { cfg, gens, depths, total, zero_modes: b.sector() == Sector::ZeroExtended };
    let mut creations = Vec::new();
    w.step(ma.len() as i64 - 1, b.clone(), &mut creations, 0, coeff.clone(), out);
}

impl Wick<'_> {
    /// Fields `idx, idx-1, ..., 0` remain; annihilators are applied as they are
    /// chosen, creators are deferred (listed right to left).
    fn step(&self, idx: i64, state: State, creations: &mut Vec<usize>, ann_sum: i64, coeff: Rational, out: &mut State) {
        if state.is_zero() {
            return;
        }
        if idx < 0 {
            let rest = self.total - ann_sum;
            self.place_creations(&state, creations, rest, &coeff, out);
            return;
        }
        let i = idx as usize;
        let r = creations.len() as i64;
        // x^i as a creator: needs `rest <= -(r + 1 + creators still to come)`,
        // checked when placing.
        creations.push(i);
        self.step(idx - 1, state.clone(), creations, ann_sum, coeff.clone(), out);
        creations.pop();
        // x^i as an annihilator moves past the `r` creators already to its right.
        let sign = if r % 2 == 0 { Rational::ONE } else { Rational::from_int(-1) };
        let start = if self.zero_modes { 0 } else { 1 };
        let max_p = state.max_oscillator_half() as i64 / 2;
        for p in start..=max_p {
            let c = binomial(-p - 1, self.depths[i] - 1);
            if c.is_zero() {
                continue;
            }
            let k = ModeKey::new(self.gens[i], p);
            let next = apply_to_state(self.cfg, k, &state, &Rational::ONE);
            self.step(idx - 1, next, creations, ann_sum + p, &coeff * &c * &sign, out);
        }
    }

    fn place_creations(&self, state: &State, creations: &[usize], rest: i64, coeff: &Rational, out: &mut State) {
        let r = creations.len();
        if r == 0 {
            if rest == 0 {
                out.add_scaled(coeff, state);
            }
            return;
        }
        if rest > -(r as i64) {
            return;
        }
        // `creations` lists fields right to left, the order they act in.
        let mut ps = vec![0i64; r];
        self.compose(state, creations, 0, rest, &mut ps, coeff, out);
    }

    #[allow(clippy::too_many_arguments)]
    fn compose(
        &self,
        state: &State,
        creations: &[usize],
        j: usize,
        rest: i64,
        ps: &mut [i64],
        coeff: &Rational,
        out: &mut State,
    ) {
        let r = creations.len();
        if j + 1 == r {
            ps[j] = rest;
            let mut s = state.clone();
            let mut c = coeff.clone();
            for (t, &f) in creations.iter().enumerate() {
                c = c * binomial(-ps[t] - 1, self.depths[f] - 1);
                s = apply_to_state(self.cfg, ModeKey::new(self.gens[f], ps[t]), &s, &Rational::ONE);
                if s.is_zero() || c.is_zero() {
                    return;
                }
            }
            out.add_scaled(&c, &s);
            return;
        }
        let remaining = (r - j - 1) as i64;
        let mut p = -1;
        while rest - p <= -remaining {
            ps[j] = p;
            self.compose(state, creations, j + 1, rest - p, ps, coeff, out);
            p -= 1;
        }
    }
}

/// Reference implementation of `a_{(n)} b` by recursion on the length of
/// `a` through the Borcherds iterate formula
/// `(x_{(-m)} u)_{(n)} = sum_j (-1)^j C(-m, j) [x_{(-m-j)} u_{(n+j)} + (-1)^{m+1+|u|} u_{(n-m-j)} x_{(j)}]`.
pub fn nth_product_iterate(cfg: &AlgebraConfig, a: &State, n: i64, b: &State) -> Result<State, VertexError> {
    check_sectors(a, b)?;
    let mut out = State::zero(b.sector());
    for (ma, ca) in a.iter() {
        let t = iterate_monomial(cfg, ma, n, b);
        out.add_scaled(ca, &t);
    }
    Ok(out)
}

fn weight_bound(s: &State) -> i64 {
    s.max_oscillator_half() as i64 / 2
}

fn iterate_monomial(cfg: &AlgebraConfig, ma: &Monomial, n: i64, b: &State) -> State {
    if b.is_zero() {
        return State::zero(b.sector());
    }
    let Some(x) = ma.first() else {
        return if n == -1 { b.clone() } else { State::zero(b.sector()) };
    };
    let m = -x.int_depth();
    let u = ma.tail();
    let u_weight = u.oscillator_half() as i64 / 2;
    let u_parity = u.len() as i64;
    let bw = weight_bound(b);
    let zero_ok = b.sector() == Sector::ZeroExtended;
    let mut out = State::zero(b.sector());
    let jmax = (u_weight + bw - n).max(bw).max(0);
    for j in 0..=jmax {
        let c = binomial(-m, j);
        if c.is_zero() {
            continue;
        }
        let c = if j % 2 == 0 { c } else { -c };
        // x_{(-m-j)} u_{(n+j)} b
        if n + j < u_weight + bw {
            let ub = iterate_monomial(cfg, &u, n + j, b);
            if !ub.is_zero() {
                let t = apply_to_state(cfg, ModeKey::new(x.gen(), -m - j), &ub, &Rational::ONE);
                out.add_scaled(&c, &t);
            }
        }
        // (-1)^{m+1+|u|} u_{(n-m-j)} x_{(j)} b
        if j <= bw && (j > 0 || zero_ok) {
            let xb = apply_to_state(cfg, ModeKey::new(x.gen(), j), b, &Rational::ONE);
            if !xb.is_zero() {
                let t = iterate_monomial(cfg, &u, n - m - j, &xb);
                let s = if (m + 1 + u_parity) % 2 == 0 { c.clone() } else { -&c };
                out.add_scaled(&s, &t);
            }
        }
    }
    out
}

/// `L(n) s = omega_{(n+1)} s`.
pub fn virasoro(cfg: &AlgebraConfig, n: i64, s: &State) -> Result<State, VertexError> {
    nth_product(cfg, &super::generators::omega(cfg), n + 1, s)
}

/// Zero-mode action `o(a) = a_{(wt a - 1)}` of a homogeneous `a`.
pub fn zero_mode(cfg: &AlgebraConfig, a: &State, b: &State) -> Result<State, VertexError> {
    if a.is_zero() {
        return Ok(State::zero(b.sector()));
    }
    let w = a.weight(cfg)?;
    let wt = w.to_i64_pair().map(|(p, _)| p).unwrap_or(0);
    nth_product(cfg, a, wt - 1, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertex::generators::omega;

    fn st(modes: &[(u8, i64)]) -> State {
        let ks: Vec<ModeKey> = modes.iter().map(|&(g, n)| ModeKey::new(g, n)).collect();
        State::from_modes(Sector::Untwisted, &ks).unwrap()
    }

    #[test]
    fn omega_products() {
        for d in 1..=3 {
            let cfg = AlgebraConfig::new(d).unwrap();
            let w = omega(&cfg);
            assert_eq!(nth_product(&cfg, &w, 1, &w).unwrap(), w.scale(&Rational::from_int(2)));
            let vac = State::vacuum(Sector::Untwisted);
            assert_eq!(nth_product(&cfg, &w, 3, &w).unwrap(), vac.scale(&Rational::from_int(-(d as i64))));
        }
    }

    #[test]
    fn vacuum_is_unit() {
        let cfg = AlgebraConfig::new(1).unwrap();
        let b = st(&[(1, -2), (2, -1)]);
        let vac = State::vacuum(Sector::Untwisted);
        assert_eq!(nth_product(&cfg, &vac, -1, &b).unwrap(), b);
        assert!(nth_product(&cfg, &vac, 0, &b).unwrap().is_zero());
        assert_eq!(nth_product(&cfg, &b, -1, &vac).unwrap(), b);
    }

    #[test]
    fn generator_products() {
        let cfg = AlgebraConfig::new(1).unwrap();
        let e = st(&[(1, -1)]);
        let f = st(&[(2, -1)]);
        let vac = State::vacuum(Sector::Untwisted);
        assert_eq!(nth_product(&cfg, &e, 1, &f).unwrap(), vac.scale(&Rational::from_int(-1)));
        assert_eq!(nth_product(&cfg, &f, 1, &e).unwrap(), vac);
        assert_eq!(nth_product(&cfg, &e, -2, &f).unwrap(), st(&[(1, -2), (2, -1)]));
    }

    #[test]
    fn wick_matches_iterate() {
        let cfg = AlgebraConfig::new(2).unwrap();
        let samples = [
            st(&[(1, -1), (3, -1)]),
            st(&[(1, -2), (2, -1)]),
            st(&[(1, -3), (4, -1)]),
            st(&[(1, -2), (3, -1), (2, -1), (4, -1)]),
            st(&[(3, -2), (2, -2)]),
        ];
        for a in &samples {
            for b in &samples {
                for n in -3..=4 {
                    let x = nth_product(&cfg, a, n, b).unwrap();
                    let y = nth_product_iterate(&cfg, a, n, b).unwrap();
                    assert_eq!(x, y, "a={a:?} n={n} b={b:?}");
                }
            }
        }
    }

    #[test]
    fn h11_on_h12() {
        // d = 2: e1=1, e2=2, f1=3, f2=4
        let cfg = AlgebraConfig::new(2).unwrap();
        let h11 = st(&[(1, -1), (3, -1)]);
        let h12 = st(&[(1, -1), (4, -1)]);
        let r = nth_product(&cfg, &h11, -1, &h12).unwrap();
        let lead = st(&[(1, -3), (4, -1)]);
        assert_eq!(r.coeff(lead.iter().next().unwrap().0), Rational::ONE);
    }

    #[test]
    fn twisted_right_operand_rejected() {
        let cfg = AlgebraConfig::new(1).unwrap();
        let w = omega(&cfg);
        assert!(nth_product(&cfg, &w, 1, &State::vacuum(Sector::Twisted)).is_err());
    }
}
