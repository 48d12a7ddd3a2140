//! Zero modes of quadratic states on the tops of the theta-twisted modules.
//!
//! For `a = x_{-m-1} y_{-n-1} 1` the twisted field is the twisted normal-ordered product of
//! `d^{(m)} x` and `d^{(n)} y` plus the scalar `<x, y> c_{mn} z^{-m-n-2}`, where `c_{mn}` is the
//! Taylor coefficient at `z = w = 1` of the difference between the twisted and untwisted
//! propagators, `(z + w) / (2 sqrt(zw) (z - w)^2) - 1 / (z - w)^2`.

use super::ZhuError;
use crate::fock::{AlgebraConfig, GradedBasis, ModeKey, Monomial, Sector, State};
use crate::linalg::{binomial, MatrixQ, Rational};
use crate::vertex::{apply_mode, VertexError};

/// `C(x, k)` for rational `x`.
fn rbinom(x: &Rational, k: i64) -> Rational {
    (0..k).fold(Rational::ONE, |acc, i| acc * (x - &Rational::from_int(i)) / Rational::from_int(i + 1))
}

fn series_mul(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::ZERO; n];
    for (i, x) in a.iter().enumerate().take(n) {
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += &(x * y);
        }
    }
    out
}

fn series_inv(a: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::ZERO; n];
    let a0 = a[0].recip();
    out[0] = a0.clone();
    for k in 1..n {
        let mut s = Rational::ZERO;
        for j in 1..=k.min(a.len() - 1) {
            s += &(&a[j] * &out[k - j]);
        }
        out[k] = -(s * &a0);
    }
    out
}

/// Taylor coefficients at `t = 1` of `G(t) = 1 / (2 sqrt(t) (1 + sqrt(t))^2)`.
fn g_series(n: usize) -> Vec<Rational> {
    let half = Rational::new(1, 2);
    let s: Vec<Rational> = (0..n as i64).map(|k| rbinom(&half, k)).collect();
    let mut one_plus_s = s.clone();
    one_plus_s[0] += &Rational::ONE;
    let denom = series_mul(&series_mul(&s, &one_plus_s, n), &one_plus_s, n);
    series_inv(&denom, n).into_iter().map(|x| x * &half).collect()
}

/// `c_{mn}`: coefficient of `p^m q^n` in `(1+p)^{-2} G((1+q)/(1+p))`.
pub fn propagator_correction(m: i64, n: i64) -> Rational {
    let g = g_series((m + n + 1) as usize);
    let mut c = Rational::ZERO;
    for k in n..=m + n {
        let sign = if (k - n) % 2 == 0 { 1 } else { -1 };
        c += &(&g[k as usize] * &binomial(k, n) * Rational::from_int(sign) * binomial(-k - 2, m + n - k));
    }
    c
}

/// Coefficient of `x_r` in `d^{(m)} x(z) = sum_r C(-r-1, m) x_r z^{-r-1-m}`.
fn deriv_coeff(half: i32, m: i64) -> Rational {
    rbinom(&(Rational::new(-(half as i64), 2) - Rational::ONE), m)
}

fn zero_mode_quadratic(cfg: &AlgebraConfig, mono: &Monomial, v: &State) -> Result<State, VertexError> {
    let (x, y) = (mono.modes()[0], mono.modes()[1]);
    let (m, n) = (-x.int_depth() - 1, -y.int_depth() - 1);
    let mut out = v.scale(&(propagator_correction(m, n) * Rational::from_int(cfg.pairing(x.gen(), y.gen()))));
    let reach = 2 * v.max_oscillator_half() + 1;
    for h in (1..=reach).step_by(2) {
        // x_{-r} y_r, then -y_{-r} x_r (annihilators to the right).
        let c1 = deriv_coeff(-h, m) * deriv_coeff(h, n);
        let t = apply_mode(cfg, ModeKey::from_half(x.gen(), -h), &apply_mode(cfg, ModeKey::from_half(y.gen(), h), v)?)?;
        out.add_scaled(&c1, &t);
        let c2 = deriv_coeff(h, m) * deriv_coeff(-h, n);
        let t = apply_mode(cfg, ModeKey::from_half(y.gen(), -h), &apply_mode(cfg, ModeKey::from_half(x.gen(), h), v)?)?;
        out.add_scaled(&(-c2), &t);
    }
    Ok(out)
}

/// Top of a twisted module: `1_theta`, or `e^k_{-1/2} 1_theta, f^k_{-1/2} 1_theta`.
pub fn twisted_top(cfg: &AlgebraConfig, minus: bool) -> GradedBasis {
    if !minus {
        return GradedBasis::new(Sector::Twisted, 0, vec![Monomial::vacuum()]);
    }
    let ms = (1..=cfg.num_generators())
        .map(|g| {
            let s = State::from_modes(Sector::Twisted, &[ModeKey::from_half(g, -1)]).expect("creation mode");
            let m = s.iter().next().unwrap().0.clone();
            m
        })
        .collect();
    GradedBasis::new(Sector::Twisted, 1, ms)
}

/// `o(a)` on a twisted top, for `a` a combination of length-two monomials (and the vacuum).
pub fn twisted_matrix(cfg: &AlgebraConfig, minus: bool, a: &State) -> Result<MatrixQ, ZhuError> {
    let basis = twisted_top(cfg, minus);
    let n = basis.len();
    let mut out = MatrixQ::zero(n, n);
    for (col, b) in basis.monomials().iter().enumerate() {
        let v = State::monomial(Sector::Twisted, b.clone());
        let mut image = State::zero(Sector::Twisted);
        for (mono, c) in a.iter() {
            match mono.len() {
                0 => image.add_scaled(c, &v),
                2 => image.add_scaled(c, &zero_mode_quadratic(cfg, mono, &v)?),
                _ => {
                    return Err(ZhuError::Twisted { module: if minus { "SFtheta_minus" } else { "SFtheta_plus" } });
                }
            }
        }
        let coords = basis.coords(&image).ok_or(ZhuError::Twisted { module: "twisted top" })?;
        for (row, x) in coords.entries() {
            out.set(*row as usize, col, x.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_correction_is_one_eighth() {
        assert_eq!(propagator_correction(0, 0), Rational::new(1, 8));
    }

    #[test]
    fn correction_matches_finite_difference_symmetry() {
        // g(z, w) is symmetric, so c_{mn} = c_{nm}.
        for m in 0..4 {
            for n in 0..4 {
                assert_eq!(propagator_correction(m, n), propagator_correction(n, m), "{m} {n}");
            }
        }
    }
}
