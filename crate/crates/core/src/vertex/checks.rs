use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::modes::apply_mode;
use super::product::{nth_product, virasoro};
use super::VertexError;
use crate::fock::{enumerate_half, AlgebraConfig, ModeKey, Monomial, Parity, Sector, State};
use crate::linalg::{binomial, factorial, Rational};

const MAX_FAILURES: usize = 5;

/// Outcome of an exhaustive or sampled identity check.
#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), ..Self::default() }
    }

    pub fn pass(&self) -> bool {
        self.checked > 0 && self.failures.is_empty()
    }

    pub fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < MAX_FAILURES {
            self.failures.push(what());
        }
    }
}

/// Untwisted basis monomials of oscillator weight `<= max_weight`, both parities.
pub fn states_up_to(cfg: &AlgebraConfig, max_weight: i64) -> Vec<State> {
    (0..=max_weight)
        .flat_map(|w| enumerate_half(cfg, Sector::Untwisted, 2 * w as i32, Parity::All))
        .map(|m| State::monomial(Sector::Untwisted, m))
        .collect()
}

/// `[x_lambda y] = c * lambda` with `c(e^i, f^i) = -1`, `c(f^i, e^i) = 1`.
fn lambda_coefficient(d: u32, a: u8, b: u8) -> i64 {
    let d = d as u8;
    let (ea, eb) = (a <= d, b <= d);
    let (ia, ib) = (if ea { a } else { a - d }, if eb { b } else { b - d });
    if ia != ib || ea == eb {
        0
    } else if ea {
        -1
    } else {
        1
    }
}

/// Checks that the mode action realizes `{x_m, y_n} = m c(x, y) delta_{m+n,0}`
/// on every state of weight `<= max_weight`, for `|m|, |n| <= max_depth`.
pub fn lambda_bracket_check(cfg: &AlgebraConfig, max_depth: i64, max_weight: i64) -> Result<CheckReport, VertexError> {
    let mut report = CheckReport::new("lambda-bracket");
    let states = states_up_to(cfg, max_weight);
    let g = cfg.num_generators();
    for s in &states {
        for x in 1..=g {
            for m in -max_depth..=max_depth {
                let xs = apply_mode(cfg, ModeKey::new(x, m), s)?;
                for y in 1..=g {
                    for n in -max_depth..=max_depth {
                        let ky = ModeKey::new(y, n);
                        let lhs = apply_mode(cfg, ModeKey::new(x, m), &apply_mode(cfg, ky, s)?)?
                            .plus(&apply_mode(cfg, ky, &xs)?);
                        let c = if m + n == 0 { m * lambda_coefficient(cfg.d(), x, y) } else { 0 };
                        let rhs = s.scale(&Rational::from_int(c));
                        report.record(lhs == rhs, || {
                            format!(
                                "{{{}, {}}} on {}",
                                ModeKey::new(x, m).display(cfg),
                                ky.display(cfg),
                                s.display(cfg)
                            )
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

/// `[L(m), L(n)] = (m - n) L(m + n) + delta_{m+n,0} (m^3 - m)/12 * c` with `c = -2d`,
/// on all states of weight `<= max_weight`, `|m|, |n| <= range`.
pub fn virasoro_check(cfg: &AlgebraConfig, max_weight: i64, range: i64) -> Result<CheckReport, VertexError> {
    let mut report = CheckReport::new("virasoro");
    let c = Rational::from_int(-2 * cfg.d() as i64);
    for s in states_up_to(cfg, max_weight) {
        let single: Vec<State> = (-range..=range).map(|n| virasoro(cfg, n, &s)).collect::<Result<_, _>>()?;
        for m in -range..=range {
            for n in -range..=range {
                let lm_ln = virasoro(cfg, m, &single[(n + range) as usize])?;
                let ln_lm = virasoro(cfg, n, &single[(m + range) as usize])?;
                let mut rhs = virasoro(cfg, m + n, &s)?.scale(&Rational::from_int(m - n));
                if m + n == 0 {
                    rhs.add_scaled(&(&c * &Rational::new(m * m * m - m, 12)), &s);
                }
                report.record(lm_ln.minus(&ln_lm) == rhs, || format!("[L({m}), L({n})] on {}", s.display(cfg)));
            }
        }
    }
    Ok(report)
}

fn parity(s: &State) -> i64 {
    s.parity().unwrap_or(0) as i64
}

fn weight_of(s: &State) -> i64 {
    s.max_oscillator_half() as i64 / 2
}

/// `[a_{(m)}, b_{(n)}]_+- = sum_k C(m, k) (a_{(k)} b)_{(m+n-k)}` as operators on
/// states of weight `<= max_weight`.
pub fn commutator_check(
    cfg: &AlgebraConfig,
    pairs: &[(String, State, State)],
    range: i64,
    max_weight: i64,
) -> Result<CheckReport, VertexError> {
    let mut report = CheckReport::new("commutator-formula");
    let states = states_up_to(cfg, max_weight);
    for (name, a, b) in pairs {
        let sign = if parity(a) * parity(b) % 2 == 1 { Rational::ONE } else { Rational::from_int(-1) };
        let kmax = weight_of(a) + weight_of(b);
        let products: Vec<State> = (0..kmax).map(|k| nth_product(cfg, a, k, b)).collect::<Result<_, _>>()?;
        for s in &states {
            for m in -range..=range {
                for n in -range..=range {
                    let ab = nth_product(cfg, a, m, &nth_product(cfg, b, n, s)?)?;
                    let ba = nth_product(cfg, b, n, &nth_product(cfg, a, m, s)?)?;
                    let mut lhs = ab;
                    lhs.add_scaled(&sign, &ba);
                    let mut rhs = State::zero(Sector::Untwisted);
                    for (k, p) in products.iter().enumerate() {
                        let c = binomial(m, k as i64);
                        if !c.is_zero() && !p.is_zero() {
                            rhs.add_scaled(&c, &nth_product(cfg, p, m + n - k as i64, s)?);
                        }
                    }
                    report.record(lhs == rhs, || format!("{name}: m={m} n={n} on {}", s.display(cfg)));
                }
            }
        }
    }
    Ok(report)
}

/// A random homogeneous state of oscillator weight `w` and the given parity.
pub fn random_state(cfg: &AlgebraConfig, rng: &mut impl Rng, w: i64, parity: Parity) -> Option<State> {
    let basis: Vec<Monomial> = enumerate_half(cfg, Sector::Untwisted, 2 * w as i32, parity);
    if basis.is_empty() {
        return None;
    }
    let mut s = State::zero(Sector::Untwisted);
    for _ in 0..rng.gen_range(1..=3) {
        let m = basis[rng.gen_range(0..basis.len())].clone();
        let c = rng.gen_range(-3i64..=3);
        s.add_term(m, Rational::from_int(if c == 0 { 1 } else { c }));
    }
    (!s.is_zero()).then_some(s)
}

/// Skew-symmetry `a_{(n)} b = -(-1)^{|a||b|} sum_j (-1)^{n+j} L(-1)^j / j! (b_{(n+j)} a)`
/// on random homogeneous pairs of weight `<= max_weight`, `-3 <= n <= 3`.
pub fn skew_symmetry_check(
    cfg: &AlgebraConfig,
    samples: usize,
    max_weight: i64,
    seed: u64,
) -> Result<CheckReport, VertexError> {
    let mut report = CheckReport::new("skew-symmetry");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while report.checked < samples {
        let pa = if rng.gen_bool(0.5) { Parity::Even } else { Parity::Odd };
        let pb = if rng.gen_bool(0.5) { Parity::Even } else { Parity::Odd };
        let (wa, wb) = (rng.gen_range(0..=max_weight), rng.gen_range(0..=max_weight));
        let (Some(a), Some(b)) = (random_state(cfg, &mut rng, wa, pa), random_state(cfg, &mut rng, wb, pb)) else {
            continue;
        };
        let n = rng.gen_range(-3i64..=3);
        let lhs = nth_product(cfg, &a, n, &b)?;
        let sign = if parity(&a) * parity(&b) % 2 == 1 { 1 } else { -1 };
        let mut rhs = State::zero(Sector::Untwisted);
        let jmax = (weight_of(&a) + weight_of(&b) - n).max(0);
        for j in 0..=jmax {
            let mut t = nth_product(cfg, &b, n + j, &a)?;
            for _ in 0..j {
                t = virasoro(cfg, -1, &t)?;
            }
            let s = if (n + j) % 2 == 0 { sign } else { -sign };
            rhs.add_scaled(&(Rational::from_int(s) / factorial(j as u32)), &t);
        }
        report.record(lhs == rhs, || format!("a={} n={n} b={}", a.display(cfg), b.display(cfg)));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rank_checks() {
        let cfg = AlgebraConfig::new(1).unwrap();
        assert!(lambda_bracket_check(&cfg, 3, 3).unwrap().pass());
        assert!(virasoro_check(&cfg, 3, 2).unwrap().pass());
        assert!(skew_symmetry_check(&cfg, 10, 3, 7).unwrap().pass());
    }

    #[test]
    fn flipped_pairing_fails() {
        let cfg = AlgebraConfig::new(1).unwrap().with_flipped_pairing();
        let r = lambda_bracket_check(&cfg, 2, 2).unwrap();
        assert!(!r.pass());
        assert!(!r.failures.is_empty());
    }
}
