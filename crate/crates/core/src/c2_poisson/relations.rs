use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::bd::BdSet;
use super::slice::C2Context;
use super::{poisson_bracket, poisson_power, poisson_product, C2Error};
use crate::fock::{enumerate_half, ModeKey, Monomial, Parity, Sector, State};
use crate::linalg::{binomial, factorial, Echelon, Rational};
use crate::vertex::checks::random_state;
use crate::vertex::{b_state, omega, GenKind, Quadratic};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationId {
    Bmn1,
    Bmn2,
    Efef,
    E6,
    E9,
    L1,
    L2,
    Cor42,
    Prop43,
    H11Fourth,
}

impl RelationId {
    pub const ALL: [RelationId; 10] = [
        RelationId::Bmn1,
        RelationId::Bmn2,
        RelationId::Efef,
        RelationId::E6,
        RelationId::E9,
        RelationId::L1,
        RelationId::L2,
        RelationId::Cor42,
        RelationId::Prop43,
        RelationId::H11Fourth,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            RelationId::Bmn1 => "bmn1",
            RelationId::Bmn2 => "bmn2",
            RelationId::Efef => "efef",
            RelationId::E6 => "e6",
            RelationId::E9 => "e9",
            RelationId::L1 => "l1",
            RelationId::L2 => "l2",
            RelationId::Cor42 => "cor42",
            RelationId::Prop43 => "prop43",
            RelationId::H11Fourth => "h11_4",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|r| r.name() == s)
    }

    fn min_rank(&self) -> u32 {
        match self {
            RelationId::L1 | RelationId::L2 | RelationId::Cor42 => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationFailure {
    pub instance: String,
    pub residual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationOutcome {
    pub id: String,
    pub checked: usize,
    pub failures: Vec<RelationFailure>,
    /// Set when the relation does not apply at this rank.
    pub not_applicable: Option<String>,
}

impl RelationOutcome {
    fn new(id: &str) -> Self {
        Self { id: id.to_string(), checked: 0, failures: Vec::new(), not_applicable: None }
    }

    pub fn pass(&self) -> bool {
        self.not_applicable.is_some() || (self.checked > 0 && self.failures.is_empty())
    }

    /// Records `lhs == rhs` modulo `C_2`.
    pub fn check(
        &mut self,
        ctx: &mut C2Context,
        instance: impl FnOnce() -> String,
        lhs: &State,
        rhs: &State,
    ) -> Result<bool, C2Error> {
        self.checked += 1;
        let q = ctx.quotient_coords(&lhs.minus(rhs))?;
        if q.is_zero() {
            return Ok(true);
        }
        let flat = ctx.flatten(&q)?;
        let residual = flat.entries().iter().map(|(j, c)| format!("{j}:{c}")).collect::<Vec<_>>().join(" ");
        self.failures.push(RelationFailure { instance: instance(), residual });
        Ok(false)
    }
}

fn h(ctx: &C2Context, i: u32, j: u32) -> State {
    Quadratic::new(GenKind::SmallH, i, j).state(ctx.cfg())
}

fn pair(a: u8, ma: i64, b: u8, mb: i64) -> State {
    State::from_modes(Sector::Untwisted, &[ModeKey::new(a, -ma), ModeKey::new(b, -mb)]).expect("creation modes")
}

fn r(n: i64) -> Rational {
    Rational::from_int(n)
}

/// Product of several states in the quotient.
pub fn product_of(ctx: &C2Context, factors: &[&State]) -> Result<State, C2Error> {
    let mut acc = State::vacuum(Sector::Untwisted);
    for f in factors.iter().rev() {
        acc = poisson_product(ctx, f, &acc)?;
    }
    Ok(acc)
}

/// `e^1_{-1} f^1_{-1} ... e^d_{-1} f^d_{-1} 1`.
pub fn top_state(ctx: &C2Context) -> State {
    let cfg = ctx.cfg();
    let modes: Vec<ModeKey> =
        (1..=cfg.d()).flat_map(|i| [ModeKey::new(cfg.e(i), -1), ModeKey::new(cfg.f(i), -1)]).collect();
    State::from_modes(Sector::Untwisted, &modes).expect("creation modes")
}

/// Checks one relation family over modes `1..=max_mode`.
pub fn relation_suite(ctx: &mut C2Context, id: RelationId, max_mode: i64) -> Result<RelationOutcome, C2Error> {
    let cfg = *ctx.cfg();
    let d = cfg.d();
    let n = cfg.num_generators();
    let mut out = RelationOutcome::new(id.name());
    if d < id.min_rank() {
        out.not_applicable = Some(format!("requires d >= {}", id.min_rank()));
        return Ok(out);
    }
    match id {
        RelationId::Bmn1 | RelationId::Bmn2 => {
            for a in 1..=n {
                for b in 1..=n {
                    for m in 1..=max_mode {
                        for k in 1..=max_mode {
                            let lhs = b_state(&[m, k], &[a, b]);
                            let (rhs, label) = if id == RelationId::Bmn1 {
                                let sign = if (k - 1) % 2 == 0 { 1 } else { -1 };
                                (b_state(&[m + k - 1, 1], &[a, b]).scale(&r(sign)), "B(a,b) = ±B_{m+n-1,1}(a,b)")
                            } else {
                                let sign = if (m + k - 1) % 2 == 0 { 1 } else { -1 };
                                (b_state(&[m, k], &[b, a]).scale(&r(sign)), "B(a,b) = ±B(b,a)")
                            };
                            let name = |g| cfg.gen_name(g);
                            out.check(ctx, || format!("{label} a={} b={} m={m} n={k}", name(a), name(b)), &lhs, &rhs)?;
                        }
                    }
                }
            }
        }
        RelationId::Efef => {
            for i in 1..=d {
                for m in 1..=max_mode {
                    for k in 1..=max_mode {
                        let (e, f) = (cfg.e(i), cfg.f(i));
                        let lhs = poisson_product(ctx, &pair(e, m, f, 1), &pair(e, k, f, 1))?;
                        let c = r(m * k) * (Rational::new(1, m + 1) + Rational::new(1, k + 1)) * binomial(m + k, k);
                        let rhs = pair(e, m + k + 1, f, 1).scale(&c);
                        out.check(ctx, || format!("i={i} m={m} k={k}"), &lhs, &rhs)?;
                    }
                }
            }
        }
        RelationId::E6 | RelationId::E9 => {
            for i in 1..=d {
                let lhs =
                    if id == RelationId::E6 { pair(cfg.e(i), 6, cfg.e(i), 1) } else { pair(cfg.e(i), 9, cfg.f(i), 1) };
                out.check(ctx, || format!("i={i}"), &lhs, &State::zero(Sector::Untwisted))?;
            }
        }
        RelationId::L1 | RelationId::L2 => {
            for i in 1..=d {
                for j in i + 1..=d {
                    let (hi, hj) = (h(ctx, i, i), h(ctx, j, j));
                    if id == RelationId::L1 {
                        let x = hi.minus(&hj);
                        let lhs = poisson_power(ctx, &x, 3)?;
                        out.check(ctx, || format!("i={i} j={j}"), &lhs, &State::zero(Sector::Untwisted))?;
                    } else {
                        let x = hi.plus(&hj);
                        let lhs = poisson_power(ctx, &x, 3)?;
                        let rhs = product_of(ctx, &[&x, &hi, &hj])?.scale(&r(12));
                        out.check(ctx, || format!("i={i} j={j}"), &lhs, &rhs)?;
                    }
                }
            }
        }
        RelationId::Cor42 => {
            for i in 1..=d {
                for j in i + 1..=d {
                    let lhs = poisson_power(ctx, &h(ctx, i, i), 4)?;
                    let rhs = poisson_power(ctx, &h(ctx, j, j), 4)?;
                    out.check(ctx, || format!("h{i}{i}^4 = h{j}{j}^4"), &lhs, &rhs)?;
                    let lhs = pair(cfg.e(i), 7, cfg.f(i), 1);
                    let rhs = pair(cfg.e(j), 7, cfg.f(j), 1);
                    out.check(ctx, || format!("e{i}_(-7)f{i} = e{j}_(-7)f{j}"), &lhs, &rhs)?;
                }
            }
        }
        RelationId::H11Fourth => {
            let lhs = poisson_power(ctx, &h(ctx, 1, 1), 4)?;
            let rhs = pair(cfg.e(1), 7, cfg.f(1), 1).scale(&r(360));
            out.check(ctx, || "h11^4 = 360 e1_(-7)f1".into(), &lhs, &rhs)?;
        }
        RelationId::Prop43 => {
            let set = BdSet::new(&cfg);
            for w in 2..=2 * max_mode {
                let listed: Vec<&State> = set
                    .iter()
                    .filter(|e| e.weight == w && e.state.iter().all(|(m, _)| m.len() == 2))
                    .map(|e| &e.state)
                    .collect();
                let all: Vec<Monomial> = enumerate_half(&cfg, Sector::Untwisted, 2 * w as i32, Parity::Even)
                    .into_iter()
                    .filter(|m| m.len() == 2)
                    .collect();
                let width = ctx.quotient_dim(w)?;
                let mut ech: Echelon<Rational> = Echelon::new(width);
                for s in &listed {
                    let q = ctx.quotient_coords(s)?;
                    ech.insert(&ctx.flatten(&q)?);
                }
                let mut missing = None;
                for m in &all {
                    let q = ctx.quotient_coords(&State::monomial(Sector::Untwisted, m.clone()))?;
                    if !ech.contains(&ctx.flatten(&q)?) {
                        missing = Some(m.display(&cfg));
                        break;
                    }
                }
                out.checked += 1;
                if let Some(m) = missing {
                    out.failures.push(RelationFailure {
                        instance: format!("weight {w}"),
                        residual: format!("{m} not in span"),
                    });
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct PowerRow {
    pub k: u32,
    pub weight: i64,
    pub vanishes: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NilpotencyReport {
    pub d: u32,
    pub degree: Option<u32>,
    pub expected: u32,
    pub powers: Vec<PowerRow>,
    pub witness: Option<RelationOutcome>,
}

impl NilpotencyReport {
    pub fn pass(&self) -> bool {
        self.degree == Some(self.expected) && self.witness.as_ref().is_none_or(|w| w.pass())
    }
}

/// Coefficients `(c, t)` in `omega^4 = c h11^4 + t top`.
pub fn omega_fourth_witness(d: u32) -> Option<(Rational, Rational)> {
    match d {
        1 => Some((r(1), r(0))),
        2 => Some((Rational::new(16, 5), r(0))),
        3 => Some((Rational::new(37, 5), r(0))),
        4 => Some((Rational::new(72, 5), r(24))),
        _ => None,
    }
}

/// Least `k` with `omega^k` in `C_2`, searching up to `max_k`.
pub fn nilpotency_degree(ctx: &mut C2Context, max_k: u32) -> Result<NilpotencyReport, C2Error> {
    let d = ctx.cfg().d();
    let w = omega(ctx.cfg());
    let mut report = NilpotencyReport {
        d,
        degree: None,
        expected: if d <= 4 { 5 } else { d + 1 },
        powers: Vec::new(),
        witness: None,
    };
    let mut acc = State::vacuum(Sector::Untwisted);
    for k in 1..=max_k {
        acc = poisson_product(ctx, &w, &acc)?;
        let vanishes = acc.is_zero() || ctx.quotient_coords(&acc)?.is_zero();
        report.powers.push(PowerRow { k, weight: 2 * k as i64, vanishes });
        if k == 4 {
            if let Some((c, t)) = omega_fourth_witness(d) {
                let mut out = RelationOutcome::new("omega4_witness");
                let h4 = poisson_power(ctx, &h(ctx, 1, 1), 4)?;
                let rhs = h4.scale(&c).plus(&top_state(ctx).scale(&t));
                out.check(ctx, || format!("omega^4 = {c} h11^4 + {t} top"), &acc, &rhs)?;
                report.witness = Some(out);
            }
        }
        if vanishes {
            report.degree = Some(k);
            break;
        }
    }
    Ok(report)
}

/// Checks `omega^d = coeff * top` and that a non-uniform product of the `h^{ii}` vanishes.
pub fn omega_power_identity(ctx: &mut C2Context, coeff: &Rational) -> Result<RelationOutcome, C2Error> {
    let d = ctx.cfg().d();
    let mut out = RelationOutcome::new("omega_power");
    let lhs = poisson_power(ctx, &omega(ctx.cfg()), d)?;
    let rhs = top_state(ctx).scale(coeff);
    out.check(ctx, || format!("omega^{d} = {coeff} top"), &lhs, &rhs)?;
    if d >= 2 {
        let mut hs: Vec<State> = (1..=d).map(|i| h(ctx, i, i)).collect();
        hs[d as usize - 1] = h(ctx, 1, 1);
        let refs: Vec<&State> = hs.iter().collect();
        let cross = product_of(ctx, &refs)?;
        out.check(
            ctx,
            || format!("h11^2 h22..h{0}{0} without h{d}{d} = 0", d - 1),
            &cross,
            &State::zero(Sector::Untwisted),
        )?;
    }
    Ok(out)
}

/// `d!`, the expected coefficient in [`omega_power_identity`].
pub fn omega_power_coefficient(d: u32) -> Rational {
    factorial(d)
}

/// Random checks of commutativity, Leibniz and Jacobi modulo `C_2`, plus centrality of `omega`.
pub fn poisson_axioms_check(
    ctx: &mut C2Context,
    samples: usize,
    max_weight: i64,
    seed: u64,
) -> Result<Vec<RelationOutcome>, C2Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = *ctx.cfg();
    let pick = |rng: &mut ChaCha8Rng| loop {
        let w = rand::Rng::gen_range(rng, 0..=max_weight);
        if let Some(s) = random_state(&cfg, rng, w, Parity::Even) {
            return s;
        }
    };
    let mut comm = RelationOutcome::new("commutativity");
    let mut leib = RelationOutcome::new("leibniz");
    let mut jac = RelationOutcome::new("jacobi");
    for t in 0..samples {
        let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let ab = poisson_product(ctx, &a, &b)?;
        let ba = poisson_product(ctx, &b, &a)?;
        comm.check(ctx, || format!("sample {t}"), &ab, &ba)?;
        let lhs = poisson_bracket(ctx, &a, &poisson_product(ctx, &b, &c)?)?;
        let rhs = poisson_product(ctx, &poisson_bracket(ctx, &a, &b)?, &c)?.plus(&poisson_product(
            ctx,
            &b,
            &poisson_bracket(ctx, &a, &c)?,
        )?);
        leib.check(ctx, || format!("sample {t}"), &lhs, &rhs)?;
        let lhs = poisson_bracket(ctx, &a, &poisson_bracket(ctx, &b, &c)?)?;
        let rhs = poisson_bracket(ctx, &poisson_bracket(ctx, &a, &b)?, &c)?.plus(&poisson_bracket(
            ctx,
            &b,
            &poisson_bracket(ctx, &a, &c)?,
        )?);
        jac.check(ctx, || format!("sample {t}"), &lhs, &rhs)?;
    }
    Ok(vec![comm, leib, jac])
}

/// `omega_{(0)} s` lies in `C_2` for random even `s`.
pub fn omega_central_check(
    ctx: &mut C2Context,
    samples: usize,
    max_weight: i64,
    seed: u64,
) -> Result<RelationOutcome, C2Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = *ctx.cfg();
    let w = omega(&cfg);
    let mut out = RelationOutcome::new("omega_central");
    let mut t = 0;
    while t < samples {
        let wt = rand::Rng::gen_range(&mut rng, 0..=max_weight);
        let Some(s) = random_state(&cfg, &mut rng, wt, Parity::Even) else { continue };
        let lhs = poisson_bracket(ctx, &w, &s)?;
        out.check(ctx, || s.display(&cfg), &lhs, &State::zero(Sector::Untwisted))?;
        t += 1;
    }
    Ok(out)
}
