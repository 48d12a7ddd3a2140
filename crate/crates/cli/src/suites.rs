use std::path::PathBuf;

use symfer::c2_poisson::{
    expected_total, expected_weights_d1, graded_dims_with, min_max_weight, nilpotency_degree, omega_power_coefficient,
    omega_power_identity, poisson_axioms_check, relation_suite, verify_bd_basis, BdSet, C2Context, C2Error, RelationId,
    RelationOutcome,
};
use symfer::fock::{enumerate_half, fermionic_character, AlgebraConfig, BasisCache, Parity, Sector, State};
use symfer::linalg::Rational;
use symfer::vertex::{
    commutator_check, lambda_bracket_check, omega, skew_symmetry_check, virasoro_check, CheckReport,
    QuadraticGenerators, VertexError,
};
use symfer::zhu::{
    build_ad, center_dim, coprimality_check, direct_zhu_dim, j4_relation_in_o_span, oracle_rep_check, sp_invariants,
    symmetric_functionals_dim, verify_j4, AdAlgebra, ModuleId, ZhuError, J4_COEFFS,
};

use crate::report::Report;

pub const SUITES: [&str; 15] = [
    "relations",
    "bd-basis",
    "nilpotency",
    "omega-power",
    "coprimality",
    "center",
    "functionals",
    "invariants",
    "j4",
    "oracle-reps",
    "lambda-bracket",
    "virasoro",
    "commutator",
    "skew-symmetry",
    "basis-counts",
];

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub d: u32,
    pub max_weight: Option<i64>,
    pub cap: Option<i64>,
    pub max_mode: i64,
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug)]
pub enum RunError {
    Usage(String),
    Inconclusive(String),
    Internal(String),
}

impl From<C2Error> for RunError {
    fn from(e: C2Error) -> Self {
        match e {
            C2Error::Truncated(s) => RunError::Inconclusive(s),
            e => RunError::Internal(e.to_string()),
        }
    }
}

impl From<ZhuError> for RunError {
    fn from(e: ZhuError) -> Self {
        match e {
            ZhuError::C2(e) => e.into(),
            ZhuError::WrongRank { required, got } => RunError::Usage(format!("requires d = {required}, got d = {got}")),
            e => RunError::Internal(e.to_string()),
        }
    }
}

impl From<VertexError> for RunError {
    fn from(e: VertexError) -> Self {
        RunError::Internal(e.to_string())
    }
}

impl RunConfig {
    fn cfg(&self) -> Result<AlgebraConfig, RunError> {
        AlgebraConfig::new(self.d).map_err(|e| RunError::Usage(e.to_string()))
    }

    fn ctx(&self) -> Result<C2Context, RunError> {
        Ok(C2Context::new(self.cfg()?).with_cache(self.cache_dir.as_ref().map(BasisCache::new)))
    }
}

fn relation_item(r: &mut Report, name: &str, out: &RelationOutcome) {
    let actual = match (&out.not_applicable, out.failures.first()) {
        (Some(why), _) => format!("not applicable: {why}"),
        (None, None) => format!("0 residuals in {} checks", out.checked),
        (None, Some(f)) => {
            format!("{} residuals in {} checks; first {}: {}", out.failures.len(), out.checked, f.instance, f.residual)
        }
    };
    r.item(name, "0 residuals", actual, out.pass());
}

fn check_item(r: &mut Report, c: &CheckReport) {
    let actual = match c.failures.first() {
        None => format!("0 failures in {} checks", c.checked),
        Some(f) => format!("{} failures in {} checks; first: {f}", c.failures.len(), c.checked),
    };
    r.item(&c.name, "0 failures", actual, c.pass());
}

pub fn c2_dims(rc: &RunConfig, r: &mut Report) -> Result<(), RunError> {
    let max_weight = rc.max_weight.unwrap_or(12);
    r.param("max_weight", max_weight);
    let mut ctx = rc.ctx()?;
    let rep = graded_dims_with(&mut ctx, max_weight)?;
    if let Some(why) = &rep.truncated {
        r.inconclusive = Some(why.clone());
    }
    let d1 = expected_weights_d1();
    for row in &rep.per_weight {
        let name = format!("weight {}", row.weight);
        if rc.d == 1 {
            r.compare(name, d1.get(row.weight as usize).copied().unwrap_or(0), row.quotient_dim);
        } else if row.weight > 8.max(2 * rc.d as i64) {
            r.compare(name, 0, row.quotient_dim);
        } else {
            r.item(name, "-", row.quotient_dim, true);
        }
    }
    r.compare("total", rep.expected, rep.total);
    if max_weight < min_max_weight(rc.d) {
        r.inconclusive =
            Some(format!("max_weight {max_weight} below {} cannot certify the tail", min_max_weight(rc.d)));
    }
    Ok(())
}

pub fn run_suite(suite: &str, rc: &RunConfig, r: &mut Report) -> Result<(), RunError> {
    match suite {
        "relations" => relations(rc, r),
        "bd-basis" => bd_basis(rc, r),
        "nilpotency" => nilpotency(rc, r),
        "omega-power" => omega_power(rc, r),
        "coprimality" => coprimality(rc, r),
        "center" => center(rc, r),
        "functionals" => functionals(rc, r),
        "invariants" => invariants(rc, r),
        "j4" => j4(rc, r),
        "oracle-reps" => oracle_reps(rc, r),
        "lambda-bracket" => lambda_bracket(rc, r),
        "virasoro" => virasoro(rc, r),
        "commutator" => commutator(rc, r),
        "skew-symmetry" => skew_symmetry(rc, r),
        "basis-counts" => basis_counts(rc, r),
        other => Err(RunError::Usage(format!("unknown suite {other}; available: {}", SUITES.join(", ")))),
    }
}

fn relations(rc: &RunConfig, r: &mut Report) -> Result<(), RunError> {
    r.param("max_mode", rc.max_mode);
    let mut ctx = rc.ctx()?;
    for id in RelationId::ALL {
        let out = relation_suite(&mut ctx, id, rc.max_mode)?;
        relation_item(r, id.name(), &out);
    }
    for out in poisson_axioms_check(&mut ctx, 20, 4, 7)? {
        relation_item(r, &out.id.clone(), &out);
    }
    Ok(())
}

fn bd_basis(rc: &RunConfig, r: &mut Report) -> Result<(), RunError> {
    let mut ctx = rc.ctx()?;
    let set = BdSet::new(ctx.cfg());
    let rep = verify_bd_basis(&mut ctx, &set)?;
    r.compare("size", rep.expected, rep.size);
    r.compare("rank", rep.expected, rep.rank);
    r.item("independent", "none dependent", rep.first_dependent.as_deref().unwrap_or("none dependent"), rep.pass());
    let mut dropped = set.clone();
    let name = "e1_{-7} f1";
    if !dropped.drop_named(name) {
        return Err(RunError::Internal(format!("{name} missing from B_d")));
    }
    let ctl = verify_bd_basis(&mut ctx, &dropped)?;
    r.item(
        format!("drop {name} (control)"),
        format!("rank {} < {}", rep.expected - 1, rep.expected),
        format!("rank {}", ctl.rank),
        !ctl.pass(),
    );
    Ok(())
}

fn nilpotency(rc: &RunConfig, r: &mut Report) -> Result<(), RunError> {
    let mut ctx = rc.ctx()?;
    let rep = nilpotency_degree(&mut ctx, 7)?;
    let fmt = |k: Option<u32>| k.map_or("none up to 7".to_string(), |k| k.to_string());
    r.compare("degree", rep.expected, fmt(rep.degree));
    if let Some(w) = &rep.witness {
        relation_item(r, "omega^4 witness", w);
    }
    Ok(())
}

fn omega_power(rc: &RunConfig, r: &mut Report) -> Result<(), RunError> {
    let mut ctx = rc.ctx()?;
    let coeff = omega_power_coefficient(rc.d);
    let out = omega_power_identity(&mut ctx, &coeff)?;
    relation_item(r, &format!("omega^{} = {coeff} top", rc.d), &out);
    let wrong = &coeff - &Rational::ONE;
    let ctl = omega_power_identity(&mut ctx, &wrong)?;
    r.item(
        format!("omega^{} = {wrong} top (control)", rc.d),
        "fails",
        if ctl.pass() { "holds" } else { "fails" },
        !ctl.pass(),
    );
    Ok(())
}

fn ad(rc: &RunConfig) -> Result<AdAlgebra, RunError> {
    Ok(build_ad(&rc.cfg()?)?)
}

fn expected_center(d: u32) -> u64 {
    (1u64 << (2 * d - 1)) + 3
}

fn ad_items(r: &mut Report, ad: &AdAlgebra) -> Result<(), RunError> {
    r.compare("dim A_d", ad.expected_dim(), ad.dim());
    let cop = coprimality_check(ad)?;
    for b in &cop.blocks {
        r.compare(format!("min poly on {}", b.module.name()), &b.expected, &b.min_poly);
    }
    r.compare("stacked min poly", &cop.expected_stacked, &cop.stacked);
    r.compare("blocks pairwise coprime", true, cop.pairwise_coprime);
    Ok(())
}

fn coprimality(rc: &RunConfig, r: &mut Report) -> Result<(), RunError> {
    let ad = ad(rc)?;
    ad_items(r, &ad)
}

fn center(rc: &RunConfig, r: &mut Report) -> Result<(), RunError> {
    let ad = ad(rc)?;
    let (dim, _) = center_dim(&ad)?;
    r.compare("center dim", expected_center(rc.d), dim);
    Ok(())
}

fn functionals(rc: &RunConfig, r: &mut Report) -> Result<(), RunError> {
    let ad = ad(rc)?;
    r.compare("symmetric functionals dim", expected_center(rc.d), symmetric_functionals_dim(&ad.basis));
    Ok(())
}

fn invariants(rc: &RunConfig, r: &mut Report) -> Result<(), RunError> {
    let ad = ad(rc)?;
    let rep = sp_invariants(&rc.cfg()?, &ad)?;
    r.compare("invariant dim", rep.expected, rep.dim);
    for (deg, k) in &rep.per_degree {
        r.compare(format!("Lambda^{deg} invariants"), 1, k);
    }
    r.compare("in span of omega powers", true, rep.in_omega_span);
    Ok(())
}

fn j4(rc: &RunConfig, r: &mut Report) -> Result<(), RunError> {
    if rc.d != 2 {
        return Err(RunError::Usage(format!("suite j4 requires d = 2, got d = {}", rc.d)));
    }
    let cfg = rc.cfg()?;
    let rep = verify_j4(&cfg, None)?;
    let coeffs = J4_COEFFS.map(|(n, d)| Rational::new(n, d));
    r.param("coeffs", coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>());
    for b in &rep.blocks {
        let detail = match (&b.lhs, &b.rhs, &b.residual_omega_multiple) {
            (None, _, _) => "agree".to_string(),
            (_, _, Some(c)) => format!("mismatch: o(J4) - rhs = {c} o(omega)"),
            (Some(l), Some(rh), None) => format!(
                "mismatch: o(J4) = [{}], rhs = [{}]",
                l.trim().replace('\n', "; "),
                rh.trim().replace('\n', "; ")
            ),
            (Some(_), None, None) => "mismatch".to_string(),
        };
        if b.module.is_twisted() {
            r.note(format!("{} (twisted machinery): {detail}", b.module.name()));
        } else {
            r.item(format!("o(J4) on {}", b.module.name()), "agree", detail, b.status == "agree");
        }
    }
    match rep.common_omega_correction() {
        Some(c) if !c.is_zero() => r.note(format!("on all four blocks o(J4) = rhs + {c} o(omega)")),
        _ => {}
    }
    let bad = [coeffs[0].clone(), Rational::from_int(30), coeffs[2].clone()];
    let ctl = verify_j4(&cfg, Some(bad))?;
    r.item("coefficient 24 -> 30 (control)", "mismatch", if ctl.pass() { "agree" } else { "mismatch" }, !ctl.pass());
    if let Some(cap) = rc.cap {
        r.param("cap", cap);
        let (trunc, span) = direct_zhu_dim(&cfg, cap, 4_000_000)?;
        match span {
            Some(span) if cap >= 10 => {
                let literal = j4_relation_in_o_span(&span, coeffs.clone(), &Rational::ZERO)?;
                r.item(format!("J4 - rhs in O(V) at cap {cap}"), true, literal, literal);
                let shifted = j4_relation_in_o_span(&span, coeffs, &Rational::from_int(2))?;
                r.note(format!("J4 - rhs - 2 omega in O(V) at cap {cap}: {shifted}"));
            }
            _ => r.note(format!("O(V) membership skipped: cap {cap} too small or truncated ({:?})", trunc.truncated)),
        }
    }
    Ok(())
}

fn oracle_reps(rc: &RunConfig, r: &mut Report) -> Result<(), RunError> {
    let cfg = rc.cfg()?;
    for m in ModuleId::ALL {
        check_item(r, &oracle_rep_check(&cfg, m)?);
    }
    Ok(())
}

fn lambda_bracket(rc: &RunConfig, r: &mut Report) -> Result<(), RunError> {
    let w = rc.max_weight.unwrap_or(3);
    r.param("max_weight", w);
    check_item(r, &lambda_bracket_check(&rc.cfg()?, 3, w)?);
    Ok(())
}

fn virasoro(rc: &RunConfig, r: &mut Report) -> Result<(), RunError> {
    let w = rc.max_weight.unwrap_or(6);
    r.param("max_weight", w);
    check_item(r, &virasoro_check(&rc.cfg()?, w, 3)?);
    Ok(())
}

fn commutator(rc: &RunConfig, r: &mut Report) -> Result<(), RunError> {
    let cfg = rc.cfg()?;
    let w = rc.max_weight.unwrap_or(3);
    r.param("max_weight", w);
    let gens = QuadraticGenerators::new(&cfg);
    let mut pairs: Vec<(String, State, State)> = Vec::new();
    for (q, s) in gens.list.iter().take(4) {
        pairs.push((format!("{q}, omega"), s.clone(), omega(&cfg)));
    }
    if let (Some((qa, a)), Some((qb, b))) = (gens.list.first(), gens.list.get(1)) {
        pairs.push((format!("{qa}, {qb}"), a.clone(), b.clone()));
    }
    check_item(r, &commutator_check(&cfg, &pairs, 2, w)?);
    Ok(())
}

fn skew_symmetry(rc: &RunConfig, r: &mut Report) -> Result<(), RunError> {
    let w = rc.max_weight.unwrap_or(4);
    r.param("max_weight", w);
    check_item(r, &skew_symmetry_check(&rc.cfg()?, 40, w, 7)?);
    Ok(())
}

fn basis_counts(rc: &RunConfig, r: &mut Report) -> Result<(), RunError> {
    let cfg = rc.cfg()?;
    let w = rc.max_weight.unwrap_or(12);
    r.param("max_weight", w);
    let chi = fermionic_character(rc.d, w.max(0) as usize);
    for n in 0..=w {
        let count = enumerate_half(&cfg, Sector::Untwisted, 2 * n as i32, Parity::All).len();
        r.compare(format!("weight {n}"), chi[n as usize], count);
    }
    Ok(())
}

pub fn zhu_reps(rc: &RunConfig, r: &mut Report) -> Result<(), RunError> {
    let ad = ad(rc)?;
    ad_items(r, &ad)?;
    let (dim, _) = center_dim(&ad)?;
    r.compare("center dim", expected_center(rc.d), dim);
    r.compare("symmetric functionals dim", expected_center(rc.d), symmetric_functionals_dim(&ad.basis));
    Ok(())
}

pub fn zhu_direct(rc: &RunConfig, r: &mut Report) -> Result<(), RunError> {
    let cap = rc.cap.unwrap_or(12);
    r.param("cap", cap);
    let (rep, _) = direct_zhu_dim(&rc.cfg()?, cap, 4_000_000)?;
    for row in &rep.per_cap {
        r.item(
            format!("cap {}", row.cap),
            "-",
            format!("quotient {} (ambient {}, rank {})", row.quotient_dim, row.ambient_dim, row.rank),
            true,
        );
    }
    if let Some(why) = &rep.truncated {
        r.inconclusive = Some(why.clone());
    } else if !rep.stabilized {
        r.inconclusive = Some(format!("quotient dimensions did not stabilize over the last caps up to {cap}"));
    }
    r.compare("dim A(V)", expected_total(rc.d), rep.dim.map_or("none".to_string(), |d| d.to_string()));
    Ok(())
}
