use std::io::Write;
use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    report: Option<Value>,
}

fn symfer(args: &[&str]) -> Run {
    let out =
        Command::new(env!("CARGO_BIN_EXE_symfer")).args(args).env_remove("SYMFER_CACHE").output().expect("binary runs");
    Run { code: out.status.code().unwrap_or(-1), report: serde_json::from_slice(&out.stdout).ok() }
}

fn items(run: &Run) -> Vec<(String, String, String, bool)> {
    let Some(r) = &run.report else { return Vec::new() };
    r["items"]
        .as_array()
        .into_iter()
        .flatten()
        .map(|i| {
            let s = |k: &str| i[k].as_str().unwrap_or_default().to_string();
            (s("name"), s("expected"), s("actual"), i["pass"].as_bool().unwrap_or(false))
        })
        .collect()
}

fn actual(run: &Run, name: &str) -> Option<String> {
    items(run).into_iter().find(|i| i.0 == name).map(|i| i.2)
}

fn failures(run: &Run) -> String {
    items(run)
        .into_iter()
        .filter(|i| !i.3)
        .map(|i| format!("{}: expected {}, got {}", i.0, i.1, i.2))
        .collect::<Vec<_>>()
        .join("; ")
}

/// Collects sub-checks and prints one line for the criterion.
struct Criterion {
    id: u32,
    title: &'static str,
    failed: Vec<String>,
    checked: usize,
}

impl Criterion {
    fn new(id: u32, title: &'static str) -> Self {
        Self { id, title, failed: Vec::new(), checked: 0 }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed.push(what());
        }
    }

    fn expect_pass(&mut self, label: &str, run: &Run) {
        self.check(run.code == 0, || format!("{label}: exit {} [{}]", run.code, failures(run)));
    }

    fn finish(self) {
        let verdict = if self.failed.is_empty() { "PASS" } else { "FAIL" };
        let mut line = format!("criterion {:>2} {verdict} {} ({} checks)", self.id, self.title, self.checked);
        if !self.failed.is_empty() {
            line.push_str(&format!(": {}", self.failed.join(" | ")));
        }
        let mut out = std::io::stdout().lock();
        writeln!(out, "{line}").unwrap();
        out.flush().unwrap();
        assert!(self.failed.is_empty(), "{line}");
    }
}

#[test]
fn criterion_01_c2_quotient_totals() {
    let mut c = Criterion::new(1, "C2 quotient totals 11/41/105, vanishing tail");
    for (d, total) in [(1, "11"), (2, "41"), (3, "105")] {
        let ds = d.to_string();
        let run = symfer(&["c2-dims", "--d", &ds, "--max-weight", "12"]);
        c.expect_pass(&format!("d={d}"), &run);
        c.check(actual(&run, "total").as_deref() == Some(total), || format!("d={d} total {:?}", actual(&run, "total")));
    }
    let run = symfer(&["c2-dims", "--d", "1", "--max-weight", "12"]);
    let per: Vec<String> = (0..=12).filter_map(|w| actual(&run, &format!("weight {w}"))).collect();
    c.check(per.join(",") == "1,0,1,3,1,3,1,0,1,0,0,0,0", || format!("d=1 per weight {per:?}"));
    c.finish();
}

#[test]
fn criterion_02_bd_basis() {
    let mut c = Criterion::new(2, "B_d spans with rank n_d, drop-one control fails");
    for d in ["1", "2", "3"] {
        let run = symfer(&["verify", "--suite", "bd-basis", "--d", d]);
        c.expect_pass(&format!("d={d}"), &run);
        c.check(items(&run).iter().any(|i| i.0.contains("(control)") && i.3), || format!("d={d} control missing"));
    }
    c.finish();
}

#[test]
fn criterion_03_relation_suite() {
    let mut c = Criterion::new(3, "relation suite, modes up to 6");
    for d in ["1", "2", "3"] {
        let run = symfer(&["verify", "--suite", "relations", "--d", d, "--max-mode", "6"]);
        c.expect_pass(&format!("d={d}"), &run);
        for rel in ["bmn1", "bmn2", "efef", "e6", "e9", "l1", "l2", "cor42", "prop43", "h11_4"] {
            c.check(actual(&run, rel).is_some(), || format!("d={d} {rel} missing"));
        }
    }
    c.finish();
}

#[test]
fn criterion_04_nilpotency() {
    let mut c = Criterion::new(4, "omega nilpotent of degree 5 with witnesses; omega^5 = 120 top at d=5");
    for d in ["1", "2", "3", "4"] {
        let run = symfer(&["verify", "--suite", "nilpotency", "--d", d]);
        c.expect_pass(&format!("d={d}"), &run);
        c.check(actual(&run, "degree").as_deref() == Some("5"), || {
            format!("d={d} degree {:?}", actual(&run, "degree"))
        });
    }
    let run = symfer(&["verify", "--suite", "omega-power", "--d", "5"]);
    c.expect_pass("d=5 omega^5", &run);
    c.check(actual(&run, "omega^5 = 120 top").is_some(), || "d=5 coefficient 120 missing".into());
    c.check(actual(&run, "omega^5 = 119 top (control)").as_deref() == Some("fails"), || "d=5 control".into());
    c.finish();
}

#[test]
fn criterion_05_zhu_image() {
    let mut c = Criterion::new(5, "A_d has dim n_d, stacked min poly, coprime blocks");
    for (d, dim) in [("1", "11"), ("2", "41"), ("3", "105")] {
        let run = symfer(&["verify", "--suite", "coprimality", "--d", d]);
        c.expect_pass(&format!("d={d}"), &run);
        c.check(actual(&run, "dim A_d").as_deref() == Some(dim), || format!("d={d} dim {:?}", actual(&run, "dim A_d")));
    }
    c.finish();
}

#[test]
fn criterion_06_center_and_functionals() {
    let mut c = Criterion::new(6, "center and symmetric functionals have dim 2^(2d-1)+3");
    for (d, dim) in [("1", "5"), ("2", "11"), ("3", "35")] {
        let run = symfer(&["verify", "--suite", "center", "--d", d]);
        c.expect_pass(&format!("center d={d}"), &run);
        c.check(actual(&run, "center dim").as_deref() == Some(dim), || format!("center d={d}"));
        let run = symfer(&["verify", "--suite", "functionals", "--d", d]);
        c.expect_pass(&format!("functionals d={d}"), &run);
        c.check(actual(&run, "symmetric functionals dim").as_deref() == Some(dim), || format!("functionals d={d}"));
    }
    c.finish();
}

#[test]
fn criterion_07_sp_invariants() {
    let mut c = Criterion::new(7, "sp invariants of dim d+4 inside the omega powers");
    for (d, dim) in [("1", "5"), ("2", "6"), ("3", "7")] {
        let run = symfer(&["verify", "--suite", "invariants", "--d", d]);
        c.expect_pass(&format!("d={d}"), &run);
        c.check(actual(&run, "invariant dim").as_deref() == Some(dim), || format!("d={d} dim"));
    }
    c.finish();
}

#[test]
fn criterion_08_j4() {
    let mut c = Criterion::new(8, "o(J4) = -144/5 o(w)^5 + 24 o(w)^4 + 29/5 o(w)^3 at d=2");
    let run = symfer(&["verify", "--suite", "j4", "--d", "2", "--cap", "12"]);
    c.expect_pass("d=2", &run);
    if run.code != 0 {
        if let Some(notes) = run.report.as_ref().and_then(|r| r["notes"].as_array()) {
            c.failed.extend(notes.iter().filter_map(|n| n.as_str()).map(|n| format!("note: {n}")));
        }
    }
    let usage = symfer(&["verify", "--suite", "j4", "--d", "1"]);
    c.check(usage.code == 2, || format!("d=1 exit {}", usage.code));
    c.finish();
}

#[test]
fn criterion_09_direct_zhu() {
    let mut c = Criterion::new(9, "direct V/O(V): 11 at d=1 cap 12, 41 at d=2 caps 12-14, unstabilized exits 3");
    let run = symfer(&["zhu", "--method", "direct", "--d", "1", "--cap", "12"]);
    c.expect_pass("d=1 cap 12", &run);
    c.check(actual(&run, "dim A(V)").as_deref() == Some("11"), || "d=1 dim".into());
    let run = symfer(&["zhu", "--method", "direct", "--d", "2", "--cap", "14"]);
    c.expect_pass("d=2 cap 14", &run);
    c.check(actual(&run, "dim A(V)").as_deref() == Some("41"), || "d=2 dim".into());
    for cap in ["12", "13", "14"] {
        c.check(actual(&run, &format!("cap {cap}")).is_some_and(|a| a.starts_with("quotient 41 ")), || {
            format!("d=2 cap {cap}")
        });
    }
    let run = symfer(&["zhu", "--method", "direct", "--d", "2", "--cap", "6"]);
    c.check(run.code == 3, || format!("d=2 cap 6 exit {}", run.code));
    c.finish();
}

#[test]
fn criterion_10_structural_suites() {
    let mut c = Criterion::new(10, "Virasoro c=-2d, commutator, skew symmetry, table oracle, basis counts");
    for d in ["1", "2", "3"] {
        for (suite, extra) in [
            ("virasoro", Some("6")),
            ("commutator", None),
            ("skew-symmetry", None),
            ("oracle-reps", None),
            ("lambda-bracket", None),
        ] {
            let mut args = vec!["verify", "--suite", suite, "--d", d];
            if let Some(w) = extra {
                args.extend(["--max-weight", w]);
            }
            c.expect_pass(&format!("{suite} d={d}"), &symfer(&args));
        }
    }
    for d in ["1", "2", "3", "4"] {
        c.expect_pass(
            &format!("basis-counts d={d}"),
            &symfer(&["verify", "--suite", "basis-counts", "--d", d, "--max-weight", "12"]),
        );
    }
    c.finish();
}
