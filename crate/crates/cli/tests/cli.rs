use std::process::Command;

use serde_json::Value;

fn symfer() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_symfer"));
    c.env_remove("SYMFER_CACHE");
    c
}

fn stable_part(json: &[u8]) -> Value {
    let mut v: Value = serde_json::from_slice(json).unwrap();
    let obj = v.as_object_mut().unwrap();
    obj.remove("elapsed_ms");
    obj.remove("metadata");
    v
}

#[test]
fn report_is_independent_of_thread_count() {
    let run = |t: &str| symfer().args(["c2-dims", "--d", "2", "--threads", t]).output().unwrap();
    let (a, b) = (run("1"), run("2"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stable_part(&a.stdout), stable_part(&b.stdout));
    assert_eq!(
        serde_json::to_string(&stable_part(&a.stdout)).unwrap(),
        serde_json::to_string(&stable_part(&b.stdout)).unwrap()
    );
}

#[test]
fn schema_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = symfer().args(["zhu", "--d", "1", "--method", "reps", "--out"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    for key in ["suite", "d", "params", "items", "pass", "elapsed_ms", "version", "metadata"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["suite"], "zhu-reps");
    assert_eq!(v["pass"], true);
    let items = v["items"].as_array().unwrap();
    assert!(items.iter().all(|i| i["pass"] == true));
    let poly = items.iter().find(|i| i["name"] == "min poly on SFtheta_plus").unwrap();
    assert_eq!(poly["actual"], "x + 1/8");
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = symfer().args(["c2-dims", "--d", "1"]).env("SYMFER_CACHE", dir.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_some());
    let again = symfer().args(["c2-dims", "--d", "1"]).env("SYMFER_CACHE", dir.path()).output().unwrap();
    assert_eq!(stable_part(&out.stdout), stable_part(&again.stdout));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["c2-dims", "--d", "0"][..],
        &["verify", "--suite", "j4", "--d", "3"],
        &["verify", "--suite", "bogus", "--d", "1"],
        &["zhu", "--d", "1", "--method", "guess"],
    ] {
        assert_eq!(symfer().args(args).output().unwrap().status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn failing_control_exits_one_and_coprimality_fails_at_d4() {
    let out = symfer().args(["verify", "--suite", "coprimality", "--d", "4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], false);
}
