use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_denniston"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

const TOWER: [&str; 8] = ["-p", "2", "-s", "1", "-m", "2", "-l", "1"];

fn with_tower<'a>(head: &[&'a str], r: &'a str, tail: &[&'a str]) -> Vec<&'a str> {
    let mut v = head.to_vec();
    v.extend(TOWER);
    v.extend(["-r", r]);
    v.extend(tail);
    v
}

fn construct_to(path: &Path, r: &str, extra: &[&str]) {
    let p = path.to_str().unwrap();
    let mut args = with_tower(&["construct"], r, &["-o", p]);
    args.extend(extra);
    let o = run(&args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn params_table_has_both_families() {
    let o = run(&with_tower(&["params"], "1", &[]));
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("(64,18,2,6)"));
    assert!(text.contains("(64,45,32,30)"));
    assert!(text.contains("NegativeLatin(8,2)"));
}

#[test]
fn params_grid_has_one_row_per_tuple() {
    let o = run(&["params", "--grid", "p=2 s=1 m=2..3 l=1 r=all", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    // r runs over 0..=m for m = 2 and m = 3
    assert_eq!(json(&o).as_array().unwrap().len(), 3 + 4);
}

#[test]
fn illegal_r_is_a_usage_error() {
    let o = run(&with_tower(&["params"], "3", &[]));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds"));
    assert_eq!(run(&["params", "-p", "4", "-m", "2", "-l", "1", "-r", "1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn construct_sizes_and_degenerate_flag() {
    let dir = tempfile::tempdir().unwrap();
    for (r, family, size, degenerate) in [("1", "primal", 18, false), ("1", "dual", 45, false), ("0", "primal", 3, true)] {
        let path = dir.path().join(format!("{family}{r}.json"));
        construct_to(&path, r, &["--family", family]);
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(v["elements"].as_array().unwrap().len(), size);
        assert_eq!(v["degenerate"], Value::Bool(degenerate));
        assert_eq!(v["pairing"], "trace");
    }
}

#[test]
fn verify_passes_and_corruption_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.json");
    construct_to(&path, "1", &[]);
    let o = run(&["verify", "-i", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let rep = json(&o);
    assert!(rep["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));

    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    v["elements"].as_array_mut().unwrap().remove(0);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, serde_json::to_string(&v).unwrap()).unwrap();
    let o = run(&["verify", "-i", bad.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let rep = json(&o);
    let prof = rep["checks"].as_array().unwrap().iter().find(|c| c["name"] == "difference-profile").unwrap();
    assert_eq!(prof["status"], "fail");
    assert!(!prof["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn neighbour_cap_skips_only_that_check() {
    let o = run(&with_tower(&["verify"], "1", &["--neighbor-cap", "16", "--format", "json"]));
    assert_eq!(o.status.code(), Some(0));
    let rep = json(&o);
    for c in rep["checks"].as_array().unwrap() {
        let want = if c["name"] == "common-neighbours" { "skipped" } else { "pass" };
        assert_eq!(c["status"], want, "{c}");
    }
}

#[test]
fn caps_from_the_environment() {
    let o = bin().args(with_tower(&["verify"], "1", &["--format", "json"])).env("DENNISTON_PROFILE_CAP", "8").output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let rep = json(&o);
    let prof = rep["checks"].as_array().unwrap().iter().find(|c| c["name"] == "difference-profile").unwrap();
    assert_eq!(prof["status"], "skipped");
}

#[test]
fn binary_code_matrix() {
    let o = run(&with_tower(&["code"], "1", &["--format", "json"]));
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let rows = v["generator_matrix"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r.as_array().unwrap().len() == 18));
    let weights: Vec<&String> = v["report"]["weights"].as_object().unwrap().keys().collect();
    assert_eq!(weights, ["0", "12", "8"]);
}

#[test]
fn ternary_code_uses_three_digits() {
    let o = run(&["code", "-p", "3", "-m", "2", "-l", "1", "-r", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 6);
    let digits: std::collections::BTreeSet<&str> = rows.iter().flat_map(|r| r.split(' ')).collect();
    assert_eq!(digits.into_iter().collect::<Vec<_>>(), ["0", "1", "2"]);
    assert!(rows.iter().all(|r| r.split(' ').count() == 84));
}

#[test]
fn geometry_profile_has_two_keys() {
    let o = run(&with_tower(&["geometry"], "1", &["--format", "json"]));
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let keys: Vec<&String> = v["hyperplanes"].as_object().unwrap().keys().collect();
    assert_eq!(keys, ["10", "6"]);
    assert_eq!(v["points"].as_array().unwrap().len(), 18);
}

#[test]
fn enumeration_cap_exits_3() {
    let o = run(&with_tower(&["code"], "1", &["--enum-cap", "32"]));
    assert_eq!(o.status.code(), Some(3));
    let o = run(&with_tower(&["construct"], "1", &["--table-cap", "8"]));
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn graph_exports() {
    let o = run(&with_tower(&["export-graph"], "1", &[]));
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# vertices 64 edges 576\n"));
    assert_eq!(text.lines().count(), 1 + 576);

    let o = run(&with_tower(&["export-graph"], "0", &["--graph-format", "dimacs"]));
    let text = stdout(&o);
    assert!(text.starts_with("p edge 64 96\n"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("components [(4, 16)]"));
}

#[test]
fn dual_command_matches_direct_construction() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("d.json");
    let plus = dir.path().join("plus.json");
    let direct = dir.path().join("direct.json");
    construct_to(&d, "1", &[]);
    let o = run(&["dual", "-i", d.to_str().unwrap(), "-o", plus.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("agrees with the direct construction: true"));
    construct_to(&direct, "1", &["--family", "dual"]);
    let a: Value = serde_json::from_str(&std::fs::read_to_string(&plus).unwrap()).unwrap();
    let b: Value = serde_json::from_str(&std::fs::read_to_string(&direct).unwrap()).unwrap();
    assert_eq!(a["elements"], b["elements"]);
    assert_eq!(a["claimed"], b["claimed"]);
    let o = run(&["verify", "-i", plus.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn construct_then_verify_round_trips_on_the_grid() {
    let dir = tempfile::tempdir().unwrap();
    for &(p, s, m, l) in &denniston::cli::DEFAULT_GRID {
        for r in 0..=m {
            for family in ["primal", "primal-cosets", "dual"] {
                let path = dir.path().join("set.json");
                let (p, s, m, l, r) = (p.to_string(), s.to_string(), m.to_string(), l.to_string(), r.to_string());
                let o = run(&["construct", "-p", &p, "-s", &s, "-m", &m, "-l", &l, "-r", &r, "--family", family, "-o", path.to_str().unwrap()]);
                assert_eq!(o.status.code(), Some(0));
                let o = run(&["verify", "-i", path.to_str().unwrap()]);
                assert_eq!(o.status.code(), Some(0), "({p},{s},{m},{l},{r}) {family}\n{}", stdout(&o));
            }
        }
    }
}

#[test]
fn custom_subspaces() {
    let o = run(&with_tower(&["verify"], "1", &["--subspace", "exp:1"]));
    assert_eq!(o.status.code(), Some(0));
    let o = run(&with_tower(&["verify"], "1", &["--subspace", "rows:0,1"]));
    assert_eq!(o.status.code(), Some(0));
    let o = run(&with_tower(&["verify"], "1", &["--subspace", "exp:0,1"]));
    assert_eq!(o.status.code(), Some(2));
    let o = run(&with_tower(&["verify"], "2", &["--subspace", "exp:0,3"]));
    assert_eq!(o.status.code(), Some(2));
}
