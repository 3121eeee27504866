use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn quadalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadalg"))
        .args(args)
        .env_remove("QUADALG_FIELD")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("quadalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn hilbert_of_b() {
    let o = quadalg(&["hilbert", "--family", "B", "--maxdeg", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1, 13, 155, 1840\n");
}

#[test]
fn betti_of_b() {
    let o = quadalg(&["betti", "--family", "B", "--imax", "5", "--jmax", "8", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("  1:  . 13  .  .  .  .  .  .  ."), "{s}");
    assert!(s.contains("  4:  .  .  .  .  .  1  .  .  ."), "{s}");
    assert!(s.contains("not Koszul: b(4,5) = 1"), "{s}");
}

#[test]
fn betti_csv() {
    let o = quadalg(&["resolve", "--family", "C", "--m", "5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "i,0,1,2,3,4,5,6,7,8");
    assert_eq!(lines[6], "5,0,0,0,0,0,0,1,0,0");
}

#[test]
fn paper_check_passes() {
    let o = quadalg(&["paper-check", "--m", "5,6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let s = stdout(&o);
    assert!(s.contains("[PASS] b(5,6) = 1"));
    assert!(s.contains("[PASS] b(6,7) = 1"));
    assert!(!s.contains("[FAIL]"));
}

#[test]
fn paper_check_rejects_small_m() {
    let o = quadalg(&["paper-check", "--m", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("m >= 5"));
}

#[test]
fn paper_check_flags_short_variant() {
    let o = quadalg(&["paper-check", "--m", "5", "--b-variant", "short"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("B11: Hilbert series"), "{}", stderr(&o));
    assert!(stdout(&o).contains("[FAIL] Hilbert series"));
}

#[test]
fn parse_error_has_position() {
    let path = scratch("nonsense.pres");
    std::fs::write(&path, "gens x y\nrel x*y - z;\n").unwrap();
    let o = quadalg(&["gb", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("nonsense.pres:2:11: unknown generator `z`"), "{}", stderr(&o));
}

#[test]
fn bad_bounds_are_usage_errors() {
    let o = quadalg(&["resolve", "--family", "B", "--imax", "6", "--jmax", "5"]);
    assert_eq!(o.status.code(), Some(2));
    let o = quadalg(&["resolve", "--family", "B", "--jmax", "8", "--maxdeg", "6"]);
    assert_eq!(o.status.code(), Some(2));
    let o = quadalg(&["--field", "p:4", "hilbert", "--family", "B"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_reports_are_deterministic() {
    let args = ["resolve", "--family", "C", "--m", "5", "--format", "json"];
    let a = quadalg(&args);
    let b = quadalg(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    for key in ["tool", "version", "command", "algebra", "field", "order"] {
        assert!(v[key].is_string(), "{key}");
    }
    assert_eq!(v["bounds"]["imax"], 6);
    assert_eq!(v["result"]["betti"]["entries"][5][6], 1);
    assert_eq!(v["result"]["koszulity"]["m_koszul"], 5);
}

#[test]
fn sequential_matches_parallel() {
    let p = quadalg(&["ext-gens", "--family", "C", "--m", "5", "--format", "json"]);
    let s = quadalg(&["--sequential", "ext-gens", "--family", "C", "--m", "5", "--format", "json"]);
    assert_eq!(p.stdout, s.stdout);
    let v: Value = serde_json::from_slice(&p.stdout).unwrap();
    let gens: Vec<(u64, u64)> = v["result"]["new_generators"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| (g[0].as_u64().unwrap(), g[1].as_u64().unwrap()))
        .collect();
    assert_eq!(gens, vec![(1, 1), (5, 6)]);
}

#[test]
fn field_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_quadalg"))
        .args(["resolve", "--family", "C", "--m", "5", "--format", "json"])
        .env("QUADALG_FIELD", "q")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["field"], "q");
    assert_eq!(v["result"]["betti"]["entries"][4][4], 7);
}

#[test]
fn complex_round_trip_and_mutation() {
    let path = scratch("c5.cx");
    let o = quadalg(&["make-complex", "--family", "C", "--m", "5", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = quadalg(&["verify", "--family", "C", "--m", "5", "--complex", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    // drop one entry of the first map
    let text = std::fs::read_to_string(&path).unwrap();
    let broken = text.replacen("row q\n", "row 0\n", 1);
    assert_ne!(broken, text);
    let bad = scratch("c5-broken.cx");
    std::fs::write(&bad, broken).unwrap();
    let o = quadalg(&["verify", "--family", "C", "--m", "5", "--complex", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAILED"));
}

#[test]
fn verify_with_mutations() {
    let o = quadalg(&["verify", "--family", "B", "--mutations", "10", "--seed", "5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(
        stdout(&o),
        "check,passed\ncomplex,true\nexactness,true\nminimality,true\nmutations,true\n"
    );
}

#[test]
fn make_algebra_round_trips() {
    let path = scratch("c6.pres");
    let o = quadalg(&["make-algebra", "--family", "C", "--m", "6", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let from_file = quadalg(&["hilbert", "--input", path.to_str().unwrap(), "--maxdeg", "5"]);
    let built_in = quadalg(&["hilbert", "--family", "C", "--m", "6", "--maxdeg", "5"]);
    assert_eq!(from_file.status.code(), Some(0), "{}", stderr(&from_file));
    assert_eq!(from_file.stdout, built_in.stdout);
}
