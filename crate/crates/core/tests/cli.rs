use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fgx-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn fgx(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_fgx")).args(args).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let report = serde_json::from_str(&text).unwrap_or(Value::Null);
    (out.status.code().unwrap(), report)
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn random_program_round_trips_through_the_pipeline() {
    let dir = scratch("pipeline");
    let bp = dir.join("bp.json");
    let (code, r) = fgx(&["bp", "random", "--n", "2", "--depth", "3", "--width", "2", "--seed", "1", "--out", p(&bp)]);
    assert_eq!(code, 0);
    assert_eq!(r["schema"], "fgx.report/1");
    assert_eq!(r["command"], "bp random");

    let (_, tt) = fgx(&["bp", "tt", "--bp", p(&bp)]);
    let bits = tt["data"]["tt"].as_str().unwrap().to_string();
    assert_eq!(bits.len(), 4);
    for (i, want) in bits.chars().enumerate() {
        let a = format!("{:02b}", i);
        let (_, e) = fgx(&["bp", "eval", "--bp", p(&bp), "--assignment", &a]);
        assert_eq!(e["data"]["value"], Value::Bool(want == '1'));
    }

    let (code, d) = fgx(&["reduce", "decide", "--bp", p(&bp)]);
    assert_eq!(code, 0);
    assert_eq!(d["data"]["decision"]["verdict"], Value::Bool(bits.contains('1')));

    let (code, c) = fgx(&["editdist", "coarse-check", "--bp", p(&bp)]);
    assert_eq!(code, 0, "{c}");

    let out = dir.join("inst");
    let (code, b) = fgx(&["reduce", "build", "--bp", p(&bp), "--out", p(&out)]);
    assert_eq!(code, 0);
    let x = std::fs::read_to_string(out.join("x.txt")).unwrap();
    assert_eq!(x.trim().len() as u64, b["data"]["manifest"]["len_x"].as_u64().unwrap());
}

#[test]
fn matrix_and_promise() {
    let dir = scratch("matrix");
    let tt = dir.join("tt.txt");
    std::fs::write(&tt, "0110").unwrap();
    let m = dir.join("m.json");
    let (code, r) = fgx(&["encode", "--tt", p(&tt), "--out", p(&m)]);
    assert_eq!(code, 0);
    assert_eq!(r["data"]["K"], 3);
    let (code, r) = fgx(&["ppedit", "promise", "--matrix", p(&m)]);
    assert_eq!(code, 0);
    assert_eq!(r["data"]["promise"], "one");
}

#[test]
fn ov_counts_match_sat() {
    let dir = scratch("ov");
    let cnf = dir.join("f.cnf");
    std::fs::write(&cnf, "c example\np cnf 4 3\n1 -2 0\n3 4 0\n-1 -4 0\n").unwrap();
    let (code, r) = fgx(&["ov", "count", "--cnf", p(&cnf)]);
    assert_eq!(code, 0);
    assert_eq!(r["data"]["count"], r["data"]["sat_count"]);
    let ov = dir.join("ov.json");
    fgx(&["ov", "build", "--cnf", p(&cnf), "--out", p(&ov)]);
    let (_, r2) = fgx(&["ov", "parity", "--ov", p(&ov)]);
    assert_eq!(r2["data"]["parity"], r["data"]["parity"]);
    let (code, b) = fgx(&["ov", "bit", "--cnf", p(&cnf), "--side", "u", "--index", "0", "--clause", "0"]);
    assert_eq!(code, 0);
    assert!(b["data"]["bit"].is_u64());
}

#[test]
fn adversary_commands() {
    let (code, r) = fgx(&["adv", "gen", "--k", "2", "--family", "y", "--seed", "4"]);
    assert_eq!(code, 0);
    let ones: Vec<u64> = r["data"]["row_ones"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
    assert_eq!(ones.iter().filter(|&&o| o == 3).count(), 1);
    let (code, r) = fgx(&["adv", "stats", "--k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["data"]["relation"]["exhaustive"], true);
    let (code, _) = fgx(&["adv", "dyck", "--k", "2"]);
    assert_eq!(code, 0);
}

#[test]
fn conversions_via_files() {
    let dir = scratch("convert");
    let path = dir.join("p.json");
    std::fs::write(&path, "[[2,1],[2,2],[3,2]]").unwrap();
    let (code, r) = fgx(&["convert", "p2c", "--path", p(&path), "--l", "2"]);
    assert_eq!(code, 0, "{r}");
    let coarse = dir.join("c.json");
    std::fs::write(&coarse, r["data"]["coarse"].to_string()).unwrap();
    let (code, back) = fgx(&["convert", "c2p", "--coarse", p(&coarse), "--l", "2"]);
    assert_eq!(code, 0);
    assert_eq!(back["data"]["path"], serde_json::json!([[2, 1], [2, 2], [3, 2]]));
    let (_, cls) = fgx(&["convert", "classify", "--coarse", p(&coarse), "--l", "2"]);
    assert!(cls["data"]["classes"].as_array().unwrap().iter().all(|c| c == "good"));
}

#[test]
fn corpus_writes_programs() {
    let dir = scratch("corpus");
    let (code, r) = fgx(&["corpus", "make", "--n", "2", "--count", "5", "--seed", "3", "--out", p(&dir)]);
    assert_eq!(code, 0);
    assert_eq!(r["data"]["summary"]["accepted"], 5);
    assert!(dir.join("manifest.json").exists());
    assert!(dir.join("bp_n2_005.json").exists());
}

#[test]
fn errors_are_structured() {
    let (code, r) = fgx(&["bp", "tt", "--bp", "/nonexistent/bp.json"]);
    assert_eq!(code, 2);
    assert_eq!(r["ok"], false);
    assert_eq!(r["error"]["kind"], "io");

    let dir = scratch("errors");
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"n\": 2}").unwrap();
    let (code, r) = fgx(&["bp", "validate", "--bp", p(&bad)]);
    assert_eq!(code, 2);
    assert!(r["error"]["kind"].is_string());

    let (code, _) = fgx(&["no-such-command"]);
    assert_eq!(code, 2);
}

#[test]
fn help_lists_commands() {
    let out = Command::new(env!("CARGO_BIN_EXE_fgx")).arg("--help").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for cmd in ["bp", "encode", "ppedit", "reduce", "editdist", "convert", "ov", "adv", "corpus", "verify"] {
        assert!(text.contains(cmd), "{cmd}");
    }
}
