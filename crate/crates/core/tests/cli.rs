mod common;

use std::io::Cursor;
use std::process::Command;

use common::*;
use skewcodes_core::cli::{self, format_vector};
use skewcodes_core::codec::{self, EncodeMethod};
use skewcodes_core::codes::ProductTCode;
use skewcodes_core::construct;

const F4: &str = "p=2,s=2,mod=x^2+x+1,gen=a";

fn run(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut full = vec!["skewcodes"];
    full.extend_from_slice(args);
    let mut input = Cursor::new(stdin.as_bytes().to_vec());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(full, &mut input, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn descriptor(comps: &[&str]) -> String {
    let mut args = vec!["mkcode", "--field", F4, "--t", "1"];
    for c in comps {
        args.push("--comp");
        args.push(c);
    }
    let (code, out, err) = run(&args, "");
    assert_eq!(code, 0, "{err}");
    out
}

#[test]
fn period_prints_library_values() {
    let (code, out, _) = run(&["period", "--field", F4, "--t", "1", "--poly", "x^3+a*x+1"], "");
    assert_eq!(code, 0);
    let (_, th) = f4();
    let pd = poly(&th, "x^3+a*x+1").period().unwrap();
    assert!(out.starts_with(&format!("m={}\nq_f={}\n", pd.m, pd.q_f)));
    assert!(out.starts_with("m=8\n"));
}

#[test]
fn json_period_is_valid() {
    let (code, out, _) = run(&["--json", "period", "--field", F4, "--t", "1", "--poly", "x^3+a*x+1"], "");
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["m"], 8);
    let (_, th) = f4();
    assert_eq!(v["q_f"], poly(&th, "x^5+a^2*x^3+x^2+a*x+1").to_text());
}

#[test]
fn bmatrix_matches_example() {
    let (code, out, _) = run(&["bmatrix", "--field", F4, "--t", "1", "--poly", "x^3+x^2+a*x+a^2"], "");
    assert_eq!(code, 0);
    let (fld, _) = f4();
    assert_eq!(out, format!("{}\nrank=2\n", mat(&fld, "0,a^2,0; a^2,0,a; 0,a,0").to_text()));
}

#[test]
fn encode_output_is_byte_identical_to_library() {
    let d = descriptor(&["f=x^3+x^2+a*x+a^2; g=x+a^2"]);
    let code = ProductTCode::parse_descriptor(&d).unwrap();
    let (fld, _) = f4();
    let path = std::env::temp_dir().join(format!("skewcodes-cli-{}.code", std::process::id()));
    std::fs::write(&path, &d).unwrap();
    let mut expected = String::new();
    let mut input = String::new();
    for msg in all_vectors(&fld, 2) {
        input.push_str(&format_vector(&fld, &msg));
        input.push('\n');
        expected.push_str(&format_vector(&fld, &codec::encode(&msg, &code, EncodeMethod::Polynomial).unwrap()));
        expected.push('\n');
    }
    let (status, out, _) = run(&["encode", "--code", path.to_str().unwrap()], &input);
    std::fs::remove_file(&path).ok();
    assert_eq!(status, 0);
    assert_eq!(out, expected);
}

#[test]
fn decode_corrects_hamming_word() {
    let d = "field p=2\ntheta 0\nf=x^7+1; g=x^3+x+1\n";
    let path = std::env::temp_dir().join(format!("skewcodes-ham-{}.code", std::process::id()));
    std::fs::write(&path, d).unwrap();
    let (s1, cw, _) = run(&["encode", "--code", path.to_str().unwrap()], "1,0,1,1\n");
    assert_eq!(s1, 0);
    let mut bits: Vec<&str> = cw.trim().split(',').collect();
    bits[2] = if bits[2] == "0" { "1" } else { "0" };
    let (s2, msg, _) = run(&["decode", "--code", path.to_str().unwrap()], &bits.join(","));
    std::fs::remove_file(&path).ok();
    assert_eq!(s2, 0);
    assert_eq!(msg, "1,0,1,1\n");
}

#[test]
fn dual_reports_verified_identities() {
    let d = descriptor(&["f=x^3+x^2+a*x+a^2; g=x+a^2"]);
    for kind in ["euclidean", "quasi", "hermitian"] {
        let (status, out, err) = run(&["dual", "--code", "-", "--kind", kind], &d);
        assert_eq!(status, 0, "{kind}: {err}");
        assert!(out.contains("verified"));
        assert!(!out.contains("FAILED"));
    }
}

#[test]
fn dtable_matches_library_csv() {
    let (_, id) = prime(2);
    let expected = construct::distance_table(&id, 5, 1 << 20).unwrap().to_csv();
    let (status, out, _) = run(&["dtable", "--field", "p=2", "--nmax", "5"], "");
    assert_eq!(status, 0);
    assert_eq!(out, expected);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&[], "").0, 1);
    assert_eq!(run(&["--help"], "").0, 0);
    assert_eq!(run(&["period", "--field", "p=4", "--poly", "x+1"], "").0, 1);
    assert_eq!(run(&["period", "--field", F4, "--poly", "x+("], "").0, 1);
    assert_eq!(run(&["period", "--field", F4, "--t", "1", "--poly", "x^2+x"], "").0, 2);
    let partial = run(&["--budget", "5", "dtable", "--field", "p=2", "--nmax", "7"], "");
    assert_eq!(partial.0, 3);
    assert!(partial.1.contains("7,4,?"));
    let bad = run(&["mkcode", "--field", F4, "--t", "1", "--comp", "f=x^3+x^2+a*x+a^2; g=x+1"], "");
    assert_eq!(bad.0, 2);
    assert!(bad.2.starts_with("error:"));
}

#[test]
fn replicate_passes() {
    let (status, out, _) = run(&["replicate"], "");
    assert_eq!(status, 0, "{out}");
    assert_eq!(out.lines().count(), 9);
    assert!(out.lines().all(|l| l.starts_with("PASS ")));
}

#[test]
fn binary_runs() {
    let out = Command::new(env!("CARGO_BIN_EXE_skewcodes"))
        .args(["period", "--field", F4, "--t", "1", "--poly", "x^3+x^2+1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("m=7\n"));
}
