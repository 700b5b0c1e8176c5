use std::path::PathBuf;
use std::process::Command;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use wreathcover::cli::{run, EXIT_CHECK_FAILED, EXIT_INVALID_INPUT, EXIT_OK};
use wreathcover::reducer::dihedral_example;
use wreathcover::search::random_perm;
use wreathcover::wreath::TupleFile;

fn cli(args: &[&str]) -> (i32, String) {
    run(std::iter::once("wreathcover").chain(args.iter().copied()))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wreathcover-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let (code, out) = cli(&all);
    (
        code,
        serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}")),
    )
}

#[test]
fn realize_and_check_a_cell() {
    let (code, out) = cli(&["realize", "--type", "I1.1", "--ell", "9", "--a", "2"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("SwrS2"));
    let (code, v) = json(&[
        "realize",
        "--type",
        "F4.4",
        "--ell",
        "9",
        "--variant",
        "even",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["passed"], Value::Bool(true));
    assert_eq!(v["command"], "realize");
    assert!(v.get("timings_ms").is_none());
}

#[test]
fn invalid_input_exit_codes() {
    assert_eq!(
        cli(&["realize", "--type", "I2.3", "--ell", "10"]).0,
        EXIT_INVALID_INPUT
    );
    assert_eq!(
        cli(&["realize", "--type", "NOPE", "--ell", "9"]).0,
        EXIT_INVALID_INPUT
    );
    assert_eq!(cli(&["verify-table", "--table", "5"]).0, EXIT_INVALID_INPUT);
    assert_eq!(
        cli(&["genus", "--tuple", "/nonexistent/tuple.json"]).0,
        EXIT_CHECK_FAILED
    );
    assert_eq!(cli(&["frobnicate"]).0, EXIT_INVALID_INPUT);
    assert_eq!(cli(&["--help"]).0, EXIT_OK);
    let (code, out) = cli(&["search", "--degree", "4", "--classes", "[2];[3]"]);
    assert_eq!(code, EXIT_INVALID_INPUT, "{out}");
}

#[test]
fn json_is_reproducible() {
    let args = ["verify-table", "--table", "1", "--ell-range", "9:9"];
    let (c1, a) = cli(&[&args[..], &["--json"]].concat());
    let (c2, b) = cli(&[&args[..], &["--json", "-", "--parallel", "1"]].concat());
    assert_eq!((c1, c2), (EXIT_OK, EXIT_OK));
    assert_eq!(a, b);
    let (_, timed) = cli(&[&args[..], &["--json", "--timings"]].concat());
    assert!(timed.contains("timings_ms"));
}

#[test]
fn small_tables() {
    for t in ["2", "3", "4"] {
        let (code, out) = cli(&["verify-table", "--table", t]);
        assert_eq!(code, EXIT_OK, "table {t}: {out}");
    }
}

#[test]
fn tuple_file_commands() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let a = random_perm(6, &mut rng);
    let b: Vec<_> = (0..3).map(|_| random_perm(6, &mut rng)).collect();
    let file = TupleFile::new(dihedral_example(&a, [&b[0], &b[1], &b[2]]).unwrap()).unwrap();
    let path = scratch("dihedral.json");
    std::fs::write(&path, file.to_json()).unwrap();
    let p = path.to_str().unwrap();
    let (code, v) = json(&["reduce", "--tuple", p]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["payload"]["certificate_text"], "a*b1*c2*b2*c1");
    let (code, _) = cli(&["classify", "--tuple", p]);
    assert_ne!(code, EXIT_INVALID_INPUT);

    let realized = scratch("f44.json");
    let r = realized.to_str().unwrap();
    let (code, _) = cli(&["realize", "--type", "F4.4", "--ell", "9", "--tuple-out", r]);
    assert_eq!(code, EXIT_OK);
    let (code, v) = json(&["genus", "--tuple", r]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["payload"]["genus"]["genus"], 1);
    assert_eq!(cli(&["classify", "--tuple", r]).0, EXIT_OK);
    assert_eq!(cli(&["rpi", "--tuple", r, "--cyclic"]).0, EXIT_OK);
    assert_eq!(cli(&["reduce", "--tuple", r]).0, EXIT_INVALID_INPUT);

    let report = scratch("report.json");
    let (code, text) = cli(&["genus", "--tuple", r, "--json", report.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(text.contains("checks passed"));
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(saved["command"], "genus");

    let bad = scratch("bad.json");
    std::fs::write(&bad, "{\"ell\": 3}").unwrap();
    assert_eq!(
        cli(&["genus", "--tuple", bad.to_str().unwrap()]).0,
        EXIT_INVALID_INPUT
    );
}

#[test]
fn search_command() {
    let (code, v) = json(&[
        "search",
        "--degree",
        "4",
        "--classes",
        "[4];[2,2];[2]",
        "--require-transitive",
        "--order",
        "8",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(
        v["payload"]["tuples"]
            .as_array()
            .is_some_and(|t| !t.is_empty()),
        "{v}"
    );
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_wreathcover");
    let ok = Command::new(bin)
        .args(["verify-table", "--table", "3"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("checks passed"));
    let bad = Command::new(bin)
        .args(["realize", "--type", "I2.3", "--ell", "10"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_INVALID_INPUT));
    assert!(!bad.stderr.is_empty());
}
