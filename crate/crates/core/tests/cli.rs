use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fillperm"))
        .args(args)
        .output()
        .unwrap()
}

fn run_fixture(cmd: &str, file: &str, extra: &[&str]) -> Output {
    let path = fixture(file);
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn validate_reports_counts() {
    let o = run_fixture("validate", "zeta.fp", &[]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "valid, n=6, c=4, genus=2\n");

    let o = run_fixture("validate", "sigma_f6.fp", &["--format", "record"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["valid"], true);
    assert_eq!(v["genus"], 6);
}

#[test]
fn validate_rejects_non_filling() {
    let o = run_fixture("validate", "not_filling.fp", &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("invalid:"));
}

#[test]
fn malformed_input_is_a_usage_error() {
    let o = run_fixture("validate", "bad_syntax.fp", &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    assert_eq!(run_fixture("validate", "missing.fp", &[]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn info_shows_piece_type() {
    let o = run_fixture("info", "sigma_z.fp", &[]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("n=8 c=4 genus=3"));
    assert!(out.contains("green-normalized: yes"));
    assert!(out.contains("piece: k=3 type=(4,12,4,12)"));
}

#[test]
fn assemble_reproduces_f6() {
    let (host, piece) = (fixture("sigma_f.fp"), fixture("sigma_z.fp"));
    let o = run(&[
        "assemble",
        "--host",
        host.to_str().unwrap(),
        "--piece",
        piece.to_str().unwrap(),
        "--i",
        "3",
        "--j",
        "2",
        "--format",
        "record",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let text = serde_json::to_string(&v["result"]).unwrap();
    let glued = fillperm::io::parse_input(&text).unwrap().validate().unwrap();
    assert_eq!(glued, fillperm::fixtures::sigma_f6());

    let wrong = run(&[
        "assemble",
        "--host",
        host.to_str().unwrap(),
        "--piece",
        piece.to_str().unwrap(),
        "--i",
        "3",
        "--j",
        "4",
    ]);
    assert_eq!(wrong.status.code(), Some(2));
}

#[test]
fn decompose_lists_witnesses() {
    let o = run_fixture("decompose", "sigma_f6.fp", &[]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("k=3 l=3 x=3 a=38 y=39 b=2 type=(12,4,12,4)\n"));
    assert!(out.contains("k=5 l=1 x=1 a=16 y=23 b=38 type=(10,4,28,6)\n"));

    let o = run_fixture("decompose", "sigma_f6.fp", &["--k", "3", "--format", "record"]);
    let v: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.iter().all(|d| d["k"] == 3 && d["l"] == 3));

    let o = run_fixture("decompose", "torus.fp", &[]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "no decomposition\n");

    assert_eq!(run_fixture("decompose", "zeta.fp", &[]).status.code(), Some(2));
}

#[test]
fn extract_prints_decorated_runs() {
    let o = run_fixture(
        "extract",
        "sigma_f.fp",
        &["--x", "1", "--a", "4", "--y", "11", "--b", "14", "--k", "2"],
    );
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("piece runs: (14',5,10,11)(1,2,13,20,7,6,19,14)(4,17,18,1')(11',16,9,8,15,12,3,4')"));
    assert!(out.contains(&format!("piece: {}\n", fillperm::fixtures::zeta_prime().sigma())));
    assert!(out.contains("remainder: (1,2,3,4)\n"));

    let bad = run_fixture(
        "extract",
        "sigma_f.fp",
        &["--x", "1", "--a", "4", "--y", "11", "--b", "14", "--k", "1"],
    );
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn roundtrip_reports_conjugators() {
    let o = run_fixture("roundtrip", "sigma_f6.fp", &["--k", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("k=5 l=1 x=1 a=16 y=23 b=38 type=(10,4,28,6): kappa^0 delta^4"));
    assert!(!out.contains("FAILED"));
}

#[test]
fn equivalence_verdicts() {
    let (z, z2) = (fixture("zeta.fp"), fixture("zeta_prime.fp"));
    let o = run(&["equivalent", z.to_str().unwrap(), z2.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("NOT-EQUIVALENT\n"));

    let o = run(&["equivalent", z.to_str().unwrap(), z.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("EQUIVALENT\nwitness: "));

    let (f, f6) = (fixture("sigma_f.fp"), fixture("sigma_f6.fp"));
    assert_eq!(
        run(&["equivalent", f.to_str().unwrap(), f6.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn census_small_cases() {
    let o = run(&["census", "--n", "1", "--single-cycle"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("n=1 single-cycle=yes raw=2 orbits=1"));

    let o = run(&["census", "--n", "3", "--single-cycle"]);
    assert!(stdout(&o).starts_with("n=3 single-cycle=yes raw=0 orbits=0"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("n5.jsonl");
    let o = run(&["census", "--n", "5", "--single-cycle", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("bound=672 closed-under-twists=yes"));
    let file = std::io::BufReader::new(std::fs::File::open(&path).unwrap());
    let records = fillperm::census::read_census(file).unwrap();
    assert!(!records.is_empty() && records.len() <= 672);

    assert_eq!(run(&["census", "--n", "0"]).status.code(), Some(2));
}
