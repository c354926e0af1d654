use std::path::Path;
use std::process::{Command, Output};

use pivotlab::cli::{EXIT_CYCLE, EXIT_ERROR, EXIT_OK, EXIT_STEP_LIMIT, EXIT_USAGE, EXIT_VERDICT_FAIL};
use pivotlab::gen::{generate, Family, GenSpec, Generated};

fn pivotlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pivotlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn write_instance(dir: &Path, name: &str, spec: GenSpec) -> String {
    let path = dir.join(name);
    match generate(&spec).unwrap() {
        Generated::Instance(i) => i.write(&path).unwrap(),
        Generated::Table(_) => unreachable!(),
    }
    p(&path).to_string()
}

#[test]
fn solve_morris_three() {
    let out = pivotlab(&["solve", "--family", "morris", "--n", "3", "--rule", "murty", "--start", "000"]);
    assert_eq!(code(&out), EXIT_OK);
    let text = stdout(&out);
    assert!(text.lines().any(|l| l == "steps=5"), "{text}");
    assert!(text.contains("status=sink-reached"));
    assert!(text.lines().any(|l| l.starts_with("z=")));
    assert!(text.lines().any(|l| l.starts_with("w=")));
}

#[test]
fn greedy_antipodal_cycles() {
    let out = pivotlab(&["solve", "--family", "morris", "--n", "3", "--rule", "greedy-antipodal", "--start", "110"]);
    assert_eq!(code(&out), EXIT_CYCLE);
}

#[test]
fn random_edge_on_uniform_square() {
    let dir = tempfile::tempdir().unwrap();
    let k2 = write_instance(dir.path(), "k2.json", GenSpec::new(Family::Uniform, 2, 0));
    for seed in ["7", "8"] {
        let out = pivotlab(&["solve", "--instance", &k2, "--rule", "random-edge", "--seed", seed, "--start", "00"]);
        assert_eq!(code(&out), EXIT_OK);
        assert!(stdout(&out).lines().any(|l| l == "steps=2"));
    }
}

#[test]
fn trace_file_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("t.csv");
    let out = pivotlab(&["solve", "--family", "morris", "--n", "3", "--trace", p(&trace)]);
    assert_eq!(code(&out), EXIT_OK);
    let csv = std::fs::read_to_string(&trace).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "step,vertex,outmap,chosen,level,L,status");
    assert_eq!(lines.len(), 1 + 6);
    assert!(lines[6].ends_with(",sink-reached"));
}

#[test]
fn step_limit_has_its_own_code() {
    let out = pivotlab(&["solve", "--family", "morris", "--n", "5", "--max-steps", "3"]);
    assert_eq!(code(&out), EXIT_STEP_LIMIT);
}

#[test]
fn verify_examples() {
    let out = pivotlab(&["verify", "--family", "morris", "--n", "5", "--checks", "uso,holt-klee"]);
    assert_eq!(code(&out), EXIT_OK);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["verdict"], "pass");

    let dir = tempfile::tempdir().unwrap();
    let k4 = write_instance(dir.path(), "k4.json", GenSpec::new(Family::RandomK, 4, 3));
    let out = pivotlab(&["verify", "--instance", &k4, "--checks", "2u,local-uu"]);
    assert_eq!(code(&out), EXIT_OK);

    let out = pivotlab(&["verify", "--family", "morris", "--n", "3", "--checks", "2uu"]);
    assert_eq!(code(&out), EXIT_VERDICT_FAIL);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["verdict"], "fail");
    assert!(!report["reports"][0]["witness"].is_null());
}

#[test]
fn gen_export_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (family, n) in [("morris", "5"), ("random-k", "4"), ("random-p", "4"), ("uniform", "3")] {
        let json = dir.path().join(format!("{family}.json"));
        let uso = dir.path().join(format!("{family}.uso"));
        assert_eq!(code(&pivotlab(&["gen", "--family", family, "--n", n, "--seed", "5", "-o", p(&json)])), EXIT_OK);
        assert_eq!(code(&pivotlab(&["export", "--instance", p(&json), "-o", p(&uso)])), EXIT_OK);
        let out = pivotlab(&["verify", "--uso", p(&uso), "--checks", "uso,unique-completion,holt-klee"]);
        assert_eq!(code(&out), EXIT_OK, "{family}: {}", stdout(&out));
    }
    let uso = dir.path().join("ro.uso");
    assert_eq!(code(&pivotlab(&["gen", "--family", "random-orientation", "--n", "3", "-o", p(&uso)])), EXIT_OK);
    let out = pivotlab(&["verify", "--uso", p(&uso), "--checks", "uso"]);
    assert!([EXIT_OK, EXIT_VERDICT_FAIL].contains(&code(&out)));
}

#[test]
fn morris_gen_and_export_shapes() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("m5.json");
    pivotlab(&["gen", "--family", "morris", "--n", "5", "-o", p(&json)]);
    let inst = pivotlab::LcpInstance::read(&json).unwrap();
    assert_eq!(inst, pivotlab::uso::morris_instance(5).unwrap());

    let m3 = dir.path().join("m3.json");
    let table = dir.path().join("m3.uso");
    pivotlab(&["gen", "--family", "morris", "--n", "3", "-o", p(&m3)]);
    assert_eq!(code(&pivotlab(&["export", "--instance", p(&m3), "-o", p(&table)])), EXIT_OK);
    let text = std::fs::read_to_string(&table).unwrap();
    assert_eq!(text.lines().count(), 1 + 8);
}

#[test]
fn identical_seeds_give_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let read = |name: &str| std::fs::read(dir.path().join(name)).unwrap();
    for name in ["a.json", "b.json"] {
        pivotlab(&["gen", "--family", "random-p", "--n", "5", "--seed", "42", "-o", p(&dir.path().join(name))]);
    }
    assert_eq!(read("a.json"), read("b.json"));
    for name in ["a.csv", "b.csv"] {
        let out = pivotlab(&["experiment", "--name", "thm-id", "--n", "3,5", "-o", p(&dir.path().join(name))]);
        assert_eq!(code(&out), EXIT_OK);
    }
    assert_eq!(read("a.csv"), read("b.csv"));
    for name in ["a.trace", "b.trace"] {
        pivotlab(&[
            "solve", "--family", "random-p", "--n", "6", "--seed", "3", "--rule", "random-edge",
            "--trace", p(&dir.path().join(name)),
        ]);
    }
    assert_eq!(read("a.trace"), read("b.trace"));
}

#[test]
fn bad_invocations() {
    assert_eq!(code(&pivotlab(&["frobnicate"])), EXIT_USAGE);
    assert_eq!(code(&pivotlab(&["solve", "--family", "morris"])), EXIT_USAGE);
    assert_eq!(code(&pivotlab(&["solve", "--family", "morris", "--n", "3", "--bogus"])), EXIT_USAGE);
    assert_eq!(
        code(&pivotlab(&["solve", "--family", "morris", "--n", "3", "--rule", "murty", "--pi", "1,2,3"])),
        EXIT_USAGE
    );
    assert_eq!(
        code(&pivotlab(&["solve", "--family", "morris", "--n", "3", "--rule", "murty-pi", "--pi", "1,1,3"])),
        EXIT_USAGE
    );
    let out = pivotlab(&["solve", "--instance", "/nonexistent/x.json"]);
    assert_eq!(code(&out), EXIT_ERROR);
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent/x.json"));
}

#[test]
fn malformed_instance_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"n\": 2,\n  \"M\": [[1, 0], [0 1]]\n}\n").unwrap();
    let out = pivotlab(&["solve", "--instance", p(&bad)]);
    assert_eq!(code(&out), EXIT_ERROR);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn degenerate_instance_names_basis_and_coordinate() {
    let dir = tempfile::tempdir().unwrap();
    let deg = dir.path().join("deg.json");
    std::fs::write(&deg, r#"{"n":2,"M":[["1","0"],["0","1"]],"q":["0","-1"]}"#).unwrap();
    let out = pivotlab(&["solve", "--instance", p(&deg)]);
    assert_eq!(code(&out), EXIT_ERROR);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("basis {}") && err.contains("coordinate 1"), "{err}");
}
