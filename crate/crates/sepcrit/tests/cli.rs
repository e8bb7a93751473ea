//! End-to-end tests driving the compiled binary.

use std::path::Path;
use std::process::Command;

fn run(args: &[&str]) -> (i32, Vec<u8>, String) {
    run_with_env(args, &[])
}

fn run_with_env(args: &[&str], env: &[(&str, &str)]) -> (i32, Vec<u8>, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sepcrit"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        out.stdout,
        String::from_utf8(out.stderr).expect("utf8 stderr"),
    )
}

fn json(stdout: &[u8]) -> serde_json::Value {
    serde_json::from_slice(stdout).expect("stdout is JSON")
}

fn write_maximally_mixed(path: &Path) {
    let n = 4usize;
    let mut re = vec![0.0; n * n];
    for i in 0..n {
        re[i * n + i] = 0.25;
    }
    let body = serde_json::json!({ "dims": [2, 2], "re": re, "im": vec![0.0; n * n] });
    std::fs::write(path, serde_json::to_vec(&body).unwrap()).unwrap();
}

#[test]
fn detect_family_inside_detection_range_is_entangled() {
    let (code, stdout, stderr) = run(&["detect", "--family", "bennett", "--p", "0.95"]);
    assert_eq!(code, 0);
    let v = json(&stdout);
    assert_eq!(v["verdict"], "ENTANGLED");
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["config"]["family"], "bennett");
    assert_eq!(v["config"]["criterion"], "thm1");
    assert!(v["detection"]["report"]["margin"].as_f64().unwrap() > 0.0);
    assert!(stderr.contains("ENTANGLED"));
}

#[test]
fn detect_maximally_mixed_file_is_inconclusive() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mm.json");
    write_maximally_mixed(&path);
    let (code, stdout, _) = run(&["detect", "--state", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v = json(&stdout);
    assert_eq!(v["verdict"], "INCONCLUSIVE");
    assert!(v["detection"]["report"]["margin"].as_f64().unwrap() <= 0.0);
    assert!(v["detection"].get("p").is_none());
}

#[test]
fn malformed_state_file_exits_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, b"{\"dims\": [2,2], \"re\": [1,0").unwrap();
    let (code, _, stderr) = run(&["detect", "--state", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("line") && stderr.contains("column"), "{stderr}");
}

#[test]
fn state_dump_round_trips_through_packed() {
    let dir = tempfile::tempdir().unwrap();
    let j1 = dir.path().join("s1.json");
    let packed = dir.path().join("s.bin");
    let j2 = dir.path().join("s2.json");
    let (code, _, _) = run(&[
        "state", "dump", "--family", "bennett", "--p", "0.9",
        "--out", j1.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let (code, _, _) = run(&[
        "state", "dump", "--state", j1.to_str().unwrap(),
        "--format", "packed", "--out", packed.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let (code, _, _) = run(&[
        "state", "dump", "--state", packed.to_str().unwrap(),
        "--out", j2.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let a = std::fs::read(&j1).unwrap();
    let b = std::fs::read(&j2).unwrap();
    assert_eq!(a, b, "packed round-trip must preserve every byte");
}

#[test]
fn state_dump_csv_has_entry_rows() {
    let (code, stdout, _) = run(&["state", "dump", "--family", "ghzpert", "--format", "csv"]);
    assert_eq!(code, 0);
    let text = String::from_utf8(stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("row,col,re,im"));
    assert_eq!(lines.count(), 64);
}

#[test]
fn reruns_are_byte_identical() {
    let (_, a, _) = run(&["detect", "--family", "horodecki", "--p", "0.5"]);
    let (_, b, _) = run(&["detect", "--family", "horodecki", "--p", "0.5"]);
    assert_eq!(a, b);
    let (_, f1, _) = run(&["figure", "2"]);
    let (_, f2, _) = run(&["figure", "2"]);
    assert_eq!(f1, f2);
}

#[test]
fn thread_cap_does_not_change_output() {
    let (_, a, _) = run(&["detect", "--family", "bennett", "--p", "0.95"]);
    let (code, b, _) = run_with_env(
        &["detect", "--family", "bennett", "--p", "0.95"],
        &[("SEPCRIT_THREADS", "1")],
    );
    assert_eq!(code, 0);
    assert_eq!(a, b);
    let (code, _, stderr) = run_with_env(
        &["detect", "--family", "bennett"],
        &[("SEPCRIT_THREADS", "zero")],
    );
    assert_eq!(code, 2);
    assert!(stderr.contains("SEPCRIT_THREADS"));
}

#[test]
fn scan_finds_the_perturbed_ghz_threshold() {
    let (code, stdout, stderr) = run(&["scan", "--family", "ghzpert", "--eps", "0.1"]);
    assert_eq!(code, 0);
    let v = json(&stdout);
    assert_eq!(v["status"], "ok");
    let th = v["threshold"].as_f64().unwrap();
    assert!((th - 0.3423477172851564).abs() < 1e-9, "threshold {th}");
    assert!(stderr.contains("threshold"));
}

#[test]
fn scan_rejects_state_files_and_fixed_p() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mm.json");
    write_maximally_mixed(&path);
    let (code, _, _) = run(&["scan", "--state", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    let (code, _, stderr) = run(&["scan", "--family", "bennett", "--p", "0.5"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("--p"));
}

#[test]
fn figure_grids_have_documented_shapes() {
    let (code, stdout, _) = run(&["figure", "1"]);
    assert_eq!(code, 0);
    let text = String::from_utf8(stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p,x,margin"));
    assert_eq!(lines.count(), 101 * 64);

    let (code, stdout, _) = run(&["figure", "6"]);
    assert_eq!(code, 0);
    let text = String::from_utf8(stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p,eps,margin"));
    assert_eq!(lines.count(), 101 * 51);
}

#[test]
fn reproduce_emits_computed_and_quoted_rows() {
    let (code, stdout, _) = run(&["reproduce", "t1"]);
    assert_eq!(code, 0);
    let text = String::from_utf8(stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("criterion,parameter,p_lower,p_upper,provenance,note")
    );
    let rows: Vec<&str> = lines.collect();
    assert!(rows[0].starts_with("this-work,") && rows[0].contains(",computed,"));
    assert!(rows.iter().any(|r| r.starts_with("de-vicente,") && r.contains(",quoted,")));
    let (code, stdout, _) = run(&["reproduce", "t2"]);
    assert_eq!(code, 0);
    let text = String::from_utf8(stdout).unwrap();
    assert!(text.contains("this-work,a=0.9,0.000000,1.000000,computed,all-p"));
}

#[test]
fn basis_dump_reports_the_defective_printed_basis() {
    let (code, stdout, _) = run(&["basis", "dump", "--basis", "hw", "--dim", "4"]);
    assert_eq!(code, 0);
    let v = json(&stdout);
    assert_eq!(v["diagnostics"]["passes"], false);
    assert_eq!(
        v["diagnostics"]["non_hermitian"],
        serde_json::json!([5, 7, 14])
    );
    let (code, stdout, _) = run(&["basis", "dump", "--basis", "hw", "--dim", "3"]);
    assert_eq!(code, 0);
    let v = json(&stdout);
    assert_eq!(v["diagnostics"]["passes"], true);
    assert_eq!(v["elements"].as_array().unwrap().len(), 9);
}

#[test]
fn optimize_is_deterministic_per_seed() {
    let args = [
        "optimize", "--family", "bennett", "--p", "0.9",
        "--shape", "4,4,1,1", "--constant-uv",
        "--restarts", "2", "--evals", "200", "--seed", "11",
    ];
    let (code, a, _) = run(&args);
    assert_eq!(code, 0);
    let (_, b, _) = run(&args);
    assert_eq!(a, b);
    let v = json(&a);
    assert_eq!(v["result"]["params"]["u"].as_array().unwrap().len(), 4);
    assert!(v["result"]["value"].as_f64().unwrap() > 0.0);
}

#[test]
fn usage_and_config_errors_exit_2() {
    let (code, _, _) = run(&["detect", "--nope"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["detect", "--family", "bennett", "--criterion", "thm9"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["detect", "--family", "bennett", "--a", "0.5"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["detect"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["reproduce", "t9"]);
    assert_eq!(code, 2);
}
