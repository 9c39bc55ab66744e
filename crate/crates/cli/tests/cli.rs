//! End-to-end tests of the `chila` binary: file round trips, exit codes and
//! the results-store determinism audit.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn chila(dir: &Path) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_chila"));
    cmd.current_dir(dir);
    // Keep tests hermetic: no default store file unless a test opts in.
    cmd.env_remove("CHILA_STORE");
    cmd.arg("--no-store");
    cmd
}

fn chila_with_store(dir: &Path, store: &Path) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_chila"));
    cmd.current_dir(dir);
    cmd.env("CHILA_STORE", store);
    cmd
}

fn stdout_json(output: &Output) -> Value {
    assert!(
        output.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is one JSON document")
}

#[test]
fn construct_verify_round_trip() {
    let tmp = TempDir::new().unwrap();
    let out = chila(tmp.path())
        .args(["construct", "spider2", "--n", "4"])
        .output()
        .unwrap();
    let constructed = stdout_json(&out);
    assert_eq!(constructed["color_count"], 6);
    assert_eq!(constructed["local_antimagic"], true);

    let graph = constructed["files"]["graph"].as_str().unwrap().to_string();
    let labels = constructed["files"]["labeling"].as_str().unwrap().to_string();
    assert!(tmp.path().join(&graph).exists());
    assert!(tmp
        .path()
        .join(constructed["files"]["profile"].as_str().unwrap())
        .exists());

    let out = chila(tmp.path()).args(["verify", &graph, &labels]).output().unwrap();
    let verdict = stdout_json(&out);
    assert_eq!(verdict["local_antimagic"], true);
    assert_eq!(verdict["color_count"], constructed["color_count"]);
    assert_eq!(verdict["profile"]["t"], 6);
    assert_eq!(verdict["profile"]["r"], 2);
    assert_eq!(verdict["pendant_lemma_ok"], true);
}

#[test]
fn solve_reports_known_values() {
    let tmp = TempDir::new().unwrap();
    chila(tmp.path())
        .args(["construct", "spider2", "--n", "3"])
        .output()
        .unwrap();
    let out = chila(tmp.path())
        .args(["solve", "spider2-n3.graph"])
        .output()
        .unwrap();
    assert_eq!(stdout_json(&out)["chi_la"], 4);

    fs::write(tmp.path().join("p6.graph"), "0 1\n1 2\n2 3\n3 4\n4 5\n").unwrap();
    let out = chila(tmp.path()).args(["solve", "p6.graph"]).output().unwrap();
    let solved = stdout_json(&out);
    assert_eq!(solved["chi_la"], 3);
    assert_eq!(solved["method"], "exhaustive");
    assert_eq!(solved["exhaustive"], true);

    chila(tmp.path())
        .args(["construct", "wheel", "--n", "4"])
        .output()
        .unwrap();
    let out = chila(tmp.path())
        .args(["solve", "wheel-n4.graph", "--jobs", "2"])
        .output()
        .unwrap();
    assert_eq!(stdout_json(&out)["chi_la"], 3);
}

#[test]
fn input_errors_exit_with_code_two() {
    let tmp = TempDir::new().unwrap();
    let out = chila(tmp.path())
        .args(["solve", "missing.graph"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // 13 edges exceed the default search limit.
    let long_path: String = (0..13).map(|i| format!("{i} {}\n", i + 1)).collect();
    fs::write(tmp.path().join("p14.graph"), long_path).unwrap();
    let out = chila(tmp.path()).args(["solve", "p14.graph"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    // A duplicated label breaks the bijection.
    chila(tmp.path())
        .args(["construct", "star", "--k", "3"])
        .output()
        .unwrap();
    let labels_path = tmp.path().join("star-k3.labels");
    let tampered = fs::read_to_string(&labels_path)
        .unwrap()
        .replace("1 2", "1 1");
    fs::write(&labels_path, tampered).unwrap();
    let out = chila(tmp.path())
        .args(["verify", "star-k3.graph", "star-k3.labels"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("labeling mismatch"));
}

#[test]
fn experiment_batch_reports_rows_and_gates_on_consistency() {
    let tmp = TempDir::new().unwrap();
    chila(tmp.path())
        .args(["construct", "star", "--k", "3"])
        .output()
        .unwrap();
    chila(tmp.path())
        .args(["construct", "spider2", "--n", "4"])
        .output()
        .unwrap();
    // A three-color W_4 labeling: cycle edges 2,7,3,4 and spokes 5,6,1,8.
    chila(tmp.path())
        .args(["construct", "wheel", "--n", "4"])
        .output()
        .unwrap();
    fs::write(
        tmp.path().join("w4.labels"),
        "0 2\n1 7\n2 3\n3 4\n4 5\n5 6\n6 1\n7 8\n",
    )
    .unwrap();
    fs::write(
        tmp.path().join("batch.txt"),
        "# graph labeling i s\n\
         star-k3.graph star-k3.labels 2 3\n\
         spider2-n4.graph spider2-n4.labels 1 3\n\
         wheel-n4.graph w4.labels 3 12\n",
    )
    .unwrap();

    let out = chila(tmp.path())
        .args(["experiment", "batch.txt", "--use-solver"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<Value> = String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("JSONL row"))
        .collect();
    assert_eq!(lines.len(), 3);

    assert_eq!(lines[0]["predicted"]["applicable"], true);
    assert_eq!(lines[0]["predicted"]["exact"], 6);
    assert_eq!(lines[0]["solver_value"], 6);
    assert_eq!(lines[0]["certified_value"], 6);
    assert_eq!(lines[0]["consistent"], true);

    assert_eq!(lines[1]["predicted"]["applicable"], false);
    assert_eq!(lines[1]["constructed_color_count"], Value::Null);
    assert_eq!(lines[1]["consistent"], true);

    // The augmented wheel is past the solver limit but certifies exactly.
    assert_eq!(lines[2]["predicted"]["exact"], 13);
    assert_eq!(lines[2]["certified_value"], 13);
    assert_eq!(lines[2]["solver_value"], Value::Null);
    assert_eq!(lines[2]["consistent"], true);
}

#[test]
fn results_store_determinism_audit() {
    let tmp = TempDir::new().unwrap();
    let store = tmp.path().join("store.jsonl");
    chila(tmp.path())
        .args(["construct", "spider2", "--n", "3"])
        .output()
        .unwrap();

    for jobs in ["1", "4"] {
        let out = chila_with_store(tmp.path(), &store)
            .args(["solve", "spider2-n3.graph", "--jobs", jobs])
            .output()
            .unwrap();
        assert!(out.status.success());
    }

    let records: Vec<Value> = fs::read_to_string(&store)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(records.len(), 2);
    assert_eq!(records[0]["key"], records[1]["key"]);
    assert_eq!(records[0]["payload"], records[1]["payload"]);
    assert_eq!(records[0]["payload"]["chi_la"], 4);
}

#[test]
fn no_store_flag_suppresses_the_store() {
    let tmp = TempDir::new().unwrap();
    chila(tmp.path())
        .args(["construct", "star", "--k", "3"])
        .output()
        .unwrap();
    let out = chila(tmp.path())
        .args(["solve", "star-k3.graph"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(!tmp.path().join("chila-results.jsonl").exists());
}

#[test]
fn predict_from_a_synthetic_profile() {
    let tmp = TempDir::new().unwrap();
    fs::write(
        tmp.path().join("w4.profile.json"),
        r#"{"t":3,"r":3,"b":0,"e":8,"class_sizes":[2,2,1],"class_colors":[11,15,20],"has_pendant":[false,false,false]}"#,
    )
    .unwrap();
    let out = chila(tmp.path())
        .args(["predict", "--profile", "w4.profile.json", "--i", "3", "--s", "12"])
        .output()
        .unwrap();
    let bounds = stdout_json(&out);
    assert_eq!(bounds["exact"], 13);
    assert_eq!(bounds["case"], "below-first-color");

    // Inapplicable parameters still exit 0; the gate is not a failure.
    let out = chila(tmp.path())
        .args(["predict", "--profile", "w4.profile.json", "--i", "1", "--s", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["applicable"], false);

    // A profile that breaks its own invariants is an input error.
    fs::write(
        tmp.path().join("bad.profile.json"),
        r#"{"t":3,"r":3,"b":0,"e":8,"class_sizes":[2,2,1],"class_colors":[11,15,21],"has_pendant":[false,false,false]}"#,
    )
    .unwrap();
    let out = chila(tmp.path())
        .args(["predict", "--profile", "bad.profile.json", "--i", "3", "--s", "12"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn construct_star_augment_family() {
    let tmp = TempDir::new().unwrap();
    let out = chila(tmp.path())
        .args(["construct", "star-augment", "--k", "3", "--i", "2", "--s", "3"])
        .output()
        .unwrap();
    let report = stdout_json(&out);
    assert_eq!(report["edges"], 6);
    assert_eq!(report["color_count"], 6);
    assert_eq!(report["local_antimagic"], true);
    assert!(tmp
        .path()
        .join("star-augment-k3-i2-s3.profile.json")
        .exists());
}

#[test]
fn augment_writes_certified_files() {
    let tmp = TempDir::new().unwrap();
    chila(tmp.path())
        .args(["construct", "star", "--k", "3"])
        .output()
        .unwrap();
    let out = chila(tmp.path())
        .args(["augment", "star-k3.graph", "star-k3.labels", "--i", "2", "--s", "3"])
        .output()
        .unwrap();
    let report = stdout_json(&out);
    assert_eq!(report["color_count"], 6);
    assert_eq!(report["certified"], 6);
    assert_eq!(report["local_antimagic"], true);
    assert_eq!(report["edges"], 6);

    let graph = report["files"]["graph"].as_str().unwrap().to_string();
    let labels = report["files"]["labeling"].as_str().unwrap().to_string();
    let out = chila(tmp.path()).args(["verify", &graph, &labels]).output().unwrap();
    assert_eq!(stdout_json(&out)["color_count"], 6);
}
