//! End-to-end tests of the `ising` binary: each test runs the real
//! executable in a scratch directory and inspects its exit code, output
//! streams, and the files it leaves behind.

use std::path::Path;
use std::process::{Command, Output};

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ising"))
        .current_dir(dir)
        .env_remove("ISING_THREADS")
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&output.stdout)
        )
    })
}

fn stderr_text(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

#[test]
fn compute_creates_resumes_and_is_idempotent() {
    let dir = tempfile::tempdir().expect("tempdir");
    let cache = dir.path().join("c.tbl");

    let first = run_in(dir.path(), &["compute", "--max-edges", "6", "--cache", "c.tbl"]);
    assert!(first.status.success(), "{}", stderr_text(&first));
    let bytes_after_first = std::fs::read(&cache).expect("cache written");

    // warm rerun: no recomputation, file untouched
    let rerun = run_in(dir.path(), &["compute", "--max-edges", "6", "--cache", "c.tbl"]);
    assert!(rerun.status.success());
    assert!(String::from_utf8_lossy(&rerun.stdout).contains("nothing to recompute"));
    assert_eq!(std::fs::read(&cache).expect("cache"), bytes_after_first);

    // resuming to 12 gives the same bytes as computing 12 from scratch
    let resumed = run_in(dir.path(), &["compute", "--max-edges", "12", "--cache", "c.tbl"]);
    assert!(resumed.status.success(), "{}", stderr_text(&resumed));
    assert!(String::from_utf8_lossy(&resumed.stdout).contains("resuming from 6 edges"));
    let fresh = run_in(dir.path(), &["compute", "--max-edges", "12", "--cache", "f.tbl"]);
    assert!(fresh.status.success());
    assert_eq!(
        std::fs::read(&cache).expect("resumed"),
        std::fs::read(dir.path().join("f.tbl")).expect("fresh"),
        "resumed and fresh caches differ"
    );

    // sizes round down to whole multiples of 3
    let rounded = run_in(dir.path(), &["compute", "--max-edges", "8", "--cache", "r.tbl"]);
    assert!(rounded.status.success());
    let content = std::fs::read_to_string(dir.path().join("r.tbl")).expect("cache");
    assert!(content.contains("max-edges 6"), "{content}");
}

#[test]
fn compute_refuses_a_corrupt_cache() {
    let dir = tempfile::tempdir().expect("tempdir");
    let cache = dir.path().join("c.tbl");
    let garbage = "ising-table v1\nsha256 0000\nmax-edges 3\n3 0 0 0 240\n";
    std::fs::write(&cache, garbage).expect("write");

    let output = run_in(dir.path(), &["compute", "--max-edges", "6", "--cache", "c.tbl"]);
    assert!(!output.status.success(), "corruption must be refused");
    assert!(
        stderr_text(&output).contains("corrupt"),
        "{}",
        stderr_text(&output)
    );
    // the damaged file is left exactly as found, never recomputed over
    assert_eq!(std::fs::read_to_string(&cache).expect("cache"), garbage);
}

#[test]
fn lock_blocks_concurrent_use_of_one_cache() {
    let dir = tempfile::tempdir().expect("tempdir");
    std::fs::write(dir.path().join("c.tbl.lock"), "held\n").expect("lock");

    let blocked = run_in(dir.path(), &["compute", "--max-edges", "3", "--cache", "c.tbl"]);
    assert!(!blocked.status.success());
    assert!(stderr_text(&blocked).contains("locked"), "{}", stderr_text(&blocked));

    std::fs::remove_file(dir.path().join("c.tbl.lock")).expect("unlock");
    let unblocked = run_in(dir.path(), &["compute", "--max-edges", "3", "--cache", "c.tbl"]);
    assert!(unblocked.status.success(), "{}", stderr_text(&unblocked));
    // the lock is released afterwards
    assert!(!dir.path().join("c.tbl.lock").exists());
}

#[test]
fn verify_reports_every_suite_and_enforces_depth() {
    let dir = tempfile::tempdir().expect("tempdir");
    let computed = run_in(dir.path(), &["compute", "--max-edges", "6", "--cache", "c.tbl"]);
    assert!(computed.status.success());

    let verified = run_in(
        dir.path(),
        &[
            "verify",
            "--max-edges",
            "6",
            "--cache",
            "c.tbl",
            "--report",
            "report.json",
        ],
    );
    assert!(verified.status.success(), "{}", stderr_text(&verified));
    let report = stdout_json(&verified);
    assert_eq!(report["status"], "pass");
    let suites = report["suites"].as_array().expect("suites");
    assert_eq!(suites.len(), 8);
    for suite in suites {
        assert_eq!(suite["status"], "pass", "suite {}", suite["suite"]);
        assert!(suite["counterexample"].is_null());
    }
    // the report file holds the same document
    let on_disk: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("report.json")).expect("report"),
    )
    .expect("valid JSON");
    assert_eq!(on_disk, report);

    // a cache shallower than the requested depth is an error, not a guess
    let too_deep = run_in(dir.path(), &["verify", "--max-edges", "12", "--cache", "c.tbl"]);
    assert!(!too_deep.status.success());
    assert!(stderr_text(&too_deep).contains("depth"), "{}", stderr_text(&too_deep));
}

#[test]
fn verify_negative_control_fails_and_names_the_location() {
    let dir = tempfile::tempdir().expect("tempdir");
    let computed = run_in(dir.path(), &["compute", "--max-edges", "9", "--cache", "c.tbl"]);
    assert!(computed.status.success());

    let output = run_in(
        dir.path(),
        &[
            "verify",
            "--suite",
            "pde",
            "--max-edges",
            "9",
            "--cache",
            "c.tbl",
            "--inject-perturbation",
        ],
    );
    assert!(!output.status.success(), "perturbation must be detected");
    let report = stdout_json(&output);
    assert_eq!(report["status"], "fail");
    assert_eq!(report["perturbation"]["edges"], 9);
    let pde = &report["suites"][0];
    assert_eq!(pde["status"], "fail");
    let counterexample = &pde["counterexample"];
    assert!(
        counterexample["edges"].is_u64() && counterexample["genus"].is_u64(),
        "counterexample must name (edges, genus): {counterexample}"
    );
    // the cache file itself is untouched: a clean verify still passes
    let clean = run_in(
        dir.path(),
        &["verify", "--suite", "pde", "--max-edges", "9", "--cache", "c.tbl"],
    );
    assert!(clean.status.success(), "{}", stderr_text(&clean));
}

#[test]
fn export_is_exact_and_deterministic() {
    let dir = tempfile::tempdir().expect("tempdir");
    let computed = run_in(dir.path(), &["compute", "--max-edges", "3", "--cache", "c.tbl"]);
    assert!(computed.status.success());

    let csv = run_in(
        dir.path(),
        &["export", "--format", "csv", "--out", "t.csv", "--cache", "c.tbl"],
    );
    assert!(csv.status.success());
    let want = "\
e,g,a,b,c
3,0,0,0,240
3,0,0,3,480
3,0,1,1,720
3,1,0,0,240
3,1,0,3,120
";
    assert_eq!(
        std::fs::read_to_string(dir.path().join("t.csv")).expect("csv"),
        want
    );

    let json = run_in(
        dir.path(),
        &["export", "--format", "json", "--out", "t.json", "--cache", "c.tbl"],
    );
    assert!(json.status.success());
    let first = std::fs::read(dir.path().join("t.json")).expect("json");
    let parsed: serde_json::Value =
        serde_json::from_slice(&first).expect("export is valid JSON");
    assert_eq!(parsed["version"], 1);
    assert_eq!(parsed["max_edges"], 3);
    assert_eq!(parsed["rows"].as_array().expect("rows").len(), 5);
    assert_eq!(parsed["rows"][2]["c"], "720");

    // re-export is byte-identical
    let again = run_in(
        dir.path(),
        &["export", "--format", "json", "--out", "t2.json", "--cache", "c.tbl"],
    );
    assert!(again.status.success());
    assert_eq!(std::fs::read(dir.path().join("t2.json")).expect("json"), first);

    // a missing cache exports as a header-only file
    let empty = run_in(
        dir.path(),
        &["export", "--format", "csv", "--out", "e.csv", "--cache", "missing.tbl"],
    );
    assert!(empty.status.success());
    assert_eq!(
        std::fs::read_to_string(dir.path().join("e.csv")).expect("csv"),
        "e,g,a,b,c\n"
    );
}

#[test]
fn bench_measures_and_cross_checks_modes() {
    let dir = tempfile::tempdir().expect("tempdir");
    let output = run_in(dir.path(), &["bench", "--sizes", "3,6"]);
    assert!(output.status.success(), "{}", stderr_text(&output));
    let report = stdout_json(&output);
    assert_eq!(report["status"], "pass");
    assert_eq!(report["modes_identical"], true);
    let sizes = report["sizes"].as_array().expect("sizes");
    assert_eq!(sizes.len(), 2);
    assert_eq!(sizes[0]["edges"], 3);
    assert_eq!(sizes[1]["edges"], 6);
    assert!(sizes[1]["vm_hwm_kb"].as_u64().expect("memory") > 0);
    assert_eq!(sizes[1]["top_genus"], 1);

    let unsorted = run_in(dir.path(), &["bench", "--sizes", "6,3"]);
    assert!(!unsorted.status.success(), "sizes must increase");
}

#[test]
fn thread_budget_is_validated_and_honoured() {
    let dir = tempfile::tempdir().expect("tempdir");

    let bad = Command::new(env!("CARGO_BIN_EXE_ising"))
        .current_dir(dir.path())
        .env("ISING_THREADS", "zero?")
        .args(["compute", "--max-edges", "3", "--cache", "c.tbl"])
        .output()
        .expect("binary runs");
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr_text(&bad).contains("ISING_THREADS"), "{}", stderr_text(&bad));

    let good = Command::new(env!("CARGO_BIN_EXE_ising"))
        .current_dir(dir.path())
        .env("ISING_THREADS", "1")
        .args(["compute", "--max-edges", "6", "--cache", "c.tbl"])
        .output()
        .expect("binary runs");
    assert!(good.status.success(), "{}", stderr_text(&good));

    // a single-threaded run produces the same bytes as the default pool
    let reference = run_in(dir.path(), &["compute", "--max-edges", "6", "--cache", "r.tbl"]);
    assert!(reference.status.success());
    assert_eq!(
        std::fs::read(dir.path().join("c.tbl")).expect("budgeted"),
        std::fs::read(dir.path().join("r.tbl")).expect("default"),
    );
}
