//! End-to-end checks of the binary: JSON reports on stdout, diagnostics on
//! stderr, one exit code per error family.

use std::process::Output;

fn run(args: &[&str]) -> Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_orthodet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn orthodet_reports_classes() {
    assert_eq!(json_of(&run(&["orthodet", "gl32-deleted6"]))["class"], "7");
    assert_eq!(json_of(&run(&["orthodet", "dihedral3-deg2"]))["class"], "3");
    assert_eq!(
        json_of(&run(&["orthodet", "dihedral5-deg2"]))["class"],
        "10+2*sqrt(5)"
    );
}

#[test]
fn cyc_accepts_polynomial_text() {
    let report = json_of(&run(&["cyc", "x^6+x^5+x^4+x^3+x^2+x+1"]));
    assert_eq!(report["class"], "7");
}

#[test]
fn induce_formula_only() {
    let report = json_of(&run(&["induce", "--formula-only", "--n", "21", "--delta", "5"]));
    assert_eq!(report["class"], "5");
    let report = json_of(&run(&["induce", "--formula-only", "--n", "14", "--delta", "5"]));
    assert_eq!(report["class"], "1");
}

#[test]
fn induce_construct_and_verify() {
    let report = json_of(&run(&["induce", "a5-deg3"]));
    assert_eq!(report["formula_class"], "5");
    assert_eq!(report["construction_class"], "5");
    assert_eq!(report["agreement"], true);
}

#[test]
fn schur2_on_doubled_module() {
    let report = json_of(&run(&["schur2", "double:gl32-deleted6"]));
    assert_eq!(report["class"], "7");
}

#[test]
fn catalog_round_trip_through_a_file() {
    let emitted = run(&["catalog", "emit", "dihedral5-deg2"]);
    assert!(emitted.status.success());
    let dir = std::env::temp_dir();
    let path = dir.join("orthodet-cli-test-dihedral5.json");
    std::fs::write(&path, &emitted.stdout).unwrap();
    let report = json_of(&run(&["orthodet", path.to_str().unwrap()]));
    assert_eq!(report["class"], "10+2*sqrt(5)");
    std::fs::remove_file(&path).ok();
}

#[test]
fn catalog_list_names_every_entry() {
    let report = json_of(&run(&["catalog", "list"]));
    let entries = report["entries"].as_array().unwrap();
    assert!(entries.iter().any(|e| e == "gl32-deleted6"));
    assert!(entries.len() >= 20);
}

#[test]
fn exit_codes_per_error_family() {
    // unknown input
    assert_eq!(run(&["orthodet", "no-such-entry"]).status.code(), Some(2));
    // odd degree
    assert_eq!(run(&["orthodet", "a5-deg3"]).status.code(), Some(3));
    // enumeration cap
    assert_eq!(
        run(&["check", "gl32-perm7", "--cap", "10"]).status.code(),
        Some(5)
    );
    // charpoly is not a perfect square
    assert_eq!(
        run(&["schur2", "dihedral3-deg2"]).status.code(),
        Some(6)
    );
    // eigenvalue +-1 breaks the isometry shortcut
    assert_eq!(run(&["cyc", "x^2-2*x+1"]).status.code(), Some(7));
    // constant coefficient of an isometry charpoly must be 1
    assert_eq!(run(&["cyc", "x^2-2"]).status.code(), Some(11));
    // delta must generate a proper extension
    assert_eq!(
        run(&["induce", "--formula-only", "--n", "3", "--delta", "4"])
            .status
            .code(),
        Some(12)
    );
}
