use std::process::{Command, Output};

fn stickel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stickel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn gauss_report() {
    let out = stickel(&["gauss", "--c", "3", "--l", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["pass"], true);
    assert_eq!(v["checks"][0]["detail"]["q"], 7);
}

#[test]
fn verify_and_herbrand() {
    assert_eq!(
        stickel(&["verify-stickelberger", "--c", "5", "--lmax", "100"])
            .status
            .code(),
        Some(0)
    );
    let out = stickel(&["herbrand", "--pmax", "150"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let table = v["checks"].as_array().unwrap().last().unwrap()["detail"]
        .as_array()
        .unwrap()
        .clone();
    assert_eq!(table.len(), 7);
    assert_eq!(table[0], serde_json::json!({ "p": 37, "i": 5 }));
}

#[test]
fn exit_codes() {
    assert_eq!(
        stickel(&["theta", "coherence", "--p", "3"]).status.code(),
        Some(1)
    );
    assert_eq!(
        stickel(&["gauss", "--c", "7", "--l", "7"]).status.code(),
        Some(2)
    );
    assert_eq!(stickel(&["gauss", "--c", "7"]).status.code(), Some(2));
    assert_eq!(stickel(&["gauss", "--bogus"]).status.code(), Some(2));
    assert_eq!(
        stickel(&["eigens", "invariants", "--p", "9", "--i", "5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn tsv_and_output_file() {
    let out = stickel(&["--format", "tsv", "theta", "print", "--c", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("command\tcheck\tstatus\tdetail\n"));
    let dir = std::env::temp_dir().join(format!("stickel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = stickel(&[
        "coleman",
        "cw",
        "--p",
        "5",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "coleman cw");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn config_precedence() {
    let dir = std::env::temp_dir().join(format!("stickel-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("job.ini");
    std::fs::write(&path, "c = 5\n[gauss]\nl = 11\n").unwrap();
    let cfg = path.to_str().unwrap();
    let v = json(&stickel(&["--config", cfg, "gauss"]));
    assert_eq!(v["params"]["c"], "5");
    assert_eq!(v["params"]["l"], "11");
    let v = json(&stickel(&["--config", cfg, "gauss", "--l", "31"]));
    assert_eq!(v["params"]["l"], "31");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn deterministic_output() {
    let args = [
        "iky",
        "random-suite",
        "--p",
        "5",
        "--n",
        "2",
        "--cases",
        "20",
        "--seed",
        "9",
    ];
    let a = stickel(&args);
    let b = stickel(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let s1 = stickel(&[
        "sweep",
        "gauss",
        "--grid",
        "c=3,5",
        "--grid",
        "l=primes:2..20",
        "--jobs",
        "1",
    ]);
    let s2 = stickel(&[
        "sweep",
        "gauss",
        "--grid",
        "c=3,5",
        "--grid",
        "l=primes:2..20",
        "--jobs",
        "2",
    ]);
    assert_eq!(s1.stdout, s2.stdout);
    // l = 3 and l = 5 divide a conductor
    assert_eq!(s1.status.code(), Some(1));
}

#[test]
fn remaining_commands() {
    for args in [
        vec!["jacobi", "--c", "5", "--l", "11", "--i", "1", "--j", "1"],
        vec!["theta", "basis", "--c", "11"],
        vec!["eigens", "theta-psi", "--p", "37", "--i", "5"],
        vec!["eigens", "invariants", "--p", "37", "--i", "5"],
        vec!["eigens", "lp-constant", "--p", "13", "--i", "-1"],
        vec!["eigens", "herbrand", "--pmax", "40"],
        vec!["coleman", "col", "--p", "3", "--coeffs", "2,1,-4,7"],
        vec!["coleman", "interp", "--p", "7", "--f", "3"],
        vec!["coleman", "mel", "--p", "7", "--n", "0", "--N", "3"],
        vec!["iky", "delta", "--p", "3", "--n", "2", "--nchi", "2"],
        vec!["iky", "sharp-check", "--p", "7", "--n", "1", "--nchi", "4"],
        vec!["fitting", "examples"],
    ] {
        let out = stickel(&args);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}
