use std::process::{Command, Output};

use np_atlas::syzygy::NpCertificate;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_np-atlas")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

#[test]
fn cohomology_on_projective_line() {
    let out = run(&["cohomology", "--shape", "fl(1;2)", "--weight", "[3],[0]"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "nonzero");
    assert_eq!(v["degree"], 0);
    assert_eq!(v["dimension"], 4);

    let v = json(&run(&["cohomology", "--shape", "fl(1;2)", "--weight", "[0],[1]"]));
    assert_eq!(v["status"], "vanishes");

    let v = json(&run(&["cohomology", "--shape", "fl(1;2)", "--weight", "[0],[3]"]));
    assert_eq!(v["degree"], 1);
    assert_eq!(v["dimension"], 2);
}

#[test]
fn parse_errors_name_the_token() {
    let out = run(&["cohomology", "--shape", "fl(1;2)", "--weight", "[0],[zz]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("zz"));

    let out = run(&["cohomology", "--shape", "gl(1;2)", "--weight", "[0],[0]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gl(1;2)"));

    let out = run(&["cohomology", "--shape", "fl(1;3)", "--weight", "[0],[0]"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["np", "--spec", "sfl(6,5,3;12)", "--L", "3,two,1", "--p", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("two"));
}

#[test]
fn np_exit_codes() {
    let out = run(&["np", "--spec", "sfl(6,5,3;12)", "--L", "3,2,1", "--p", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "certified");
    assert_eq!(v["schema_version"], 1);

    let out = run(&["np", "--spec", "ofl(2;7)", "--L", "1", "--p", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["verdict"], "not_certified");

    let out = run(&["np", "--spec", "sfl(3,1;6)", "--L", "2,2", "--p", "1"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["np", "--spec", "ofl(4;8)", "--L", "1/2", "--p", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("pullback"));
}

#[test]
fn threshold_output() {
    let out = run(&["np-threshold", "--family", "C", "--ranks", "1,1,1,1,1,1", "--p", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["threshold"]["num"], 11);
    assert_eq!(v["threshold"]["den"], 6);
    let out = run(&["np-threshold", "--family", "A", "--ranks", "1", "--p", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn certificates_round_trip() {
    for args in [
        ["np", "--spec", "sfl(6,5,3;12)", "--L", "6,4,2", "--p", "2"],
        ["np", "--spec", "g2p", "--L", "2,1", "--p", "1"],
        ["np", "--spec", "fl(2,1;4)", "--L", "3,1", "--p", "1"],
    ] {
        let out = run(&args);
        let cert: NpCertificate = serde_json::from_slice(&out.stdout).unwrap();
        let again = serde_json::to_value(&cert).unwrap();
        assert_eq!(again, json(&out));
    }
}

#[test]
fn output_is_reproducible() {
    let args = ["verify", "serre-duality", "--cases", "60", "--seed", "3"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    let c = Command::new(env!("CARGO_BIN_EXE_np-atlas"))
        .args(["--sequential"])
        .args(args)
        .output()
        .unwrap();
    assert_eq!(a.stdout, c.stdout);

    let np = ["np", "--spec", "g2x", "--L", "2", "--p", "2"];
    let threads = Command::new(env!("CARGO_BIN_EXE_np-atlas")).env("NP_ATLAS_THREADS", "1").args(np).output().unwrap();
    assert_eq!(run(&np).stdout, threads.stdout);
}

#[test]
fn verify_suites() {
    let out = run(&["verify", "plethysm-dims"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);

    let out = run(&["verify", "g2-lemma"]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["verify", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn human_output() {
    let out = run(&["--human", "np", "--spec", "ofl(2;7)", "--L", "2", "--p", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("Certified"));
    assert!(text.contains("LowPicardRank"));
}
