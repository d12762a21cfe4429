//! End-to-end tests of the binary: exit-code contract, deterministic
//! output, and JSON well-formedness.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minmod"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn singular_prints_the_solver_vector() {
    let text = stdout(&["singular", "--algebra", "vir", "--q", "2"]);
    assert!(text.contains("M(1, 1/4)"));
    assert!(text.contains("L-1 L-1 - L-2"));
    assert!(text.contains("negate-l"));

    let text = stdout(&["singular", "--algebra", "ns", "--q", "3"]);
    assert!(text.contains("M(3/2, 1/2)"));
    assert!(text.contains("G-1/2 L-1 - G-3/2"));
}

#[test]
fn fusion_channel_examples() {
    let text = stdout(&["fusion", "--algebra", "vir", "--m", "1", "--n", "1"]);
    assert!(text.contains("channels: a(0) + a(2)"));

    let text = stdout(&["fusion", "--algebra", "ns", "--q", "3", "--r", "3"]);
    assert!(text.contains("b(1):even"));
    assert!(text.contains("b(3):odd"));
    assert!(text.contains("b(5):even"));

    // the (2,1) polynomial reports its double root
    let text = stdout(&["fusion", "--algebra", "vir", "--m", "2", "--n", "1"]);
    assert!(text.contains("1/4 (x2)"));
}

#[test]
fn exit_codes() {
    // invalid labels -> 2
    assert_eq!(
        run(&["singular", "--algebra", "vir", "--q", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["singular", "--algebra", "ns", "--q", "4"]).status.code(),
        Some(2)
    );
    // unknown flag -> 2 (clap)
    assert_eq!(run(&["singular", "--bogus"]).status.code(), Some(2));
    // resource cap -> 3
    assert_eq!(
        run(&["verify", "--suite", "all", "--bound", "99"]).status.code(),
        Some(3)
    );
    assert_eq!(
        run(&["singular", "--algebra", "vir", "--q", "18"]).status.code(),
        Some(3)
    );
    // passing suite -> 0
    assert_eq!(
        run(&["verify", "--suite", "reprings"]).status.code(),
        Some(0)
    );
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["table", "--algebra", "ns", "--bound", "5", "--format", "json"],
        vec!["fusion", "--algebra", "vir", "--m", "3", "--n", "2", "--format", "json"],
        vec!["chars", "--kind", "lattice", "--sector", "vl-half", "--order", "10"],
        vec!["calibrate", "--algebra", "ns", "--q", "3", "--format", "json"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first.stdout, second.stdout, "args {args:?}");
        assert_eq!(first.status.code(), second.status.code());
    }
}

#[test]
fn json_outputs_parse_and_match_schemas() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&[
        "table", "--algebra", "ns", "--bound", "9", "--format", "json",
    ]))
    .unwrap();
    assert_eq!(v["flavor"], "ns");
    assert_eq!(v["bound"], 9);
    let p33 = v["products"]
        .as_array()
        .unwrap()
        .iter()
        .find(|p| p["a"] == 3 && p["b"] == 3)
        .unwrap();
    assert_eq!(p33["channels"][0]["s"], 1);
    assert_eq!(p33["channels"][0]["parity"], "even");

    let v: serde_json::Value = serde_json::from_str(&stdout(&[
        "singular", "--algebra", "vir", "--q", "2", "--format", "json",
    ]))
    .unwrap();
    let vector = &v["vectors"][0];
    assert_eq!(vector["h"], "1/4");
    assert_eq!(vector["entries"][0]["word"][0], "L-1");

    let v: serde_json::Value = serde_json::from_str(&stdout(&[
        "verify", "--suite", "chars", "--order", "12", "--format", "json",
    ]))
    .unwrap();
    assert_eq!(v["pass"], true);
}

#[test]
fn verma_character_via_h_flag() {
    let text = stdout(&[
        "chars", "--kind", "verma", "--algebra", "ns", "--h", "1/2", "--order", "3",
    ]);
    assert!(text.contains("q^1/2"), "{text}");
}
