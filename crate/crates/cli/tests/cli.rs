use std::io::Write;
use std::process::Command;

use motivic::motive::{ClassTerm, MotiveClass};
use motivic_cli::{run_args, Outcome};
use serde_json::Value;

fn run(args: &[&str]) -> Outcome {
    run_args(std::iter::once("motivic").chain(args.iter().copied()))
}

fn file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn records(out: &Outcome) -> Vec<Value> {
    out.stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn golden_lines() {
    let out = run(&["class", "demo:cstar"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "L - 1\n"));
    let proj = file(r#"{"kind":"proj","n":2}"#);
    let path = proj.path().to_str().unwrap();
    assert_eq!(run(&["betti", path]).stdout, "1 + t^2 + t^4\n");
    assert_eq!(run(&["hodge", path]).stdout, "1 + u*v + u^2*v^2\n");
    assert_eq!(run(&["euler", path]).stdout, "3\n");
    let kummer = run(&["weights", "--coeff", "Z", "demo:kummer"]);
    assert_eq!(kummer.code, 0);
    assert!(kummer.stdout.lines().any(|l| l == "grW_2 H^3_c = (Z/2)^5"), "{}", kummer.stdout);
    assert!(kummer.stdout.lines().any(|l| l == "E2^{0,2} = Z^6"));
    let product = run(&["weights", "demo:kummer-x-enriques"]).stdout;
    for line in ["grW_2 H^3_c = (Z/2)^5", "grW_3 H^3_c = Z/2", "gr H^3_c = (Z/2)^6"] {
        assert!(product.lines().any(|l| l == line), "{line} missing from\n{product}");
    }
}

#[test]
fn exit_codes() {
    let bad_json = file("{\"kind\": ");
    let out = run(&["class", bad_json.path().to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.starts_with("error: "), "{}", out.stderr);
    assert_eq!(run(&["weights", "--coeff", "Z/1", "demo:cstar"]).code, 1);
    assert_eq!(run(&["weights", "demo:no-such-demo"]).code, 1);
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["weights", "--coeff", "Q/2", "demo:cstar"]).code, 2);
    assert_eq!(run(&["--help"]).code, 0);
    assert_eq!(run(&["class", "/nonexistent/input.json"]).code, 1);
    for demo in ["blowup-p2-point", "blowup-p3-line"] {
        let out = run(&["blowup-check", &format!("demo:{demo}")]);
        assert_eq!(out.code, 0, "{}", out.stdout);
        assert!(out.stdout.lines().all(|l| l.ends_with(": exact")), "{}", out.stdout);
    }
}

#[test]
fn broken_blowup_square_exits_one() {
    // P^2 blown up at a point, with the exceptional pushforward doubled in
    // degree 1: the sequence is no longer exact at A_1.
    let data = r#"{"levels": [
        {"p": 0, "x": ["[P2]"], "y": [], "x_prime": ["[X']"], "y_prime": [],
         "push": {"f": [[1]], "g": [], "i": [], "j": []}},
        {"p": 1, "x": ["h"], "y": [], "x_prime": ["h'", "e"], "y_prime": ["[E]"],
         "push": {"f": [[1, 0]], "g": [], "i": [], "j": [[0], [2]]}}
    ]}"#;
    let f = file(data);
    let out = run(&["blowup-check", f.path().to_str().unwrap()]);
    assert_eq!(out.code, 1, "{}{}", out.stdout, out.stderr);
    assert!(out.stdout.contains("A_1 pushforward: not exact"), "{}", out.stdout);
}

#[test]
fn contraction_reports() {
    let ok = file(r#"{"start": 0, "columns": [{"0": {"rank": 1}}, {"0": {"rank": 1}}], "differentials": [{"0": [[1]]}]}"#);
    let out = run(&["contract", ok.path().to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
    assert!(out.stdout.starts_with("contractible: dh + hd = id verified"));
    let two = file(r#"{"start": 0, "columns": [{"0": {"rank": 1}}, {"0": {"rank": 1}}], "differentials": [{"0": [[2]]}]}"#);
    let out = run(&["contract", two.path().to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("not contractible: nonzero homology Z/2"), "{}", out.stdout);
}

#[test]
fn records_round_trip() {
    let out = run(&["--format", "records", "class", "demo:kummer"]);
    let r = &records(&out)[0];
    assert_eq!(r["record"], "class");
    let terms: Vec<ClassTerm> = serde_json::from_value(r["terms"].clone()).unwrap();
    let c = MotiveClass::from_terms(&terms).unwrap();
    assert_eq!(c.to_string(), r["class"].as_str().unwrap());
    assert_eq!(c, "K3 - 16L".parse().unwrap());

    let out = run(&["--format", "records", "weights", "demo:kummer"]);
    let torsion = records(&out).into_iter().filter(|r| r["record"] == "graded").any(|r| r["weight"] == 2 && r["degree"] == 3 && r["group"] == "(Z/2)^5");
    assert!(torsion, "{}", out.stdout);

    let out = run(&["--format", "records", "weights", "--coeff", "Z/1", "demo:cstar"]);
    let last = records(&out).pop().unwrap();
    assert_eq!((last["record"].as_str(), out.code), (Some("error"), 1));
}

#[test]
fn custom_atlas() {
    let atlas = file(
        r#"{"atoms": [{"name": "S", "dim": 2, "cohomology": {"0": {"rank": 1}, "2": {"rank": 2}, "3": {"torsion": [3]}, "4": {"rank": 1}},
                      "hodge": [[0, 0, 1], [1, 1, 2], [2, 2, 1]]}]}"#,
    );
    let atlas = atlas.path().to_str().unwrap();
    let expr = file(r#"{"kind":"product","left":{"kind":"atom","name":"S","dim":2},"right":{"kind":"proj","n":1}}"#);
    let expr = expr.path().to_str().unwrap();
    assert_eq!(run(&["--atlas", atlas, "euler", expr]).stdout, "8\n");
    assert_eq!(run(&["--atlas", atlas, "betti", expr]).stdout, "1 + 3t^2 + 3t^4 + t^6\n");
    // Without the file the atom stays symbolic and its invariants are unknown.
    assert_eq!(run(&["class", expr]).stdout, "L*S + S\n");
    assert_eq!(run(&["euler", expr]).code, 1);
}

#[test]
fn deterministic_output() {
    for args in [&["weights", "demo:kummer-x-enriques"][..], &["--format", "records", "demo", "kummer"], &["demo"]] {
        let a = run(args);
        assert_eq!(a.code, 0, "{args:?}: {}", a.stderr);
        assert_eq!(a.stdout, run(args).stdout);
    }
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_motivic");
    let out = Command::new(bin).args(["class", "demo:cstar"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "L - 1\n");
    let out = Command::new(bin).args(["weights", "--coeff", "Z/1", "demo:cstar"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("error: "));
}
