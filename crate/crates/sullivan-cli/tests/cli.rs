//! Binary-level tests: exit-code contract and end-to-end output shape.

use std::process::Command;

fn sullivan(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_sullivan"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn validate_corpus_model_exits_zero() {
    let out = sullivan(&["validate", "corpus:cp2"]);
    assert!(out.status.success(), "{out:?}");
}

#[test]
fn validate_rejects_square_nonzero_with_exit_one() {
    let dir = std::env::temp_dir().join("sullivan-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.model");
    std::fs::write(
        &path,
        "generator x 2\ngenerator y 3\ngenerator z 4\nd y = x^2\nd z = x*y\n",
    )
    .unwrap();
    let out = sullivan(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("d^2"), "{err}");
    assert!(err.contains('z'), "witness generator named: {err}");
}

#[test]
fn unknown_corpus_model_is_a_usage_error() {
    let out = sullivan(&["toomer", "corpus:nope"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn theorem_commands_follow_the_exit_contract() {
    for (args, code) in [
        (vec!["nogaps", "corpus:e6-pure"], 0),
        (vec!["e0gaps", "corpus:cp2"], 0),
        (vec!["lupton", "corpus:cp3"], 0),
        (vec!["hilali", "corpus:mixed-1"], 0),
        // hypothesis failure is a determined outcome, not a Fails
        (vec!["nogaps", "corpus:mixed-1"], 0),
        (vec!["elliptic", "corpus:mixed-1"], 0),
    ] {
        let out = sullivan(&args);
        assert_eq!(out.status.code(), Some(code), "{args:?}: {out:?}");
    }
}

#[test]
fn nonelliptic_model_exits_one_from_elliptic() {
    let dir = std::env::temp_dir().join("sullivan-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("free-even.model");
    std::fs::write(&path, "generator x 2\n").unwrap();
    let out = sullivan(&["elliptic", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");
}

#[test]
fn toomer_prints_value_and_formula_agreement() {
    let out = sullivan(&["toomer", "corpus:cp2"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("toomer = 2"), "{text}");
    assert!(text.contains("agree = true"), "{text}");
}

#[test]
fn e0_of_a_class_expression() {
    let out = sullivan(&["e0", "corpus:cp2", "--class", "x^2"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("e0 = 2"), "{text}");
}

#[test]
fn json_reports_are_byte_identical_across_runs() {
    let a = sullivan(&["report", "corpus:e6-pure", "--format", "json"]);
    let b = sullivan(&["report", "corpus:e6-pure", "--format", "json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn corpus_run_filter_selects_by_tag() {
    let out = sullivan(&["corpus", "run", "--filter", "hypothesis-failure", "--format", "json"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("\"model\": \"mixed-1\""));
    assert!(!text.contains("\"model\": \"cp2\""));
}
