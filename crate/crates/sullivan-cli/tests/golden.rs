//! Golden-file pinning of the json reports for the whole corpus.
//! Regenerate with `sullivan report corpus:<id> --format json` after a
//! deliberate format or engine change.

use sullivan_cli::corpus;
use sullivan_cli::report::{build_report, to_json, DEFAULT_WINDOW_FACTOR};

#[test]
fn corpus_reports_match_the_golden_files() {
    for entry in corpus::CORPUS {
        let model = corpus::load(entry);
        let report = build_report(&model, entry.id, None, DEFAULT_WINDOW_FACTOR);
        let actual = to_json(&report);
        let path = format!(
            "{}/tests/golden/{}.json",
            env!("CARGO_MANIFEST_DIR"),
            entry.id
        );
        let expected = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("missing golden file {path}: {e}"));
        assert_eq!(actual, expected, "golden mismatch for {}", entry.id);
    }
}

#[test]
fn golden_files_carry_the_published_invariants() {
    // (id, dimH, N, e) re-derived by hand from bounded cochain computations
    let expected = [
        ("s2", 2, 2, 1),
        ("s3", 2, 3, 1),
        ("s3xs5", 4, 8, 2),
        ("cp2", 3, 4, 2),
        ("cp3", 4, 6, 3),
        ("e6-pure", 9, 8, 4),
        ("free-odd", 8, 15, 3),
    ];
    for (id, dim_h, n, e) in expected {
        let path = format!("{}/tests/golden/{id}.json", env!("CARGO_MANIFEST_DIR"));
        let doc: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(doc["dimH"], serde_json::json!(dim_h), "{id} dimH");
        assert_eq!(doc["invariants"]["N"], serde_json::json!(n), "{id} N");
        assert_eq!(doc["invariants"]["e"], serde_json::json!(e), "{id} e");
        for verdict in doc["verdicts"].as_array().unwrap() {
            if verdict["check"] == "hilali" {
                assert_eq!(verdict["conclusion"], "holds", "{id} hilali");
            }
        }
    }
}
