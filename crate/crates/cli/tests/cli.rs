//! End-to-end tests driving the compiled binary.

use std::io::Write;
use std::process::{Command, Output};

fn extremes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extremes"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}

#[test]
fn valid_statement_exits_zero() {
    let out = extremes(&["check", "A \\ (B & C) = (A \\ B) | (A \\ C)"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("Valid (extremes, 8 cases)"));
}

#[test]
fn invalid_statement_exits_one_with_witness() {
    let out = extremes(&["check", "A ^ (B | C) = (A | C) ^ (B | C)"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("Invalid"));
    assert!(text.contains("witness: universe {x1}; A = {}, B = {}, C = {x1}"));
}

#[test]
fn parse_error_exits_two_with_span_on_stderr() {
    let out = extremes(&["check", "(A & B"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("error:"), "{err}");
    assert!(err.contains("bytes"), "{err}");
}

#[test]
fn unsupported_constructs_exit_three() {
    let nested = extremes(&["check", "(A * B) * C = 0 * 0"]);
    assert_eq!(nested.status.code(), Some(3), "{}", stderr(&nested));
    let unbound = extremes(&["check", "A[s] = 0"]);
    assert_eq!(unbound.status.code(), Some(3));
    let mixed = extremes(&["check", "X | (A * B) = A * B"]);
    assert_eq!(mixed.status.code(), Some(3));
    let arity = extremes(&["check", "Union s in S. A[s,s,s] = 0"]);
    assert_eq!(arity.status.code(), Some(3));
}

#[test]
fn quiet_mode_prints_the_verdict_only() {
    let out = extremes(&["check", "--quiet", "A & B = B & A"]);
    assert_eq!(stdout(&out), "Valid (extremes, 4 cases)\n");
}

#[test]
fn batch_files_report_every_statement_and_the_worst_code_wins() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# a small batch").unwrap();
    writeln!(file, "A | B = B | A   # commutativity").unwrap();
    writeln!(file).unwrap();
    writeln!(file, "1 = 0").unwrap();
    file.flush().unwrap();
    let path = file.path().to_str().unwrap();

    let out = extremes(&["check", "-f", path]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 4, "{text}");
    assert!(text.contains("A | B = B | A: Valid"));
    assert!(text.contains("1 = 0: Invalid"));

    // identical input produces byte-identical output
    let again = extremes(&["check", "-f", path]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn worker_count_does_not_change_output() {
    let args = ["check", "A ^ (B | C) = (A | C) ^ (B | C)"];
    let seq = extremes(&args);
    let par = extremes(&["check", "--jobs", "4", "A ^ (B | C) = (A | C) ^ (B | C)"]);
    assert_eq!(stdout(&seq), stdout(&par));
}

#[test]
fn json_mode_emits_one_stable_object_per_statement() {
    let out = extremes(&["check", "--json", "A ^ (B | C) = (A | C) ^ (B | C)"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    let value: serde_json::Value = serde_json::from_str(text.trim()).expect("valid json");
    assert_eq!(value["kind"], "set-equality");
    assert_eq!(value["verdict"], "invalid");
    assert_eq!(value["witness"]["points"], serde_json::json!(["x1"]));
    assert_eq!(value["witness"]["sets"]["C"], serde_json::json!(["x1"]));
    assert_eq!(value["witness"]["sets"]["A"], serde_json::json!([]));
    assert!(value["elapsed_ms"].is_u64());

    let valid = extremes(&["check", "--json", "A & B = B & A"]);
    let value: serde_json::Value = serde_json::from_str(stdout(&valid).trim()).unwrap();
    assert_eq!(value["verdict"], "valid");
    assert_eq!(value["method"], "extremes");
    assert_eq!(value["cases"], 4);
}

#[test]
fn json_reports_index_set_sizes_for_indexed_witnesses() {
    let out = extremes(&["check", "--json", "Union s in S. A[s] = Inter s in S. A[s]"]);
    assert_eq!(out.status.code(), Some(1));
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(value["witness"]["index_sets"]["S"], 2);
    assert_eq!(value["witness"]["sets"]["A[s1]"], serde_json::json!([]));
    assert_eq!(value["witness"]["sets"]["A[s2]"], serde_json::json!(["x1"]));
}

#[test]
fn translate_to_sets_matches_the_documented_rendering() {
    let out = extremes(&["translate", "--to-sets", "(p -> q) <-> (~q -> ~p)"]);
    assert_eq!(stdout(&out), "P' | Q = (Q')' | P'\n");

    let checked = extremes(&["translate", "--to-sets", "--check", "p \\/ ~p"]);
    assert_eq!(checked.status.code(), Some(0));
    let text = stdout(&checked);
    assert!(text.starts_with("P | P' = 1\n"));
    assert!(text.contains("Valid"));
}

#[test]
fn translate_to_logic_matches_the_documented_rendering() {
    let incl = extremes(&["translate", "--to-logic", "A <= B"]);
    assert_eq!(stdout(&incl), "a -> b\n");

    let eq = extremes(&["translate", "--to-logic", "A & B = B & A"]);
    assert_eq!(stdout(&eq), "a /\\ b <-> b /\\ a\n");

    // products have no logical translation
    let prod = extremes(&["translate", "--to-logic", "X * Y = Y * X"]);
    assert_eq!(prod.status.code(), Some(3));

    // each direction requires the right source formalism
    let wrong_source = extremes(&["translate", "--to-sets", "A & B = B & A"]);
    assert_eq!(wrong_source.status.code(), Some(3));
    let wrong_source = extremes(&["translate", "--to-logic", "p -> q"]);
    assert_eq!(wrong_source.status.code(), Some(3));
}

#[test]
fn explain_prints_the_full_case_table() {
    let out = extremes(&["explain", "A | 1 = 1"]);
    let text = stdout(&out);
    assert_eq!(text, "A | L R\n0 | 1 1\n1 | 1 1\n2 cases, all agree\n");

    let eight = extremes(&["explain", "A | (B & C) = (A | B) & (A | C)"]);
    assert!(stdout(&eight).contains("8 cases, all agree"));

    let constant = extremes(&["explain", "1 = 0"]);
    assert!(stdout(&constant).contains("1 cases, 1 disagree"));

    let non_flat = extremes(&["explain", "Union s in S. A[s] = 0"]);
    assert_eq!(non_flat.status.code(), Some(3));
}

#[test]
fn oracle_reports_agreement() {
    let out = extremes(&["oracle", "A & B = B & A", "--max-universe", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("agreement: verdicts match"));

    // agreement on Invalid is still agreement
    let invalid = extremes(&["oracle", "(X*Y)\\(A*B) = (X\\A)*(Y\\B)"]);
    assert_eq!(invalid.status.code(), Some(0));
    assert!(stdout(&invalid).contains("agreement: verdicts match"));

    let indexed = extremes(&[
        "oracle",
        "Union s in S. A[s] = Inter s in S. A[s]",
        "--max-index",
        "2",
    ]);
    assert_eq!(indexed.status.code(), Some(0));
}

#[test]
fn oracle_budget_overrun_exits_four() {
    let out = extremes(&["oracle", "A & B & C = C & B & A", "--budget", "10"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("budget"));
}

#[test]
fn equiv_mode_requires_a_top_level_biconditional() {
    let ok = extremes(&["check", "--equiv", "p /\\ q <-> q /\\ p"]);
    assert_eq!(ok.status.code(), Some(0));

    let missing = extremes(&["check", "--equiv", "p -> q"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn catalog_files_run_as_batches() {
    let root = concat!(env!("CARGO_MANIFEST_DIR"), "/../../catalog");
    // files whose statements are all valid exit 0
    let out = extremes(&["check", "-f", &format!("{root}/inclusions.txt")]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    // files containing refuted statements exit 1
    let out = extremes(&["check", "-f", &format!("{root}/products.txt")]);
    assert_eq!(out.status.code(), Some(1));
}
