//! End-to-end tests of the binary: every witness a subcommand prints must
//! re-parse through `verify` with status 0, and the exit codes must keep
//! negative results, usage errors and limits apart.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use admissible::cnf::{export_cnf, read_varmap};
use admissible::construct::construct_i;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_admissible"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], stdin: &[u8]) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    child.stdin.as_mut().unwrap().write_all(stdin).unwrap();
    child.wait_with_output().expect("binary finishes")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

/// Pipes one command's stdout into `verify -` and expects status 0.
fn verifies(witness: &[u8]) {
    let verify = run_with_stdin(&["verify", "-"], witness);
    assert_eq!(code(&verify), 0, "verify said: {}", stdout(&verify));
}

#[test]
fn construct_pipes_into_verify() {
    let out = run(&["construct", "6", "5"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("# I(6,5)"));
    verifies(&out.stdout);
}

#[test]
fn verify_flags_clashes_with_status_1() {
    let bad = "m 6\n121200\n120012\n001212\n";
    let out = run_with_stdin(&["verify", "-"], bad.as_bytes());
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("CLASH"));
}

#[test]
fn verify_checks_claims() {
    let wrong_claim = "# I(3,2)\nm 3\n120\n";
    let out = run_with_stdin(&["verify", "-"], wrong_claim.as_bytes());
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("NOT I(3,2)"));
}

#[test]
fn verify_rejects_malformed_files_with_status_2() {
    for bad in ["m 3\n12x\n", "m 3\n1200\n", "120\n", "m 3\n120\n120\n"] {
        let out = run_with_stdin(&["verify", "-"], bad.as_bytes());
        assert_eq!(code(&out), 2, "input {bad:?}");
    }
}

#[test]
fn construct_unsupported_weight_is_usage_error() {
    let out = run(&["construct", "10", "5"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn typed_clash_answers_match_exit_codes() {
    let yes = run(&["typed-clash", "11", "0,1,3,4", "0,2,3,4", "1,2,3,4", "5"]);
    assert_eq!(code(&yes), 0);
    assert_eq!(stdout(&yes).trim(), "CLASH");

    let no = run(&["typed-clash", "12", "0,1,3,4", "0,2,3,4", "1,2,3,4", "5"]);
    assert_eq!(code(&no), 1);
    assert_eq!(stdout(&no).trim(), "NO CLASH");

    let bad = run(&["typed-clash", "13", "0,1", "0,2", "1,2", "3"]);
    assert_eq!(code(&bad), 2);
}

#[test]
fn search_finds_and_witness_verifies() {
    let out = run(&["search", "6", "4"]);
    assert_eq!(code(&out), 0);
    verifies(&out.stdout);
}

#[test]
fn search_with_tiny_node_limit_reports_3() {
    let out = run(&["search", "6", "4", "--nodes", "5"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn fmax_emits_bound_and_witness() {
    let out = run(&["fmax", "5", "4"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("f(5,4) = 5 (exact)"), "{text}");
    assert!(text.contains("capset base"), "{text}");
    verifies(&out.stdout);
}

#[test]
fn monotype_negative_and_positive() {
    let no = run(&["monotype", "5", "4", "11"]);
    assert_eq!(code(&no), 1);

    let yes = run(&["monotype", "4", "3", "121"]);
    assert_eq!(code(&yes), 0);
    verifies(&yes.stdout);

    let limited = run(&["monotype", "5", "4", "11", "--budget", "1"]);
    assert_eq!(code(&limited), 3);
}

#[test]
fn colour_prints_the_table() {
    let family = run(&["construct", "5", "3"]);
    assert_eq!(code(&family), 0);
    let out = run_with_stdin(&["colour", "-"], &family.stdout);
    assert_eq!(code(&out), 0);
    let table = stdout(&out);
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines.len(), 10); // C(5,3) triples
    assert!(lines[0].starts_with("0,1,2 "));
}

#[test]
fn reconstruct_round_trips_through_colour() {
    let rec = run(&["reconstruct", "5", "121"]);
    assert_eq!(code(&rec), 0);
    assert!(stdout(&rec).contains("admissible"));
    verifies(&rec.stdout);

    let table = run_with_stdin(&["colour", "-"], &rec.stdout);
    assert_eq!(code(&table), 0);
    assert!(stdout(&table).lines().all(|l| l.ends_with(" 121")));

    // inadmissible reconstructions still emit, flagged in the comments
    let clashing = run(&["reconstruct", "4", "111"]);
    assert_eq!(code(&clashing), 0);
    assert!(stdout(&clashing).contains("contains a clash"));
}

#[test]
fn project_keeps_claims_and_verifies() {
    let family = run(&["construct", "6", "5"]);
    let zero = run_with_stdin(&["project", "-", "5", "zero"], &family.stdout);
    assert_eq!(code(&zero), 0);
    assert!(stdout(&zero).contains("# I(5,5)"));
    verifies(&zero.stdout);

    let nonzero = run_with_stdin(&["project", "-", "5", "nonzero"], &family.stdout);
    assert_eq!(code(&nonzero), 0);
    assert!(stdout(&nonzero).contains("# I(5,4)"));
    verifies(&nonzero.stdout);

    let bad = run_with_stdin(&["project", "-", "6", "zero"], &family.stdout);
    assert_eq!(code(&bad), 2);
}

#[test]
fn export_cnf_and_decode_a_model() {
    let dir = tempfile::tempdir().unwrap();
    let cnf_path = dir.path().join("i54.cnf");
    let out = run(&["export-cnf", "5", "4", "-o", cnf_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);

    // build a model from a known admissible I(5,4) family using the same
    // encoding the exporter documents
    let cnf_text = std::fs::read(&cnf_path).unwrap();
    let varmap = read_varmap(cnf_text.as_slice()).unwrap();
    let family = construct_i(5, 4).unwrap();
    let mut literals = Vec::new();
    for (s, support) in varmap.supports().iter().enumerate() {
        let vector = family.find_by_support(support).unwrap();
        for (p, coord) in support.iter().enumerate() {
            let var = varmap.var(s, p) as i64;
            literals.push(if vector.get(coord) == 2 { var } else { -var });
        }
    }
    let model_path = dir.path().join("model.txt");
    let mut text = literals
        .iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    text.push_str(" 0\n");
    std::fs::write(&model_path, text).unwrap();

    let decoded = run(&["decode", cnf_path.to_str().unwrap(), model_path.to_str().unwrap()]);
    assert_eq!(code(&decoded), 0, "{}", String::from_utf8_lossy(&decoded.stderr));
    assert!(stdout(&decoded).contains("# I(5,4)"));
    verifies(&decoded.stdout);

    // the all-ones model decodes to a clashing family: negative result
    let all_false = (1..=varmap.var_count() as i64)
        .map(|v| (-v).to_string())
        .collect::<Vec<_>>()
        .join(" ");
    std::fs::write(&model_path, format!("{all_false} 0\n")).unwrap();
    let rejected = run(&["decode", cnf_path.to_str().unwrap(), model_path.to_str().unwrap()]);
    assert_eq!(code(&rejected), 1);

    // a truncated model is malformed input
    std::fs::write(&model_path, "1 -2 0\n").unwrap();
    let truncated = run(&["decode", cnf_path.to_str().unwrap(), model_path.to_str().unwrap()]);
    assert_eq!(code(&truncated), 2);
}

#[test]
fn bound_prints_text_and_kv() {
    let out = run(&["bound", "330", "11", "7"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("base=2.217981"), "{text}");
    assert!(text.contains("dimension=396"));
    assert!(text.contains("R^(4)(5,5,5,5,5,5,6,6)"));

    let bad = run(&["bound", "0", "11", "7"]);
    assert_eq!(code(&bad), 2);
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["no-such-command"]);
    assert_eq!(code(&out), 2);
    let out = run(&["search"]);
    assert_eq!(code(&out), 2);
    let out = run(&["verify", "/no/such/file"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn default_transcripts_are_bit_reproducible() {
    for args in [
        vec!["search", "6", "4"],
        vec!["fmax", "4", "2"],
        vec!["construct", "7", "6"],
        vec!["reconstruct", "5", "121"],
        vec!["bound", "330", "11", "7"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?} differs across runs");
        assert_eq!(code(&a), code(&b));
    }
}

#[test]
fn export_cnf_used_in_tests_matches_library_export() {
    // the CLI and library exports must be byte-identical
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.cnf");
    let out = run(&["export-cnf", "4", "2", "-o", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let from_cli = std::fs::read(&path).unwrap();
    let mut from_lib = Vec::new();
    export_cnf(4, 2, &mut from_lib).unwrap();
    assert_eq!(from_cli, from_lib);
}
