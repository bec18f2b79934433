//! End-to-end tests of the command-line contract: exit codes, output
//! shapes, format gating, and cache behavior.

use std::process::{Command, Output};

fn profilium(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_profilium"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn code_of(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn domain_over_z_matches_the_contract_example() {
    let out = profilium(&["domain", "Z/4", "--ring", "Z", "--primes", "2,3", "--maxexp", "2"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.ends_with('\n'));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let members: Vec<&str> = v["domains"][0]["members"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m.as_str().unwrap())
        .collect();
    assert_eq!(members, vec!["Z", "Z/3", "Z/9"]);
    assert_eq!(v["ring"], "Z");
}

#[test]
fn paper_example_emits_the_exact_translate_line() {
    let out = profilium(&["paper-example", "a4"]);
    assert_eq!(code_of(&out), 0);
    assert!(stdout_of(&out).contains("tauE = 0110+0111+1100+1111\n"));
}

#[test]
fn verify_all_suites_over_the_chain_ring_exits_zero() {
    let out = profilium(&["verify", "--suite", "all", "--ring", "Zmod:2^3"]);
    assert_eq!(code_of(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["verify"]["all_passed"], true);
    assert_eq!(v["verify"]["suites"].as_array().unwrap().len(), 16);
}

#[test]
fn parse_errors_exit_two() {
    for args in [
        vec!["universe", "--ring", "Zmod:6^2"],
        vec!["universe", "--ring", "B4:><>;q=2"],
        vec!["domain", "Z/5", "--ring", "Z"],
        vec!["domain", "Z/4", "--ring", "Z", "--kind", "xx"],
        vec!["verify", "--suite", "S99", "--ring", "Z"],
        vec!["paper-example", "a5"],
        vec!["hom", "11", "0101", "--ring", "A4:><>;q=2"],
    ] {
        let out = profilium(&args);
        assert_eq!(code_of(&out), 2, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty(), "{args:?} reports the problem");
    }
}

#[test]
fn subinjectivity_over_z_names_the_missing_envelopes() {
    let out = profilium(&["domain", "Z/4", "--ring", "Z", "--kind", "si"]);
    assert_eq!(code_of(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("injective envelopes are not available"), "{err}");
}

#[test]
fn unsupported_format_combinations_exit_two() {
    for args in [
        vec!["universe", "--ring", "Z", "--format", "dot"],
        vec!["hom", "Z", "Z", "--ring", "Z", "--format", "csv"],
        vec!["verify", "--ring", "Z", "--format", "csv"],
        vec!["paper-example", "a4", "--format", "json"],
    ] {
        let out = profilium(&args);
        assert_eq!(code_of(&out), 2, "{args:?}");
    }
}

#[test]
fn universe_csv_lists_members() {
    let out = profilium(&["universe", "--ring", "Zmod:2^3", "--format", "csv"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out), "member\nZ/2\nZ/4\nZ/8\n");
}

#[test]
fn profile_dot_over_the_chain_ring_has_two_nodes_one_edge() {
    let out = profilium(&["profile", "--ring", "Zmod:3^2", "--format", "dot"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert_eq!(text.matches("label=").count(), 2, "{text}");
    assert_eq!(text.matches("->").count(), 1, "{text}");
}

#[test]
fn module_literals_round_trip_canonically() {
    let out = profilium(&["domain", "Z/2 + Z/4", "--ring", "Zmod:2^3", "--format", "csv"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.starts_with("module,member,in_domain\n"));
    // The canonical form sorts parts by descending order.
    assert!(text.contains("Z/4 + Z/2,Z/8,true"), "{text}");
    let again = profilium(&["domain", "Z/4+Z/2", "--ring", "Zmod:2^3", "--format", "csv"]);
    assert_eq!(stdout_of(&again), text);
}

#[test]
fn quiver_reports_work_end_to_end() {
    let out = profilium(&["tau", "0010+0011", "--ring", "A4:><>;q=2"]);
    assert_eq!(code_of(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["tau"]["translate"], "1100+1111");
    let out = profilium(&["tilting", "0010+0011+1000+1110", "--ring", "A4:><>;q=2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["tilting"]["is_tilting"], true);
    let out = profilium(&["tau", "Z/2", "--ring", "Z"]);
    assert_eq!(code_of(&out), 2);
}

#[test]
fn cache_file_is_written_sorted_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let cache_path = dir.path().join("memo.txt");
    let args = [
        "domain",
        "Z/4",
        "--ring",
        "Z",
        "--cache",
        cache_path.to_str().unwrap(),
    ];
    let first = profilium(&args);
    assert_eq!(code_of(&first), 0);
    let written = std::fs::read_to_string(&cache_path).unwrap();
    assert_eq!(written.lines().count(), 5, "{written}");
    assert!(written.contains("v1|Z|Z/4|Z/3|sp\t1"), "{written}");
    assert!(written.contains("v1|Z|Z/4|Z/2|sp\t0"), "{written}");
    let mut sorted = written.lines().collect::<Vec<_>>();
    sorted.sort_unstable();
    assert_eq!(sorted, written.lines().collect::<Vec<_>>(), "sorted on disk");
    let second = profilium(&args);
    assert_eq!(stdout_of(&second), stdout_of(&first), "cached run is identical");
}

#[test]
fn cache_dir_env_overrides_the_flag_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_profilium"))
        .args(["domain", "Z/8", "--ring", "Zmod:2^3", "--cache", "elsewhere/memo.txt"])
        .env("PROFILIUM_CACHE_DIR", dir.path())
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("memo.txt").exists());
}

#[test]
fn empty_universe_reports_empty_lists_and_exits_zero() {
    let out = profilium(&["universe", "--ring", "Z", "--primes", "", "--maxrank", "0"]);
    assert_eq!(code_of(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["universe"].as_array().unwrap().len(), 0);
    let out = profilium(&["profile", "--ring", "Z", "--primes", "", "--maxrank", "0"]);
    assert_eq!(code_of(&out), 0);
}
