//! End-to-end tests of the command-line interface against the shipped
//! fixture files.

mod common;

use common::{fixture_path, run_cli};
use std::io::Write;

fn fixture(name: &str) -> String {
    fixture_path(name).to_str().unwrap().to_string()
}

#[test]
fn value_of_bridge_coalitions() {
    let out = run_cli(&["value", &fixture("fig1.json"), "a,b"]);
    assert_eq!(out.status, 0);
    assert!(out.stdout.contains("reliability value: 0.050000000000"));
    assert!(out.stdout.contains("base value: 1"));

    let empty = run_cli(&["value", &fixture("fig1.json"), ""]);
    assert_eq!(empty.status, 0);
    assert!(empty.stdout.contains("reliability value: 0.000000000000"));
    assert!(empty.stdout.contains("base value: 0"));
}

#[test]
fn value_of_serial_example() {
    let out = run_cli(&["value", &fixture("serial.json"), "p1,p2,p3,e"]);
    assert_eq!(out.status, 0);
    assert!(out.stdout.contains("0.562500000000"));

    let serial_only = run_cli(&["value", &fixture("serial.json"), "p1,p2,p3"]);
    assert!(serial_only.stdout.contains("0.125000000000"));
}

#[test]
fn value_unknown_label_is_usage_error() {
    let out = run_cli(&["value", &fixture("fig1.json"), "a,zz"]);
    assert_eq!(out.status, 1);
    assert!(out.stderr.contains("unknown agent label"));
}

#[test]
fn missing_and_malformed_files_are_usage_errors() {
    let out = run_cli(&["value", "/no/such/file.json", "a"]);
    assert_eq!(out.status, 1);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = run_cli(&["value", path.to_str().unwrap(), ""]);
    assert_eq!(out.status, 1);
    assert!(out.stderr.contains("bad game file"));

    let path2 = dir.path().join("unknown-field.json");
    std::fs::write(
        &path2,
        r#"{"game":"weighted_voting","format_version":1,"weights":[1.0],
           "quota":1.0,"survival":[0.5],"extra":1}"#,
    )
    .unwrap();
    let out = run_cli(&["value", path2.to_str().unwrap(), ""]);
    assert_eq!(out.status, 1);
}

#[test]
fn exact_shapley_report() {
    let out = run_cli(&["shapley", &fixture("fig1.json"), "--exact"]);
    assert_eq!(out.status, 0);
    assert!(out.stdout.contains("method: exact"));
    assert!(out.stdout.contains("total    0.198750000000"));
}

#[test]
fn sample_plan_appears_in_header() {
    let out = run_cli(&[
        "shapley",
        &fixture("fig1.json"),
        "--epsilon",
        "0.01",
        "--delta",
        "0.05",
        "--seed",
        "1",
    ]);
    assert_eq!(out.status, 0);
    assert!(out.stdout.contains("samples: 18445"), "{}", out.stdout);
}

#[test]
fn shapley_flag_validation() {
    let zero = run_cli(&["shapley", &fixture("fig1.json"), "--samples", "0"]);
    assert_eq!(zero.status, 1);

    let neither = run_cli(&["shapley", &fixture("fig1.json")]);
    assert_eq!(neither.status, 1);
    assert!(neither.stderr.contains("--epsilon or --samples"));

    let both = run_cli(&[
        "shapley",
        &fixture("fig1.json"),
        "--epsilon",
        "0.1",
        "--samples",
        "10",
    ]);
    assert_eq!(both.status, 1);

    let exact_and_eps = run_cli(&[
        "shapley",
        &fixture("fig1.json"),
        "--exact",
        "--epsilon",
        "0.1",
    ]);
    assert_eq!(exact_and_eps.status, 1);
}

#[test]
fn exact_shapley_above_cap_is_a_refusal() {
    // Thirteen parallel edges: over the default exact-Shapley cap of 12.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("wide.json");
    let mut f = std::fs::File::create(&path).unwrap();
    let edges: Vec<String> = (0..13)
        .map(|i| format!(r#"{{"label":"e{i}","from":"s","to":"t"}}"#))
        .collect();
    write!(
        f,
        r#"{{"game":"network","format_version":1,"vertices":["s","t"],
            "source":"s","target":"t","edges":[{}],"survival":[{}]}}"#,
        edges.join(","),
        vec!["0.5"; 13].join(",")
    )
    .unwrap();
    let out = run_cli(&["shapley", path.to_str().unwrap(), "--exact"]);
    assert_eq!(out.status, 2);
    assert!(out.stderr.contains("sampling"));

    // The cap is overridable.
    let ok = run_cli(&[
        "shapley",
        path.to_str().unwrap(),
        "--exact",
        "--cap-exact-shapley",
        "13",
    ]);
    assert_eq!(ok.status, 0);
}

#[test]
fn core_of_the_bridge_pair() {
    let with_e = run_cli(&["core", &fixture("fig1.json")]);
    assert_eq!(with_e.status, 0);
    assert!(with_e.stdout.contains("verdict: non-empty"));
    assert!(with_e.stdout.contains("method: brute-lp"));

    let without_e = run_cli(&["core", &fixture("fig1-no-e.json")]);
    assert_eq!(without_e.status, 0);
    assert!(without_e.stdout.contains("verdict: empty"));
}

#[test]
fn core_of_unanimity_uses_veto_method() {
    let out = run_cli(&["core", &fixture("unanimity.json")]);
    assert_eq!(out.status, 0);
    assert!(out.stdout.contains("method: veto"));
    assert!(out.stdout.contains("verdict: non-empty"));
    assert!(out.stdout.contains("0.041666666667"));
}

#[test]
fn core_of_typed_majority_uses_typed_lp() {
    let auto = run_cli(&["core", &fixture("typed-majority.json")]);
    assert_eq!(auto.status, 0);
    assert!(auto.stdout.contains("method: typed-lp"));
    assert!(auto.stdout.contains("verdict: non-empty"));

    let explicit = run_cli(&["core", &fixture("typed-majority.json"), "--method", "typed"]);
    assert_eq!(explicit.status, 0);
    assert!(explicit.stdout.contains("verdict: non-empty"));
}

#[test]
fn typed_method_requires_typed_game() {
    let out = run_cli(&["core", &fixture("fig1.json"), "--method", "typed"]);
    assert_eq!(out.status, 1);
    assert!(out.stderr.contains("typed"));
}

#[test]
fn convex_method_refuses_the_bridge_game() {
    let out = run_cli(&["core", &fixture("fig1.json"), "--method", "convex"]);
    assert_eq!(out.status, 1);
    assert!(out.stderr.contains("convex"));
}

#[test]
fn veto_lists_base_and_extension_agents() {
    let bridge = run_cli(&["veto", &fixture("fig1.json")]);
    assert_eq!(bridge.status, 0);
    assert!(bridge.stdout.contains("base veto agents: (none)"));
    assert!(bridge.stdout.contains("extension veto agents: (none)"));

    let unanimity = run_cli(&["veto", &fixture("unanimity.json")]);
    assert!(unanimity.stdout.contains("base veto agents: x,y,z"));
    assert!(unanimity.stdout.contains("extension veto agents: x,y,z"));
}

#[test]
fn check_reports_membership_and_blockers() {
    let in_core = run_cli(&[
        "check",
        &fixture("fig1.json"),
        "--imputation",
        "0.05,0,0,0.05,0.09875",
    ]);
    assert_eq!(in_core.status, 0);
    assert!(in_core.stdout.contains("verdict: in core"));

    // The transposed assignment is blocked by {a,c,d,e}, which is worth
    // 0.05 + 0.125 - 0.0125 = 0.1625 but is paid only 0.14875.
    let blocked = run_cli(&[
        "check",
        &fixture("fig1.json"),
        "--imputation",
        "0,0.05,0,0.05,0.09875",
    ]);
    assert_eq!(blocked.status, 0);
    assert!(blocked.stdout.contains("verdict: blocked"));
    assert!(blocked.stdout.contains("blocking coalition: a,c,d,e"));
    assert!(blocked.stdout.contains("coalition payoff: 0.148750000000"));
    assert!(blocked.stdout.contains("coalition value: 0.162500000000"));

    // Everything on one agent: {c,d} blocks first in mask order.
    let concentrated = run_cli(&[
        "check",
        &fixture("fig1.json"),
        "--imputation",
        "0.19875,0,0,0,0",
    ]);
    assert_eq!(concentrated.status, 0);
    assert!(concentrated.stdout.contains("verdict: blocked"));
    assert!(concentrated.stdout.contains("blocking coalition: c,d"));
}

#[test]
fn check_argument_validation() {
    let wrong_len = run_cli(&["check", &fixture("fig1.json"), "--imputation", "0.5,0.5"]);
    assert_eq!(wrong_len.status, 1);

    let negative = run_cli(&[
        "check",
        &fixture("fig1.json"),
        "--imputation",
        "-0.1,0.1,0,0.05,0.14875",
    ]);
    assert_eq!(negative.status, 1);

    let wrong_sum = run_cli(&[
        "check",
        &fixture("fig1.json"),
        "--imputation",
        "0.1,0.1,0.1,0.1,0.1",
    ]);
    assert_eq!(wrong_sum.status, 1);
    assert!(wrong_sum.stderr.contains("not an imputation"));

    let garbage = run_cli(&["check", &fixture("fig1.json"), "--imputation", "a,b,c,d,e"]);
    assert_eq!(garbage.status, 1);
}

#[test]
fn json_mode_emits_parseable_reports() {
    let value = run_cli(&["value", &fixture("fig1.json"), "a,b", "--json"]);
    assert_eq!(value.status, 0);
    let parsed: serde_json::Value = serde_json::from_str(&value.stdout).unwrap();
    assert_eq!(parsed["reliability_value"], 0.05);
    assert_eq!(parsed["base_value"], 1);
    assert_eq!(parsed["coalition"][0], "a");

    let shapley = run_cli(&[
        "shapley",
        &fixture("fig1.json"),
        "--samples",
        "500",
        "--seed",
        "3",
        "--json",
    ]);
    let parsed: serde_json::Value = serde_json::from_str(&shapley.stdout).unwrap();
    assert_eq!(parsed["samples"], 500);
    assert_eq!(parsed["values"].as_array().unwrap().len(), 5);

    let core = run_cli(&["core", &fixture("fig1-no-e.json"), "--json"]);
    let parsed: serde_json::Value = serde_json::from_str(&core.stdout).unwrap();
    assert_eq!(parsed["verdict"], "empty");
}

#[test]
fn identical_flags_give_identical_output() {
    let args = [
        "shapley",
        &fixture("fig1.json"),
        "--samples",
        "2000",
        "--seed",
        "11",
        "--mode",
        "shared",
    ];
    let first = run_cli(&args);
    let second = run_cli(&args);
    assert_eq!(first.status, 0);
    assert_eq!(first.stdout, second.stdout);

    let exact1 = run_cli(&["shapley", &fixture("fig1.json"), "--exact"]);
    let exact2 = run_cli(&["shapley", &fixture("fig1.json"), "--exact"]);
    assert_eq!(exact1.stdout, exact2.stdout);
}

#[test]
fn disconnected_network_warns_but_works() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dangling.json");
    std::fs::write(
        &path,
        r#"{"game":"network","format_version":1,"vertices":["s","m","t"],
            "source":"s","target":"t","edges":[{"from":"s","to":"m"}],
            "survival":[0.9]}"#,
    )
    .unwrap();
    let out = run_cli(&["value", path.to_str().unwrap(), "e0"]);
    assert_eq!(out.status, 0);
    assert!(out.stderr.contains("warning"));
    assert!(out.stdout.contains("reliability value: 0.000000000000"));
}

#[test]
fn weighted_voting_files_load() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("wvg.json");
    std::fs::write(
        &path,
        r#"{"game":"weighted_voting","format_version":1,
            "labels":["p","q","r"],"weights":[1.0,1.0,1.0],"quota":2.0,
            "survival":[0.5,0.5,0.5]}"#,
    )
    .unwrap();
    let out = run_cli(&["value", path.to_str().unwrap(), "p,q"]);
    assert_eq!(out.status, 0);
    assert!(out.stdout.contains("base value: 1"));
    assert!(out.stdout.contains("reliability value: 0.250000000000"));
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run_cli(&["--help"]).status, 0);
    assert_eq!(run_cli(&["--version"]).status, 0);
    assert_eq!(run_cli(&["bogus-subcommand"]).status, 1);
}
