use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_artin-bd"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout)
        .unwrap()
        .trim_end()
        .to_string()
}

#[test]
fn reduce_examples() {
    assert_eq!(stdout(&["reduce", "u1 u1^-1"]), "e");
    assert_eq!(stdout(&["reduce", "x1 x1 x2"]), "x2");
    assert_eq!(stdout(&["reduce", "u1 u2"]), "u1 u2");
}

#[test]
fn act_examples() {
    assert_eq!(
        stdout(&["act", "--rep", "rhoB", "--n", "3", "a1", "u2"]),
        "u2^-1 u1 u2"
    );
    assert_eq!(
        stdout(&["act", "--rep", "rhoDv", "--n", "4", "a1", "v3"]),
        "v1^-1 v3"
    );
    assert_eq!(
        stdout(&["act", "--rep", "rhoPlus", "--n", "4", "a1", "x1"]),
        "x2"
    );
}

#[test]
fn conj_phi_psi() {
    assert_eq!(
        stdout(&["conj", "x1 x2", "x2 x1", "--n", "3"]),
        "conjugate by x2"
    );
    assert_eq!(stdout(&["conj", "u1", "u2"]), "not conjugate");
    assert_eq!(
        stdout(&["phi", "--flavor", "B", "--n", "3", "b1 b2"]),
        "(u1 | a1)"
    );
    assert_eq!(
        stdout(&["psi", "--flavor", "B", "--n", "3", "(u2 | a1)"]),
        "b2 b1"
    );
}

#[test]
fn verify_examples_pass() {
    for args in [
        vec!["verify", "deltakey", "--n", "3", "--len", "8"],
        vec!["verify", "phi-psi", "--flavor", "B", "--n", "4"],
        vec!["verify", "braid-relations", "--rep", "rhoDg", "--n", "5"],
    ] {
        let text = stdout(&args);
        assert!(text.contains(": pass"), "{text}");
    }
}

#[test]
fn json_report_schema() {
    let text = stdout(&["verify", "x0-fixed", "--json", "--stable"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    for key in ["suite", "params", "checked", "failures", "pass"] {
        assert!(v.get(key).is_some(), "{key} missing from {text}");
    }
    assert!(v.get("wall_time_ms").is_none());
    assert_eq!(v["failures"], serde_json::json!([]));
    assert_eq!(v["pass"], serde_json::json!(true));
}

#[test]
fn stable_output_is_reproducible_across_job_counts() {
    let args = [
        "verify",
        "dyer-grossman",
        "--n",
        "3",
        "--len",
        "5",
        "--json",
        "--stable",
    ];
    let first = stdout(&args);
    assert_eq!(first, stdout(&args));
    let mut with_jobs = args.to_vec();
    with_jobs.extend(["--jobs", "1"]);
    assert_eq!(first, stdout(&with_jobs));
}

#[test]
fn rank2_commands() {
    let text = stdout(&[
        "--json", "rank2", "--m", "4", "classify", "--alpha", "b^-1", "--beta", "b a b",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["e_eta"], 1);
    assert_eq!(v["e_eps"], 0);
    assert_eq!(v["e_tau"], 0);
    assert_eq!(v["inner_witness"], "e");
    assert_eq!(stdout(&["rank2", "--m", "3", "nf", "a a a a"]), "c a");
    assert_eq!(stdout(&["rank2", "--m", "4", "nf", "b a a b^-1"]), "c");
}

#[test]
fn exit_codes() {
    let parse = run(&["reduce", "u1 u2^-1  x v^5"]);
    assert_eq!(parse.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("column"));
    assert_eq!(run(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(
        run(&["act", "--rep", "rhoB", "--n", "3", "a1", "v1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["rank2", "--m", "3", "classify", "--alpha", "a", "--beta", "a"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}
