use std::process::{Command, Output};

use serde_json::Value;

fn meadow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_meadow"))
        .args(args)
        .env_remove("MEADOW_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn first_line(args: &[&str]) -> String {
    let out = meadow(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out).lines().next().unwrap_or_default().to_string()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--output", "json"]);
    serde_json::from_str(&stdout(&meadow(&all))).unwrap()
}

#[test]
fn normalize_examples() {
    assert_eq!(
        first_line(&["normalize", "-n", "1", "D[1](1/X1)"]),
        "(-1) / (X1^2)"
    );
    assert_eq!(first_line(&["normalize", "-n", "1", "0^-1"]), "0");
    let out = stdout(&meadow(&["normalize", "-n", "2", "X1/X1"]));
    assert_eq!(out, "X1 / X1\nbadset: [X1]\n");
}

#[test]
fn eq_verdicts_and_exit_codes() {
    let out = meadow(&["eq", "-n", "1", "X1/X1", "1"]);
    assert_eq!((out.status.code(), stdout(&out).trim()), (Some(0), "EQUAL"));
    let out = meadow(&["eq", "-n", "3", "D[1](X2*X3)", "0"]);
    assert_eq!((out.status.code(), stdout(&out).trim()), (Some(0), "EQUAL"));
    let out = meadow(&["eq", "-n", "2", "X1", "X2"]);
    assert_eq!(
        (out.status.code(), stdout(&out).trim()),
        (Some(1), "NOT-EQUAL")
    );
}

#[test]
fn diff_examples() {
    assert_eq!(
        first_line(&["diff", "1", "-n", "3", "(1 + X2 - 2*X1*X3)/(8 - X1*X3^2)"]),
        "(-16*X3 + X3^2 + X2*X3^2) / (64 - 16*X1*X3^2 + X1^2*X3^4)"
    );
    assert_eq!(first_line(&["diff", "1", "-n", "1", "X1"]), "1");
    assert_eq!(first_line(&["diff", "2", "-n", "2", "X1"]), "0");
    assert_eq!(
        meadow(&["diff", "3", "-n", "2", "X1"]).status.code(),
        Some(2)
    );
}

#[test]
fn eval_examples() {
    assert_eq!(
        first_line(&["eval", "-n", "1", "X1 * X1^-1", "--at", "X1=0"]),
        "0"
    );
    assert_eq!(
        first_line(&["eval", "-n", "1", "X1 * X1^-1", "--at", "X1=7"]),
        "1"
    );
    assert_eq!(
        first_line(&["eval", "-n", "3", "8 - X1*X3^2", "--at", "X1=2,X2=0,X3=2"]),
        "0"
    );
    assert_eq!(
        first_line(&["eval", "-n", "1", "X1^-1", "--at", "X1=-2/3"]),
        "-3/2"
    );
    assert_eq!(
        meadow(&["eval", "-n", "1", "D[1](X1)", "--at", "X1=1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        meadow(&["eval", "-n", "2", "X1", "--at", "X1=1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn parse_errors_show_the_span() {
    let out = meadow(&["normalize", "1 + * 2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("1 + * 2"), "{err}");
    assert!(err.contains("    ^"), "{err}");
    assert_eq!(
        meadow(&["normalize", "-n", "2", "X3"]).status.code(),
        Some(2)
    );
    assert_eq!(meadow(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn check_suites() {
    let out = meadow(&["check", "md", "-n", "1", "--trials", "10"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("10/10 passed\n"));
    let de = json(&["check", "de", "-n", "2"]);
    let names: Vec<&str> = de["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["name"].as_str().unwrap())
        .collect();
    assert_eq!(names.iter().filter(|n| n.starts_with("D4")).count(), 2);
    assert_eq!(names.iter().filter(|n| n.starts_with("D5")).count(), 2);
    assert_eq!(de["passed"], true);
    assert_eq!(meadow(&["check", "nope"]).status.code(), Some(2));
}

#[test]
fn check_all_passes_and_is_deterministic() {
    let a = meadow(&["check", "all", "-n", "3", "--seed", "42"]);
    assert_eq!(a.status.code(), Some(0));
    let b = meadow(&["check", "all", "-n", "3", "--seed", "42"]);
    assert_eq!(a.stdout, b.stdout);
    let report = json(&["check", "all", "-n", "3", "--seed", "42"]);
    assert_eq!(report["schema"], "meadow.check/v1");
    assert!(report["reports"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["verdict"] == "pass"));
}

#[test]
fn seed_from_environment() {
    let run = |env: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_meadow"));
        cmd.args(["check", "cancellation", "--output", "json"]);
        match env {
            Some(seed) => cmd.env("MEADOW_SEED", seed),
            None => cmd.env_remove("MEADOW_SEED"),
        };
        let v: Value = serde_json::from_slice(&cmd.output().unwrap().stdout).unwrap();
        v["seed"].as_u64().unwrap()
    };
    assert_eq!(run(None), 42);
    assert_eq!(run(Some("7")), 7);
}

#[test]
fn smf_files() {
    let dir = std::env::temp_dir().join(format!("meadow-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let write = |name: &str, body: &str| {
        let path = dir.join(name);
        std::fs::write(&path, body).unwrap();
        path.to_string_lossy().into_owned()
    };
    let example = write(
        "example.json",
        r#"{"kind":"guard","pivot":"1 - X1",
            "zero":{"kind":"level0","p":"2*X1","q":"X2"},
            "unit":{"kind":"level0","p":"1 + X2 - 2*X1*X3","q":"8 - X1*X3^2"}}"#,
    );
    assert_eq!(
        first_line(&["smf", &example]),
        "(1 + X2 - 2*X1*X3) / (8 - X1*X3^2)"
    );
    let zero = write("zero.json", r#"{"kind":"level0","p":"0","q":"X1"}"#);
    assert_eq!(first_line(&["smf", &zero]), "0");
    let nested = write(
        "nested.json",
        r#"{"kind":"guard","pivot":"0",
            "zero":{"kind":"guard","pivot":"X1",
                "zero":{"kind":"level0","p":"1","q":"1"},
                "unit":{"kind":"guard","pivot":"X2 - X2",
                    "zero":{"kind":"level0","p":"X3","q":"X1"},
                    "unit":{"kind":"level0","p":"1","q":"1"}}},
            "unit":{"kind":"level0","p":"1","q":"1"}}"#,
    );
    let v = json(&["smf", &nested]);
    assert_eq!(v["level"], 3);
    assert_eq!(v["rendered"], "X3 / X1");
    let broken = write("broken.json", r#"{"kind":"level0","p":"0"}"#);
    assert_eq!(meadow(&["smf", &broken]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_payloads_carry_a_schema() {
    let cases: [&[&str]; 4] = [
        &["normalize", "-n", "2", "X1/X1"],
        &["eq", "-n", "1", "X1", "X1"],
        &["diff", "1", "X1^2"],
        &["eval", "-n", "1", "X1", "--at", "X1=1/2"],
    ];
    for args in cases {
        let v = json(args);
        assert!(
            v["schema"].as_str().unwrap().starts_with("meadow."),
            "{args:?}"
        );
    }
    let n = json(&["normalize", "-n", "2", "X1/X1"]);
    assert_eq!(n["kind"], "quot");
    assert_eq!(n["badset"].as_array().unwrap().len(), 1);
    assert_eq!(
        json(&["eval", "-n", "1", "X1", "--at", "X1=1/2"])["at"]["X1"],
        "1/2"
    );
}

#[test]
fn clear_denominators_flag() {
    assert_eq!(
        first_line(&["normalize", "-n", "1", "X1/2 + 1/3"]),
        "(2 + 3*X1) / 6"
    );
    let path = std::env::temp_dir().join(format!("meadow-half-{}.json", std::process::id()));
    std::fs::write(
        &path,
        r#"{"kind":"level0",
            "p":[{"exponents":[1],"num":"1","den":"2"}],
            "q":[{"exponents":[0],"num":"1","den":"3"}]}"#,
    )
    .unwrap();
    let file = path.to_string_lossy().into_owned();
    assert_eq!(first_line(&["smf", "-n", "1", &file]), "(1/2*X1) / (1/3)");
    assert_eq!(
        first_line(&["smf", "-n", "1", &file, "--clear-denominators"]),
        "(3*X1) / 2"
    );
    std::fs::remove_file(&path).unwrap();
}
