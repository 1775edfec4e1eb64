use std::path::PathBuf;
use std::process::Command;

use serde_json::{json, Value};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_reserve"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, stdout, stderr) = run(args);
    let value = serde_json::from_str(&stdout)
        .unwrap_or_else(|e| panic!("not JSON ({e}): {stdout}\nstderr: {stderr}"));
    (code, value)
}

fn steps(report: &Value) -> Vec<(String, String)> {
    report["trace"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| {
            let who = s["patients"].as_array().unwrap();
            assert_eq!(who.len(), 1);
            (
                s["category"].as_str().unwrap().to_owned(),
                who[0].as_str().unwrap().to_owned(),
            )
        })
        .collect()
}

fn pairs(list: &[(&str, &str)]) -> Vec<(String, String)> {
    list.iter()
        .map(|(c, i)| (c.to_string(), i.to_string()))
        .collect()
}

#[test]
fn six_category_step_tables() {
    let file = data("six_category.json");
    let (code, report) = run_json(&[
        "--instance",
        &file,
        "--mechanism",
        "sequential",
        "--precedence",
        "cp,c,cs,ch,ct,u",
        "--trace",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        steps(&report),
        pairs(&[
            ("cp", "i1"),
            ("c", "i3"),
            ("cs", "i2"),
            ("ch", "i4"),
            ("ct", "i7"),
            ("u", "i5")
        ])
    );
    assert_eq!(report["matching"]["i6"], Value::Null);

    let (code, report) = run_json(&[
        "--instance",
        &file,
        "--mechanism",
        "sequential",
        "--precedence",
        "c,cp,cs,ch,ct,u",
        "--trace",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        steps(&report),
        pairs(&[
            ("c", "i1"),
            ("cp", "i2"),
            ("cs", "i5"),
            ("ch", "i3"),
            ("ct", "i4"),
            ("u", "i6")
        ])
    );
    assert_eq!(report["matching"]["i7"], Value::Null);
}

#[test]
fn smart_matching_on_two_patient_hard_reserve() {
    let file = data("two_patient_hard.json");
    let (code, report) = run_json(&["--instance", &file, "--mechanism", "smart-poly", "--n", "0"]);
    assert_eq!(code, 0);
    assert_eq!(report["matching"], json!({ "i1": "c", "i2": "u" }));
    assert_eq!(report["n"], 0);

    for n in ["0", "1"] {
        let (code, report) = run_json(&[
            "--instance",
            &file,
            "--mechanism",
            "smart-exhaustive",
            "--n",
            n,
            "--trace",
        ]);
        assert_eq!(code, 0);
        assert_eq!(report["matching"], json!({ "i1": "c", "i2": "u" }));
        assert_eq!(report["smart_matchings"], 1);
        assert_eq!(
            report["trace"][0],
            json!({ "patient": "i1", "decision": "preferential" })
        );
    }

    // Processing u first leaves the reserved unit idle.
    let (_, report) = run_json(&[
        "--instance",
        &file,
        "--mechanism",
        "sequential",
        "--precedence",
        "u,c",
    ]);
    assert_eq!(report["matching"], json!({ "i1": "u", "i2": null }));
}

#[test]
fn random_equilibrium_check_passes() {
    let (code, report) = run_json(&["--verify", "theorem1", "--seed", "42"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"], "pass");
    assert_eq!(report["instances"], 200);
    assert_eq!(report["seed"], 42);
}

#[test]
fn every_check_passes_on_a_few_random_instances() {
    for check in [
        "axioms", "theorem1", "theorem2", "lemma1", "prop1", "prop2", "prop3", "lemma2", "prop4",
        "theorem3",
    ] {
        let (code, report) = run_json(&["--verify", check, "--seed", "7", "--instances", "10"]);
        assert_eq!(code, 0, "{check}: {report}");
        assert_eq!(report["verify"], check);
    }
}

#[test]
fn failed_check_dumps_a_rerunnable_counterexample() {
    let (code, report) = run_json(&[
        "--instance",
        &data("zero_capacity.json"),
        "--verify",
        "theorem1",
    ]);
    assert_eq!(code, 2);
    assert_eq!(report["result"], "fail");
    let dump = &report["counterexample"]["instance"];
    assert_eq!(dump["kind"], "raw");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("counterexample.json");
    std::fs::write(&path, serde_json::to_string(dump).unwrap()).unwrap();
    let path = path.to_string_lossy().into_owned();
    let (code, again) = run_json(&["--instance", &path, "--verify", "theorem1"]);
    assert_eq!(code, 2);
    assert_eq!(again["counterexample"]["instance"], *dump);
    let (code, _) = run_json(&["--instance", &path, "--mechanism", "da"]);
    assert_eq!(code, 0);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let file = data("six_category.json");
    let args = ["--instance", file.as_str(), "--mechanism", "da", "--trace"];
    assert_eq!(run(&args), run(&args));
    let args = ["--verify", "lemma2", "--seed", "3", "--instances", "20"];
    assert_eq!(run(&args), run(&args));
    let args = [
        "--verify",
        "prop2",
        "--seed",
        "3",
        "--instances",
        "20",
        "--format",
        "text",
    ];
    assert_eq!(run(&args), run(&args));
}

#[test]
fn da_with_profile_file() {
    let (code, report) = run_json(&[
        "--instance",
        &data("two_category.json"),
        "--mechanism",
        "da",
        "--profile",
        &data("two_category_profile.json"),
    ]);
    assert_eq!(code, 0);
    // c displaces a at reserved, then a displaces b at open.
    assert_eq!(
        report["matching"],
        json!({ "a": "open", "b": null, "c": "reserved" })
    );
    assert_eq!(report["proposals"], 5);
    assert_eq!(report["cutoffs"]["open"], json!({ "max": "a", "min": "a" }));
    assert_eq!(
        report["cutoffs"]["reserved"],
        json!({ "max": "c", "min": null })
    );
}

#[test]
fn text_format() {
    let (code, stdout, _) = run(&[
        "--instance",
        &data("two_patient_hard.json"),
        "--mechanism",
        "sequential",
        "--precedence",
        "c,u",
        "--format",
        "text",
    ]);
    assert_eq!(code, 0);
    assert!(stdout
        .starts_with("mechanism: sequential\nprecedence: c, u\nmatching:\n  i1: c\n  i2: u\n"));
}

#[test]
fn malformed_input_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, body: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p.to_string_lossy().into_owned()
    };
    let not_json = write("a.json", "{ nope");
    let unknown_field = write(
        "b.json",
        r#"{"kind":"raw","patients":[],"categories":[],"extra":1}"#,
    );
    let bad_priority = write(
        "c.json",
        r#"{"kind":"raw","patients":["a","b"],"categories":[{"id":"c","capacity":1,"priority":["a"],"eligible_count":1}]}"#,
    );
    let raw = data("two_category.json");
    let hard = data("two_patient_hard.json");

    let cases: Vec<Vec<&str>> = vec![
        vec!["--instance", &not_json, "--mechanism", "da"],
        vec!["--instance", &unknown_field, "--mechanism", "da"],
        vec!["--instance", &bad_priority, "--mechanism", "da"],
        vec!["--instance", "/nonexistent/file.json", "--mechanism", "da"],
        vec!["--mechanism", "sequential"],
        vec!["--instance", &raw, "--mechanism", "smart-poly", "--n", "0"],
        vec!["--instance", &hard, "--mechanism", "smart-poly"],
        vec!["--instance", &hard, "--mechanism", "smart-poly", "--n", "5"],
        vec![
            "--instance",
            &raw,
            "--mechanism",
            "sequential",
            "--precedence",
            "open",
        ],
        vec![
            "--instance",
            &raw,
            "--mechanism",
            "sequential",
            "--precedence",
            "open,nowhere",
        ],
        vec!["--instance", &hard, "--verify", "prop3"],
        vec!["--mechanism", "unknown"],
        vec!["--verify", "theorem9"],
        vec!["--instance", &raw],
        vec!["--instance", &raw, "--mechanism", "da", "--verify", "prop1"],
    ];
    for args in cases {
        let (code, stdout, stderr) = run(&args);
        assert_eq!(code, 1, "{args:?}: {stdout}");
        assert!(stdout.is_empty(), "{args:?}");
        assert!(!stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_cleanly() {
    let (code, stdout, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("--mechanism"));
}
