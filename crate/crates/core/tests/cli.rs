use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_permsplit"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("stdout is JSON lines"))
        .collect()
}

#[test]
fn contains_reports_one_based_embedding() {
    let out = run(&["contains", "132", "2413"], "");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        lines(&out),
        [json!({"contains": true, "embedding": [1, 2, 4]})]
    );

    let out = run(&["contains", "321", "2413"], "");
    assert_eq!(lines(&out)[0]["contains"], json!(false));
}

#[test]
fn enumerate_counts_and_lists() {
    let out = run(&["enumerate", "--avoid", "1324", "--n", "5", "--count"], "");
    assert_eq!(lines(&out), [json!({"count": 103, "n": 5})]);

    let out = run(&["enumerate", "--avoid", "123,321", "--n", "4"], "");
    assert_eq!(lines(&out).len(), 4);
    let out = run(&["enumerate", "--avoid", "123,321", "--n", "5"], "");
    assert_eq!(lines(&out).len(), 0);
    let out = run(&["enumerate", "--avoid", "123", "--n", "3"], "");
    assert_eq!(lines(&out).len(), 5);
}

#[test]
fn split_reads_plain_and_json_lines() {
    let out = run(
        &["split", "--method", "greedy3", "--pattern", "1324"],
        "2413\n\"3 1 4 2\"\n",
    );
    assert_eq!(out.status.code(), Some(0));
    let v = lines(&out);
    assert_eq!(v.len(), 2);
    assert_eq!(v[0]["colors"], json!([0, 0, 0, 1]));
    assert_eq!(v[0]["parts"], json!(["1 3 2", "2 1 3"]));
}

#[test]
fn split_failure_is_reported_per_subject() {
    let out = run(
        &["split", "--method", "greedy3", "--pattern", "1324"],
        "1324\n",
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(lines(&out)[0]["error"]
        .as_str()
        .unwrap()
        .contains("precondition"));
}

#[test]
fn split_with_other_methods() {
    let out = run(
        &["split", "--method", "dilworth", "--pattern", "321"],
        "2143\n",
    );
    assert_eq!(out.status.code(), Some(0));
    let out = run(
        &["split", "--method", "theorem", "--pattern", "1342"],
        "2413\n",
    );
    assert_eq!(out.status.code(), Some(0));
    let out = run(
        &["split", "--method", "oneplus", "--pattern", "1432"],
        "2413\n",
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_passes_and_fails() {
    let out = run(
        &[
            "verify", "--class", "1324", "--parts", "132,213", "--max-n", "6",
        ],
        "",
    );
    assert_eq!(out.status.code(), Some(0));
    let v = &lines(&out)[0];
    assert_eq!(v["checked"], json!(649));
    assert_eq!(v["failures"], json!([]));

    let out = run(
        &["verify", "--class", "321", "--parts", "12", "--max-n", "3"],
        "",
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn classify_verdicts() {
    let out = run(&["classify", "2413"], "");
    assert_eq!(lines(&out)[0]["verdict"], json!("unsplittable"));
    let out = run(&["classify", "1324"], "");
    assert_eq!(lines(&out)[0]["verdict"], json!("splittable"));
}

#[test]
fn envelope_verbs() {
    let out = run(&["envelope", "encode", "132"], "");
    assert_eq!(lines(&out)[0]["arcs"], json!("1-5 2-6 3-4"));
    let out = run(&["envelope", "decode", "1-5 2-6 3-4"], "");
    assert_eq!(lines(&out)[0]["perm"], json!("1 3 2"));
    let out = run(&["envelope", "decode", "1-3 2-4"], "");
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["envelope", "reduce", "2413"], "");
    assert_eq!(lines(&out)[0]["reduced"], json!("1-3 2-4"));
}

#[test]
fn color_matching_is_proper() {
    let out = run(&["color-matching", "--forbid-clique", "3"], "1-3 2-4\n");
    assert_eq!(lines(&out)[0]["colors"], json!([0, 1]));
}

#[test]
fn construct_verbs() {
    let out = run(&["construct", "nplus", "--sigma", "231"], "");
    assert_eq!(lines(&out)[0]["matching"], json!("1-4 2-6 3-8 5-7"));
    let out = run(
        &["construct", "tau", "--sigma", "21", "--matching", "1-2"],
        "",
    );
    assert_eq!(lines(&out)[0]["tau"], json!("1 2"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        run(&["construct", "tau", "--sigma", "21"], "")
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["bogus"], "").status.code(), Some(2));
    assert_eq!(run(&["contains", "1x2", "12"], "").status.code(), Some(2));
}

#[test]
fn jobs_flag_does_not_change_output() {
    let args = ["split", "--method", "greedy3", "--pattern", "1324"];
    let input = "2413\n3142\n2143\n";
    let one = run(&[&["--jobs", "1"][..], &args].concat(), input);
    let four = run(&[&["--jobs", "4"][..], &args].concat(), input);
    assert_eq!(one.stdout, four.stdout);
}
