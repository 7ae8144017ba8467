use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const WORKED: &str = "pos:3-5,loop:5,neg:3-4,neg:2-3,loop:2,pos:1-2";

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.extend(["..", "..", "data", name]);
    p.to_string_lossy().into_owned()
}

fn hyperocta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperocta"))
        .args(args)
        .env_remove("HYPEROCTA_CAP")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn product_of_worked_ordering() {
    let out = hyperocta(&[
        "product",
        "--graph",
        &data("worked.json"),
        "--ordering",
        WORKED,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["classification"], "even full cycle");
    assert_eq!(v["notation"], "(1 2 -3 5 -4)+");
    assert_eq!(v["images"], serde_json::json!([2, -3, -5, -1, -4]));
}

#[test]
fn decompose_worked_ordering() {
    let out = hyperocta(&[
        "decompose",
        "--graph",
        &data("worked.json"),
        "--ordering",
        WORKED,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["inversions"], "(1 -1)(3 -3)(4 -4)(5 -5)");
    assert_eq!(v["base"], "(1 2)(2 3)(3 4)(3 5)");
    assert_eq!(v["recomposes"], true);
}

#[test]
fn decide_triangle_is_filtered() {
    let out = hyperocta(&["decide", "--graph", &data("triangle.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        r#"{"even_exists":false,"method":"filter-rejected","odd_exists":false}"#
    );
}

#[test]
fn decide_worked_graph_has_even_witness() {
    for method in ["reduction", "brute-force"] {
        let out = hyperocta(&[
            "decide",
            "--graph",
            &data("worked.json"),
            "--method",
            method,
        ]);
        assert_eq!(out.status.code(), Some(0));
        let v = json(&out);
        assert_eq!(v["even_exists"], true);
        assert_eq!(v["odd_exists"], false);
        let witness = v["witness_even"].as_array().unwrap();
        let literal: Vec<&str> = witness.iter().map(|e| e.as_str().unwrap()).collect();
        let check = hyperocta(&[
            "product",
            "--graph",
            &data("worked.json"),
            "--ordering",
            &literal.join(","),
        ]);
        assert_eq!(json(&check)["class"], "even-full");
    }
}

#[test]
fn count_reports_formula_match() {
    let out = hyperocta(&["count", "--target", "(1 2 3)-", "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["count"], 27);
    assert_eq!(v["formula"], 27);
    assert_eq!(v["match"], true);
    assert!(v["nodes"].as_u64().unwrap() > 0);
    assert!(v["ms"].is_number());

    let out = hyperocta(&[
        "count",
        "--target",
        "(1 2 3 4)+",
        "--k",
        "3",
        "--generators",
        "positive",
    ]);
    assert_eq!(json(&out)["count"], 16);

    // Unicode minus is accepted; non-full targets have no closed form.
    let out = hyperocta(&["count", "--target", "(1 −2)+(3)+", "--k", "2"]);
    let v = json(&out);
    assert_eq!(v["formula"], Value::Null);
    assert_eq!(v["match"], Value::Null);
}

#[test]
fn verify_factorization_rows() {
    for suite in ["factorizations", "corollary112"] {
        let out = hyperocta(&["verify", "--suite", suite, "--max-n", "4"]);
        assert_eq!(out.status.code(), Some(0));
        let v = json(&out);
        assert_eq!(v["pass"], true);
        let rows = v["rows"].as_array().unwrap();
        let a: Vec<(&str, &str)> = rows
            .iter()
            .filter(|r| r["case"].as_str().unwrap().contains("n-1 signed"))
            .map(|r| {
                (
                    r["expected"].as_str().unwrap(),
                    r["measured"].as_str().unwrap(),
                )
            })
            .collect();
        assert_eq!(a, [("1", "1"), ("3", "3"), ("16", "16")]);
    }
}

#[test]
fn verify_every_suite_small() {
    for suite in ["lemmas", "signed-existence", "universality", "census"] {
        let out = hyperocta(&["verify", "--suite", suite, "--max-n", "3", "--jobs", "2"]);
        assert_eq!(out.status.code(), Some(0), "{suite}");
        assert_eq!(json(&out)["pass"], true);
    }
}

#[test]
fn enumerate_families() {
    for (family, n, count) in [
        ("odd-cycles", "4", 48),
        ("trees", "4", 512),
        ("pairs", "3", 216),
    ] {
        let v = json(&hyperocta(&["enumerate", family, "--n", n]));
        assert_eq!(v["count"], count);
        assert_eq!(v["match"], true);
    }
}

#[test]
fn malformed_input_exits_2_naming_the_field() {
    let out = hyperocta(&[
        "product",
        "--graph",
        &data("worked.json"),
        "--ordering",
        "pos:3-5,nope",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["field"], "ordering");

    let out = hyperocta(&["classify", "--target", "(1 2)"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["field"], "target");

    let out = hyperocta(&["decide", "--graph", "/nonexistent/graph.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["field"], "graph");

    let out = hyperocta(&["verify", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn limits_exit_3() {
    let out = hyperocta(&["decide", "--graph", &data("worked.json"), "--cap", "3"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["error"]["field"], "cap");

    let out = Command::new(env!("CARGO_BIN_EXE_hyperocta"))
        .args(["decide", "--graph", &data("worked.json")])
        .env("HYPEROCTA_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    let out = hyperocta(&["count", "--target", "(1 2 3 4 5 6 7)+", "--k", "6"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn classify_round_trips_notation() {
    let v = json(&hyperocta(&["classify", "--images=2,-3,-5,-1,-4"]));
    assert_eq!(v["notation"], "(1 2 -3 5 -4)+");
    let again = json(&hyperocta(&[
        "classify",
        "--target",
        v["notation"].as_str().unwrap(),
    ]));
    assert_eq!(again["images"], v["images"]);
    assert_eq!(again["cycle_type"]["lambda"], serde_json::json!([5]));
}
