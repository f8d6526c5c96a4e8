//! End-to-end tests of the `conics` binary: output contracts, exit codes,
//! and error reporting. Exit codes are 0 success, 1 domain error, 64 usage
//! error; `verify` exits with its report status (3 when only the documented
//! benign discrepancies remain).

use std::process::Command;

fn conics(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_conics"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("stdout is utf-8"),
        String::from_utf8(out.stderr).expect("stderr is utf-8"),
        out.status.code().unwrap_or(-1),
    )
}

fn json(args: &[&str]) -> (serde_json::Value, i32) {
    let (stdout, stderr, code) = conics(args);
    assert!(stderr.is_empty(), "unexpected stderr: {stderr}");
    (
        serde_json::from_str(&stdout).expect("stdout is valid JSON"),
        code,
    )
}

#[test]
fn ring_number_evaluates_characteristic_numbers() {
    let (out, err, code) = conics(&["ring", "number", "H1^2*H2^3"]);
    assert_eq!((out.as_str(), err.as_str(), code), ("4\n", "", 0));
    let (out, _, code) = conics(&["ring", "number", "E1^5"]);
    assert_eq!((out.as_str(), code), ("51\n", 0));
    let (out, _, code) = conics(&["ring", "number", "2*H1^2*H2^3 - H1^5"]);
    assert_eq!((out.as_str(), code), ("7\n", 0));
}

#[test]
fn ring_pair_and_codimension_errors() {
    let (out, _, code) = conics(&["ring", "pair", "H2*E2", "H1^3"]);
    assert_eq!((out.as_str(), code), ("6\n", 0));

    let (out, err, code) = conics(&["ring", "pair", "H1", "H2"]);
    assert_eq!((out.as_str(), code), ("", 1));
    assert!(err.contains("do not add up to 5"), "stderr: {err}");

    let (_, err, code) = conics(&["ring", "number", "H1^2"]);
    assert_eq!(code, 1);
    assert!(
        err.contains("expected a class of codimension 5"),
        "stderr: {err}"
    );
}

#[test]
fn ring_expand_round_trips_through_its_own_output() {
    let (first, _, code) = conics(&["ring", "expand", "(H1+H2)*E1*E2"]);
    assert_eq!(code, 0);
    assert_eq!(first, "-2*H1^3 + 3*H1^2*H2 + 3*H1*H2^2 - 2*H2^3\n");
    let (second, _, code) = conics(&["ring", "expand", first.trim()]);
    assert_eq!(code, 0);
    assert_eq!(second, first);

    let (v, code) = json(&["ring", "expand", "(H1+H2)*E1*E2", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(v["codim"], serde_json::json!(3));
    assert_eq!(v["coefficients"], serde_json::json!(["-2", "3", "3", "-2"]));
    assert_eq!(
        v["monomials"],
        serde_json::json!(["H1^3", "H1^2*H2", "H1*H2^2", "H2^3"])
    );
}

#[test]
fn parse_errors_exit_one_and_point_at_the_column() {
    let (out, err, code) = conics(&["ring", "number", "H1^2 +"]);
    assert_eq!((out.as_str(), code), ("", 1));
    assert!(err.contains("column 7"), "stderr: {err}");

    let (_, err, code) = conics(&["ring", "number", "H1H2^3"]);
    assert_eq!(code, 1);
    assert!(err.contains("column 1"), "stderr: {err}");
    assert!(err.contains("unknown symbol `H1H2`"), "stderr: {err}");
}

#[test]
fn bb_cells_tables_and_json() {
    let (out, _, code) = conics(&["bb", "cells", "--space", "m"]);
    assert_eq!(code, 0);
    assert!(out.contains("p2'''"), "table: {out}");
    assert!(
        out.contains("cells by dimension: (1, 2, 3, 3, 2, 1)"),
        "table: {out}"
    );

    let (v, code) = json(&["bb", "cells", "--space", "e1", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(v["space"], serde_json::json!("e1"));
    assert_eq!(v["betti"], serde_json::json!([1, 2, 3, 2, 1]));
    assert_eq!(v["rows"].as_array().unwrap().len(), 9);

    let (_, err, code) = conics(&["bb", "cells", "--space", "mars"]);
    assert_eq!(code, 64);
    assert!(err.contains("unknown space"), "stderr: {err}");
}

#[test]
fn cones_dual_reproduces_the_published_rays() {
    let (v, code) = json(&[
        "cones",
        "dual",
        "--gens",
        "H1*E1; H2*E2; E1*E2",
        "--codim",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["dual_codim"], serde_json::json!(3));
    assert_eq!(
        v["dual_basis"],
        serde_json::json!(["H1^2*E1", "H2^2*E2", "H1^3"])
    );
    let coords: Vec<&serde_json::Value> = v["rays"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| &r["coords"])
        .collect();
    assert_eq!(
        serde_json::json!(coords),
        serde_json::json!([["-3", "0", "4"], ["-3", "3", "4"], ["0", "0", "1"]])
    );
    assert!(v["lineality"].as_array().unwrap().is_empty());

    let (out, _, code) = conics(&[
        "cones",
        "dual",
        "--gens",
        "H1^2; H1*H2; H2^2; H1^2 - H1*H2 + H2^2",
        "--codim",
        "2",
    ]);
    assert_eq!(code, 0);
    assert!(
        out.contains("basis {H1^2*E1, H2^2*E2, H1^3}"),
        "table: {out}"
    );
    assert!(out.contains("ray (-4, 1, 4)"), "table: {out}");
    assert!(out.contains("ray (-2, -1, 4)"), "table: {out}");
}

#[test]
fn cones_dual_rejects_bad_input() {
    let (_, err, code) = conics(&["cones", "dual", "--gens", "H1", "--codim", "2"]);
    assert_eq!(code, 1);
    assert!(
        err.contains("has codimension 1, expected 2"),
        "stderr: {err}"
    );

    let (_, err, code) = conics(&["cones", "dual", "--gens", "H1^5", "--codim", "5"]);
    assert_eq!(code, 1);
    assert!(err.contains("between 1 and 4"), "stderr: {err}");

    let (_, _, code) = conics(&["cones", "dual", "--codim", "2"]);
    assert_eq!(code, 64);
}

#[test]
fn cross_section_charts_the_standard_cones() {
    let (v, code) = json(&[
        "cones",
        "cross-section",
        "--which",
        "nef3",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["which"], serde_json::json!("nef3"));
    assert_eq!(
        v["basis"],
        serde_json::json!(["H1^2*E1", "H2^2*E2", "H1^3"])
    );
    let vertices = v["vertices"].as_array().unwrap();
    assert_eq!(vertices.len(), 3);
    assert_eq!(vertices[1]["label"], serde_json::json!("H2^3"));
    assert_eq!(
        vertices[1]["point"],
        serde_json::json!(["-3/4", "3/4", "1"])
    );
    assert_eq!(vertices[1]["xy"], serde_json::json!(["-3/4", "3/4"]));

    let (v, code) = json(&[
        "cones",
        "cross-section",
        "--which",
        "eff3",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let points: Vec<&serde_json::Value> = v["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| &x["point"])
        .collect();
    assert_eq!(
        serde_json::json!(points),
        serde_json::json!([["2", "-1", "0"], ["0", "-1", "2"], ["-2", "5", "-2"]])
    );
}

#[test]
fn verify_exit_codes_and_section_filter() {
    let (out, _, code) = conics(&["verify"]);
    assert_eq!(code, 3);
    assert!(out.contains("BENIGN_DISCREPANCY"), "table: {out}");
    assert!(
        out.contains("60 checks: 58 match, 2 benign discrepancy, 0 fail"),
        "table: {out}"
    );

    let (v, code) = json(&["verify", "--sections", "lemma1.1", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["total"], serde_json::json!(7));
    assert_eq!(v["summary"]["match"], serde_json::json!(7));

    let (v, code) = json(&[
        "verify",
        "--sections",
        "lemma1.1,thm3.1",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["total"], serde_json::json!(15));

    let (_, err, code) = conics(&["verify", "--sections", "lemma9"]);
    assert_eq!(code, 64);
    assert!(err.contains("unknown section"), "stderr: {err}");
    assert!(err.contains("available sections"), "stderr: {err}");
}

#[test]
fn usage_errors_and_help() {
    let (_, _, code) = conics(&["bogus"]);
    assert_eq!(code, 64);
    let (_, _, code) = conics(&["ring", "number"]);
    assert_eq!(code, 64);
    let (_, _, code) = conics(&["verify", "--format", "yaml"]);
    assert_eq!(code, 64);

    let (out, _, code) = conics(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Usage"), "help: {out}");
    let (out, _, code) = conics(&["--version"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("conics"), "version: {out}");
}
