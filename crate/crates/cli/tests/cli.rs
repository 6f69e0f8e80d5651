use std::collections::HashSet;
use std::io::Write;
use std::process::{Command, Output, Stdio};

use seifert_core::exact_arith::{int, parse_rational};
use seifert_core::StarGraph;
use serde_json::Value;

const E8: &str = "star g=0 d=2 arms=2/1,3/2,5/4";

fn calc(args: &[&str]) -> Output {
    calc_with(args, None, &[])
}

fn calc_with(args: &[&str], stdin: Option<&str>, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_seifert-calc"));
    cmd.args(args)
        .env_remove("SEIFERT_CALC_VERIFY")
        .envs(env.iter().copied())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("binary runs");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = calc(&full);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    serde_json::from_str(&stdout(&out)).unwrap()
}

#[test]
fn invariants_examples() {
    let v = json(&["invariants", E8]);
    assert_eq!(v["e"], "1/30");
    assert_eq!(v["chi"], "-1/30");
    assert_eq!(v["chi_over_e"], "-1");
    assert_eq!(v["alpha"], "0");
    assert_eq!(v["order_of_k"], "1");
    assert_eq!(v["discriminant_group"], "trivial");
    assert_eq!(v["det_abs"], "1");

    let v = json(&["invariants", "star g=1 d=3 arms="]);
    assert_eq!((v["e"].as_str(), v["chi"].as_str(), v["alpha"].as_str()), (Some("3"), Some("0"), Some("-1")));
    assert!(v["caveat"].is_string());

    let v = json(&["invariants", "star g=0 d=3 arms=4/1,4/1,4/1"]);
    assert_eq!(v["discriminant_group"], "Z/4 x Z/36");
    assert_eq!(v["det_abs"], "144");

    let out = calc(&["invariants", "star g=0 d=1 arms=3/1,3/1,3/1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("e = 0: not negative definite"));
}

#[test]
fn cyclic_quotients_keep_lattice_data() {
    let v = json(&["invariants", "star g=0 d=3 arms=4/1"]);
    assert_eq!(v["e"], "11/4");
    assert_eq!(v["discriminant_group"], "Z/11");
    assert!(v["alpha"].is_null() && v["order_of_k"].is_null());
    assert!(v["note"].as_str().unwrap().contains("cyclic quotient"));

    let out = calc(&["canonical-cycle", "star g=0 d=3 arms=4/1,5/2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cyclic quotient"));
}

#[test]
fn canonical_cycle_examples() {
    let v = json(&["canonical-cycle", E8]);
    let coeffs = v["coefficients"].as_object().unwrap();
    assert_eq!(coeffs.len(), 8);
    assert!(coeffs.values().all(|c| c == "0"));
    assert_eq!(v["verified_against_oracle"], true);

    let v = json(&["canonical-cycle", "star g=0 d=3 arms=4/1,4/1,4/1"]);
    assert_eq!(v["coefficients"]["C"], "-10/9");
    for arm in ["A1.1", "A2.1", "A3.1"] {
        assert_eq!(v["coefficients"][arm], "-7/9");
    }
    assert_eq!(v["order_of_k"], "9");

    let v = json(&["canonical-cycle", "star g=1 d=1 arms="]);
    assert_eq!(v["coefficients"]["C"], "-1");
}

#[test]
fn classify_examples() {
    assert_eq!(json(&["classify", E8])["class"], "log_terminal_quotient");

    let v = json(&["classify", "star g=0 d=4 arms=2/1,3/2,5/4"]);
    assert_eq!(v["class"], "log_terminal_quotient");
    assert_eq!(v["lemma24"]["applies"], true);
    assert_eq!(v["lemma24"]["matched_case"], "t3_d_ge_4");
    assert_eq!(v["qhd_certificate"]["overall"], true);

    let v = json(&["classify", "star g=0 d=1 arms=2/1,3/1,7/1"]);
    assert_eq!(v["alpha"], "-2");
    assert_eq!(v["qhd_certificate"]["overall"], false);
    assert_eq!(v["qhd_certificate"]["steps"].as_array().unwrap().len(), 4);

    let v = json(&["classify", "star g=2 d=1 arms="]);
    assert_eq!(v["class"], "not_log_canonical");
    assert!(v["lemma24"].is_null());
}

#[test]
fn graded_examples() {
    let v = json(&["poincare", "--kmax", "12", E8]);
    let series: Vec<u64> = serde_json::from_value(v["series"].clone()).unwrap();
    assert_eq!(series, [1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1]);

    let v = json(&["gorenstein", E8]);
    assert_eq!((v["gorenstein"].as_bool(), v["t"].as_str()), (Some(true), Some("-1")));
    assert_eq!(v["order"], "1");

    let v = json(&["gorenstein", "star g=0 d=3 arms=4/1,4/1,4/1"]);
    assert_eq!(v["gorenstein"], false);
    assert_eq!(v["order"], "9");

    let out = calc(&["poincare", "star g=1 d=3 arms="]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("genus > 0: dimensions need divisor class (out of scope)"));
}

#[test]
fn continued_fraction() {
    let out = calc(&["cf", "7/3"]);
    assert_eq!(stdout(&out), "[3,2,2]\n");
    let v = json(&["cf", "7/3"]);
    assert_eq!(v["q_prime"], 5);
    assert_eq!(calc(&["cf", "6/4"]).status.code(), Some(2));
    assert_eq!(calc(&["cf", "seven"]).status.code(), Some(2));
}

#[test]
fn input_sources_agree() {
    let from_arg = stdout(&calc(&["invariants", E8]));
    let from_stdin = calc_with(&["invariants"], Some(E8), &[]);
    assert_eq!(stdout(&from_stdin), from_arg);
    let json_graph = StarGraph::parse(E8).unwrap().to_json();
    let from_json = calc_with(&["invariants", "-"], Some(&json_graph), &[]);
    assert_eq!(stdout(&from_json), from_arg);

    assert_eq!(calc(&["invariants", "star g=0 d=2"]).status.code(), Some(2));
    assert_eq!(calc(&["invariants", "star g=0 d=2 arms=4/2,3/1,3/1"]).status.code(), Some(2));
}

#[test]
fn arms_kept_as_given() {
    let v = json(&["invariants", "star g=0 d=2 arms=5/4,2/1,3/2"]);
    assert_eq!(v["graph"], "star g=0 d=2 arms=5/4,2/1,3/2");
    assert_eq!(v["e"], "1/30");
}

#[test]
fn verify_flag_and_env() {
    let v = json(&["--verify", "invariants", E8]);
    assert_eq!(v["verified"], true);
    let out = calc_with(&["--json", "gorenstein", E8], None, &[("SEIFERT_CALC_VERIFY", "1")]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verified"], true);
    assert!(json(&["invariants", E8]).get("verified").is_none());
}

#[test]
fn output_is_deterministic_and_round_trips() {
    let cases: [&[&str]; 6] = [
        &["--json", "invariants", "star g=0 d=3 arms=4/1,4/1,4/1"],
        &["--json", "canonical-cycle", "star g=0 d=2 arms=7/3,5/2,3/1,2/1"],
        &["--json", "classify", E8],
        &["--json", "poincare", "--kmax", "40", E8],
        &["--json", "gorenstein", "star g=0 d=3 arms=2/1,3/1,7/1"],
        &["--json", "enumerate", "--t", "3..4", "--dmax", "3", "--nmax", "4"],
    ];
    for args in cases {
        let a = stdout(&calc(args));
        let b = stdout(&calc(args));
        assert_eq!(a, b, "{args:?}");
        let v: Value = serde_json::from_str(&a).unwrap();
        assert_eq!(format!("{}\n", serde_json::to_string_pretty(&v).unwrap()), a);
        if let Some(g) = v.get("graph") {
            let sg = StarGraph::parse(g.as_str().unwrap()).unwrap();
            assert_eq!(sg.to_string(), g.as_str().unwrap());
        }
    }
    let text = calc(&["classify", E8]);
    assert_eq!(stdout(&text), stdout(&calc(&["classify", E8])));
}

#[test]
fn enumeration() {
    let v = json(&["enumerate", "--t", "3", "--dmax", "4", "--nmax", "4", "--filter", "lemma24"]);
    let results = v["results"].as_array().unwrap();
    assert_eq!(v["count"], results.len());
    assert!(!results.is_empty());
    for r in results {
        assert!(parse_rational(r["chi_over_e"].as_str().unwrap()).unwrap() < int(1));
        assert!(r["matched_case"].is_string());
    }

    let v = json(&["enumerate", "--t", "3", "--dmax", "2", "--nmax", "3", "--filter", "log_canonical"]);
    let graphs: Vec<&str> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["graph"].as_str().unwrap())
        .collect();
    assert!(graphs.contains(&"star g=0 d=2 arms=3/1,3/1,3/1"));

    let v = json(&["enumerate", "--t", "3..5", "--dmax", "3", "--nmax", "5"]);
    let mut seen = HashSet::new();
    for r in v["results"].as_array().unwrap() {
        let sg = StarGraph::parse(r["graph"].as_str().unwrap()).unwrap();
        assert_eq!(sg, sg.canonical());
        assert!(seen.insert(sg.to_string()), "duplicate {sg}");
    }
    assert_eq!(v["count"], seen.len());

    for empty in [["--t", "5..3", "--dmax", "3"], ["--t", "3", "--dmax", "0"]] {
        let mut args = vec!["enumerate", "--nmax", "4"];
        args.extend_from_slice(&empty);
        let out = calc(&args);
        assert_eq!(out.status.code(), Some(0));
        assert!(stdout(&out).contains("count: 0"));
    }
    assert_eq!(calc(&["enumerate", "--dmax", "3", "--nmax", "1"]).status.code(), Some(2));
    assert_eq!(calc(&["enumerate", "--t", "-1", "--dmax", "3", "--nmax", "3"]).status.code(), Some(2));
}

#[test]
fn enumeration_filters_are_exact() {
    let all = json(&["enumerate", "--t", "3", "--dmax", "3", "--nmax", "7"]);
    let keep = |filter: &str| -> HashSet<String> {
        json(&["enumerate", "--t", "3", "--dmax", "3", "--nmax", "7", "--filter", filter])["results"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["graph"].as_str().unwrap().to_string())
            .collect()
    };
    let (lt1, gt2, lc) = (keep("chi_e_lt_1"), keep("alpha_gt_minus2"), keep("log_canonical"));
    for r in all["results"].as_array().unwrap() {
        let g = r["graph"].as_str().unwrap();
        let beta = parse_rational(r["chi_over_e"].as_str().unwrap()).unwrap();
        let alpha = parse_rational(r["alpha"].as_str().unwrap()).unwrap();
        assert_eq!(lt1.contains(g), beta < int(1), "{g}");
        assert_eq!(gt2.contains(g), alpha > int(-2), "{g}");
        assert_eq!(lc.contains(g), alpha >= int(-1), "{g}");
    }
}
