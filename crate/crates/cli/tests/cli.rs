use std::io::Write;
use std::process::{Command, Output, Stdio};

use seifert_core::PoincarePolynomial;
use serde_json::Value;

const E6: &str = r#"{"b0":2,"legs":[[2,1],[3,2],[3,2]]}"#;
const SIX_LEGS: &str = r#"{"b0":2,"legs":[[2,1],[2,1],[3,1],[3,1],[7,1],[7,1]]}"#;
const FOUR_LEGS: &str = r#"{"b0":2,"legs":[[2,1],[3,1],[4,1],[5,4]]}"#;

fn seifert(args: &[&str], stdin: &str) -> Output {
    seifert_env(args, stdin, &[])
}

fn seifert_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_seifert"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn with_command(job: &str, command: &str) -> String {
    format!("{},\"command\":\"{command}\"}}", &job[..job.len() - 1])
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn embdim_on_e6() {
    let v = json(&seifert(&["embdim"], E6));
    assert_eq!(v["embdim_generic"], 3);
    assert_eq!(v["P_mX_generic"], serde_json::json!([[3, 1], [4, 1], [6, 1]]));
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        &keys[..15],
        [
            "seifert", "e", "alpha", "o", "gamma", "H_order", "p_g", "P_GX", "P_H1", "P_m", "P_mX_generic",
            "embdim_generic", "degrees", "jump_strata", "flags"
        ]
    );
}

#[test]
fn analyze_reports_the_discriminant() {
    let out = seifert(&["analyze"], SIX_LEGS);
    let text = String::from_utf8_lossy(&out.stdout).replace([' ', '\n'], "");
    assert!(text.contains(r#""jump_strata":[{"discriminant":"p1*p2-p3*p4""#), "{text}");
    let v = json(&out);
    assert_eq!(v["jump_strata"][0]["embdim"], 4);
    assert_eq!(v["jump_strata"][0]["degrees"], serde_json::json!([42]));
}

#[test]
fn hilbert_with_lmax_zero() {
    let v = json(&seifert(&["hilbert", "--lmax", "0"], FOUR_LEGS));
    assert_eq!(v["P_GX"], serde_json::json!([[0, 1]]));
    let pretty = seifert(&["hilbert", "--lmax", "0", "--format", "pretty"], FOUR_LEGS);
    assert!(String::from_utf8_lossy(&pretty.stdout).lines().any(|l| l == "P_GX: 1"));
}

#[test]
fn invariants_of_the_four_leg_example() {
    let v = json(&seifert(&["invariants"], FOUR_LEGS));
    assert_eq!(v["e"], "-7/60");
    assert_eq!(v["gamma"], "43/7");
    assert_eq!(v["H_order"], 14);
    assert_eq!(v["p_a"], 1);
    assert_eq!(v["p_g"], 1);
    assert_eq!(v["graph"]["central"], 0);
    assert_eq!(v["Z_K"][0], "50/7");
}

#[test]
fn toml_input_from_a_file() {
    let dir = std::env::temp_dir().join(format!("seifert-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("e6.toml");
    std::fs::write(&path, "b0 = 2\nlegs = [[2, 1], [3, 2], [3, 2]]\n").unwrap();
    let v = json(&seifert(&["embdim", path.to_str().unwrap()], ""));
    assert_eq!(v["embdim_generic"], 3);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(seifert(&["embdim"], r#"{"b0":1,"legs":[[2,1],[2,1]]}"#).status.code(), Some(2));
    let out = seifert(&["embdim"], r#"{"b0":1,"legs":[[2,1],[2,1],[2,1]]}"#);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("e = 1/2"));
    let out = seifert(&["embdim"], "{\"b0\":1,\n\"legs\":[[2,1],");
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(seifert(&["frobnicate"], E6).status.code(), Some(1));
    assert_eq!(seifert(&["embdim", "--params", "p3=1,p4=1,p5=2,p6=3"], SIX_LEGS).status.code(), Some(2));
    assert_eq!(seifert(&["embdim", "/nonexistent/input.json"], "").status.code(), Some(1));
}

#[test]
fn explicit_params_on_the_locus() {
    let v = json(&seifert(&["embdim", "--params", "p3=1,p4=6,p5=2,p6=3"], SIX_LEGS));
    assert_eq!(v["embdim_generic"], 3);
    assert_eq!(v["at_params"]["embdim"], 4);
    assert_eq!(v["at_params"]["params"]["p6"], "3");
    let v = json(&seifert(&["embdim", "--params", "p3=1,p4=5,p5=2,p6=3"], SIX_LEGS));
    assert_eq!(v["at_params"]["embdim"], 3);
}

#[test]
fn check_agrees_on_fixtures() {
    for input in [E6, FOUR_LEGS, SIX_LEGS] {
        let v = json(&seifert(&["check"], input));
        assert_eq!(v["pass"], true, "{v}");
        assert_eq!(v["mismatches"], 0);
    }
    let v = json(&seifert(&["check", "--params", "p3=1,p4=6,p5=2,p6=3", "--lmax", "42"], SIX_LEGS));
    assert_eq!(v["checked_up_to"], 42);
    assert_eq!(v["pass"], true);
}

#[test]
fn batch_keeps_input_order() {
    let lines = [
        FOUR_LEGS.to_string(),
        r#"{"b0":1,"legs":[[2,1],[2,1]]}"#.to_string(),
        with_command(E6, "invariants"),
        String::new(),
        with_command(SIX_LEGS, "analyze"),
    ];
    let input = lines.join("\n");
    for threads in ["1", "4"] {
        let out = seifert(&["batch", "--threads", threads], &input);
        assert_eq!(out.status.code(), Some(2));
        let rows: Vec<Value> = String::from_utf8_lossy(&out.stdout)
            .lines()
            .map(|l| serde_json::from_str(l).unwrap())
            .collect();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0]["embdim_generic"], 7);
        assert_eq!(rows[1]["line"], 2);
        assert_eq!(rows[1]["exit_code"], 2);
        assert_eq!(rows[2]["H_order"], 3);
        assert_eq!(rows[3]["jump_strata"][0]["discriminant"], "p1*p2-p3*p4");
    }
}

#[test]
fn thread_count_from_the_environment() {
    let a = seifert_env(&["analyze"], FOUR_LEGS, &[("SEIFERT_THREADS", "1")]);
    let b = seifert_env(&["analyze", "--threads", "3"], FOUR_LEGS, &[("SEIFERT_THREADS", "2")]);
    assert_eq!(json(&a), json(&b));
    assert_eq!(a.stdout, b.stdout);
    let bad = seifert_env(&["analyze"], FOUR_LEGS, &[("SEIFERT_THREADS", "many")]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn pretty_polynomials_round_trip() {
    for input in [E6, FOUR_LEGS, SIX_LEGS] {
        let v = json(&seifert(&["embdim"], input));
        let out = seifert(&["embdim", "--format", "pretty"], input);
        let text = String::from_utf8_lossy(&out.stdout).to_string();
        let mut seen = 0;
        for line in text.lines().filter(|l| !l.starts_with(' ')) {
            let Some((key, value)) = line.split_once(": ") else { continue };
            if !key.starts_with("P_") {
                continue;
            }
            let parsed: PoincarePolynomial = value.parse().unwrap();
            let from_json: PoincarePolynomial = serde_json::from_value(v[key].clone()).unwrap();
            assert_eq!(parsed, from_json, "{key}");
            seen += 1;
        }
        assert_eq!(seen, 4, "{text}");
    }
}
