use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use rbx::format::{analytic_json, parse_analytic, parse_ops, parse_word, trunc_json};
use rbx_core::rat::rat;
use rbx_core::{AnalyticOp, Poly, TruncOp};

fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    path.to_string_lossy().into_owned()
}

fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap().trim().to_string()
}

fn rbx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rbx")).args(args).output().unwrap()
}

fn rbx_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rbx"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn fixtures_match_the_library() {
    let op = AnalyticOp::new(rat(2), Poly::x()).unwrap();
    assert_eq!(read_fixture("op_a2_x.json"), analytic_json(&op));
    assert_eq!(read_fixture("trunc_a2_x.json"), trunc_json(&op.to_trunc(4)));
    assert_eq!(read_fixture("identity.json"), trunc_json(&TruncOp::identity(4)));
    assert_eq!(read_fixture("odd_halving.json"), trunc_json(&TruncOp::odd_halving(26)));
}

#[test]
fn verify_exit_codes() {
    let ok = rbx(&["verify", &fixture("op_a2_x.json"), "--lambda", "0", "--degree", "8"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["rota_baxter"], true);

    let bad = rbx(&["verify", &fixture("identity.json"), "--degree", "1"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(json(&bad)["first_failure"], serde_json::json!([0, 0]));

    assert_eq!(rbx(&["verify", &fixture("malformed.json")]).status.code(), Some(2));
    assert_eq!(rbx(&["verify", "/nonexistent/op.json"]).status.code(), Some(2));
    // a failure is reported before the short truncation matters
    assert_eq!(rbx(&["verify", &fixture("identity.json")]).status.code(), Some(1));
    assert_eq!(rbx(&["verify", &fixture("trunc_a2_x.json")]).status.code(), Some(2));
    assert_eq!(rbx(&["verify", &fixture("trunc_a2_x.json"), "--degree", "1"]).status.code(), Some(0));
    assert_eq!(rbx(&["verify", &fixture("odd_halving.json"), "--degree", "12"]).status.code(), Some(0));
}

#[test]
fn canon_recovers_the_point() {
    let out = rbx(&["canon", &fixture("trunc_a2_x.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), r#"{"a":"2","r":"x"}"#);

    let echo = rbx(&["canon", &fixture("op_a2_x.json")]);
    assert_eq!(stdout(&echo), read_fixture("op_a2_x.json"));

    let odd = rbx(&["canon", &fixture("odd_halving.json")]);
    assert_eq!(odd.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&odd.stderr).contains("no multiplier"));
}

#[test]
fn canon_reads_stdin() {
    let out = rbx_stdin(&["canon", "-"], &read_fixture("trunc_a2_x.json"));
    assert_eq!(stdout(&out), r#"{"a":"2","r":"x"}"#);
}

#[test]
fn functional_commands() {
    assert_eq!(stdout(&rbx(&["functional", "eliminate", "r=1", "t=1"])), "-1/2*c0^2");
    assert_eq!(stdout(&rbx(&["functional", "system", "r=1", "n=0", "m=0"])), "c0^2 + 2*c1");
    assert_eq!(stdout(&rbx(&["functional", "system", "r=x", "n=0", "m=0"])), "c0^2 + c2");
    assert_eq!(stdout(&rbx(&["functional", "reduce", "r=1", "n=3", "m=2"])), "0");

    let check = rbx(&["functional", "check", "r=x", "--budget", "6"]);
    assert_eq!(check.status.code(), Some(0));
    assert_eq!(json(&check)["consistent"], true);

    let on = rbx(&["functional", "check", "r=x", "head=-1/2,-1/3"]);
    assert_eq!(json(&on), serde_json::json!({"member_Mr": true, "a": "1"}));
    let off = rbx(&["functional", "check", "r=x", "head=-1/2,0"]);
    assert_eq!(json(&off), serde_json::json!({"member_Mr": false, "a": null}));

    assert_eq!(rbx(&["functional", "eliminate", "r=x", "t=1"]).status.code(), Some(2));
    assert_eq!(rbx(&["functional", "system", "r=0", "n=0", "m=0"]).status.code(), Some(2));
    assert_eq!(rbx(&["functional", "system", "r=1", "n=0"]).status.code(), Some(2));
    assert_eq!(rbx(&["functional", "check", "r=x", "head=1"]).status.code(), Some(2));
}

#[test]
fn act_round_trips() {
    let op = fixture("op_a0_one.json");
    assert_eq!(
        stdout(&rbx(&["act", "--word", &fixture("word_empty.json"), "--op", &op])),
        read_fixture("op_a0_one.json")
    );

    let moved = rbx(&["act", "--word", &fixture("word_hb.json"), "--op", &op]);
    assert_eq!(stdout(&moved), r#"{"a":"0","r":"x"}"#);
    let back = rbx_stdin(&["act", "--word", &fixture("word_hb_inverse.json"), "--op", "-"], &stdout(&moved));
    assert_eq!(stdout(&back), read_fixture("op_a0_one.json"));

    let tuple = rbx(&["act", "--word", &fixture("word_empty.json"), "--op", &fixture("tuple_distinct_src.json")]);
    assert_eq!(stdout(&tuple), read_fixture("tuple_distinct_src.json"));

    let affine = rbx(&["act", "--word", &fixture("word_affine.json"), "--op", &fixture("op_a2_x.json")]);
    assert_eq!(stdout(&affine), r#"{"a":"0","r":"2*x + 2"}"#);
}

fn transit_and_replay(src: &str, dst: &str, mode: &str) -> usize {
    let out = rbx(&["transit", "--src", &fixture(src), "--dst", &fixture(dst), "--mode", mode]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = json(&out);
    assert_eq!(report["verified"], true);
    let word_text = report["word"].to_string();
    let word = parse_word(&word_text).unwrap();
    assert_eq!(report["word_length"], word.len());

    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(word_text.as_bytes()).unwrap();
    let replay = rbx(&["act", "--word", file.path().to_str().unwrap(), "--op", &fixture(src)]);
    assert_eq!(parse_ops(&stdout(&replay)).unwrap().0, parse_ops(&read_fixture(dst)).unwrap().0);
    word.len()
}

#[test]
fn transit_modes() {
    assert!(transit_and_replay("op_a0_one.json", "op_a0_x_plus_1.json", "single") <= 3);
    assert!(transit_and_replay("op_a1_x.json", "op_am2_3x2_plus_1.json", "single") <= 3);
    transit_and_replay("tuple_independent_src.json", "tuple_independent_dst.json", "independent");
    transit_and_replay("tuple_distinct_src.json", "tuple_distinct_dst.json", "distinct");

    let dependent = rbx(&[
        "transit",
        "--src",
        &fixture("tuple_distinct_src.json"),
        "--dst",
        &fixture("tuple_distinct_dst.json"),
        "--mode",
        "independent",
    ]);
    assert_eq!(dependent.status.code(), Some(1));
    let two_ops = rbx(&["transit", "--src", &fixture("tuple_distinct_src.json"), "--dst", &fixture("op_a0_x.json")]);
    assert_eq!(two_ops.status.code(), Some(2));
}

#[test]
fn orbit_commands() {
    let hit = rbx(&["orbit", "--aut", &fixture("op_a0_x.json"), &fixture("op_a1_2x_minus_2.json")]);
    assert_eq!(hit.status.code(), Some(0));
    let word = parse_word(&json(&hit)["word"].to_string()).unwrap();
    let target = parse_analytic(&read_fixture("op_a1_2x_minus_2.json")).unwrap();
    assert_eq!(word.apply(&parse_analytic(&read_fixture("op_a0_x.json")).unwrap()), target);

    let miss = rbx(&["orbit", "--aut", &fixture("op_a0_x.json"), &fixture("op_a0_x2.json")]);
    assert_eq!(miss.status.code(), Some(1));
    assert_eq!(stdout(&miss), "NotInOrbit");

    let chart = rbx(&["orbit", "--chart", "1", &fixture("op_a2_x.json")]);
    assert_eq!(json(&chart), serde_json::json!({"a": "2", "r_b": "1"}));
    assert_eq!(rbx(&["orbit", "--chart", "0", &fixture("op_a2_x.json")]).status.code(), Some(1));
    assert_eq!(rbx(&["orbit"]).status.code(), Some(2));
}

#[test]
fn selftest_is_deterministic() {
    let first = rbx(&["selftest", "--seed", "11"]);
    let second = rbx(&["selftest", "--seed", "11"]);
    assert_eq!(first.status.code(), Some(0), "{}", stdout(&first));
    // timings differ between runs; everything after them must not
    let strip = |o: &Output| -> Vec<String> {
        stdout(o).lines().map(|l| l.split_once("budget").map_or(l, |(_, rest)| rest).to_string()).collect()
    };
    assert_eq!(strip(&first), strip(&second));
}
