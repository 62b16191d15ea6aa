//! End-to-end tests of the binary: output shapes, golden values, exit
//! codes, and byte-for-byte determinism.

use halfangle::parse_rational;
use num_bigint::BigInt;
use num_traits::One;
use serde_json::Value;
use std::process::Command;

fn run(args: &[&str]) -> (String, String, Option<i32>) {
    let out = Command::new(env!("CARGO_BIN_EXE_halfangle"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("stdout is utf-8"),
        String::from_utf8(out.stderr).expect("stderr is utf-8"),
        out.status.code(),
    )
}

const DECAY_HEADER: &str =
    "n,half_angle,sin_lo,sin_hi,product_lo,product_hi,intermediate_bound,final_bound,chain_holds";

#[test]
fn help_lists_every_subcommand() {
    let (stdout, _, code) = run(&["--help"]);
    assert_eq!(code, Some(0));
    for sub in ["eval", "decay-table", "chord", "verify"] {
        assert!(stdout.contains(sub), "help is missing {sub}");
    }
}

#[test]
fn eval_json_has_the_documented_shape() {
    let (stdout, _, code) = run(&["eval", "--theta", "1", "--format", "json"]);
    assert_eq!(code, Some(0));
    let v: Value = serde_json::from_str(&stdout).expect("valid json");
    assert_eq!(v["angle"]["input"], "1");
    assert_eq!(v["angle"]["unit"], "rad");
    assert_eq!(v["metadata"]["bits"], 128);
    assert_eq!(v["metadata"]["depth"], 66);
    assert_eq!(v["metadata"]["working_bits"], 268);
    assert!(v["metadata"]["dyadic_theta"].is_null());
    let lo = parse_rational(v["enclosures"]["sin"]["lo"].as_str().unwrap()).unwrap();
    let hi = parse_rational(v["enclosures"]["sin"]["hi"].as_str().unwrap()).unwrap();
    let sin_one = parse_rational("0.841470984807896506652502321630298999622563").unwrap();
    assert!(lo <= sin_one && sin_one <= hi, "printed sin endpoints left the true value");
    let defect_lo = parse_rational(v["defect"]["lo"].as_str().unwrap()).unwrap();
    let defect_hi = parse_rational(v["defect"]["hi"].as_str().unwrap()).unwrap();
    assert!(defect_lo <= parse_rational("0").unwrap());
    assert!(defect_hi >= parse_rational("0").unwrap());
}

#[test]
fn eval_in_degrees_reports_the_dyadic_stand_in() {
    let (stdout, _, code) = run(&[
        "eval", "--theta", "30", "--unit", "deg", "--format", "json", "--digits", "40",
    ]);
    assert_eq!(code, Some(0));
    let v: Value = serde_json::from_str(&stdout).expect("valid json");
    assert_eq!(v["metadata"]["dyadic_theta"]["frac_bits"], 144);
    let mantissa = v["metadata"]["dyadic_theta"]["mantissa"].as_str().unwrap();
    assert!(mantissa.chars().all(|c| c.is_ascii_digit()));
    let lo = parse_rational(v["enclosures"]["sin"]["lo"].as_str().unwrap()).unwrap();
    let hi = parse_rational(v["enclosures"]["sin"]["hi"].as_str().unwrap()).unwrap();
    let half = parse_rational("1/2").unwrap();
    let slack = parse_rational("1e-30").unwrap();
    assert!(&half - &lo <= slack && &hi - &half <= slack, "sin 30 degrees strayed from 1/2");
}

#[test]
fn eval_csv_lists_sin_cos_and_defect() {
    let (stdout, _, code) = run(&["eval", "--theta", "1/2", "--format", "csv"]);
    assert_eq!(code, Some(0));
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "quantity,lo,hi,width");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("sin,"));
    assert!(lines[2].starts_with("cos,"));
    assert!(lines[3].starts_with("defect,"));
}

#[test]
fn decay_csv_header_is_stable() {
    let (stdout, _, code) = run(&["decay-table", "--theta", "1", "--n", "2", "--format", "csv"]);
    assert_eq!(code, Some(0));
    assert_eq!(stdout.lines().next().unwrap(), DECAY_HEADER);
}

#[test]
fn decay_csv_reference_row_carries_exact_bounds() {
    let (stdout, _, code) = run(&[
        "decay-table", "--theta", "1", "--n", "10", "--bits", "128", "--format", "csv",
    ]);
    assert_eq!(code, Some(0));
    let last = stdout.lines().last().unwrap();
    let cells: Vec<&str> = last.split(',').collect();
    assert_eq!(cells[0], "10");
    assert_eq!(cells[1], "1/1024");
    assert_eq!(
        cells[6],
        "8.07793566946316088741610050849573099185363389551639556884765625e-28"
    );
    assert_eq!(
        cells[7],
        "8.2718061255302767487140869206996285356581211090087890625e-25"
    );
    let two = BigInt::from(2u32);
    let intermediate = parse_rational(cells[6]).unwrap();
    let final_bound = parse_rational(cells[7]).unwrap();
    assert_eq!(intermediate, halfangle::Rational::new(BigInt::one(), two.pow(90)));
    assert_eq!(final_bound, halfangle::Rational::new(BigInt::one(), two.pow(80)));
    assert_eq!(cells[8], "true");
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        vec!["eval", "--theta", "1", "--format", "json"],
        vec!["decay-table", "--theta", "3/4", "--n", "6", "--format", "csv"],
        vec!["verify", "--suite", "recursion", "--seed", "9"],
        vec!["chord", "--theta", "1/2", "--n", "8", "--format", "csv"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first, second, "non-deterministic output for {args:?}");
    }
}

#[test]
fn out_of_quadrant_angles_exit_2() {
    let (_, stderr, code) = run(&["eval", "--theta", "8/5"]);
    assert_eq!(code, Some(2));
    assert!(stderr.contains("outside"), "stderr should name the domain problem: {stderr}");
    let (_, _, code) = run(&["decay-table", "--theta", "-1", "--n", "3"]);
    assert_eq!(code, Some(2));
}

#[test]
fn angles_just_inside_the_quadrant_are_accepted() {
    let (_, _, code) = run(&["eval", "--theta", "157/100"]);
    assert_eq!(code, Some(0));
}

#[test]
fn malformed_input_exits_2() {
    let (_, _, code) = run(&["eval", "--theta", "abc"]);
    assert_eq!(code, Some(2));
    let (_, _, code) = run(&["eval", "--theta", "1/0"]);
    assert_eq!(code, Some(2));
    let (_, _, code) = run(&["eval", "--theta", "1", "--bits", "4"]);
    assert_eq!(code, Some(2));
    let (_, _, code) = run(&["eval"]);
    assert_eq!(code, Some(2));
    let (_, _, code) = run(&["eval", "--theta", "1", "--no-such-flag"]);
    assert_eq!(code, Some(2));
}

#[test]
fn verify_all_passes_and_exits_0() {
    let (stdout, _, code) = run(&["verify", "--suite", "all"]);
    assert_eq!(code, Some(0));
    assert!(stdout.contains("all passed"));
    assert!(!stdout.contains("FAIL "));
    let pass_lines = stdout.lines().filter(|l| l.starts_with("PASS ")).count();
    assert!(pass_lines > 60, "expected the full check list, saw {pass_lines} lines");
}

#[test]
fn verify_json_carries_the_check_list() {
    let (stdout, _, code) = run(&["verify", "--suite", "exact", "--format", "json"]);
    assert_eq!(code, Some(0));
    let v: Value = serde_json::from_str(&stdout).expect("valid json");
    assert_eq!(v["suite"], "exact");
    assert_eq!(v["pass"], true);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() > 30);
    assert!(checks.iter().all(|c| c["pass"] == true));
}

#[test]
fn chord_csv_leaves_the_first_growth_cell_empty() {
    let (stdout, _, code) = run(&["chord", "--theta", "1", "--n", "3", "--format", "csv"]);
    assert_eq!(code, Some(0));
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "n,half_angle,scaled_lo,scaled_hi,below_arc,increased");
    assert!(lines[1].starts_with("0,1,"));
    assert!(lines[1].ends_with(",true,"), "first row should have no growth flag: {}", lines[1]);
    for line in &lines[2..] {
        assert!(line.ends_with(",true,true"), "later rows certify growth: {line}");
    }
}

#[test]
fn closing_the_output_pipe_early_is_not_an_error() {
    use std::io::Read;
    use std::process::Stdio;
    let args = [
        "decay-table", "--theta", "1", "--n", "64", "--digits", "120", "--format", "json",
    ];
    let (full, _, code) = run(&args);
    assert_eq!(code, Some(0));
    assert!(
        full.len() > 65536,
        "output must exceed the pipe buffer for the early close to matter, got {} bytes",
        full.len()
    );
    let mut child = Command::new(env!("CARGO_BIN_EXE_halfangle"))
        .args(args)
        .stdout(Stdio::piped())
        .spawn()
        .expect("binary starts");
    let mut stdout = child.stdout.take().expect("stdout is piped");
    let mut prefix = [0u8; 64];
    stdout.read_exact(&mut prefix).expect("first bytes arrive");
    drop(stdout);
    let status = child.wait().expect("child exits");
    assert_eq!(status.code(), Some(0), "early pipe close must not crash the writer");
}
