use std::process::{Command, Output};

use proptest::prelude::*;
use tracegate_cli::commands::{cmd_analyze, GlobalOpts};
use tracegate_cli::error::{EXIT_BUDGET, EXIT_INPUT, EXIT_OK, EXIT_VIOLATION};
use tracegate_cli::{field_report, parse_polynomial, FieldReportJson};
use tracegate_core::{analyze, IntPolynomial, NumberField};

fn tracegate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tracegate")).args(args).output().expect("binary runs")
}

fn corpus(name: &str) -> String {
    format!("{}/corpus/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_sextic_json() {
    let o = tracegate(&["--json", "analyze", "x^6+x^4+5x^2+1"]);
    assert_eq!(code(&o), EXIT_OK);
    let r: FieldReportJson = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.disc.value, "-173056");
    assert_eq!(r.disc.factored, "2^10 * 13^2");
    assert_eq!(r.t_l, "1");
    assert_eq!(r.e_patterns("2"), Some(vec![(1, 2), (4, 1)]));
    assert!(!r.flags.a && r.flags.b && r.flags.c);
}

#[test]
fn analyze_small_fields() {
    let r: FieldReportJson = serde_json::from_str(&stdout(&tracegate(&["--json", "analyze", "x^2+1"]))).unwrap();
    assert_eq!(r.t_l, "2");
    assert!(r.flags.a && r.flags.b && r.flags.c);
    let r: FieldReportJson = serde_json::from_str(&stdout(&tracegate(&["--json", "analyze", "[-1,-1,0,1]"]))).unwrap();
    assert_eq!((r.t_l.as_str(), r.disc.value.as_str(), r.tame), ("1", "-23", true));
    assert!(stdout(&tracegate(&["analyze", "x^3-x-1"])).contains("disc(L)    -23"));
}

#[test]
fn exit_code_contract() {
    assert_eq!(code(&tracegate(&["analyze", "x^2+y"])), EXIT_INPUT);
    assert_eq!(code(&tracegate(&["analyze", "2x^2+1"])), EXIT_INPUT);
    assert_eq!(code(&tracegate(&["--allow-nonmonic", "analyze", "2x^2+1"])), EXIT_INPUT);
    assert_eq!(code(&tracegate(&["analyze", "x^2-1"])), EXIT_INPUT);
    assert_eq!(code(&tracegate(&["multiquadratic", "-m", "6,10"])), EXIT_INPUT);
    assert_eq!(code(&tracegate(&["verify-paper", "--poly", "x^6+x^4+5x^2+3"])), EXIT_VIOLATION);
    let budget = Command::new(env!("CARGO_BIN_EXE_tracegate"))
        .args(["analyze", "x^6+x^4+5x^2+1"])
        .env("TRACEGATE_BUDGET_MS", "0")
        .output()
        .unwrap();
    assert_eq!(code(&budget), EXIT_BUDGET);
}

#[test]
fn biquadratic_needs_assertion() {
    assert_eq!(code(&tracegate(&["analyze", "x^4-4x^2+1"])), EXIT_INPUT);
    assert_eq!(code(&tracegate(&["--assert-irreducible", "analyze", "x^4-4x^2+1"])), EXIT_OK);
}

#[test]
fn verify_checklist() {
    let o = tracegate(&["verify-paper"]);
    assert_eq!(code(&o), EXIT_OK);
    assert_eq!(stdout(&o).matches("PASS").count(), 5);
    let json: serde_json::Value = serde_json::from_str(&stdout(&tracegate(&["--json", "verify-paper"]))).unwrap();
    assert_eq!(json["items"].as_array().unwrap().len(), 5);
    let bad = stdout(&tracegate(&["verify-paper", "--poly", "x^6+x^4+5x^2+3"]));
    assert!(bad.contains("FAIL beta integral"));
}

#[test]
fn compositum_and_multiquadratic() {
    let o = stdout(&tracegate(&["compositum", "x^2-x-1", "x^3-x-1"]));
    assert!(o.contains("degree 6") && o.contains("trace 1"));
    let o = stdout(&tracegate(&["multiquadratic", "-m", "5,13"]));
    assert!(o.contains("(1+√5)(1+√13)/4") && o.contains("trace 1"));
    let o = tracegate(&["compositum", "--mode", "plain", "x^2-x-1", "x^2-x-1"]);
    assert_eq!(code(&o), EXIT_INPUT);
    let o = tracegate(&["compositum", "--mode", "normal", "x^2-x-1", "x^2-x-3"]);
    assert_eq!(code(&o), EXIT_OK);
}

#[test]
fn decompose_and_different() {
    let o = tracegate(&["--json", "decompose", "x^6+x^4+5x^2+1", "-p", "13"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ef: Vec<(u64, u64)> =
        v["primes"].as_array().unwrap().iter().map(|q| (q["e"].as_u64().unwrap(), q["f"].as_u64().unwrap())).collect();
    assert_eq!(ef, [(1, 1), (1, 1), (2, 2)]);
    assert_eq!(code(&tracegate(&["decompose", "x^2+1", "-p", "4"])), EXIT_INPUT);
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&tracegate(&["--json", "different", "x^6+x^4+5x^2+1"]))).unwrap();
    assert_eq!(v["norm_different"], "173056");
    let v: serde_json::Value = serde_json::from_str(&stdout(&tracegate(&["--json", "trace-index", "x^2+1"]))).unwrap();
    assert_eq!(v["t_l"], "2");
}

#[test]
fn corpus_runs_are_deterministic() {
    let path = corpus("fields.txt");
    let serial = tracegate(&["--json", "corpus", "run", &path]);
    let parallel = tracegate(&["--json", "--parallel", "4", "corpus", "run", &path]);
    assert_eq!(code(&serial), EXIT_OK);
    assert_eq!(serial.stdout, parallel.stdout);
    let o = tracegate(&["corpus", "run", &corpus("quadratics.txt"), "--thm2"]);
    assert_eq!(code(&o), EXIT_OK);
    assert!(stdout(&o).ends_with("total 242 passed 242 failed 0\n"));
    let o = tracegate(&["corpus", "run", &corpus("compositions.txt"), "--thm3"]);
    assert_eq!(code(&o), EXIT_OK);
}

#[test]
fn corpus_negative_controls() {
    let dir = std::env::temp_dir().join(format!("tracegate-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let wrong = dir.join("wrong.txt");
    std::fs::write(&wrong, "q5: [-1,-1,1] expect t=2\n").unwrap();
    assert_eq!(code(&tracegate(&["corpus", "run", wrong.to_str().unwrap()])), EXIT_VIOLATION);
    let malformed = dir.join("malformed.txt");
    std::fs::write(&malformed, "# ok\nq5: [-1,-1,1]\nbroken line\n").unwrap();
    let o = tracegate(&["corpus", "run", malformed.to_str().unwrap()]);
    assert_eq!(code(&o), EXIT_INPUT);
    assert!(String::from_utf8(o.stderr).unwrap().contains("line 3"));
    std::fs::remove_dir_all(&dir).unwrap();
}

fn cubic() -> impl Strategy<Value = (i64, i64)> {
    (-6i64..=6, -6i64..=6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn reports_round_trip((a, b) in cubic()) {
        let Ok(field) = NumberField::new(IntPolynomial::from_i64(&[b, a, 0, 1])) else { return Ok(()) };
        let report = field_report(&analyze(&field).unwrap());
        let text = serde_json::to_string(&report).unwrap();
        let back: FieldReportJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, report);
    }

    #[test]
    fn expression_and_list_forms_agree(coeffs in prop::collection::vec(-50i64..50, 1..7)) {
        let mut c = coeffs;
        c.push(1);
        let list = format!("[{}]", c.iter().map(i64::to_string).collect::<Vec<_>>().join(","));
        let expr = IntPolynomial::from_i64(&c).to_string();
        prop_assert_eq!(parse_polynomial(&list, false).unwrap(), parse_polynomial(&expr, false).unwrap());
    }

    #[test]
    fn garbage_is_an_input_error(text in "[a-wyz#@!(){}]{1,12}") {
        let err = cmd_analyze(&text, GlobalOpts::default()).unwrap_err();
        prop_assert_eq!(err.exit_code(), EXIT_INPUT);
    }

    #[test]
    fn reducible_input_is_an_input_error(r in -9i64..9, a in -5i64..5) {
        // (x - r)(x^2 + a)
        let poly = format!("[{},{},{},1]", -r * a, a, -r);
        let err = cmd_analyze(&poly, GlobalOpts::default()).unwrap_err();
        prop_assert_eq!(err.exit_code(), EXIT_INPUT);
    }
}
