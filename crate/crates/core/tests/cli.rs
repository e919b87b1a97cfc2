mod common;

use std::fs;
use std::path::PathBuf;
use std::process::Command as Process;

use common::{fixture, fixture_path, FIXTURES};
use soliton_forge::cli::{run, Command, Format, RunConfig};
use soliton_forge::curvature::RConvention;
use soliton_forge::spec_file::{parse_spec_str, print_spec};

fn config(cmd: Command, spec: &str) -> RunConfig {
    RunConfig::new(cmd, Some(fixture_path(spec)))
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn binary(args: &[&str]) -> std::process::Output {
    Process::new(env!("CARGO_BIN_EXE_soliton-forge"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("spawn soliton-forge")
}

#[test]
fn fixtures_round_trip_through_print() {
    for name in FIXTURES {
        let spec = fixture(name);
        let text = print_spec(&spec);
        let back = parse_spec_str(&text).unwrap();
        assert_eq!(back, spec, "{name}");
        assert_eq!(print_spec(&back), text, "{name}");
    }
}

#[test]
fn structured_report_matches_golden() {
    let mut c = config(Command::Report, "lps_example");
    c.format = Format::Structured;
    let out = run(&c);
    assert_eq!(out.exit, 0);
    let expected = fs::read_to_string(golden("report_lps_example.json")).unwrap();
    assert_eq!(out.output, expected);
}

#[test]
fn binary_output_matches_golden() {
    let cases: [(&[&str], &str); 3] = [
        (&["axioms", "fixtures/lps_example.spec", "--sub", "a=1"], "axioms_lps_example_a1.txt"),
        (&["theorems", "--n", "4"], "theorems_n4.txt"),
        (&["curvature", "fixtures/lps_example.spec"], "curvature_lps_example.txt"),
    ];
    for (args, file) in cases {
        let out = binary(args);
        let expected = fs::read(golden(file)).unwrap();
        assert_eq!(out.stdout, expected, "{args:?} against {file}");
    }
}

#[test]
fn report_is_deterministic() {
    for name in FIXTURES {
        for format in [Format::Text, Format::Structured] {
            let mut c = config(Command::Report, name);
            c.format = format;
            let a = run(&c);
            let b = run(&c);
            assert_eq!(a, b, "{name}");
            assert!(!a.output.is_empty());
        }
    }
}

#[test]
fn exit_codes_follow_verdicts() {
    let cases = [
        (Command::Validate, "lps_example", 0),
        (Command::Connection, "heisenberg3", 0),
        (Command::Curvature, "so3_frame", 0),
        (Command::Axioms, "lps_example", 0),
        (Command::Axioms, "minkowski4", 1),
        (Command::Soliton, "lps_example", 0),
        (Command::Soliton, "minkowski4", 0),
        (Command::Soliton, "heisenberg3", 1),
        (Command::Soliton, "so3_frame", 1),
        (Command::Fluid, "lps_example", 0),
        (Command::Report, "lps_example", 0),
        (Command::Report, "heisenberg3", 1),
    ];
    for (cmd, spec, code) in cases {
        assert_eq!(run(&config(cmd, spec)).exit, code, "{cmd:?} {spec}");
    }
    let mut theorems = RunConfig::new(Command::Theorems, None);
    for n in [3, 4, 5] {
        theorems.n = n;
        assert_eq!(run(&theorems).exit, 0, "theorems n = {n}");
    }
    for conv in [RConvention::Signed, RConvention::Unsigned] {
        let mut c = config(Command::Report, "lps_example");
        c.r_convention = conv;
        assert_eq!(run(&c).exit, 0, "{conv}");
    }
}

#[test]
fn substitution_applies_after_computation() {
    let mut c = config(Command::Axioms, "lps_example");
    c.format = Format::Structured;
    let before: serde_json::Value = serde_json::from_str(&run(&c).output).unwrap();
    c.subs = vec!["a=1".into()];
    let out = run(&c);
    assert_eq!(out.exit, 1);
    let after: serde_json::Value = serde_json::from_str(&out.output).unwrap();
    let find = |v: &serde_json::Value, id: &str| {
        v["axioms"].as_array().unwrap().iter().find(|r| r["id"] == id).unwrap().clone()
    };
    assert_eq!(find(&before, "nabla-xi")["status"], "conditional");
    assert_eq!(find(&after, "nabla-xi")["status"], "holds");
    let killing = find(&after, "killing-xi");
    assert_eq!(killing["status"], "fails");
    for r in killing["residuals"].as_array().unwrap() {
        assert_eq!(r["value"], "2");
    }
    assert_eq!(after["substitutions"]["a"], "1");

    c.subs = vec!["a=-1".into()];
    let minus: serde_json::Value = serde_json::from_str(&run(&c).output).unwrap();
    assert_eq!(find(&minus, "ricci-xi")["status"], "holds");
    assert_eq!(find(&minus, "nabla-xi")["status"], "fails");
}

#[test]
fn input_errors_exit_two() {
    let mut c = config(Command::Axioms, "lps_example");
    c.subs = vec!["nope=1".into()];
    assert_eq!(run(&c).exit, 2);
    c.subs = vec!["a".into()];
    assert_eq!(run(&c).exit, 2);
    c.subs = vec!["a=1+".into()];
    assert_eq!(run(&c).exit, 2);
    c.subs = vec!["a=1".into(), "a=2".into()];
    assert_eq!(run(&c).exit, 2);
    // the fluid expressions carry 2α - 2β in their denominators
    let mut f = config(Command::Fluid, "lps_example");
    f.subs = vec!["alpha=beta".into()];
    assert_eq!(run(&f).exit, 2);

    assert_eq!(run(&RunConfig::new(Command::Curvature, None)).exit, 2);
    assert_eq!(run(&RunConfig::new(Command::Validate, Some("/nonexistent.spec".into()))).exit, 2);

    let dir = std::env::temp_dir().join(format!("soliton-forge-test-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let empty = dir.join("empty.spec");
    fs::write(&empty, "").unwrap();
    let out = run(&RunConfig::new(Command::Validate, Some(empty)));
    assert_eq!(out.exit, 2);
    assert!(out.errors[0].contains("line"), "{:?}", out.errors);

    let text = fs::read_to_string(fixture_path("lps_example")).unwrap();
    let broken = text.replacen("\"coeffs\": [\"a\", \"0\", \"0\", \"0\"]", "\"coeffs\": [\"a\", \"0\", \"0\", \"1\"]", 1);
    assert_ne!(broken, text, "fixture layout changed");
    let bad = dir.join("broken.spec");
    fs::write(&bad, broken).unwrap();
    let validate = run(&RunConfig::new(Command::Validate, Some(bad.clone())));
    assert_eq!(validate.exit, 1);
    assert!(validate.output.contains("FAIL  jacobi"));
    let curvature = run(&RunConfig::new(Command::Curvature, Some(bad)));
    assert_eq!(curvature.exit, 2);
    assert!(curvature.errors[0].contains("jacobi"));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_exit_status_and_out_flag() {
    assert_eq!(binary(&["axioms", "fixtures/lps_example.spec"]).status.code(), Some(0));
    assert_eq!(binary(&["soliton", "fixtures/heisenberg3.spec"]).status.code(), Some(1));
    assert_eq!(binary(&["axioms", "fixtures/lps_example.spec", "--sub", "b=2"]).status.code(), Some(2));
    assert_eq!(binary(&["frobnicate"]).status.code(), Some(2));

    let path = std::env::temp_dir().join(format!("soliton-forge-out-{}.json", std::process::id()));
    let out = binary(&[
        "report",
        "fixtures/so3_frame.spec",
        "--format",
        "structured",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.stdout.is_empty());
    let written: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written["spec"]["name"], "so3_frame");
    assert!(written["spec"]["digest"].as_str().unwrap().starts_with("sha256:"));
    fs::remove_file(path).unwrap();
}
