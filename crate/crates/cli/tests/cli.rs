mod common;

use std::process::Command;

use common::{golden_path, run, GOLDEN};
use hornkit::horn::{HornInequality, Verdict};
use hornkit::parse::parse_classes;
use hornkit::witness::{verify_witness, WitnessTrace};
use hornkit_cli::{EXIT_FAILURE, EXIT_NONZERO, EXIT_USAGE, EXIT_ZERO};

#[test]
fn check_exit_codes() {
    let (code, out, _) = run(&["check", "--method", "all", "0,1,3,3/4x5 ; 3,3,3,5/4x5"]);
    assert_eq!(code, EXIT_ZERO);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["agree"], true);
    assert_eq!(report["verdicts"].as_array().unwrap().len(), 3);

    // the identity class times itself
    assert_eq!(run(&["check", "2,2/2x2 ; 2,2/2x2"]).0, EXIT_NONZERO);
    // two point classes do not meet
    assert_eq!(run(&["check", "--method", "all", "0,0/2x2 ; 0,0/2x2"]).0, EXIT_ZERO);
    assert_eq!(run(&["check", "--method", "all", "0,1/2x2 ; 1,2/2x2"]).0, EXIT_NONZERO);
}

#[test]
fn check_reports_the_violated_inequality() {
    let (code, out, _) = run(&["check", "--method", "horn", "0,3,3/3x4 ; 1,3,3/3x4"]);
    assert_eq!(code, EXIT_ZERO);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    let verdict: Verdict = serde_json::from_value(report["verdicts"][0].clone()).unwrap();
    let viol = verdict.violated.unwrap();
    assert!(viol.slack < 0);
    let ls = parse_classes("0,3,3/3x4 ; 1,3,3/3x4").unwrap();
    assert_eq!(viol.inequality.evaluate(&ls).unwrap(), viol.slack);
}

#[test]
fn text_output() {
    let (code, out, _) = run(&["--format", "text", "check", "0,3,3/3x4;1,3,3/3x4"]);
    assert_eq!(code, EXIT_ZERO);
    assert_eq!(
        out,
        "classes 0,3,3/3x4 ; 1,3,3/3x4 in Gr(3,7)\nhorn-recursion: zero; violated λ1_1 + λ2_3 >= 4 (slack -1)\n"
    );
}

#[test]
fn parse_errors() {
    let (code, out, err) = run(&["check", "0,1,a/3x5"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.is_empty());
    assert_eq!(err, "error: parse error at byte 4: expected a number\n  0,1,a/3x5\n      ^\n");
    assert_eq!(run(&["check", "0,1/2x2 ; 0,0,0/3x2"]).0, EXIT_USAGE);
    assert_eq!(run(&["diagram", "0122", "--shape", "2,1,4"]).0, EXIT_USAGE);
    assert_eq!(run(&["--prime", "1000", "check", "0,1/2x2"]).0, EXIT_USAGE);
    assert_eq!(run(&["--trials", "0", "check", "0,1/2x2"]).0, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
}

#[test]
fn inequality_listings() {
    let (code, out, _) = run(&["inequalities", "1", "2", "2"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 1);
    let h: HornInequality = serde_json::from_str(lines[0]).unwrap();
    assert_eq!((h.d, h.rhs, h.indices.clone()), (1, 1, vec![vec![1], vec![1]]));

    let parse = |out: &str| -> Vec<HornInequality> {
        out.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
    };
    let first = parse(&run(&["inequalities", "3", "7", "2"]).1);
    assert!(first.iter().any(|h| h.indices == vec![vec![1, 3], vec![1, 3]] && h.rhs == 8));
    let second = parse(&run(&["inequalities", "6", "10", "2"]).1);
    assert!(second.iter().any(|h| h.indices == vec![vec![1, 5], vec![2, 6]] && h.rhs == 8));

    let limited = parse(&run(&["inequalities", "6", "10", "2", "--limit", "4"]).1);
    assert_eq!(limited, second[..4]);
    assert_eq!(run(&["inequalities", "3", "3", "2"]).0, EXIT_USAGE);
}

#[test]
fn witness_traces_verify() {
    for classes in ["0,3,3/3x4 ; 1,3,3/3x4", "0,2,3,3,3,4/6x4 ; 1,1,3,3,3,3/6x4"] {
        let (code, out, _) = run(&["--seed", "11", "witness", classes]);
        assert_eq!(code, 0);
        let trace: WitnessTrace = serde_json::from_str(&out).unwrap();
        assert!(verify_witness(&trace, &parse_classes(classes).unwrap()));
    }
    let (code, _, err) = run(&["witness", "4,4,4/3x4 ; 4,4,4/3x4"]);
    assert_eq!(code, EXIT_FAILURE);
    assert!(err.contains("not zero"));
}

#[test]
fn witness_diagram_matches_the_printed_tables() {
    let (_, out, _) = run(&["--format", "diagram", "witness", "0,3,3/3x4 ; 1,3,3/3x4"]);
    assert!(out.contains("|  |* |* |\n| +|*+|* |\n| +|*+|* |\n| +| +| +|\n"));
    assert!(out.contains("|* |  |* |\n|*+| +|* |\n|*+| +|* |\n| +| +| +|\n   | +|* |\n"));
    assert!(out.ends_with("violated λ1_1 + λ1_3 + λ2_1 + λ2_3 >= 8 (slack -1)\n"));
}

#[test]
fn diagrams() {
    let (code, out, _) = run(&["--format", "text", "diagram", "021010201", "--shape", "2,5,9"]);
    assert_eq!(code, 0);
    let grid: String = out.lines().take(9).collect::<Vec<_>>().join("\n");
    assert_eq!(grid.matches('*').count(), 13);
    assert!(out.contains("σ(02) = 1,3/2x4\n* *\n0 *\n0 *\n0 0\n"));

    let (_, out, _) = run(&["--format", "text", "diagram", "0,1,3,3/4x5"]);
    assert_eq!(out, "0 * * *\n0 0 * *\n0 0 * *\n0 0 0 0\n0 0 0 0\n");

    let (_, out, _) = run(&["diagram", "0,0/2x2"]);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["dimension"], 0);
    assert!(!out.contains('*'));
}

#[test]
fn seed_from_environment() {
    let bin = env!("CARGO_BIN_EXE_hornkit");
    let args = ["check", "--method", "numeric", "0,1,3,3/4x5 ; 3,3,3,5/4x5"];
    let with_env = Command::new(bin).env("HORNKIT_SEED", "42").args(args).output().unwrap();
    let with_flag = Command::new(bin).env_remove("HORNKIT_SEED").arg("--seed").arg("42").args(args).output().unwrap();
    assert_eq!(with_env.stdout, with_flag.stdout);
    let report: serde_json::Value = serde_json::from_slice(&with_env.stdout).unwrap();
    assert_eq!(report["seed"], 42);
    assert_eq!(with_env.status.code(), Some(EXIT_ZERO as i32));
}

#[test]
fn golden_files_are_reproduced_by_the_binary() {
    let bin = env!("CARGO_BIN_EXE_hornkit");
    for (name, args) in GOLDEN {
        let expected = std::fs::read(golden_path(name)).unwrap();
        for _ in 0..2 {
            let output = Command::new(bin).env_remove("HORNKIT_SEED").args(*args).output().unwrap();
            assert_eq!(output.stdout, expected, "{name}");
        }
    }
}
