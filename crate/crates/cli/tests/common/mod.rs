#![allow(dead_code)]

use std::path::PathBuf;

/// Golden outputs: file name and the arguments that produce it.
pub const GOLDEN: &[(&str, &[&str])] = &[
    (
        "opposite_intersection.json",
        &["--prime", "2147483647", "--seed", "0", "check", "--method", "all", "0,1,3,3/4x5 ; 3,3,3,5/4x5"],
    ),
    ("first_witness.json", &["--prime", "2147483647", "--seed", "0", "witness", "0,3,3/3x4 ; 1,3,3/3x4"]),
    (
        "second_witness.json",
        &["--prime", "2147483647", "--seed", "0", "witness", "0,2,3,3,3,4/6x4 ; 1,1,3,3,3,3/6x4"],
    ),
];

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Runs the command line in-process; returns (status, stdout, stderr).
pub fn run(args: &[&str]) -> (u8, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("hornkit").chain(args.iter().copied());
    let code = hornkit_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}
