//! ASCII pictures of tangent patterns.
//!
//! * a single pattern prints one row per line, cells `*` (free) or `0`;
//! * a two-step pattern prints the whole `n × n` matrix, with `.` outside
//!   `g/p`;
//! * an overlay prints several patterns in one grid, one character slot per
//!   operand inside each `|`-separated cell. Operands 2, 4, … are rotated by
//!   180° within each block, which is how a pattern looks against the
//!   opposite flag.

use std::fmt::Write;

use crate::horn::HornInequality;
use crate::strings::Partition;
use crate::tangent::{blocks_of, hat_x, PatternSpace, TwoStepModel};
use crate::witness::WitnessTrace;

/// Symbols for the operands of an overlay, cycled if there are more.
pub const SYMBOLS: &[u8] = b"*+ox#@%&";

fn symbol(i: usize) -> char {
    SYMBOLS[i % SYMBOLS.len()] as char
}

pub fn pattern_grid(p: &PatternSpace) -> String {
    let mut out = String::new();
    for i in 0..p.rows() {
        let row: Vec<&str> = (0..p.cols()).map(|j| if p.is_free(i, j) { "*" } else { "0" }).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn two_step_grid(y: &TwoStepModel) -> String {
    let n = y.shape().n;
    let mut out = String::new();
    for j in 0..n {
        let row: Vec<&str> = (0..n)
            .map(|k| match (y.shape().coordinate(j, k), y.is_free(j, k)) {
                (None, _) => ".",
                (Some(_), true) => "*",
                (Some(_), false) => "0",
            })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Whether operand `i` is free at `(row, col)` of its block, after rotating
/// the even-numbered operands.
fn shown_free(p: &PatternSpace, operand: usize, row: usize, col: usize) -> bool {
    if operand % 2 == 1 {
        p.is_free(p.rows() - 1 - row, p.cols() - 1 - col)
    } else {
        p.is_free(row, col)
    }
}

fn cell(blocks: &[&PatternSpace], row: usize, col: usize) -> String {
    blocks
        .iter()
        .enumerate()
        .map(|(i, b)| if shown_free(b, i, row, col) { symbol(i) } else { ' ' })
        .collect()
}

/// Overlay of patterns of one common shape.
pub fn overlay(patterns: &[PatternSpace]) -> String {
    let Some(first) = patterns.first() else {
        return String::new();
    };
    let refs: Vec<&PatternSpace> = patterns.iter().collect();
    let mut out = String::new();
    for i in 0..first.rows() {
        for j in 0..first.cols() {
            out.push('|');
            out.push_str(&cell(&refs, i, j));
        }
        out.push_str("|\n");
    }
    out
}

/// Overlay of lifted classes. Rows are `Q` then `V/S`; columns are `V/S`
/// then `S`; the `V/S × V/S` corner is left blank.
pub fn lifted_overlay(lifts: &[TwoStepModel]) -> String {
    let Some(first) = lifts.first() else {
        return String::new();
    };
    let blocks: Vec<[PatternSpace; 3]> = lifts.iter().map(blocks_of).collect();
    let pick = |k: usize| blocks.iter().map(|b| &b[k]).collect::<Vec<_>>();
    let (upper_left, upper_right, lower_right) = (pick(0), pick(1), pick(2));
    let shape = first.shape();
    let (q, m, d) = (shape.n - shape.r, shape.r - shape.d, shape.d);
    let s = lifts.len();
    let blank = " ".repeat(s);
    let mut out = String::new();
    for i in 0..q + m {
        for j in 0..m + d {
            let text = match (i < q, j < m) {
                (true, true) => cell(&upper_left, i, j),
                (true, false) => cell(&upper_right, i, j - m),
                (false, false) => cell(&lower_right, i - q, j - m),
                (false, true) => {
                    out.push(' ');
                    out.push_str(&blank);
                    continue;
                }
            };
            out.push('|');
            out.push_str(&text);
        }
        out.push_str("|\n");
    }
    out
}

/// Text form of an inequality, e.g. `λ1_1 + λ1_3 + λ2_1 + λ2_3 >= 8`.
pub fn inequality_text(h: &HornInequality) -> String {
    let terms: Vec<String> = h
        .indices
        .iter()
        .enumerate()
        .flat_map(|(i, idx)| idx.iter().map(move |k| format!("λ{}_{}", i + 1, k)))
        .collect();
    format!("{} >= {}", terms.join(" + "), h.rhs)
}

/// One block of output per level of a witness trace.
pub fn witness_diagram(trace: &WitnessTrace) -> String {
    let mut out = String::new();
    for (k, level) in trace.levels.iter().enumerate() {
        let _ = writeln!(
            out,
            "level {}: Gr({},{}) rank {} nullity {}",
            k + 1,
            level.r,
            level.n,
            level.rank,
            level.nullity
        );
        let classes: Vec<String> = level.classes.iter().map(Partition::to_string).collect();
        let _ = writeln!(out, "classes {}", classes.join(" ; "));
        out.push_str(&overlay(&level.classes.iter().map(hat_x).collect::<Vec<_>>()));
        if level.is_terminal() {
            out.push_str("phi = 0\n");
            continue;
        }
        let words = |v: &[crate::strings::StepString]| {
            v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
        };
        let _ = writeln!(out, "kernel positions {}", words(&level.kernel_positions));
        let _ = writeln!(out, "lifted {}", words(&level.lifted));
        let d = level.nullity;
        let models: Option<Vec<TwoStepModel>> = level
            .lifted
            .iter()
            .map(|sigma| crate::tangent::hat_y(sigma, d, level.r, level.n).ok())
            .collect();
        if let Some(models) = models {
            out.push_str(&lifted_overlay(&models));
        }
    }
    let words: Vec<String> = trace.certificates.iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "certificates {}", words.join(" "));
    let _ = writeln!(out, "violated {} (slack {})", inequality_text(&trace.final_inequality), trace.slack);
    out
}
