//! Partitions, step strings, and the combinatorial operators between them.
//!
//! A partition `λ ∈ Λ(r, c)` is stored weakly increasing, `0 ≤ λ_1 ≤ … ≤ λ_r ≤ c`,
//! and indexes a Schubert class on `Gr(r, r + c)` whose cell has dimension `|λ|`.
//! It corresponds to the 01-string of length `r + c` in which the number of
//! '0's strictly before the k-th '1' is `λ_k`.
//!
//! All positions reported by this module are 1-based.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly increasing partition with `rows` parts bounded by `cap`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Partition {
    parts: Vec<usize>,
    cap: usize,
}

impl Partition {
    pub fn new(parts: Vec<usize>, cap: usize) -> Result<Self> {
        if let Some(w) = parts.windows(2).find(|w| w[0] > w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts must be weakly increasing, found {} before {}",
                w[0], w[1]
            )));
        }
        if let Some(&p) = parts.iter().find(|&&p| p > cap) {
            return Err(Error::InvalidPartition(format!("part {p} exceeds cap {cap}")));
        }
        Ok(Partition { parts, cap })
    }

    /// The zero partition: the class of a point.
    pub fn zero(rows: usize, cap: usize) -> Self {
        Partition { parts: vec![0; rows], cap }
    }

    /// The full rectangle: the fundamental class.
    pub fn full(rows: usize, cap: usize) -> Self {
        Partition { parts: vec![cap; rows], cap }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// `n = rows + cap`, the dimension of the ambient space.
    pub fn ambient(&self) -> usize {
        self.parts.len() + self.cap
    }

    /// `|λ|`, the dimension of the Schubert cell.
    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `rows * cap - |λ|`.
    pub fn codim(&self) -> usize {
        self.rows() * self.cap - self.weight()
    }

    /// The part `λ_index` (1-based).
    pub fn part(&self, index: usize) -> Option<usize> {
        index.checked_sub(1).and_then(|i| self.parts.get(i)).copied()
    }

    /// Complementary shape `(c - λ_1 ≥ c - λ_2 ≥ …)` in the usual decreasing
    /// codimension convention, with trailing zeros dropped.
    pub fn codim_shape(&self) -> Vec<usize> {
        let mut shape: Vec<usize> = self.parts.iter().map(|&p| self.cap - p).collect();
        while shape.last() == Some(&0) {
            shape.pop();
        }
        shape
    }

    /// Every partition in `Λ(rows, cap)`, in lexicographic order of parts.
    pub fn all(rows: usize, cap: usize) -> Vec<Partition> {
        fn go(rows: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if cur.len() == rows {
                out.push(Partition { parts: cur.clone(), cap });
                return;
            }
            let lo = cur.last().copied().unwrap_or(0);
            for p in lo..=cap {
                cur.push(p);
                go(rows, cap, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(rows, cap, &mut Vec::with_capacity(rows), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "/{}x{}", self.rows(), self.cap)
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::parse::parse_partition(s)
    }
}

impl TryFrom<String> for Partition {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Partition> for String {
    fn from(p: Partition) -> String {
        p.to_string()
    }
}

/// A word over `{0, …, steps}` indexing a Schubert cell on a `steps`-step
/// flag manifold.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct StepString {
    letters: Vec<u8>,
    steps: u8,
}

impl StepString {
    pub fn new(letters: Vec<u8>, steps: u8) -> Result<Self> {
        if steps == 0 || steps > 9 {
            return Err(Error::InvalidString(format!("step count {steps} outside 1..=9")));
        }
        if let Some(&l) = letters.iter().find(|&&l| l > steps) {
            return Err(Error::InvalidString(format!(
                "letter {l} exceeds step count {steps}"
            )));
        }
        Ok(StepString { letters, steps })
    }

    /// Parses a digit word; the step count is the largest letter present
    /// (at least 1).
    pub fn from_word(word: &str) -> Result<Self> {
        crate::parse::parse_step_string(word)
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn steps(&self) -> u8 {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn count(&self, letter: u8) -> usize {
        self.letters.iter().filter(|&&l| l == letter).count()
    }

    /// Multiplicity of each letter `0..=steps`.
    pub fn counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.steps as usize + 1];
        for &l in &self.letters {
            c[l as usize] += 1;
        }
        c
    }

    /// 1-based positions holding `letter`.
    pub fn positions(&self, letter: u8) -> Vec<usize> {
        self.letters
            .iter()
            .enumerate()
            .filter(|&(_, &l)| l == letter)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Same letters viewed on a flag manifold with more steps.
    pub fn with_steps(&self, steps: u8) -> Result<Self> {
        StepString::new(self.letters.clone(), steps)
    }
}

impl fmt::Display for StepString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for StepString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StepString::from_word(s)
    }
}

impl TryFrom<String> for StepString {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<StepString> for String {
    fn from(s: StepString) -> String {
        s.to_string()
    }
}

fn require_binary(s: &StepString) -> Result<()> {
    if s.letters.iter().any(|&l| l > 1) {
        return Err(Error::InvalidString(format!("{s} is not a 01-string")));
    }
    Ok(())
}

pub fn partition_to_string(lambda: &Partition) -> StepString {
    let mut letters = Vec::with_capacity(lambda.ambient());
    let mut zeros = 0;
    for &p in &lambda.parts {
        letters.extend(std::iter::repeat_n(0, p - zeros));
        zeros = p;
        letters.push(1);
    }
    letters.extend(std::iter::repeat_n(0, lambda.cap - zeros));
    StepString { letters, steps: 1 }
}

/// Inverse of [`partition_to_string`]; the cap is the number of '0's.
pub fn string_to_partition(s: &StepString) -> Result<Partition> {
    require_binary(s)?;
    let mut parts = Vec::new();
    let mut zeros = 0;
    for &l in &s.letters {
        if l == 0 {
            zeros += 1;
        } else {
            parts.push(zeros);
        }
    }
    Ok(Partition { parts, cap: zeros })
}

/// `σ(uv)`: keep only the letters `u` and `v`, renamed to '0' and '1'.
pub fn substring_uv(sigma: &StepString, u: u8, v: u8) -> Result<StepString> {
    if u >= v || v > sigma.steps {
        return Err(Error::InvalidString(format!(
            "need u < v <= {} for σ(uv), got ({u},{v})",
            sigma.steps
        )));
    }
    let letters = sigma
        .letters
        .iter()
        .filter_map(|&l| match l {
            l if l == u => Some(0),
            l if l == v => Some(1),
            _ => None,
        })
        .collect();
    Ok(StepString { letters, steps: 1 })
}

/// `σ[j]`: letter `l` maps to '1' iff `l > steps - j`.
pub fn project(sigma: &StepString, j: u8) -> Result<StepString> {
    if j == 0 || j > sigma.steps {
        return Err(Error::InvalidString(format!(
            "projection index {j} outside 1..={}",
            sigma.steps
        )));
    }
    let threshold = sigma.steps - j;
    let letters = sigma.letters.iter().map(|&l| u8::from(l > threshold)).collect();
    Ok(StepString { letters, steps: 1 })
}

/// Number of pairs `l < l'` with `σ_l < σ_l'`.
pub fn cell_dimension(sigma: &StepString) -> usize {
    let mut seen = [0usize; 10];
    let mut total = 0;
    for &l in &sigma.letters {
        total += seen[..l as usize].iter().sum::<usize>();
        seen[l as usize] += 1;
    }
    total
}

/// Builds the 012-string whose k-th nonzero letter is '2' exactly when
/// `fiber_k = 1`, so that `σ[2] = base` and `σ(12) = fiber`.
pub fn lift(base: &StepString, fiber: &StepString) -> Result<StepString> {
    require_binary(base)?;
    require_binary(fiber)?;
    let ones = base.count(1);
    if ones != fiber.len() {
        return Err(Error::ShapeMismatch(format!(
            "base {base} has {ones} ones but fiber {fiber} has length {}",
            fiber.len()
        )));
    }
    let mut fiber_letters = fiber.letters.iter();
    let letters = base
        .letters
        .iter()
        .map(|&l| match l {
            0 => 0,
            _ => 1 + fiber_letters.next().copied().unwrap_or(0),
        })
        .collect();
    Ok(StepString { letters, steps: 2 })
}

/// Positions of the '2's.
pub fn horn_indices(sigma: &StepString) -> Vec<usize> {
    sigma.positions(2)
}

/// A lifted 012-string together with the two strings it was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftCertificate {
    pub base: StepString,
    pub fiber: StepString,
    pub lifted: StepString,
}

impl LiftCertificate {
    pub fn new(base: StepString, fiber: StepString) -> Result<Self> {
        let lifted = lift(&base, &fiber)?;
        Ok(LiftCertificate { base, fiber, lifted })
    }

    /// Checks `lifted[2] = base` and `lifted(12) = fiber`.
    pub fn verify(&self) -> bool {
        let Ok(lifted) = self.lifted.with_steps(2) else {
            return false;
        };
        let base_ok = project(&lifted, 2).is_ok_and(|b| b.letters == self.base.letters);
        let fiber_ok = substring_uv(&lifted, 1, 2).is_ok_and(|f| f.letters == self.fiber.letters);
        base_ok && fiber_ok
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> StepString {
        s.parse().unwrap()
    }

    fn p(parts: &[usize], cap: usize) -> Partition {
        Partition::new(parts.to_vec(), cap).unwrap()
    }

    #[test]
    fn partition_string_examples() {
        assert_eq!(partition_to_string(&p(&[0, 1, 3, 3], 5)).to_string(), "101001100");
        assert_eq!(partition_to_string(&p(&[0, 0, 0, 0], 5)).to_string(), "111100000");
        assert_eq!(partition_to_string(&p(&[5, 5, 5, 5], 5)).to_string(), "000001111");

        assert_eq!(string_to_partition(&w("101001100")).unwrap(), p(&[0, 1, 3, 3], 5));
        assert_eq!(string_to_partition(&w("010010")).unwrap(), p(&[1, 3], 4));
        let empty = string_to_partition(&w("0000")).unwrap();
        assert_eq!((empty.rows(), empty.cap()), (0, 4));
    }

    #[test]
    fn string_to_partition_rejects_higher_letters() {
        assert!(string_to_partition(&w("0120")).is_err());
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![2, 1], 3).is_err());
        assert!(Partition::new(vec![0, 4], 3).is_err());
        assert_eq!(p(&[0, 1, 3, 3], 5).weight(), 7);
        assert_eq!(p(&[0, 1, 3, 3], 5).codim(), 13);
        assert_eq!(p(&[0, 1, 3, 3], 5).codim_shape(), vec![5, 4, 2, 2]);
        assert_eq!(p(&[2, 3], 3).codim_shape(), vec![1]);
    }

    #[test]
    fn enumeration_counts_are_binomial() {
        assert_eq!(Partition::all(2, 2).len(), 6);
        assert_eq!(Partition::all(3, 3).len(), 20);
        assert_eq!(Partition::all(0, 4).len(), 1);
        let all = Partition::all(2, 3);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn substring_examples() {
        assert_eq!(substring_uv(&w("01312230132"), 1, 3).unwrap().to_string(), "010101");
        assert_eq!(substring_uv(&w("021010201"), 0, 2).unwrap().to_string(), "010010");
        assert_eq!(substring_uv(&w("012"), 0, 1).unwrap().to_string(), "01");
        assert!(substring_uv(&w("012"), 2, 1).is_err());
        assert!(substring_uv(&w("012"), 0, 3).is_err());
    }

    #[test]
    fn projection_examples() {
        let s = w("2103210");
        assert_eq!(s.steps(), 3);
        assert_eq!(project(&s, 1).unwrap().to_string(), "0001000");
        assert_eq!(project(&s, 2).unwrap().to_string(), "1001100");
        assert_eq!(project(&s, 3).unwrap().to_string(), "1101110");
        assert!(project(&s, 0).is_err());
        assert!(project(&s, 4).is_err());
    }

    #[test]
    fn cell_dimension_examples() {
        assert_eq!(cell_dimension(&w("021010201")), 13);
        assert_eq!(cell_dimension(&w("2210")), 0);
        assert_eq!(cell_dimension(&w("101001100")), 7);
    }

    #[test]
    fn lift_examples() {
        assert_eq!(lift(&w("100110"), &w("101")).unwrap().to_string(), "200120");
        assert_eq!(lift(&w("010011"), &w("101")).unwrap().to_string(), "020012");
        assert_eq!(lift(&w("111000"), &w("000")).unwrap().to_string(), "111000");
        assert!(lift(&w("1100"), &w("101")).is_err());
    }

    #[test]
    fn horn_index_examples() {
        assert_eq!(horn_indices(&w("200120")), vec![1, 5]);
        assert_eq!(horn_indices(&w("020012")), vec![2, 6]);
        assert!(horn_indices(&w("111000")).is_empty());
    }

    #[test]
    fn certificate_checks_both_projections() {
        let cert = LiftCertificate::new(w("100110"), w("101")).unwrap();
        assert!(cert.verify());
        let mut bad = cert.clone();
        bad.fiber = w("011");
        assert!(!bad.verify());
    }

    #[test]
    fn display_round_trip() {
        let lambda = p(&[0, 1, 3, 3], 5);
        assert_eq!(lambda.to_string(), "0,1,3,3/4x5");
        assert_eq!(lambda.to_string().parse::<Partition>().unwrap(), lambda);
        let json = serde_json::to_string(&lambda).unwrap();
        assert_eq!(json, "\"0,1,3,3/4x5\"");
    }
}
