//! Horn inequalities and the recursive vanishing criterion.
//!
//! For `λ^1, …, λ^s ∈ Λ(r, n-r)` the product of the classes is nonzero iff for
//! every `1 ≤ d ≤ r` and every `μ^1, …, μ^s ∈ Λ(d, r-d)` with nonzero product
//! in `H*(Gr(d, r))`,
//!
//! ```text
//! Σ_i Σ_k λ^i_{μ^i_k + k} ≥ (s-1) d (n-r).
//! ```
//!
//! The inner condition is decided by the same criterion one level down; the
//! results are memoized in a grow-only table shared across calls.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::Field;
use crate::lr;
use crate::strings::{partition_to_string, Partition};
use crate::tangent::{common_shape, transversality_verdict, Transversality};

/// One Horn inequality for `s` classes on `Gr(r, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HornInequality {
    pub d: usize,
    pub r: usize,
    pub n: usize,
    pub mus: Vec<Partition>,
    /// `{μ^i_k + k}`, 1-based and strictly increasing.
    pub indices: Vec<Vec<usize>>,
    pub rhs: usize,
}

impl HornInequality {
    /// The inequality indexed by `μ^i ∈ Λ(d, r-d)`.
    pub fn new(mus: Vec<Partition>, r: usize, n: usize) -> Result<Self> {
        if r >= n {
            return Err(Error::ShapeMismatch(format!("need r < n, got r={r}, n={n}")));
        }
        let first = mus.first().ok_or_else(|| Error::ShapeMismatch("no classes given".into()))?;
        let d = first.rows();
        if d == 0 || d > r {
            return Err(Error::ShapeMismatch(format!("level d={d} outside 1..={r}")));
        }
        if let Some(bad) = mus.iter().find(|m| m.rows() != d || m.cap() != r - d) {
            return Err(Error::ShapeMismatch(format!("{bad} is not in Λ({d},{})", r - d)));
        }
        let indices = mus.iter().map(|m| partition_to_string(m).positions(1)).collect();
        let rhs = (mus.len() - 1)
            .checked_mul(d)
            .and_then(|x| x.checked_mul(n - r))
            .ok_or_else(|| Error::ShapeMismatch(format!("right side overflows for r={r}, n={n}")))?;
        Ok(HornInequality { d, r, n, mus, indices, rhs })
    }

    /// The `d = r` inequality `Σ|λ^i| ≥ (s-1) r (n-r)`.
    pub fn dimensional(s: usize, r: usize, n: usize) -> Result<Self> {
        HornInequality::new(vec![Partition::zero(r, 0); s], r, n)
    }

    pub fn s(&self) -> usize {
        self.mus.len()
    }

    /// Left side minus right side; the inequality holds iff this is `≥ 0`.
    pub fn evaluate(&self, lambdas: &[Partition]) -> Result<i64> {
        if lambdas.len() != self.indices.len() {
            return Err(Error::ShapeMismatch(format!(
                "inequality has {} classes, got {}",
                self.indices.len(),
                lambdas.len()
            )));
        }
        let mut lhs = 0i64;
        for (lambda, idx) in lambdas.iter().zip(&self.indices) {
            if lambda.rows() != self.r || lambda.ambient() != self.n {
                return Err(Error::ShapeMismatch(format!(
                    "{lambda} is not in Λ({},{})",
                    self.r,
                    self.n.saturating_sub(self.r)
                )));
            }
            for &k in idx {
                let part = lambda
                    .part(k)
                    .ok_or(Error::IndexOutOfRange { index: k, max: lambda.rows() })?;
                lhs += part as i64;
            }
        }
        let rhs = i64::try_from(self.rhs)
            .map_err(|_| Error::ShapeMismatch(format!("right side {} too large", self.rhs)))?;
        Ok(lhs - rhs)
    }

    /// Whether the fields agree with each other, as they do for every value
    /// built by [`HornInequality::new`].
    pub fn is_consistent(&self) -> bool {
        HornInequality::new(self.mus.clone(), self.r, self.n).is_ok_and(|h| h == *self)
    }
}

pub fn evaluate(ineq: &HornInequality, lambdas: &[Partition]) -> Result<i64> {
    ineq.evaluate(lambdas)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    HornRecursion,
    LrOracle,
    Numeric,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::HornRecursion => "horn-recursion",
            Method::LrOracle => "lr-oracle",
            Method::Numeric => "numeric",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub inequality: HornInequality,
    pub slack: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub nonzero: bool,
    pub method: Method,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violated: Option<Violation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transversality: Option<Transversality>,
}

type MemoKey = (usize, usize, Vec<Vec<usize>>);

/// Recursive Horn solver with a memo of nonvanishing decisions keyed by
/// `(rows, cap, sorted tuple)`.
#[derive(Debug, Default)]
pub struct HornSolver {
    memo: RwLock<HashMap<MemoKey, bool>>,
}

impl HornSolver {
    pub fn new() -> Self {
        Self::default()
    }

    /// The process-wide solver used by the free functions of this module.
    pub fn shared() -> &'static HornSolver {
        static SHARED: OnceLock<HornSolver> = OnceLock::new();
        SHARED.get_or_init(HornSolver::new)
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }

    /// Whether the product of the classes is nonzero.
    pub fn is_nonzero(&self, lambdas: &[Partition]) -> Result<bool> {
        let (r, c) = common_shape(lambdas)?;
        Ok(self.nonzero_unchecked(lambdas, r, c))
    }

    fn nonzero_unchecked(&self, lambdas: &[Partition], r: usize, c: usize) -> bool {
        if r == 0 || c == 0 || lambdas.len() < 2 {
            return true;
        }
        let mut key: Vec<Vec<usize>> = lambdas.iter().map(|l| l.parts().to_vec()).collect();
        key.sort_unstable();
        let key = (r, c, key);
        if let Some(&hit) = self.memo.read().expect("memo lock").get(&key) {
            return hit;
        }
        let nonzero = self.violation_unchecked(lambdas, r, c).is_none();
        self.memo.write().expect("memo lock").insert(key, nonzero);
        nonzero
    }

    /// The first violated inequality in enumeration order, if any.
    pub fn first_violation(&self, lambdas: &[Partition]) -> Result<Option<Violation>> {
        let (r, c) = common_shape(lambdas)?;
        Ok(self.violation_unchecked(lambdas, r, c))
    }

    fn violation_unchecked(&self, lambdas: &[Partition], r: usize, c: usize) -> Option<Violation> {
        let s = lambdas.len();
        for d in 1..=r {
            let mut tuples = MuTuples::new(d, r, s);
            while let Some(mus) = tuples.next_candidate() {
                let slack = slack_of(lambdas, mus, (s - 1) * d * c);
                if slack < 0 && self.nonzero_unchecked(mus, d, r - d) {
                    let inequality =
                        HornInequality::new(mus.to_vec(), r, r + c).expect("enumerated shapes are valid");
                    return Some(Violation { inequality, slack });
                }
            }
        }
        None
    }

    /// Every Horn inequality for `s` classes on `Gr(r, n)`, in order of `d`
    /// and then lexicographically in the `μ`-tuple.
    pub fn inequalities(&self, r: usize, n: usize, s: usize) -> Result<HornInequalities<'_>> {
        if r >= n || s == 0 {
            return Err(Error::ShapeMismatch(format!("need r < n and s ≥ 1, got r={r}, n={n}, s={s}")));
        }
        Ok(HornInequalities { solver: self, r, n, s, d: 1, tuples: MuTuples::new(1.min(r), r, s) })
    }

    pub fn verdict(&self, lambdas: &[Partition]) -> Result<Verdict> {
        let violated = self.first_violation(lambdas)?;
        Ok(Verdict { nonzero: violated.is_none(), method: Method::HornRecursion, violated, transversality: None })
    }
}

fn slack_of(lambdas: &[Partition], mus: &[Partition], rhs: usize) -> i64 {
    let mut lhs = 0usize;
    for (lambda, mu) in lambdas.iter().zip(mus) {
        for (k, &m) in mu.parts().iter().enumerate() {
            lhs += lambda.parts()[m + k];
        }
    }
    lhs as i64 - rhs as i64
}

/// Odometer over `Λ(d, r-d)^s` in lexicographic order, skipping tuples with
/// `Σ|μ^i| < (s-1) d (r-d)` (their product vanishes for degree reasons).
struct MuTuples {
    all: Vec<Partition>,
    weights: Vec<usize>,
    odometer: Vec<usize>,
    current: Vec<Partition>,
    min_weight: usize,
    started: bool,
    done: bool,
}

impl MuTuples {
    fn new(d: usize, r: usize, s: usize) -> Self {
        let all = Partition::all(d, r - d);
        let weights = all.iter().map(Partition::weight).collect();
        MuTuples {
            current: vec![all[0].clone(); s],
            all,
            weights,
            odometer: vec![0; s],
            min_weight: (s - 1) * d * (r - d),
            started: false,
            done: false,
        }
    }

    fn advance(&mut self) -> bool {
        if !self.started {
            self.started = true;
            return true;
        }
        for slot in (0..self.odometer.len()).rev() {
            self.odometer[slot] += 1;
            if self.odometer[slot] < self.all.len() {
                return true;
            }
            self.odometer[slot] = 0;
        }
        false
    }

    fn next_candidate(&mut self) -> Option<&[Partition]> {
        while !self.done {
            if !self.advance() {
                self.done = true;
                break;
            }
            let weight: usize = self.odometer.iter().map(|&i| self.weights[i]).sum();
            if weight >= self.min_weight {
                for (slot, &i) in self.current.iter_mut().zip(&self.odometer) {
                    *slot = self.all[i].clone();
                }
                return Some(&self.current);
            }
        }
        None
    }
}

/// Lazy stream of Horn inequalities; see [`HornSolver::inequalities`].
pub struct HornInequalities<'a> {
    solver: &'a HornSolver,
    r: usize,
    n: usize,
    s: usize,
    d: usize,
    tuples: MuTuples,
}

impl Iterator for HornInequalities<'_> {
    type Item = HornInequality;

    fn next(&mut self) -> Option<HornInequality> {
        while self.d <= self.r {
            let (d, r) = (self.d, self.r);
            while let Some(mus) = self.tuples.next_candidate() {
                if self.solver.nonzero_unchecked(mus, d, r - d) {
                    let mus = mus.to_vec();
                    return Some(HornInequality::new(mus, r, self.n).expect("enumerated shapes are valid"));
                }
            }
            self.d += 1;
            if self.d <= self.r {
                self.tuples = MuTuples::new(self.d, r, self.s);
            }
        }
        None
    }
}

/// `enumerate_horn` on the shared solver.
pub fn enumerate_horn(r: usize, n: usize, s: usize) -> Result<HornInequalities<'static>> {
    HornSolver::shared().inequalities(r, n, s)
}

/// Decides nonvanishing by the Horn recursion; on failure reports the first
/// violated inequality.
pub fn horn_verdict(lambdas: &[Partition]) -> Result<Verdict> {
    HornSolver::shared().verdict(lambdas)
}

pub fn lr_verdict(lambdas: &[Partition]) -> Result<Verdict> {
    Ok(Verdict {
        nonzero: lr::lr_nonzero(lambdas)?,
        method: Method::LrOracle,
        violated: None,
        transversality: None,
    })
}

pub fn numeric_verdict(field: Field, lambdas: &[Partition], seed: u64, trials: usize) -> Result<Verdict> {
    let t = transversality_verdict(field, lambdas, seed, trials)?;
    Ok(Verdict { nonzero: t.nonzero, method: Method::Numeric, violated: None, transversality: Some(t) })
}
