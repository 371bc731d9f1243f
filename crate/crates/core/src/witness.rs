//! Kernel descent: from a vanishing product to a violated Horn inequality.
//!
//! At each level a generic `φ` in the intersection of the tangent spaces is
//! sampled. If `φ = 0` the dimensional inequality already fails. Otherwise
//! its kernel `S` meets the source flags in positions `ρ^i`; lifting the
//! classes by `ρ^i` gives 012-strings whose `σ(02)` blocks are the classes of
//! the next level, on the rectangle `dim S × (n-r)`. The indices of the final
//! inequality are the '2'-positions of the lifts composed back up the levels.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{derive_seed, intersect, nullspace, random_element, Field, Mat, Subspace};
use crate::horn::{HornInequality, HornSolver};
use crate::lr;
use crate::strings::{
    lift, partition_to_string, project, string_to_partition, substring_uv, Partition, StepString,
};
use crate::tangent::{
    as_map, common_shape, induced_flag, is_transverse, quotient_pattern, schubert_position,
    x_from_flags, GenericTangents,
};

/// Attempts at drawing two agreeing samples before giving up.
pub const MAX_ATTEMPTS: usize = 8;

/// Largest `r·(n-r)` for which the up-front vanishing check uses the LR
/// expansion rather than the Horn recursion.
pub const LR_CHECK_LIMIT: usize = 25;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelRecord {
    pub r: usize,
    pub n: usize,
    pub classes: Vec<Partition>,
    pub rank: usize,
    pub nullity: usize,
    /// `ρ^i`; empty at a terminal level.
    pub kernel_positions: Vec<StepString>,
    /// `σ^i = lift(λ^i, ρ^i)`; empty at a terminal level.
    pub lifted: Vec<StepString>,
    /// `partition(σ^i(02))`; empty at a terminal level.
    pub mus: Vec<Partition>,
}

impl LevelRecord {
    pub fn is_terminal(&self) -> bool {
        self.nullity == self.r
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessTrace {
    pub prime: u64,
    pub seed: u64,
    pub levels: Vec<LevelRecord>,
    /// Composed lifts, one 012-string of length `r` per class; their
    /// '2'-positions are the indices of `final`.
    pub certificates: Vec<StepString>,
    #[serde(rename = "final")]
    pub final_inequality: HornInequality,
    pub slack: i64,
}

/// One accepted generic sample at a level.
#[derive(Clone, Debug)]
pub struct LevelSample {
    pub problem: GenericTangents,
    pub intersection: Subspace,
    pub phi: Vec<u64>,
    pub kernel: Subspace,
    pub positions: Vec<StepString>,
}

impl LevelSample {
    pub fn nullity(&self) -> usize {
        self.kernel.dim()
    }

    pub fn rank(&self) -> usize {
        self.kernel.ambient_dim() - self.kernel.dim()
    }
}

fn sample_level(field: Field, lambdas: &[Partition], r: usize, c: usize, seed: u64) -> Result<LevelSample> {
    let problem = crate::tangent::generic_problem(field, lambdas, derive_seed(seed, 0))?;
    let intersection = problem.intersection()?;
    let phi = random_element(&intersection, derive_seed(seed, 1));
    let kernel = nullspace(&field, &as_map(&phi, c, r)?);
    let positions = problem
        .flags
        .iter()
        .map(|(src, _)| schubert_position(&kernel, src))
        .collect::<Result<_>>()?;
    Ok(LevelSample { problem, intersection, phi, kernel, positions })
}

/// Draws pairs of independent samples until both agree on the kernel
/// dimension and every kernel position.
pub fn descend_level(field: Field, lambdas: &[Partition], seed: u64) -> Result<LevelSample> {
    let (r, c) = common_shape(lambdas)?;
    for attempt in 0..MAX_ATTEMPTS as u64 {
        let a = sample_level(field, lambdas, r, c, derive_seed(seed, 2 * attempt))?;
        let b = sample_level(field, lambdas, r, c, derive_seed(seed, 2 * attempt + 1))?;
        if a.nullity() == b.nullity() && a.positions == b.positions {
            return Ok(a);
        }
    }
    Err(Error::GenericityExhausted(MAX_ATTEMPTS))
}

/// Transversality of the two blocks that the descent relies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockChecks {
    /// Each `X_i ∩ Hom(V/S, Q)` has the dimension of the quotient pattern.
    pub quotient_dims: bool,
    /// The intersection inside `Hom(V/S, Q)` is transverse.
    pub quotient_transverse: bool,
    /// The induced tangent spaces in `Hom(S, V/S)` meet transversely.
    pub fiber_transverse: bool,
}

/// Checks the `σ(01)` and `σ(12)` blocks of a non-terminal level.
pub fn check_level_blocks(lambdas: &[Partition], sample: &LevelSample) -> Result<BlockChecks> {
    let (r, c) = common_shape(lambdas)?;
    let field = sample.kernel.field();
    let s_basis = sample.kernel.basis_vectors();
    let mut rows = Vec::new();
    for v in &s_basis {
        for i in 0..c {
            let mut row = vec![0; r * c];
            row[i * r..(i + 1) * r].copy_from_slice(v);
            rows.push(row);
        }
    }
    let n_rows = rows.len();
    let kills_s = nullspace(&field, &Mat::from_residues(n_rows, r * c, rows.into_iter().flatten().collect())?);

    let mut quotient_dims = true;
    let mut restricted = Vec::with_capacity(lambdas.len());
    let mut fiber = Vec::with_capacity(lambdas.len());
    for ((lambda, (src, _)), (x, rho)) in lambdas
        .iter()
        .zip(&sample.problem.flags)
        .zip(sample.problem.tangents.iter().zip(&sample.positions))
    {
        let meet = intersect(&[x.clone(), kills_s.clone()])?;
        quotient_dims &= meet.dim() == quotient_pattern(lambda, rho)?.weight();
        restricted.push(meet);
        let (on_s, on_quotient) = induced_flag(src, &sample.kernel)?;
        fiber.push(x_from_flags(&string_to_partition(rho)?, &on_s, &on_quotient)?);
    }
    // in the coordinates of Hom(V/S, Q) the restricted spaces sit inside kills_s
    let ambient = kills_s.dim();
    let expected = crate::tangent::expected_dim(restricted.iter().map(Subspace::dim), ambient);
    let quotient_transverse = intersect(&restricted)?.dim() as i64 == expected;
    Ok(BlockChecks { quotient_dims, quotient_transverse, fiber_transverse: is_transverse(&fiber)? })
}

fn vanishes(lambdas: &[Partition], r: usize, c: usize) -> Result<bool> {
    if r * c <= LR_CHECK_LIMIT {
        Ok(!lr::lr_nonzero(lambdas)?)
    } else {
        Ok(!HornSolver::shared().is_nonzero(lambdas)?)
    }
}

fn ones(len: usize) -> StepString {
    StepString::new(vec![1; len], 1).expect("binary letters")
}

/// Composes the lifts from the innermost level outwards; returns the top
/// level certificates and the final 01-strings.
fn compose(levels: &[LevelRecord], s: usize) -> Result<(Vec<StepString>, Vec<StepString>)> {
    let last = levels.last().ok_or_else(|| Error::Inconsistent("trace has no levels".into()))?;
    let mut marks = vec![ones(last.r); s];
    let mut certificates = marks.iter().map(|m| lift(m, m)).collect::<Result<Vec<_>>>()?;
    for level in levels.iter().rev().filter(|l| !l.is_terminal()) {
        if level.kernel_positions.len() != s {
            return Err(Error::Inconsistent("kernel positions missing".into()));
        }
        certificates = level
            .kernel_positions
            .iter()
            .zip(&marks)
            .map(|(rho, mark)| lift(rho, mark))
            .collect::<Result<_>>()?;
        marks = certificates.iter().map(|c| project(c, 1)).collect::<Result<_>>()?;
    }
    Ok((certificates, marks))
}

/// Searches for a violated Horn inequality of a vanishing product.
pub fn find_witness(field: Field, lambdas: &[Partition], seed: u64) -> Result<WitnessTrace> {
    let (r, c) = common_shape(lambdas)?;
    let s = lambdas.len();
    if !vanishes(lambdas, r, c)? {
        return Err(Error::NotVanishing);
    }
    let mut levels = Vec::new();
    let mut classes = lambdas.to_vec();
    let mut rr = r;
    loop {
        let sample = descend_level(field, &classes, derive_seed(seed, levels.len() as u64))?;
        let nullity = sample.nullity();
        let mut record = LevelRecord {
            r: rr,
            n: rr + c,
            classes: classes.clone(),
            rank: sample.rank(),
            nullity,
            kernel_positions: Vec::new(),
            lifted: Vec::new(),
            mus: Vec::new(),
        };
        if nullity == rr {
            levels.push(record);
            break;
        }
        if nullity == 0 {
            return Err(Error::Inconsistent(format!(
                "injective generic φ at level {} of a vanishing product",
                levels.len() + 1
            )));
        }
        record.lifted = classes
            .iter()
            .zip(&sample.positions)
            .map(|(lambda, rho)| lift(&partition_to_string(lambda), rho))
            .collect::<Result<_>>()?;
        record.mus = record
            .lifted
            .iter()
            .map(|sigma| string_to_partition(&substring_uv(sigma, 0, 2)?))
            .collect::<Result<_>>()?;
        record.kernel_positions = sample.positions;
        classes = record.mus.clone();
        rr = nullity;
        levels.push(record);
    }

    let (certificates, marks) = compose(&levels, s)?;
    let mus = marks.iter().map(string_to_partition).collect::<Result<Vec<_>>>()?;
    let final_inequality = HornInequality::new(mus, r, r + c)?;
    let slack = final_inequality.evaluate(lambdas)?;
    if slack >= 0 {
        return Err(Error::Inconsistent(format!("descent ended at a satisfied inequality (slack {slack})")));
    }
    Ok(WitnessTrace { prime: field.modulus(), seed, levels, certificates, final_inequality, slack })
}

fn check(trace: &WitnessTrace, lambdas: &[Partition]) -> Result<bool> {
    let (r, c) = common_shape(lambdas)?;
    let s = lambdas.len();
    let fin = &trace.final_inequality;
    if !fin.is_consistent() || fin.r != r || fin.n != r + c || fin.s() != s {
        return Ok(false);
    }
    let slack = fin.evaluate(lambdas)?;
    if slack >= 0 || slack != trace.slack {
        return Ok(false);
    }
    if trace.certificates.len() != s
        || trace
            .certificates
            .iter()
            .zip(&fin.indices)
            .any(|(cert, idx)| cert.len() != r || cert.steps() != 2 || cert.positions(2) != *idx)
    {
        return Ok(false);
    }

    let Some(first) = trace.levels.first() else {
        return Ok(false);
    };
    if first.classes != lambdas {
        return Ok(false);
    }
    for (k, level) in trace.levels.iter().enumerate() {
        let last = k + 1 == trace.levels.len();
        if level.r.checked_add(c) != Some(level.n)
            || level.rank.checked_add(level.nullity) != Some(level.r)
            || level.classes.len() != s
        {
            return Ok(false);
        }
        if level.classes.iter().any(|l| l.rows() != level.r || l.cap() != c) {
            return Ok(false);
        }
        if last != level.is_terminal() {
            return Ok(false);
        }
        if last {
            if fin.d != level.r {
                return Ok(false);
            }
            continue;
        }
        if level.kernel_positions.len() != s || level.lifted.len() != s || level.mus.len() != s {
            return Ok(false);
        }
        for ((lambda, rho), (sigma, mu)) in level
            .classes
            .iter()
            .zip(&level.kernel_positions)
            .zip(level.lifted.iter().zip(&level.mus))
        {
            if rho.len() != level.r || rho.count(1) != level.nullity {
                return Ok(false);
            }
            if lift(&partition_to_string(lambda), rho)? != *sigma {
                return Ok(false);
            }
            if string_to_partition(&substring_uv(&sigma.with_steps(2)?, 0, 2)?)? != *mu {
                return Ok(false);
            }
        }
        if trace.levels[k + 1].classes != level.mus || trace.levels[k + 1].r != level.nullity {
            return Ok(false);
        }
    }
    let (certificates, _) = compose(&trace.levels, s)?;
    if certificates != trace.certificates {
        return Ok(false);
    }
    lr::lr_nonzero(&fin.mus)
}

/// Re-checks every claim of a trace against the classes it was built for.
/// Malformed traces yield `false`.
pub fn verify_witness(trace: &WitnessTrace, lambdas: &[Partition]) -> bool {
    check(trace, lambdas).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize], cap: usize) -> Partition {
        Partition::new(parts.to_vec(), cap).unwrap()
    }

    fn words(v: &[StepString]) -> Vec<String> {
        v.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn first_worked_example() {
        let ls = [p(&[0, 3, 3], 4), p(&[1, 3, 3], 4)];
        let t = find_witness(Field::default(), &ls, 0).unwrap();
        assert_eq!(t.levels.len(), 2);
        assert_eq!(words(&t.levels[0].kernel_positions), ["101", "101"]);
        assert_eq!(words(&t.levels[0].lifted), ["2000120", "0200120"]);
        assert_eq!(t.levels[0].mus, vec![p(&[0, 3], 4), p(&[1, 3], 4)]);
        assert_eq!(t.final_inequality.indices, vec![vec![1, 3], vec![1, 3]]);
        assert_eq!((t.final_inequality.rhs, t.slack), (8, -1));
        assert!(verify_witness(&t, &ls));
    }

    #[test]
    fn second_worked_example() {
        let ls = [p(&[0, 2, 3, 3, 3, 4], 4), p(&[1, 1, 3, 3, 3, 3], 4)];
        let t = find_witness(Field::default(), &ls, 0).unwrap();
        assert_eq!(words(&t.levels[0].kernel_positions), ["100110", "010011"]);
        assert_eq!(words(&t.levels[1].kernel_positions), ["101", "101"]);
        assert_eq!(words(&t.certificates), ["200120", "020012"]);
        assert_eq!(t.final_inequality.indices, vec![vec![1, 5], vec![2, 6]]);
        assert_eq!((t.final_inequality.rhs, t.slack), (8, -1));
        assert!(verify_witness(&t, &ls));
    }

    #[test]
    fn nonvanishing_products_are_refused() {
        let ls = [Partition::full(3, 4), Partition::full(3, 4)];
        assert_eq!(find_witness(Field::default(), &ls, 0).unwrap_err(), Error::NotVanishing);
    }

    #[test]
    fn points_terminate_at_the_top() {
        let ls = [Partition::zero(3, 4), Partition::zero(3, 4)];
        let t = find_witness(Field::default(), &ls, 0).unwrap();
        assert_eq!(t.levels.len(), 1);
        assert_eq!(t.final_inequality.d, 3);
        assert_eq!(words(&t.certificates), ["222", "222"]);
        assert_eq!(t.slack, -12);
        assert!(verify_witness(&t, &ls));
    }

    #[test]
    fn tampering_is_detected() {
        let ls = [p(&[0, 3, 3], 4), p(&[1, 3, 3], 4)];
        let t = find_witness(Field::default(), &ls, 0).unwrap();
        let mut bad = t.clone();
        bad.final_inequality.indices[0][1] = 2;
        assert!(!verify_witness(&bad, &ls));
        let mut bad = t.clone();
        bad.slack = -2;
        assert!(!verify_witness(&bad, &ls));
        let mut bad = t.clone();
        bad.certificates[1] = "2200100".parse().unwrap();
        assert!(!verify_witness(&bad, &ls));
        let mut bad = t.clone();
        bad.levels[0].kernel_positions[0] = "011".parse().unwrap();
        assert!(!verify_witness(&bad, &ls));
        assert!(!verify_witness(&t, &[p(&[0, 3, 3], 4), p(&[2, 3, 3], 4)]));
    }

    #[test]
    fn level_blocks_are_transverse() {
        let ls = [p(&[0, 2, 3, 3, 3, 4], 4), p(&[1, 1, 3, 3, 3, 3], 4)];
        let sample = descend_level(Field::default(), &ls, 5).unwrap();
        let checks = check_level_blocks(&ls, &sample).unwrap();
        assert!(checks.quotient_dims && checks.quotient_transverse && checks.fiber_transverse);
    }

    #[test]
    fn json_round_trip() {
        let ls = [p(&[0, 3, 3], 4), p(&[1, 3, 3], 4)];
        let t = find_witness(Field::default(), &ls, 3).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        assert!(json.contains("\"final\""));
        assert_eq!(serde_json::from_str::<WitnessTrace>(&json).unwrap(), t);
    }
}
