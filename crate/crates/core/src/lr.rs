//! Littlewood–Richardson expansion of Schubert class products.
//!
//! Classes are multiplied as Schur functions indexed by their codimension
//! shapes (Young diagrams, weakly decreasing rows) and every shape that does
//! not fit the `r × c` box is discarded. This module is independent of the
//! Horn recursion and of the tangent-space model.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::strings::Partition;
use crate::tangent::common_shape;

/// A Young diagram with weakly decreasing rows, padded with zeros to the box
/// height.
pub type Shape = Vec<usize>;

/// Schur expansion: shape to multiplicity.
pub type Expansion = BTreeMap<Shape, u64>;

/// Multiplies `s_alpha · s_beta` inside the `rows × cols` box.
pub fn multiply(alpha: &[usize], beta: &[usize], rows: usize, cols: usize) -> Expansion {
    let mut start = vec![0; rows];
    for (slot, &a) in start.iter_mut().zip(alpha) {
        *slot = a;
    }
    let mut out = Expansion::new();
    if alpha.iter().skip(rows).any(|&a| a > 0) || alpha.iter().any(|&a| a > cols) {
        return out;
    }
    let beta: Vec<usize> = beta.iter().copied().filter(|&b| b > 0).collect();
    place(&start, &beta, 0, &vec![0; rows], cols, &mut out);
    out
}

/// Adds the boxes labelled `t + 1` as a horizontal strip, keeping the reverse
/// reading word a lattice word relative to the previous label.
fn place(shape: &[usize], beta: &[usize], t: usize, prev: &[usize], cols: usize, out: &mut Expansion) {
    if t == beta.len() {
        *out.entry(shape.to_vec()).or_insert(0) += 1;
        return;
    }
    let mut next = shape.to_vec();
    let mut counts = vec![0; shape.len()];
    strip(shape, beta[t], t == 0, prev, cols, 0, 0, 0, &mut next, &mut counts, &mut |g, c| {
        place(g, beta, t + 1, c, cols, out)
    });
}

#[allow(clippy::too_many_arguments)]
fn strip(
    shape: &[usize],
    remaining: usize,
    first_label: bool,
    prev: &[usize],
    cols: usize,
    row: usize,
    cum_cur: usize,
    cum_prev: usize,
    next: &mut Vec<usize>,
    counts: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize], &[usize]),
) {
    if remaining == 0 {
        emit(next, counts);
        return;
    }
    if row == shape.len() {
        return;
    }
    let ceiling = if row == 0 { cols } else { shape[row - 1] };
    let room = ceiling.saturating_sub(shape[row]).min(remaining);
    for k in 0..=room {
        let cum = cum_cur + k;
        // label t may not outnumber label t-1 in any prefix of the reading word
        if !first_label && cum > cum_prev {
            break;
        }
        next[row] = shape[row] + k;
        counts[row] = k;
        strip(
            shape,
            remaining - k,
            first_label,
            prev,
            cols,
            row + 1,
            cum,
            cum_prev + prev[row],
            next,
            counts,
            emit,
        );
    }
    next[row] = shape[row];
    counts[row] = 0;
}

/// Expands `s_{ν¹} ⋯ s_{νˢ}` inside the `rows × cols` box.
pub fn expand_shapes(shapes: &[Shape], rows: usize, cols: usize) -> Expansion {
    let mut acc = Expansion::new();
    acc.insert(vec![0; rows], 1);
    for beta in shapes {
        let mut next = Expansion::new();
        for (alpha, &m) in &acc {
            for (gamma, k) in multiply(alpha, beta, rows, cols) {
                let slot = next.entry(gamma).or_insert(0);
                *slot = slot.saturating_add(m.saturating_mul(k));
            }
        }
        acc = next;
        if acc.is_empty() {
            break;
        }
    }
    acc
}

/// The product of the classes `S^{λ^i}` as a sum of Schubert classes, keyed by
/// partitions in the same convention as the inputs.
pub fn lr_expansion(lambdas: &[Partition]) -> Result<BTreeMap<Partition, u64>> {
    let (r, c) = common_shape(lambdas)?;
    let shapes: Vec<Shape> = lambdas.iter().map(Partition::codim_shape).collect();
    Ok(expand_shapes(&shapes, r, c)
        .into_iter()
        .map(|(gamma, m)| {
            let parts = gamma.iter().map(|&g| c - g).collect();
            (Partition::new(parts, c).expect("shape fits the box"), m)
        })
        .collect())
}

/// Whether the product of the classes is nonzero.
pub fn lr_nonzero(lambdas: &[Partition]) -> Result<bool> {
    Ok(!lr_expansion(lambdas)?.is_empty())
}
