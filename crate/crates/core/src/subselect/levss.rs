//! Leverage-score baseline: iterative largest-leverage selection.
//!
//! Each round recomputes leverage scores among the rows not yet selected and
//! takes the rows with the largest scores. Ties go to the lower row index.
//!
//! Leverage is computed as `‖L⁻¹xᵢ‖²` with `LLᵀ` the Gram matrix of the
//! remaining rows, which equals the squared row norm of `U` in a thin SVD.
//! The Gram matrix is downdated as rows are taken, so a round costs one
//! `p × p` Cholesky and one triangular solve per remaining row. Squaring
//! the design limits that route to well-conditioned data; otherwise a round
//! falls back to the thin SVD of the remaining rows.

use nalgebra::Cholesky;

use super::elimination::top_rows;
use crate::error::{Error, Result};
use crate::linalg::{leverage_scores, select_rows, thin_svd, Matrix};

/// Selects `m` rows of `x` in `t_rounds` rounds of `⌈m/T⌉` rows each; the
/// last non-empty round takes the remainder. Returned indices are ascending.
pub fn levss_select(x: &Matrix, m: usize, t_rounds: usize) -> Result<Vec<usize>> {
    let n = x.nrows();
    if m == 0 || m > n {
        return Err(Error::InvalidInput(format!(
            "cannot select {m} rows from {n}"
        )));
    }
    if t_rounds == 0 {
        return Err(Error::InvalidInput("LEVSS needs at least one round".into()));
    }
    let per_round = m.div_ceil(t_rounds);
    let mut quotas = Vec::with_capacity(t_rounds);
    let mut left = m;
    while left > 0 {
        let q = per_round.min(left);
        quotas.push(q);
        left -= q;
    }
    levss_rounds(x, &quotas)
}

/// Runs one leverage round per entry of `quotas`.
pub(crate) fn levss_rounds(x: &Matrix, quotas: &[usize]) -> Result<Vec<usize>> {
    let p = x.ncols();
    let mut remaining: Vec<usize> = (0..x.nrows()).collect();
    let mut selected = Vec::with_capacity(quotas.iter().sum());
    let mut taken = vec![false; x.nrows()];
    let xt = x.transpose();
    let mut gram = x.tr_mul(x);

    for &quota in quotas {
        if quota == 0 {
            continue;
        }
        if remaining.len() <= quota {
            selected.append(&mut remaining);
            break;
        }
        let Some(l_inv) = inverse_lower_factor(&gram) else {
            let h = leverage_scores(&thin_svd(&select_rows(x, &remaining))?);
            take_largest(
                h.as_slice(),
                quota,
                &mut remaining,
                &mut selected,
                &mut taken,
                |i| {
                    let row = xt.column(i);
                    gram.ger(-1.0, &row, &row, 1.0);
                },
            );
            continue;
        };
        let h: Vec<f64> = remaining
            .iter()
            .map(|&i| {
                let row = &xt.as_slice()[i * p..(i + 1) * p];
                l_inv
                    .chunks_exact(p)
                    .map(|coef| {
                        let v: f64 = coef.iter().zip(row).map(|(c, r)| c * r).sum();
                        v * v
                    })
                    .sum()
            })
            .collect();
        take_largest(&h, quota, &mut remaining, &mut selected, &mut taken, |i| {
            let row = xt.column(i);
            gram.ger(-1.0, &row, &row, 1.0);
        });
    }

    selected.sort_unstable();
    Ok(selected)
}

/// Moves the `quota` rows with the largest `h` from `remaining` to
/// `selected`, calling `on_take` for each.
fn take_largest(
    h: &[f64],
    quota: usize,
    remaining: &mut Vec<usize>,
    selected: &mut Vec<usize>,
    taken: &mut [bool],
    mut on_take: impl FnMut(usize),
) {
    // `remaining` is ascending, so slot order is row order.
    for slot in top_rows(h, quota) {
        let i = remaining[slot];
        taken[i] = true;
        selected.push(i);
        on_take(i);
    }
    remaining.retain(|&i| !taken[i]);
}

/// Pivot ratio below which the Gram route is not trusted.
const GRAM_PIVOT_FLOOR: f64 = 1e-6;

/// `L⁻¹` for `LLᵀ = gram`, row-major, or `None` when the factor is too
/// close to singular.
fn inverse_lower_factor(gram: &Matrix) -> Option<Vec<f64>> {
    let p = gram.nrows();
    let l = Cholesky::new(gram.clone())?.unpack();
    let diag = l.diagonal();
    if !(diag.min() / diag.max() > GRAM_PIVOT_FLOOR) {
        return None;
    }
    let l_inv = l.solve_lower_triangular(&Matrix::identity(p, p))?;
    Some(l_inv.transpose().as_slice().to_vec())
}
