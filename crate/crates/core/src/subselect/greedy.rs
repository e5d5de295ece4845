//! Greedy A-optimal pruning of an elimination pool.
//!
//! Each iteration scores the removal of every surviving row against the
//! current inverse information matrix and drops the row whose removal
//! raises the trace the least. The chosen row's downdated inverse becomes
//! the next state.

use std::time::Instant;

use rayon::prelude::*;

use super::elimination::EliminationPool;
use super::{Algorithm, SelectionResult};
use crate::error::{Error, Result};
use crate::linalg::{apply_removal, inverse_info, removal_score, select_rows, Vector};

/// Prunes `pool` down to `k` rows.
pub fn greedy_a_prune(
    pool: &EliminationPool,
    k: usize,
    algorithm: Algorithm,
) -> Result<SelectionResult> {
    let start = Instant::now();
    let n0 = pool.len();
    let p = pool.rows.ncols();
    if k > n0 {
        return Err(Error::InvalidInput(format!(
            "cannot keep {k} rows from a pool of {n0}"
        )));
    }
    if k <= p {
        return Err(Error::InvalidInput(format!(
            "subdata size {k} must exceed the number of covariates {p}"
        )));
    }
    if k == n0 {
        return Ok(SelectionResult {
            indices: pool.indices.clone(),
            algorithm,
            pool: pool.indices.clone(),
            removed: Vec::new(),
            trace_trajectory: Vec::new(),
            elapsed: start.elapsed(),
        });
    }

    let mut state = inverse_info(&pool.rows)?;
    // Columns of the transpose are contiguous rows of the pool.
    let rows_t = pool.rows.transpose();
    // Positions into the pool; ascending, so position order is row order.
    let mut alive: Vec<usize> = (0..n0).collect();
    let mut removed = Vec::with_capacity(n0 - k);
    let mut trajectory = Vec::with_capacity(n0 - k);

    for _ in 0..(n0 - k) {
        let best = alive
            .par_iter()
            .enumerate()
            .with_min_len(256)
            .map_init(
                || Vector::zeros(p),
                |z, (slot, &pos)| {
                    state
                        .removal_trace(rows_t.column(pos), z)
                        .map(|s| (s, slot))
                },
            )
            .flatten()
            .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let (_, slot) = best.ok_or(Error::AllRemovalsDegenerate)?;

        let pos = alive[slot];
        let scored = removal_score(&state, pos, rows_t.column(pos))?;
        state = apply_removal(state, scored);
        alive.remove(slot);
        removed.push(pool.indices[pos]);
        trajectory.push(state.trace());

        if state.needs_refresh() {
            state = inverse_info(&select_rows(&pool.rows, &alive))?;
        }
    }

    Ok(SelectionResult {
        indices: alive.iter().map(|&pos| pool.indices[pos]).collect(),
        algorithm,
        pool: pool.indices.clone(),
        removed,
        trace_trajectory: trajectory,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    /// Trace of the inverse information matrix of `rows`, by direct inversion.
    fn direct_trace(rows: &Matrix) -> Option<f64> {
        rows.tr_mul(rows).try_inverse().map(|m| m.trace())
    }

    /// Replays a pruning run, checking every removal against brute force.
    fn assert_greedy_optimal(pool: &EliminationPool, result: &SelectionResult) {
        let mut alive: Vec<usize> = pool.indices.clone();
        for &chosen in &result.removed {
            let mut best: Option<(f64, usize)> = None;
            for (slot, &idx) in alive.iter().enumerate() {
                let rest: Vec<usize> = alive.iter().copied().filter(|&i| i != idx).collect();
                let rows = crate::linalg::select_rows(
                    &pool.rows,
                    &rest
                        .iter()
                        .map(|i| pool.indices.binary_search(i).unwrap())
                        .collect::<Vec<_>>(),
                );
                if let Some(t) = direct_trace(&rows) {
                    if best.is_none_or(|(bt, _)| t < bt) {
                        best = Some((t, slot));
                    }
                }
            }
            let (_, slot) = best.unwrap();
            assert_eq!(alive[slot], chosen);
            alive.remove(slot);
        }
        assert_eq!(alive, result.indices);
    }

    #[test]
    fn four_row_pool_removes_brute_force_argmin() {
        let rows = Matrix::from_row_slice(4, 2, &[1.0, 0.0, 0.0, 1.0, 1.0, 1.0, -1.0, 1.0]);
        let pool = EliminationPool {
            indices: vec![0, 1, 2, 3],
            rows,
        };
        let result = greedy_a_prune(&pool, 3, Algorithm::Alg1).unwrap();
        assert_eq!(result.removed.len(), 1);
        assert_eq!(result.indices.len(), 3);
        assert_greedy_optimal(&pool, &result);
    }

    #[test]
    fn pool_of_size_k_is_returned_unchanged() {
        let rows = Matrix::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 1.0, 1.0, 1.0]);
        let pool = EliminationPool {
            indices: vec![4, 7, 9],
            rows,
        };
        let result = greedy_a_prune(&pool, 3, Algorithm::Alg2).unwrap();
        assert_eq!(result.indices, vec![4, 7, 9]);
        assert!(result.trace_trajectory.is_empty());
    }

    #[test]
    fn rejects_k_not_above_p() {
        let rows = Matrix::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 1.0, 1.0, 1.0]);
        let pool = EliminationPool {
            indices: vec![0, 1, 2],
            rows,
        };
        assert!(greedy_a_prune(&pool, 2, Algorithm::Alg1).is_err());
    }

    #[test]
    fn singular_pool_is_reported() {
        let rows = Matrix::from_row_slice(4, 2, &[1.0, 2.0, 2.0, 4.0, 3.0, 6.0, 4.0, 8.0]);
        let pool = EliminationPool {
            indices: vec![0, 1, 2, 3],
            rows,
        };
        assert!(matches!(
            greedy_a_prune(&pool, 3, Algorithm::Alg1),
            Err(Error::SingularInformation { .. })
        ));
    }

    #[test]
    fn refresh_keeps_long_runs_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let x = Matrix::from_fn(600, 4, |_, _| rng.sample(StandardNormal));
        let pool = EliminationPool::new(&x, (0..600).collect());
        let result = greedy_a_prune(&pool, 300, Algorithm::Alg1).unwrap();
        assert_eq!(result.indices.len(), 300);
        let direct = direct_trace(&crate::linalg::select_rows(&x, &result.indices)).unwrap();
        let last = *result.trace_trajectory.last().unwrap();
        assert!((last - direct).abs() <= 1e-8 * direct);
        assert!(result.trace_trajectory.windows(2).all(|w| w[1] > w[0]));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn every_removal_is_the_brute_force_argmin(seed in any::<u64>(), n0 in 8usize..40, p in 1usize..5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = Matrix::from_fn(n0, p, |_, _| rng.sample(StandardNormal));
            let pool = EliminationPool::new(&x, (0..n0).collect());
            let k = rng.gen_range(p + 1..n0);
            let result = greedy_a_prune(&pool, k, Algorithm::Alg1).unwrap();
            prop_assert_eq!(result.indices.len(), k);
            prop_assert!(result.trace_trajectory.windows(2).all(|w| w[1] > w[0]));
            assert_greedy_optimal(&pool, &result);
        }
    }
}
