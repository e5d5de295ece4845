//! Dense linear-algebra primitives used by the selection algorithms.
//!
//! The row-removal downdate is the workhorse of the greedy pruner: given
//! `(QᵀQ)⁻¹` and a row `x` of `Q`, the inverse information matrix of `Q`
//! without `x` is
//!
//! ```text
//! (QᵀQ)⁻¹ + z zᵀ / (1 - h),   z = (QᵀQ)⁻¹ x,   h = xᵀ z
//! ```
//!
//! and its trace is `tr((QᵀQ)⁻¹) + Σ z_j² / (1 - h)`. Factorizations are
//! delegated to `nalgebra`; the downdate itself is computed here.

use nalgebra::{DMatrix, DVector, DVectorView, SymmetricEigen};

use crate::error::{Error, Result};

pub type Matrix = DMatrix<f64>;
pub type Vector = DVector<f64>;

/// A removal is admissible only while `1 - h` stays above this guard.
pub const REMOVAL_GUARD: f64 = 1e-10;

/// Relative singular-value floor below which a matrix is rank deficient.
pub const RANK_TOLERANCE: f64 = 1e-10;

/// Largest accepted condition number of an information matrix.
pub const MAX_CONDITION: f64 = 1e12;

/// Number of downdates after which the inverse is recomputed from scratch.
pub const REFRESH_INTERVAL: usize = 128;

/// Thin singular value decomposition `X = U diag(D) Vᵀ` of a tall matrix.
#[derive(Debug, Clone)]
pub struct ThinSvd {
    /// `n × p`, orthonormal columns.
    pub u: Matrix,
    /// Singular values, descending.
    pub singular_values: Vector,
    /// `p × p` orthogonal.
    pub v: Matrix,
}

impl ThinSvd {
    pub fn reconstruct(&self) -> Matrix {
        let mut ud = self.u.clone();
        for (j, s) in self.singular_values.iter().enumerate() {
            ud.column_mut(j).scale_mut(*s);
        }
        ud * self.v.transpose()
    }
}

/// Thin SVD of a tall, full-column-rank matrix.
///
/// Computed as a Householder QR followed by an SVD of the small `R` factor,
/// so the cost is linear in the number of rows.
pub fn thin_svd(x: &Matrix) -> Result<ThinSvd> {
    let (n, p) = x.shape();
    if n < p || p == 0 {
        return Err(Error::InvalidInput(format!(
            "thin SVD needs rows >= cols >= 1, got {n}x{p}"
        )));
    }
    ensure_finite(x)?;

    let qr = x.clone().qr();
    let q = qr.q();
    let r = qr.r();
    let svd = r.svd(true, true);
    let ur = svd.u.expect("requested U");
    let vt = svd.v_t.expect("requested V^T");

    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));

    let singular_values = Vector::from_iterator(p, order.iter().map(|&j| svd.singular_values[j]));
    let largest = singular_values[0];
    let smallest = singular_values[p - 1];
    let ratio = if largest > 0.0 {
        smallest / largest
    } else {
        0.0
    };
    if ratio <= RANK_TOLERANCE {
        return Err(Error::RankDeficient { ratio });
    }

    let ur_sorted = Matrix::from_fn(p, p, |i, j| ur[(i, order[j])]);
    let v = Matrix::from_fn(p, p, |i, j| vt[(order[j], i)]);
    let u = q * ur_sorted;

    Ok(ThinSvd {
        u,
        singular_values,
        v,
    })
}

/// Diagonal of the hat matrix: squared row norms of `U`.
pub fn leverage_scores(svd: &ThinSvd) -> Vector {
    Vector::from_iterator(
        svd.u.nrows(),
        svd.u.row_iter().map(|row| row.norm_squared()),
    )
}

/// `(QᵀQ)⁻¹` together with its trace and the row count of `Q`.
#[derive(Debug, Clone)]
pub struct InverseInfoState {
    inv: Matrix,
    trace: f64,
    n_rows: usize,
    since_refresh: usize,
}

impl InverseInfoState {
    pub fn inv(&self) -> &Matrix {
        &self.inv
    }

    pub fn trace(&self) -> f64 {
        self.trace
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn dim(&self) -> usize {
        self.inv.nrows()
    }

    /// True once enough downdates have accumulated that the inverse should
    /// be rebuilt from the surviving rows.
    pub fn needs_refresh(&self) -> bool {
        self.since_refresh >= REFRESH_INTERVAL
    }

    /// Trace of the downdated inverse after removing `x`, or `None` when
    /// the removal would make the information matrix singular.
    ///
    /// Allocation-free variant of [`removal_score`] for the inner loop of
    /// the greedy pruner; `z` is scratch space of length `p`.
    pub fn removal_trace(&self, x: DVectorView<'_, f64>, z: &mut Vector) -> Option<f64> {
        z.gemv(1.0, &self.inv, &x, 0.0);
        let h = x.dot(z);
        let denom = 1.0 - h;
        if denom < REMOVAL_GUARD {
            return None;
        }
        Some(self.trace + z.norm_squared() / denom)
    }
}

/// Score of removing one row: the trace and the full inverse after removal.
#[derive(Debug, Clone)]
pub struct RemovalScore {
    pub row_index: usize,
    pub score: f64,
    pub downdated_inv: Matrix,
}

/// Builds `(QᵀQ)⁻¹` for a tall matrix `Q`.
pub fn inverse_info(q: &Matrix) -> Result<InverseInfoState> {
    let (n, p) = q.shape();
    if n <= p || p == 0 {
        return Err(Error::InvalidInput(format!(
            "information matrix needs rows > cols >= 1, got {n}x{p}"
        )));
    }
    ensure_finite(q)?;
    let gram = q.tr_mul(q);
    let inv = invert_spd(&gram)?;
    let trace = inv.trace();
    Ok(InverseInfoState {
        inv,
        trace,
        n_rows: n,
        since_refresh: 0,
    })
}

/// Inverse of a symmetric positive definite matrix, rejecting matrices whose
/// condition number reaches [`MAX_CONDITION`].
pub(crate) fn invert_spd(gram: &Matrix) -> Result<Matrix> {
    let eig = SymmetricEigen::new(gram.clone());
    let max = eig.eigenvalues.max();
    let min = eig.eigenvalues.min();
    let condition = if min > 0.0 { max / min } else { f64::INFINITY };
    if !(condition < MAX_CONDITION) {
        return Err(Error::SingularInformation { condition });
    }
    let chol = gram
        .clone()
        .cholesky()
        .ok_or(Error::SingularInformation { condition })?;
    let mut inv = chol.inverse();
    symmetrize(&mut inv);
    Ok(inv)
}

/// Scores the removal of row `x` (at position `row_index` of `Q`).
pub fn removal_score(
    state: &InverseInfoState,
    row_index: usize,
    x: DVectorView<'_, f64>,
) -> Result<RemovalScore> {
    if x.len() != state.dim() {
        return Err(Error::DimensionMismatch(format!(
            "row has {} entries, information matrix is {}x{}",
            x.len(),
            state.dim(),
            state.dim()
        )));
    }
    let z = &state.inv * x;
    let h = x.dot(&z);
    let denom = 1.0 - h;
    if denom < REMOVAL_GUARD {
        return Err(Error::DegenerateRemoval {
            row: row_index,
            leverage: h,
        });
    }
    let score = state.trace + z.norm_squared() / denom;
    let mut downdated_inv = &state.inv + (&z * z.transpose()) / denom;
    symmetrize(&mut downdated_inv);
    Ok(RemovalScore {
        row_index,
        score,
        downdated_inv,
    })
}

/// Commits a scored removal.
pub fn apply_removal(state: InverseInfoState, chosen: RemovalScore) -> InverseInfoState {
    InverseInfoState {
        inv: chosen.downdated_inv,
        trace: chosen.score,
        n_rows: state.n_rows.saturating_sub(1),
        since_refresh: state.since_refresh + 1,
    }
}

fn symmetrize(m: &mut Matrix) {
    let n = m.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = avg;
            m[(j, i)] = avg;
        }
    }
}

pub(crate) fn ensure_finite(m: &Matrix) -> Result<()> {
    if m.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::InvalidInput(
            "matrix contains non-finite entries".into(),
        ))
    }
}

/// Rows of `m` at `indices`, in the given order.
pub fn select_rows(m: &Matrix, indices: &[usize]) -> Matrix {
    Matrix::from_fn(indices.len(), m.ncols(), |i, j| m[(indices[i], j)])
}

/// Columns of `m` at `indices`, in the given order.
pub fn select_cols(m: &Matrix, indices: &[usize]) -> Matrix {
    Matrix::from_fn(m.nrows(), indices.len(), |i, j| m[(i, indices[j])])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize, p: usize) -> Matrix {
        Matrix::from_fn(n, p, |_, _| rng.sample(StandardNormal))
    }

    fn rel_frobenius(a: &Matrix, b: &Matrix) -> f64 {
        (a - b).norm() / b.norm()
    }

    fn without_row(q: &Matrix, row: usize) -> Matrix {
        let keep: Vec<usize> = (0..q.nrows()).filter(|&i| i != row).collect();
        select_rows(q, &keep)
    }

    #[test]
    fn svd_of_identity() {
        let svd = thin_svd(&Matrix::identity(2, 2)).unwrap();
        assert_relative_eq!(svd.singular_values[0], 1.0, epsilon = 1e-14);
        assert_relative_eq!(svd.singular_values[1], 1.0, epsilon = 1e-14);
        assert_relative_eq!(svd.reconstruct(), Matrix::identity(2, 2), epsilon = 1e-14);
        assert_relative_eq!(
            (svd.u.transpose() * &svd.u),
            Matrix::identity(2, 2),
            epsilon = 1e-14
        );
    }

    #[test]
    fn svd_of_diagonal_is_sorted() {
        let x = Matrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 3.0]);
        let svd = thin_svd(&x).unwrap();
        assert_relative_eq!(svd.singular_values[0], 3.0, epsilon = 1e-14);
        assert_relative_eq!(svd.singular_values[1], 2.0, epsilon = 1e-14);
    }

    #[test]
    fn svd_reconstructs_random_tall_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let x = random_matrix(&mut rng, 50, 3);
        let svd = thin_svd(&x).unwrap();
        assert!(rel_frobenius(&svd.reconstruct(), &x) <= 1e-8);
        let utu = svd.u.transpose() * &svd.u;
        assert!((utu - Matrix::identity(3, 3)).amax() <= 1e-8);
        assert!(svd.singular_values[0] >= svd.singular_values[1]);
        assert!(svd.singular_values[1] >= svd.singular_values[2]);
    }

    #[test]
    fn svd_rejects_collinear_columns() {
        let x = Matrix::from_row_slice(3, 2, &[1.0, 2.0, 2.0, 4.0, 3.0, 6.0]);
        assert!(matches!(thin_svd(&x), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn leverage_of_orthonormal_rows() {
        let svd = ThinSvd {
            u: Matrix::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 1.0, 0.0, 0.0]),
            singular_values: Vector::from_vec(vec![1.0, 1.0]),
            v: Matrix::identity(2, 2),
        };
        let h = leverage_scores(&svd);
        assert_eq!(h.as_slice(), &[1.0, 1.0, 0.0]);

        let svd = thin_svd(&Matrix::identity(2, 2)).unwrap();
        let h = leverage_scores(&svd);
        assert_relative_eq!(h[0], 1.0, epsilon = 1e-14);
        assert_relative_eq!(h[1], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn leverage_matches_hat_matrix_diagonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = random_matrix(&mut rng, 20, 3);
        // Hat matrix formed directly from the normal equations.
        let hat = &x * (x.transpose() * &x).try_inverse().unwrap() * x.transpose();
        let h = leverage_scores(&thin_svd(&x).unwrap());
        for i in 0..20 {
            assert!((h[i] - hat[(i, i)]).abs() <= 1e-10);
        }
        assert!((h.sum() - 3.0).abs() <= 1e-8);
    }

    #[test]
    fn inverse_info_of_stacked_identity() {
        let q = Matrix::from_row_slice(4, 2, &[1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 1.0]);
        let state = inverse_info(&q).unwrap();
        assert_relative_eq!(
            state.inv(),
            &Matrix::from_diagonal_element(2, 2, 0.5),
            epsilon = 1e-14
        );
        assert_relative_eq!(state.trace(), 1.0, epsilon = 1e-14);
        assert_eq!(state.n_rows(), 4);
    }

    #[test]
    fn inverse_info_of_three_rows() {
        let q = Matrix::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 1.0, 1.0, 1.0]);
        let state = inverse_info(&q).unwrap();
        let expected = Matrix::from_row_slice(2, 2, &[2.0, -1.0, -1.0, 2.0]) / 3.0;
        assert_relative_eq!(state.inv(), &expected, epsilon = 1e-14);
        assert_relative_eq!(state.trace(), 4.0 / 3.0, epsilon = 1e-14);
    }

    #[test]
    fn inverse_info_rejects_duplicate_columns() {
        let q = Matrix::from_row_slice(4, 2, &[1.0, 1.0, 2.0, 2.0, 3.0, 3.0, -1.0, -1.0]);
        assert!(matches!(
            inverse_info(&q),
            Err(Error::SingularInformation { .. })
        ));
    }

    #[test]
    fn removal_score_worked_example() {
        let q = Matrix::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 1.0, 1.0, 1.0]);
        let state = inverse_info(&q).unwrap();
        let x = Vector::from_vec(vec![1.0, 1.0]);
        let scored = removal_score(&state, 2, x.as_view()).unwrap();
        assert_relative_eq!(scored.score, 2.0, epsilon = 1e-14);
        assert_relative_eq!(
            scored.downdated_inv,
            Matrix::identity(2, 2),
            epsilon = 1e-14
        );

        let next = apply_removal(state, scored);
        assert_relative_eq!(next.trace(), 2.0, epsilon = 1e-14);
        assert_eq!(next.n_rows(), 2);
    }

    #[test]
    fn removing_zero_row_changes_nothing() {
        let q = Matrix::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 1.0, 1.0, 1.0]);
        let state = inverse_info(&q).unwrap();
        let zero = Vector::zeros(2);
        let scored = removal_score(&state, 0, zero.as_view()).unwrap();
        assert_eq!(scored.score, state.trace());
        assert_eq!(&scored.downdated_inv, state.inv());
        let before = state.inv().clone();
        let next = apply_removal(state, scored);
        assert_eq!(next.inv(), &before);
        assert_eq!(next.n_rows(), 2);
    }

    #[test]
    fn removing_sole_support_is_degenerate() {
        let state = inverse_info(&Matrix::from_row_slice(
            3,
            2,
            &[1.0, 0.0, 0.0, 1.0, 0.0, 1.0],
        ))
        .unwrap();
        let x = Vector::from_vec(vec![1.0, 0.0]);
        assert!(matches!(
            removal_score(&state, 0, x.as_view()),
            Err(Error::DegenerateRemoval { .. })
        ));
        let mut z = Vector::zeros(2);
        assert!(state.removal_trace(x.as_view(), &mut z).is_none());
    }

    #[test]
    fn chained_removals_match_direct_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let q = random_matrix(&mut rng, 30, 3);
        let mut state = inverse_info(&q).unwrap();
        let mut alive: Vec<usize> = (0..30).collect();
        for _ in 0..20 {
            let pos = rng.gen_range(0..alive.len());
            let row = alive[pos];
            let x = q.row(row).transpose();
            let scored = removal_score(&state, row, x.as_view()).unwrap();
            state = apply_removal(state, scored);
            alive.remove(pos);
        }
        let direct = (select_rows(&q, &alive).tr_mul(&select_rows(&q, &alive)))
            .try_inverse()
            .unwrap();
        assert!(rel_frobenius(state.inv(), &direct) <= 1e-8);
        assert_eq!(state.n_rows(), 10);
    }

    #[test]
    fn chained_drift_over_fifty_removals() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let q = random_matrix(&mut rng, 200, 7);
        let mut state = inverse_info(&q).unwrap();
        let mut alive: Vec<usize> = (0..200).collect();
        for _ in 0..50 {
            let pos = rng.gen_range(0..alive.len());
            let x = q.row(alive[pos]).transpose();
            state = apply_removal(
                state.clone(),
                removal_score(&state, pos, x.as_view()).unwrap(),
            );
            alive.remove(pos);
        }
        let survivors = select_rows(&q, &alive);
        let direct = survivors.tr_mul(&survivors).try_inverse().unwrap();
        assert!(rel_frobenius(state.inv(), &direct) <= 1e-6);
        assert!((state.trace() - state.inv().trace()).abs() <= 1e-12 * state.trace());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn downdate_matches_reinversion(seed in any::<u64>(), n in 9usize..40, p in 2usize..7, pick in any::<prop::sample::Index>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let q = random_matrix(&mut rng, n, p);
            let state = inverse_info(&q).unwrap();
            let row = pick.index(n);
            let x = q.row(row).transpose();
            let scored = removal_score(&state, row, x.as_view()).unwrap();
            let rest = without_row(&q, row);
            let direct = rest.tr_mul(&rest).try_inverse().unwrap();
            prop_assert!(rel_frobenius(&scored.downdated_inv, &direct) <= 1e-8);
            prop_assert!(scored.score > state.trace());

            let mut z = Vector::zeros(p);
            let fast = state.removal_trace(x.as_view(), &mut z).unwrap();
            prop_assert!((fast - scored.score).abs() <= 1e-12 * scored.score);
        }

        #[test]
        fn leverages_bounded_and_sum_to_rank(seed in any::<u64>(), n in 5usize..60, p in 1usize..5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = random_matrix(&mut rng, n, p);
            let h = leverage_scores(&thin_svd(&x).unwrap());
            prop_assert!(h.iter().all(|&v| (-1e-12..=1.0 + 1e-12).contains(&v)));
            prop_assert!((h.sum() - p as f64).abs() <= 1e-8);
        }
    }
}
