//! Elimination steps that shrink the full data to a pool before pruning.

use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

use super::levss::levss_rounds;
use crate::error::{Error, Result};
use crate::linalg::{leverage_scores, select_rows, thin_svd, Matrix, ThinSvd, REMOVAL_GUARD};
use crate::seed::rng_from_seed;

/// Rows kept by an elimination step, as original indices (ascending) and
/// the matching rows of the scaled design.
#[derive(Debug, Clone)]
pub struct EliminationPool {
    pub indices: Vec<usize>,
    pub rows: Matrix,
}

impl EliminationPool {
    pub fn new(x: &Matrix, mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        let rows = select_rows(x, &indices);
        Self { indices, rows }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Which vector enters the elimination score of the second algorithm.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Alg2Weighting {
    /// `z = (XᵀX)⁻¹ x = V D⁻² Vᵀ x`, consistent with the trace downdate.
    #[default]
    InverseGram,
    /// `z = V D² Vᵀ x`; kept only for comparison experiments.
    GramSquared,
}

impl std::str::FromStr for Alg2Weighting {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inverse-gram" => Ok(Self::InverseGram),
            "gram-squared" => Ok(Self::GramSquared),
            other => Err(Error::InvalidInput(format!(
                "unknown weighting '{other}' (expected inverse-gram or gram-squared)"
            ))),
        }
    }
}

fn check_pool_size(x: &Matrix, pool_size: usize) -> Result<()> {
    if pool_size > x.nrows() {
        return Err(Error::PoolTooSmall {
            requested: pool_size,
            available: x.nrows(),
        });
    }
    if pool_size <= x.ncols() {
        return Err(Error::InvalidInput(format!(
            "pool of {pool_size} rows cannot support {} columns",
            x.ncols()
        )));
    }
    Ok(())
}

/// Leverage-based elimination. Runs `T` full leverage rounds of
/// `⌈pool_size/T⌉` rows; if that over-selects, a seeded simple random
/// sample of `pool_size` rows is kept.
pub fn eliminate_alg1(
    x_scaled: &Matrix,
    pool_size: usize,
    t_rounds: usize,
    seed: u64,
) -> Result<EliminationPool> {
    check_pool_size(x_scaled, pool_size)?;
    if t_rounds == 0 {
        return Err(Error::InvalidInput("LEVSS needs at least one round".into()));
    }
    let per_round = pool_size.div_ceil(t_rounds);
    let candidates = levss_rounds(x_scaled, &vec![per_round; t_rounds])?;
    let indices = if candidates.len() > pool_size {
        let mut rng = rng_from_seed(seed);
        sample(&mut rng, candidates.len(), pool_size)
            .into_iter()
            .map(|i| candidates[i])
            .collect()
    } else {
        candidates
    };
    Ok(EliminationPool::new(x_scaled, indices))
}

/// Per-row elimination scores `d_i = Σ z_j² / (1 - h_i)`, evaluated from the
/// SVD factors. Rows whose removal would be degenerate score `-∞`.
pub fn alg2_scores(svd: &ThinSvd, weighting: Alg2Weighting) -> Vec<f64> {
    let h = leverage_scores(svd);
    // x_iᵀ = U_i D Vᵀ, so ‖V D^a Vᵀ x_i‖² = Σ_j U_ij² D_j^(2a+2).
    let weights: Vec<f64> = svd
        .singular_values
        .iter()
        .map(|&d| match weighting {
            Alg2Weighting::InverseGram => d.powi(-2),
            Alg2Weighting::GramSquared => d.powi(6),
        })
        .collect();
    svd.u
        .row_iter()
        .zip(h.iter())
        .map(|(u, &hi)| {
            let denom = 1.0 - hi;
            if denom < REMOVAL_GUARD {
                return f64::NEG_INFINITY;
            }
            let sum_z2: f64 = u.iter().zip(&weights).map(|(uij, w)| uij * uij * w).sum();
            sum_z2 / denom
        })
        .collect()
}

/// Keeps the `pool_size` rows with the largest elimination score.
pub fn eliminate_alg2(
    x_scaled: &Matrix,
    pool_size: usize,
    weighting: Alg2Weighting,
) -> Result<EliminationPool> {
    check_pool_size(x_scaled, pool_size)?;
    let scores = alg2_scores(&thin_svd(x_scaled)?, weighting);
    Ok(EliminationPool::new(x_scaled, top_rows(&scores, pool_size)))
}

/// Indices of the `m` largest scores, ties to the lower index.
pub(crate) fn top_rows(scores: &[f64], m: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    let by_score = |a: &usize, b: &usize| scores[*b].total_cmp(&scores[*a]).then(a.cmp(b));
    if m < order.len() {
        order.select_nth_unstable_by(m, by_score);
    }
    order.truncate(m);
    order.sort_by(by_score);
    order
}
