//! Subdata selection: the leverage baseline, the two elimination-plus-prune
//! algorithms and a uniform random baseline.
//!
//! All algorithms work on a copy of `X` scaled column-wise to `[-1, 1]`;
//! returned indices always refer to rows of the original data.

mod elimination;
mod greedy;
mod levss;

use std::io::Write;
use std::path::Path;
use std::time::{Duration, Instant};

use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

pub use elimination::{
    alg2_scores, eliminate_alg1, eliminate_alg2, Alg2Weighting, EliminationPool,
};
pub use greedy::greedy_a_prune;
pub use levss::levss_select;

use crate::error::{Error, Result};
use crate::linalg::{inverse_info, select_cols, select_rows, Matrix};
use crate::preprocess::ScaleMap;
use crate::seed::rng_from_seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Levss,
    Alg1,
    Alg2,
    Random,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Levss,
        Algorithm::Alg1,
        Algorithm::Alg2,
        Algorithm::Random,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Levss => "levss",
            Algorithm::Alg1 => "alg1",
            Algorithm::Alg2 => "alg2",
            Algorithm::Random => "random",
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::InvalidInput(format!(
                    "unknown algorithm '{s}' (expected levss, alg1, alg2 or random)"
                ))
            })
    }
}

/// Parameters of one selection run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionConfig {
    pub algorithm: Algorithm,
    pub k: usize,
    /// Leverage rounds for the baseline and the first elimination step.
    pub t_rounds: usize,
    /// Pool size as a multiple of `k` before greedy pruning.
    pub pool_multiplier: f64,
    pub seed: u64,
    pub alg2_weighting: Alg2Weighting,
}

impl SelectionConfig {
    pub fn new(algorithm: Algorithm, k: usize) -> Self {
        Self {
            algorithm,
            k,
            t_rounds: 10,
            pool_multiplier: 2.0,
            seed: 0,
            alg2_weighting: Alg2Weighting::default(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn pool_size(&self) -> usize {
        (self.pool_multiplier * self.k as f64).ceil() as usize
    }
}

/// Rows chosen by one selection run.
#[derive(Debug, Clone)]
pub struct SelectionResult {
    /// Original row indices, ascending.
    pub indices: Vec<usize>,
    pub algorithm: Algorithm,
    /// Elimination pool (empty for the baselines).
    pub pool: Vec<usize>,
    /// Rows dropped by greedy pruning, in removal order.
    pub removed: Vec<usize>,
    /// Trace of the inverse information matrix after each removal.
    pub trace_trajectory: Vec<f64>,
    pub elapsed: Duration,
}

/// JSON form of a [`SelectionResult`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SelectionReport {
    pub algorithm: Algorithm,
    pub k: usize,
    pub elapsed_seconds: f64,
    pub final_trace: Option<f64>,
    pub trace_trajectory: Vec<f64>,
}

impl SelectionResult {
    pub fn report(&self) -> SelectionReport {
        SelectionReport {
            algorithm: self.algorithm,
            k: self.indices.len(),
            elapsed_seconds: self.elapsed.as_secs_f64(),
            final_trace: self.trace_trajectory.last().copied(),
            trace_trajectory: self.trace_trajectory.clone(),
        }
    }

    /// One row index per line.
    pub fn write_indices<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for i in &self.indices {
            writeln!(w, "{i}")?;
        }
        w.flush()
    }

    pub fn save_indices(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        self.write_indices(std::io::BufWriter::new(file))
            .map_err(|e| Error::io(path, e))
    }
}

/// Scales `x` to `[-1, 1]` and drops constant columns.
pub fn scaled_design(x: &Matrix) -> Result<Matrix> {
    let map = ScaleMap::fit(x);
    let scaled = map.apply(x)?;
    let informative = map.informative_columns();
    if informative.is_empty() {
        return Err(Error::InvalidInput(
            "every covariate column is constant".into(),
        ));
    }
    if informative.len() == x.ncols() {
        Ok(scaled)
    } else {
        Ok(select_cols(&scaled, &informative))
    }
}

/// Selects `config.k` rows of `x`.
pub fn select_subdata(x: &Matrix, config: &SelectionConfig) -> Result<SelectionResult> {
    let start = Instant::now();
    let (n, p) = x.shape();
    let k = config.k;
    if k <= p {
        return Err(Error::InvalidInput(format!(
            "subdata size k={k} must exceed the number of covariates p={p}"
        )));
    }
    if k > n {
        return Err(Error::InvalidInput(format!(
            "subdata size k={k} exceeds the {n} available rows"
        )));
    }
    if !(config.pool_multiplier >= 1.1) || !config.pool_multiplier.is_finite() {
        return Err(Error::InvalidInput(format!(
            "pool multiplier must be at least 1.1, got {}",
            config.pool_multiplier
        )));
    }

    let mut result = match config.algorithm {
        Algorithm::Random => {
            let mut rng = rng_from_seed(config.seed);
            let mut indices = sample(&mut rng, n, k).into_vec();
            indices.sort_unstable();
            plain_result(indices, Algorithm::Random)
        }
        Algorithm::Levss => {
            let xs = scaled_design(x)?;
            plain_result(levss_select(&xs, k, config.t_rounds)?, Algorithm::Levss)
        }
        Algorithm::Alg1 => {
            let xs = scaled_design(x)?;
            let pool = eliminate_alg1(&xs, config.pool_size(), config.t_rounds, config.seed)?;
            greedy_a_prune(&pool, k, Algorithm::Alg1)?
        }
        Algorithm::Alg2 => {
            let xs = scaled_design(x)?;
            let pool = eliminate_alg2(&xs, config.pool_size(), config.alg2_weighting)?;
            greedy_a_prune(&pool, k, Algorithm::Alg2)?
        }
    };
    result.elapsed = start.elapsed();
    Ok(result)
}

fn plain_result(indices: Vec<usize>, algorithm: Algorithm) -> SelectionResult {
    SelectionResult {
        indices,
        algorithm,
        pool: Vec::new(),
        removed: Vec::new(),
        trace_trajectory: Vec::new(),
        elapsed: Duration::ZERO,
    }
}

/// A-optimality criterion of a subset: trace of `(QᵀQ)⁻¹` where `Q` holds
/// the rows at `indices` of the scaled design of `x`.
pub fn subdata_trace(x: &Matrix, indices: &[usize]) -> Result<f64> {
    let xs = scaled_design(x)?;
    Ok(inverse_info(&select_rows(&xs, indices))?.trace())
}
