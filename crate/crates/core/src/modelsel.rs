//! Least-squares fitting and BIC model selection over predictor subsets.
//!
//! Models are fitted without an intercept on centralized data; the
//! intercept is recovered afterwards from the full-data means.

use std::cmp::Ordering;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{select_cols, Matrix, Vector, MAX_CONDITION};
use crate::preprocess::{CenterMap, DataMatrix};

/// Largest predictor count accepted by [`all_subset_bic`].
pub const MAX_ALL_SUBSET_PREDICTORS: usize = 20;

/// Residual sums of squares at or below this are a perfect fit.
pub const PERFECT_FIT_RSS: f64 = 1e-300;

/// Residuals this small relative to `‖y‖²` are rounding noise of an exact
/// fit and are reported as zero.
const EXACT_FIT_RELATIVE: f64 = 1e-20;

/// A candidate model: a set of predictor columns, stored as a bitmask over
/// zero-based column indices. Displayed one-based, e.g. `{1,2,3,4}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ModelId(u64);

impl ModelId {
    pub const fn empty() -> Self {
        ModelId(0)
    }

    pub const fn from_mask(mask: u64) -> Self {
        ModelId(mask)
    }

    /// Panics if an index is 64 or more.
    pub fn from_indices(indices: &[usize]) -> Self {
        ModelId(indices.iter().fold(0, |m, &j| {
            assert!(j < 64, "predictor index {j} out of range");
            m | (1 << j)
        }))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn indices(self) -> Vec<usize> {
        (0..64).filter(|&j| self.contains(j)).collect()
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, j: usize) -> bool {
        j < 64 && self.0 & (1 << j) != 0
    }

    pub fn with(self, j: usize) -> Self {
        ModelId(self.0 | (1 << j))
    }

    /// Preference among equally scored models: fewer predictors first,
    /// then lexicographic order of the sorted index lists.
    pub fn tie_order(self, other: Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.indices().cmp(&other.indices()))
    }
}

impl std::fmt::Display for ModelId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.indices().iter().map(|j| (j + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// One fitted candidate model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub model: ModelId,
    /// Slopes in ascending column order of `model`.
    pub beta: Vec<f64>,
    /// Zero until [`FitResult::with_intercept`] is applied.
    pub intercept: f64,
    pub rss: f64,
    pub bic: f64,
    pub n_used: usize,
}

impl FitResult {
    /// Sets the adjusted intercept `ȳ - x̄ᵀβ̂` from full-data means.
    pub fn with_intercept(mut self, center: &CenterMap) -> Result<Self> {
        let y_mean = center
            .y_mean
            .ok_or_else(|| Error::InvalidInput("center map has no response mean".into()))?;
        let x_means = center.x_means_for(&self.model.indices());
        self.intercept = adjusted_intercept(y_mean, &x_means, &self.beta);
        Ok(self)
    }

    /// Predictions `β̂₀ + x_iᵀβ̂` for every row of `x` (full column layout).
    pub fn predict(&self, x: &Matrix) -> Result<Vector> {
        let cols = self.model.indices();
        if let Some(&last) = cols.last() {
            if last >= x.ncols() {
                return Err(Error::DimensionMismatch(format!(
                    "model uses column {} but data has {} columns",
                    last + 1,
                    x.ncols()
                )));
            }
        }
        Ok(Vector::from_fn(x.nrows(), |i, _| {
            self.intercept
                + cols
                    .iter()
                    .zip(&self.beta)
                    .map(|(&j, b)| x[(i, j)] * b)
                    .sum::<f64>()
        }))
    }
}

/// Least squares `min ‖y - X β‖²` via Householder QR.
pub fn ols_fit(xr: &Matrix, y: &Vector) -> Result<(Vector, f64)> {
    let (n, p) = xr.shape();
    if y.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "response has {} entries, design has {n} rows",
            y.len()
        )));
    }
    if n <= p || p == 0 {
        return Err(Error::InvalidInput(format!(
            "least squares needs rows > cols >= 1, got {n}x{p}"
        )));
    }
    let qr = xr.clone().qr();
    let r = qr.r();
    let sv = r.singular_values();
    let (largest, smallest) = (sv.max(), sv.min());
    if !(smallest > 0.0 && largest / smallest < MAX_CONDITION) {
        return Err(Error::RankDeficient {
            ratio: if largest > 0.0 {
                smallest / largest
            } else {
                0.0
            },
        });
    }
    let mut qty = y.clone();
    qr.q_tr_mul(&mut qty);
    let head = qty.rows(0, p).into_owned();
    let beta = r
        .solve_upper_triangular(&head)
        .ok_or(Error::RankDeficient { ratio: 0.0 })?;
    let mut rss = (y - xr * &beta).norm_squared();
    if rss <= EXACT_FIT_RELATIVE * y.norm_squared() {
        rss = 0.0;
    }
    Ok((beta, rss))
}

/// `n·ln(rss/n) + p_r·ln(n)`. A perfect fit scores `-∞`. `p_r = 0` is the
/// intercept-only model.
pub fn bic_score(rss: f64, n: usize, p_r: usize) -> Result<f64> {
    if n <= p_r || n == 0 {
        return Err(Error::InvalidInput(format!(
            "BIC needs n > p_r, got n={n}, p_r={p_r}"
        )));
    }
    if !(rss >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "invalid residual sum of squares {rss}"
        )));
    }
    if rss <= PERFECT_FIT_RSS {
        return Ok(f64::NEG_INFINITY);
    }
    let n_f = n as f64;
    Ok(n_f * (rss / n_f).ln() + p_r as f64 * n_f.ln())
}

pub fn adjusted_intercept(y_mean: f64, x_means: &[f64], beta: &[f64]) -> f64 {
    y_mean - x_means.iter().zip(beta).map(|(m, b)| m * b).sum::<f64>()
}

/// Fits `model` on centralized data `d`. The empty model predicts zero.
pub fn fit_model(d: &DataMatrix, model: ModelId) -> Result<FitResult> {
    let y = d.response()?;
    let n = d.n_rows();
    let cols = model.indices();
    if cols.last().is_some_and(|&j| j >= d.n_cols()) {
        return Err(Error::InvalidInput(format!(
            "model {model} refers to a column beyond {}",
            d.n_cols()
        )));
    }
    let (beta, rss) = if cols.is_empty() {
        (Vec::new(), y.norm_squared())
    } else {
        let (beta, rss) = ols_fit(&select_cols(&d.x, &cols), y)?;
        (beta.as_slice().to_vec(), rss)
    };
    Ok(FitResult {
        model,
        beta,
        intercept: 0.0,
        rss,
        bic: bic_score(rss, n, cols.len())?,
        n_used: n,
    })
}

/// Every model evaluated by a search and the BIC-minimal one.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CandidateSetReport {
    pub fits: Vec<FitResult>,
    pub selected: ModelId,
    /// Candidates skipped because their design was rank deficient.
    pub skipped: Vec<ModelId>,
    /// Accepted additions of a forward search, in order.
    pub path: Vec<ModelId>,
}

impl CandidateSetReport {
    pub fn selected_fit(&self) -> Option<&FitResult> {
        self.fits.iter().find(|f| f.model == self.selected)
    }

    /// Audit table: `model_mask,p_r,rss,bic`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(writer);
        wtr.write_record(["model_mask", "p_r", "rss", "bic"])?;
        for f in &self.fits {
            wtr.write_record([
                f.model.mask().to_string(),
                f.model.len().to_string(),
                f.rss.to_string(),
                f.bic.to_string(),
            ])?;
        }
        wtr.flush().map_err(|e| Error::io("<csv writer>", e))?;
        Ok(())
    }
}

fn better(a: &FitResult, b: &FitResult) -> Ordering {
    a.bic
        .total_cmp(&b.bic)
        .then_with(|| a.model.tie_order(b.model))
}

/// Fits `models` in parallel, splitting off rank-deficient ones.
fn fit_all(d: &DataMatrix, models: Vec<ModelId>) -> Result<(Vec<FitResult>, Vec<ModelId>)> {
    let outcomes: Vec<(ModelId, Result<FitResult>)> = models
        .into_par_iter()
        .map(|m| (m, fit_model(d, m)))
        .collect();
    let mut fits = Vec::with_capacity(outcomes.len());
    let mut skipped = Vec::new();
    for (model, outcome) in outcomes {
        match outcome {
            Ok(fit) => fits.push(fit),
            Err(Error::RankDeficient { .. }) => skipped.push(model),
            Err(e) => return Err(e),
        }
    }
    Ok((fits, skipped))
}

/// Evaluates all `2^p - 1` non-empty predictor subsets.
pub fn all_subset_bic(d: &DataMatrix) -> Result<CandidateSetReport> {
    let p = d.n_cols();
    if p > MAX_ALL_SUBSET_PREDICTORS {
        return Err(Error::TooManyPredictors(p));
    }
    let models = (1..(1u64 << p)).map(ModelId::from_mask).collect();
    let (fits, skipped) = fit_all(d, models)?;
    let selected = fits
        .iter()
        .min_by(|a, b| better(a, b))
        .map(|f| f.model)
        .ok_or_else(|| Error::InvalidInput("no candidate model could be fitted".into()))?;
    Ok(CandidateSetReport {
        fits,
        selected,
        skipped,
        path: Vec::new(),
    })
}

/// Forward selection from the empty model, adding the predictor with the
/// lowest BIC while that strictly improves on the current model.
pub fn forward_bic(d: &DataMatrix) -> Result<CandidateSetReport> {
    let p = d.n_cols();
    if p == 0 || p > 64 {
        return Err(Error::InvalidInput(format!(
            "forward selection supports 1 to 64 predictors, got {p}"
        )));
    }
    let mut current = fit_model(d, ModelId::empty())?;
    let mut fits = vec![current.clone()];
    let mut skipped = Vec::new();
    let mut path = Vec::new();

    loop {
        let candidates: Vec<ModelId> = (0..p)
            .filter(|&j| !current.model.contains(j))
            .map(|j| current.model.with(j))
            .collect();
        if candidates.is_empty() {
            break;
        }
        let (step_fits, step_skipped) = fit_all(d, candidates)?;
        skipped.extend(step_skipped);
        let best = step_fits.iter().min_by(|a, b| better(a, b)).cloned();
        fits.extend(step_fits);
        match best {
            Some(best) if best.bic < current.bic => {
                path.push(best.model);
                current = best;
            }
            _ => break,
        }
    }

    Ok(CandidateSetReport {
        fits,
        selected: current.model,
        skipped,
        path,
    })
}

/// Model search strategy.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMethod {
    #[default]
    AllSubset,
    Forward,
}

impl SearchMethod {
    pub fn run(self, d: &DataMatrix) -> Result<CandidateSetReport> {
        match self {
            SearchMethod::AllSubset => all_subset_bic(d),
            SearchMethod::Forward => forward_bic(d),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SearchMethod::AllSubset => "all-subset",
            SearchMethod::Forward => "forward",
        }
    }
}

impl std::str::FromStr for SearchMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all-subset" => Ok(SearchMethod::AllSubset),
            "forward" => Ok(SearchMethod::Forward),
            other => Err(Error::InvalidInput(format!(
                "unknown search '{other}' (expected all-subset or forward)"
            ))),
        }
    }
}
