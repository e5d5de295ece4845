//! Synthetic regression data: six covariate distributions and a sparse
//! linear response.

use nalgebra::Cholesky;
use rand::Rng;
use rand_distr::{ChiSquared, Distribution, Normal, StandardNormal, Uniform};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::modelsel::ModelId;
use crate::seed::rng_from_seed;

/// `Σ1[i][j] = 0.5^|i-j|`.
pub fn covariance_sigma1(p: usize) -> Matrix {
    Matrix::from_fn(p, p, |i, j| 0.5f64.powi(i.abs_diff(j) as i32))
}

/// `Σ2[i][j] = 0.5` off the diagonal, 1 on it.
pub fn covariance_sigma2(p: usize) -> Matrix {
    Matrix::from_fn(p, p, |i, j| if i == j { 1.0 } else { 0.5 })
}

/// Covariate distribution of a simulation case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum CovariateCase {
    /// `N(0, Σ1)`
    Normal1 = 1,
    /// `N(0, Σ2)`
    Normal2 = 2,
    /// Equal mixture of cases 1 and 2, drawn per row.
    Mixture = 3,
    /// Multivariate t with 3 degrees of freedom, scale `Σ1`.
    StudentT1 = 4,
    /// Multivariate t with 3 degrees of freedom, scale `Σ2`.
    StudentT2 = 5,
    /// Componentwise `exp` of `N(0, Σ2)`.
    LogNormal2 = 6,
}

impl CovariateCase {
    pub const ALL: [CovariateCase; 6] = [
        CovariateCase::Normal1,
        CovariateCase::Normal2,
        CovariateCase::Mixture,
        CovariateCase::StudentT1,
        CovariateCase::StudentT2,
        CovariateCase::LogNormal2,
    ];

    pub fn id(self) -> u8 {
        self as u8
    }
}

impl TryFrom<u8> for CovariateCase {
    type Error = Error;

    fn try_from(id: u8) -> Result<Self> {
        CovariateCase::ALL
            .into_iter()
            .find(|c| c.id() == id)
            .ok_or_else(|| Error::InvalidInput(format!("unknown case {id}; valid cases are 1-6")))
    }
}

impl From<CovariateCase> for u8 {
    fn from(c: CovariateCase) -> u8 {
        c.id()
    }
}

impl std::fmt::Display for CovariateCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseSpec {
    pub case: CovariateCase,
    pub n: usize,
    pub p: usize,
    pub seed: u64,
}

impl CaseSpec {
    pub fn new(case: CovariateCase, n: usize, seed: u64) -> Self {
        Self {
            case,
            n,
            p: 7,
            seed,
        }
    }
}

fn lower_factor(sigma: Matrix) -> Matrix {
    Cholesky::new(sigma)
        .expect("case covariances are positive definite")
        .unpack()
}

/// Draws an `n × p` covariate matrix for `spec.case`.
pub fn gen_covariates(spec: &CaseSpec) -> Result<Matrix> {
    if spec.n < 2 || spec.p == 0 {
        return Err(Error::InvalidInput(format!(
            "case spec needs n >= 2 and p >= 1, got n={} p={}",
            spec.n, spec.p
        )));
    }
    let p = spec.p;
    let l1 = lower_factor(covariance_sigma1(p));
    let l2 = lower_factor(covariance_sigma2(p));
    let chi2 = ChiSquared::new(3.0).expect("valid degrees of freedom");
    let mut rng = rng_from_seed(spec.seed);

    let mut x = Matrix::zeros(spec.n, p);
    let mut z = Vector::zeros(p);
    for i in 0..spec.n {
        for v in z.iter_mut() {
            *v = rng.sample(StandardNormal);
        }
        let row = match spec.case {
            CovariateCase::Normal1 => &l1 * &z,
            CovariateCase::Normal2 => &l2 * &z,
            CovariateCase::Mixture => {
                if rng.gen_bool(0.5) {
                    &l1 * &z
                } else {
                    &l2 * &z
                }
            }
            CovariateCase::StudentT1 | CovariateCase::StudentT2 => {
                let l = if spec.case == CovariateCase::StudentT1 {
                    &l1
                } else {
                    &l2
                };
                let w: f64 = chi2.sample(&mut rng);
                (l * &z) / (w / 3.0).sqrt()
            }
            CovariateCase::LogNormal2 => (&l2 * &z).map(f64::exp),
        };
        x.row_mut(i).copy_from(&row.transpose());
    }
    Ok(x)
}

/// True coefficients of the linear model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrueModelSpec {
    pub beta: Vec<f64>,
    pub beta0: f64,
    pub sigma: f64,
    pub active_set: ModelId,
}

impl TrueModelSpec {
    pub fn new(beta: Vec<f64>, beta0: f64, sigma: f64) -> Self {
        let active: Vec<usize> = beta
            .iter()
            .enumerate()
            .filter(|(_, b)| **b != 0.0)
            .map(|(j, _)| j)
            .collect();
        Self {
            beta,
            beta0,
            sigma,
            active_set: ModelId::from_indices(&active),
        }
    }

    /// `μ = β₀ + X β`.
    pub fn mean(&self, x: &Matrix) -> Result<Vector> {
        if x.ncols() < self.beta.len() {
            return Err(Error::DimensionMismatch(format!(
                "model has {} slopes, covariates have {} columns",
                self.beta.len(),
                x.ncols()
            )));
        }
        Ok(Vector::from_fn(x.nrows(), |i, _| {
            self.beta0
                + self
                    .beta
                    .iter()
                    .enumerate()
                    .map(|(j, b)| x[(i, j)] * b)
                    .sum::<f64>()
        }))
    }
}

/// Slopes `β1, β2 ~ U(0.5, 1)`, `β3, β4 ~ U(0.05, 0.1)`, the rest zero;
/// `β0 = 0.25`, `σ = 1`. For `p < 4` the pattern is truncated.
pub fn gen_true_model(p: usize, seed: u64) -> TrueModelSpec {
    let mut rng = rng_from_seed(seed);
    let strong = Uniform::new(0.5, 1.0);
    let weak = Uniform::new(0.05, 0.1);
    let beta = (0..p)
        .map(|j| match j {
            0 | 1 => strong.sample(&mut rng),
            2 | 3 => weak.sample(&mut rng),
            _ => 0.0,
        })
        .collect();
    TrueModelSpec::new(beta, 0.25, 1.0)
}

/// Returns `(y, μ)` with `y = μ + ε`, `ε ~ N(0, σ²)`.
pub fn gen_response(x: &Matrix, spec: &TrueModelSpec, seed: u64) -> Result<(Vector, Vector)> {
    let mu = spec.mean(x)?;
    if spec.sigma == 0.0 {
        return Ok((mu.clone(), mu));
    }
    let noise = Normal::new(0.0, spec.sigma)
        .map_err(|e| Error::InvalidInput(format!("noise scale: {e}")))?;
    let mut rng = rng_from_seed(seed);
    let y = mu.map(|m| m + noise.sample(&mut rng));
    Ok((y, mu))
}

/// Metadata written next to a generated dataset.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratedMeta {
    pub case: CovariateCase,
    pub n: usize,
    pub p: usize,
    pub seed: u64,
    pub covariate_seed: u64,
    pub beta_seed: u64,
    pub noise_seed: u64,
    pub generator: String,
    pub beta0: f64,
    pub beta: Vec<f64>,
    pub sigma: f64,
    pub active_set: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_cov(x: &Matrix) -> Matrix {
        let n = x.nrows() as f64;
        let means: Vec<f64> = x.column_iter().map(|c| c.mean()).collect();
        let mut c = x.clone();
        for (j, mut col) in c.column_iter_mut().enumerate() {
            col.add_scalar_mut(-means[j]);
        }
        c.tr_mul(&c) / (n - 1.0)
    }

    #[test]
    fn covariances_agree_at_p2() {
        let expected = Matrix::from_row_slice(2, 2, &[1.0, 0.5, 0.5, 1.0]);
        assert_eq!(covariance_sigma1(2), expected);
        assert_eq!(covariance_sigma2(2), expected);
    }

    #[test]
    fn covariances_differ_at_p3() {
        assert_eq!(covariance_sigma1(3)[(0, 2)], 0.25);
        assert_eq!(covariance_sigma2(3)[(0, 2)], 0.5);
        for p in 1..9 {
            assert!(covariance_sigma1(p).diagonal().iter().all(|&d| d == 1.0));
            assert!(covariance_sigma2(p).diagonal().iter().all(|&d| d == 1.0));
        }
    }

    #[test]
    fn case1_sample_covariance() {
        let x = gen_covariates(&CaseSpec {
            case: CovariateCase::Normal1,
            n: 50_000,
            p: 3,
            seed: 1,
        })
        .unwrap();
        assert!((sample_cov(&x) - covariance_sigma1(3)).amax() <= 0.05);
    }

    #[test]
    fn lognormal_is_positive() {
        let x = gen_covariates(&CaseSpec::new(CovariateCase::LogNormal2, 2000, 3)).unwrap();
        assert!(x.iter().all(|&v| v > 0.0));
    }

    #[test]
    fn covariates_are_reproducible() {
        for case in CovariateCase::ALL {
            let spec = CaseSpec::new(case, 100, 9);
            assert_eq!(
                gen_covariates(&spec).unwrap(),
                gen_covariates(&spec).unwrap()
            );
        }
    }

    #[test]
    fn unknown_case_lists_valid_ones() {
        let err = CovariateCase::try_from(9).unwrap_err();
        assert!(err.to_string().contains("1-6"));
    }

    #[test]
    fn true_model_ranges() {
        for seed in 0..50 {
            let m = gen_true_model(7, seed);
            assert!(m.beta[..2].iter().all(|b| (0.5..=1.0).contains(b)));
            assert!(m.beta[2..4].iter().all(|b| (0.05..=0.1).contains(b)));
            assert!(m.beta[4..].iter().all(|&b| b == 0.0));
            assert_eq!(m.active_set, ModelId::from_indices(&[0, 1, 2, 3]));
            assert_eq!(m.beta0, 0.25);
            assert_eq!(m.sigma, 1.0);
        }
        assert_eq!(gen_true_model(7, 3), gen_true_model(7, 3));
    }

    #[test]
    fn noiseless_response_equals_mean() {
        let x = gen_covariates(&CaseSpec::new(CovariateCase::Normal2, 50, 1)).unwrap();
        let mut m = gen_true_model(7, 2);
        m.sigma = 0.0;
        let (y, mu) = gen_response(&x, &m, 3).unwrap();
        assert_eq!(y, mu);
    }

    #[test]
    fn zero_slopes_give_constant_mean() {
        let x = gen_covariates(&CaseSpec::new(CovariateCase::Normal1, 20, 1)).unwrap();
        let m = TrueModelSpec::new(vec![0.0; 7], 0.25, 1.0);
        let (_, mu) = gen_response(&x, &m, 3).unwrap();
        assert!(mu.iter().all(|&v| v == 0.25));
        assert!(m.active_set.is_empty());
    }

    #[test]
    fn noise_variance_matches_sigma() {
        let x = gen_covariates(&CaseSpec::new(CovariateCase::Normal1, 100_000, 4)).unwrap();
        let m = gen_true_model(7, 5);
        let (y, mu) = gen_response(&x, &m, 6).unwrap();
        let e = y - mu;
        let mean = e.mean();
        let var = e.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (e.len() as f64 - 1.0);
        assert!((var - 1.0).abs() <= 0.05);
    }
}
