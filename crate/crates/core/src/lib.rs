//! A-optimal subdata selection for model selection on large linear
//! regression datasets.
//!
//! The selection algorithms first shrink the full data to a pool of about
//! `2k` rows (by leverage, or by the per-row trace increase), then remove
//! rows one at a time, always the one whose removal increases the trace of
//! the inverse information matrix the least. The pruning never re-inverts
//! the information matrix; it downdates the inverse with the
//! Sherman-Morrison formula.
//!
//! - [`linalg`]: thin SVD, leverage scores, inverse information and the
//!   row-removal downdate
//! - [`preprocess`]: CSV ingestion, `[-1, 1]` scaling, centralization
//! - [`subselect`]: the leverage baseline, both selection algorithms and
//!   uniform random selection
//! - [`modelsel`]: OLS fits, BIC, all-subset and forward search
//! - [`simgen`]: the six synthetic covariate cases and response generation
//! - [`evalkit`]: accuracy, MSPE, replicate sweeps, timing, SVG plots
//! - [`cli`]: the `subsel` command-line front end
//!
//! ```
//! use aopt_subdata::simgen::{gen_covariates, CaseSpec, CovariateCase};
//! use aopt_subdata::subselect::{select_subdata, Algorithm, SelectionConfig};
//!
//! let x = gen_covariates(&CaseSpec::new(CovariateCase::Normal1, 2_000, 1))?;
//! let chosen = select_subdata(&x, &SelectionConfig::new(Algorithm::Alg1, 100))?;
//! assert_eq!(chosen.indices.len(), 100);
//! # Ok::<(), aopt_subdata::Error>(())
//! ```

// `!(a < b)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod evalkit;
pub mod linalg;
pub mod modelsel;
pub mod preprocess;
pub mod seed;
pub mod simgen;
pub mod subselect;

pub use error::{Error, Result};
