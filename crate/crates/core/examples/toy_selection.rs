//! Two-covariate toy problem: where each algorithm puts its subdata.
//!
//!     cargo run --release --example toy_selection
//!
//! Prints the A-optimality trace of every selection and the share of
//! selected rows lying outside the central half of the cloud.

use aopt_subdata::linalg::Matrix;
use aopt_subdata::simgen::{gen_covariates, CaseSpec, CovariateCase};
use aopt_subdata::subselect::{select_subdata, subdata_trace, Algorithm, SelectionConfig};

fn mahalanobis(x: &Matrix) -> Vec<f64> {
    let n = x.nrows() as f64;
    let means: Vec<f64> = x.column_iter().map(|c| c.sum() / n).collect();
    let mut c = x.clone();
    for (j, mut col) in c.column_iter_mut().enumerate() {
        col.add_scalar_mut(-means[j]);
    }
    let inv = (c.tr_mul(&c) / (n - 1.0)).try_inverse().expect("full rank");
    c.row_iter()
        .map(|r| (r.clone_owned() * &inv * r.transpose())[(0, 0)])
        .collect()
}

fn main() -> aopt_subdata::Result<()> {
    let x = gen_covariates(&CaseSpec {
        case: CovariateCase::Normal1,
        n: 1000,
        p: 2,
        seed: 11,
    })?;
    let dist = mahalanobis(&x);
    let mut sorted = dist.clone();
    sorted.sort_by(f64::total_cmp);
    let median = sorted[sorted.len() / 2];

    println!("{:<7} {:>10} {:>14}", "method", "trace", "beyond median");
    for algorithm in Algorithm::ALL {
        let result = select_subdata(&x, &SelectionConfig::new(algorithm, 50).with_seed(3))?;
        let outer = result.indices.iter().filter(|&&i| dist[i] > median).count();
        println!(
            "{:<7} {:>10.5} {:>13.0}%",
            algorithm.name(),
            subdata_trace(&x, &result.indices)?,
            100.0 * outer as f64 / result.indices.len() as f64
        );
    }
    Ok(())
}
