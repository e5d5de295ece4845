//! BIC model search on full data: exhaustive versus forward stepwise.
//!
//!     cargo run --release --example model_selection

use aopt_subdata::modelsel::{all_subset_bic, fit_model, forward_bic};
use aopt_subdata::preprocess::{centralize, DataMatrix};
use aopt_subdata::simgen::{gen_covariates, gen_response, gen_true_model, CaseSpec, CovariateCase};

fn main() -> aopt_subdata::Result<()> {
    let x = gen_covariates(&CaseSpec::new(CovariateCase::Normal2, 10_000, 1))?;
    let truth = gen_true_model(7, 2);
    let (y, _) = gen_response(&x, &truth, 3)?;
    let (data, center) = centralize(&DataMatrix::unnamed(x, Some(y))?)?;

    let exhaustive = all_subset_bic(&data)?;
    let forward = forward_bic(&data)?;
    println!("true model:        {}", truth.active_set);
    println!(
        "all-subset choice: {} ({} fits)",
        exhaustive.selected,
        exhaustive.fits.len()
    );
    println!(
        "forward choice:    {} ({} fits)",
        forward.selected,
        forward.fits.len()
    );
    let path: Vec<String> = forward.path.iter().map(|m| m.to_string()).collect();
    println!("forward path:      {}", path.join(" -> "));

    let fit = fit_model(&data, exhaustive.selected)?.with_intercept(&center)?;
    println!("intercept {:.4} (true {:.4})", fit.intercept, truth.beta0);
    for (j, b) in fit.model.indices().iter().zip(&fit.beta) {
        println!("  beta{} = {b:.4} (true {:.4})", j + 1, truth.beta[*j]);
    }
    Ok(())
}
