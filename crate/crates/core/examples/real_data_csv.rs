//! Selecting subdata from a CSV file and reporting the fitted model in the
//! original units.
//!
//!     cargo run --release --example real_data_csv -- data.csv response-column
//!
//! Without arguments a lognormal dataset is generated in a temporary file.

use std::path::PathBuf;

use aopt_subdata::modelsel::{fit_model, SearchMethod};
use aopt_subdata::preprocess::{centralize, load_csv, save_csv, DataMatrix};
use aopt_subdata::simgen::{gen_covariates, gen_response, gen_true_model, CaseSpec, CovariateCase};
use aopt_subdata::subselect::{select_subdata, Algorithm, SelectionConfig};

fn main() -> aopt_subdata::Result<()> {
    let mut args = std::env::args().skip(1);
    let (path, response) = match (args.next(), args.next()) {
        (Some(p), Some(r)) => (PathBuf::from(p), r),
        _ => {
            let path = std::env::temp_dir().join("aopt_subdata_demo.csv");
            let x = gen_covariates(&CaseSpec::new(CovariateCase::LogNormal2, 20_000, 8))?;
            let (y, _) = gen_response(&x, &gen_true_model(7, 9), 10)?;
            save_csv(&path, &DataMatrix::unnamed(x, Some(y))?, "y")?;
            (path, "y".to_string())
        }
    };

    let data = load_csv(&path, Some(&response))?;
    println!(
        "{}: {} rows, {} covariates",
        path.display(),
        data.n_rows(),
        data.n_cols()
    );

    let selection = select_subdata(&data.x, &SelectionConfig::new(Algorithm::Alg2, 500))?;
    println!(
        "ALG2 kept {} rows in {:.3}s",
        selection.indices.len(),
        selection.elapsed.as_secs_f64()
    );

    let (centered, center) = centralize(&data)?;
    let sub = centered.subset(&selection.indices);
    let chosen = SearchMethod::AllSubset.run(&sub)?.selected;
    let fit = fit_model(&sub, chosen)?.with_intercept(&center)?;
    println!("selected model {chosen}");
    println!("  intercept {:.4}", fit.intercept);
    for (j, b) in fit.model.indices().iter().zip(&fit.beta) {
        println!("  {:<8} {b:.4}", data.column_names[*j]);
    }
    Ok(())
}
