//! Scoring row removals with rank-one downdates instead of re-inverting.
//!
//!     cargo run --release --example downdate

use aopt_subdata::linalg::{apply_removal, inverse_info, removal_score, Matrix};
use aopt_subdata::simgen::{gen_covariates, CaseSpec, CovariateCase};

fn main() -> aopt_subdata::Result<()> {
    let q = gen_covariates(&CaseSpec::new(CovariateCase::StudentT1, 40, 5))?;
    let state = inverse_info(&q)?;
    println!("tr (QᵀQ)⁻¹ = {:.6}", state.trace());

    // Score every candidate, then check the cheapest one against a direct inverse.
    let mut scores = Vec::new();
    for i in 0..q.nrows() {
        scores.push(removal_score(&state, i, q.row(i).transpose().as_view())?);
    }
    let best = scores
        .into_iter()
        .min_by(|a, b| a.score.total_cmp(&b.score))
        .expect("non-empty");
    println!(
        "cheapest removal: row {} -> {:.6}",
        best.row_index, best.score
    );

    let kept: Vec<usize> = (0..q.nrows()).filter(|&i| i != best.row_index).collect();
    let direct = inverse_info(&Matrix::from_fn(kept.len(), q.ncols(), |r, c| {
        q[(kept[r], c)]
    }))?;
    println!("direct re-inversion:      {:.6}", direct.trace());

    let next = apply_removal(state, best);
    let drift = (next.inv() - direct.inv()).amax();
    println!("max |Δ| between inverses: {drift:.2e}");
    Ok(())
}
