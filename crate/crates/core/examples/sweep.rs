//! A reduced replicate sweep with plots.
//!
//!     cargo run --release --example sweep -- [output-dir]
//!
//! Writes summary.csv, outcomes.csv, accuracy.svg and mspe.svg.

use std::fs::File;
use std::path::PathBuf;

use aopt_subdata::evalkit::{render_accuracy_svg, render_mspe_svg, run_sweep, SweepConfig};
use aopt_subdata::simgen::CovariateCase;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "sweep-out".into()),
    );
    std::fs::create_dir_all(&out)?;

    let mut cfg = SweepConfig::simulated(
        vec![CovariateCase::Normal1, CovariateCase::StudentT1],
        10_000,
    );
    cfg.ks = vec![300, 1000];
    cfg.replicates = 10;
    cfg.master_seed = 2024;
    let report = run_sweep(&cfg)?;

    report
        .summary
        .write_csv(File::create(out.join("summary.csv"))?)?;
    report.write_outcomes_csv(File::create(out.join("outcomes.csv"))?)?;
    std::fs::write(
        out.join("accuracy.svg"),
        render_accuracy_svg(&report.summary),
    )?;
    std::fs::write(out.join("mspe.svg"), render_mspe_svg(&report.summary))?;

    for c in &report.summary.cells {
        println!(
            "case {} {:>6} k={:<5} accuracy {:.2}  mspe {:.5}",
            c.case, c.algorithm, c.k, c.accuracy, c.mean_mspe
        );
    }
    println!("results in {}", out.display());
    Ok(())
}
