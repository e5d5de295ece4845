//! Single-threaded selection timings on Case 1 data.
//!
//!     cargo run --release --example timing

use aopt_subdata::evalkit::bench_timing;
use aopt_subdata::subselect::Algorithm;

fn main() -> aopt_subdata::Result<()> {
    let algorithms = [Algorithm::Levss, Algorithm::Alg1, Algorithm::Alg2];
    let table = bench_timing(10_000, 7, &[300, 500, 700, 1000], &algorithms, 5, 10, 1)?;
    table.write_csv(std::io::stdout())?;
    Ok(())
}
