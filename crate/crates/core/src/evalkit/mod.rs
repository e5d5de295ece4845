//! Evaluation: selection accuracy, prediction error, replicate sweeps and
//! timing benchmarks.

mod plot;

use std::collections::HashMap;
use std::io::{Read, Write};
use std::time::Instant;

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use plot::{render_accuracy_svg, render_mspe_svg};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::modelsel::{fit_model, FitResult, ModelId, SearchMethod};
use crate::preprocess::{centralize, DataMatrix};
use crate::seed::{derive_seed, rng_from_seed, Stream};
use crate::simgen::{gen_covariates, gen_response, gen_true_model, CaseSpec, CovariateCase};
use crate::subselect::{select_subdata, Alg2Weighting, Algorithm, SelectionConfig};

/// Result of one (replicate, algorithm, k) evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicateOutcome {
    pub case: String,
    pub replicate: usize,
    pub algorithm: Algorithm,
    pub k: usize,
    pub selected_model: ModelId,
    pub true_model: ModelId,
    pub mspe: f64,
    pub seconds: f64,
}

/// Fraction of outcomes whose selected model equals the true model.
pub fn accuracy(outcomes: &[ReplicateOutcome]) -> Result<f64> {
    if outcomes.is_empty() {
        return Err(Error::InvalidInput(
            "accuracy of an empty outcome list".into(),
        ));
    }
    let hits = outcomes
        .iter()
        .filter(|o| o.selected_model == o.true_model)
        .count();
    Ok(hits as f64 / outcomes.len() as f64)
}

/// Mean squared difference between `test_mu` and the predictions of `fit`.
pub fn mspe(test_mu: &Vector, test_x: &Matrix, fit: &FitResult) -> Result<f64> {
    if test_mu.len() != test_x.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "{} targets for {} test rows",
            test_mu.len(),
            test_x.nrows()
        )));
    }
    if test_mu.is_empty() {
        return Err(Error::InvalidInput("empty test set".into()));
    }
    let pred = fit.predict(test_x)?;
    Ok((test_mu - pred).norm_squared() / test_mu.len() as f64)
}

/// Where replicate datasets come from.
#[derive(Debug, Clone)]
pub enum DataSource {
    /// Fresh synthetic data per replicate and a fresh test draw of `n_test`
    /// rows; MSPE targets the latent mean.
    Simulated {
        cases: Vec<CovariateCase>,
        n: usize,
        p: usize,
        n_test: usize,
    },
    /// A fixed dataset split per replicate into train and test. The true
    /// model is the one selected on the full training split, and MSPE
    /// targets the observed test response.
    Real {
        label: String,
        data: DataMatrix,
        test_fraction: f64,
    },
}

impl DataSource {
    fn n_cols(&self) -> usize {
        match self {
            DataSource::Simulated { p, .. } => *p,
            DataSource::Real { data, .. } => data.n_cols(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub source: DataSource,
    pub algorithms: Vec<Algorithm>,
    pub ks: Vec<usize>,
    pub replicates: usize,
    pub t_rounds: usize,
    pub pool_multiplier: f64,
    pub search: SearchMethod,
    pub master_seed: u64,
    pub alg2_weighting: Alg2Weighting,
}

impl SweepConfig {
    pub fn simulated(cases: Vec<CovariateCase>, n: usize) -> Self {
        Self {
            source: DataSource::Simulated {
                cases,
                n,
                p: 7,
                n_test: 500,
            },
            algorithms: vec![Algorithm::Levss, Algorithm::Alg1, Algorithm::Alg2],
            ks: vec![300, 500, 700, 1000],
            replicates: 100,
            t_rounds: 10,
            pool_multiplier: 2.0,
            search: SearchMethod::AllSubset,
            master_seed: 0,
            alg2_weighting: Alg2Weighting::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        let p = self.source.n_cols();
        if self.algorithms.is_empty() || self.ks.is_empty() || self.replicates == 0 {
            return Err(Error::InvalidInput(
                "sweep needs at least one algorithm, one k and one replicate".into(),
            ));
        }
        if let Some(&k) = self.ks.iter().find(|&&k| k <= p) {
            return Err(Error::InvalidInput(format!(
                "subdata size k={k} must exceed the number of covariates p={p}"
            )));
        }
        match &self.source {
            DataSource::Simulated { cases, n_test, .. } => {
                if cases.is_empty() || *n_test == 0 {
                    return Err(Error::InvalidInput(
                        "simulated sweep needs at least one case and a test size".into(),
                    ));
                }
            }
            DataSource::Real { test_fraction, .. } => {
                if !(*test_fraction > 0.0 && *test_fraction < 1.0) {
                    return Err(Error::InvalidInput(format!(
                        "test fraction must lie in (0, 1), got {test_fraction}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn selection(&self, algorithm: Algorithm, k: usize, seed: u64) -> SelectionConfig {
        SelectionConfig {
            algorithm,
            k,
            t_rounds: self.t_rounds,
            pool_multiplier: self.pool_multiplier,
            seed,
            alg2_weighting: self.alg2_weighting,
        }
    }
}

/// Aggregate over the replicates of one (case, algorithm, k) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub case: String,
    pub algorithm: Algorithm,
    pub k: usize,
    pub accuracy: f64,
    pub mean_mspe: f64,
    pub mean_seconds: f64,
    pub failures: usize,
    pub replicates: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub cells: Vec<SweepCell>,
}

impl SweepSummary {
    pub fn cell(&self, case: &str, algorithm: Algorithm, k: usize) -> Option<&SweepCell> {
        self.cells
            .iter()
            .find(|c| c.case == case && c.algorithm == algorithm && c.k == k)
    }

    /// Cells of one (case, algorithm) series, ordered by k.
    pub fn series(&self, case: &str, algorithm: Algorithm) -> Vec<&SweepCell> {
        let mut cells: Vec<&SweepCell> = self
            .cells
            .iter()
            .filter(|c| c.case == case && c.algorithm == algorithm)
            .collect();
        cells.sort_by_key(|c| c.k);
        cells
    }

    pub fn cases(&self) -> Vec<String> {
        let mut seen = Vec::new();
        for c in &self.cells {
            if !seen.contains(&c.case) {
                seen.push(c.case.clone());
            }
        }
        seen
    }

    pub fn algorithms(&self) -> Vec<Algorithm> {
        let mut seen = Vec::new();
        for c in &self.cells {
            if !seen.contains(&c.algorithm) {
                seen.push(c.algorithm);
            }
        }
        seen
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(writer);
        for cell in &self.cells {
            wtr.serialize(cell)?;
        }
        wtr.flush().map_err(|e| Error::io("<csv writer>", e))?;
        Ok(())
    }

    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(reader);
        let cells = rdr
            .deserialize()
            .collect::<std::result::Result<Vec<SweepCell>, _>>()?;
        Ok(Self { cells })
    }
}

/// A replicate evaluation that could not be completed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FailureRecord {
    pub case: String,
    pub replicate: usize,
    pub algorithm: Algorithm,
    pub k: usize,
    pub message: String,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub summary: SweepSummary,
    pub outcomes: Vec<ReplicateOutcome>,
    pub failures: Vec<FailureRecord>,
}

impl SweepReport {
    pub fn write_outcomes_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(writer);
        wtr.write_record([
            "case",
            "replicate",
            "algorithm",
            "k",
            "selected_model",
            "true_model",
            "mspe",
            "seconds",
        ])?;
        for o in &self.outcomes {
            wtr.write_record([
                o.case.clone(),
                o.replicate.to_string(),
                o.algorithm.to_string(),
                o.k.to_string(),
                o.selected_model.to_string(),
                o.true_model.to_string(),
                o.mspe.to_string(),
                o.seconds.to_string(),
            ])?;
        }
        wtr.flush().map_err(|e| Error::io("<csv writer>", e))?;
        Ok(())
    }
}

/// Prepared data for one replicate: centralized training data, the true
/// model, and a test set with its prediction targets.
struct ReplicateData {
    raw_x: Matrix,
    centered: DataMatrix,
    center: crate::preprocess::CenterMap,
    true_model: ModelId,
    test_x: Matrix,
    test_target: Vector,
}

fn replicate_id(case_slot: usize, replicate: usize) -> u64 {
    (case_slot as u64) << 32 | replicate as u64
}

fn simulated_replicate(
    case: CovariateCase,
    n: usize,
    p: usize,
    n_test: usize,
    master: u64,
    id: u64,
) -> Result<ReplicateData> {
    let x = gen_covariates(&CaseSpec {
        case,
        n,
        p,
        seed: derive_seed(master, Stream::Covariates, id),
    })?;
    let truth = gen_true_model(p, derive_seed(master, Stream::Beta, id));
    let (y, _) = gen_response(&x, &truth, derive_seed(master, Stream::Noise, id))?;
    let (centered, center) = centralize(&DataMatrix::unnamed(x.clone(), Some(y))?)?;
    let test_x = gen_covariates(&CaseSpec {
        case,
        n: n_test,
        p,
        seed: derive_seed(master, Stream::TestCovariates, id),
    })?;
    let test_target = truth.mean(&test_x)?;
    Ok(ReplicateData {
        raw_x: x,
        centered,
        center,
        true_model: truth.active_set,
        test_x,
        test_target,
    })
}

fn real_replicate(
    data: &DataMatrix,
    test_fraction: f64,
    search: SearchMethod,
    master: u64,
    id: u64,
) -> Result<ReplicateData> {
    let y = data.response()?;
    let n = data.n_rows();
    let n_test = ((n as f64 * test_fraction).round() as usize).clamp(1, n - 1);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng_from_seed(derive_seed(master, Stream::Split, id)));
    let (test_rows, train_rows) = order.split_at(n_test);
    let mut train_rows = train_rows.to_vec();
    train_rows.sort_unstable();
    let mut test_rows = test_rows.to_vec();
    test_rows.sort_unstable();

    let train = data.subset(&train_rows);
    let (centered, center) = centralize(&train)?;
    let true_model = search.run(&centered)?.selected;
    Ok(ReplicateData {
        raw_x: train.x,
        centered,
        center,
        true_model,
        test_x: crate::linalg::select_rows(&data.x, &test_rows),
        test_target: Vector::from_iterator(test_rows.len(), test_rows.iter().map(|&i| y[i])),
    })
}

fn evaluate_cell(
    cfg: &SweepConfig,
    data: &ReplicateData,
    algorithm: Algorithm,
    k: usize,
    select_seed: u64,
) -> Result<(ModelId, f64, f64)> {
    let start = Instant::now();
    let selection = select_subdata(&data.raw_x, &cfg.selection(algorithm, k, select_seed))?;
    let seconds = start.elapsed().as_secs_f64();
    let sub = data.centered.subset(&selection.indices);
    let report = cfg.search.run(&sub)?;
    let fit = match report.selected_fit() {
        Some(f) => f.clone(),
        None => fit_model(&sub, report.selected)?,
    }
    .with_intercept(&data.center)?;
    let error = mspe(&data.test_target, &data.test_x, &fit)?;
    Ok((report.selected, error, seconds))
}

type CellResult = std::result::Result<ReplicateOutcome, FailureRecord>;

/// Runs every replicate of every case and aggregates per cell. Replicates
/// run in parallel; results are deterministic for a fixed master seed.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    cfg.validate()?;

    let case_labels: Vec<String> = match &cfg.source {
        DataSource::Simulated { cases, .. } => cases.iter().map(|c| c.to_string()).collect(),
        DataSource::Real { label, .. } => vec![label.clone()],
    };

    let mut results: Vec<CellResult> = Vec::new();
    for (slot, label) in case_labels.iter().enumerate() {
        let per_replicate: Vec<Vec<CellResult>> = (0..cfg.replicates)
            .into_par_iter()
            .map(|r| {
                let id = replicate_id(slot, r);
                let prepared = match &cfg.source {
                    DataSource::Simulated {
                        cases,
                        n,
                        p,
                        n_test,
                        ..
                    } => simulated_replicate(cases[slot], *n, *p, *n_test, cfg.master_seed, id),
                    DataSource::Real {
                        data,
                        test_fraction,
                        ..
                    } => real_replicate(data, *test_fraction, cfg.search, cfg.master_seed, id),
                };
                let select_seed = derive_seed(cfg.master_seed, Stream::Select, id);
                let mut cells = Vec::with_capacity(cfg.algorithms.len() * cfg.ks.len());
                for &algorithm in &cfg.algorithms {
                    for &k in &cfg.ks {
                        let outcome =
                            prepared
                                .as_ref()
                                .map_err(|e| e.to_string())
                                .and_then(|data| {
                                    evaluate_cell(cfg, data, algorithm, k, select_seed)
                                        .map(|res| (data.true_model, res))
                                        .map_err(|e| e.to_string())
                                });
                        cells.push(match outcome {
                            Ok((true_model, (selected_model, mspe, seconds))) => {
                                Ok(ReplicateOutcome {
                                    case: label.clone(),
                                    replicate: r,
                                    algorithm,
                                    k,
                                    selected_model,
                                    true_model,
                                    mspe,
                                    seconds,
                                })
                            }
                            Err(message) => Err(FailureRecord {
                                case: label.clone(),
                                replicate: r,
                                algorithm,
                                k,
                                message,
                            }),
                        });
                    }
                }
                cells
            })
            .collect();
        results.extend(per_replicate.into_iter().flatten());
    }

    let mut outcomes = Vec::new();
    let mut failures = Vec::new();
    for r in results {
        match r {
            Ok(o) => outcomes.push(o),
            Err(f) => failures.push(f),
        }
    }

    let mut grouped: HashMap<(&str, Algorithm, usize), Vec<&ReplicateOutcome>> = HashMap::new();
    for o in &outcomes {
        grouped
            .entry((o.case.as_str(), o.algorithm, o.k))
            .or_default()
            .push(o);
    }
    let mut failure_counts: HashMap<(&str, Algorithm, usize), usize> = HashMap::new();
    for f in &failures {
        *failure_counts
            .entry((f.case.as_str(), f.algorithm, f.k))
            .or_default() += 1;
    }

    let mut cells = Vec::new();
    for label in &case_labels {
        for &algorithm in &cfg.algorithms {
            for &k in &cfg.ks {
                let key = (label.as_str(), algorithm, k);
                let group = grouped.get(&key).map(Vec::as_slice).unwrap_or(&[]);
                let count = group.len();
                let mean = |f: &dyn Fn(&ReplicateOutcome) -> f64| {
                    if count == 0 {
                        f64::NAN
                    } else {
                        group.iter().map(|o| f(o)).sum::<f64>() / count as f64
                    }
                };
                let hits = group
                    .iter()
                    .filter(|o| o.selected_model == o.true_model)
                    .count();
                cells.push(SweepCell {
                    case: label.clone(),
                    algorithm,
                    k,
                    accuracy: if count == 0 {
                        f64::NAN
                    } else {
                        hits as f64 / count as f64
                    },
                    mean_mspe: mean(&|o| o.mspe),
                    mean_seconds: mean(&|o| o.seconds),
                    failures: failure_counts.get(&key).copied().unwrap_or(0),
                    replicates: count,
                });
            }
        }
    }

    Ok(SweepReport {
        summary: SweepSummary { cells },
        outcomes,
        failures,
    })
}

/// Mean selection times, indexed `[k][algorithm]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TimingTable {
    pub n: usize,
    pub p: usize,
    pub runs: usize,
    pub ks: Vec<usize>,
    pub algorithms: Vec<Algorithm>,
    pub mean_seconds: Vec<Vec<f64>>,
}

impl TimingTable {
    pub fn get(&self, k: usize, algorithm: Algorithm) -> Option<f64> {
        let row = self.ks.iter().position(|&x| x == k)?;
        let col = self.algorithms.iter().position(|&a| a == algorithm)?;
        Some(self.mean_seconds[row][col])
    }

    /// One row per k, one column per algorithm.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(writer);
        let mut header = vec!["k".to_string()];
        header.extend(self.algorithms.iter().map(|a| a.to_string()));
        wtr.write_record(&header)?;
        for (k, row) in self.ks.iter().zip(&self.mean_seconds) {
            let mut rec = vec![k.to_string()];
            rec.extend(row.iter().map(|s| s.to_string()));
            wtr.write_record(&rec)?;
        }
        wtr.flush().map_err(|e| Error::io("<csv writer>", e))?;
        Ok(())
    }
}

/// Times selection on one Case-1 dataset of `n × p`. Each cell gets one
/// untimed warm-up run followed by `runs` timed runs, all on a single
/// thread.
pub fn bench_timing(
    n: usize,
    p: usize,
    ks: &[usize],
    algorithms: &[Algorithm],
    runs: usize,
    t_rounds: usize,
    seed: u64,
) -> Result<TimingTable> {
    if runs == 0 {
        return Err(Error::InvalidInput(
            "benchmark needs at least one run".into(),
        ));
    }
    let x = gen_covariates(&CaseSpec {
        case: CovariateCase::Normal1,
        n,
        p,
        seed: derive_seed(seed, Stream::Covariates, 0),
    })?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;

    let mean_seconds = pool.install(|| -> Result<Vec<Vec<f64>>> {
        let mut table = Vec::with_capacity(ks.len());
        for &k in ks {
            let mut row = Vec::with_capacity(algorithms.len());
            for &algorithm in algorithms {
                let mut cfg = SelectionConfig::new(algorithm, k).with_seed(derive_seed(
                    seed,
                    Stream::Select,
                    0,
                ));
                cfg.t_rounds = t_rounds;
                select_subdata(&x, &cfg)?;
                let start = Instant::now();
                for _ in 0..runs {
                    select_subdata(&x, &cfg)?;
                }
                row.push(start.elapsed().as_secs_f64() / runs as f64);
            }
            table.push(row);
        }
        Ok(table)
    })?;

    Ok(TimingTable {
        n,
        p,
        runs,
        ks: ks.to_vec(),
        algorithms: algorithms.to_vec(),
        mean_seconds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn outcome(selected: &[usize], truth: &[usize]) -> ReplicateOutcome {
        ReplicateOutcome {
            case: "1".into(),
            replicate: 0,
            algorithm: Algorithm::Alg1,
            k: 10,
            selected_model: ModelId::from_indices(selected),
            true_model: ModelId::from_indices(truth),
            mspe: 0.0,
            seconds: 0.0,
        }
    }

    #[test]
    fn accuracy_examples() {
        let hit = outcome(&[0, 1], &[0, 1]);
        let miss = outcome(&[0], &[0, 1]);
        assert_eq!(accuracy(&[hit.clone(), hit.clone()]).unwrap(), 1.0);
        assert_eq!(accuracy(std::slice::from_ref(&miss)).unwrap(), 0.0);
        assert_eq!(
            accuracy(&[hit.clone(), miss.clone(), hit.clone(), hit.clone()]).unwrap(),
            0.75
        );
        assert_eq!(
            accuracy(&[miss.clone(), hit.clone(), hit.clone(), hit]).unwrap(),
            0.75
        );
        assert!(accuracy(&[]).is_err());
    }

    fn fit(model: &[usize], beta: Vec<f64>, intercept: f64) -> FitResult {
        FitResult {
            model: ModelId::from_indices(model),
            beta,
            intercept,
            rss: 1.0,
            bic: 0.0,
            n_used: 10,
        }
    }

    #[test]
    fn mspe_examples() {
        let x = Matrix::from_row_slice(3, 2, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        let f = fit(&[1], vec![2.0], 0.5);
        let mu = Vector::from_vec(vec![4.5, 8.5, 12.5]);
        assert_eq!(mspe(&mu, &x, &f).unwrap(), 0.0);

        let zero = fit(&[], vec![], 0.0);
        let c = Vector::from_element(3, 1.5);
        assert_eq!(mspe(&c, &x, &zero).unwrap(), 2.25);

        assert!(matches!(
            mspe(&Vector::zeros(2), &x, &f),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn mspe_matches_naive_loop() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let x = Matrix::from_fn(50, 4, |_, _| rng.gen_range(-2.0..2.0));
        let mu = Vector::from_fn(50, |_, _| rng.gen_range(-1.0..1.0));
        let f = fit(&[0, 2, 3], vec![0.3, -1.2, 0.7], 0.1);
        let mut sum = 0.0;
        for i in 0..50 {
            let pred = 0.1 + 0.3 * x[(i, 0)] - 1.2 * x[(i, 2)] + 0.7 * x[(i, 3)];
            sum += (mu[i] - pred) * (mu[i] - pred);
        }
        assert!((mspe(&mu, &x, &f).unwrap() - sum / 50.0).abs() <= 1e-12);
    }

    #[test]
    fn small_sweep_bookkeeping() {
        let mut cfg = SweepConfig::simulated(vec![CovariateCase::Normal1], 2000);
        cfg.algorithms = vec![Algorithm::Alg1];
        cfg.ks = vec![300];
        cfg.replicates = 2;
        cfg.master_seed = 5;
        let report = run_sweep(&cfg).unwrap();
        assert_eq!(report.summary.cells.len(), 1);
        let cell = &report.summary.cells[0];
        assert_eq!(cell.replicates + cell.failures, 2);
        assert_eq!(report.outcomes.len(), cell.replicates);
        assert!((0.0..=1.0).contains(&cell.accuracy));

        let again = run_sweep(&cfg).unwrap();
        assert_eq!(again.outcomes.len(), report.outcomes.len());
        for (a, b) in again.outcomes.iter().zip(&report.outcomes) {
            assert_eq!(a.selected_model, b.selected_model);
            assert_eq!(a.mspe, b.mspe);
        }
    }

    #[test]
    fn sweep_rejects_small_k() {
        let mut cfg = SweepConfig::simulated(vec![CovariateCase::Normal1], 500);
        cfg.ks = vec![7];
        assert!(run_sweep(&cfg).is_err());
    }

    #[test]
    fn failures_are_counted_not_dropped() {
        // k larger than the data: every selection fails.
        let mut cfg = SweepConfig::simulated(vec![CovariateCase::Normal2], 100);
        cfg.ks = vec![150];
        cfg.algorithms = vec![Algorithm::Levss];
        cfg.replicates = 3;
        let report = run_sweep(&cfg).unwrap();
        assert_eq!(report.failures.len(), 3);
        assert_eq!(report.summary.cells[0].failures, 3);
        assert_eq!(report.summary.cells[0].replicates, 0);
    }

    #[test]
    fn summary_csv_round_trip() {
        let summary = SweepSummary {
            cells: vec![SweepCell {
                case: "1".into(),
                algorithm: Algorithm::Alg2,
                k: 300,
                accuracy: 0.5,
                mean_mspe: 0.01,
                mean_seconds: 0.2,
                failures: 0,
                replicates: 4,
            }],
        };
        let mut buf = Vec::new();
        summary.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("case,algorithm,k,accuracy,mean_mspe,mean_seconds,failures"));
        assert_eq!(SweepSummary::read_csv(buf.as_slice()).unwrap(), summary);
    }
}
