//! `subsel` command-line front end.
//!
//! Every command reads an optional TOML config file (`--config`) whose keys
//! mirror the long flag names; flags given on the command line win. All
//! randomness derives from `--seed` through named sub-streams, and the
//! resolved configuration is written next to every output.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::evalkit::{
    bench_timing, render_accuracy_svg, render_mspe_svg, run_sweep, DataSource, SweepConfig,
    SweepSummary,
};
use crate::modelsel::{fit_model, SearchMethod};
use crate::preprocess::{centralize, load_csv, save_csv, save_json, DataMatrix, ScaleMap};
use crate::seed::{derive_seed, Stream, GENERATOR};
use crate::simgen::{
    gen_covariates, gen_response, gen_true_model, CaseSpec, CovariateCase, GeneratedMeta,
};
use crate::subselect::{select_subdata, Alg2Weighting, Algorithm, SelectionConfig};

#[derive(Debug, Parser)]
#[command(
    name = "subsel",
    version,
    about = "A-optimal subdata selection and BIC model selection"
)]
pub struct Cli {
    /// TOML file with default values for any flag (keys use flag names).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a synthetic dataset and its metadata sidecar.
    Generate(RunConfig),
    /// Select subdata from a CSV dataset.
    Select(RunConfig),
    /// Run replicate sweeps and write a summary table.
    Sweep(RunConfig),
    /// Time the selection algorithms.
    Bench(RunConfig),
    /// Render accuracy and MSPE plots from a sweep summary.
    Report(RunConfig),
}

/// Options shared by all commands; each command reads the ones it needs.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case", deny_unknown_fields)]
pub struct RunConfig {
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Not recorded in metadata, so reruns elsewhere stay byte-identical.
    #[arg(long)]
    #[serde(skip_serializing)]
    pub output_dir: Option<PathBuf>,
    /// Response column of an input CSV.
    #[arg(long)]
    pub response: Option<String>,
    #[arg(long, value_delimiter = ',')]
    pub algorithm: Vec<Algorithm>,
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    pub case: Vec<u8>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub replicates: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub t_rounds: Option<usize>,
    #[arg(long)]
    pub pool_multiplier: Option<f64>,
    #[arg(long)]
    pub search: Option<SearchMethod>,
    #[arg(long)]
    pub alg2_weighting: Option<Alg2Weighting>,
    /// Test rows per simulated replicate.
    #[arg(long)]
    pub n_test: Option<usize>,
    /// Held-out fraction for real-data sweeps.
    #[arg(long)]
    pub test_fraction: Option<f64>,
    /// Timed runs per benchmark cell.
    #[arg(long)]
    pub runs: Option<usize>,
}

impl RunConfig {
    /// Fills every unset field of `self` from `base`.
    fn over(self, base: RunConfig) -> RunConfig {
        fn vec_or<T>(a: Vec<T>, b: Vec<T>) -> Vec<T> {
            if a.is_empty() {
                b
            } else {
                a
            }
        }
        RunConfig {
            input: self.input.or(base.input),
            output_dir: self.output_dir.or(base.output_dir),
            response: self.response.or(base.response),
            algorithm: vec_or(self.algorithm, base.algorithm),
            k: vec_or(self.k, base.k),
            case: vec_or(self.case, base.case),
            n: self.n.or(base.n),
            p: self.p.or(base.p),
            replicates: self.replicates.or(base.replicates),
            seed: self.seed.or(base.seed),
            t_rounds: self.t_rounds.or(base.t_rounds),
            pool_multiplier: self.pool_multiplier.or(base.pool_multiplier),
            search: self.search.or(base.search),
            alg2_weighting: self.alg2_weighting.or(base.alg2_weighting),
            n_test: self.n_test.or(base.n_test),
            test_fraction: self.test_fraction.or(base.test_fraction),
            runs: self.runs.or(base.runs),
        }
    }

    fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    fn output_dir(&self) -> PathBuf {
        self.output_dir
            .clone()
            .unwrap_or_else(|| PathBuf::from("."))
    }

    fn t_rounds(&self) -> usize {
        self.t_rounds.unwrap_or(10)
    }

    fn pool_multiplier(&self) -> f64 {
        self.pool_multiplier.unwrap_or(2.0)
    }

    fn algorithms_or(&self, default: &[Algorithm]) -> Vec<Algorithm> {
        if self.algorithm.is_empty() {
            default.to_vec()
        } else {
            self.algorithm.clone()
        }
    }

    fn ks_or(&self, default: &[usize]) -> Vec<usize> {
        if self.k.is_empty() {
            default.to_vec()
        } else {
            self.k.clone()
        }
    }

    fn cases_or(&self, default: &[u8]) -> Result<Vec<CovariateCase>, CliError> {
        let ids = if self.case.is_empty() {
            default
        } else {
            &self.case
        };
        ids.iter()
            .map(|&id| CovariateCase::try_from(id).map_err(|e| CliError::Validation(e.to_string())))
            .collect()
    }

    fn input_path(&self) -> Result<&Path, CliError> {
        let path = self
            .input
            .as_deref()
            .ok_or_else(|| CliError::Validation("--input is required".into()))?;
        if !path.is_file() {
            return Err(CliError::Validation(format!(
                "input file {} does not exist",
                path.display()
            )));
        }
        Ok(path)
    }
}

/// Failure of a command, carrying its exit status.
#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or inputs; exit status 2.
    Validation(String),
    /// Failure while running; exit status 1.
    Runtime(anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(msg) => write!(f, "{msg}"),
            CliError::Runtime(e) => write!(f, "{e:#}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_)
            | Error::MissingColumn(_)
            | Error::Parse { .. }
            | Error::TooManyPredictors(_)
            | Error::PoolTooSmall { .. } => CliError::Validation(e.to_string()),
            other => CliError::Runtime(other.into()),
        }
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Runtime(e)
    }
}

/// Parses arguments, runs the command and maps the outcome to an exit code.
pub fn main_exit() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let base = match &cli.config {
        Some(path) => load_config(path)?,
        None => RunConfig::default(),
    };
    match cli.command {
        Command::Generate(flags) => cmd_generate(&flags.over(base)),
        Command::Select(flags) => cmd_select(&flags.over(base)),
        Command::Sweep(flags) => cmd_sweep(&flags.over(base)),
        Command::Bench(flags) => cmd_bench(&flags.over(base)),
        Command::Report(flags) => cmd_report(&flags.over(base)),
    }
}

fn load_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text)
        .map_err(|e| CliError::Validation(format!("invalid config {}: {e}", path.display())))
}

fn prepare_output_dir(cfg: &RunConfig) -> Result<PathBuf, CliError> {
    let dir = cfg.output_dir();
    fs::create_dir_all(&dir)
        .with_context(|| format!("creating output directory {}", dir.display()))?;
    Ok(dir)
}

#[derive(Serialize)]
struct Meta<'a, T: Serialize> {
    command: &'a str,
    seed: u64,
    generator: &'a str,
    config: &'a RunConfig,
    #[serde(flatten)]
    details: T,
}

fn write_meta<T: Serialize>(
    path: &Path,
    command: &str,
    cfg: &RunConfig,
    details: T,
) -> Result<(), CliError> {
    save_json(
        path,
        &Meta {
            command,
            seed: cfg.seed(),
            generator: GENERATOR,
            config: cfg,
            details,
        },
    )?;
    Ok(())
}

#[derive(Serialize)]
struct DatasetMeta {
    dataset: GeneratedMeta,
}

/// Writes `data.csv` and `data.meta.json`.
pub fn cmd_generate(cfg: &RunConfig) -> Result<(), CliError> {
    let cases = cfg.cases_or(&[1])?;
    let [case] = cases[..] else {
        return Err(CliError::Validation(
            "generate takes exactly one --case".into(),
        ));
    };
    let n = cfg.n.unwrap_or(1000);
    let p = cfg.p.unwrap_or(7);
    let seed = cfg.seed();
    let covariate_seed = derive_seed(seed, Stream::Covariates, 0);
    let beta_seed = derive_seed(seed, Stream::Beta, 0);
    let noise_seed = derive_seed(seed, Stream::Noise, 0);

    let x = gen_covariates(&CaseSpec {
        case,
        n,
        p,
        seed: covariate_seed,
    })?;
    let truth = gen_true_model(p, beta_seed);
    let (y, _) = gen_response(&x, &truth, noise_seed)?;
    let data = DataMatrix::unnamed(x, Some(y))?;

    let dir = prepare_output_dir(cfg)?;
    save_csv(dir.join("data.csv"), &data, "y")?;
    write_meta(
        &dir.join("data.meta.json"),
        "generate",
        cfg,
        DatasetMeta {
            dataset: GeneratedMeta {
                case,
                n,
                p,
                seed,
                covariate_seed,
                beta_seed,
                noise_seed,
                generator: GENERATOR.to_string(),
                beta0: truth.beta0,
                beta: truth.beta.clone(),
                sigma: truth.sigma,
                active_set: truth.active_set.to_string(),
            },
        },
    )?;
    println!("wrote {} rows to {}", n, dir.join("data.csv").display());
    Ok(())
}

#[derive(Serialize)]
struct FittedModel {
    search: SearchMethod,
    model: String,
    bic: f64,
    intercept: f64,
    /// Slopes in the units of the input columns.
    beta_original: Vec<f64>,
    /// Slopes per unit of the `[-1, 1]`-scaled columns.
    beta_scaled: Vec<f64>,
    columns: Vec<String>,
}

#[derive(Serialize)]
struct SelectDetails {
    n: usize,
    p: usize,
    selection_seed: u64,
    report: crate::subselect::SelectionReport,
    scale_map: ScaleMap,
    fitted_model: Option<FittedModel>,
}

/// Writes `indices.csv`, `selection.json` and `scale_map.json`; with a
/// response column, also `candidates.csv` for the fitted subdata.
pub fn cmd_select(cfg: &RunConfig) -> Result<(), CliError> {
    let path = cfg.input_path()?;
    let data = load_csv(path, cfg.response.as_deref())?;
    let algorithms = cfg.algorithms_or(&[Algorithm::Alg1]);
    let [algorithm] = algorithms[..] else {
        return Err(CliError::Validation(
            "select takes exactly one --algorithm".into(),
        ));
    };
    let [k] = cfg.k[..] else {
        return Err(CliError::Validation("select takes exactly one --k".into()));
    };
    if k <= data.n_cols() {
        return Err(CliError::Validation(format!(
            "k={k} must exceed the number of covariates p={}",
            data.n_cols()
        )));
    }
    let selection_seed = derive_seed(cfg.seed(), Stream::Select, 0);
    let selection_cfg = SelectionConfig {
        algorithm,
        k,
        t_rounds: cfg.t_rounds(),
        pool_multiplier: cfg.pool_multiplier(),
        seed: selection_seed,
        alg2_weighting: cfg.alg2_weighting.unwrap_or_default(),
    };
    let result = select_subdata(&data.x, &selection_cfg)?;
    let scale_map = ScaleMap::fit(&data.x);

    let dir = prepare_output_dir(cfg)?;
    result.save_indices(dir.join("indices.csv"))?;
    save_json(dir.join("scale_map.json"), &scale_map)?;

    let fitted_model = if data.y.is_some() {
        let search = cfg.search.unwrap_or_default();
        let (centered, center) = centralize(&data)?;
        let sub = centered.subset(&result.indices);
        let candidates = search.run(&sub)?;
        let file = fs::File::create(dir.join("candidates.csv"))
            .map_err(|e| Error::io(dir.join("candidates.csv"), e))?;
        candidates.write_csv(std::io::BufWriter::new(file))?;
        let fit = fit_model(&sub, candidates.selected)?.with_intercept(&center)?;
        let cols = fit.model.indices();
        Some(FittedModel {
            search,
            model: fit.model.to_string(),
            bic: fit.bic,
            intercept: fit.intercept,
            beta_scaled: cols
                .iter()
                .zip(&fit.beta)
                .map(|(&j, b)| {
                    let c = &scale_map.columns[j];
                    b * (c.max - c.min) / 2.0
                })
                .collect(),
            beta_original: fit.beta.clone(),
            columns: cols.iter().map(|&j| data.column_names[j].clone()).collect(),
        })
    } else {
        None
    };

    write_meta(
        &dir.join("selection.json"),
        "select",
        cfg,
        SelectDetails {
            n: data.n_rows(),
            p: data.n_cols(),
            selection_seed,
            report: result.report(),
            scale_map,
            fitted_model,
        },
    )?;
    println!(
        "selected {} of {} rows with {} in {:.3}s",
        result.indices.len(),
        data.n_rows(),
        algorithm,
        result.elapsed.as_secs_f64()
    );
    Ok(())
}

#[derive(Serialize)]
struct SweepDetails {
    source: String,
    mspe_target: &'static str,
    failures: Vec<crate::evalkit::FailureRecord>,
}

/// Writes `summary.csv`, `outcomes.csv` and `summary.meta.json`.
pub fn cmd_sweep(cfg: &RunConfig) -> Result<(), CliError> {
    let (source, label, target) = match &cfg.input {
        Some(_) => {
            let path = cfg.input_path()?;
            let response = cfg
                .response
                .as_deref()
                .ok_or_else(|| CliError::Validation("a real-data sweep needs --response".into()))?;
            let data = load_csv(path, Some(response))?;
            let label = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "real".into());
            (
                DataSource::Real {
                    label: label.clone(),
                    data,
                    test_fraction: cfg.test_fraction.unwrap_or(0.1),
                },
                label,
                "observed test response",
            )
        }
        None => (
            DataSource::Simulated {
                cases: cfg.cases_or(&[1])?,
                n: cfg.n.unwrap_or(10_000),
                p: cfg.p.unwrap_or(7),
                n_test: cfg.n_test.unwrap_or(500),
            },
            "simulated".to_string(),
            "latent conditional mean",
        ),
    };
    let sweep = SweepConfig {
        source,
        algorithms: cfg.algorithms_or(&[Algorithm::Levss, Algorithm::Alg1, Algorithm::Alg2]),
        ks: cfg.ks_or(&[300, 500, 700, 1000]),
        replicates: cfg.replicates.unwrap_or(100),
        t_rounds: cfg.t_rounds(),
        pool_multiplier: cfg.pool_multiplier(),
        search: cfg.search.unwrap_or_default(),
        master_seed: cfg.seed(),
        alg2_weighting: cfg.alg2_weighting.unwrap_or_default(),
    };
    let report = run_sweep(&sweep)?;

    let dir = prepare_output_dir(cfg)?;
    let create = |name: &str| -> Result<std::io::BufWriter<fs::File>, CliError> {
        let path = dir.join(name);
        let file = fs::File::create(&path).map_err(|e| Error::io(path, e))?;
        Ok(std::io::BufWriter::new(file))
    };
    report.summary.write_csv(create("summary.csv")?)?;
    report.write_outcomes_csv(create("outcomes.csv")?)?;
    write_meta(
        &dir.join("summary.meta.json"),
        "sweep",
        cfg,
        SweepDetails {
            source: label,
            mspe_target: target,
            failures: report.failures.clone(),
        },
    )?;
    for c in &report.summary.cells {
        println!(
            "case {:>8} {:>6} k={:<5} accuracy={:.3} mspe={:.5} time={:.4}s failures={}",
            c.case, c.algorithm, c.k, c.accuracy, c.mean_mspe, c.mean_seconds, c.failures
        );
    }
    Ok(())
}

/// Writes `timing.csv` and `timing.meta.json`.
pub fn cmd_bench(cfg: &RunConfig) -> Result<(), CliError> {
    let n = cfg.n.unwrap_or(10_000);
    let p = cfg.p.unwrap_or(7);
    let ks = cfg.ks_or(&[300, 500, 700, 1000]);
    if let Some(&k) = ks.iter().find(|&&k| k <= p) {
        return Err(CliError::Validation(format!(
            "k={k} must exceed the number of covariates p={p}"
        )));
    }
    let algorithms = cfg.algorithms_or(&[Algorithm::Levss, Algorithm::Alg1, Algorithm::Alg2]);
    let table = bench_timing(
        n,
        p,
        &ks,
        &algorithms,
        cfg.runs.unwrap_or(5),
        cfg.t_rounds(),
        cfg.seed(),
    )?;
    let dir = prepare_output_dir(cfg)?;
    let path = dir.join("timing.csv");
    let file = fs::File::create(&path).map_err(|e| Error::io(&path, e))?;
    table.write_csv(std::io::BufWriter::new(file))?;
    write_meta(&dir.join("timing.meta.json"), "bench", cfg, &table)?;
    let mut out = Vec::new();
    table.write_csv(&mut out)?;
    print!("{}", String::from_utf8_lossy(&out));
    Ok(())
}

/// Writes `accuracy.svg` and `mspe.svg` from a sweep summary CSV.
pub fn cmd_report(cfg: &RunConfig) -> Result<(), CliError> {
    let path = cfg.input_path()?;
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let summary = SweepSummary::read_csv(file)?;
    if summary.cells.is_empty() {
        return Err(CliError::Validation(format!(
            "{} contains no summary rows",
            path.display()
        )));
    }
    let dir = prepare_output_dir(cfg)?;
    for (name, svg) in [
        ("accuracy.svg", render_accuracy_svg(&summary)),
        ("mspe.svg", render_mspe_svg(&summary)),
    ] {
        let out = dir.join(name);
        fs::write(&out, svg).map_err(|e| Error::io(&out, e))?;
        println!("wrote {}", out.display());
    }
    Ok(())
}
