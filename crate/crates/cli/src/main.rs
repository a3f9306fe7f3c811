mod config;
mod io;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use stationarity::harness::{
    remark32_variance_check, run_experiment_with_progress, BuiltinModel, ModelSpec,
    REPORT_SCHEMA_VERSION,
};
use stationarity::{
    asymptotic_test, bootstrap_test, BootstrapConfig, GaussianSource, TestMethod, TimeSeries,
};

use config::{
    read_toml, relative_to, ExperimentConfig, Remark32Config, RunConfig, SimulateConfig,
    TestConfig,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl From<stationarity::Error> for CliError {
    fn from(e: stationarity::Error) -> Self {
        match e {
            stationarity::Error::FitFailure(_) => CliError::Numerical(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numerical(_) => 3,
        }
    }
}

/// Tests locally stationary long-memory series for deviations from
/// stationarity.
#[derive(Debug, Parser)]
#[command(name = "lmstat", version, about)]
struct Cli {
    /// Worker threads (results do not depend on this).
    #[arg(long, global = true, env = "LMSTAT_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Test a series read from a single-column CSV file.
    Test(TestArgs),
    /// Simulate a (time-varying) FARIMA series to CSV.
    Simulate(SimulateArgs),
    /// Run a Monte Carlo size/power table from a TOML config.
    Experiment(ExperimentArgs),
    /// Run a power study; writes a long-format power CSV.
    Power(ExperimentArgs),
    /// Compare Riemann-sum and integrated squared periodogram variances.
    Remark32Check(Remark32Args),
    /// Execute a TOML run config selected by its `command` key.
    Run {
        config: PathBuf,
    },
}

#[derive(Debug, Args)]
struct TestArgs {
    /// CSV file with one numeric column (header optional).
    input: PathBuf,
    /// Window length N (even, >= 4).
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[arg(long, value_enum, default_value_t = MethodArg::Bootstrap)]
    method: MethodArg,
    /// Bootstrap replicates.
    #[arg(long, default_value_t = 200)]
    b: usize,
    /// Largest AR order searched by AIC.
    #[arg(long, default_value_t = 10)]
    pmax: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON result here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum MethodArg {
    Asymptotic,
    Bootstrap,
}

impl From<MethodArg> for TestMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Asymptotic => TestMethod::Asymptotic,
            MethodArg::Bootstrap => TestMethod::Bootstrap,
        }
    }
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// TOML model specification (`type = "farima" | "tv-farima" | "builtin"`).
    #[arg(long, conflicts_with = "model")]
    config: Option<PathBuf>,
    /// Builtin model name.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(BuiltinModel::NAMES))]
    model: Option<String>,
    /// Memory parameter of a builtin model.
    #[arg(long, default_value_t = 0.0)]
    d: f64,
    /// AR or MA coefficient of the null builtins.
    #[arg(long, default_value_t = 0.0)]
    coefficient: f64,
    /// Sample size.
    #[arg(long)]
    t: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = stationarity::farima::DEFAULT_BURN_IN)]
    burn_in: usize,
    /// Output CSV; the configuration is echoed to `<out>.json`.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    config: PathBuf,
    /// Overrides `out_dir` from the config.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Remark32Args {
    #[arg(long, default_value_t = 128)]
    n: usize,
    #[arg(long, default_value_t = 8)]
    m: usize,
    #[arg(long, default_value_t = 20_000)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: u32,
    command: &'a str,
    #[serde(flatten)]
    body: T,
}

fn to_json<T: Serialize>(command: &str, body: T) -> String {
    let env = Envelope { schema_version: REPORT_SCHEMA_VERSION, command, body };
    serde_json::to_string_pretty(&env).expect("report types serialize") + "\n"
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => io::write_file(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_test(cfg: &TestConfig) -> Result<(), CliError> {
    let values = io::read_series_file(&cfg.input)?;
    let n_obs = values.len();
    let series = TimeSeries::new(values)?;
    let result = match cfg.method {
        TestMethod::Asymptotic => asymptotic_test(&series, cfg.n, cfg.alpha)?,
        TestMethod::Bootstrap => {
            let bc = BootstrapConfig::new(cfg.b, cfg.alpha, cfg.p_max, cfg.n, cfg.seed);
            bootstrap_test(&series, &bc)?
        }
    };
    for w in &result.diagnostics.warnings {
        eprintln!("warning: {w}");
    }
    #[derive(Serialize)]
    struct Body<'a> {
        input: &'a Path,
        observations: usize,
        config: &'a TestConfig,
        result: stationarity::TestResult,
    }
    let body = Body { input: &cfg.input, observations: n_obs, config: cfg, result };
    emit(cfg.out.as_deref(), &to_json("test", body))
}

fn cmd_simulate(cfg: &SimulateConfig) -> Result<(), CliError> {
    cfg.model.validate()?;
    let x = cfg.model.simulate(cfg.t, &mut GaussianSource::new(cfg.seed), cfg.burn_in)?;
    let file = std::fs::File::create(&cfg.out)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", cfg.out.display())))?;
    io::write_series(std::io::BufWriter::new(file), x.values())
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", cfg.out.display())))?;
    let mut echo = cfg.out.clone().into_os_string();
    echo.push(".json");
    io::write_file(Path::new(&echo), &to_json("simulate", cfg))
}

fn cmd_experiment(
    cfg: &ExperimentConfig,
    config_path: &Path,
    out_dir: Option<&Path>,
    power: bool,
) -> Result<(), CliError> {
    let dir = match (out_dir, &cfg.out_dir) {
        (Some(d), _) => d.to_path_buf(),
        (None, Some(d)) => relative_to(config_path, d),
        (None, None) => PathBuf::from("."),
    };
    let name = cfg.name.clone().unwrap_or_else(|| {
        config_path
            .file_stem()
            .map_or("experiment".into(), |s| s.to_string_lossy().into_owned())
    });
    let exp = &cfg.experiment;
    exp.validate()?;
    let total = exp.scenarios.len() * exp.models.len();
    let mut done = 0;
    let report = run_experiment_with_progress(exp, |cell| {
        done += 1;
        let freqs: Vec<String> = cell.frequencies.iter().map(|f| format!("{f:.3}")).collect();
        eprintln!(
            "[{done}/{total}] {} (T={}, N={}) {}: {}{}",
            cell.scenario,
            cell.t,
            cell.n,
            cell.model,
            freqs.join(" "),
            if cell.flagged { format!("  [{} failed runs]", cell.n_failed) } else { String::new() }
        );
    })?;
    std::fs::create_dir_all(&dir)
        .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", dir.display())))?;
    let json = serde_json::to_string_pretty(&report).expect("report types serialize") + "\n";
    io::write_file(&dir.join(format!("{name}.report.json")), &json)?;
    if power {
        io::write_file(&dir.join(format!("{name}.power.csv")), &report.to_power_csv())?;
    } else {
        io::write_file(&dir.join(format!("{name}.table.csv")), &report.to_table_csv())?;
    }
    eprintln!("wrote {}/{name}.* in {:.1}s", dir.display(), report.wall_clock_secs);
    Ok(())
}

fn cmd_remark32(cfg: &Remark32Config) -> Result<(), CliError> {
    let r = remark32_variance_check(cfg.n, cfg.m, cfg.reps, cfg.seed)?;
    #[derive(Serialize)]
    struct Body<'a> {
        config: &'a Remark32Config,
        result: stationarity::harness::VarianceRatio,
    }
    emit(cfg.out.as_deref(), &to_json("remark32-check", Body { config: cfg, result: r }))
}

fn run_config(path: &Path) -> Result<(), CliError> {
    match read_toml::<RunConfig>(path)? {
        RunConfig::Test(mut c) => {
            c.input = relative_to(path, &c.input);
            c.out = c.out.map(|o| relative_to(path, &o));
            cmd_test(&c)
        }
        RunConfig::Simulate(mut c) => {
            c.out = relative_to(path, &c.out);
            cmd_simulate(&c)
        }
        RunConfig::Experiment(c) => cmd_experiment(&c, path, None, false),
        RunConfig::Power(c) => cmd_experiment(&c, path, None, true),
        RunConfig::Remark32Check(mut c) => {
            c.out = c.out.map(|o| relative_to(path, &o));
            cmd_remark32(&c)
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Test(a) => cmd_test(&TestConfig {
            input: a.input,
            n: a.n,
            alpha: a.alpha,
            method: a.method.into(),
            b: a.b,
            p_max: a.pmax,
            seed: a.seed,
            out: a.out,
        }),
        Command::Simulate(a) => {
            let model = match (&a.config, &a.model) {
                (Some(p), _) => read_toml::<ModelSpec>(p)?,
                (None, Some(name)) => {
                    let name = BuiltinModel::parse(name).expect("validated by clap");
                    ModelSpec::builtin(name, a.d, a.coefficient)
                }
                (None, None) => {
                    return Err(CliError::Usage("either --config or --model is required".into()))
                }
            };
            cmd_simulate(&SimulateConfig { model, t: a.t, seed: a.seed, burn_in: a.burn_in, out: a.out })
        }
        Command::Experiment(a) => {
            cmd_experiment(&read_toml(&a.config)?, &a.config, a.out_dir.as_deref(), false)
        }
        Command::Power(a) => cmd_experiment(&read_toml(&a.config)?, &a.config, a.out_dir.as_deref(), true),
        Command::Remark32Check(a) => cmd_remark32(&Remark32Config {
            n: a.n,
            m: a.m,
            reps: a.reps,
            seed: a.seed,
            out: a.out,
        }),
        Command::Run { config } => run_config(&config),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.threads {
        Some(0) => Err(CliError::Usage("--threads must be positive".into())),
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(|| dispatch(cli.command)),
            Err(e) => Err(CliError::Usage(format!("cannot start thread pool: {e}"))),
        },
        None => dispatch(cli.command),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
