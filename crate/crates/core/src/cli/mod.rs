//! Command-line front end.
//!
//! Exit codes: 0 success, 1 runtime error, 2 insecure configuration (`rate`),
//! 64 usage error. The default thread count comes from `QSDC_THREADS`.

pub mod config;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::attack::{t_interval, AttackSpec};
use crate::disclosure::SchemeKind;
use crate::error::{Error, Result};
use crate::rate::csv::{error_row, format_float, result_row, RATE_CSV_HEADER};
use crate::rate::engine::{rate_at_p, sweep, sweep_at_p, achievable_rate_with, Basis, EngineSettings, ModelConfig, RateStatus};
use crate::rate::optimize::SearchSettings;
use crate::sim::session::{
    cdm06_error_probability, run_session, EnsembleSizing, SessionConfig, SimMode, SESSION_CSV_HEADER,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INSECURE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

pub const THREADS_ENV: &str = "QSDC_THREADS";

#[derive(Debug, Parser)]
#[command(name = "qsdc", version, about = "Secure net bit rates and Monte Carlo sessions for basis-encoded direct communication")]
#[command(args_override_self = true)]
pub struct Cli {
    /// Worker threads for sweeps and simulations.
    #[arg(long, global = true, env = THREADS_ENV)]
    pub threads: Option<usize>,

    /// `key = value` manifest; flags on the command line take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Achievable rate at one configuration.
    Rate(RateArgs),
    /// Rates over a range of ensemble sizes.
    SweepN(SweepNArgs),
    /// Rates over a (Q_Z, Q_X) lattice.
    SweepQber(SweepQberArgs),
    /// One Monte Carlo session.
    Simulate(SimulateArgs),
    /// Decoding error of the balanced-count protocol, analytic vs simulated.
    #[command(name = "cdm06-pe")]
    Cdm06Pe(PeArgs),
}

#[derive(Debug, Clone, Args)]
pub struct EngineArgs {
    /// Coarse grid points for the search over P_A(0).
    #[arg(long, default_value_t = 33)]
    pub p_grid: usize,
    /// Coarse grid points for the search over t.
    #[arg(long, default_value_t = 33)]
    pub t_grid: usize,
    /// Golden-section stopping width.
    #[arg(long, default_value_t = 1e-7)]
    pub tol: f64,
    /// Largest ensemble size accepted (at most 7).
    #[arg(long, default_value_t = 5)]
    pub n_max: usize,
}

impl EngineArgs {
    fn settings(&self) -> Result<EngineSettings> {
        if self.p_grid < 3 || self.t_grid < 3 || !(self.tol > 0.0) {
            return Err(Error::InvalidConfig("grids need at least 3 points and tol > 0".into()));
        }
        Ok(EngineSettings {
            p_search: SearchSettings { grid: self.p_grid, tol: self.tol },
            t_search: SearchSettings { grid: self.t_grid, tol: self.tol },
            n_max: self.n_max,
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write to this file instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Omit the CSV header line.
    #[arg(long)]
    pub no_header: bool,
}

#[derive(Debug, Clone, Args)]
pub struct RateArgs {
    #[arg(long)]
    pub scheme: SchemeKind,
    #[arg(long)]
    pub n: usize,
    /// Bob's basis: z or x.
    #[arg(long, default_value = "z")]
    pub b: Basis,
    #[arg(long)]
    pub qz: f64,
    #[arg(long)]
    pub qx: f64,
    /// Fix P_A(0) instead of maximizing over it.
    #[arg(long)]
    pub p: Option<f64>,
    #[command(flatten)]
    pub engine: EngineArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepNArgs {
    #[arg(long, value_delimiter = ',', default_value = "full,excess,weight,parity")]
    pub schemes: Vec<SchemeKind>,
    #[arg(long, default_value_t = 1)]
    pub n_from: usize,
    #[arg(long, default_value_t = 5)]
    pub n_to: usize,
    #[arg(long, default_value = "z")]
    pub b: Basis,
    #[arg(long, default_value_t = 0.05)]
    pub qz: f64,
    #[arg(long, default_value_t = 0.05)]
    pub qx: f64,
    #[arg(long)]
    pub p: Option<f64>,
    #[command(flatten)]
    pub engine: EngineArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepQberArgs {
    #[arg(long, value_delimiter = ',', default_value = "full,excess,weight,parity")]
    pub schemes: Vec<SchemeKind>,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value = "z")]
    pub b: Basis,
    #[arg(long, default_value_t = 0.0)]
    pub qz_min: f64,
    #[arg(long, default_value_t = 0.1)]
    pub qz_max: f64,
    #[arg(long, default_value_t = 0.0)]
    pub qx_min: f64,
    #[arg(long, default_value_t = 0.1)]
    pub qx_max: f64,
    /// Lattice points per axis (at least 2).
    #[arg(long, default_value_t = 11)]
    pub steps: usize,
    #[arg(long)]
    pub p: Option<f64>,
    #[command(flatten)]
    pub engine: EngineArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Kv,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct AttackArgs {
    #[arg(long, default_value_t = 0.0)]
    pub qz: f64,
    #[arg(long, default_value_t = 0.0)]
    pub qx: f64,
    /// Eve's parameter; defaults to the lower end of its interval.
    #[arg(long)]
    pub t: Option<f64>,
}

impl AttackArgs {
    fn spec(&self) -> Result<AttackSpec> {
        for q in [self.qz, self.qx] {
            if !(0.0..=0.5).contains(&q) {
                return Err(Error::OutOfRange(format!("QBER {q} outside [0, 0.5]")));
            }
        }
        let t = self.t.unwrap_or_else(|| t_interval(self.qz, self.qx).0);
        AttackSpec::new(self.qz, self.qx, t)
    }
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[arg(long, value_parser = parse_mode)]
    pub mode: SimMode,
    /// Disclosure scheme (model mode).
    #[arg(long, default_value = "parity")]
    pub scheme: SchemeKind,
    /// Ensemble size (model mode).
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Balanced ensembles of 2m qubits (cdm06 mode).
    #[arg(long, conflicts_with = "raw_qubits")]
    pub m: Option<usize>,
    /// Raw ensembles of n' qubits balanced by discarding (cdm06 mode).
    #[arg(long)]
    pub raw_qubits: Option<usize>,
    #[arg(long, default_value = "z")]
    pub b: Basis,
    #[command(flatten)]
    pub attack: AttackArgs,
    /// P_A(0).
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 0.1)]
    pub sacrifice_fraction: f64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Kv)]
    pub format: ReportFormat,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct PeArgs {
    #[arg(long, default_value_t = 1)]
    pub m_from: usize,
    #[arg(long, default_value_t = 4)]
    pub m_to: usize,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value = "z")]
    pub b: Basis,
    #[command(flatten)]
    pub attack: AttackArgs,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn parse_mode(s: &str) -> std::result::Result<SimMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failures split by exit code.
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn usage(e: Error) -> Failure {
    Failure::Usage(e.to_string())
}

fn open_output(out: &OutputArgs) -> std::result::Result<Box<dyn Write>, Failure> {
    Ok(match &out.output {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let nanos = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_nanos() as u64)
            .unwrap_or(0);
        // splitmix64 finalizer
        let mut z = nanos ^ ((std::process::id() as u64) << 32);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        let seed = z ^ (z >> 31);
        eprintln!("seed = {seed}");
        seed
    })
}

fn check_p(p: Option<f64>) -> std::result::Result<(), Failure> {
    match p {
        Some(p) if !(0.0..=1.0).contains(&p) => Err(Failure::Usage(format!("--p {p} outside [0, 1]"))),
        _ => Ok(()),
    }
}

fn cmd_rate(args: &RateArgs) -> std::result::Result<i32, Failure> {
    let settings = args.engine.settings().map_err(usage)?;
    check_p(args.p)?;
    let config = ModelConfig::with_n_max(args.scheme, args.n, args.b, args.qz, args.qx, args.engine.n_max)
        .map_err(usage)?;
    let result = match args.p {
        Some(p) => rate_at_p(&config, p, &settings),
        None => achievable_rate_with(&config, &settings),
    };
    let mut out = open_output(&args.out)?;
    if !args.out.no_header {
        writeln!(out, "{RATE_CSV_HEADER}")?;
    }
    writeln!(out, "{}", result_row(&config, &result))?;
    out.flush()?;
    Ok(match result {
        Ok(r) if r.status == RateStatus::Insecure => EXIT_INSECURE,
        Ok(_) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    })
}

/// A sweep point that failed validation: `(scheme, n, qz, qx, error)`.
type RejectedPoint = (SchemeKind, usize, f64, f64, Error);

fn write_sweep(
    out: &OutputArgs,
    rows: Vec<std::result::Result<ModelConfig, RejectedPoint>>,
    basis: Basis,
    p: Option<f64>,
    settings: &EngineSettings,
) -> std::result::Result<i32, Failure> {
    let configs: Vec<ModelConfig> = rows.iter().filter_map(|r| r.as_ref().ok().copied()).collect();
    let mut results = match p {
        Some(p) => sweep_at_p(&configs, p, settings),
        None => sweep(&configs, settings),
    }
    .into_iter();
    let mut w = open_output(out)?;
    if !out.no_header {
        writeln!(w, "{RATE_CSV_HEADER}")?;
    }
    let mut failures = 0;
    for row in &rows {
        let line = match row {
            Ok(config) => {
                let result = results.next().expect("one result per config");
                if let Err(e) = &result {
                    eprintln!("error at {} n={} qz={} qx={}: {e}", config.scheme(), config.n(), config.q_z(), config.q_x());
                    failures += 1;
                }
                result_row(config, &result)
            }
            Err((scheme, n, qz, qx, e)) => {
                eprintln!("error at {scheme} n={n} qz={qz} qx={qx}: {e}");
                failures += 1;
                error_row(scheme.name(), *n, basis.bit(), *qz, *qx, e)
            }
        };
        writeln!(w, "{line}")?;
    }
    let fixed = p.map(|p| format!(" fixed_p={}", format_float(p))).unwrap_or_default();
    writeln!(w, "# engine {settings}{fixed} basis={basis}")?;
    w.flush()?;
    if failures > 0 {
        eprintln!("{failures} point(s) failed; recorded as error rows");
    }
    Ok(EXIT_OK)
}

fn cmd_sweep_n(args: &SweepNArgs) -> std::result::Result<i32, Failure> {
    let settings = args.engine.settings().map_err(usage)?;
    check_p(args.p)?;
    if args.n_from == 0 || args.n_from > args.n_to {
        return Err(Failure::Usage(format!("empty n range {}..={}", args.n_from, args.n_to)));
    }
    let mut rows = Vec::new();
    for &scheme in &args.schemes {
        for n in args.n_from..=args.n_to {
            rows.push(
                ModelConfig::with_n_max(scheme, n, args.b, args.qz, args.qx, args.engine.n_max)
                    .map_err(|e| (scheme, n, args.qz, args.qx, e)),
            );
        }
    }
    write_sweep(&args.out, rows, args.b, args.p, &settings)
}

/// `steps` evenly spaced points from `lo` to `hi` inclusive.
pub fn lattice_axis(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|i| if i + 1 == steps { hi } else { lo + (hi - lo) * i as f64 / (steps - 1) as f64 })
        .collect()
}

fn cmd_sweep_qber(args: &SweepQberArgs) -> std::result::Result<i32, Failure> {
    let settings = args.engine.settings().map_err(usage)?;
    check_p(args.p)?;
    if args.steps < 2 {
        return Err(Failure::Usage("--steps must be at least 2".into()));
    }
    if args.qz_min > args.qz_max || args.qx_min > args.qx_max {
        return Err(Failure::Usage("lattice bounds are reversed".into()));
    }
    let mut rows = Vec::new();
    for &scheme in &args.schemes {
        for &qz in &lattice_axis(args.qz_min, args.qz_max, args.steps) {
            for &qx in &lattice_axis(args.qx_min, args.qx_max, args.steps) {
                rows.push(
                    ModelConfig::with_n_max(scheme, args.n, args.b, qz, qx, args.engine.n_max)
                        .map_err(|e| (scheme, args.n, qz, qx, e)),
                );
            }
        }
    }
    write_sweep(&args.out, rows, args.b, args.p, &settings)
}

fn cmd_simulate(args: &SimulateArgs) -> std::result::Result<i32, Failure> {
    let attack = args.attack.spec().map_err(usage)?;
    let mut config = match args.mode {
        SimMode::Cdm06 => {
            let sizing = match (args.m, args.raw_qubits) {
                (Some(m), None) => EnsembleSizing::Balanced(m),
                (None, Some(n)) => EnsembleSizing::RawQubits(n),
                _ => return Err(Failure::Usage("cdm06 mode needs exactly one of --m or --raw-qubits".into())),
            };
            let mut c = SessionConfig::cdm06(sizing, attack, args.trials, 0);
            c.basis = args.b;
            c.p = args.p;
            c
        }
        SimMode::Model => SessionConfig::model(args.scheme, args.n, args.b, attack, args.p, args.trials, 0),
    };
    config.sacrifice_fraction = args.sacrifice_fraction;
    config.validate().map_err(usage)?;
    config.seed = resolve_seed(args.seed);
    let report = run_session(&config)?;
    let mut w = open_output(&args.out)?;
    match args.format {
        ReportFormat::Kv => write!(w, "{}", report.to_key_value())?,
        ReportFormat::Csv => {
            if !args.out.no_header {
                writeln!(w, "{SESSION_CSV_HEADER}")?;
            }
            writeln!(w, "{}", report.csv_row())?;
        }
    }
    w.flush()?;
    Ok(EXIT_OK)
}

pub const PE_CSV_HEADER: &str = "m,analytic_pe,empirical_pe,std_error";

fn cmd_cdm06_pe(args: &PeArgs) -> std::result::Result<i32, Failure> {
    let attack = args.attack.spec().map_err(usage)?;
    if args.m_from == 0 || args.m_from > args.m_to || args.m_to > 31 {
        return Err(Failure::Usage(format!("m range {}..={} outside 1..=31", args.m_from, args.m_to)));
    }
    if !(0.0..=1.0).contains(&args.p) || args.trials == 0 {
        return Err(Failure::Usage("need 0 <= p <= 1 and trials >= 1".into()));
    }
    let seed = resolve_seed(args.seed);
    let mut w = open_output(&args.out)?;
    if !args.out.no_header {
        writeln!(w, "{PE_CSV_HEADER}")?;
    }
    for m in args.m_from..=args.m_to {
        let mut config = SessionConfig::cdm06(EnsembleSizing::Balanced(m), attack, args.trials, seed);
        config.basis = args.b;
        config.p = args.p;
        let report = run_session(&config)?;
        let analytic = cdm06_error_probability(m, args.b, &attack, args.p)?;
        let fmt = |x: Option<f64>| x.map(format_float).unwrap_or_default();
        writeln!(
            w,
            "{m},{},{},{}",
            format_float(analytic),
            fmt(report.p_e_hat),
            fmt(report.p_e_std_error)
        )?;
    }
    w.flush()?;
    Ok(EXIT_OK)
}

fn dispatch(command: &Command) -> std::result::Result<i32, Failure> {
    match command {
        Command::Rate(a) => cmd_rate(a),
        Command::SweepN(a) => cmd_sweep_n(a),
        Command::SweepQber(a) => cmd_sweep_qber(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Cdm06Pe(a) => cmd_cdm06_pe(a),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match config::merge_config_args(args) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads.unwrap_or(0)).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_ERROR;
        }
    };
    match pool.install(|| dispatch(&cli.command)) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}\n\nFor more information, try '--help'.");
            EXIT_USAGE
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            EXIT_ERROR
        }
    }
}
