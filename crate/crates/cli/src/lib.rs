//! `paretoscope`: sample fronts, solve scalarizations, check the model and
//! launch the exploration service from the command line.

pub mod acceptance;

use std::ffi::OsString;
use std::io::{self, Write};
use std::net::SocketAddr;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use paretoscope_core::mimo::{self, MimoParams};
use paretoscope_core::problems::summaries;
use paretoscope_core::{
    builtin_with, export_front, grid_sample_with, Builtin, Execution, ExportFormat, Front, FrontParameters, GoalKind, GoalSpec,
    GridSpec, MooError, Norm, ScalarOptions, SearchSpace,
};
use paretoscope_service::{ServiceConfig, DEFAULT_PORT};

/// Environment variable naming the default data directory for `serve`.
pub const DATA_DIR_ENV: &str = "PARETOSCOPE_DATA";
pub const DEFAULT_DATA_DIR: &str = "paretoscope-data";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USER: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "paretoscope", version, about = "Multi-objective front sampling and scalarization")]
pub struct Cli {
    /// More log output (repeatable).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the built-in problems.
    Problems,
    /// Sample the Pareto boundary.
    Sample(SampleArgs),
    /// Maximize a goal function of the objectives.
    Scalarize(ScalarizeArgs),
    /// Component-wise maximum of the objectives over the search grid.
    Utopia(ProblemArgs),
    /// Run the HTTP service.
    Serve(ServeArgs),
    /// Run the acceptance suite and print a pass/fail table.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct ProblemArgs {
    #[arg(long)]
    pub problem: String,
    /// Model parameter overrides, one `name = value` per line.
    #[arg(long, value_name = "FILE")]
    pub params: Option<PathBuf>,
    /// Power grid points for the MIMO problem.
    #[arg(long, value_name = "N", default_value_t = paretoscope_core::problems::MIMO_POWER_POINTS)]
    pub power_points: usize,
    /// Run single-threaded.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SampleMethod {
    Grid,
    Direction,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, value_enum, default_value = "direction")]
    pub method: SampleMethod,
    /// Directions to sweep, or points per axis of a uniform grid.
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long, default_value_t = 1e-6)]
    pub eps: f64,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Record the creation time in the front (makes output run-dependent).
    #[arg(long)]
    pub timestamp: bool,
}

#[derive(Debug, Args)]
pub struct ScalarizeArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long)]
    pub goal: GoalKind,
    /// Comma-separated weights, or `utopia`.
    #[arg(long)]
    pub weights: Option<String>,
    /// Comma-separated reference point for the distance goal, or `utopia`.
    #[arg(long = "ref")]
    pub reference: Option<String>,
    #[arg(long, default_value = "2")]
    pub norm: Norm,
    /// Local refinement levels after the grid scan.
    #[arg(long, default_value_t = 0)]
    pub refine: usize,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value_t = DEFAULT_PORT)]
    pub port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    pub host: std::net::IpAddr,
    /// Data directory; defaults to $PARETOSCOPE_DATA, then ./paretoscope-data.
    #[arg(long, value_name = "DIR")]
    pub data: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    pub workers: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run single-threaded.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Model(#[from] MooError),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    File { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Model(MooError::LambdaMaxTooSmall(_) | MooError::Serialization(_)) | CliError::Internal(_) => EXIT_INTERNAL,
            _ => EXIT_USER,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return EXIT_OK;
                }
                _ => EXIT_USER,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> CliResult<i32> {
    match cli.command {
        Command::Problems => problems(out).map(|_| EXIT_OK),
        Command::Sample(a) => sample(&a, out).map(|_| EXIT_OK),
        Command::Scalarize(a) => scalarize(&a, out).map(|_| EXIT_OK),
        Command::Utopia(a) => utopia(&a, out).map(|_| EXIT_OK),
        Command::Serve(a) => serve(&a, cli.verbose).map(|_| EXIT_OK),
        Command::Verify(a) => verify(&a, out),
    }
}

fn write_out(out: &mut dyn Write, bytes: &[u8]) -> CliResult<()> {
    out.write_all(bytes).map_err(|e| CliError::File { path: "<stdout>".into(), source: e })
}

fn to_json<T: serde::Serialize>(value: &T) -> CliResult<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value).map_err(|e| CliError::Internal(e.to_string()))?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Writes to `path` when given, else to `out`.
fn emit(path: Option<&PathBuf>, bytes: &[u8], out: &mut dyn Write) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| CliError::File { path: p.clone(), source: e }),
        None => write_out(out, bytes),
    }
}

fn problems(out: &mut dyn Write) -> CliResult<()> {
    let mut text = String::new();
    for s in summaries() {
        let objectives: Vec<String> =
            s.objectives.iter().map(|o| if o.unit.is_empty() { o.name.clone() } else { format!("{} [{}]", o.name, o.unit) }).collect();
        text.push_str(&format!("{}\tD={}\tM={}\t{}\n", s.name, s.d, s.m, objectives.join(", ")));
    }
    write_out(out, text.as_bytes())
}

/// Built-in problem with overrides applied and its search grid.
pub fn load_problem(args: &ProblemArgs) -> CliResult<Builtin> {
    let mut params = MimoParams::default();
    if let Some(path) = &args.params {
        if args.problem != mimo::PROBLEM_NAME {
            return Err(CliError::Usage(format!("problem `{}` takes no parameter file", args.problem)));
        }
        let text = std::fs::read_to_string(path).map_err(|e| CliError::File { path: path.clone(), source: e })?;
        params.apply_overrides(&text)?;
    }
    let mut b = builtin_with(&args.problem, &params)?;
    if args.problem == mimo::PROBLEM_NAME {
        if args.power_points == 0 {
            return Err(CliError::Usage("--power-points must be at least 1".into()));
        }
        b.grid = mimo::search_grid(&params, args.power_points);
    }
    Ok(b)
}

fn execution(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::default()
    }
}

pub fn sample_front(args: &SampleArgs) -> CliResult<Front> {
    let b = load_problem(&args.problem)?;
    let exec = execution(args.problem.sequential);
    let mut front = match args.method {
        SampleMethod::Direction => {
            let space = SearchSpace::build(&b.problem, &b.grid, exec)?;
            space.sample_front(args.count.unwrap_or(32), args.eps)?
        }
        SampleMethod::Grid => {
            let grid = match args.count {
                Some(n) => GridSpec::uniform(b.problem.dimension(), n),
                None => b.grid.clone(),
            };
            let mut front = grid_sample_with(&b.problem, &grid, exec)?;
            front.parameters = Some(FrontParameters::Grid { grid });
            front
        }
    };
    if args.timestamp {
        front.created_at = Some(paretoscope_service::now());
    }
    Ok(front)
}

fn sample(args: &SampleArgs, out: &mut dyn Write) -> CliResult<()> {
    let front = sample_front(args)?;
    let format = match args.format {
        Format::Json => ExportFormat::Json,
        Format::Csv => ExportFormat::Csv,
    };
    let bytes = export_front(&front, format)?;
    emit(args.out.as_ref(), &bytes, out)?;
    if args.out.is_some() {
        let boundary = front.boundary_points().count();
        let line = format!("{} points ({boundary} on the boundary, {} failed)\n", front.points.len(), front.errors.len());
        write_out(out, line.as_bytes())?;
    }
    Ok(())
}

/// Comma-separated numbers, or `utopia`.
fn parse_vector(text: &str, utopia: &dyn Fn() -> CliResult<Vec<f64>>, what: &str) -> CliResult<Vec<f64>> {
    if text.trim() == "utopia" {
        return utopia();
    }
    text.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("{what}: `{t}` is not a number"))))
        .collect()
}

pub fn solve(args: &ScalarizeArgs) -> CliResult<paretoscope_core::ScalarSolution> {
    let b = load_problem(&args.problem)?;
    let exec = execution(args.problem.sequential);
    let space = std::cell::OnceCell::new();
    let utopia = || -> CliResult<Vec<f64>> {
        if space.get().is_none() {
            let _ = space.set(SearchSpace::build(&b.problem, &b.grid, exec)?);
        }
        Ok(space.get().map(|s: &SearchSpace| s.utopia_values().to_vec()).unwrap_or_default())
    };
    let goal = match args.goal {
        GoalKind::Distance => {
            let r = args.reference.as_deref().ok_or_else(|| CliError::Usage("the distance goal needs --ref".into()))?;
            GoalSpec::distance(parse_vector(r, &utopia, "--ref")?, args.norm)?
        }
        kind => {
            let w = args.weights.as_deref().ok_or_else(|| CliError::Usage(format!("the {kind:?} goal needs --weights").to_lowercase()))?;
            GoalSpec::weighted(kind, parse_vector(w, &utopia, "--weights")?)?
        }
    };
    let opts = ScalarOptions { refine_levels: args.refine, exec, ..ScalarOptions::default() };
    Ok(paretoscope_core::solve_scalarized_with(&b.problem, &goal, &b.grid, &opts)?)
}

fn scalarize(args: &ScalarizeArgs, out: &mut dyn Write) -> CliResult<()> {
    let bytes = to_json(&solve(args)?)?;
    emit(args.out.as_ref(), &bytes, out)?;
    if args.out.is_some() {
        let sol: serde_json::Value = serde_json::from_slice(&bytes).map_err(|e| CliError::Internal(e.to_string()))?;
        write_out(out, format!("x* = {}, g* = {}\n", sol["x_star"], sol["g_star"]["values"]).as_bytes())?;
    }
    Ok(())
}

fn utopia(args: &ProblemArgs, out: &mut dyn Write) -> CliResult<()> {
    let b = load_problem(args)?;
    let space = SearchSpace::build(&b.problem, &b.grid, execution(args.sequential))?;
    write_out(out, &to_json(&space.utopia())?)
}

pub fn data_dir(flag: Option<&PathBuf>) -> PathBuf {
    flag.cloned()
        .or_else(|| std::env::var_os(DATA_DIR_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_DATA_DIR))
}

fn serve(args: &ServeArgs, verbose: u8) -> CliResult<()> {
    let level = match verbose {
        0 => tracing::Level::INFO,
        1 => tracing::Level::DEBUG,
        _ => tracing::Level::TRACE,
    };
    let ansi = io::IsTerminal::is_terminal(&io::stderr());
    let _ = tracing_subscriber::fmt().with_max_level(level).with_ansi(ansi).with_writer(io::stderr).try_init();
    let config = ServiceConfig {
        data_dir: data_dir(args.data.as_ref()),
        addr: SocketAddr::new(args.host, args.port),
        workers: args.workers.max(1),
    };
    let runtime = tokio::runtime::Runtime::new().map_err(|e| CliError::Internal(e.to_string()))?;
    runtime.block_on(paretoscope_service::serve(config)).map_err(|e| CliError::Usage(format!("cannot serve on port {}: {e}", args.port)))
}

fn verify(args: &VerifyArgs, out: &mut dyn Write) -> CliResult<i32> {
    let ctx = acceptance::Context::new(MimoParams::default(), execution(args.sequential))?;
    let mut io_err = None;
    let results = acceptance::run_all(&ctx, |c| {
        let mut text = c.line() + "\n";
        for d in &c.details {
            text.push_str(&format!("       {d}\n"));
        }
        if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
            io_err.get_or_insert(e);
        }
    });
    if let Some(e) = io_err {
        return Err(CliError::File { path: "<stdout>".into(), source: e });
    }
    let failed = results.iter().filter(|c| !c.passed).count();
    write_out(out, format!("{} of {} criteria passed\n", results.len() - failed, results.len()).as_bytes())?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_INTERNAL })
}
