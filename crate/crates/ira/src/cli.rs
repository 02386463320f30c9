//! The `ira` command-line tool.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use ira_core::bounds::{bec_bound, mbios_bound, necessary_puncturing, BoundInputs};
use ira_core::channel::ChannelModel;
use ira_core::construction::{construct, ConstructionOptions, DEFAULT_EXPURGATION};
use ira_core::de::{check_success, de_threshold, DeConfig, DePair};
use ira_core::ensembles::{EnsembleOptions, EnsembleSpec, Family, Truncation};
use ira_core::graph::{encode, Accumulator};
use ira_core::Error;

use crate::dd_file::DdFile;
use crate::graph_file::{read_graph, write_graph};
use crate::reports::{
    bits_from_str, bits_to_string, BoundReport, CodewordReport, DeReport, EnsembleSummary, PuncturingReport,
    RateReport,
};
use crate::sweep::{parse_grid, records_for_graph, write_csv, SweepConfig};

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20_050_101;
/// Environment variable holding the default worker-thread count.
pub const THREADS_ENV: &str = "IRA_THREADS";
/// `ε` used when neither `--epsilon` nor `--max-degree` is given.
pub const DEFAULT_EPSILON: f64 = 0.1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_CONSTRUCTION: i32 = 3;
pub const EXIT_REGION: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "ira", version, about = "Capacity-achieving non-systematic IRA codes on the BEC")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the truncated degree distributions as JSON.
    Dd(DdArgs),
    /// Check density-evolution convergence and optionally find the threshold.
    De(DeArgs),
    /// Sample a Tanner graph and write it as text.
    Construct(ConstructArgs),
    /// Encode information bits on a stored graph.
    Encode(EncodeArgs),
    /// Monte Carlo sweep over the erasure probability, written as CSV.
    Simulate(SimulateArgs),
    /// Lower bounds on the decoding complexity.
    Bounds(BoundsArgs),
    /// Rates and complexity of an ensemble.
    Rate(RateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    BitRegular,
    CheckRegular,
    Ldpc,
}

#[derive(Debug, Clone, Args)]
pub struct EnsembleArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Repetition degree of the bit-regular family.
    #[arg(long, default_value_t = 3)]
    pub q: usize,
    /// Check degree of the LDPC baseline.
    #[arg(long, default_value_t = 8)]
    pub d: usize,
    /// Design erasure probability.
    #[arg(long)]
    pub p: Option<f64>,
    /// Target rate; with `--max-degree` picks `p` for the check-regular family.
    #[arg(long)]
    pub rate: Option<f64>,
    /// Capacity gap used to choose the truncation degree.
    #[arg(long, conflicts_with = "max_degree")]
    pub epsilon: Option<f64>,
    /// Truncation degree `M`.
    #[arg(long = "max-degree", visible_alias = "M")]
    pub max_degree: Option<usize>,
    /// Number of series coefficients.
    #[arg(long, default_value_t = 4096)]
    pub order: usize,
    /// Admit parameters covered only by the non-negativity conjectures.
    #[arg(long)]
    pub conjecture: bool,
}

#[derive(Debug, Args)]
pub struct DdArgs {
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DeArgs {
    #[command(flatten)]
    pub ensemble: Option<EnsembleArgs>,
    /// Read the pair from a distribution file instead.
    #[arg(long, conflicts_with = "family")]
    pub dd: Option<PathBuf>,
    /// Channel erasure probability; defaults to the design value.
    #[arg(long = "p-channel")]
    pub p_channel: Option<f64>,
    /// Also bisect for the largest converging erasure probability.
    #[arg(long)]
    pub threshold: bool,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Points of the uniform grid on (0, 1].
    #[arg(long, default_value_t = 10_000)]
    pub grid: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct GraphArgs {
    /// Block length: checks for IRA graphs, variable nodes for LDPC.
    #[arg(long = "n", visible_alias = "N", default_value_t = 8192)]
    pub n: usize,
    /// Information bits also transmitted to start decoding.
    #[arg(long, default_value_t = 150)]
    pub systematic: usize,
    /// Close the accumulator into a ring.
    #[arg(long)]
    pub circular: bool,
    /// Keep bits that sit on two consecutive accumulator checks.
    #[arg(long = "allow-chain-cycles")]
    pub allow_chain_cycles: bool,
    /// Break cycles of degree-two nodes holding at most this many code bits
    /// (0 disables).
    #[arg(long, default_value_t = DEFAULT_EXPURGATION)]
    pub expurgation: usize,
    #[arg(long = "max-rounds", default_value_t = 1000)]
    pub max_rounds: usize,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Information bits as a string of 0 and 1; random when absent.
    #[arg(long)]
    pub info: Option<String>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
    #[command(flatten)]
    pub graph_opts: GraphArgs,
    /// Simulate this stored graph instead of sampling one.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    /// Erasure probabilities as start:stop:step, both ends included.
    #[arg(long)]
    pub pgrid: String,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads; defaults to the environment variable IRA_THREADS.
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChannelArg {
    Bec,
    Bsc,
    Biawgn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundArg {
    /// Erasure-channel bound per information bit.
    Bec,
    /// Bound per iteration for any binary-input symmetric channel.
    Mbios,
}

impl BoundArg {
    fn name(self) -> &'static str {
        match self {
            BoundArg::Bec => "bec",
            BoundArg::Mbios => "mbios",
        }
    }
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long, value_enum, default_value_t = BoundArg::Bec)]
    pub bound: BoundArg,
    #[arg(long, value_enum, default_value_t = ChannelArg::Bec)]
    pub channel: ChannelArg,
    /// Erasure probability, crossover probability or noise deviation.
    #[arg(long)]
    pub param: f64,
    #[arg(long = "p-pct", default_value_t = 0.0)]
    pub p_pct: f64,
    #[arg(long, default_value_t = 0.01)]
    pub epsilon: f64,
    #[arg(long = "l-min", default_value_t = 1)]
    pub l_min: u32,
    /// Scan the smallest puncturing rate meeting `--budget` instead.
    #[arg(long)]
    pub puncturing: bool,
    #[arg(long, value_delimiter = ',', default_values_t = [1e-2, 1e-3, 1e-4])]
    pub epsilons: Vec<f64>,
    #[arg(long)]
    pub budget: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RateArgs {
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Failure carrying its process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn precondition(message: impl Into<String>) -> Self {
        CliError { code: EXIT_PRECONDITION, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::OutsideProvenRegion { .. } | Error::NegativeCoefficient { .. } => EXIT_REGION,
            Error::ConstructionFailure { .. } | Error::InfeasibleProfile(_) => EXIT_CONSTRUCTION,
            _ => EXIT_PRECONDITION,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::precondition(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

impl EnsembleArgs {
    pub fn spec(&self) -> CliResult<EnsembleSpec> {
        let opts = EnsembleOptions { order: self.order, conjecture: self.conjecture, ..Default::default() };
        let truncation = match (self.epsilon, self.max_degree) {
            (Some(e), _) => Truncation::Epsilon(e),
            (None, Some(m)) => Truncation::MaxDegree(m),
            (None, None) => Truncation::Epsilon(DEFAULT_EPSILON),
        };
        let need_p = || self.p.ok_or_else(|| CliError::precondition("--p is required for this family"));
        let spec = match self.family {
            FamilyArg::BitRegular => EnsembleSpec::bit_regular(self.q, need_p()?, truncation, opts)?,
            FamilyArg::CheckRegular => match (self.rate, self.p) {
                (Some(_), Some(_)) => return Err(CliError::precondition("give either --rate or --p")),
                (Some(rate), None) => {
                    let m = self
                        .max_degree
                        .ok_or_else(|| CliError::precondition("--rate needs --max-degree"))?;
                    EnsembleSpec::check_regular_for_rate(rate, m, opts)?
                }
                (None, _) => EnsembleSpec::check_regular(need_p()?, truncation, opts)?,
            },
            FamilyArg::Ldpc => EnsembleSpec::ldpc(self.d, self.max_degree, opts)?,
        };
        if spec.conjecture {
            eprintln!(
                "warning: p = {} lies outside the proven region; non-negativity of the \
                 coefficients is conjectured, not proven",
                spec.p
            );
        }
        Ok(spec)
    }
}

impl GraphArgs {
    fn options(&self, seed: u64) -> ConstructionOptions {
        ConstructionOptions {
            block_length: self.n,
            systematic: self.systematic,
            accumulator: if self.circular { Accumulator::Circular } else { Accumulator::Chain },
            max_rounds: self.max_rounds,
            chain_cycles: !self.allow_chain_cycles,
            expurgation: self.expurgation,
            seed,
        }
    }
}

fn with_output<F>(out: Option<&Path>, f: F) -> CliResult<()>
where
    F: FnOnce(&mut dyn Write) -> CliResult<()>,
{
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path).map_err(|e| {
                CliError::precondition(format!("cannot create {}: {e}", path.display()))
            })?);
            f(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            f(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn write_json<T: Serialize>(out: Option<&Path>, value: &T) -> CliResult<()> {
    with_output(out, |w| {
        serde_json::to_writer_pretty(&mut *w, value).map_err(|e| CliError::precondition(e.to_string()))?;
        writeln!(w)?;
        Ok(())
    })
}

fn open(path: &Path) -> CliResult<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| CliError::precondition(format!("cannot open {}: {e}", path.display())))
}

fn cmd_dd(a: &DdArgs) -> CliResult<()> {
    let spec = a.ensemble.spec()?;
    let file = DdFile::from_spec(&spec);
    with_output(a.out.as_deref(), |w| {
        file.write(&mut *w).map_err(|e| CliError::precondition(e.to_string()))?;
        writeln!(w)?;
        Ok(())
    })
}

fn cmd_de(a: &DeArgs) -> CliResult<()> {
    let (summary, pair, p_design) = match (&a.dd, &a.ensemble) {
        (Some(path), _) => {
            let file = DdFile::read(open(path)?).map_err(|e| CliError::precondition(e.to_string()))?;
            let spec = file.to_spec()?;
            if spec.family == Family::Ldpc {
                return Err(CliError::precondition("density evolution covers the IRA families only"));
            }
            (EnsembleSummary::new(&spec), DePair::from_spec(&spec)?, spec.p)
        }
        (None, Some(args)) => {
            let spec = args.spec()?;
            (EnsembleSummary::new(&spec), DePair::from_spec(&spec)?, spec.p)
        }
        (None, None) => return Err(CliError::precondition("give an ensemble or --dd")),
    };
    let p = a.p_channel.unwrap_or(p_design);
    if !(0.0..=1.0).contains(&p) || a.grid == 0 {
        return Err(CliError::precondition("--p-channel must lie in [0, 1] and --grid be positive"));
    }
    let mut cfg = DeConfig::new(pair, p);
    cfg.grid_size = a.grid;
    let report = DeReport::new(summary, p, a.grid, &check_success(&cfg));
    let report = if a.threshold { report.with_threshold(&de_threshold(&cfg, a.tol)?, a.tol) } else { report };
    write_json(a.out.as_deref(), &report)
}

fn cmd_construct(a: &ConstructArgs) -> CliResult<()> {
    let spec = a.ensemble.spec()?;
    let built = construct(&spec, &a.graph.options(a.seed))?;
    with_output(a.out.as_deref(), |w| Ok(write_graph(&built.graph, w)?))
}

fn cmd_encode(a: &EncodeArgs) -> CliResult<()> {
    let graph = read_graph(open(&a.graph)?).map_err(|e| CliError::precondition(e.to_string()))?;
    let info = match &a.info {
        Some(s) => bits_from_str(s).map_err(CliError::precondition)?,
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            let mut bits: Vec<u8> = (0..graph.n_info()).map(|_| rng.gen_range(0..2)).collect();
            for &b in graph.pilots() {
                bits[b as usize] = 0;
            }
            bits
        }
    };
    let cw = encode(&graph, &info)?;
    let report = CodewordReport {
        info: bits_to_string(&cw.info),
        parity: bits_to_string(&cw.parity),
        transmitted: bits_to_string(&cw.transmitted(&graph)),
    };
    write_json(a.out.as_deref(), &report)
}

/// Thread count from `--threads`, else `IRA_THREADS`, else rayon's default.
fn thread_count(flag: Option<usize>) -> CliResult<Option<usize>> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| CliError::precondition(format!("{THREADS_ENV} must be a thread count"))),
        Err(_) => Ok(None),
    }
}

fn cmd_simulate(a: &SimulateArgs) -> CliResult<()> {
    let spec = a.ensemble.spec()?;
    let p_grid = parse_grid(&a.pgrid).map_err(CliError::precondition)?;
    let construction = a.graph_opts.options(a.seed);
    let graph = match &a.graph {
        Some(path) => read_graph(open(path)?).map_err(|e| CliError::precondition(e.to_string()))?,
        None => construct(&spec, &construction)?.graph,
    };
    let cfg = SweepConfig { construction, p_grid, trials: a.trials, seed: a.seed };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_count(a.threads)? {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| CliError::precondition(e.to_string()))?;
    let records = pool
        .install(|| records_for_graph(&spec, &graph, &cfg))
        .map_err(|e| CliError::precondition(e.to_string()))?;
    with_output(a.out.as_deref(), |w| write_csv(&records, w).map_err(|e| CliError::precondition(e.to_string())))
}

fn cmd_bounds(a: &BoundsArgs) -> CliResult<()> {
    let channel = match a.channel {
        ChannelArg::Bec => ChannelModel::Bec(a.param),
        ChannelArg::Bsc => ChannelModel::Bsc(a.param),
        ChannelArg::Biawgn => ChannelModel::BiAwgn(a.param),
    };
    if a.puncturing {
        let ChannelModel::Bec(p) = channel else {
            return Err(CliError::precondition("the puncturing scan needs the BEC"));
        };
        let limit = p / (1.0 - p) * a.l_min as f64;
        let budget = a.budget.unwrap_or(2.0 * limit);
        let rows = necessary_puncturing(&a.epsilons, p, a.l_min, budget)?;
        return write_json(a.out.as_deref(), &PuncturingReport::new(p, a.l_min, budget, &rows));
    }
    let inputs = BoundInputs { channel, p_pct: a.p_pct, epsilon: a.epsilon, l_min: a.l_min };
    let result = match a.bound {
        BoundArg::Bec => bec_bound(&inputs)?,
        BoundArg::Mbios => mbios_bound(&inputs)?,
    };
    for w in &result.warnings {
        eprintln!("warning: {}", w.message());
    }
    write_json(a.out.as_deref(), &BoundReport::new(a.bound.name(), &inputs, &result))
}

fn cmd_rate(a: &RateArgs) -> CliResult<()> {
    let spec = a.ensemble.spec()?;
    write_json(a.out.as_deref(), &RateReport::new(&spec))
}

pub fn execute(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Dd(a) => cmd_dd(a),
        Command::De(a) => cmd_de(a),
        Command::Construct(a) => cmd_construct(a),
        Command::Encode(a) => cmd_encode(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::Rate(a) => cmd_rate(a),
    }
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code. Errors are reported on stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_PRECONDITION } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}
