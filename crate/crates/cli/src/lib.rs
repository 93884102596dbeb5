//! The `ybmaps` command line: verification sweeps, chain simulation and the
//! map catalog.
//!
//! Exit codes: 0 when a sweep passes on every valid sample (and at least one
//! is valid), 1 when a property fails or a simulation hits a singularity, 2
//! for configuration errors, 3 when singular draws exhaust the retry budget.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use yb_core::chains::transfer_step;
use yb_core::verify::{sweep, sweep_lattice};
use yb_core::{
    parse_rational, Delta, Draws, Error, MapId, PathState, Property, QuadSystem, Rational, SweepConfig,
    VerificationReport, YbMap,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::RetryBudgetExhausted { .. }) => 3,
            CliError::Core(Error::Singular(_)) => 1,
            _ => 2,
        }
    }
}

fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

#[derive(Debug, Parser)]
#[command(
    name = "ybmaps",
    version,
    about = "Exact checks of Yang-Baxter maps and lattice systems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a seeded property sweep and write its report.
    Verify(VerifyArgs),
    /// Evolve a seeded path by flips or periodic transfer sweeps and write CSV.
    Simulate(SimulateArgs),
    /// Print the map catalog.
    ListMaps,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| format!("expected a rational p/q or p, got {s:?} ({e})"))
}

/// Family parameters shared by map and system identifiers.
#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    /// The E4 parameter (default 1).
    #[arg(long, value_name = "P/Q", value_parser = rational_arg)]
    pub epsilon: Option<Rational>,
    /// The E5 value of gamma^2 - beta^2 (default 1).
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub delta: Option<u8>,
    /// Components per field for the vector system.
    #[arg(long)]
    pub dim: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Map identifier; see `list-maps`.
    #[arg(long)]
    pub map: Option<String>,
    /// Lattice system (e1..e5, vnls:<n>) for the lattice properties.
    #[arg(long)]
    pub system: Option<String>,
    #[arg(long)]
    pub property: String,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Sampled rationals are p/q with |p|, q <= bound.
    #[arg(long, default_value_t = 10)]
    pub bound: u64,
    /// Fresh draws per sample before it is counted as skipped.
    #[arg(long, default_value_t = 20)]
    pub retry_budget: u64,
    /// Fixes the slope of the first E5 edge parameter; the others are sampled.
    #[arg(long, value_name = "P/Q", value_parser = rational_arg)]
    pub gamma_slope: Option<Rational>,
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Check the corrupted map (first multiplier plus one) instead.
    #[arg(long)]
    pub corrupt: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[arg(long, default_value = "e1")]
    pub system: String,
    /// Periodic chain with this many vertices.
    #[arg(long)]
    pub period: Option<usize>,
    /// Transfer sweeps to apply to the periodic chain.
    #[arg(long, default_value_t = 1)]
    pub sweeps: usize,
    /// Open path with this many vertices.
    #[arg(long)]
    pub length: Option<usize>,
    /// Comma-separated vertex indices to flip, in order.
    #[arg(long)]
    pub flips: Option<String>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 10)]
    pub bound: u64,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn split_dim(name: &str, family: &FamilyArgs) -> Result<Option<usize>, CliError> {
    let Some(rest) = name.strip_prefix("vnls") else {
        return Ok(None);
    };
    let n = match (rest.strip_prefix(':'), rest.is_empty(), family.dim) {
        (Some(n), _, dim) => {
            let n: usize = n
                .parse()
                .map_err(|_| config(format!("bad vector dimension in {name:?}")))?;
            if dim.is_some_and(|d| d != n) {
                return Err(config(format!("--dim conflicts with {name:?}")));
            }
            n
        }
        (None, true, Some(d)) => d,
        (None, true, None) => return Err(config("vnls needs a dimension: vnls:<n> or --dim n")),
        (None, false, _) => return Err(config(format!("unknown identifier {name:?}"))),
    };
    if n == 0 {
        return Err(config("vector dimension must be at least 1"));
    }
    Ok(Some(n))
}

fn check_family_flags(name: &str, family: &FamilyArgs, is_vector: bool) -> Result<(), CliError> {
    let base = name.split(':').next().unwrap_or(name);
    if family.epsilon.is_some() && base != "e4" {
        return Err(config(format!("--epsilon applies to e4 only, not {name}")));
    }
    if family.delta.is_some() && base != "e5" {
        return Err(config(format!("--delta applies to e5 only, not {name}")));
    }
    if family.dim.is_some() && !is_vector {
        return Err(config(format!("--dim applies to vnls only, not {name}")));
    }
    Ok(())
}

fn delta_of(family: &FamilyArgs) -> Delta {
    match family.delta {
        Some(0) => Delta::Zero,
        _ => Delta::One,
    }
}

fn epsilon_of(family: &FamilyArgs) -> Rational {
    family
        .epsilon
        .clone()
        .unwrap_or_else(|| Rational::from_integer(1.into()))
}

pub fn parse_map(name: &str, family: &FamilyArgs) -> Result<MapId, CliError> {
    let dim = split_dim(name, family)?;
    check_family_flags(name, family, dim.is_some())?;
    if let Some(n) = dim {
        return Ok(MapId::Vnls { n });
    }
    Ok(match name {
        "e1-shaded" => MapId::E1Shaded,
        "e1-blank" => MapId::E1Blank,
        "e2" => MapId::E2,
        "e3" => MapId::E3,
        "e4" => MapId::E4Generic {
            epsilon: epsilon_of(family),
        },
        "e4-eps0-scaling" => MapId::E4Eps0Scaling,
        "e4-eps0-joint" => MapId::E4Eps0Joint,
        "e5" => MapId::E5 {
            delta: delta_of(family),
        },
        other => return Err(config(format!("unknown map {other:?}; see list-maps"))),
    })
}

pub fn parse_system(name: &str, family: &FamilyArgs) -> Result<QuadSystem, CliError> {
    let dim = split_dim(name, family)?;
    check_family_flags(name, family, dim.is_some())?;
    if let Some(n) = dim {
        return Ok(QuadSystem::Vnls { n });
    }
    Ok(match name {
        "e1" => QuadSystem::E1,
        "e2" => QuadSystem::E2,
        "e3" => QuadSystem::E3,
        "e4" => QuadSystem::E4 {
            epsilon: epsilon_of(family),
        },
        "e5" => QuadSystem::E5 {
            delta: delta_of(family),
        },
        other => return Err(config(format!("unknown lattice system {other:?}"))),
    })
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn write_report(report: &VerificationReport, args: &VerifyArgs) -> Result<(), CliError> {
    let mut out = output(&args.out)?;
    match args.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, report)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record([
                "map",
                "property",
                "requested",
                "valid",
                "passed",
                "skipped",
                "first_failure",
            ])?;
            let failure = report
                .first_failure
                .as_ref()
                .map(|f| f.sample.to_string())
                .unwrap_or_default();
            w.write_record([
                report.map.clone(),
                report.property.to_string(),
                report.requested.to_string(),
                report.valid.to_string(),
                report.passed.to_string(),
                report.skipped.to_string(),
                failure,
            ])?;
            w.flush()?;
            return Ok(());
        }
    }
    out.flush()?;
    Ok(())
}

fn verify(args: &VerifyArgs) -> Result<i32, CliError> {
    let property: Property = args.property.parse()?;
    let mut cfg = SweepConfig::new(args.seed, args.samples, args.bound);
    cfg.retry_budget = args.retry_budget;
    cfg.pinned_slope = args.gamma_slope.clone();

    let report = match (&args.map, &args.system) {
        (Some(name), None) => {
            let id = parse_map(name, &args.family)?;
            if args.gamma_slope.is_some() && !matches!(id, MapId::E5 { .. }) {
                return Err(config("--gamma-slope applies to e5 only"));
            }
            if args.corrupt && property.is_lattice() {
                return Err(config("--corrupt applies to map properties only"));
            }
            let map = if args.corrupt {
                YbMap::corrupted(id)
            } else {
                YbMap::new(id)
            };
            sweep(&map, property, &cfg)?
        }
        (None, Some(name)) => {
            let system = parse_system(name, &args.family)?;
            if args.gamma_slope.is_some() && !matches!(system, QuadSystem::E5 { .. }) {
                return Err(config("--gamma-slope applies to e5 only"));
            }
            if args.corrupt {
                return Err(config("--corrupt applies to map properties only"));
            }
            sweep_lattice(&system, property, &cfg)?
        }
        _ => return Err(config("give exactly one of --map or --system")),
    };
    write_report(&report, args)?;
    Ok(if report.holds() { 0 } else { 1 })
}

/// The seeded initial path used by `simulate`.
pub fn initial_path(
    system: QuadSystem,
    vertices: usize,
    periodic: bool,
    seed: u64,
    bound: u64,
) -> Result<PathState, CliError> {
    if bound == 0 {
        return Err(config("--bound must be positive"));
    }
    let mut draws = Draws::new(seed, 0, bound);
    Ok(if periodic {
        PathState::sample_periodic(system, vertices, &mut draws)?
    } else {
        PathState::sample_open(system, vertices, &mut draws)?
    })
}

fn marker_row(width: usize, err: &Error) -> Vec<String> {
    let mut row = vec!["singular".to_owned(), err.to_string()];
    row.resize(width, String::new());
    row
}

fn simulate(args: &SimulateArgs) -> Result<i32, CliError> {
    let system = parse_system(&args.system, &args.family)?;
    match (args.period, args.length) {
        (Some(period), None) => {
            if period < 2 {
                return Err(config("--period must be at least 2"));
            }
            if args.flips.is_some() {
                return Err(config("--flips applies to open paths (--length)"));
            }
            let mut path = initial_path(system, period, true, args.seed, args.bound)?;
            let mut w = csv::Writer::from_writer(output(&args.out)?);
            let mut header = vec!["sweep".to_owned()];
            header.extend(path.csv_header());
            w.write_record(&header)?;
            for s in 1..=args.sweeps {
                match transfer_step(&path) {
                    Ok(next) => path = next,
                    Err(e) if e.is_singular() => {
                        w.write_record(marker_row(header.len(), &e))?;
                        w.flush()?;
                        return Ok(1);
                    }
                    Err(e) => return Err(e.into()),
                }
                let mut row = vec![s.to_string()];
                row.extend(path.csv_row());
                w.write_record(&row)?;
            }
            w.flush()?;
            Ok(0)
        }
        (None, Some(length)) => {
            if length < 3 {
                return Err(config("--length must be at least 3"));
            }
            let flips = args
                .flips
                .as_deref()
                .ok_or_else(|| config("open paths need --flips"))?;
            let flips = flips
                .split(',')
                .map(|k| k.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| config(format!("--flips expects comma-separated indices, got {flips:?}")))?;
            let mut path = initial_path(system, length, false, args.seed, args.bound)?;
            if let Some(&k) = flips.iter().find(|&&k| !path.is_flippable(k)) {
                return Err(config(format!(
                    "cannot flip vertex {k} of an open path with {length} vertices"
                )));
            }
            let mut w = csv::Writer::from_writer(output(&args.out)?);
            let mut header = vec!["step".to_owned(), "flip".to_owned()];
            header.extend(path.csv_header());
            w.write_record(&header)?;
            for (step, &k) in flips.iter().enumerate() {
                match path.flip(k) {
                    Ok(next) => path = next,
                    Err(e) if e.is_singular() => {
                        w.write_record(marker_row(header.len(), &e))?;
                        w.flush()?;
                        return Ok(1);
                    }
                    Err(e) => return Err(e.into()),
                }
                let mut row = vec![(step + 1).to_string(), k.to_string()];
                row.extend(path.csv_row());
                w.write_record(&row)?;
            }
            w.flush()?;
            Ok(0)
        }
        _ => Err(config("give exactly one of --period or --length")),
    }
}

/// `(identifier, lattice system, edge invariants, parameters)`.
pub const CATALOG: [(&str, &str, &str, &str); 9] = [
    ("e1-shaded", "e1", "(u/u1, v*u1)", "-"),
    ("e1-blank", "e1", "(v/v1, v*u1)", "-"),
    ("e2", "e2", "(u/u1, v*u1)", "-"),
    ("e3", "e3", "(u - u1, v + u1)", "-"),
    ("e4", "e4", "(u - u1, v + u1)", "--epsilon p/q (default 1)"),
    ("e4-eps0-scaling", "e4, epsilon = 0", "(u/u1, v/u1)", "-"),
    (
        "e4-eps0-joint",
        "e4, epsilon = 0",
        "((u - u1)/(v + u1), (v - v1)/(v + u1))",
        "-",
    ),
    (
        "e5",
        "e5",
        "(u/u1, v/u1)",
        "--delta {0,1} (default 1), --gamma-slope p/q",
    ),
    (
        "vnls:<n>",
        "vnls:<n>",
        "(u_i/u1_i, v_i*u1_i) per component",
        "n >= 1",
    ),
];

fn list_maps() -> Result<i32, CliError> {
    let mut out = io::stdout().lock();
    writeln!(
        out,
        "{:<17} {:<17} {:<40} PARAMETERS",
        "MAP", "LATTICE", "INVARIANTS"
    )?;
    for (id, system, invariants, params) in CATALOG {
        writeln!(out, "{id:<17} {system:<17} {invariants:<40} {params}")?;
    }
    Ok(0)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = match &cli.command {
        Command::Verify(args) => verify(args),
        Command::Simulate(args) => simulate(args),
        Command::ListMaps => list_maps(),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        e.exit_code()
    })
}
