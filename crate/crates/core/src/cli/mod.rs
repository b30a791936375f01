//! The `gapspec` command line.
//!
//! Settings come from an optional `--config` file and from flags; flags win.
//! The worker pool size is taken from `--threads`, then `GAPSPEC_THREADS`,
//! then the config file, then 1.
//!
//! Exit codes: 0 success, 1 malformed configuration or arguments, 2 domain
//! or regime error, 3 numerical non-convergence, 4 failed validation.

pub mod config;
pub mod emit;
pub mod reports;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::spectrum::{band_structure_in, ordinary_soliton, GapSector, Mode};
use crate::validate::run_suite;
use config::{Format, RunConfig};
use reports::{band_report, gap_report, linspace, medium_report, ordinary_report, pinned_report};

pub use config::ConfigError;
pub use emit::Report;

pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_NONCONVERGENCE: i32 = 3;
pub const EXIT_VALIDATION: i32 = 4;

pub const THREADS_ENV: &str = "GAPSPEC_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "gapspec",
    version,
    about = "Bethe-string spectrum of an impurity atom in a frequency-gap medium"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Flat `key = value` configuration file.
    #[arg(long, global = true)]
    config: Option<String>,
    /// Lower gap edge, absolute units.
    #[arg(long, global = true)]
    omega_perp: Option<f64>,
    /// Upper gap edge, absolute units.
    #[arg(long, global = true)]
    omega_par: Option<f64>,
    /// Atomic transition frequency, absolute units.
    #[arg(long, global = true)]
    omega12: Option<f64>,
    /// Lamb-shifted transition frequency (defaults to omega12).
    #[arg(long, global = true)]
    omega12_bar: Option<f64>,
    /// Dimensionless coupling gamma / omega12.
    #[arg(long, global = true)]
    beta: Option<f64>,
    /// Quantization radius L, absolute units.
    #[arg(long, global = true)]
    length: Option<f64>,
    /// Edge guard relative to the gap width.
    #[arg(long, global = true)]
    edge_guard: Option<f64>,
    #[arg(long, global = true, value_parser = parse_format)]
    format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<String>,
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true)]
    exact_tol: Option<f64>,
    #[arg(long, global = true)]
    max_iter: Option<usize>,
    #[arg(long, global = true)]
    validity_tolerance: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Permittivity, refractive and decay indices on a frequency grid.
    Medium {
        /// Grid start, absolute units.
        #[arg(long)]
        omega_min: Option<f64>,
        /// Grid end, absolute units.
        #[arg(long)]
        omega_max: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
    },
    /// Bound complex of N lower-branch polaritons (H < 0).
    Ordinary {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        h: Option<f64>,
    },
    /// Correlated gap pair (H > 0).
    Pair {
        #[arg(long, allow_hyphen_values = true)]
        h: Option<f64>,
    },
    /// Mobile gap soliton of l pairs.
    Soliton {
        #[arg(long)]
        l: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        h: Option<f64>,
        #[arg(long, value_parser = parse_mode)]
        mode: Option<Mode>,
    },
    /// Odd soliton pinned at the atom.
    Pinned {
        #[arg(long)]
        l: Option<usize>,
    },
    /// Soliton band over a grid of carrying rapidities.
    Band {
        #[arg(long)]
        l: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        h_min: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        h_max: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
    },
    /// Runs the invariant suite and prints a pass/fail report.
    Validate,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    Mode::parse(s).ok_or_else(|| format!("expected linear, corrected or exact, got `{s}`"))
}

impl Cli {
    fn flag_config(&self) -> RunConfig {
        let g = &self.global;
        let mut cfg = RunConfig {
            omega_perp: g.omega_perp,
            omega_par: g.omega_par,
            omega12: g.omega12,
            omega12_bar: g.omega12_bar,
            beta: g.beta,
            length: g.length,
            edge_guard: g.edge_guard,
            format: g.format,
            output: g.output.clone(),
            threads: g.threads,
            exact_tol: g.exact_tol,
            max_iter: g.max_iter,
            validity_tolerance: g.validity_tolerance,
            ..RunConfig::default()
        };
        match &self.command {
            Command::Medium {
                omega_min,
                omega_max,
                points,
            } => {
                cfg.omega_min = *omega_min;
                cfg.omega_max = *omega_max;
                cfg.points = *points;
            }
            Command::Ordinary { n, h } => {
                cfg.n = *n;
                cfg.h = *h;
            }
            Command::Pair { h } => cfg.h = *h,
            Command::Soliton { l, h, mode } => {
                cfg.l = *l;
                cfg.h = *h;
                cfg.mode = *mode;
            }
            Command::Pinned { l } => cfg.l = *l,
            Command::Band {
                l,
                h_min,
                h_max,
                points,
            } => {
                cfg.l = *l;
                cfg.h_min = *h_min;
                cfg.h_max = *h_max;
                cfg.points = *points;
            }
            Command::Validate => {}
        }
        cfg
    }
}

/// Failure of a run, carrying its exit code.
#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Core(#[from] Error),
    #[error("validation failed: {0} check(s) did not pass")]
    Validation(usize),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Config(_) => EXIT_CONFIG,
            Failure::Core(e) if e.is_numerical() => EXIT_NONCONVERGENCE,
            Failure::Core(_) => EXIT_DOMAIN,
            Failure::Validation(_) => EXIT_VALIDATION,
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e.to_string())
    }
}

fn required<T>(v: Option<T>, key: &str) -> Result<T, Failure> {
    v.ok_or_else(|| {
        Failure::Config(format!(
            "missing setting `{key}` (flag --{} or config key `{key}`)",
            key.replace('_', "-")
        ))
    })
}

/// Worker count: flag, then environment, then config file, then 1.
fn resolve_threads(flag: Option<usize>, file: Option<usize>) -> Result<usize, Failure> {
    let env = || match std::env::var(THREADS_ENV) {
        Ok(v) => v.trim().parse::<usize>().map(Some).map_err(|_| {
            Failure::Config(format!(
                "{THREADS_ENV} must be a positive integer, got `{v}`"
            ))
        }),
        Err(_) => Ok(None),
    };
    let n = match flag {
        Some(n) => n,
        None => env()?.or(file).unwrap_or(1),
    };
    if n == 0 {
        return Err(Failure::Config("thread count must be at least 1".into()));
    }
    Ok(n)
}

/// Runs the command line `argv` (program name first) against the process
/// standard streams and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_to(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// As [`run`], writing to the given streams.
pub fn run_to<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_CONFIG
                }
            };
        }
    };
    match execute(&cli, out, err) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {f}");
            f.code()
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let file = match &cli.global.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let flags = cli.flag_config();
    let threads = resolve_threads(flags.threads, file.threads)?;
    let cfg = file.overlay(&flags);
    let params = cfg
        .medium()
        .map_err(|e| Failure::Config(format!("medium parameters: {e}")))?;
    for w in params.warnings() {
        let _ = writeln!(err, "warning: {w}");
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure::Config(format!("cannot start {threads} workers: {e}")))?;

    let text = pool.install(|| produce(cli, &cfg, &params))?;
    let result = match &cfg.output {
        Some(path) => std::fs::write(path, &text.0),
        None => out.write_all(text.0.as_bytes()),
    };
    result.map_err(|e| Failure::Config(format!("cannot write output: {e}")))?;
    match text.1 {
        0 => Ok(()),
        failed => Err(Failure::Validation(failed)),
    }
}

/// Rendered output plus the number of failed validation checks.
fn produce(
    cli: &Cli,
    cfg: &RunConfig,
    p: &crate::medium::MediumParams,
) -> Result<(String, usize), Failure> {
    let format = cfg.format.unwrap_or_default();
    let sector = || GapSector::with_settings(p, cfg.settings());
    let report = match &cli.command {
        Command::Medium { .. } => {
            let lo = cfg.omega_min.unwrap_or(0.05 * p.scale()) / p.scale();
            let hi = cfg.omega_max.unwrap_or(2.0 * p.omega_par() * p.scale()) / p.scale();
            let points = cfg.points.unwrap_or(200);
            if !(lo > 0.0 && hi > lo) {
                return Err(Error::InvalidParams(format!(
                    "medium grid needs 0 < omega_min < omega_max, got {lo}, {hi}"
                ))
                .into());
            }
            medium_report(p, &linspace(lo, hi, points))
        }
        Command::Ordinary { .. } => {
            let n = required(cfg.n, "n")?;
            let h = required(cfg.h, "h")?;
            ordinary_report(p, &ordinary_soliton(p, n, h)?)
        }
        Command::Pair { .. } => {
            let h = required(cfg.h, "h")?;
            let s = sector()?;
            if !(h > 0.0) {
                return Err(Error::Regime(format!(
                    "gap pairs need H > 0 (sign condition), got H = {h}"
                ))
                .into());
            }
            gap_report("pair", &s, &s.linear(1, h)?)
        }
        Command::Soliton { .. } => {
            let l = required(cfg.l, "l")?;
            let s = sector()?;
            let state = s.state(l, cfg.h.unwrap_or(0.0), cfg.mode.unwrap_or(Mode::Linear))?;
            gap_report("soliton", &s, &state)
        }
        Command::Pinned { .. } => {
            let l = required(cfg.l, "l")?;
            let s = sector()?;
            pinned_report(&s, &s.pinned(l)?)
        }
        Command::Band { .. } => {
            let l = required(cfg.l, "l")?;
            let s = sector()?;
            let lo = cfg.h_min.unwrap_or(0.0);
            let hi = cfg.h_max.unwrap_or(p.beta());
            if !(lo >= 0.0 && hi >= lo) {
                return Err(Error::InvalidParams(format!(
                    "band grid needs 0 <= h_min <= h_max, got {lo}, {hi}"
                ))
                .into());
            }
            let grid = linspace(lo, hi, cfg.points.unwrap_or(100));
            band_report(&s, &band_structure_in(&s, l, &grid)?)
        }
        Command::Validate => {
            let report = run_suite(p);
            return Ok((report.render(), report.failures().count()));
        }
    };
    Ok((report.render(format), 0))
}
