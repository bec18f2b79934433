//! Command-line front end.
//!
//! Exit codes: 0 success, 1 when a verification suite reports a violation,
//! 2 on parse or contract errors (bad ring spec, bad module literal,
//! unsupported kind/format for the family).

use clap::{Parser, Subcommand};
use profilium::cache::{resolve_cache_path, DecisionCache, CACHE_DIR_ENV};
use profilium::engine::{EngineError, Kind};
use profilium::report;
use profilium::rings::{build_category, AnyCategory, UniverseBounds};
use profilium::verify::SuiteId;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "profilium",
    version,
    about = "Relative subprojectivity and subinjectivity over finite module universes"
)]
struct Cli {
    /// Ring spec: `Z`, `Zmod:<p>^<k>`, or `A<n>:<orient>;q=<p>`
    #[arg(long, global = true, default_value = "Z")]
    ring: String,

    /// Prime support of the integer-family universe, comma-separated
    #[arg(long, global = true, default_value = "2,3")]
    primes: String,

    /// Exponent cap for integer-family torsion parts
    #[arg(long, global = true, default_value_t = 2)]
    maxexp: u32,

    /// Free-rank cap for the integer-family universe
    #[arg(long, global = true, default_value_t = 1)]
    maxrank: usize,

    /// Output format (json, csv, dot); availability depends on the subcommand
    #[arg(long, global = true)]
    format: Option<String>,

    /// Decision-cache file; its directory can be overridden via PROFILIUM_CACHE_DIR
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    /// Worker threads for parallel computation (default: one per core)
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the indecomposables of the configured universe
    Universe,
    /// Describe the hom group or hom space between two modules
    Hom { m: String, n: String },
    /// Compute the subprojectivity (sp) or subinjectivity (si) domain of a module
    Domain {
        m: String,
        #[arg(long, default_value = "sp")]
        kind: String,
    },
    /// Compute the full profile semilattice over the universe
    Profile {
        #[arg(long, default_value = "sp")]
        kind: String,
    },
    /// Translate of a module (path-algebra rings only)
    Tau { m: String },
    /// Tilting test for a module (path-algebra rings only)
    Tilting { m: String },
    /// Run verification suites (S1..S16 or `all`)
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Print a bundled worked example as fixed text (currently: `a4`)
    PaperExample { name: String },
}

fn parse_primes(s: &str) -> Result<Vec<u64>, EngineError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| EngineError::Parse(t.to_string(), "prime must be a number".into()))
        })
        .collect()
}

fn parse_suites(s: &str) -> Result<Vec<SuiteId>, EngineError> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(SuiteId::all());
    }
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(SuiteId::parse)
        .collect()
}

fn bad_format(cmd: &str, fmt: &str) -> EngineError {
    EngineError::Parse(
        fmt.to_string(),
        format!("format not supported by `{cmd}`"),
    )
}

fn run(cli: Cli) -> Result<(String, ExitCode), Box<dyn std::error::Error>> {
    if let Some(workers) = cli.workers {
        // Ignore the error from configuring twice (e.g. under tests).
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global();
    }
    let bounds = UniverseBounds {
        primes: parse_primes(&cli.primes)?,
        maxexp: cli.maxexp,
        maxrank: cli.maxrank,
    };
    let cat: AnyCategory = build_category(&cli.ring, &bounds)?;
    let env_dir = std::env::var(CACHE_DIR_ENV).ok();
    let mut cache = match resolve_cache_path(cli.cache.as_deref(), env_dir.as_deref()) {
        Some(path) => Some(DecisionCache::open(&path)?),
        None => None,
    };
    let fmt = cli.format.as_deref();

    let out = match &cli.cmd {
        Cmd::Universe => match fmt.unwrap_or("json") {
            "json" => report::to_json_line(&report::universe_report(&cat)),
            "csv" => report::universe_csv(&cat),
            other => return Err(bad_format("universe", other).into()),
        },
        Cmd::Hom { m, n } => match fmt.unwrap_or("json") {
            "json" => report::to_json_line(&report::hom_report(&cat, m, n)?),
            other => return Err(bad_format("hom", other).into()),
        },
        Cmd::Domain { m, kind } => {
            let kind = Kind::parse(kind)?;
            match fmt.unwrap_or("json") {
                "json" => {
                    report::to_json_line(&report::domain_report(&cat, kind, m, &mut cache)?)
                }
                "csv" => report::domain_csv(&cat, kind, m, &mut cache)?,
                other => return Err(bad_format("domain", other).into()),
            }
        }
        Cmd::Profile { kind } => {
            let kind = Kind::parse(kind)?;
            match fmt.unwrap_or("json") {
                "json" => report::to_json_line(&report::profile_report(&cat, kind)?),
                "csv" => report::profile_csv(&cat, kind)?,
                "dot" => report::profile_dot(&cat, kind)?,
                other => return Err(bad_format("profile", other).into()),
            }
        }
        Cmd::Tau { m } => match fmt.unwrap_or("json") {
            "json" => report::to_json_line(&report::tau_report(&cat, m)?),
            other => return Err(bad_format("tau", other).into()),
        },
        Cmd::Tilting { m } => match fmt.unwrap_or("json") {
            "json" => report::to_json_line(&report::tilting_report(&cat, m)?),
            other => return Err(bad_format("tilting", other).into()),
        },
        Cmd::Verify { suite } => {
            let ids = parse_suites(suite)?;
            match fmt.unwrap_or("json") {
                "json" => {
                    let (v, all_passed) = report::verify_report(&cat, &ids)?;
                    let text = report::to_json_line(&v);
                    let code = if all_passed { ExitCode::SUCCESS } else { ExitCode::from(1) };
                    if let Some(c) = cache.as_mut() {
                        c.flush()?;
                    }
                    return Ok((text, code));
                }
                other => return Err(bad_format("verify", other).into()),
            }
        }
        Cmd::PaperExample { name } => {
            if fmt.is_some() {
                return Err(bad_format("paper-example", fmt.unwrap()).into());
            }
            match name.as_str() {
                "a4" => report::worked_example_a4()?,
                other => {
                    return Err(EngineError::Parse(
                        other.to_string(),
                        "unknown example; available: a4".into(),
                    )
                    .into())
                }
            }
        }
    };
    if let Some(c) = cache.as_mut() {
        c.flush()?;
    }
    Ok((out, ExitCode::SUCCESS))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, code)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
