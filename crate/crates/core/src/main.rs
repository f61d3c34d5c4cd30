use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use curvelab::commands::{self, Outcome, RunConfig};
use curvelab::curves::Engine;
use curvelab::search::Escalation;
use curvelab::suites::Suite;
use curvelab::surface::SurfaceKind;
use curvelab::Error;

/// Census, verification and export for curves on punctured surfaces.
#[derive(Parser)]
#[command(name = "curvelab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate curves up to a weight bound; write census, table, histogram.
    Census(Common),
    /// Run verification suites; exit 1 on a contradicted claim.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Comma-separated suites (default: all).
        #[arg(long, value_delimiter = ',')]
        suite: Vec<String>,
        /// Puncture counts for linear-or-cyclic, e.g. 4..7.
        #[arg(long, default_value = "4..7")]
        n_range: String,
    },
    /// Pants decompositions found in the census.
    Pants(Common),
    /// Adjacency graphs as DOT.
    Export {
        #[command(flatten)]
        common: Common,
        /// Use census decompositions instead of abstract classes.
        #[arg(long)]
        census: bool,
    },
}

#[derive(Args)]
struct Common {
    /// Surface as `g,n`.
    #[arg(long)]
    surface: Option<String>,
    #[arg(long, default_value_t = 12)]
    bound: u32,
    /// Number of witness-bound escalation steps (at most 2).
    #[arg(long, default_value_t = 2)]
    escalate: u32,
    /// Weight added per escalation step.
    #[arg(long, default_value_t = 4)]
    step: u32,
    #[arg(long, env = "CURVELAB_OUT", default_value = "curvelab-out")]
    out: PathBuf,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Use the overlay engine for every intersection number.
    #[arg(long)]
    reference: bool,
}

impl Common {
    fn config(&self) -> Result<RunConfig, Error> {
        if let Some(t) = self.threads {
            rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build_global()
                .map_err(|e| Error::Usage(e.to_string()))?;
        }
        let surface = self
            .surface
            .as_deref()
            .map(|s| s.parse::<SurfaceKind>().map_err(|e| Error::Usage(format!("--surface {s}: {e}"))))
            .transpose()?;
        Ok(RunConfig {
            surface,
            bound: self.bound,
            escalation: Escalation { step: self.step, limit: self.escalate },
            suites: Vec::new(),
            n_range: 4..=7,
            out: self.out.clone(),
            engine: if self.reference { Engine::Reference } else { Engine::Linking },
        })
    }
}

fn parse_range(s: &str) -> Result<std::ops::RangeInclusive<u32>, Error> {
    let bad = || Error::Usage(format!("--n-range {s:?}: expected A..B"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    Ok(a.trim().parse().map_err(|_| bad())?..=b.trim().parse().map_err(|_| bad())?)
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    match cli.command {
        Command::Census(c) => commands::census(&checked(c.config()?)?),
        Command::Pants(c) => commands::pants(&checked(c.config()?)?),
        Command::Export { common, census } => commands::export(&checked(common.config()?)?, census),
        Command::Verify { common, suite, n_range } => {
            let mut cfg = common.config()?;
            cfg.suites = suite.iter().map(|s| s.parse::<Suite>()).collect::<Result<_, _>>()?;
            cfg.n_range = parse_range(&n_range)?;
            commands::verify(&checked(cfg)?)
        }
    }
}

fn checked(cfg: RunConfig) -> Result<RunConfig, Error> {
    cfg.check()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            for l in &out.lines {
                println!("{l}");
            }
            for f in &out.files {
                eprintln!("wrote {}", f.display());
            }
            ExitCode::from(out.hard_failure as u8)
        }
        Err(e @ (Error::Usage(_) | Error::UnsupportedSurface { .. } | Error::Precondition(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
