//! Command-line front end: load games, build and verify mediators, run the
//! worked scenarios and random sweeps.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use datashare::rational::parse_q;
use datashare::scenarios::{InstanceProfile, SharingSetting};
use datashare::Q;
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(name = "datashare", version, about = "Exact analysis of mediated data sharing between sellers")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct GameArg {
    /// Game file in the JSON dialect.
    #[arg(long)]
    game: PathBuf,
}

#[derive(Debug, Args)]
struct ValuesArg {
    /// Base values as comma-separated rationals; defaults to the game's
    /// stored values, or zeros.
    #[arg(long = "v", value_parser = parse_values, allow_hyphen_values = true)]
    values: Option<Values>,
}

#[derive(Debug, Clone)]
struct Values(Vec<Q>);

fn parse_values(text: &str) -> Result<Values, String> {
    text.split(',')
        .map(|part| parse_q(part).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()
        .map(Values)
}

fn parse_rational(text: &str) -> Result<Q, String> {
    parse_q(text).map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// Check that a game file is well formed.
    Validate(GameArg),
    /// Joint segments and their top and runner-up goods.
    Segments(GameArg),
    /// Necessary conditions for a mediator meeting the base values.
    Feasible {
        #[command(flatten)]
        game: GameArg,
        #[command(flatten)]
        values: ValuesArg,
    },
    /// Build a mediator and print it.
    Mediate {
        #[command(flatten)]
        game: GameArg,
        /// Construction label (amazon, no_amazon, m1, m2, m3, transfer,
        /// full_sharing, nplayer, null, equilibrium, segment_sharing).
        #[arg(long)]
        mediator: String,
        #[command(flatten)]
        values: ValuesArg,
    },
    /// Certify a mediator: incentive compatibility, participation, welfare.
    Verify {
        #[command(flatten)]
        game: GameArg,
        /// Construction label or a mediator file.
        #[arg(long)]
        mediator: String,
        #[command(flatten)]
        values: ValuesArg,
    },
    /// Welfare benchmark over all recommendation tables.
    Opt(GameArg),
    /// Pure-strategy equilibria of the unmediated game, best first.
    Bne {
        #[command(flatten)]
        game: GameArg,
        /// Largest number of pure profiles to scan.
        #[arg(long, env = "DATASHARE_BNE_BUDGET", default_value_t = datashare::equilibrium::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Run a worked scenario and check its claims.
    Scenario {
        #[command(subcommand)]
        which: ScenarioName,
    },
    /// Generate and certify seeded random instances.
    Sweep {
        #[arg(long, value_parser = parse_profile)]
        profile: InstanceProfile,
        /// First seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: u64,
        /// Directory for the games of failing instances.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

fn parse_profile(text: &str) -> Result<InstanceProfile, String> {
    text.parse().map_err(|e: datashare::Error| e.to_string())
}

fn parse_setting(text: &str) -> Result<SharingSetting, String> {
    text.parse().map_err(|e: datashare::Error| e.to_string())
}

#[derive(Debug, Subcommand)]
#[command(rename_all = "snake_case")]
enum ScenarioName {
    /// Two sellers with one bit each.
    Intro {
        /// alpha,beta,gamma,delta
        #[arg(long, value_parser = parse_values)]
        params: Option<Values>,
        #[arg(long)]
        amazon: bool,
    },
    /// Shorthand for `intro --amazon`.
    IntroAmazon {
        #[arg(long, value_parser = parse_values)]
        params: Option<Values>,
    },
    ExampleIr {
        #[arg(long, value_parser = parse_rational, default_value = "1/4")]
        eps: Q,
    },
    ExampleIc {
        #[arg(long, value_parser = parse_rational, default_value = "1/2")]
        eps: Q,
    },
    SharingComparison {
        #[arg(long, value_parser = parse_setting)]
        which: SharingSetting,
        /// Segment weights; defaults to the construction's midpoint values.
        #[arg(long, value_parser = parse_values)]
        params: Option<Values>,
    },
    Nplayer {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long = "v", value_parser = parse_values)]
        values: Option<Values>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Engine(#[from] datashare::Error),
}

impl CliError {
    /// Infeasible requests are failed claims; everything else is bad input.
    fn exit_code(&self) -> u8 {
        use datashare::Error as E;
        match self {
            CliError::Engine(E::InfeasibleBaseValues { .. } | E::LpInfeasible { .. } | E::NotABne { .. }) => 1,
            _ => 2,
        }
    }

    /// Short name of the failure, e.g. `PriorNotNormalized`.
    fn kind(&self) -> String {
        match self {
            CliError::Io { .. } => "Io".to_string(),
            CliError::Engine(e) => {
                let debug = format!("{e:?}");
                debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
            }
        }
    }
}

/// Rendered output and whether every checked claim held.
struct Outcome {
    text: String,
    json: String,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.verb) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!("{}", out.json),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.kind());
            ExitCode::from(e.exit_code())
        }
    }
}
