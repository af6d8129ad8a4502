//! `stabkit` command line.

mod fail;
mod flop_cmd;
mod heart_cmd;
mod k3_cmd;
mod render;
mod sl2z_cmd;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fail::{Failure, Outcome};

#[derive(Parser, Debug)]
#[command(name = "stabkit", version, about = "Exact desk-scale computations with stability conditions")]
pub struct Cli {
    /// Input JSON for the subcommand.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Seed for randomized runs.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Decimal digits for approximate values.
    #[arg(long, global = true, default_value_t = 12)]
    pub precision: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// HN filtration, phases and mass of objects of the type-A heart.
    Hn {
        /// Direct sum of intervals, e.g. "1-2,3" for M[1,2] + M[3,3]; default M[1,n].
        #[arg(long)]
        object: Option<String>,
        /// Report every indecomposable M[a,b].
        #[arg(long)]
        all: bool,
    },
    /// Distance between the stability condition in --config and another.
    Dist {
        /// Second stability-condition JSON on the same heart.
        #[arg(long)]
        with: PathBuf,
    },
    /// Check the stability-condition axioms for --config.
    Axioms,
    /// Mukai lattice of a K3 model from --config: periods and (-2)-classes.
    #[command(subcommand)]
    K3(K3Command),
    /// Roots of an ADE type, from --type or a --config {"type"} / {"cartan"}.
    Roots {
        #[arg(long = "type")]
        kind: Option<String>,
    },
    /// Conifold chambers on a rational (beta, omega) grid.
    ComplementGrid {
        #[arg(long, default_value = "-5", allow_hyphen_values = true)]
        min: String,
        #[arg(long, default_value = "5", allow_hyphen_values = true)]
        max: String,
        /// Grid points per axis.
        #[arg(long, default_value_t = 100)]
        steps: u32,
        /// Also write an SVG of the (beta, omega) plane here.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Chamber of a slice point beta + i omega.
    Chamber {
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
        /// ADE type for rank > 1 (complement membership only).
        #[arg(long = "type")]
        kind: Option<String>,
    },
    /// Words in F, T and the shift acting on charges (r, d).
    #[command(subcommand)]
    Sl2z(Sl2zCommand),
    /// Seeded invariant suite over every module.
    Selftest {
        /// Worker threads (default: rayon's choice).
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum K3Command {
    /// Classify a period point against P+_0(X) for the model in --config.
    Classify {
        /// Period JSON {"re": [...], "im": [...]}.
        #[arg(long)]
        period: Option<PathBuf>,
        /// Use exp(beta + i omega); comma-separated NS coordinates.
        #[arg(long, allow_hyphen_values = true)]
        omega: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        /// Override the wall-scan box (default: the proven bound).
        #[arg(long = "box")]
        wall_box: Option<i64>,
    },
    /// (-2)-classes with coordinates bounded by --box.
    Delta {
        #[arg(long = "box", default_value_t = 2)]
        bound: i64,
    },
}

#[derive(Subcommand, Debug)]
pub enum Sl2zCommand {
    /// Matrix of a word, and its action on a charge vector.
    Eval {
        /// Tokens F, F^-1, T, T^-1, Shift, comma separated; X^k allowed.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// "r,d"
        #[arg(long, allow_hyphen_values = true)]
        charge: Option<String>,
    },
    /// Word in F, T, T^-1, Shift for a matrix "a,b,c,d".
    Decompose {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
}

/// Which output formats a command accepts, the first being the default.
fn pick_format(requested: Option<Format>, allowed: &[Format]) -> Outcome<Format> {
    match requested {
        None => Ok(allowed[0]),
        Some(f) if allowed.contains(&f) => Ok(f),
        Some(f) => Err(Failure::parse(format!(
            "format {f:?} not available for this command (allowed: {allowed:?})"
        ))),
    }
}

pub fn read_input(path: &std::path::Path) -> Outcome<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::contract(format!("cannot read {}: {e}", path.display())))
}

pub fn require_config(cli: &Cli) -> Outcome<(String, String)> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| Failure::parse("this command needs --config <path>"))?;
    Ok((path.display().to_string(), read_input(path)?))
}

fn run(cli: &Cli) -> Outcome<String> {
    use Format::*;
    match &cli.command {
        Command::Hn { object, all } => {
            let f = pick_format(cli.format, &[Text, Json])?;
            heart_cmd::hn(cli, object.as_deref(), *all, f)
        }
        Command::Dist { with } => heart_cmd::dist(cli, with, pick_format(cli.format, &[Text, Json])?),
        Command::Axioms => heart_cmd::axioms(cli, pick_format(cli.format, &[Text, Json])?),
        Command::K3(K3Command::Classify {
            period,
            omega,
            beta,
            wall_box,
        }) => k3_cmd::classify(
            cli,
            period.as_deref(),
            omega.as_deref(),
            beta.as_deref(),
            *wall_box,
            pick_format(cli.format, &[Text, Json, Svg])?,
        ),
        Command::K3(K3Command::Delta { bound }) => {
            k3_cmd::delta(cli, *bound, pick_format(cli.format, &[Text, Json, Csv])?)
        }
        Command::Roots { kind } => flop_cmd::roots(cli, kind.as_deref(), pick_format(cli.format, &[Text, Json])?),
        Command::ComplementGrid { min, max, steps, svg } => flop_cmd::complement_grid(
            min,
            max,
            *steps,
            svg.as_deref(),
            pick_format(cli.format, &[Csv, Svg])?,
        ),
        Command::Chamber { beta, omega, kind } => {
            flop_cmd::chamber(beta, omega, kind.as_deref(), pick_format(cli.format, &[Text, Json])?)
        }
        Command::Sl2z(Sl2zCommand::Eval { word, charge }) => {
            sl2z_cmd::eval(word, charge.as_deref(), pick_format(cli.format, &[Text, Json])?)
        }
        Command::Sl2z(Sl2zCommand::Decompose { matrix }) => {
            sl2z_cmd::decompose(matrix, pick_format(cli.format, &[Text, Json])?)
        }
        Command::Selftest { threads } => {
            pick_format(cli.format, &[Text])?;
            selftest(cli.seed, *threads)
        }
    }
}

fn selftest(seed: u64, threads: Option<usize>) -> Outcome<String> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        if t == 0 {
            return Err(Failure::contract("--threads must be at least 1"));
        }
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| Failure::contract(format!("thread pool: {e}")))?;
    let report = pool.install(|| stabkit::selftest::run(seed));
    let text = report.to_string();
    if report.all_passed() {
        Ok(text)
    } else {
        // the report itself names the failing invariants
        print!("{text}");
        Err(Failure::contract("selftest invariants failed (see report)"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            let written = match &cli.out {
                Some(p) => std::fs::write(p, text.as_bytes())
                    .map_err(|e| format!("cannot write {}: {e}", p.display())),
                None => std::io::stdout()
                    .write_all(text.as_bytes())
                    .map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Err(f) => {
            eprintln!("{f}");
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
