use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use starlab::lab::{self, Family, FuzzConfig, Status};
use starlab::order::{emit_hasse, Conrad};
use starlab::{Error, Limits, RingSpec};

/// Finite *-ring analysis: classification, central covers, Conrad's order,
/// theorem checks and fuzzing. Output is JSON unless stated otherwise.
#[derive(Parser)]
#[command(name = "starlab", version)]
struct Cli {
    /// Pretty-print JSON output.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structural flags with witnesses.
    Classify { spec: String },
    /// Central cover of every element.
    Covers { spec: String },
    /// Conrad's relation, its diagnostics and common-upper-bound table.
    Order { spec: String },
    /// The initial segment [0, top].
    Segment {
        spec: String,
        #[arg(long)]
        top: usize,
    },
    /// Run the theorem suite, or a single theorem.
    Verify {
        spec: String,
        #[arg(long)]
        suite: Option<String>,
    },
    /// Search generated rings for theorem failures.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 16)]
        max_order: usize,
        /// Comma-separated subset of modular,product,matrix,random-table.
        #[arg(long, value_delimiter = ',', default_value = "modular,product,matrix,random-table")]
        families: Vec<String>,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        /// Number of random tables drawn when that family is enabled.
        #[arg(long, default_value_t = 100)]
        random_tables: usize,
    },
    /// Hasse diagram of Conrad's order, in DOT.
    Hasse {
        spec: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Why a command did not finish cleanly.
enum Failure {
    /// Exit 1: a check failed; the payload was still produced.
    Check,
    /// Exit 1 with a reason line: a precondition of the analysis failed.
    Refused(Error),
    /// Exit 2: the input itself is unusable.
    Input { kind: &'static str, message: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotPqBaer(_)
            | Error::NotPartialOrder { .. }
            | Error::CoverAbsent(_)
            | Error::NotBelow { .. }
            | Error::NotCentralProjection(_)
            | Error::Verification(_) => Failure::Refused(e),
            e => Failure::Input { kind: e.kind(), message: e.to_string() },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Refused(e)) => {
            eprintln!("error: {}: {}", e.kind(), e);
            ExitCode::from(1)
        }
        Err(Failure::Input { kind, message }) => {
            eprintln!("error: {kind}: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let limits = Limits::from_env();
    let emit = |value: &dyn erased::Json| value.print(cli.pretty);
    match &cli.command {
        Command::Classify { spec } => {
            let ring = load(spec)?.realize(&limits)?;
            emit(&starlab::structure::classify(&ring));
            Ok(())
        }
        Command::Covers { spec } => {
            let ring = load(spec)?.realize(&limits)?;
            let table = starlab::structure::cover_table(&ring);
            emit(&table);
            check(table.is_total())
        }
        Command::Order { spec } => {
            let ring = load(spec)?.realize(&limits)?;
            let summary = Conrad::new(&ring).structure_summary();
            emit(&summary);
            check(summary.diagnostics.is_partial_order())
        }
        Command::Segment { spec, top } => {
            let ring = load(spec)?.realize(&limits)?;
            let top = ring.element(*top)?;
            let seg = Conrad::new(&ring).initial_segment(top)?;
            emit(&seg);
            check(seg.orthocomplemented && seg.orthomodular && seg.locality)
        }
        Command::Verify { spec, suite } => {
            let spec = load(spec)?;
            let verdicts = match suite {
                Some(id) => vec![lab::replay(&spec, id, &limits)?],
                None => lab::run_suite(&spec.realize(&limits)?),
            };
            emit(&verdicts);
            check(verdicts.iter().all(|v| v.status != Status::Fail))
        }
        Command::Fuzz { seed, max_order, families, budget, random_tables } => {
            let families = families.iter().map(|f| f.parse::<Family>()).collect::<Result<Vec<_>, _>>()?;
            let config = FuzzConfig {
                max_order: *max_order,
                families,
                seed: *seed,
                budget: *budget,
                random_tables: *random_tables,
            };
            let report = lab::fuzz(&config, &limits)?;
            emit(&report);
            check(report.red_alert.is_none())
        }
        Command::Hasse { spec, out } => {
            let ring = load(spec)?.realize(&limits)?;
            let order = Conrad::new(&ring);
            let dot = match emit_hasse(&order) {
                Ok(dot) => dot,
                Err(e) => {
                    emit(order.diagnostics());
                    return Err(Failure::Refused(e));
                }
            };
            match out {
                Some(path) => fs::write(path, dot).map_err(|e| Failure::Input {
                    kind: "io",
                    message: format!("{}: {e}", path.display()),
                }),
                None => {
                    print!("{dot}");
                    Ok(())
                }
            }
        }
    }
}

fn check(ok: bool) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

/// Inline JSON if the argument looks like an object, otherwise a file path.
fn load(arg: &str) -> Result<RingSpec, Failure> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Failure::Input { kind: "io", message: format!("{arg}: {e}") })?
    };
    Ok(serde_json::from_str(&text).map_err(Error::from)?)
}

mod erased {
    use super::Serialize;

    pub trait Json {
        fn print(&self, pretty: bool);
    }

    impl<T: Serialize> Json for T {
        fn print(&self, pretty: bool) {
            let text = if pretty { serde_json::to_string_pretty(self) } else { serde_json::to_string(self) };
            println!("{}", text.expect("report types serialize"));
        }
    }
}
