//! `orient`: reachability-optimal graph orientation from the command line.
//!
//! Exit codes: 0 ok, 1 failed verification or internal error, 2 bad input,
//! 3 infeasible instance, 4 instance too large for the requested method.

mod commands;
mod error;
mod report;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use orient_core::min_reach::DEFAULT_MAX_N_ORDERS;
use orient_core::tree::DEFAULT_EXACT_BUDGET;

use crate::error::{CliError, Kind};
use crate::report::{digest, Output, RunReport};

#[derive(Debug, Parser)]
#[command(name = "orient", version, about = "Orient graphs to maximize or minimize reachability")]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,
    /// Also write the produced orientation as Graphviz DOT to this path.
    #[arg(long, global = true, value_name = "PATH")]
    dot: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Orientation with the most reachable pairs (graph file in, `-` for stdin).
    MaxOrient {
        input: PathBuf,
        /// Re-read the emitted orientation and recount R independently.
        #[arg(long)]
        verify: bool,
    },
    /// Weighted tree orientation maximizing mu, exact or within 1 - epsilon.
    Wto {
        input: PathBuf,
        /// Accuracy for the approximate partition, as `0.05` or `1/20`.
        #[arg(long, default_value = "1/10", value_parser = commands::parse_epsilon)]
        epsilon: f64,
        /// Largest exact partition table, in cells, before approximating.
        #[arg(long, default_value_t = DEFAULT_EXACT_BUDGET)]
        exact_budget: u64,
        /// Also solve by exhaustive search and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Minimum reachability r(G) and the comparability completion number.
    MinOrient {
        input: PathBuf,
        /// Refuse graphs with more vertices than this.
        #[arg(long, default_value_t = DEFAULT_MAX_N_ORDERS)]
        max_n: usize,
    },
    /// Strongly connected orientation of a bridgeless graph.
    StrongOrient { input: PathBuf },
    /// Extend a mixed graph to a strong orientation, or show why none exists.
    Complete { input: PathBuf },
    /// Check an orientation listing and its summary line.
    Check {
        input: PathBuf,
        /// Weighted tree the listing orients (for `mu` listings).
        #[arg(long, value_name = "WTREE")]
        tree: Option<PathBuf>,
    },
    /// Hardness reduction instances.
    #[command(subcommand)]
    Gadget(GadgetCommand),
    /// Exhaustive reference solvers for small inputs.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Seeded random instances.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Debug, Subcommand)]
enum GadgetCommand {
    /// Star whose optimum reaches 5(S/2)^2 iff the numbers split evenly.
    Partition {
        #[arg(required = true)]
        numbers: Vec<u64>,
        /// Also solve the star and report whether the threshold is met.
        #[arg(long)]
        solve: bool,
    },
    /// Graph for a NAE3SAT instance (DIMACS cnf file).
    Nae3sat {
        input: PathBuf,
        /// Write the vertex and edge roles as JSON here.
        #[arg(long, value_name = "PATH")]
        annotations: Option<PathBuf>,
        /// Emit the orientation for this assignment, e.g. `101`.
        #[arg(long)]
        assignment: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// Best of all 2^(b-1) tree orientations.
    Tree { input: PathBuf },
    /// Best of all 2^|E| graph orientations.
    Graph {
        input: PathBuf,
        /// Minimize instead of maximize.
        #[arg(long)]
        min: bool,
    },
    /// r(G) over vertex orders and c_bar(G) by completion search.
    Min { input: PathBuf },
}

#[derive(Debug, Subcommand)]
enum GenCommand {
    Tree {
        #[arg(long)]
        b: usize,
        #[arg(long, default_value_t = 20)]
        max_weight: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Graph {
        #[arg(long)]
        n: usize,
        /// Edge count (default 2n, clamped to what fits).
        #[arg(long)]
        m: Option<usize>,
        /// Grow a bridgeless graph from ears instead.
        #[arg(long)]
        two_edge_connected: bool,
        /// Extra edges for `--two-edge-connected`.
        #[arg(long, default_value_t = 0)]
        chords: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Cnf {
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        clauses: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn read_input(path: &Path) -> Result<String, CliError> {
    let mut text = String::new();
    if path == Path::new("-") {
        io::stdin()
            .read_to_string(&mut text)
            .context("reading stdin")?;
    } else {
        text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    }
    Ok(text)
}

struct Invocation {
    name: &'static str,
    digest: Option<String>,
    outcome: Result<Output, CliError>,
}

fn with_input(name: &'static str, path: &Path, run: impl FnOnce(&str) -> Result<Output, CliError>) -> Invocation {
    match read_input(path) {
        Ok(text) => Invocation {
            name,
            digest: Some(digest(text.as_bytes())),
            outcome: run(&text),
        },
        Err(e) => Invocation {
            name,
            digest: None,
            outcome: Err(CliError::new(Kind::Parse, e.message)),
        },
    }
}

fn dispatch(command: &Command) -> Invocation {
    match command {
        Command::MaxOrient { input, verify } => with_input("max-orient", input, |t| commands::max_orient(t, *verify)),
        Command::Wto {
            input,
            epsilon,
            exact_budget,
            oracle,
        } => with_input("wto", input, |t| commands::wto(t, *epsilon, *exact_budget, *oracle)),
        Command::MinOrient { input, max_n } => with_input("min-orient", input, |t| commands::min_orient(t, *max_n)),
        Command::StrongOrient { input } => with_input("strong-orient", input, commands::strong_orient),
        Command::Complete { input } => with_input("complete", input, commands::complete),
        Command::Check { input, tree } => {
            let tree_text = match tree.as_deref().map(read_input).transpose() {
                Ok(t) => t,
                Err(e) => {
                    return Invocation {
                        name: "check",
                        digest: None,
                        outcome: Err(CliError::new(Kind::Parse, e.message)),
                    }
                }
            };
            with_input("check", input, |t| commands::check(t, tree_text.as_deref()))
        }
        Command::Gadget(GadgetCommand::Partition { numbers, solve }) => {
            let joined = numbers.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ");
            Invocation {
                name: "gadget partition",
                digest: Some(digest(joined.as_bytes())),
                outcome: commands::gadget_partition(numbers, *solve),
            }
        }
        Command::Gadget(GadgetCommand::Nae3sat {
            input,
            annotations,
            assignment,
        }) => with_input("gadget nae3sat", input, |t| {
            let out = commands::gadget_nae3sat(t, assignment.as_deref())?;
            if let Some(path) = annotations {
                fs::write(path, out.annotations + "\n").with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(out.output)
        }),
        Command::Oracle(OracleCommand::Tree { input }) => with_input("oracle tree", input, commands::oracle_tree),
        Command::Oracle(OracleCommand::Graph { input, min }) => {
            with_input("oracle graph", input, |t| commands::oracle_graph(t, *min))
        }
        Command::Oracle(OracleCommand::Min { input }) => with_input("oracle min", input, commands::oracle_min),
        Command::Gen(GenCommand::Tree { b, max_weight, seed }) => Invocation {
            name: "gen tree",
            digest: None,
            outcome: commands::gen_tree(*b, *max_weight, *seed),
        },
        Command::Gen(GenCommand::Graph {
            n,
            m,
            two_edge_connected,
            chords,
            seed,
        }) => Invocation {
            name: "gen graph",
            digest: None,
            outcome: commands::gen_graph(*n, *m, *two_edge_connected, *chords, *seed),
        },
        Command::Gen(GenCommand::Cnf { vars, clauses, seed }) => Invocation {
            name: "gen cnf",
            digest: None,
            outcome: commands::gen_cnf(*vars, *clauses, *seed),
        },
    }
}

fn emit(cli: &Cli, inv: &Invocation, out: &Output, elapsed_ms: f64) -> anyhow::Result<()> {
    let mut stdout = io::stdout().lock();
    match cli.format {
        OutputFormat::Text => stdout.write_all(out.text.as_bytes())?,
        OutputFormat::Json => {
            let report = RunReport {
                command: inv.name,
                input_digest: inv.digest.clone(),
                result: &out.result,
                elapsed_ms,
            };
            serde_json::to_writer_pretty(&mut stdout, &report)?;
            writeln!(stdout)?;
        }
    }
    if let Some(path) = &cli.dot {
        match &out.dot {
            Some(dot) => fs::write(path, dot).with_context(|| format!("writing {}", path.display()))?,
            None => eprintln!("note: {} produces no graph orientation; --dot ignored", inv.name),
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let inv = dispatch(&cli.command);
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let (output, failure) = match &inv.outcome {
        Ok(out) => (Some(out), None),
        Err(e) => (e.output.as_ref(), Some(e)),
    };
    if let Some(out) = output {
        if let Err(e) = emit(&cli, &inv, out, elapsed_ms) {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    }
    match failure {
        None => ExitCode::SUCCESS,
        Some(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.kind.exit_code())
        }
    }
}
