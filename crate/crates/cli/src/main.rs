//! `recolor`: verify, solve, reduce and translate reconfiguration instances.
//!
//! Every command prints one JSON report. Exit code 0 means yes/ok, 1 means
//! no, 2 means an error or an exhausted budget.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use commands::Verdict;

#[derive(Debug, Parser)]
#[command(name = "recolor", version, about = "Distance coloring reconfiguration toolkit")]
struct Cli {
    /// Oracle state budget.
    #[arg(long, global = true, env = "RECOLOR_BUDGET")]
    budget: Option<usize>,
    /// Seed for the generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a coloring (GRAPH COLORING) or a sequence (INSTANCE --sequence FILE).
    Verify {
        #[arg(required = true, num_args = 1..=2)]
        files: Vec<PathBuf>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        lists: Option<PathBuf>,
        #[arg(long)]
        sequence: Option<PathBuf>,
    },
    /// Decide an instance.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = SolverArg::Auto)]
        solver: SolverArg,
        #[arg(long)]
        emit_sequence: Option<PathBuf>,
    },
    /// Apply a reduction and write the artifact bundle.
    Reduce {
        #[arg(value_enum)]
        kind: ReduceKind,
        input: PathBuf,
        out: PathBuf,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        l: Option<u32>,
    },
    /// Lift or project a sequence through a bundle.
    MapSequence {
        bundle: PathBuf,
        sequence: PathBuf,
        #[arg(long, value_enum)]
        direction: Direction,
        /// Where to write the translated sequence.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate graphs and instances.
    Gen {
        #[command(subcommand)]
        what: GenWhat,
    },
    /// Exhaustive reachability search.
    Oracle {
        instance: PathBuf,
        /// Treat the input as a sliding tokens instance.
        #[arg(long)]
        tokens: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SolverArg {
    Auto,
    Path,
    Diameter,
    Split,
    Oracle,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ReduceKind {
    RestrictSt,
    RstToList,
    ListToPlain,
    ReducePalette,
    LcolToSplit,
    LcrToSplit,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Direction {
    Lift,
    Project,
}

#[derive(Debug, Subcommand)]
pub enum GenWhat {
    Path {
        #[arg(long)]
        n: usize,
    },
    Split {
        #[arg(long)]
        clique: usize,
        #[arg(long)]
        indep: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
    },
    Connected {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
    },
    /// Random gadget instance for sliding tokens.
    St {
        #[arg(long, default_value_t = 0)]
        triangles: usize,
        #[arg(long)]
        edges: usize,
    },
    /// Two random (d,k)-colorings of a graph file as an instance.
    Instance {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = commands::Context::new(cli.budget, cli.seed, cli.output.clone());
    let result = match cli.command {
        Command::Verify { files, d, k, lists, sequence } => commands::verify(&ctx, &files, d, k, lists, sequence),
        Command::Solve { instance, solver, emit_sequence } => commands::solve(&ctx, &instance, solver, emit_sequence),
        Command::Reduce { kind, input, out, d, l } => commands::reduce(&ctx, kind, &input, &out, d, l),
        Command::MapSequence { bundle, sequence, direction, out } => {
            commands::map_sequence(&ctx, &bundle, &sequence, direction, out)
        }
        Command::Gen { what } => commands::gen(&ctx, what),
        Command::Oracle { instance, tokens } => commands::oracle(&ctx, &instance, tokens),
    };
    match result.and_then(|(verdict, report)| ctx.emit(&report).map(|()| verdict)) {
        Ok(Verdict::Yes) => ExitCode::from(0),
        Ok(Verdict::No) => ExitCode::from(1),
        Err(err) => {
            let msg = format!("{err:#}");
            eprintln!("error: {msg}");
            // the report channel still carries a verdict
            let _ = ctx.emit(&json!({ "error": msg }));
            ExitCode::from(2)
        }
    }
}
