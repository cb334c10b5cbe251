//! `graph-frames` command-line tool.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad input, 3 internal
//! consistency failure.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "graph-frames",
    version,
    about = "Frames generated by graph Laplacians"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Kind {
    Complete,
    Cycle,
    Path,
    Star,
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Print a generated graph as an edge list.
    GenGraph {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        /// Edge probability (random graphs only).
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Append the graph in this edge-list file as extra components.
        #[arg(long)]
        union: Option<PathBuf>,
    },
    /// Build the Laplacian eigenbasis frame of a graph.
    Frame {
        #[arg(long)]
        input: PathBuf,
        /// Write the frame CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Tightness, regularity and eigenvalue-bound report.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Dual frame from per-component shifts (default: canonical dual).
    Dual {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        frame: PathBuf,
        /// CSV with one shift row per connected component.
        #[arg(long)]
        shifts: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a frame is generated by the graph, and optionally a dual.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        frame: PathBuf,
        #[arg(long)]
        dual: Option<PathBuf>,
    },
    /// Orthogonal map between two frames generated by the same graph.
    Equiv {
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "frame-a")]
        frame_a: PathBuf,
        #[arg(long = "frame-b")]
        frame_b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the tightness characterization on every graph with up to N vertices.
    Survey {
        #[arg(long = "max-n")]
        max_n: usize,
        #[arg(long)]
        json: bool,
        /// Evaluate graphs on one thread.
        #[arg(long)]
        sequential: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::GenGraph {
            kind,
            n,
            p,
            seed,
            union,
        } => commands::gen_graph(kind, n, p, seed, union.as_deref()),
        Command::Frame { input, out, json } => commands::frame(&input, out.as_deref(), json),
        Command::Analyze { input, json } => commands::analyze(&input, json),
        Command::Dual {
            input,
            frame,
            shifts,
            out,
        } => commands::dual(&input, &frame, shifts.as_deref(), out.as_deref()),
        Command::Verify { input, frame, dual } => commands::verify(&input, &frame, dual.as_deref()),
        Command::Equiv {
            input,
            frame_a,
            frame_b,
            out,
        } => commands::equiv(&input, &frame_a, &frame_b, out.as_deref()),
        Command::Survey {
            max_n,
            json,
            sequential,
        } => commands::survey(max_n, json, sequential),
    };
    match result {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            ExitCode::from(if outcome.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
