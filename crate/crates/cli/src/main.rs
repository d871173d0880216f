mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "tdg", version, about = "Topological distance games: stability, solvers, dynamics, gadgets")]
struct Cli {
    /// Worker threads for exhaustive enumeration (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an assignment for jump or swap stability.
    Check(CheckArgs),
    /// Construct a stable assignment with one of the solvers.
    Solve(SolveArgs),
    /// Run jump or swap dynamics.
    Dynamics(DynamicsArgs),
    /// Build a named instance family.
    Gadget(GadgetArgs),
    /// Explore the reachable state graph and answer the convergence questions.
    Statespace(StatespaceArgs),
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Notion {
    Jump,
    Swap,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum GadgetAssignment {
    Initial,
    Witness,
}

#[derive(Args)]
pub struct CheckArgs {
    instance: PathBuf,
    /// `{"placement": [...]}`; defaults to an assignment stored in the instance file.
    assignment: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "jump")]
    notion: Notion,
    /// Which stored assignment to use when no assignment file is given.
    #[arg(long, value_enum, default_value = "witness")]
    stored: GadgetAssignment,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Method {
    Acyclic,
    Cycle,
    Path,
    Star,
    Brute,
}

#[derive(Args)]
pub struct SolveArgs {
    instance: PathBuf,
    #[arg(long, value_enum)]
    method: Method,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum PolicyKind {
    First,
    Best,
    Random,
    Scripted,
}

#[derive(Args)]
pub struct DynamicsArgs {
    instance: PathBuf,
    /// Start assignment; defaults to the instance file's stored initial assignment.
    #[arg(long)]
    start: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "first")]
    policy: PolicyKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Script file for `--policy scripted`; defaults to the instance file's script.
    #[arg(long)]
    script: Option<PathBuf>,
    #[arg(long, default_value_t = tdg_core::dynamics::DEFAULT_MAX_STEPS)]
    max_steps: usize,
    #[arg(long, value_enum, default_value = "jump")]
    notion: Notion,
    /// Write the full trace as JSON.
    #[arg(long)]
    emit_trace: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
pub struct GadgetArgs {
    #[command(subcommand)]
    kind: GadgetKind,
    /// Output file; the gadget is printed when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
pub enum GadgetKind {
    /// Two agents, one chasing the other.
    CatAndMouse {
        /// `pathN`, `starN`, `cycleN`, `completeN`, or a topology JSON file.
        #[arg(long)]
        topology: String,
    },
    /// Friendship 6-cycle on a three-branch tree.
    TreeCounterexample,
    /// Four agents without a swap stable assignment.
    Roommates,
    /// Six agents whose swap dynamics cycles.
    SwapCycle,
    /// Hedonic family with exponentially long dynamics.
    Exponential {
        #[arg(long)]
        k: usize,
    },
    /// Max-Cut reduction from a weighted complete graph file.
    Maxcut {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Graph Partitioning reduction from a weighted complete graph file.
    GraphPartitioning {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Exact 3-Cover reduction for jump stability existence.
    Exjump {
        #[arg(long)]
        x3c: PathBuf,
        /// Pad the instance first.
        #[arg(long)]
        pad: bool,
    },
    /// Exact 3-Cover reduction for possible convergence.
    Dynconv {
        #[arg(long)]
        x3c: PathBuf,
        #[arg(long)]
        pad: bool,
        /// Distance factor table `p/q,p/q,...`; reciprocal when omitted.
        #[arg(long)]
        factor: Option<String>,
    },
    /// Exact 3-Cover reduction for possible cycling.
    Dyncycle {
        #[arg(long)]
        x3c: PathBuf,
        #[arg(long)]
        factor: Option<String>,
    },
}

#[derive(Args)]
pub struct StatespaceArgs {
    instance: PathBuf,
    #[arg(long)]
    start: Option<PathBuf>,
    #[arg(long, default_value_t = tdg_core::dynamics::DEFAULT_STATE_LIMIT)]
    limit: usize,
    #[arg(long, value_enum, default_value = "jump")]
    notion: Notion,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Check(a) => commands::check(a),
        Command::Solve(a) => commands::solve(a),
        Command::Dynamics(a) => commands::dynamics(a),
        Command::Gadget(a) => commands::gadget(a),
        Command::Statespace(a) => commands::statespace(a),
    };
    match result {
        Ok(out) => {
            print!("{}", out.report);
            ExitCode::from(out.exit_code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.exit_code)
        }
    }
}
