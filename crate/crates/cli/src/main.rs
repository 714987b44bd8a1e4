mod commands;
mod graphs;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

#[derive(Parser, Debug)]
#[command(name = "wsatlab", version, about = "Weak saturation numbers and F-bootstrap percolation")]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, env = "WSATLAB_SEED", default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Minimum of (m_F(S) - 1)/|S| over nonempty vertex sets.
    Gamma {
        graph: String,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Vertex cap for the brute-force method.
        #[arg(long, default_value_t = wsatlab::extremal::DEFAULT_BRUTE_CAP)]
        cap: usize,
    },
    /// Run the percolation process to its end.
    Closure {
        host: String,
        #[command(flatten)]
        #[serde(flatten)]
        pattern: PatternArg,
        /// Write the step list as JSON.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Whether the process reaches the complete graph.
    IsWsat {
        host: String,
        #[command(flatten)]
        #[serde(flatten)]
        pattern: PatternArg,
    },
    /// Exact wsat(n, F) by exhaustive search.
    Wsat {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        #[serde(flatten)]
        pattern: PatternArg,
        /// Graphs to generate before giving up.
        #[arg(long, default_value_t = wsatlab::extremal::DEFAULT_WSAT_BUDGET)]
        budget: u64,
    },
    /// Build a pattern from one of the families.
    Construct(ConstructArgs),
    /// Activation partition and rotations of a weakly saturated host.
    Rotate {
        host: String,
        #[command(flatten)]
        #[serde(flatten)]
        pattern: PatternArg,
        /// Apply the A-matching with this index (lexicographic order).
        #[arg(long)]
        matching: Option<u128>,
        /// Matchings to enumerate for rotation components.
        #[arg(long, default_value_t = wsatlab::percolation::DEFAULT_MATCHING_BUDGET)]
        budget: u128,
    },
    /// Disjoint union of all spanning supergraphs of F plus a clique.
    Ftilde {
        graph: String,
        /// Clique size added before taking supergraphs (default |V(F)| + 2).
        #[arg(long)]
        pad: Option<usize>,
        /// Keep one component per isomorphism class.
        #[arg(long)]
        dedup: bool,
        /// Largest number of non-edges allowed.
        #[arg(long, default_value_t = wsatlab::extremal::DEFAULT_NONEDGE_CAP)]
        cap: usize,
    },
    /// Isoperimetric numbers of random regular graphs.
    #[command(subcommand)]
    Expander(ExpanderCommand),
}

#[derive(Args, Debug, Serialize)]
struct PatternArg {
    /// Pattern graph F.
    #[arg(long)]
    pattern: String,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Method {
    /// Brute force up to 14 vertices, ratio solver above.
    Auto,
    Brute,
    Ratio,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Family {
    Sparse,
    Delta3,
    Delta4,
    HighDelta,
    Counterexample,
}

#[derive(Args, Debug, Serialize)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Target ratio a/b.
    #[arg(long)]
    ratio: Option<String>,
    /// Cycle length; for delta3/delta4 the smallest valid k at least this.
    #[arg(long)]
    k: Option<usize>,
    /// Minimum degree for sparse and high-delta.
    #[arg(long)]
    delta: Option<usize>,
    /// Clique size (default 3|V(G')| + delta + 2).
    #[arg(long)]
    clique_size: Option<usize>,
    #[arg(long, default_value_t = 7)]
    clique_small: usize,
    #[arg(long, default_value_t = 100)]
    clique_big: usize,
    /// Skip the i_alpha resampling condition (high-delta).
    #[arg(long)]
    no_expander_check: bool,
    /// Simple graphs to try before giving up (high-delta).
    #[arg(long, default_value_t = wsatlab::expander::DEFAULT_RESAMPLE_CAP)]
    max_attempts: usize,
    /// Recompute gamma and check it against the prediction.
    #[arg(long)]
    verify: bool,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum ExpanderCommand {
    /// Check the published lower bounds on i_alpha for random r-regular graphs.
    Table {
        #[arg(long, default_value_t = 6)]
        r: usize,
    },
    /// Evaluate the expansion condition, or find the best eta.
    Check {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        r: usize,
        /// Evaluate at this eta instead of searching.
        #[arg(long)]
        eta: Option<String>,
        /// Bisection stops at width 2^-bits.
        #[arg(long, default_value_t = wsatlab::expander::TABLE_TOL_BITS)]
        tol_bits: u32,
    },
    /// Sample simple r-regular graphs and compute i_alpha exactly.
    Sample {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1/2")]
        alpha: String,
        /// Number of samples, seeded seed, seed + 1, ...
        #[arg(long, default_value_t = 1)]
        count: u64,
        /// Report the fraction of samples with i_alpha at least this.
        #[arg(long)]
        threshold: Option<String>,
    },
}

#[derive(Serialize)]
struct Provenance {
    tool: &'static str,
    version: &'static str,
    seed: u64,
}

#[derive(Serialize)]
struct RunReport {
    command: String,
    inputs: Value,
    results: Value,
    provenance: Provenance,
}

/// How a command finished; maps to the exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    VerificationFailed,
    BudgetExhausted,
}

pub struct Outcome {
    pub results: Value,
    pub status: Status,
}

impl Outcome {
    pub fn ok(results: Value) -> Self {
        Outcome { results, status: Status::Ok }
    }
}

fn exit_code(s: Status) -> u8 {
    match s {
        Status::Ok => 0,
        Status::VerificationFailed => 2,
        Status::BudgetExhausted => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let (name, inputs) = commands::describe(&cli.command);
    let outcome = match commands::run(&cli.command, cli.seed) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let report = RunReport {
        command: name,
        inputs,
        results: outcome.results,
        provenance: Provenance { tool: "wsatlab", version: env!("CARGO_PKG_VERSION"), seed: cli.seed },
    };
    let text = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
    let written = match &cli.out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(exit_code(outcome.status))
}
