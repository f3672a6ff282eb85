//! `pooldesign`: build, check and decode group testing designs from the
//! command line.
//!
//! Exit codes: 0 success / property holds, 1 property fails or a simulation
//! saw a decoding failure, 2 usage error, 3 input format error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod input;

#[derive(Debug, Parser)]
#[command(
    name = "pooldesign",
    version,
    about = "Nonadaptive group testing designs"
)]
struct Cli {
    /// Worker threads for verification and simulation. Output does not depend on it.
    #[arg(long, global = true, env = "THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a code and write it in the code file format.
    Construct {
        #[command(subcommand)]
        what: Construct,
        /// Write to this path instead of standard output.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Check a code property; exit 0 if it holds, 1 if it fails.
    Verify(VerifyArgs),
    /// Decode a result vector.
    Decode(DecodeArgs),
    /// Compute the result vector of a hidden instance.
    Result(ResultArgs),
    /// Monte-Carlo round trip: random instance, result vector, decode, compare.
    Simulate(SimulateArgs),
}

#[derive(Debug, Subcommand)]
enum Construct {
    /// All weight-l rows (or all rows with s zeros), whichever is shorter.
    Trivial {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        l: usize,
    },
    /// The t x t identity matrix.
    Identity {
        #[arg(long)]
        t: usize,
    },
    /// Extended Reed-Solomon code (q-ary output).
    Rs {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        lambda: usize,
        /// Keep only the first ROWS rows.
        #[arg(long)]
        rows: Option<usize>,
    },
    /// Concatenate a q-ary outer code with a binary inner code of size q.
    Concat {
        #[arg(long)]
        outer: String,
        #[arg(long)]
        inner: String,
    },
    /// Reed-Solomon concatenation of size q^(lambda+1), length N1*(s*l*lambda+1).
    #[command(name = "lemma8")]
    RsConcat {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        lambda: usize,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        inner: String,
        /// Check that the inner code is a superimposed (s,l)-code first.
        #[arg(long)]
        verify: bool,
    },
    /// A built-in code: eq8 (9x12 binary) or c4 (3x8 quaternary).
    Builtin {
        #[arg(long)]
        name: String,
    },
    /// Remove repeated rows.
    Dedupe {
        #[arg(long)]
        code: Option<String>,
    },
    /// Keep the listed columns (1-based, comma-separated), in order.
    Restrict {
        #[arg(long)]
        code: Option<String>,
        #[arg(long)]
        keep: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Property {
    Superimposed,
    Sl,
    Inhibitory,
    Separating,
    Mds,
    DesignDisjunct,
    DesignSuperset,
    DesignInhibitor,
    Spot,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    property: Property,
    /// Code file or built-in name; standard input if omitted.
    #[arg(long)]
    code: Option<String>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    /// Number of inhibitors iota.
    #[arg(long = "i")]
    iota: Option<usize>,
    /// Dimension k for the MDS check.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 1_000_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print the full report after the verdict line.
    #[arg(long)]
    detail: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    Disjunct,
    Superset,
    Inhibitor,
}

#[derive(Debug, Args)]
struct Bounds {
    #[arg(long)]
    s: usize,
    /// Largest part size (superset model).
    #[arg(long)]
    l: Option<usize>,
    /// Largest inhibitor count (inhibitor model).
    #[arg(long = "i")]
    iota: Option<usize>,
}

#[derive(Debug, Args)]
struct DecodeArgs {
    model: Model,
    #[arg(long)]
    code: Option<String>,
    /// Result vector as a 0/1 string.
    #[arg(long)]
    result: String,
    #[command(flatten)]
    bounds: Bounds,
    /// Check the matching code property before decoding.
    #[arg(long)]
    verify: bool,
}

#[derive(Debug, Args)]
struct ResultArgs {
    model: Model,
    #[arg(long)]
    code: Option<String>,
    /// Hidden instance: "1,5,7", "1,2;3" or "3|5" depending on the model.
    #[arg(long, allow_hyphen_values = true)]
    instance: String,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    model: Model,
    #[arg(long)]
    code: Option<String>,
    #[command(flatten)]
    bounds: Bounds,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
