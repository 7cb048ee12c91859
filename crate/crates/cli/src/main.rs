mod commands;
mod output;

use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::Format;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] ratknot_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

/// Exact rational-tangle calculus and invariants of n-trivial 2-bridge knots.
#[derive(Debug, Parser)]
#[command(name = "ratknot", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Seed for randomized checks; echoed in JSON output.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    /// Worker threads for parallel steps (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Census cache file; overrides the RATKNOT_CACHE environment variable.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
}

/// Sequence or knot given as `C(a,b,...)`, `p/q`, or separate integers.
#[derive(Debug, Args)]
pub struct Entries {
    #[arg(required = true, allow_negative_numbers = true, num_args = 1..)]
    pub items: Vec<String>,
}

impl Entries {
    pub fn joined(&self) -> String {
        self.items.join(" ")
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate IF(a_1,...,a_n) = 1/IF(a_1,...,a_{n-1}) + a_n.
    IfEval(Entries),
    /// Fraction of the rational tangle C(a_1,...,a_n).
    Fraction(Entries),
    /// Same-sign Conway sequence with the given iterated fraction.
    PositiveForm {
        #[arg(allow_negative_numbers = true)]
        fraction: String,
    },
    /// All-even Conway sequence of the 2-bridge knot p/q.
    EvenForm {
        #[arg(allow_negative_numbers = true)]
        fraction: String,
        /// Identify mirror images.
        #[arg(long)]
        up_to_mirror: bool,
    },
    /// The n-trivial sequence w_n for even twist parameters a_1..a_n.
    Wn(Entries),
    /// Randomized check that zeroing any a_i trivializes w_n.
    VerifyTrivial {
        #[command(flatten)]
        params: Entries,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// The knot closing w_n followed by a c-twist, with its unknotting certificate.
    Family {
        #[command(flatten)]
        params: Entries,
        #[arg(long, allow_negative_numbers = true)]
        c: String,
    },
    /// Polynomial, signature and finite-type invariants of a 2-bridge knot.
    Invariants {
        #[command(flatten)]
        knot: Entries,
        /// Highest Taylor degree of V(e^x) to report.
        #[arg(long, default_value_t = 3)]
        degree: usize,
    },
    /// Jones/Conway test for n-similarity to the unknot (necessary, not sufficient).
    Similar {
        #[command(flatten)]
        knot: Entries,
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// Find s with det(w_n, s) = k mod p for a_i = ±2.
    DetSolve {
        p: String,
        #[arg(allow_negative_numbers = true)]
        k: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Signs of a_1..a_n as a string such as "+-+" (default all +).
        #[arg(long)]
        signs: Option<String>,
    },
    /// Connected sum of n-trivial knots with H_1(D, Z_p) = sum of Z_{p_i}.
    RealizeHomology {
        p: String,
        /// The orders p_i; each must divide p.
        orders: Vec<String>,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Census d_k and the growth bound d_k >= exp(rho (ln k)^2).
    Census {
        #[arg(long, default_value_t = 1024)]
        max_k: u64,
        #[arg(long, default_value = "0.3")]
        rho: String,
        /// Also compare against brute-force enumeration up to this k.
        #[arg(long)]
        enumerate: Option<u64>,
    },
    /// Run every acceptance criterion.
    #[command(name = "verify-paper")]
    VerifyAll {
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(jobs) = cli.global.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().expect("pool configured once");
    }
    let result = commands::run(&cli.command, &cli.global)
        .and_then(|report| report.emit(cli.global.format, cli.global.seed, &mut io::stdout().lock()).map(|()| report));
    match result {
        Ok(report) if report.ok => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
