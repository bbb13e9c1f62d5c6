use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Exact tools for Butson Hadamard matrices, bent vectors and Z_k codes.
#[derive(Parser, Debug)]
#[command(name = "butson", version)]
pub struct Cli {
    /// Worker threads (defaults to available parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a matrix, vector or code and write it out.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Check a matrix property.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// Certify a vector against a matrix.
    BentCheck {
        matrix: PathBuf,
        vector: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive search for bent vectors of a matrix.
    BentSearch {
        matrix: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Any)]
        mode: ModeArg,
        /// Examine only the first N candidates.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Covering radius of C_H or of a first-order Reed-Muller code.
    CoveringRadius(CoveringArgs),
    /// Number-theoretic obstructions to bent vectors in BH(n, k).
    Obstructions {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        json: bool,
    },
    /// Smallest t with M^t a scalar matrix, M^t = n^{t/2} I.
    Order {
        matrix: PathBuf,
        #[arg(long, default_value_t = 64)]
        max_t: u64,
        #[arg(long)]
        json: bool,
    },
    /// Block-circulant Bush-type matrix B_a in BH(p^2, p).
    Bush {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        a: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Check the projector identities for this p.
        #[arg(long)]
        verify_algebra: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// Character table of C_{n1} x ... x C_{nr}.
    Fourier {
        /// Cyclic order, shorthand for a single factor.
        #[arg(long, conflicts_with = "factors")]
        n: Option<u32>,
        /// Comma-separated factor orders.
        #[arg(long, value_delimiter = ',')]
        factors: Vec<u32>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Sylvester matrix of order 2^m.
    Sylvester {
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Kronecker product of two matrix files.
    Kron {
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Bush-type B_a in BH(p^2, p).
    Bush {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        a: u32,
        #[command(flatten)]
        out: OutArgs,
    },
    /// The quadratic bent vector over Z_k^m (m even).
    Ksw {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// First-order generalised Reed-Muller code R_q(1, m).
    Rm {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args, Debug)]
pub struct OutArgs {
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    Hadamard {
        matrix: PathBuf,
        #[arg(long)]
        json: bool,
    },
    Bush {
        matrix: PathBuf,
        #[arg(long)]
        json: bool,
    },
    Unbiased {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ModeArg {
    Any,
    SelfDual,
    ConjugateSelfDual,
}

#[derive(Args, Debug)]
pub struct CoveringArgs {
    /// Use C_H of this matrix file.
    #[arg(long, conflicts_with = "rm", required_unless_present = "rm")]
    code_from: Option<PathBuf>,
    /// Use R_q(1, m), given as `q,m`.
    #[arg(long, value_parser = parse_pair)]
    rm: Option<(u32, u32)>,
    /// Exhaustive scan (the default).
    #[arg(long, conflicts_with = "sample")]
    exact: bool,
    /// Sample N random ambient vectors; gives a lower bound only.
    #[arg(long)]
    sample: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest ambient space the exhaustive scan will visit.
    #[arg(long, default_value_t = butson::codes::DEFAULT_SCAN_BUDGET)]
    budget: u64,
    /// A bent vector of the matrix, used for the phase-3 lower bound.
    #[arg(long, requires = "code_from")]
    bent: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

fn parse_pair(s: &str) -> Result<(u32, u32), String> {
    let (q, m) = s.split_once(',').ok_or("expected `q,m`")?;
    let parse = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("`{t}`: {e}"));
    Ok((parse(q)?, parse(m)?))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        if w == 0 {
            eprintln!("error: --workers must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(cli.command) {
        Ok(commands::Outcome::Holds) => ExitCode::SUCCESS,
        Ok(commands::Outcome::Fails) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
