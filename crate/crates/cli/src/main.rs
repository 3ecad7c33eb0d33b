//! `hyperlat`: Salem degrees, finite quotients, chamber walks and transfer
//! certificates for integral hyperbolic lattices.
//!
//! Results go to stdout (or `--output`) as JSON, logs go to stderr.

mod commands;
mod error;
mod fixtures;
mod io;

use std::io::IsTerminal;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hyperlat::quotient::DEFAULT_ORDER_CAP;
use hyperlat::weyl::DEFAULT_WALK_CAP;
use tracing_subscriber::EnvFilter;

#[derive(Debug, Parser)]
#[command(name = "hyperlat", version, about = "Exact Salem-degree and chamber tools for hyperbolic lattices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Give up computing multiplicative orders after this many steps
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_CAP, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap_order: u64,

    /// Give up chamber walks after this many reflections
    #[arg(long, global = true, default_value_t = DEFAULT_WALK_CAP, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap_walk: u64,

    /// Report chamber verdicts without requiring them
    #[arg(long, global = true)]
    pub no_chamber: bool,

    /// Write the result here (atomically) instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Only log errors
    #[arg(long, global = true)]
    pub quiet: bool,

    /// Log as JSON lines
    #[arg(long, global = true)]
    pub log_json: bool,
}

/// Inputs are JSON file paths or `@name` for a bundled fixture.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Signature, determinant and parity of a lattice
    Signature {
        #[arg(long)]
        lattice: String,
    },
    /// Cyclotomic factorization and Salem degree of an isometry
    SalemDegree {
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        isometry: String,
    },
    /// Restrict a power of an isometry to a sublattice and emit a certificate
    Transfer {
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        isometry: String,
        #[arg(long)]
        embedding: String,
        /// Interior class of the lattice, e.g. "[2,1]"
        #[arg(long)]
        ample: Option<String>,
        /// Start of the alignment walk, in sublattice coordinates
        #[arg(long)]
        base: Option<String>,
    },
    /// Recheck a certificate from its contents alone
    Verify { certificate: String },
    /// Roots δ (δ² = −2) with δ·v equal to the given pairing
    Roots {
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        vector: String,
        #[arg(long, allow_hyphen_values = true)]
        pairing: String,
    },
    /// Reflect one interior class into the chamber of another
    Walk {
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Order of an isometry acting on L/nL
    OrderMod {
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        isometry: String,
        #[arg(long)]
        modulus: String,
    },
    /// List the bundled fixtures, or print one
    Fixtures { name: Option<String> },
}

fn init_logging(cli: &Cli) {
    let filter = if cli.quiet {
        EnvFilter::new("error")
    } else {
        EnvFilter::try_from_default_env().unwrap_or_else(|_| EnvFilter::new("info"))
    };
    let builder = tracing_subscriber::fmt()
        .with_env_filter(filter).with_writer(std::io::stderr)
        .with_ansi(std::io::stderr().is_terminal())
        .with_target(false);
    if cli.log_json {
        builder.json().init();
    } else {
        builder.init();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_logging(&cli);
    let status = match commands::run(&cli) {
        Ok(status) => status,
        Err(e) => {
            tracing::error!("{e}");
            e.status()
        }
    };
    ExitCode::from(status as u8)
}
