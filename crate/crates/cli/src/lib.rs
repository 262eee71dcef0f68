pub mod commands;
pub mod parse;
pub mod schema;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_COMPUTE: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "cycloforge",
    version,
    about = "Cyclic and BCH codes: cosets, BCH bounds, minimum distance and constructions with d equal to the BCH bound"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    /// Code length.
    #[arg(long)]
    pub n: usize,
    /// Alphabet size (a prime).
    #[arg(long, default_value_t = 2)]
    pub q: u64,
    /// Modulus of the splitting field as descending or ascending exponents,
    /// e.g. `12,3,0`; use `e:c` terms for coefficients other than 1.
    #[arg(long)]
    pub field_poly: Option<String>,
    /// Print JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cyclotomic cosets of q modulo n and the representatives coprime to n.
    Cosets {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        q: u64,
        #[arg(long)]
        json: bool,
    },
    /// Factors of x^n - 1 over GF(q) or a larger subfield of the splitting field.
    Factor {
        #[command(flatten)]
        field: FieldArgs,
        /// Factor over GF(q^d) instead of GF(q).
        #[arg(long, default_value_t = 1)]
        subfield: usize,
    },
    /// Dimension, BCH bound per representative, Bose distance and
    /// optionally a certificate that d equals the BCH bound.
    Analyze {
        #[command(flatten)]
        field: FieldArgs,
        /// Explicit list `0,1,2,4,8` or `coset:1,3` (closure applied).
        #[arg(long, allow_hyphen_values = true)]
        defining_set: String,
        #[arg(long)]
        certify: bool,
        /// Most (divisor, shift) candidates to try when certifying.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        /// Also search divisors over intermediate fields when certifying.
        #[arg(long)]
        subfields: bool,
    },
    /// Exact minimum distance by exhaustive enumeration.
    Mindist {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true)]
        defining_set: String,
        /// Most codewords to enumerate.
        #[arg(long, default_value_t = cycloforge::wtdist::DEFAULT_CAP)]
        cap: u64,
        /// Worker threads (default: CYCLOFORGE_THREADS, then all cores).
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Stop at the first codeword whose weight equals the BCH bound.
        #[arg(long)]
        fast_upper: bool,
    },
    /// Build codes with d equal to the BCH bound.
    Forge {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum)]
        mode: ForgeMode,
        /// Take divisors over GF(q^d).
        #[arg(long, default_value_t = 1)]
        subfield: usize,
        /// Confirm every record by exhaustive minimum distance.
        #[arg(long)]
        verify: bool,
        /// Divisor to extend (`extend` mode); every rational divisor if absent.
        #[arg(long)]
        generator: Option<String>,
        /// Shift for `--generator`; the smallest rational shift if absent.
        #[arg(long)]
        k: Option<usize>,
        /// Most divisors to examine.
        #[arg(long, default_value_t = 1_000_000)]
        max_divisors: u64,
        #[arg(long, default_value_t = cycloforge::wtdist::DEFAULT_CAP)]
        cap: u64,
    },
    /// Recompute a reference table and compare with the stored values.
    Reproduce {
        /// One of small-codes, n15, n21, n45, n33, n41, n17, bose21, or `all`.
        table: String,
        /// Write the recomputed table instead of the comparison report.
        #[arg(long, value_enum)]
        emit: Option<Emit>,
        #[arg(long, default_value_t = cycloforge::wtdist::DEFAULT_CAP)]
        cap: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ForgeMode {
    Divisor,
    Congruence,
    Primitive,
    Extend,
}

impl ForgeMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ForgeMode::Divisor => "divisor",
            ForgeMode::Congruence => "congruence",
            ForgeMode::Primitive => "primitive",
            ForgeMode::Extend => "extend",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Emit {
    Csv,
    Json,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(cycloforge::Error),
    Mismatch(String),
}

impl From<cycloforge::Error> for CliError {
    fn from(e: cycloforge::Error) -> Self {
        CliError::Compute(e)
    }
}

pub fn run(cli: Cli) -> ExitCode {
    let mut out = std::io::stdout().lock();
    match commands::execute(cli.command, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Compute(e)) => {
            eprintln!("error: {}: {e}", e.name());
            match e {
                cycloforge::Error::UnknownTable(_) => ExitCode::from(EXIT_USAGE),
                _ => ExitCode::from(EXIT_COMPUTE),
            }
        }
        Err(CliError::Mismatch(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(EXIT_MISMATCH)
        }
    }
}
