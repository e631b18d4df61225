mod commands;
mod report;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "comet", version, about = "Exact U^- and B(infinity) computations for comet quivers")]
pub struct Cli {
    /// Number of loops at the imaginary vertex (at least 2).
    #[arg(long, global = true, default_value_t = 2)]
    pub omega: u32,
    /// Number of real vertices.
    #[arg(long, global = true, default_value_t = 1)]
    pub r: usize,
    #[arg(long = "max-i", global = true, default_value_t = 4)]
    pub max_i: u32,
    #[arg(long = "max-j", global = true, default_value_t = 4)]
    pub max_j: u32,
    /// Largest imaginary generator `(i,l)`; defaults to `--max-i`.
    #[arg(long = "max-loop", global = true)]
    pub max_loop: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Size of the identity grids.
    #[arg(long, global = true, default_value_t = 6)]
    pub grid: i64,
    /// Seed for the specialization points of the modular cross-check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the steep normal form of an operator word such as "(i,1) j j".
    Normalize { word: String },
    /// Apply `f:ENTRY` or `e:ENTRY` to a steep sequence.
    Apply { op: String, steep: String },
    /// List the steep sequences of a degree `n:m1,...,mr`.
    Enum { degree: String },
    /// Graded dimensions of the truncated quotient.
    Dims {
        #[arg(long)]
        upto: Option<String>,
    },
    /// Run a verification suite.
    Verify { suite: Suite },
    /// Compare series, recursion, steep counts and quotient dimensions.
    Compare {
        #[arg(long)]
        upto: Option<String>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Identities,
    Algebra,
    Crystal,
    All,
}

/// Exit code 0 on success, 1 on a failed check or I/O error, 2 on bad usage.
pub fn parse_and_dispatch<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match commands::run(&cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("comet: {e}");
            e.code()
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(parse_and_dispatch(std::env::args_os()))
}
