//! Command-line front end: Salem checks, expansions, co-factor sets,
//! table reproduction and the parametric families.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Format;

/// Exit codes.
pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_BUDGET: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "salembeta", version, about = "Beta expansions of degree-6 Salem numbers")]
pub struct Cli {
    #[command(flatten)]
    pub run: RunArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Initial width of the enclosure of beta.
    #[arg(long, global = true, default_value = "5e-64")]
    pub eps: String,
    /// Steps between checkpoints.
    #[arg(long, global = true, default_value_t = 10_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub checkpoint_interval: u64,
    /// Worker threads for independent work items (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Human)]
    pub format: OutputFormat,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Human,
    Tsv,
    JsonLines,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Human => Format::Human,
            OutputFormat::Tsv => Format::Tsv,
            OutputFormat::JsonLines => Format::Json,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Salem verdict, beta, discriminant and heuristic constant of (a, b, c).
    #[command(allow_negative_numbers = true)]
    Check { a: i64, b: i64, c: i64 },
    /// Greedy expansion of 1 in base beta.
    #[command(allow_negative_numbers = true)]
    Expand {
        a: i64,
        b: i64,
        c: i64,
        #[arg(long, default_value_t = 1 << 32, value_parser = clap::value_parser!(u64).range(1..))]
        max_steps: u64,
        /// Checkpoint file; resumed from when it already exists.
        #[arg(long)]
        state_file: Option<PathBuf>,
        /// Print every digit instead of the first 10^4.
        #[arg(long)]
        full_digits: bool,
    },
    /// Minimal co-factor set for shape (m, p).
    Cofactors { m: usize, p: usize },
    /// Reproduce a table.
    #[command(subcommand)]
    Table(TableCommand),
    /// Check a parametric family.
    #[command(subcommand)]
    Family(FamilyCommand),
}

#[derive(Subcommand, Debug)]
pub enum TableCommand {
    /// Minimal co-factor sets of shape (1, p).
    Lambda {
        #[arg(long, default_value_t = 5)]
        pmin: usize,
        #[arg(long, default_value_t = 10)]
        pmax: usize,
    },
    /// Long expansions of small trace.
    #[command(allow_negative_numbers = true)]
    Largeexp {
        #[arg(long, default_value_t = 10)]
        max_trace: i64,
        #[arg(long, default_value_t = 5_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        max_steps: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum FamilyCommand {
    /// (a, -2a, 2a-3) with a = -6k-3.
    LargePeriod {
        #[arg(long)]
        k: u64,
        /// Check every k up to this value.
        #[arg(long)]
        kmax: Option<u64>,
    },
    /// (a, a+1, -2) for even a <= -2.
    #[command(allow_negative_numbers = true)]
    LargeTrace {
        #[arg(long)]
        a: i64,
        /// Check every even a down to this value.
        #[arg(long)]
        amin: Option<i64>,
    },
    /// (a, -2a, 2a-3) with a = -6k + offset.
    #[command(allow_negative_numbers = true)]
    VariantScan {
        #[arg(long)]
        offset: i64,
        #[arg(long, default_value_t = 2)]
        kmin: u64,
        #[arg(long)]
        kmax: u64,
        #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        max_steps: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.run.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.run.threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INTERNAL);
        }
    }
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(e.code())
        }
    }
}
