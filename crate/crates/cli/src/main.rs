//! `harb`: enumerate, filter, decide and realize T-vectors, verify
//! certificates, and reproduce the Harbourne-constant tables.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use harbourne::criteria::Mode;

/// Exit statuses shared by every subcommand.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const NEGATIVE: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const INCONCLUSIVE: u8 = 3;
    pub const INTEGRITY: u8 = 4;
}

#[derive(Parser, Debug)]
#[command(
    name = "harb",
    version,
    about = "Exact search for linear Harbourne constants of line configurations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List all T-vectors for d lines in ascending quotient order.
    Enumerate {
        #[arg(short = 'd')]
        d: usize,
        /// Keep only candidates with q(T) <= this rational.
        #[arg(long, allow_hyphen_values = true)]
        below: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Run the necessary-condition filters on one T-vector.
    Filter {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t = ModeArg::Absolute)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Decide whether an abstract arrangement with this T-vector exists.
    Feasible {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        budget: Option<u64>,
        /// Write the witness partition here instead of printing it.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Search PG(2,p) for lines with this T-vector.
    Realize {
        #[command(flatten)]
        target: Target,
        /// Prime field, written f2, f3, ..., f13.
        #[arg(long)]
        field: String,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate file and report its invariants.
    Verify {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Print a built-in certificate, or list them all.
    Builtin {
        label: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce the table of minimal Harbourne constants.
    Table {
        #[arg(long, default_value_t = 10)]
        max_d: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Absolute)]
        mode: ModeArg,
        /// Comma-separated primes searched in absolute mode.
        #[arg(long, value_delimiter = ',', default_values_t = [2u32, 3])]
        fields: Vec<u32>,
        /// Include every classified candidate.
        #[arg(long)]
        audit: bool,
        #[arg(long)]
        budget: Option<u64>,
        /// Worker threads; rows for different d run concurrently.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct Target {
    #[arg(short = 'd')]
    d: usize,
    /// Counts t2,...,td separated by commas.
    #[arg(short = 't')]
    t: String,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Absolute,
    Complex,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Absolute => Mode::Absolute,
            ModeArg::Complex => Mode::Complex,
        }
    }
}

/// A failed command: exit status plus the message for stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: exit::USAGE,
            message: message.into(),
        }
    }

    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Enumerate { d, below, format } => commands::enumerate(d, below.as_deref(), format),
        Command::Filter {
            target,
            mode,
            format,
        } => commands::filter(target.d, &target.t, mode.into(), format),
        Command::Feasible {
            target,
            budget,
            out,
            format,
        } => commands::feasible(target.d, &target.t, budget, out.as_deref(), format),
        Command::Realize {
            target,
            field,
            budget,
            out,
        } => commands::realize(target.d, &target.t, &field, budget, out.as_deref()),
        Command::Verify { path, format } => commands::verify(&path, format),
        Command::Builtin { label, out } => commands::builtin(label.as_deref(), out.as_deref()),
        Command::Table {
            max_d,
            mode,
            fields,
            audit,
            budget,
            jobs,
            format,
            out,
        } => commands::table(commands::TableArgs {
            max_d,
            mode: mode.into(),
            fields,
            audit,
            budget,
            jobs,
            format,
            out,
        }),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("harb: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
