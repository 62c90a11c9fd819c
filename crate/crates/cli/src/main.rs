use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use coincidence_kit::{run_path, Format, Mode, RunOptions};

const AFTER_HELP: &str = "\
Exit codes:
  0  success
  1  input error (unreadable file, malformed problem, rejected homomorphism)
  2  oracle mismatch or internal consistency failure
  3  unsupported reduction (the nilpotent engine cannot decide this input)

Environment:
  COINCIDENCE_KIT_MAX_CLOSURE  cap on the order of groups built from generators";

#[derive(Parser)]
#[command(name = "coincidence-kit", version, about = "Reidemeister coincidence numbers for tori, finite groups and nilmanifolds", after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the Reidemeister number of the problem
    #[command(after_help = AFTER_HELP)]
    Compute(Args),
    /// Smith normal form of the matrix behind the problem
    #[command(after_help = AFTER_HELP)]
    Snf(Args),
    /// Check permutation invariance and divisibility laws
    #[command(after_help = AFTER_HELP)]
    Check(Args),
}

#[derive(clap::Args)]
struct Args {
    /// Problem file (JSON)
    file: PathBuf,
    /// Cross-check with an independent brute-force computation
    #[arg(long)]
    oracle: bool,
    /// Include the computation trace
    #[arg(long)]
    trace: bool,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Structured,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (mode, args) = match cli.command {
        Command::Compute(a) => (Mode::Compute, a),
        Command::Snf(a) => (Mode::Snf, a),
        Command::Check(a) => (Mode::Check, a),
    };
    let format = match args.format {
        FormatArg::Text => Format::Text,
        FormatArg::Structured => Format::Structured,
    };
    let opts = RunOptions {
        oracle: args.oracle,
        trace: args.trace,
    };
    let out = run_path(mode, &args.file, &opts, format);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
