//! Command-line front end for Reidemeister coincidence numbers: problem
//! files in, deterministic reports out.

pub mod emit;
pub mod parse;
pub mod run;

use std::path::Path;

pub use emit::{emit, Format};
pub use parse::{parse_file, parse_str, InputError, Kind, ParseOptions, Problem, ProblemFile};
pub use run::{check, compute, snf, Failure, OracleStatus, Report, RunOptions, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Compute,
    Snf,
    Check,
}

/// What the binary prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn run_text(mode: Mode, text: &str, opts: &RunOptions, format: Format) -> Outcome {
    let result = ParseOptions::from_env()
        .and_then(|p| parse_str(text, &p))
        .map_err(Failure::from)
        .and_then(|file| match mode {
            Mode::Compute => compute(&file, opts),
            Mode::Snf => snf(&file, opts),
            Mode::Check => check(&file, opts),
        });
    match result {
        Ok(report) => {
            let mut stderr = String::new();
            if let OracleStatus::Mismatch(m) = &report.oracle_status {
                stderr = format!("error: oracle mismatch: {m}\n");
            }
            Outcome {
                stdout: emit(&report, format),
                stderr,
                code: report.exit_code(),
            }
        }
        Err(f) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message()),
            code: f.exit_code(),
        },
    }
}

pub fn run_path(mode: Mode, path: &Path, opts: &RunOptions, format: Format) -> Outcome {
    match std::fs::read_to_string(path) {
        Ok(text) => run_text(mode, &text, opts, format),
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: cannot read {}: {e}\n", path.display()),
            code: 1,
        },
    }
}
