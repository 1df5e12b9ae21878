// SPDX-License-Identifier: Apache-2.0
//! `compquad`: read JSON descriptions, run constructions and certificate
//! suites, and print a canonical JSON report.
//!
//! Exit status: 0 when every certificate passes, 1 on a certificate failure
//! or rejected input, 2 on a parse error, 3 on an internal fault.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use compquad::quadform::{SearchConfig, DEFAULT_HEIGHT};
use compquad::selftest::DEFAULT_SEED;
use compquad::FieldSpec;

#[derive(Parser, Debug)]
#[command(name = "compquad", version, about = "Exact compositions of quadratic spaces and split triality")]
pub struct Cli {
    /// Base field (`Q`, `F7`, `7`); reinterprets inputs and picks defaults.
    #[arg(long, global = true, value_parser = parse_field)]
    field: Option<FieldSpec>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Coordinate height of searches over Q.
    #[arg(long, global = true, default_value_t = DEFAULT_HEIGHT)]
    bound: i64,
    /// Worker threads for independent cases (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(value_enum)]
    verb: Verb,
    /// Input JSON files, as required by the verb.
    inputs: Vec<PathBuf>,
    /// Criteria run by `selftest` (default: all).
    #[arg(long, value_delimiter = ',')]
    criteria: Vec<u8>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verb {
    Verify,
    Derive,
    IdentitySuite,
    CliffordIso,
    Pfister,
    Pointed,
    Para,
    Kaplansky,
    Isot,
    Lift,
    LocalLift,
    Theta,
    Extend,
    PsiA,
    Classify,
    Selftest,
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    s.parse().map_err(|e: compquad::Error| e.to_string())
}

impl Cli {
    fn search(&self) -> SearchConfig {
        SearchConfig {
            height: self.bound,
            ..SearchConfig::default()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("compquad: {e}");
            return ExitCode::from(3);
        }
    }
    let (text, code) = commands::run(&cli);
    let written = match &cli.out {
        Some(p) => std::fs::write(p, format!("{text}\n")).map_err(|e| format!("{}: {e}", p.display())),
        None => match writeln!(std::io::stdout(), "{text}") {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(format!("stdout: {e}")),
            _ => Ok(()),
        },
    };
    if let Err(e) = written {
        eprintln!("compquad: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
