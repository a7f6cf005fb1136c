//! `symopt`: command-line front end over the text field formats.
//!
//! Every subcommand reads its inputs from files, writes data files and prints
//! a one-line JSON summary on stdout. Exit status is 0 on success, 1 for
//! usage or input errors and 2 when a numerical integrity check fails.

mod args;
mod commands;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use serde_json::{json, Map, Value};

use args::Cli;

/// Failure of a subcommand, already classified by exit status.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Integrity(String),
}

impl From<symopt::Error> for Failure {
    fn from(e: symopt::Error) -> Self {
        match e {
            symopt::Error::Integrity(_) => Failure::Integrity(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

pub type Outcome = Result<Map<String, Value>, Failure>;

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("SYMOPT_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| format!("SYMOPT_THREADS must be a positive integer, got '{v}'"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(1);
    }
    let name = cli.command.name();
    let start = Instant::now();
    let outcome = commands::run(cli.command);
    let seconds = start.elapsed().as_secs_f64();
    let (mut summary, code) = match outcome {
        Ok(m) => (m, 0),
        Err(f) => {
            let (msg, code) = match f {
                Failure::Usage(m) => (m, 1),
                Failure::Integrity(m) => (m, 2),
            };
            eprintln!("error: {msg}");
            let mut m = Map::new();
            m.insert("error".into(), json!(msg));
            (m, code)
        }
    };
    let mut line = Map::new();
    line.insert("command".into(), json!(name));
    line.append(&mut summary);
    line.insert("seconds".into(), json!(seconds));
    line.insert("exit".into(), json!(code));
    println!("{}", Value::Object(line));
    ExitCode::from(code)
}
