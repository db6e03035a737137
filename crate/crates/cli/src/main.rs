mod betacode;
mod casestudy;
mod extract;
mod lexicon;
mod manifest;

use std::fmt;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

const VERSION: &str = concat!(
    env!("CARGO_PKG_VERSION"),
    " (lexicon format 1, run manifest format 1)"
);

#[derive(Parser)]
#[command(name = "valency", version = VERSION, about = "Valency lexicon extraction and analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a lexicon TSV from a directory of treebank XML files
    Extract(extract::ExtractArgs),
    /// Summary tables over a lexicon
    Stats(lexicon::StatsArgs),
    /// Print the lexicon rows matching every given filter
    Query(lexicon::QueryArgs),
    /// Frames of one verb with counts and authors
    Constructions(lexicon::ConstructionsArgs),
    /// Compare formulaic and baseline object similarity per verb
    Casestudy(casestudy::CaseStudyArgs),
    /// Transcode Beta Code to Unicode Greek
    Betacode(betacode::BetaCodeArgs),
}

/// Lexicon input shared by the read-only commands.
#[derive(Args)]
struct LexiconInput {
    /// Lexicon TSV file
    lexicon: PathBuf,
    /// Skip malformed rows (reported on stderr) instead of rejecting the file
    #[arg(long)]
    lenient: bool,
}

/// Successful outcomes and their exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok,
    /// Some input could not be used; the rest was processed.
    Partial,
    /// The command ran but produced no results.
    Empty,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Partial => 2,
            Status::Empty => 3,
        }
    }
}

/// A usage or I/O error; always exit code 1.
#[derive(Debug)]
pub struct Failure(String);

impl Failure {
    pub fn new(message: impl Into<String>) -> Failure {
        Failure(message.into())
    }

    pub fn io(path: &Path, err: impl fmt::Display) -> Failure {
        Failure(format!("{}: {err}", path.display()))
    }
}

fn write_stdout(text: &str) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| Failure::new(format!("writing output: {e}")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Extract(a) => extract::run(a),
        Command::Stats(a) => lexicon::stats(a),
        Command::Query(a) => lexicon::query(a),
        Command::Constructions(a) => lexicon::constructions(a),
        Command::Casestudy(a) => casestudy::run(a),
        Command::Betacode(a) => betacode::run(a),
    };
    match result {
        Ok(status) => ExitCode::from(status.code()),
        Err(Failure(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
