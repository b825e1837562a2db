//! Library side of the `coverkit` command: input parsing, the commands and
//! the exit-code policy, kept out of `main` so tests can drive them.

pub mod commands;
pub mod input;

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::json;

use coverkit::limits::set_ground_cap;
use coverkit::Axiom;

use commands::{CmdError, Options, Outcome};

/// Exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// A `--require`d axiom fails.
    pub const REQUIREMENT: i32 = 1;
    /// Unreadable or malformed input, bad arguments, or an input outside a
    /// command's domain (e.g. `dualize` on a non-cover).
    pub const INPUT: i32 = 2;
    /// A size cap was exceeded.
    pub const CAP: i32 = 3;
    /// A property the theory guarantees for the input failed to hold.
    pub const THEOREM: i32 = 4;
}

pub const CAP_ENV: &str = "COVERKIT_CAP";

#[derive(Parser, Debug)]
#[command(name = "coverkit", version, about = "Finite cover systems: classify, spectra, frames, duality")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Write a Graphviz rendering here.
    #[arg(long, global = true)]
    pub dot: Option<PathBuf>,
    /// Exit with status 1 unless every input system satisfies this axiom.
    #[arg(long, global = true)]
    pub require: Option<String>,
    /// Ground-set size cap; takes precedence over COVERKIT_CAP.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Seed for the randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Axiom flags of each input system.
    Classify { files: Vec<PathBuf> },
    /// Tight sets, the spectrum's properties and the representation checks.
    Spectrum { files: Vec<PathBuf> },
    /// The quasi-ideal frame and its laws.
    Frame { files: Vec<PathBuf> },
    /// Duality checks for covers and spaces, each against the others given.
    Dualize { files: Vec<PathBuf> },
    /// Cut-composite of morphism files in order; a system stands for its identity.
    Compose { files: Vec<PathBuf> },
}

impl Command {
    fn parts(&self) -> (&'static str, &[PathBuf]) {
        match self {
            Command::Classify { files } => ("classify", files),
            Command::Spectrum { files } => ("spectrum", files),
            Command::Frame { files } => ("frame", files),
            Command::Dualize { files } => ("dualize", files),
            Command::Compose { files } => ("compose", files),
        }
    }
}

fn cap_from_env() -> Result<Option<usize>, CmdError> {
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CmdError::Usage(format!("{CAP_ENV}={v} is not a number"))),
        Err(_) => Ok(None),
    }
}

fn execute(cli: &Cli) -> Result<(String, Outcome), CmdError> {
    if let Some(cap) = cli.cap.or(cap_from_env()?) {
        set_ground_cap(cap);
    }
    let require = cli
        .require
        .as_deref()
        .map(|s| s.parse::<Axiom>().map_err(|_| CmdError::Usage(format!("unknown axiom `{s}`"))))
        .transpose()?;
    let opts = Options {
        require,
        seed: cli.seed,
    };
    let (name, files) = cli.command.parts();
    if files.is_empty() {
        return Err(CmdError::Usage(format!("{name} needs at least one input file")));
    }
    let loaded = commands::load_all(files)?;
    let outcome = match cli.command {
        Command::Classify { .. } => commands::classify(&loaded, &opts)?,
        Command::Spectrum { .. } => commands::spectrum_cmd(&loaded, &opts)?,
        Command::Frame { .. } => commands::frame(&loaded, &opts)?,
        Command::Dualize { .. } => commands::dualize(&loaded, &opts)?,
        Command::Compose { .. } => commands::compose(&loaded, &opts)?,
    };
    let report = json!({
        "format_version": input::FORMAT_VERSION,
        "tool_version": env!("CARGO_PKG_VERSION"),
        "command": name,
        "seed": cli.seed,
        "require": require.map(|a| a.name()),
        "results": outcome.results,
        "requirement_failed": outcome.requirement_failed,
        "theorem_failed": outcome.theorem_failed,
    });
    let mut text = serde_json::to_string_pretty(&report).expect("JSON values serialize");
    text.push('\n');
    Ok((text, outcome))
}

/// Runs the command, writing its outputs, and returns the exit code.
pub fn run(cli: &Cli) -> i32 {
    let (text, outcome) = match execute(cli) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("coverkit: {e}");
            return if e.is_cap() { exit::CAP } else { exit::INPUT };
        }
    };
    let written = match &cli.json {
        Some(p) => fs::write(p, &text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
    .and_then(|_| match &cli.dot {
        Some(p) => fs::write(p, &outcome.dot).map_err(|e| format!("{}: {e}", p.display())),
        None => Ok(()),
    });
    if let Err(e) = written {
        eprintln!("coverkit: {e}");
        return exit::INPUT;
    }
    if outcome.theorem_failed {
        exit::THEOREM
    } else if outcome.requirement_failed {
        exit::REQUIREMENT
    } else {
        exit::OK
    }
}
