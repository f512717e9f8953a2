//! `clc`: command-line front end for the conditional logic workbench.
//!
//! Exit codes: 0 when the property holds, 1 when it is refuted or a
//! counterexample is found, 2 on usage and validation errors.

mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "clc", version, about = "Finite workbench for intuitionistic conditional logic")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Lang {
    Cond,
    Modal,
    Bimodal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    P,
    Gmt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    Pass,
    Fail,
}

#[derive(Subcommand)]
pub enum Command {
    /// Parse a formula and print it back.
    Parse {
        formula: String,
        #[arg(long, value_enum, default_value = "cond")]
        lang: Lang,
    },
    /// Evaluate a formula under a valuation.
    Mc {
        #[arg(long)]
        frame: String,
        #[arg(long)]
        val: String,
        #[arg(long)]
        formula: String,
        /// Check a single world instead of printing the truth set.
        #[arg(long)]
        world: Option<usize>,
    },
    /// Decide frame validity by enumerating valuations.
    Valid {
        #[arg(long)]
        frame: String,
        #[arg(long)]
        formula: String,
        /// Quantify over admissible valuations (required for general frames).
        #[arg(long)]
        admissible: bool,
        #[arg(long, default_value_t = clc_core::semantics::DEFAULT_BUDGET)]
        budget: u64,
        /// Write the countermodel valuation here.
        #[arg(long)]
        out: Option<String>,
    },
    /// Check an axiom's frame correspondent.
    Correspond {
        #[arg(long)]
        frame: String,
        #[arg(long)]
        axiom: String,
    },
    /// Compare validity of an axiom with its correspondent on many frames.
    VerifyCorrespondence {
        #[arg(long)]
        axiom: String,
        #[arg(long)]
        max_worlds: usize,
        #[arg(long, default_value_t = 500)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        sample_min_worlds: usize,
        #[arg(long, default_value_t = 6)]
        sample_max_worlds: usize,
        /// Draw strongly coherent samples only.
        #[arg(long)]
        strong: bool,
    },
    /// Extend a general frame to all upsets.
    Fillin {
        #[arg(long)]
        frame: String,
        #[arg(long)]
        kind: String,
        #[arg(long)]
        out: String,
    },
    /// Correspondent-level persistence experiment.
    Persist {
        #[arg(long)]
        axiom: String,
        #[arg(long)]
        fillin: String,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Only strongly coherent posets.
        #[arg(long)]
        strong: bool,
        #[arg(long, value_enum)]
        expect: Option<Expect>,
        #[arg(long, default_value_t = 2)]
        min_worlds: usize,
        #[arg(long, default_value_t = 5)]
        max_worlds: usize,
        /// Write the counterexample general frame here.
        #[arg(long)]
        out: Option<String>,
    },
    /// Build the dual frame of a finite algebra.
    Dualize {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        out: String,
    },
    /// Check a duality round trip for a frame or an algebra.
    Roundtrip {
        #[arg(long, conflicts_with = "algebra", required_unless_present = "algebra")]
        frame: Option<String>,
        #[arg(long)]
        algebra: Option<String>,
    },
    /// Translate a modal formula.
    Translate {
        formula: String,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, default_value = "p")]
        letter: String,
        #[arg(long)]
        normalize: bool,
    },
    /// Search for a frame of a logic refuting a formula.
    Search {
        #[arg(long)]
        logic: String,
        #[arg(long)]
        refute: String,
        #[arg(long)]
        max_worlds: usize,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out_frame: Option<String>,
        #[arg(long)]
        out_val: Option<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Parse { .. } => "parse",
            Command::Mc { .. } => "mc",
            Command::Valid { .. } => "valid",
            Command::Correspond { .. } => "correspond",
            Command::VerifyCorrespondence { .. } => "verify-correspondence",
            Command::Fillin { .. } => "fillin",
            Command::Persist { .. } => "persist",
            Command::Dualize { .. } => "dualize",
            Command::Roundtrip { .. } => "roundtrip",
            Command::Translate { .. } => "translate",
            Command::Search { .. } => "search",
        }
    }

    fn seed(&self) -> Option<u64> {
        match self {
            Command::VerifyCorrespondence { seed, .. } | Command::Persist { seed, .. } | Command::Search { seed, .. } => {
                Some(*seed)
            }
            _ => None,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        #[cfg(feature = "parallel")]
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().expect("thread pool is set once");
    }
    let mut inputs = report::Inputs::default();
    match commands::run(&cli.command, &mut inputs) {
        Ok(out) => {
            let body = if cli.json {
                report::render_json(cli.command.name(), cli.command.seed(), &inputs, &out)
            } else {
                out.text.trim_end().to_string()
            };
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
