//! `clspace`: model checking, classification, conversion, bouquets and
//! bounded search from the command line.
//!
//! Exit codes: 0 = yes (true, valid, satisfiable, all checks pass),
//! 1 = no, 2 = error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "clspace", version, about = "Finite models for CL, IL and friends")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a formula on a model file (needs a valuation for its variables).
    Check {
        model: PathBuf,
        formula: String,
        /// Report the verdict at this point instead of the truth set.
        #[arg(long)]
        point: Option<usize>,
    },
    /// Decide validity on a frame or space, printing a falsifying valuation.
    Validity { model: PathBuf, formula: String },
    /// Print frame properties or CL/IL-space conditions.
    Classify { model: PathBuf },
    /// Convert between frame and space files.
    Convert {
        model: PathBuf,
        /// Target kind; defaults to the other one.
        #[arg(long, value_enum)]
        to: Option<Target>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Glue spaces into a bouquet and check the truth lemmas on it.
    Bouquet {
        #[arg(required = true)]
        components: Vec<PathBuf>,
        /// One basepoint per component, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        basepoints: Vec<usize>,
        /// Index of the component carrying the principal ultrafilter.
        #[arg(long, default_value_t = 0)]
        k: usize,
        /// Seed for the random formulas and fallback valuations.
        #[arg(long, default_value_t = commands::DEFAULT_SEED)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Bounded search for a countermodel or a satisfying model.
    Search {
        /// A formula, or `@file` with one formula per line.
        query: String,
        #[arg(long, default_value = "CL")]
        class: String,
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = Mode::Countermodel)]
        mode: Mode,
        /// Isomorphism dedup; `auto` turns it on from 4 points.
        #[arg(long, value_enum, default_value_t = Dedup::Auto)]
        dedup: Dedup,
        /// Write the witness model here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Parse a formula and print its canonical form.
    Parse { formula: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Frame,
    Space,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Countermodel,
    Satisfy,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dedup {
    Auto,
    On,
    Off,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check { model, formula, point } => commands::check(&model, &formula, point),
        Command::Validity { model, formula } => commands::validity(&model, &formula),
        Command::Classify { model } => commands::classify(&model),
        Command::Convert { model, to, output } => {
            commands::convert(&model, to.map(|t| matches!(t, Target::Space)), output.as_deref())
        }
        Command::Bouquet {
            components,
            basepoints,
            k,
            seed,
            output,
        } => commands::bouquet(&components, basepoints, k, seed, output.as_deref()),
        Command::Search {
            query,
            class,
            max_n,
            mode,
            dedup,
            output,
        } => {
            let dedup = match dedup {
                Dedup::Auto => None,
                Dedup::On => Some(true),
                Dedup::Off => Some(false),
            };
            commands::search(&query, &class, max_n, mode == Mode::Satisfy, dedup, output.as_deref())
        }
        Command::Parse { formula } => commands::parse(&formula),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
