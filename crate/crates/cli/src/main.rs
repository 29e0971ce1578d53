//! `spraylab analyze` and `spraylab lie`.

mod algebra;
mod analyze;
mod document;
mod manifest;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::analyze::Options;
use crate::document::Document;
use crate::manifest::Manifest;

#[derive(Parser)]
#[command(
    name = "spraylab",
    version,
    about = "Exact spray geometry and Lie algebra checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline on a manifest.
    Analyze {
        manifest: PathBuf,
        #[command(flatten)]
        output: Output,
        /// Numeric finite-difference cross-validation (default on).
        #[arg(long, overrides_with = "no_fd_check")]
        fd_check: bool,
        #[arg(long)]
        no_fd_check: bool,
        /// Relative threshold for numeric evaluation checks.
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
    /// Analyze one algebra given by structure constants.
    Lie {
        algebra: PathBuf,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
#[group(multiple = false)]
struct Output {
    /// Machine-readable JSON (default).
    #[arg(long)]
    json: bool,
    /// Human-readable text.
    #[arg(long)]
    text: bool,
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))
}

fn run(cli: Cli) -> anyhow::Result<(Document, bool)> {
    match cli.command {
        Command::Analyze {
            manifest,
            output,
            no_fd_check,
            tolerance,
            ..
        } => {
            anyhow::ensure!(tolerance > 0.0, "tolerance must be positive");
            let m = Manifest::from_json(&read(&manifest)?)?;
            let opts = Options {
                fd_check: !no_fd_check,
                tolerance,
            };
            Ok((analyze::analyze(&m, opts)?, output.text))
        }
        Command::Lie { algebra, output } => Ok((analyze::lie(&read(&algebra)?)?, output.text)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((doc, text)) => {
            if text {
                print!("{}", doc.to_text());
            } else {
                print!("{}", doc.to_json());
            }
            ExitCode::from(doc.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
