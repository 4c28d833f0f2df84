//! `sadic` — continued fraction expansions, S-adic words, Rauzy fractals,
//! and spectrum verification from the command line.
//!
//! Every run produces exactly one report: JSON to stdout (or `--out`), or an
//! image/CSV file when the subcommand renders one. Reports embed the schema
//! version, the full configuration, seeds, and precision, and are
//! byte-identical across reruns and thread counts.
//!
//! Exit codes: 0 success, 2 domain errors (point outside the algorithm
//! domain, degenerate boundary, non-primitive input), 3 inconclusive
//! verdicts (caps hit, undecidable at precision), 1 usage or internal
//! errors.

mod commands;
mod report;

use clap::error::ErrorKind;
use clap::Parser;

use commands::{Cli, CliOutcome};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Some(threads) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match commands::run(cli) {
        Ok(CliOutcome::Success) => std::process::exit(0),
        Ok(CliOutcome::Inconclusive) => std::process::exit(3),
        Err(e) => {
            eprintln!("error: {}", e.message);
            std::process::exit(e.exit_code);
        }
    }
}
