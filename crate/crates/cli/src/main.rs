//! `lcsim`: LCS lengths, Monte-Carlo scans, the similarity test and bounds
//! on Chvátal–Sankoff constants from the command line.

mod args;
mod commands;
mod manifest;
mod seqfile;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use rand::Rng;

use crate::args::Cli;
use crate::manifest::{write_manifest, Output, RunManifest, MANIFEST_SCHEMA};

const EXIT_FAILURE: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = match err.downcast_ref::<lcsim::Error>() {
                Some(lcsim::Error::InvalidInput(_)) => EXIT_INVALID,
                Some(lcsim::Error::Resource(_)) => EXIT_RESOURCE,
                _ => EXIT_FAILURE,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let start = Instant::now();
    let seed = cli.global.seed.unwrap_or_else(|| rand::rng().random());
    let threads = cli.global.threads.unwrap_or_else(rayon::current_num_threads);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build()?;

    let mut out = Output::open(cli.global.out.as_deref())?;
    let parameters = pool.install(|| commands::dispatch(&cli, seed, &mut out))?;
    let out_path = out.path().map(|p| p.to_path_buf());
    let checksum = out.finish()?;

    let manifest = RunManifest {
        schema: MANIFEST_SCHEMA,
        command_line: std::env::args().collect(),
        seed: cli.command.uses_seed().then_some(seed),
        generator: lcsim::rng::GENERATOR_NAME,
        threads,
        parameters,
        wall_time_secs: start.elapsed().as_secs_f64(),
        output_sha256: checksum,
    };
    write_manifest(&manifest, cli.global.manifest.as_deref(), out_path.as_deref())
}
