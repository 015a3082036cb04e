mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use commands::{ArithCommand, ClassifyArgs, ContractArgs, DeriveArgs, EnumerateArgs, VerifyArgs, WeylArgs};
use output::{Format, Output};

/// Lattice computations for degree-two del Pezzo surfaces with ADE singularities.
#[derive(Debug, Parser)]
#[command(name = "dpl", version)]
struct Cli {
    /// Output format; each command has a sensible default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads for the parallel passes.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the (-1)-classes or roots of a blow-up lattice.
    Enumerate(EnumerateArgs),
    /// Products of every pair of named classes, checked against the published tables.
    Tables,
    /// Validate a root configuration and report its type and invariants.
    Classify(ClassifyArgs),
    /// Choose and contract the (-1)-curves for a registry type.
    Derive(DeriveArgs),
    /// Contract disjoint exceptional classes and push classes forward.
    Contract(ContractArgs),
    /// Weyl group of E7 acting on the lattice.
    Weyl(WeylArgs),
    /// Point-count bounds and unirationality thresholds.
    Arith {
        #[command(subcommand)]
        command: ArithCommand,
    },
    /// Run every acceptance criterion.
    VerifyAll(VerifyArgs),
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Enumerate(a) => commands::enumerate(a),
        Command::Tables => commands::tables(),
        Command::Classify(a) => commands::classify(a),
        Command::Derive(a) => commands::derive(a),
        Command::Contract(a) => commands::contract(a),
        Command::Weyl(a) => commands::weyl(a),
        Command::Arith { command } => commands::arith(command),
        Command::VerifyAll(a) => commands::verify_all(a),
    }
}

fn main_inner() -> Result<bool> {
    let cli = Cli::parse();
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.max(1))
        .build_global()
        .context("configuring the thread pool")?;
    let out = run(&cli)?;
    for (path, format) in &out.files {
        commands::write_file(path, &out.render(*format)?)?;
    }
    let rendered = out.render(cli.format.unwrap_or(out.default_format))?;
    let mut stdout = std::io::stdout().lock();
    match stdout.write_all(rendered.as_bytes()).and_then(|()| stdout.flush()) {
        // A closed pipe (e.g. `| head`) is not an error.
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
        other => other?,
    }
    Ok(out.ok)
}

fn main() -> ExitCode {
    match main_inner() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
