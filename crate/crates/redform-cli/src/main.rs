use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use redform::cli::{
    cmd_generators, cmd_lie, cmd_psi, cmd_ratsol, cmd_reduce, exit_code, CommandOptions,
};
use redform::doc::SystemDocument;
use redform::Error;

/// Reduced forms and Galois-Lie algebras of block-triangular differential systems.
#[derive(Parser)]
#[command(name = "redform", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Args)]
struct Flags {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Re-verify the result (plug-back, gauge identity, bracket closure).
    #[arg(long, global = true)]
    check: bool,
    /// Largest number of parameter components kept alive at once.
    #[arg(long, global = true, default_value_t = 64)]
    component_cap: usize,
    /// Seed for the randomized module and cyclic-vector searches.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Reduce isotypical blocks in parallel.
    #[arg(long, global = true)]
    parallel: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a system whose diagonal blocks are declared reduced.
    Reduce { input: PathBuf },
    /// Lie algebra of the system as given.
    Lie { input: PathBuf },
    /// Adjoint action on the off-diagonal block of a two-block system.
    Psi { input: PathBuf },
    /// Rational solutions of F' = A F + sum c_j b_j, with b_j the "rhs" columns.
    Ratsol { input: PathBuf },
    /// Generators of a dense subgroup of the connected Galois group.
    Generators { input: PathBuf },
}

impl Command {
    fn input(&self) -> &PathBuf {
        match self {
            Command::Reduce { input }
            | Command::Lie { input }
            | Command::Psi { input }
            | Command::Ratsol { input }
            | Command::Generators { input } => input,
        }
    }
}

fn read_document(path: &PathBuf) -> Result<SystemDocument, Error> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Contract(format!("cannot read stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::Contract(format!("cannot read {}: {e}", path.display())))?
    };
    SystemDocument::from_json(&text)
}

fn emit<R: Serialize + std::fmt::Display>(r: R, json: bool) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&r).expect("reports serialize")
        );
    } else {
        print!("{r}");
    }
}

fn run(cli: &Cli) -> Result<(), Error> {
    let doc = read_document(cli.command.input())?;
    let opts = CommandOptions {
        check: cli.flags.check,
        component_cap: cli.flags.component_cap,
        seed: cli.flags.seed,
        parallel: cli.flags.parallel,
    };
    let json = cli.flags.json;
    match &cli.command {
        Command::Reduce { .. } => emit(cmd_reduce(&doc, &opts)?, json),
        Command::Lie { .. } => emit(cmd_lie(&doc, &opts)?, json),
        Command::Psi { .. } => emit(cmd_psi(&doc, &opts)?, json),
        Command::Ratsol { .. } => emit(cmd_ratsol(&doc, &opts)?, json),
        Command::Generators { .. } => emit(cmd_generators(&doc, &opts)?, json),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
