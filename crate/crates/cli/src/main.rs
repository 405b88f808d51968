use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use eqalg_core::indexing::Algorithm;
use eqalg_core::par::Exec;
use eqalg_cli::commands::{self, ListMode, Output};
use eqalg_cli::format::to_canonical;
use eqalg_cli::{CliError, Workspace};

#[derive(Parser)]
#[command(name = "eqalg", version, about = "Exact rational equivariant algebra for finite groups")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Run every loop on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    BruteForce,
    Closure,
}

#[derive(Subcommand)]
enum Command {
    /// Table of marks and primitive idempotents of the rational Burnside ring.
    Marks { group: PathBuf },
    /// Enumerate the transfer systems of a group.
    #[command(group(ArgGroup::new("mode").required(true).args(["count", "list", "dot"])))]
    TransferSystems {
        group: PathBuf,
        #[arg(long)]
        count: bool,
        #[arg(long)]
        list: bool,
        /// Hasse diagram of the lattice of transfer systems.
        #[arg(long)]
        dot: bool,
        #[arg(long, value_enum, default_value = "closure")]
        algorithm: AlgorithmArg,
    },
    /// Split a Mackey functor along the Burnside idempotents.
    Split { mackey: PathBuf },
    /// Objects and admissible maps of the norm category of a transfer system.
    NormCategory {
        group: PathBuf,
        transfer: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Check that a diagram of algebras is a functor on its norm category.
    ValidateDiagram { diagram: PathBuf },
}

fn print(out: &Output, json: bool) {
    if json {
        print!("{}", to_canonical(&out.json));
    } else {
        print!("{}", out.text);
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    let mut ws = Workspace::default();
    let result = match &cli.command {
        Command::Marks { group } => commands::marks(&mut ws, group),
        Command::TransferSystems {
            group,
            count,
            list,
            algorithm,
            ..
        } => {
            let mode = if *count {
                ListMode::Count
            } else if *list {
                ListMode::List
            } else {
                ListMode::Dot
            };
            let algorithm = match algorithm {
                AlgorithmArg::BruteForce => Algorithm::BruteForce,
                AlgorithmArg::Closure => Algorithm::Closure,
            };
            commands::transfer_systems(&mut ws, group, mode, algorithm, exec)
        }
        Command::Split { mackey } => commands::split_cmd(&mut ws, mackey, exec),
        Command::NormCategory { group, transfer, dot } => commands::norm_category_cmd(&mut ws, group, transfer, *dot),
        Command::ValidateDiagram { diagram } => commands::validate_diagram_cmd(&mut ws, diagram, exec),
    };
    match result {
        Ok(out) => {
            print(&out, cli.json);
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let CliError::Invalid { report: Some(out), .. } = &e {
                print(out, cli.json);
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
