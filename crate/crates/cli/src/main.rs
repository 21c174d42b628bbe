use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hmreq_core::Quartile;

mod commands;

/// Check, export and analyze human-monitoring requirements.
#[derive(Parser)]
#[command(name = "hmreq", version)]
struct Cli {
    /// Lexicon JSON replacing the built-in seed lexicon.
    #[arg(long, global = true, env = "HMREQ_LEXICON", value_name = "FILE")]
    lexicon: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report diagnostics for one or more `.hmreq` files.
    Check {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Write a document as JSON. Nothing is written if it has errors.
    Export {
        path: PathBuf,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print pairwise value-conflict scores of a project.
    Conflicts {
        project: PathBuf,
        /// Hide pairs below this quartile.
        #[arg(long, value_parser = parse_quartile, default_value = "Q1")]
        min_quartile: Quartile,
    },
    /// Serve the HTTP API for a project until interrupted.
    Serve {
        project: PathBuf,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        bind: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

fn parse_quartile(s: &str) -> Result<Quartile, String> {
    s.parse().map_err(|_| format!("expected one of Q1, Q2, Q3, Q4, got `{s}`"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let lexicon = match commands::load_lexicon(cli.lexicon.as_deref()) {
        Ok(l) => l,
        Err(msg) => {
            eprintln!("hmreq: {msg}");
            return commands::Status::Usage.into();
        }
    };
    let status = match cli.command {
        Command::Check { paths, format } => commands::check(&paths, &lexicon, format),
        Command::Export { path, out } => commands::export(&path, out.as_deref(), &lexicon),
        Command::Conflicts { project, min_quartile } => commands::conflicts(&project, min_quartile, &lexicon),
        Command::Serve { project, port, bind } => commands::serve(&project, &bind, port, lexicon),
    };
    status.into()
}
