use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

use commands::{Ctx, Outcome};

#[derive(Parser)]
#[command(name = "deco", version, about = "Proof checker and model checker for decorated exceptions")]
struct Cli {
    /// Specification (.dexc); defaults to the shipped exceptions spec.
    #[arg(long, global = true)]
    spec: Option<PathBuf>,
    /// Finite model (.dmodel).
    #[arg(long, global = true)]
    model: Option<PathBuf>,
    /// Proof script (.dproof).
    #[arg(long, global = true)]
    proof: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true, value_enum, default_value = "full")]
    battery: Battery,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Structured,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Battery {
    Small,
    Full,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Demo {
    Exceptions,
    Paper,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a proof script in the kernel: `check [SPEC.dexc] PROOF.dproof`.
    Check { files: Vec<PathBuf> },
    /// Print the explicit specification, or the rule obligations with --rules.
    Expand {
        #[arg(long)]
        rules: bool,
    },
    /// Evaluate a term on a value of its source in the model.
    Eval { term: String, value: String },
    /// Decide an equation in the model, or on a random battery without one.
    Equiv { equation: String },
    /// Canned demonstrations.
    Demo {
        #[arg(value_enum)]
        name: Demo,
    },
    /// The full suite as one report; structured unless --format says otherwise.
    Report,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        spec: cli.spec,
        model: cli.model,
        proof: cli.proof,
        battery: cli.battery,
    };
    let default_format = match cli.cmd {
        Cmd::Report => Format::Structured,
        _ => Format::Human,
    };
    let format = cli.format.unwrap_or(default_format);
    let result = match cli.cmd {
        Cmd::Check { files } => commands::check(&ctx, &files),
        Cmd::Expand { rules } => commands::expand(&ctx, rules),
        Cmd::Eval { term, value } => commands::eval(&ctx, &term, &value),
        Cmd::Equiv { equation } => commands::equiv(&ctx, &equation),
        Cmd::Demo { name: Demo::Exceptions } => commands::demo_exceptions(&ctx),
        Cmd::Demo { name: Demo::Paper } => commands::suite(&ctx, "demo paper"),
        Cmd::Report => commands::suite(&ctx, "report"),
    };
    match result {
        Ok(Outcome { passed, human, structured }) => {
            let text = match format {
                Format::Human => human,
                Format::Structured => {
                    serde_json::to_string_pretty(&structured).expect("reports serialize") + "\n"
                }
            };
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
