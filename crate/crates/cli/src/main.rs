use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use normlog_cli::{corpus, SolveRequest, EXIT_ERROR, EXIT_NONE, EXIT_OK};

#[derive(Parser)]
#[command(
    name = "normlog",
    version,
    about = "Deontic theories as answer-set programs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a .deon theory to rules and print the compilation trace.
    Compile {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Print the trace as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Enumerate the stable models of one or more programs.
    Solve {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        /// Goals such as `?- warning_sign.` or `true`.
        #[arg(long)]
        query: Option<String>,
        #[arg(long)]
        max_models: Option<usize>,
        #[arg(long)]
        json: bool,
        /// Print the ground program and stop.
        #[arg(long)]
        dump_ground: bool,
        /// Also list `not l` for the complement of each shown literal.
        #[arg(long)]
        show_naf: bool,
        /// Explain why this literal holds in each model.
        #[arg(long, value_name = "LITERAL")]
        justify: Option<String>,
        /// Report the alethic status of this atom in each model.
        #[arg(long, value_name = "ATOM")]
        modal: Option<String>,
    },
    /// Check a narrative of facts against a normative program.
    Check {
        base: PathBuf,
        #[arg(long)]
        narrative: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long, value_name = "LITERAL")]
        justify: Option<String>,
    },
    /// Run the golden-file corpus.
    Corpus {
        /// Only cases whose name contains this text.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        dir: Option<PathBuf>,
        /// Overwrite the goldens with the current output.
        #[arg(long)]
        bless: bool,
    },
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        Command::Compile {
            input,
            output,
            json,
        } => normlog_cli::compile(&input, &output, json),
        Command::Solve {
            inputs,
            query,
            max_models,
            json,
            dump_ground,
            show_naf,
            justify,
            modal,
        } => normlog_cli::solve(&SolveRequest {
            inputs,
            query,
            max_models,
            json,
            dump_ground,
            show_naf,
            justify,
            modal,
        }),
        Command::Check {
            base,
            narrative,
            json,
            justify,
        } => normlog_cli::check(&base, &narrative, json, justify.as_deref()),
        Command::Corpus { filter, dir, bless } => {
            let dir = dir.unwrap_or_else(corpus::default_dir);
            let outcomes = corpus::run_corpus(&dir, filter.as_deref(), bless)?;
            corpus::print_table(&outcomes);
            Ok(if outcomes.iter().all(corpus::CaseOutcome::passed) {
                EXIT_OK
            } else {
                EXIT_NONE
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // --help and --version are not errors
            return ExitCode::from(if e.use_stderr() {
                EXIT_ERROR as u8
            } else {
                EXIT_OK as u8
            });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
