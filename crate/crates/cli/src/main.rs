use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qls_core::config::{InstanceConfig, SCHEMA_TEXT};
use qls_core::report::{
    analyze, render_corpus_json, render_corpus_text, render_json, render_text, run_corpus, AnalyzeOptions,
    EXIT_INCONSISTENT, EXIT_INVALID, EXIT_OK,
};

#[derive(Parser)]
#[command(name = "qls", version, about = "Nakayama automorphism and grading analysis for liftings of quantum linear spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one instance configuration file.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// 0: closed forms, 1: + integral and Nakayama oracles, 2: + brute force and Hopf axioms.
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=2))]
        oracle_level: Option<u8>,
        #[arg(long)]
        max_dim: Option<usize>,
        /// Also report the grading by eigenvalues of S^2.
        #[arg(long)]
        s2_grading: bool,
    },
    /// Analyze the bundled corpus at oracle level 2.
    Corpus {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the configuration file grammar.
    Schema,
}

fn code(c: i32) -> ExitCode {
    ExitCode::from(c as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Schema => {
            print!("{SCHEMA_TEXT}");
            code(EXIT_OK)
        }
        Command::Corpus { format } => {
            let run = run_corpus(&AnalyzeOptions { oracle_level: Some(2), max_dim: None, s2_grading: true });
            match format {
                Format::Text => print!("{}", render_corpus_text(&run)),
                Format::Json => println!("{}", render_corpus_json(&run)),
            }
            code(run.exit_code())
        }
        Command::Analyze { file, format, oracle_level, max_dim, s2_grading } => {
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", file.display());
                    return code(EXIT_INVALID);
                }
            };
            let report = InstanceConfig::parse(&text)
                .and_then(|cfg| analyze(&cfg, &AnalyzeOptions { oracle_level, max_dim, s2_grading }));
            match report {
                Err(e) => {
                    eprintln!("error: {e}");
                    code(EXIT_INVALID)
                }
                Ok(r) => {
                    match format {
                        Format::Text => print!("{}", render_text(&r)),
                        Format::Json => println!("{}", render_json(&r)),
                    }
                    code(if r.consistent() { EXIT_OK } else { EXIT_INCONSISTENT })
                }
            }
        }
    }
}
