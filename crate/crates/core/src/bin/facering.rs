use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use facering::face_ring::betti_numbers;
use facering::harness::{
    analyze, betti_csv, cross_check, read_complex, run_corpus, sheaf_test, CorpusConfig,
};
use facering::{Error, FieldSpec, Result};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "facering",
    version,
    about = "Cohen-Macaulay checks for Stanley-Reisner rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: homology, Betti numbers, both verdicts.
    Analyze {
        file: PathBuf,
        #[arg(long, default_value = "q,gf2,gf3")]
        fields: String,
        /// Add the Tor-vs-cohomology decomposition table.
        #[arg(long)]
        probe: bool,
        /// Print Betti numbers as CSV instead of the JSON report.
        #[arg(long)]
        csv: bool,
    },
    /// Both verdicts per field; exits 2 if they disagree on a pure complex.
    CrossCheck {
        file: PathBuf,
        #[arg(long, default_value = "q,gf2,gf3")]
        fields: String,
    },
    /// Exhaustive plus seeded random sweep.
    Corpus {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "q,gf2,gf3")]
        fields: String,
        /// Sampled non-squarefree strands per complex and field.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Sheaf-engine oracles on one complex.
    SheafTest {
        file: PathBuf,
        #[arg(long, default_value = "q,gf2,gf3")]
        fields: String,
    },
    /// Betti numbers of the face ring.
    Tor {
        file: PathBuf,
        #[arg(long, default_value = "q,gf2,gf3")]
        fields: String,
        /// Break the numbers down by squarefree multidegree.
        #[arg(long)]
        per_degree: bool,
        #[arg(long)]
        csv: bool,
    },
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Analyze {
            file,
            fields,
            probe,
            csv,
        } => {
            let report = analyze(
                &read_complex(&file)?,
                &FieldSpec::parse_list(&fields)?,
                probe,
            )?;
            if csv {
                let tables: Vec<_> = report.fields.iter().map(|f| f.betti.clone()).collect();
                print!("{}", betti_csv(&tables, false));
                Ok(())
            } else {
                print_json(&report)
            }
        }
        Command::CrossCheck { file, fields } => print_json(&cross_check(
            &read_complex(&file)?,
            &FieldSpec::parse_list(&fields)?,
        )?),
        Command::Corpus {
            max_n,
            random,
            seed,
            fields,
            samples,
        } => {
            let config = CorpusConfig {
                max_n,
                random_count: random,
                seed,
                fields: FieldSpec::parse_list(&fields)?,
                nonsquarefree_samples: samples,
                ..CorpusConfig::default()
            };
            print_json(&run_corpus(&config)?)
        }
        Command::SheafTest { file, fields } => {
            let report = sheaf_test(&read_complex(&file)?, &FieldSpec::parse_list(&fields)?)?;
            print_json(&report)?;
            if report.all_passed {
                Ok(())
            } else {
                Err(Error::Invariant("a sheaf oracle failed".into()))
            }
        }
        Command::Tor {
            file,
            fields,
            per_degree,
            csv,
        } => {
            let complex = read_complex(&file)?;
            let tables = FieldSpec::parse_list(&fields)?
                .into_iter()
                .map(|f| {
                    let t = betti_numbers(&complex, f)?;
                    Ok(if per_degree { t } else { t.without_breakdown() })
                })
                .collect::<Result<Vec<_>>>()?;
            if csv {
                print!("{}", betti_csv(&tables, per_degree));
                Ok(())
            } else {
                print_json(&tables)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
