//! `allied`: tally elections with alliance-aware voting rules, check
//! axioms, mine counterexamples, sample random elections and run
//! batch experiments. All outputs are JSON (or CSV for experiment
//! tables); exit codes: 0 pass, 1 input error, 2 usage error, 3
//! counterexample found.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use allied_core::axioms::{self, AxiomId, Verdict};
use allied_core::cultures::CultureSpec;
use allied_core::election::Election;
use allied_core::error::Error;
use allied_core::experiment::{run_experiment, ExperimentManifest};
use allied_core::format::{parse_election, serialize_election};
use allied_core::ruleid::RuleId;

const SCHEMA_VERSION: u32 = 1;

const EXIT_OK: u8 = 0;
const EXIT_INPUT: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_COUNTEREXAMPLE: u8 = 3;

#[derive(Parser)]
#[command(name = "allied", version, about = "Alliance-aware single-winner voting rules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tally one election file under a voting rule
    Tally {
        /// Rule id, e.g. plurality, iw-maximin, scoring:1,0.5,0,
        /// laminar-sw-plurality, maximin+primaries:joint
        #[arg(long)]
        rule: String,
        file: PathBuf,
    },
    /// Check one axiom on one election under a rule
    Check {
        #[arg(long)]
        axiom: String,
        #[arg(long)]
        rule: String,
        file: PathBuf,
    },
    /// Mine axiom counterexamples over sampled elections
    Fuzz {
        #[arg(long)]
        axiom: String,
        #[arg(long)]
        rule: String,
        /// Culture spec, e.g. ic:m=5,n=9,k=2 or euc:d=1,m=10,n=101,k=2
        #[arg(long)]
        culture: String,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory for witness files; omit to skip writing them
        #[arg(long)]
        out: Option<PathBuf>,
        /// Keep at most this many witnesses
        #[arg(long, default_value_t = 10)]
        max_witnesses: usize,
    },
    /// Sample one election from a culture and write it as a file
    Sample {
        #[arg(long)]
        culture: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Trial index within the seed's stream
        #[arg(long, default_value_t = 0)]
        trial: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run an experiment manifest and emit CSV/JSON tables
    Experiment {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::UnknownRule(_) | Error::UnknownAxiom(_) | Error::InvalidCulture { .. } => EXIT_USAGE,
        _ => EXIT_INPUT,
    }
}

fn load_election(path: &Path) -> Result<Election, Error> {
    let text = fs::read_to_string(path)?;
    parse_election(&text)
}

fn emit<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable output"));
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Tally { rule, file } => {
            let rule: RuleId = rule.parse()?;
            let e = load_election(&file)?;
            let result = rule.tally(&e)?;
            #[derive(Serialize)]
            struct Out<'a> {
                schema_version: u32,
                rule: String,
                winner: usize,
                winner_label: &'a str,
                scores: &'a [f64],
                trace: &'a allied_core::rules::Trace,
            }
            emit(&Out {
                schema_version: SCHEMA_VERSION,
                rule: rule.to_string(),
                winner: result.winner,
                winner_label: &e.labels()[result.winner],
                scores: &result.scores,
                trace: &result.trace,
            });
            Ok(EXIT_OK)
        }
        Command::Check { axiom, rule, file } => {
            let axiom: AxiomId = axiom.parse()?;
            let rule: RuleId = rule.parse()?;
            let e = load_election(&file)?;
            let report = axioms::check(&e, &rule, axiom)?;
            #[derive(Serialize)]
            struct Out<'a> {
                schema_version: u32,
                report: &'a axioms::AxiomReport,
            }
            emit(&Out { schema_version: SCHEMA_VERSION, report: &report });
            Ok(if report.verdict == Verdict::Counterexample {
                EXIT_COUNTEREXAMPLE
            } else {
                EXIT_OK
            })
        }
        Command::Fuzz { axiom, rule, culture, trials, seed, out, max_witnesses } => {
            let axiom: AxiomId = axiom.parse()?;
            let rule: RuleId = rule.parse()?;
            let spec: CultureSpec = culture.parse()?;
            let hits = axioms::fuzz(&rule, axiom, &spec, trials, seed)?;
            let mut witness_files = Vec::new();
            if let Some(dir) = &out {
                fs::create_dir_all(dir)?;
                for hit in hits.iter().take(max_witnesses) {
                    if let Some(w) = &hit.report.witness {
                        let stem = format!("witness_{:06}", hit.trial);
                        let elect = dir.join(format!("{stem}.elect"));
                        fs::write(&elect, serialize_election(&w.original))?;
                        fs::write(
                            dir.join(format!("{stem}.perturbed.elect")),
                            serialize_election(&w.perturbed),
                        )?;
                        #[derive(Serialize)]
                        struct Sidecar<'a> {
                            schema_version: u32,
                            trial: u64,
                            rule: &'a str,
                            axiom: AxiomId,
                            description: &'a str,
                            winner_before: usize,
                            winner_after: usize,
                        }
                        fs::write(
                            dir.join(format!("{stem}.json")),
                            serde_json::to_vec_pretty(&Sidecar {
                                schema_version: SCHEMA_VERSION,
                                trial: hit.trial,
                                rule: &hit.report.rule,
                                axiom: hit.report.axiom,
                                description: &w.description,
                                winner_before: w.winner_before,
                                winner_after: w.winner_after,
                            })?,
                        )?;
                        witness_files.push(elect);
                    }
                }
            }
            #[derive(Serialize)]
            struct Out {
                schema_version: u32,
                rule: String,
                axiom: AxiomId,
                culture: String,
                trials: u64,
                seed: u64,
                counterexamples: usize,
                counterexample_trials: Vec<u64>,
                witness_files: Vec<PathBuf>,
            }
            let n = hits.len();
            emit(&Out {
                schema_version: SCHEMA_VERSION,
                rule: rule.to_string(),
                axiom,
                culture: spec.to_string(),
                trials,
                seed,
                counterexamples: n,
                counterexample_trials: hits.iter().map(|h| h.trial).collect(),
                witness_files,
            });
            Ok(if n > 0 { EXIT_COUNTEREXAMPLE } else { EXIT_OK })
        }
        Command::Sample { culture, seed, trial, out } => {
            let spec: CultureSpec = culture.parse()?;
            let e = spec.with_seed(seed).sample_trial(trial)?;
            fs::write(&out, serialize_election(&e))?;
            #[derive(Serialize)]
            struct Out {
                schema_version: u32,
                culture: String,
                seed: u64,
                trial: u64,
                candidates: usize,
                voters: u64,
                file: PathBuf,
            }
            emit(&Out {
                schema_version: SCHEMA_VERSION,
                culture: spec.to_string(),
                seed,
                trial,
                candidates: e.candidate_count(),
                voters: e.voter_count(),
                file: out,
            });
            Ok(EXIT_OK)
        }
        Command::Experiment { manifest, out } => {
            let text = fs::read_to_string(&manifest)?;
            let manifest: ExperimentManifest = serde_json::from_str(&text)?;
            fs::create_dir_all(&out)?;
            let rows = run_experiment(&manifest, &out)?;
            #[derive(Serialize)]
            struct Out {
                schema_version: u32,
                cells: usize,
                rows: usize,
                csv: PathBuf,
                json: PathBuf,
            }
            emit(&Out {
                schema_version: SCHEMA_VERSION,
                cells: manifest.cells()?.len(),
                rows: rows.len(),
                csv: out.join("results.csv"),
                json: out.join("results.json"),
            });
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
