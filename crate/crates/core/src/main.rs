use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use monores::cli::{self, VerifyLevel, EXIT_FAILED, EXIT_INVALID, EXIT_OK};
use monores::patil::{closed_form_resolution, extract_parameters};
use monores::groebner::toric_kernel;
use monores::resolution::hilbert_numerator;
use monores::semigroup::validate_sequence;

#[derive(Parser)]
#[command(name = "monores", version, about = "Minimal free resolutions of monomial curves given by almost arithmetic sequences")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    Fast,
    Full,
}

impl From<Level> for VerifyLevel {
    fn from(l: Level) -> Self {
        match l {
            Level::Fast => VerifyLevel::Fast,
            Level::Full => VerifyLevel::Full,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one tuple.
    Analyze {
        #[arg(long, value_parser = cli::parse_seq)]
        seq: [u64; 4],
        #[arg(long)]
        json: bool,
        #[arg(long)]
        truncate: Option<usize>,
        #[arg(long, value_enum, default_value = "full")]
        verify_level: Level,
    },
    /// Analyze every valid tuple within bounds and write JSONL records.
    Sweep {
        #[arg(long)]
        max_m2: u64,
        #[arg(long)]
        max_n: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long, value_enum, default_value = "full")]
        verify_level: Level,
    },
    /// Summarize a sweep file.
    Census {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check the Hilbert series identity for one tuple.
    Hilbert {
        #[arg(long, value_parser = cli::parse_seq)]
        seq: [u64; 4],
        #[arg(long, default_value_t = 200)]
        truncate: usize,
        /// Shift one twist of the resolution before checking.
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// Print the generic and closed-form matrices.
    Matrices {
        #[arg(long, value_parser = cli::parse_seq)]
        seq: [u64; 4],
    },
}

fn main() -> ExitCode {
    let args = Args::parse();
    let code = match args.command {
        Command::Analyze {
            seq,
            json,
            truncate,
            verify_level,
        } => {
            let r = cli::analyze(seq, verify_level.into(), truncate);
            if json {
                println!("{}", serde_json::to_string(&r).expect("serializable report"));
            } else {
                print!("{}", cli::render_report(&r));
            }
            r.exit_code()
        }
        Command::Sweep {
            max_m2,
            max_n,
            out,
            threads,
            verify_level,
        } => {
            let reports = cli::sweep(max_m2, max_n, threads, verify_level.into());
            match cli::write_jsonl(&out, &reports) {
                Ok(()) => {
                    eprintln!("{} records written to {}", reports.len(), out.display());
                    EXIT_OK
                }
                Err(e) => {
                    eprintln!("{}: {e}", out.display());
                    EXIT_FAILED
                }
            }
        }
        Command::Census { input, json } => match cli::read_jsonl(&input) {
            Ok(reports) => {
                let s = cli::census(&reports);
                if json {
                    let triples: Vec<_> = s.triples.iter().map(|(t, c)| (t, c)).collect();
                    let v = serde_json::json!({
                        "records": s.records,
                        "triples": triples,
                        "cases": s.cases,
                        "mismatches": s.mismatches,
                        "verification_failures": s.verification_failures,
                        "uncertified": s.uncertified,
                        "outside": s.outside,
                    });
                    println!("{v}");
                } else {
                    print!("{}", cli::render_census(&s));
                }
                s.exit_code()
            }
            Err(e) => {
                eprintln!("{}: {e}", input.display());
                EXIT_INVALID
            }
        },
        Command::Hilbert { seq, truncate, corrupt } => hilbert(seq, truncate, corrupt),
        Command::Matrices { seq } => matrices(seq),
    };
    ExitCode::from(code as u8)
}

fn hilbert(seq: [u64; 4], truncate: usize, corrupt: bool) -> i32 {
    let spec = match validate_sequence(seq[0], seq[1], seq[2], seq[3]) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("invalid sequence: {e}");
            return EXIT_INVALID;
        }
    };
    let mut res = cli::generic_minimal(&spec);
    if corrupt {
        res = res.with_twist_shifted(0, 0, 1);
    }
    println!("K(z) = {}", hilbert_numerator(&res));
    if cli::hilbert_identity(&res, &spec, truncate) {
        println!("PASS up to degree {truncate}");
        EXIT_OK
    } else {
        println!("FAIL up to degree {truncate}");
        EXIT_FAILED
    }
}

fn matrices(seq: [u64; 4]) -> i32 {
    let spec = match validate_sequence(seq[0], seq[1], seq[2], seq[3]) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("invalid sequence: {e}");
            return EXIT_INVALID;
        }
    };
    let generic = cli::generic_minimal(&spec);
    println!("generic minimal resolution");
    print!("{}", cli::render_resolution(&generic));
    match extract_parameters(&toric_kernel(&spec)) {
        Err(e) => println!("closed form unavailable: {e}"),
        Ok(p) => match closed_form_resolution(&p, &spec) {
            Err(e) => println!("closed form unavailable: {e}"),
            Ok(cf) => {
                println!("closed form ({p})");
                print!("{}", cli::render_resolution(&cf));
                let (_, _, diff) = cli::structural_diff(&generic, &cf);
                print!("{diff}");
            }
        },
    }
    EXIT_OK
}
