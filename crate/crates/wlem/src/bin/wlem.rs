//! Command-line front end.
//!
//! Exit codes: 0 when the queried property holds (valid, satisfied,
//! equivalid, no countermodel), 1 when a refutation or separation was found,
//! 2 for other errors, 64 for usage errors, 66 for unreadable or invalid
//! input files, 69 when the evaluation cap is exhausted.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use wlem::budget::Budget;
use wlem::decide::{check_membership, logics_equivalid, Equivalidity, Verdict};
use wlem::duality::{alg_of_frame, frame_of_algebra};
use wlem::error::Error;
use wlem::formula::{gen_phi, gen_sigma, Formula};
use wlem::json::{self, CountermodelDoc, FrameDoc, NamedFrame};
use wlem::kripke::{
    countermodel_search, enumerate_frames, extract_antichain, holds_in_frame, SearchParams,
    Validity,
};
use wlem::sperner::{min_topwidth_for, sperner_number};

#[derive(Parser)]
#[command(
    name = "wlem",
    version,
    about = "Kripke-frame and Brouwer-algebra checks for the logics generalizing the weak law of the excluded middle"
)]
struct Cli {
    /// Worker threads for the frame-scanning subcommands (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Evaluation cap per query, in forcing evaluations.
    #[arg(long, global = true)]
    cap: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the k-th schema of a generated axiom family.
    Gen {
        family: Family,
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
    },
    /// Check a formula on every valuation of a frame.
    CheckFrame { file: PathBuf, formula: String },
    /// Check a formula on every assignment into an algebra.
    CheckAlgebra { file: PathBuf, formula: String },
    /// Print the number of maximal worlds of a frame.
    Topwidth { file: PathBuf },
    /// Stream all rooted frames up to a size bound, one JSON object per line.
    EnumFrames {
        #[arg(long)]
        max_size: usize,
        #[arg(long)]
        topwidth: Option<usize>,
    },
    /// Convert between the frame and algebra representations.
    Dual { direction: Direction, file: PathBuf },
    /// Bounded membership in the logic of the k-th testability schema.
    Decide {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        #[arg(long, default_value_t = 6)]
        max_size: usize,
        formula: String,
    },
    /// Do two formulas hold on exactly the same frames within the bounds?
    Equivalid {
        f: String,
        g: String,
        #[arg(long, default_value_t = 6)]
        max_size: usize,
        #[arg(long)]
        topwidth: Option<usize>,
    },
    /// Search the enumerated frames for a countermodel.
    Countermodel {
        formula: String,
        #[arg(long, default_value_t = 6)]
        max_size: usize,
        #[arg(long)]
        topwidth: Option<usize>,
    },
    /// Minimal topwidth and middle binomial coefficient for a schema index.
    Sperner {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
    },
    /// Read a countermodel of a testability schema and print the powerset
    /// antichain it certifies.
    ExtractAntichain { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Phi,
    Sigma,
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    FrameToAlg,
    AlgToFrame,
}

type CliResult<T> = Result<T, (u8, String)>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(64);
        }
    };
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err((code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> CliResult<u8> {
    let budget = Budget::new(cli.cap.unwrap_or(Budget::DEFAULT_LIMIT));
    match cli.command {
        Command::Gen { family, k } => {
            let f = match family {
                Family::Phi => gen_phi(k),
                Family::Sigma => gen_sigma(k),
            }
            .map_err(lib_error)?;
            println!("{f}");
            Ok(0)
        }
        Command::CheckFrame { file, formula } => {
            let named = load_frame(&file)?;
            let f = parse_formula(&formula)?;
            match holds_in_frame(&named.frame, &f, &budget).map_err(lib_error)? {
                Validity::Holds => {
                    print_json(&FrameVerdict {
                        holds: true,
                        countermodel: None,
                    });
                    Ok(0)
                }
                Validity::Fails(cm) => {
                    print_json(&FrameVerdict {
                        holds: false,
                        countermodel: Some(json::countermodel_to_doc(&cm, named.names.as_deref())),
                    });
                    Ok(1)
                }
            }
        }
        Command::CheckAlgebra { file, formula } => {
            let alg = load_algebra(&file)?;
            let f = parse_formula(&formula)?;
            match alg
                .find_refuting_assignment(&f, &budget)
                .map_err(lib_error)?
            {
                None => {
                    print_json(&AlgebraVerdict {
                        satisfies: true,
                        witness: None,
                    });
                    Ok(0)
                }
                Some(witness) => {
                    print_json(&AlgebraVerdict {
                        satisfies: false,
                        witness: Some(
                            witness
                                .into_iter()
                                .map(|(v, e)| (format!("p{v}"), e))
                                .collect(),
                        ),
                    });
                    Ok(1)
                }
            }
        }
        Command::Topwidth { file } => {
            let named = load_frame(&file)?;
            print_json(&TopwidthDoc {
                topwidth: named.frame.topwidth(),
            });
            Ok(0)
        }
        Command::EnumFrames { max_size, topwidth } => {
            let frames = enumerate_frames(max_size, topwidth).map_err(lib_error)?;
            for frame in frames {
                println!("{}", json::frame_to_json(&frame, None));
            }
            Ok(0)
        }
        Command::Dual { direction, file } => match direction {
            Direction::FrameToAlg => {
                let named = load_frame(&file)?;
                let alg = alg_of_frame(&named.frame).map_err(lib_error)?;
                println!("{}", json::algebra_to_json(alg.algebra()));
                Ok(0)
            }
            Direction::AlgToFrame => {
                let alg = load_algebra(&file)?;
                let frame = frame_of_algebra(&alg).map_err(lib_error)?;
                println!("{}", json::frame_to_json(&frame, None));
                Ok(0)
            }
        },
        Command::Decide {
            k,
            max_size,
            formula,
        } => {
            let f = parse_formula(&formula)?;
            match check_membership(&f, k, max_size, &budget).map_err(lib_error)? {
                Verdict::ValidUpToBound {
                    max_size,
                    topwidth_bound,
                    frames_checked,
                } => {
                    print_json(&DecideDoc {
                        verdict: "valid-up-to-bound",
                        max_size: Some(max_size),
                        topwidth_bound: Some(topwidth_bound),
                        frames_checked: Some(frames_checked),
                        countermodel: None,
                    });
                    Ok(0)
                }
                Verdict::Refuted(cm) => {
                    print_json(&DecideDoc {
                        verdict: "refuted",
                        max_size: None,
                        topwidth_bound: None,
                        frames_checked: None,
                        countermodel: Some(json::countermodel_to_doc(&cm, None)),
                    });
                    Ok(1)
                }
            }
        }
        Command::Equivalid {
            f,
            g,
            max_size,
            topwidth,
        } => {
            let f = parse_formula(&f)?;
            let g = parse_formula(&g)?;
            match logics_equivalid(&f, &g, max_size, topwidth, &budget).map_err(lib_error)? {
                Equivalidity::Equivalid { frames_checked } => {
                    print_json(&EquivalidDoc {
                        equivalid: true,
                        frames_checked: Some(frames_checked),
                        frame: None,
                        valid: None,
                        refuted: None,
                        countermodel: None,
                    });
                    Ok(0)
                }
                Equivalidity::Separated {
                    frame,
                    valid,
                    refuted,
                    countermodel,
                } => {
                    print_json(&EquivalidDoc {
                        equivalid: false,
                        frames_checked: None,
                        frame: Some(frame_doc(&frame)),
                        valid: Some(valid.to_string()),
                        refuted: Some(refuted.to_string()),
                        countermodel: Some(json::countermodel_to_doc(&countermodel, None)),
                    });
                    Ok(1)
                }
            }
        }
        Command::Countermodel {
            formula,
            max_size,
            topwidth,
        } => {
            let f = parse_formula(&formula)?;
            let params = SearchParams { max_size, topwidth };
            match countermodel_search(&f, &params, &budget).map_err(lib_error)? {
                None => {
                    print_json(&CountermodelSearchDoc {
                        found: false,
                        countermodel: None,
                    });
                    Ok(0)
                }
                Some(cm) => {
                    print_json(&CountermodelSearchDoc {
                        found: true,
                        countermodel: Some(json::countermodel_to_doc(&cm, None)),
                    });
                    Ok(1)
                }
            }
        }
        Command::Sperner { k } => {
            let n = min_topwidth_for(k).map_err(lib_error)?;
            print_json(&SpernerDoc {
                k,
                n,
                binom: sperner_number(n),
            });
            Ok(0)
        }
        Command::ExtractAntichain { file } => {
            let text = read_file(&file)?;
            let (cm, _names) = json::parse_countermodel(&text).map_err(|e| file_error(&file, e))?;
            let antichain = extract_antichain(&cm).map_err(lib_error)?;
            println!("{}", json::antichain_to_json(&antichain));
            Ok(0)
        }
    }
}

fn frame_doc(frame: &wlem::kripke::Frame) -> FrameDoc {
    serde_json::from_str(&json::frame_to_json(frame, None)).expect("emitted frames reparse")
}

#[derive(Serialize)]
struct FrameVerdict {
    holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    countermodel: Option<CountermodelDoc>,
}

#[derive(Serialize)]
struct AlgebraVerdict {
    satisfies: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<BTreeMap<String, usize>>,
}

#[derive(Serialize)]
struct TopwidthDoc {
    topwidth: usize,
}

#[derive(Serialize)]
struct DecideDoc {
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    topwidth_bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    frames_checked: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    countermodel: Option<CountermodelDoc>,
}

#[derive(Serialize)]
struct EquivalidDoc {
    equivalid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    frames_checked: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    frame: Option<FrameDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    valid: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    refuted: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    countermodel: Option<CountermodelDoc>,
}

#[derive(Serialize)]
struct CountermodelSearchDoc {
    found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    countermodel: Option<CountermodelDoc>,
}

#[derive(Serialize)]
struct SpernerDoc {
    k: u64,
    n: u32,
    binom: u64,
}

fn print_json<T: Serialize>(doc: &T) {
    println!("{}", serde_json::to_string(doc).expect("docs serialize"));
}

fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| (66, format!("{}: {e}", path.display())))
}

fn load_frame(path: &Path) -> CliResult<NamedFrame> {
    let text = read_file(path)?;
    json::parse_frame(&text).map_err(|e| file_error(path, e))
}

fn load_algebra(path: &Path) -> CliResult<wlem::brouwer::BrouwerAlgebra> {
    let text = read_file(path)?;
    json::parse_algebra(&text).map_err(|e| file_error(path, e))
}

fn parse_formula(text: &str) -> CliResult<Formula> {
    wlem::formula::parse(text).map_err(|e| (2, format!("formula {text:?}: {e}")))
}

fn file_error(path: &Path, e: Error) -> (u8, String) {
    (66, format!("{}: {e}", path.display()))
}

fn lib_error(e: Error) -> (u8, String) {
    let code = match e {
        Error::BudgetExhausted { .. } => 69,
        _ => 2,
    };
    (code, e.to_string())
}
