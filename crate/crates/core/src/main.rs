use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use qsymp::autos::compile_word;
use qsymp::hamflows::{flow, poisson_bracket};
use qsymp::harness::json::{self, JsonError};
use qsymp::harness::{normalize_to_mn, run_all, run_suite, NormalizeError, SuiteParams, SUITES};
use qsymp::nagao::{i_map, nagao_decompose};
use qsymp::reps::RepPoint;
use qsymp::Scalar;

#[derive(Parser)]
#[command(name = "qsymp", version, about = "Exact symplectic calculus on the rank-2 Calogero-Moser space")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a verification suite, or `all`.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        deg: usize,
        #[arg(long, default_value_t = 25)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Factor a 2×2 polynomial matrix into C and B factors.
    Factor { file: PathBuf },
    /// Image of a Γ element as six generator images.
    Imap { file: PathBuf },
    /// Act on a point by a tame word.
    Act {
        #[arg(long)]
        word: PathBuf,
        #[arg(long)]
        point: PathBuf,
    },
    /// Flow a point along a Hamiltonian for an exact time.
    Flow {
        #[arg(long)]
        ham: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        time: String,
        #[arg(long)]
        point: PathBuf,
    },
    /// Poisson bracket of two Hamiltonians at a point.
    Bracket {
        #[arg(long)]
        h1: PathBuf,
        #[arg(long)]
        h2: PathBuf,
        #[arg(long)]
        point: PathBuf,
    },
    /// Move a point into the slice M_n.
    Normalize {
        #[arg(long)]
        point: PathBuf,
    },
    /// Slice point from positions and momenta.
    CmPoint {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
    },
}

enum Fail {
    Input(String),
    Violated(String),
}

impl From<JsonError> for Fail {
    fn from(e: JsonError) -> Self {
        Fail::Input(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))
}

fn scalar(s: &str) -> Result<Scalar, Fail> {
    s.parse().map_err(|e| Fail::Input(format!("{s:?}: {e}")))
}

fn scalars(s: &str) -> Result<Vec<Scalar>, Fail> {
    s.split(',').map(|x| scalar(x.trim())).collect()
}

fn print(v: &serde_json::Value) {
    // A closed pipe (`| head`) is not an error worth a panic.
    let _ = writeln!(io::stdout(), "{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(cmd: Cmd) -> Result<(), Fail> {
    match cmd {
        Cmd::Verify { suite, n, deg, trials, seed, json } => {
            let params = SuiteParams { n_max: n, deg_max: deg, trials, seed };
            let start = Instant::now();
            let reports = if suite == "all" {
                run_all(&params)
            } else {
                vec![run_suite(&suite, &params)
                    .map_err(|e| Fail::Input(format!("{e}; known suites: all, {}", SUITES.join(", "))))?]
            };
            if json {
                let v = serde_json::to_value(&reports).expect("serializable");
                print(&v);
            } else {
                for r in &reports {
                    println!("{}", r.summary());
                    for f in r.failures.iter().take(3) {
                        println!("  trial {}: expected {}, got {}", f.trial, f.expected, f.actual);
                        println!("    input: {}", f.input);
                    }
                }
                eprintln!("elapsed {:.2?}", start.elapsed());
            }
            let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.suite.as_str()).collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Fail::Violated(format!("failing suites: {}", failed.join(", "))))
            }
        }
        Cmd::Factor { file } => {
            let m = json::polymat_from_json(&read(&file)?)?;
            let w = nagao_decompose(&m).map_err(|e| Fail::Input(e.to_string()))?;
            print(&json::nagao_word_to_json(&w));
            Ok(())
        }
        Cmd::Imap { file } => {
            let g = json::gamma_from_json(&read(&file)?)?;
            let phi = i_map(&g).map_err(|e| Fail::Input(e.to_string()))?;
            print(&json::endo_to_json(&phi));
            Ok(())
        }
        Cmd::Act { word, point } => {
            let w = json::tame_word_from_json(&read(&word)?)?;
            let pt = json::point_from_json(&read(&point)?)?;
            let phi = compile_word(&w).map_err(|e| Fail::Input(e.to_string()))?;
            let moved = pt.act_endo(&phi).map_err(|e| Fail::Input(e.to_string()))?;
            print(&json::point_to_json(&moved));
            Ok(())
        }
        Cmd::Flow { ham, time, point } => {
            let h = json::ham_from_json(&read(&ham)?)?;
            let t = scalar(&time)?;
            let pt = json::point_from_json(&read(&point)?)?;
            let moved = flow(&h, &t, &pt).map_err(|e| Fail::Input(e.to_string()))?;
            print(&json::point_to_json(&moved));
            Ok(())
        }
        Cmd::Bracket { h1, h2, point } => {
            let (a, b) = (json::ham_from_json(&read(&h1)?)?, json::ham_from_json(&read(&h2)?)?);
            let pt = json::point_from_json(&read(&point)?)?;
            let v = poisson_bracket(&a, &b, &pt).map_err(|e| Fail::Input(e.to_string()))?;
            print(&serde_json::json!({ "bracket": v }));
            Ok(())
        }
        Cmd::Normalize { point } => {
            let pt = json::point_from_json(&read(&point)?)?;
            let out = normalize_to_mn(&pt).map_err(|e| match e {
                NormalizeError::NormalizationFailed(_) => Fail::Violated(e.to_string()),
                _ => Fail::Input(e.to_string()),
            })?;
            print(&serde_json::json!({
                "word": json::tame_word_to_json(&out.word),
                "gl": out.gl,
                "result": json::point_to_json(&out.result),
            }));
            Ok(())
        }
        Cmd::CmPoint { n, tau, x, p } => {
            let (x, p) = (scalars(&x)?, scalars(&p)?);
            if x.len() != n || p.len() != n {
                return Err(Fail::Input(format!("expected {n} positions and {n} momenta")));
            }
            let pt = RepPoint::cm_point(scalar(&tau)?, &x, &p).map_err(|e| Fail::Input(e.to_string()))?;
            print(&json::point_to_json(&pt));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Violated(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Fail::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
