//! `qapstruct` command line: classify, decompose, solve, verify, generate
//! and render over the plain-text matrix format.
//!
//! Exit codes: 0 success, 1 a "no" verdict (not in class, infeasible, no
//! case applies, oracle disagreement), 2 bad input.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qapstruct::decompose::{
    benevolent_split, cdw_decomposition, kalmanson_decomposition, matrix_hash,
    robinson_kalmanson_decomposition,
};
use qapstruct::generate::{random_instance, InstanceClass};
use qapstruct::recognize::{classify, VerdictKind, Verdict, Witness};
use qapstruct::solve::{brute_force_with, detect_case, BruteForceOptions, Solution, SolutionCertificate};
use qapstruct::{qap_objective, Error, ExactMatrix};
use serde_json::{json, Value};

mod render;

#[derive(Parser)]
#[command(name = "qapstruct", version, about = "Structured quadratic assignment instances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Runs every recognizer and reports one verdict per class.
    Classify {
        file: PathBuf,
        /// Exit 1 unless this class is recognized.
        #[arg(long)]
        class: Option<String>,
    },
    /// Writes the matrix as a cut-matrix combination or a Toeplitz split.
    Decompose {
        #[arg(long, value_enum)]
        mode: Mode,
        file: PathBuf,
    },
    /// Detects the solvable case and reports its optimal permutation.
    Solve {
        #[command(flatten)]
        args: SolveArgs,
        /// Cross-check against exhaustive enumeration.
        #[arg(long)]
        oracle: bool,
    },
    /// `solve` with the exhaustive cross-check always on.
    Verify {
        #[command(flatten)]
        args: SolveArgs,
    },
    /// Writes a seeded random member of a class.
    Generate {
        #[arg(long)]
        class: InstanceClass,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Matrix destination; standard output when absent.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        /// Also print the generating parameters as JSON.
        #[arg(long)]
        spec: bool,
    },
    /// ASCII heatmap, darker glyph for larger entries.
    Render { file: PathBuf },
}

#[derive(clap::Args)]
struct SolveArgs {
    a: PathBuf,
    b: PathBuf,
    /// Two matrices adding up to B.
    #[arg(long, num_args = 2, value_names = ["B1", "B2"])]
    b_split: Option<Vec<PathBuf>>,
    /// Largest n the exhaustive oracle accepts.
    #[arg(long, default_value_t = 10)]
    max_brute: usize,
    /// Bound on brute-force worker threads.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Kalmanson,
    RobinsonKalmanson,
    Cdw,
    Benevolent,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Kalmanson => "kalmanson",
            Mode::RobinsonKalmanson => "robinson-kalmanson",
            Mode::Cdw => "cdw",
            Mode::Benevolent => "benevolent",
        }
    }
}

enum Outcome {
    Yes(Value),
    No(Value),
    Text(String),
}

/// Input problems end with exit code 2.
struct InputError(String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

fn read_matrix(path: &Path) -> Result<ExactMatrix, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    ExactMatrix::parse(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn no_verdict(command: &str, reason: String, witness: Option<&Witness>) -> Outcome {
    Outcome::No(json!({
        "command": command,
        "verdict": "no",
        "reason": reason,
        "witness": witness.map(to_json),
    }))
}

/// Splits library errors into "no" verdicts (a failed precondition carries
/// its witness) and input errors.
fn or_no<T>(command: &str, r: qapstruct::Result<T>) -> Result<Result<T, Outcome>, InputError> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(Error::Precondition { what, witness }) => Ok(Err(no_verdict(command, what, witness.as_deref()))),
        Err(e) => Err(e.into()),
    }
}

fn run_classify(file: &Path, class: Option<&str>) -> Result<Outcome, InputError> {
    let m = read_matrix(file)?;
    let report = classify(&m);
    let mut v = to_json(&report);
    v["command"] = json!("classify");
    let Some(name) = class else {
        return Ok(Outcome::Yes(v));
    };
    let verdict = report
        .verdict(name)
        .ok_or_else(|| InputError(format!("unknown class {name:?}")))?;
    v["requested"] = json!({ "class": name, "verdict": verdict });
    Ok(if verdict == VerdictKind::Yes {
        Outcome::Yes(v)
    } else {
        Outcome::No(v)
    })
}

fn run_decompose(mode: Mode, file: &Path) -> Result<Outcome, InputError> {
    let m = read_matrix(file)?;
    let cmd = "decompose";
    let (decomposition, rebuilt, exact) = match mode {
        Mode::Kalmanson => match or_no(cmd, kalmanson_decomposition(&m))? {
            Ok(d) => {
                let r = d.reconstruct();
                let ok = r.eq_off_diagonal(&m);
                (to_json(&d), r, ok)
            }
            Err(o) => return Ok(o),
        },
        Mode::RobinsonKalmanson => match or_no(cmd, robinson_kalmanson_decomposition(&m))? {
            Ok(d) => (to_json(&d), d.reconstruct(), d.reconstructs(&m)),
            Err(o) => return Ok(o),
        },
        Mode::Cdw => match or_no(cmd, cdw_decomposition(&m))? {
            Ok(Verdict::Yes(d)) => (to_json(&d), d.reconstruct(), d.reconstructs(&m)),
            Ok(Verdict::No(w)) => return Ok(no_verdict(cmd, "not CDW feasible".into(), Some(&w))),
            Err(o) => return Ok(o),
        },
        Mode::Benevolent => match or_no(cmd, benevolent_split(&m))? {
            Ok(s) => {
                let r = s.reconstruct();
                let ok = r == m;
                (to_json(&s), r, ok)
            }
            Err(o) => return Ok(o),
        },
    };
    let report = json!({
        "command": cmd,
        "mode": mode.name(),
        "n": m.n(),
        "decomposition": decomposition,
        "reconstruction_hash": matrix_hash(&rebuilt),
        "reconstruction_matches": exact,
    });
    Ok(if exact { Outcome::Yes(report) } else { Outcome::No(report) })
}

fn run_solve(args: &SolveArgs, oracle: bool, command: &str) -> Result<Outcome, InputError> {
    let a = read_matrix(&args.a)?;
    let b = read_matrix(&args.b)?;
    let split = match &args.b_split {
        Some(paths) => Some((read_matrix(&paths[0])?, read_matrix(&paths[1])?)),
        None => None,
    };
    let split_ref = split.as_ref().map(|(x, y)| (x, y));
    // An inconsistent split is bad input, not a verdict.
    let cert = detect_case(&a, &b, split_ref)?;
    let solution = match cert {
        Some(c) => {
            let value = qap_objective(&a, &b, &c.optimal_permutation)?;
            Some(Solution {
                permutation: c.optimal_permutation.clone(),
                value,
                certificate: SolutionCertificate::Case(c),
            })
        }
        None => None,
    };
    let mut report = json!({
        "command": command,
        "n": a.n(),
        "case": solution.as_ref().and_then(|s| s.case()).map(|c| c.name()),
        "permutation": solution.as_ref().map(|s| to_json(&s.permutation)),
        "value": solution.as_ref().map(|s| qapstruct::rational::format(&s.value)),
        "solution": solution.as_ref().map(to_json),
    });
    let mut agree = true;
    if oracle {
        let opts = BruteForceOptions {
            max_n: args.max_brute,
            threads: args.threads,
            ..Default::default()
        };
        let best = brute_force_with(&a, &b, &opts)?;
        let same = solution.as_ref().map(|s| s.value == best.value);
        agree = same.unwrap_or(false);
        report["oracle"] = json!({
            "permutation": to_json(&best.permutation),
            "value": qapstruct::rational::format(&best.value),
            "agree": same,
        });
    }
    Ok(if solution.is_some() && agree {
        Outcome::Yes(report)
    } else {
        report["verdict"] = json!(if solution.is_none() { "none" } else { "disagree" });
        Outcome::No(report)
    })
}

fn run_generate(
    class: InstanceClass,
    n: usize,
    seed: u64,
    output: Option<&Path>,
    spec: bool,
) -> Result<Outcome, InputError> {
    let inst = random_instance(class, n, seed)?;
    let text = inst.matrix().to_text();
    if let Some(path) = output {
        fs::write(path, &text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    }
    if spec {
        let mut v = to_json(&inst);
        v["command"] = json!("generate");
        v["matrix"] = json!(text);
        v["output"] = json!(output.map(|p| p.display().to_string()));
        Ok(Outcome::Yes(v))
    } else if output.is_some() {
        Ok(Outcome::Text(String::new()))
    } else {
        Ok(Outcome::Text(text))
    }
}

fn dispatch(cli: Cli) -> Result<Outcome, InputError> {
    match cli.command {
        Command::Classify { file, class } => run_classify(&file, class.as_deref()),
        Command::Decompose { mode, file } => run_decompose(mode, &file),
        Command::Solve { args, oracle } => run_solve(&args, oracle, "solve"),
        Command::Verify { args } => run_solve(&args, true, "verify"),
        Command::Generate {
            class,
            n,
            seed,
            output,
            spec,
        } => run_generate(class, n, seed, output.as_deref(), spec),
        Command::Render { file } => Ok(Outcome::Text(render::heatmap(&read_matrix(&file)?))),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    // Write errors (a closed pipe) are ignored; the exit code still reports the verdict.
    let mut out = io::stdout().lock();
    let pretty = |v: &Value| serde_json::to_string_pretty(v).expect("json");
    match dispatch(cli) {
        Ok(Outcome::Yes(v)) => {
            let _ = writeln!(out, "{}", pretty(&v));
            ExitCode::SUCCESS
        }
        Ok(Outcome::No(v)) => {
            let _ = writeln!(out, "{}", pretty(&v));
            ExitCode::from(1)
        }
        Ok(Outcome::Text(t)) => {
            let _ = write!(out, "{t}");
            ExitCode::SUCCESS
        }
        Err(InputError(msg)) => {
            let _ = writeln!(out, "{}", pretty(&json!({ "error": msg })));
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
