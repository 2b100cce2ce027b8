//! `lienil`: constructions, checks and the acceptance suite from the shell.
//!
//! Inputs are JSON documents given as a file path, inline text or `-` for
//! stdin. Exit codes: 0 success, 1 a check failed, 2 invalid input,
//! 3 a cost cap was exceeded.

mod commands;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use lienil::reproduce::DEFAULT_SEED;
use lienil::Error;

#[derive(Parser)]
#[command(
    name = "lienil",
    version,
    about = "Exact supermatrix algebras, noncommutative determinants and Cayley-Hamilton checks"
)]
struct Cli {
    /// Output mode.
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    format: Format,
    /// Worker threads for the permutation sums (results do not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Transitive matrices: check, build, blow up, factor.
    #[command(subcommand)]
    Transitive(TransitiveCommand),
    /// `T * A` for `{"ring", "T", "matrix"}`; a non-transitive `T` yields a counterexample.
    Theta { input: String },
    /// Symmetric determinant of `{"ring", "matrix"}`.
    Sdet { input: String },
    /// Preadjoint, cross-checked against signed minors.
    Preadjoint { input: String },
    /// `k`-th right determinant.
    Rdet {
        input: String,
        #[arg(long)]
        k: usize,
    },
    /// `k`-th left determinant.
    Ldet {
        input: String,
        #[arg(long)]
        k: usize,
    },
    /// `k`-th right (`p`) or left (`q`) characteristic polynomial.
    Charpoly {
        input: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "right")]
        side: String,
    },
    /// Evaluates the Cayley-Hamilton identity and reports the residual.
    ChCheck {
        input: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "right")]
        side: String,
    },
    /// Embeds `{"ring", "delta", "element"}` into `M_n(R, delta, P^(e))`, `e` a primitive root of order `--root`.
    Embed {
        input: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        root: Option<usize>,
    },
    /// Hypotheses of the ring embedding for a spec `{"ring", "delta", "T"}`.
    Conditions { input: String },
    /// Whether `"matrix"` belongs to the algebra of the spec.
    Membership { input: String },
    /// A random member of the algebra of a spec over a Grassmann algebra.
    Sample {
        input: String,
        #[arg(long)]
        seed: u64,
    },
    /// Monic relation over `Fix(delta)` for `{"ring", "delta", "element"}`.
    Integrality {
        input: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Standard algebras: 5.1 (even/odd), 5.2 (root of unity), 5.3 (conjugation).
    Example {
        id: String,
        #[arg(long)]
        n: usize,
        /// Size of the first diagonal block (ignored by 5.2).
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, default_value_t = 4)]
        g: u32,
        /// Also draw a random member with this seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Runs the acceptance criteria and prints the report.
    Reproduce {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<u8>,
        /// Also write the canonical report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Substitute a symmetric determinant that ignores column signs.
        #[arg(long, hide = true)]
        mutate_sdet: bool,
    },
}

#[derive(Subcommand)]
enum TransitiveCommand {
    /// Verdict for `{"ring", "matrix"}`.
    Check { input: String },
    /// From `{"ring", "units": [...]}` or `{"ring", "powers_of": u, "n": n}`.
    Build { input: String },
    /// Blow-up of `{"ring", "matrix"}` at the cuts `d_1 < ... < d_n`.
    Blowup {
        input: String,
        #[arg(long, value_delimiter = ',', required = true)]
        cuts: Vec<usize>,
    },
    /// The units `g_i = t_i1` with `t_ij = g_i g_j^-1`.
    Factor { input: String },
}

/// What a command prints.
pub struct Output {
    pub json: Value,
    pub pretty: String,
    pub verdict: Option<bool>,
}

fn load(input: &str) -> lienil::Result<Value> {
    let text = if input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        s
    } else if input.trim_start().starts_with('{') {
        input.to_string()
    } else {
        std::fs::read_to_string(input).map_err(|e| Error::Parse(format!("{input}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CheckFailed(_) => 1,
        Error::CapExceeded { .. } => 3,
        _ => 2,
    }
}

fn run(cli: &Cli) -> lienil::Result<Output> {
    use commands::*;
    match &cli.command {
        Command::Transitive(t) => match t {
            TransitiveCommand::Check { input } => generic(&load(input)?, Op::TransitiveCheck),
            TransitiveCommand::Build { input } => generic(&load(input)?, Op::TransitiveBuild),
            TransitiveCommand::Blowup { input, cuts } => generic(&load(input)?, Op::Blowup(cuts.clone())),
            TransitiveCommand::Factor { input } => generic(&load(input)?, Op::Factor),
        },
        Command::Theta { input } => generic(&load(input)?, Op::Theta),
        Command::Sdet { input } => generic(&load(input)?, Op::Sdet),
        Command::Preadjoint { input } => generic(&load(input)?, Op::Preadjoint),
        Command::Rdet { input, k } => generic(&load(input)?, Op::SideDet(*k, lienil::dets::Side::Right)),
        Command::Ldet { input, k } => generic(&load(input)?, Op::SideDet(*k, lienil::dets::Side::Left)),
        Command::Charpoly { input, k, side } => generic(&load(input)?, Op::Charpoly(*k, lienil::dets::Side::parse(side)?)),
        Command::ChCheck { input, k, side } => generic(&load(input)?, Op::ChCheck(*k, lienil::dets::Side::parse(side)?)),
        Command::Membership { input } => generic(&load(input)?, Op::Membership),
        Command::Embed { input, n, root } => cyclotomic(
            &load(input)?,
            CycOp::Embed {
                n: *n,
                root: root.unwrap_or(*n),
            },
        ),
        Command::Conditions { input } => cyclotomic(&load(input)?, CycOp::Conditions),
        Command::Integrality { input, n, k } => cyclotomic(&load(input)?, CycOp::Integrality { n: *n, k: *k }),
        Command::Sample { input, seed } => sample(&load(input)?, *seed),
        Command::Example { id, n, d, g, seed } => example(id, *n, *d, *g, *seed),
        Command::Reproduce {
            seed,
            criterion,
            out,
            mutate_sdet,
        } => reproduce(*seed, *criterion, out.as_deref(), *mutate_sdet, cli.format == Format::Json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => {
                    let mut doc = out.json;
                    if let (Some(v), Value::Object(map)) = (out.verdict, &mut doc) {
                        map.insert("verdict".into(), Value::Bool(v));
                    }
                    println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
                }
                Format::Pretty => {
                    if !out.pretty.is_empty() {
                        println!("{}", out.pretty);
                    }
                    if let Some(v) = out.verdict {
                        println!("verdict: {v}");
                    }
                }
            }
            ExitCode::from(if out.verdict == Some(false) { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
