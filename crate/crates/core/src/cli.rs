//! The `permsplit` command line: batch verbs writing one JSON line per
//! subject to stdout. Exit status 0 on success, 1 on verification or
//! precondition failure, 2 on usage errors.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::constructions::{classify_pattern, m_prime, n_minus, n_plus, tau_of, theorem_split};
use crate::envelope::{decode_envelope, envelope_of, reduced_envelope_with_elements};
use crate::error::{Error, Result};
use crate::matching::Matching;
use crate::oracle::verify_splitting;
use crate::perm::{avoiders_up_to, contains, Permutation};
use crate::splitters::{
    circle_color, oneplus_split, Colorer, Dilworth, GreedyThreeSum, SplittingSpec,
};

/// A comma-separated list of patterns; empty means no restriction.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Basis(pub Vec<Permutation>);

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<_>>()
            .map(Basis)
    }
}

/// Parses `"2*132,213"`-style splitting specs.
pub fn parse_spec(text: &str) -> Result<SplittingSpec> {
    text.parse()
}

#[derive(Debug, Parser)]
#[command(
    name = "permsplit",
    version,
    about = "Splittings of permutation classes"
)]
pub struct Cli {
    /// Worker threads for sweeps (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Accepted for harness compatibility; every algorithm is deterministic.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the permutations of order n avoiding a basis.
    Enumerate {
        #[arg(long)]
        avoid: Basis,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count: bool,
    },
    /// Report the least occurrence of a pattern.
    Contains {
        pattern: Permutation,
        perm: Permutation,
    },
    /// Color each input permutation with a constructive splitter.
    Split {
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long)]
        pattern: Permutation,
        #[arg(long, default_value = "-")]
        input: String,
    },
    /// Check a splitting exhaustively up to a size bound.
    Verify {
        #[arg(long)]
        class: Basis,
        #[arg(long)]
        parts: SplittingSpec,
        #[arg(long = "max-n")]
        max_n: usize,
    },
    /// Decide splittability where a known criterion applies.
    Classify { pattern: Permutation },
    /// Properly color circle graphs given as matchings.
    ColorMatching {
        #[arg(long = "forbid-clique")]
        forbid_clique: usize,
        #[arg(long, default_value = "-")]
        input: String,
    },
    /// Envelope matchings of permutations.
    Envelope {
        #[command(subcommand)]
        action: EnvelopeAction,
    },
    /// Witness constructions for 1 ⊕ σ.
    Construct {
        #[arg(value_enum)]
        kind: Construction,
        #[arg(long)]
        sigma: Permutation,
        #[arg(long)]
        matching: Option<Matching>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Greedy3,
    Dilworth,
    Oneplus,
    Theorem,
}

#[derive(Debug, Subcommand)]
pub enum EnvelopeAction {
    Encode { perm: Permutation },
    Decode { matching: Matching },
    Reduce { perm: Permutation },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    Nplus,
    Nminus,
    Mprime,
    Tau,
}

/// Parses `args` (including the program name) and runs the verb, reading
/// `-` inputs from `stdin`.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return e.exit_code();
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let result = dispatch(cli.command, &pool, stdin, out);
    match result {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(CliError::Failed(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Failed(String),
    Io(io::Error),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Failed(e.to_string())
    }
}

fn emit(out: &mut dyn Write, value: &impl Serialize) -> io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    out.write_all(b"\n")
}

/// Non-blank input lines; a line holding a JSON string is unquoted, so the
/// output of `enumerate` can be piped in.
fn read_subjects(input: &str, stdin: &mut dyn BufRead) -> io::Result<Vec<String>> {
    let mut lines = Vec::new();
    let mut push = |line: String| {
        let t = line.trim();
        if !t.is_empty() {
            let text = serde_json::from_str::<String>(t).unwrap_or_else(|_| t.to_string());
            lines.push(text);
        }
    };
    if input == "-" {
        for line in stdin.lines() {
            push(line?);
        }
    } else {
        for line in BufReader::new(File::open(input)?).lines() {
            push(line?);
        }
    }
    Ok(lines)
}

/// Runs `f` on each subject in parallel, writing results in input order.
/// A subject that fails to parse or color yields `{"subject", "error"}`.
fn sweep<T, F>(
    pool: &rayon::ThreadPool,
    subjects: &[String],
    out: &mut dyn Write,
    f: F,
) -> std::result::Result<i32, CliError>
where
    T: FromStr<Err = Error> + Send,
    F: Fn(&T) -> Result<Value> + Sync,
{
    let results: Vec<std::result::Result<Value, String>> = pool.install(|| {
        subjects
            .par_iter()
            .map(|line| {
                line.parse::<T>()
                    .and_then(|s| f(&s))
                    .map_err(|e| e.to_string())
            })
            .collect()
    });
    let mut code = 0;
    for (line, r) in subjects.iter().zip(results) {
        match r {
            Ok(v) => emit(out, &v)?,
            Err(e) => {
                code = 1;
                emit(out, &json!({ "subject": line, "error": e }))?;
            }
        }
    }
    Ok(code)
}

fn to_value(v: &impl Serialize) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Verification(e.to_string()))
}

fn dispatch(
    command: Command,
    pool: &rayon::ThreadPool,
    stdin: &mut dyn BufRead,
    out: &mut dyn Write,
) -> std::result::Result<i32, CliError> {
    match command {
        Command::Enumerate { avoid, n, count } => {
            let level = avoiders_up_to(&avoid.0, n).pop().unwrap_or_default();
            if count {
                emit(out, &json!({ "n": n, "count": level.len() }))?;
            } else {
                for p in &level {
                    emit(out, p)?;
                }
            }
            Ok(0)
        }
        Command::Contains { pattern, perm } => {
            let e = contains(&pattern, &perm);
            emit(out, &json!({ "contains": e.is_some(), "embedding": e }))?;
            Ok(0)
        }
        Command::Split {
            method,
            pattern,
            input,
        } => {
            let colorer = split_colorer(method, &pattern)?;
            let subjects = read_subjects(&input, stdin)?;
            match colorer {
                SplitColorer::OnePlus(sigma) => {
                    let base = Dilworth::new(sigma.len());
                    sweep(pool, &subjects, out, |p: &Permutation| {
                        to_value(&oneplus_split(&sigma, &base, p)?)
                    })
                }
                SplitColorer::Plain(c) => sweep(pool, &subjects, out, |p: &Permutation| {
                    to_value(&c.certify(p)?)
                }),
            }
        }
        Command::Verify {
            class,
            parts,
            max_n,
        } => {
            let splitter = match class.0.as_slice() {
                [single] => theorem_split(single).ok().filter(|t| t.spec == parts),
                _ => None,
            };
            let splitter = splitter.as_ref().map(|t| t as &(dyn Colorer + Sync));
            let report = pool.install(|| verify_splitting(&class.0, &parts, max_n, splitter));
            emit(out, &report)?;
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Classify { pattern } => {
            emit(out, &classify_pattern(&pattern))?;
            Ok(0)
        }
        Command::ColorMatching {
            forbid_clique,
            input,
        } => {
            if forbid_clique < 2 {
                return Err(CliError::Usage("--forbid-clique must be at least 2".into()));
            }
            let subjects = read_subjects(&input, stdin)?;
            sweep(pool, &subjects, out, |m: &Matching| {
                to_value(&circle_color(m, forbid_clique)?)
            })
        }
        Command::Envelope { action } => {
            match action {
                EnvelopeAction::Encode { perm } => emit(out, &envelope_of(&perm))?,
                EnvelopeAction::Decode { matching } => match decode_envelope(&matching) {
                    Some(perm) => emit(out, &json!({ "matching": matching, "perm": perm }))?,
                    None => {
                        return Err(CliError::Failed(format!(
                            "{matching} is not an envelope matching"
                        )))
                    }
                },
                EnvelopeAction::Reduce { perm } => {
                    let (reduced, elems) = reduced_envelope_with_elements(&perm);
                    let positions: Vec<usize> = elems.iter().map(|i| i + 1).collect();
                    emit(
                        out,
                        &json!({ "perm": perm, "reduced": reduced, "elements": positions }),
                    )?;
                }
            }
            Ok(0)
        }
        Command::Construct {
            kind,
            sigma,
            matching,
        } => {
            let value = match kind {
                Construction::Nplus => json!({ "sigma": sigma, "matching": n_plus(&sigma)? }),
                Construction::Nminus => json!({ "sigma": sigma, "matching": n_minus(&sigma)? }),
                Construction::Mprime => json!({ "sigma": sigma, "matching": m_prime(&sigma)? }),
                Construction::Tau => {
                    let m =
                        matching.ok_or_else(|| CliError::Usage("tau needs --matching".into()))?;
                    json!({ "sigma": sigma, "matching": m, "tau": tau_of(&m, &sigma)? })
                }
            };
            emit(out, &value)?;
            Ok(0)
        }
    }
}

enum SplitColorer {
    Plain(Box<dyn Colorer + Sync>),
    OnePlus(Permutation),
}

fn split_colorer(method: Method, pattern: &Permutation) -> Result<SplitColorer> {
    let bad =
        |why: &str| Error::Precondition(format!("{method:?} cannot split Av({pattern}): {why}"));
    Ok(match method {
        Method::Greedy3 => {
            let comps = pattern.sum_components();
            if comps.len() < 3 {
                return Err(bad("needs at least three sum components"));
            }
            let beta = comps[1..comps.len() - 1]
                .iter()
                .fold(Permutation::empty(), |acc, c| acc.direct_sum(c));
            let g = GreedyThreeSum::new(comps[0].clone(), beta, comps[comps.len() - 1].clone())?;
            SplitColorer::Plain(Box::new(g))
        }
        Method::Dilworth => {
            if pattern.len() < 2 || *pattern != Permutation::decreasing(pattern.len()) {
                return Err(bad("needs a decreasing pattern of order at least two"));
            }
            SplitColorer::Plain(Box::new(Dilworth::new(pattern.len())))
        }
        Method::Oneplus => {
            let sigma = match pattern.sum_decompose() {
                Some((one, sigma)) if one.len() == 1 => sigma,
                _ => return Err(bad("needs the form 1 ⊕ σ")),
            };
            if sigma.len() < 2 || sigma != Permutation::decreasing(sigma.len()) {
                return Err(bad(
                    "σ must be decreasing of order at least two (Dilworth base)",
                ));
            }
            SplitColorer::OnePlus(sigma)
        }
        Method::Theorem => SplitColorer::Plain(Box::new(theorem_split(pattern)?)),
    })
}

/// Entry point for the binary: real argv and stdio.
pub fn main() -> i32 {
    let stdin = io::stdin();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = run(
        std::env::args_os(),
        &mut stdin.lock(),
        &mut out,
        &mut io::stderr(),
    );
    let _ = out.flush();
    code
}
