use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use delcode::analysis::singleton_report;
use delcode::multfree::SetCode;
use delcode::simulate::simulate;
use delcode::vt::subset_to_bitword;
use delcode::{Mode, MultFreeCode, MultFreeCodeSpec, Word};
use serde::Serialize;

/// Multiplicity-free codes correcting multiple deletions.
#[derive(Parser)]
#[command(name = "delcode", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code: VT set code (auto prime, largest class) plus a greedy permutation code.
    Construct {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value = "stable")]
        mode: Mode,
        #[arg(long)]
        out: PathBuf,
    },
    /// Stream codewords, one JSON array per line.
    Enumerate {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        limit: Option<u64>,
        /// Stream the set-code bitwords instead (position 1 leftmost).
        #[arg(long)]
        sets: bool,
    },
    /// Decode a received word given as a JSON array.
    Decode {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Run seeded deletion-channel trials and print statistics.
    Simulate {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        tmax: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print size and redundancy bounds.
    Bounds {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        /// Size of an actual code to compare against the bounds.
        #[arg(long)]
        size: Option<f64>,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Check ball disjointness and set-code membership.
    Verify {
        #[arg(long)]
        spec: PathBuf,
    },
}

#[derive(Serialize)]
struct ErrorReport {
    error: &'static str,
    message: String,
}

fn load(path: &Path) -> Result<MultFreeCode> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let spec: MultFreeCodeSpec =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(MultFreeCode::new(spec)?)
}

fn print_line(line: &str) -> Result<()> {
    writeln!(io::stdout().lock(), "{line}")?;
    Ok(())
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    print_line(&serde_json::to_string_pretty(value)?)
}

/// A reader closing the pipe early (`| head`) is not an error.
fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.downcast_ref::<io::Error>().is_some_and(|io| io.kind() == io::ErrorKind::BrokenPipe)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Construct { q, n, t, mode, out } => {
            let spec = MultFreeCodeSpec::construct(q, n, t, mode)?;
            let code = MultFreeCode::new(spec.clone())?;
            fs::write(&out, serde_json::to_string_pretty(&spec)? + "\n")
                .with_context(|| format!("writing {}", out.display()))?;
            eprintln!(
                "wrote {}: {} sets x {} permutations = {} codewords",
                out.display(),
                code.sets().len(),
                code.permutations().len(),
                code.len()
            );
        }
        Command::Enumerate { spec, limit, sets } => {
            let code = load(&spec)?;
            let limit = limit.unwrap_or(u64::MAX) as usize;
            let mut out = BufWriter::new(io::stdout().lock());
            if sets {
                for set in code.sets().iter().take(limit) {
                    writeln!(out, "{}", subset_to_bitword(set))?;
                }
            } else {
                for word in code.iter().take(limit) {
                    writeln!(out, "{}", serde_json::to_string(&word)?)?;
                }
            }
            out.flush()?;
        }
        Command::Decode { spec, word } => {
            let code = load(&spec)?;
            let symbols: Vec<u32> = serde_json::from_str(&word).context("--word must be a JSON array of integers")?;
            let result = Word::new(symbols, code.spec().q as u32).and_then(|y| code.decode(&y));
            match result {
                Ok(x) => print_line(&serde_json::to_string(&x)?)?,
                Err(e) => {
                    print_line(&serde_json::to_string(&ErrorReport { error: e.kind(), message: e.to_string() })?)?;
                    return Ok(ExitCode::FAILURE);
                }
            }
        }
        Command::Simulate { spec, trials, tmax, seed } => {
            let code = load(&spec)?;
            let stats = simulate(&code, trials, tmax, seed)?;
            print_json(&stats)?;
            if !stats.guarantee_holds() {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Bounds { q, n, t, size, epsilon, delta } => {
            if t == 0 || n == 0 || n > q {
                bail!("need t >= 1 and 1 <= n <= q");
            }
            if size.is_some_and(|s| s < 1.0) {
                bail!("--size must be at least 1");
            }
            print_json(&singleton_report(q, n, t, size, epsilon, delta))?;
        }
        Command::Verify { spec } => {
            let code = load(&spec)?;
            let report = code.verify();
            print_json(&report)?;
            if let SetCode::Explicit(_) = code.spec().set_code {
                eprintln!("explicit set code: membership check skipped");
            }
            if !report.ok {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
