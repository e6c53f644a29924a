//! Command-line front end: exact group orders, map verification with
//! witnesses, decomposition, expansion, composition, exhaustive
//! enumeration with formula cross-checks, reproducible random draws and
//! code minimum distance.
//!
//! Exit codes: 0 success / true verdict, 1 false verdict or failed
//! check, 2 invalid input. Results go to stdout, diagnostics to stderr.

use std::fmt::Display;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pimetric::counting::{aut_order, block_maps_order, hamming_orders, symm_order, BigUint};
use pimetric::linear::LinearityViolation;
use pimetric::oracle::EnumerationKind;
use pimetric::{random_automorphism, random_symmetry, FieldSpec, PiSpace};
use pimetric_cli::format::{
    self, format_header, format_vector, parse_generator, parse_map, parse_partition,
    parse_structured, write_map, write_structured,
};
use pimetric_cli::parallel::{default_workers, enumerate_parallel};

#[derive(Parser)]
#[command(
    name = "pimetric",
    about = "Block-metric spaces over GF(q): distances, symmetry groups, exact orders and brute-force verification",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum OrderKind {
    /// Full symmetry group
    Symm,
    /// Automorphism (linear symmetry) group
    Aut,
    /// Both groups of the Hamming space (all-ones partition)
    Hamming,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum VerifyMode {
    Symmetry,
    Automorphism,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum EnumKind {
    /// All bijections, filtered by distance preservation
    Symm,
    /// All matrices, filtered by invertibility and distance preservation
    Aut,
    /// All tuples of per-block bijections
    M,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum RandomKind {
    Symm,
    Aut,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exact order of a group of the space
    Order {
        kind: OrderKind,
        /// Field order (a prime power)
        #[arg(long)]
        q: u64,
        /// Partition as comma-separated block sizes, non-increasing
        #[arg(long, value_name = "K1,K2,...")]
        pi: Option<String>,
        /// Dimension of the Hamming space (kind `hamming` only)
        #[arg(long)]
        n: Option<usize>,
    },
    /// Check a map file for the symmetry or automorphism property
    Verify {
        /// Map file, `-` for stdin
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = VerifyMode::Symmetry)]
        mode: VerifyMode,
    },
    /// Factor a symmetry file into sigma plus per-block tables
    Decompose {
        /// Map file, `-` for stdin
        file: PathBuf,
    },
    /// Expand a structured symmetry document into a full map file
    Expand {
        /// Structured symmetry document, `-` for stdin
        file: PathBuf,
    },
    /// Compose two structured symmetry documents (second applied first)
    Compose { file_a: PathBuf, file_b: PathBuf },
    /// Exhaustively enumerate and compare against the closed-form order
    Enumerate {
        #[arg(long)]
        q: u64,
        #[arg(long, value_name = "K1,K2,...")]
        pi: String,
        #[arg(long, value_enum)]
        kind: EnumKind,
        /// Worker threads; defaults to PIMETRIC_WORKERS or the CPU count
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Draw reproducible random symmetries or automorphisms
    Random {
        #[arg(long)]
        q: u64,
        #[arg(long, value_name = "K1,K2,...")]
        pi: String,
        #[arg(long, value_enum, default_value_t = RandomKind::Symm)]
        kind: RandomKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: u64,
    },
    /// Minimum block distance of the code spanned by a generator file
    Mindist {
        /// Generator matrix file, `-` for stdin
        file: PathBuf,
    },
}

enum CliError {
    /// Exit 1: an honest negative outcome (failed verdict, mismatch).
    Verdict(String),
    /// Exit 2: the input could not be used.
    Usage(String),
}

impl From<format::FormatError> for CliError {
    fn from(e: format::FormatError) -> Self {
        match e {
            format::FormatError::Domain(d) => d.into(),
            parse => CliError::Usage(parse.to_string()),
        }
    }
}

impl From<pimetric::Error> for CliError {
    fn from(e: pimetric::Error) -> Self {
        use pimetric::Error::*;
        match e {
            NotASymmetry
            | NotBijective
            | NotAnAutomorphism
            | ZeroCode
            | SeparabilityViolation { .. } => CliError::Verdict(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

type CliResult = Result<(), CliError>;

fn read_input(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Usage(format!("reading stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("reading {}: {e}", path.display())))
    }
}

fn make_space(q: u64, pi: &str) -> Result<PiSpace, CliError> {
    let field = FieldSpec::new(q)?;
    let partition = parse_partition(pi)?;
    Ok(PiSpace::new(field, partition))
}

fn cmd_order(kind: OrderKind, q: u64, pi: Option<String>, n: Option<usize>) -> CliResult {
    match kind {
        OrderKind::Symm | OrderKind::Aut => {
            let pi = pi.ok_or_else(|| CliError::Usage("--pi is required".into()))?;
            let partition = parse_partition(&pi)?;
            let order = match kind {
                OrderKind::Symm => symm_order(&partition, q)?,
                _ => aut_order(&partition, q)?,
            };
            println!("{order}");
        }
        OrderKind::Hamming => {
            let n = n.ok_or_else(|| CliError::Usage("--n is required for hamming".into()))?;
            let (symm, aut) = hamming_orders(n, q)?;
            println!("symm: {symm}");
            println!("aut: {aut}");
        }
    }
    Ok(())
}

fn fail_verdict(label: &str, detail: impl Display) -> CliError {
    println!("{label}: false");
    CliError::Verdict(detail.to_string())
}

fn cmd_verify(file: &Path, mode: VerifyMode) -> CliResult {
    let map = parse_map(&read_input(file)?)?;
    let space = map.space().clone();
    let label = match mode {
        VerifyMode::Symmetry => "symmetry",
        VerifyMode::Automorphism => "automorphism",
    };
    match map.symmetry_violation() {
        Err(e) => return Err(fail_verdict(label, e)),
        Ok(Some((u, v))) => {
            let vu = space.vector(u).expect("index in range");
            let vv = space.vector(v).expect("index in range");
            println!("{label}: false");
            println!("witness: {} {}", format_vector(&vu), format_vector(&vv));
            return Err(CliError::Verdict(String::new()));
        }
        Ok(None) => {}
    }
    if mode == VerifyMode::Automorphism {
        if let Some(violation) = map.linearity_violation() {
            println!("{label}: false");
            match violation {
                LinearityViolation::Additivity(u, v) => {
                    let vu = space.vector(u).expect("index in range");
                    let vv = space.vector(v).expect("index in range");
                    println!(
                        "witness: additivity {} {}",
                        format_vector(&vu),
                        format_vector(&vv)
                    );
                }
                LinearityViolation::Homogeneity(c, v) => {
                    let vv = space.vector(v).expect("index in range");
                    println!("witness: homogeneity {c} {}", format_vector(&vv));
                }
            }
            return Err(CliError::Verdict(String::new()));
        }
    }
    println!("{label}: true");
    Ok(())
}

fn cmd_decompose(file: &Path) -> CliResult {
    let map = parse_map(&read_input(file)?)?;
    let structured = map.decompose(true)?;
    print!("{}", write_structured(&structured));
    Ok(())
}

fn cmd_expand(file: &Path) -> CliResult {
    let structured = parse_structured(&read_input(file)?)?;
    print!("{}", write_map(&structured.expand()?));
    Ok(())
}

fn cmd_compose(file_a: &Path, file_b: &Path) -> CliResult {
    let a = parse_structured(&read_input(file_a)?)?;
    let b = parse_structured(&read_input(file_b)?)?;
    let c = a.compose(&b)?;
    print!("{}", write_structured(&c));
    Ok(())
}

fn cmd_enumerate(q: u64, pi: &str, kind: EnumKind, workers: Option<usize>) -> CliResult {
    let space = make_space(q, pi)?;
    let (oracle_kind, kind_name) = match kind {
        EnumKind::Symm => (EnumerationKind::Symmetries, "symm"),
        EnumKind::Aut => (EnumerationKind::Automorphisms, "aut"),
        EnumKind::M => (EnumerationKind::BlockTuples, "m"),
    };
    let workers = workers.unwrap_or_else(default_workers);
    let report = enumerate_parallel(&space, oracle_kind, false, workers)?;
    let formula = match kind {
        EnumKind::Symm => symm_order(space.partition(), q)?,
        EnumKind::Aut => aut_order(space.partition(), q)?,
        EnumKind::M => block_maps_order(space.partition(), q)?,
    };
    let matches = formula == BigUint::from(report.count);
    println!("space: {}", format_header(&space));
    println!("kind: {kind_name}");
    println!("candidates: {}", report.candidates);
    println!("count: {}", report.count);
    println!("formula: {formula}");
    println!("verdict: {}", if matches { "MATCH" } else { "MISMATCH" });
    println!("workers: {workers}");
    if let Some(elapsed) = report.elapsed {
        println!("elapsed_ms: {}", elapsed.as_millis());
    }
    if matches {
        Ok(())
    } else {
        Err(CliError::Verdict(
            "oracle count disagrees with formula".into(),
        ))
    }
}

fn cmd_random(q: u64, pi: &str, kind: RandomKind, seed: u64, count: u64) -> CliResult {
    let space = make_space(q, pi)?;
    for i in 0..count {
        if i > 0 {
            println!();
        }
        let draw_seed = seed.wrapping_add(i);
        match kind {
            RandomKind::Symm => {
                print!("{}", write_structured(&random_symmetry(&space, draw_seed)?));
            }
            RandomKind::Aut => {
                print!(
                    "{}",
                    format::write_linear(&random_automorphism(&space, draw_seed)?)
                );
            }
        }
    }
    Ok(())
}

fn cmd_mindist(file: &Path) -> CliResult {
    let generator = parse_generator(&read_input(file)?)?;
    println!("{}", generator.min_distance()?);
    Ok(())
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Order { kind, q, pi, n } => cmd_order(kind, q, pi, n),
        Command::Verify { file, mode } => cmd_verify(&file, mode),
        Command::Decompose { file } => cmd_decompose(&file),
        Command::Expand { file } => cmd_expand(&file),
        Command::Compose { file_a, file_b } => cmd_compose(&file_a, &file_b),
        Command::Enumerate {
            q,
            pi,
            kind,
            workers,
        } => cmd_enumerate(q, &pi, kind, workers),
        Command::Random {
            q,
            pi,
            kind,
            seed,
            count,
        } => cmd_random(q, &pi, kind, seed, count),
        Command::Mindist { file } => cmd_mindist(&file),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Verdict(msg)) => {
            if !msg.is_empty() {
                eprintln!("{msg}");
            }
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
