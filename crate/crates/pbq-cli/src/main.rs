use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use pbq_core::algebra::{
    alexander_biquandle, alexander_parity_biquandle, duplicate, parse_algebra_file,
    serialize_biquandle, serialize_parity_biquandle, AlgebraError, AlgebraFile, FileError,
    ParityBiquandle,
};
use pbq_core::cocycle::{
    first_incompatibility, first_strong_failure, invariant_polynomial,
    non_parity_invariant_polynomial, parse_cocycle_file, serialize_cocycle,
    strong_invariant_polynomial, CocyclePair, Tier,
};
use pbq_core::coloring::counting_invariant;
use pbq_core::gauss_diagram::parse_knot_table;
use pbq_core::search::{enumerate_cocycles, SearchError, Strength};

#[derive(Parser)]
#[command(name = "pbq", version, about = "Parity biquandle invariants of virtual knots")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify an algebra or cocycle file; prints PASS or the first failure
    Check {
        /// Biquandle, parity biquandle, or cocycle file
        path: PathBuf,
        /// Parity biquandle to check a cocycle file against
        #[arg(long, value_name = "FILE")]
        algebra: Option<PathBuf>,
    },
    /// Compute an invariant for every knot in a table
    #[command(group(ArgGroup::new("mode").args(["strong", "weak", "count_only", "non_parity"])))]
    Invariant {
        /// Biquandle or parity biquandle file
        algebra: PathBuf,
        /// Knot table: name and signed Gauss code per line
        knots: PathBuf,
        /// Cocycle pair file
        #[arg(long, value_name = "FILE")]
        cocycle: Option<PathBuf>,
        /// Two-variable polynomial; requires a strongly compatible pair
        #[arg(long, requires = "cocycle")]
        strong: bool,
        /// One-variable polynomial (default when --cocycle is given)
        #[arg(long, requires = "cocycle")]
        weak: bool,
        /// Number of parity colorings (default without --cocycle)
        #[arg(long)]
        count_only: bool,
        /// Classical invariant: all crossings even, phi0 only
        #[arg(long, requires = "cocycle")]
        non_parity: bool,
    },
    /// Enumerate compatible cocycle pairs over Z_m
    Search {
        /// Biquandle or parity biquandle file
        algebra: PathBuf,
        /// Coefficient modulus
        #[arg(long = "mod", value_name = "M", value_parser = clap::value_parser!(u64).range(1..))]
        modulus: u64,
        /// Require strong compatibility
        #[arg(long)]
        strong: bool,
        /// Most pairs to print; 0 prints the count only
        #[arg(long, default_value_t = 100)]
        cap: u128,
    },
    /// Emit an Alexander biquandle, or a parity one when -b and -a are given
    Alexander {
        /// Coefficient modulus
        #[arg(long = "mod", value_name = "M", value_parser = clap::value_parser!(u64).range(1..))]
        modulus: u64,
        #[arg(short, value_name = "T")]
        t: u64,
        #[arg(short, value_name = "S")]
        s: u64,
        #[arg(short, value_name = "B", requires = "a")]
        b: Option<u64>,
        #[arg(short, value_name = "A", requires = "b")]
        a: Option<u64>,
    },
}

enum Failure {
    /// Message already printed; carries the exit code.
    Reported(u8),
    /// Verification failure: diagnostics to stderr, exit 1.
    Semantic(String),
    /// I/O, parse, or usage problem: diagnostics to stderr, exit 2.
    Input(String),
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn file_failure(path: &Path, e: FileError) -> Failure {
    match e {
        FileError::Algebra(AlgebraError::AxiomViolation(fails)) => {
            Failure::Semantic(format!("{}: {}", path.display(), fails[0]))
        }
        other => Failure::Input(format!("{}: {other}", path.display())),
    }
}

/// Loads either algebra kind as a parity biquandle, doubling a plain one.
fn load_parity(path: &Path) -> Result<ParityBiquandle, Failure> {
    let text = read(path)?;
    match parse_algebra_file(&text).map_err(|e| file_failure(path, e))? {
        AlgebraFile::Biquandle(b) => Ok(duplicate(&b)),
        AlgebraFile::Parity(p) => Ok(p),
    }
}

fn load_classified_pair(path: &Path, x: &ParityBiquandle) -> Result<CocyclePair, Failure> {
    let text = read(path)?;
    let mut pair = parse_cocycle_file(&text).map_err(|e| file_failure(path, e))?;
    if pair.n() != x.n() {
        return Err(Failure::Semantic(format!(
            "incompatible sizes: algebra has {} elements, cocycle tables {}",
            x.n(),
            pair.n()
        )));
    }
    pair.classify(x);
    Ok(pair)
}

fn header_word(text: &str) -> Option<&str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .and_then(|l| l.split_whitespace().next())
}

fn cmd_check(path: &Path, algebra: Option<&Path>) -> Result<(), Failure> {
    let text = read(path)?;
    match header_word(&text) {
        Some("biquandle") | Some("parity-biquandle") => match parse_algebra_file(&text) {
            Ok(_) => {
                println!("PASS");
                Ok(())
            }
            Err(FileError::Algebra(AlgebraError::AxiomViolation(fails))) => {
                println!("FAIL: {}", fails[0]);
                Err(Failure::Reported(1))
            }
            Err(e) => Err(Failure::Input(format!("{}: {e}", path.display()))),
        },
        Some("cocycle") => {
            let algebra = algebra.ok_or_else(|| {
                Failure::Input("checking a cocycle file requires --algebra".into())
            })?;
            let x = load_parity(algebra)?;
            let mut pair =
                parse_cocycle_file(&text).map_err(|e| file_failure(path, e))?;
            if pair.n() != x.n() {
                println!(
                    "FAIL: algebra has {} elements but cocycle tables are {}x{}",
                    x.n(),
                    pair.n(),
                    pair.n()
                );
                return Err(Failure::Reported(1));
            }
            if pair.classify(&x) == Tier::StronglyCompatible {
                println!("PASS");
                return Ok(());
            }
            let witness = first_incompatibility(&pair, &x)
                .or_else(|| first_strong_failure(&pair, &x))
                .expect("a non-strong pair has a failing check");
            println!("FAIL: {witness}");
            Err(Failure::Reported(1))
        }
        _ => Err(Failure::Input(format!(
            "{}: unrecognized or missing file header",
            path.display()
        ))),
    }
}

enum Mode {
    Strong,
    Weak,
    CountOnly,
    NonParity,
}

#[allow(clippy::too_many_arguments)]
fn cmd_invariant(
    algebra: &Path,
    knots: &Path,
    cocycle: Option<&Path>,
    strong: bool,
    weak: bool,
    count_only: bool,
    non_parity: bool,
) -> Result<(), Failure> {
    let x = load_parity(algebra)?;
    let table = parse_knot_table(&read(knots)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", knots.display())))?;
    let mode = if strong {
        Mode::Strong
    } else if weak {
        Mode::Weak
    } else if non_parity {
        Mode::NonParity
    } else if count_only || cocycle.is_none() {
        Mode::CountOnly
    } else {
        Mode::Weak
    };
    let pair = match cocycle {
        Some(p) => Some(load_classified_pair(p, &x)?),
        None => None,
    };
    let mut out = String::new();
    for (name, d) in &table {
        let value = match (&mode, &pair) {
            (Mode::CountOnly, _) => counting_invariant(d, &x).to_string(),
            (Mode::Weak, Some(pair)) => invariant_polynomial(d, &x, pair)
                .map_err(|e| Failure::Semantic(e.to_string()))?
                .to_string(),
            (Mode::Strong, Some(pair)) => strong_invariant_polynomial(d, &x, pair)
                .map_err(|e| Failure::Semantic(e.to_string()))?
                .to_string(),
            (Mode::NonParity, Some(pair)) => non_parity_invariant_polynomial(d, &x, pair)
                .map_err(|e| Failure::Semantic(e.to_string()))?
                .to_string(),
            _ => unreachable!("modes needing a cocycle require --cocycle"),
        };
        out.push_str(name);
        out.push('\t');
        out.push_str(&value);
        out.push('\n');
    }
    print!("{out}");
    Ok(())
}

fn cmd_search(algebra: &Path, modulus: u64, strong: bool, cap: u128) -> Result<(), Failure> {
    let x = load_parity(algebra)?;
    let strength = if strong {
        Strength::StronglyCompatible
    } else {
        Strength::Compatible
    };
    match enumerate_cocycles(&x, modulus, strength, cap) {
        Ok(pairs) => {
            println!("{}", pairs.len());
            for (i, pair) in pairs.iter().enumerate() {
                if i > 0 {
                    println!("---");
                }
                print!("{}", serialize_cocycle(pair));
            }
            Ok(())
        }
        Err(SearchError::CapExceeded { count }) => {
            println!("{count}");
            eprintln!("solution count {count} exceeds cap {cap}; matrices not printed");
            Ok(())
        }
    }
}

fn cmd_alexander(modulus: u64, t: u64, s: u64, b: Option<u64>, a: Option<u64>) -> Result<(), Failure> {
    let text = match (b, a) {
        (Some(b), Some(a)) => alexander_parity_biquandle(modulus, t, s, b, a)
            .map(|x| serialize_parity_biquandle(&x)),
        (None, None) => alexander_biquandle(modulus, t, s).map(|x| serialize_biquandle(&x)),
        _ => unreachable!("clap enforces -b and -a together"),
    }
    .map_err(|e| Failure::Semantic(e.to_string()))?;
    print!("{text}");
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Check { path, algebra } => cmd_check(&path, algebra.as_deref()),
        Command::Invariant {
            algebra,
            knots,
            cocycle,
            strong,
            weak,
            count_only,
            non_parity,
        } => cmd_invariant(
            &algebra,
            &knots,
            cocycle.as_deref(),
            strong,
            weak,
            count_only,
            non_parity,
        ),
        Command::Search { algebra, modulus, strong, cap } => {
            cmd_search(&algebra, modulus, strong, cap)
        }
        Command::Alexander { modulus, t, s, b, a } => cmd_alexander(modulus, t, s, b, a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Reported(code)) => ExitCode::from(code),
        Err(Failure::Semantic(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
