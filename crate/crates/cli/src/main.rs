//! `siegel`: compute, inspect and verify truncated Fourier expansions of
//! degree-2 Siegel modular forms.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use siegel_core::error::check_weight;
use siegel_core::formal_fj::{
    compute_siegel_space_with, precision_floor, ComputeOptions, DirectSource, JacobiSource,
    DEFAULT_MAX_PRECISION,
};
use siegel_core::io::{atomic_write, serialize_jacobi, write_run, JacobiCache, MANIFEST_NAME};
use siegel_core::oracles::dim_siegel_even;
use siegel_core::verify::verify_manifest;
use siegel_core::Error;

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_VERIFY: u8 = 3;
const EXIT_PRECISION_CAP: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "siegel", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the space of weight-k forms and write one coefficient file
    /// per basis element plus a manifest.
    Compute {
        #[arg(short = 'k', long = "weight", allow_negative_numbers = true)]
        weight: i64,
        /// Starting precision (defaults to floor(k/10) + 2).
        #[arg(short = 'B', long = "precision")]
        precision: Option<usize>,
        /// Output directory.
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
        #[arg(long = "cache-dir")]
        cache_dir: Option<PathBuf>,
        #[arg(long = "max-B", default_value_t = DEFAULT_MAX_PRECISION)]
        max_precision: usize,
    },
    /// Print dim M_k for the even k in FROM..=TO.
    Dims {
        from: i64,
        to: Option<i64>,
    },
    /// Re-check a computed run.
    Verify {
        manifest: PathBuf,
        /// A second run; products of the two runs' elements are checked.
        #[arg(long = "with")]
        with: Option<PathBuf>,
        #[arg(long = "cache-dir")]
        cache_dir: Option<PathBuf>,
    },
    /// Dump the echelon basis of J_{k,m}.
    Jacobi {
        #[arg(short = 'k', long = "weight", allow_negative_numbers = true)]
        weight: i64,
        #[arg(short = 'm', long = "index")]
        index: i64,
        /// Defaults to the smallest precision with B > (k + 2m)/12 + 1.
        #[arg(short = 'B', long = "precision")]
        precision: Option<usize>,
        /// Output file (standard output if absent).
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
        #[arg(long = "cache-dir")]
        cache_dir: Option<PathBuf>,
    },
}

fn source(cache_dir: Option<&Path>) -> Box<dyn JacobiSource> {
    match cache_dir {
        Some(dir) => Box::new(JacobiCache::new(dir)),
        None => Box::new(DirectSource),
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Unsupported(_) | Error::PrecisionTooLow { .. } | Error::InvalidInput(_) => EXIT_USAGE,
        Error::PrecisionCap { .. } => EXIT_PRECISION_CAP,
        _ => EXIT_FAILURE,
    }
}

fn compute(
    k: i64,
    precision: Option<usize>,
    out: Option<PathBuf>,
    cache_dir: Option<&Path>,
    max_precision: usize,
) -> Result<(), Error> {
    check_weight(k)?;
    if let Some(b) = precision {
        if b < precision_floor(k) {
            return Err(Error::PrecisionTooLow {
                what: format!("weight {k}"),
                precision: b,
                bound: format!("{}", precision_floor(k) - 1),
            });
        }
    }
    let options = ComputeOptions {
        start: precision,
        max_precision,
    };
    let (fm, b) = compute_siegel_space_with(k, &options, source(cache_dir).as_ref())?;
    let out = out.unwrap_or_else(|| PathBuf::from(format!("siegel-k{k}")));
    let manifest = write_run(&out, &fm)?;
    println!(
        "weight {k}: dimension {} at precision B = {b}; wrote {}",
        manifest.dimension,
        out.join(MANIFEST_NAME).display()
    );
    Ok(())
}

fn dims(from: i64, to: i64) -> Result<(), Error> {
    println!("k dim");
    let start = from.max(0) + from.max(0) % 2;
    for k in (start..=to).step_by(2) {
        println!("{k} {}", dim_siegel_even(k)?);
    }
    Ok(())
}

fn jacobi(
    k: i64,
    m: i64,
    precision: Option<usize>,
    out: Option<PathBuf>,
    cache_dir: Option<&Path>,
) -> Result<(), Error> {
    let b = precision.unwrap_or(((k + 2 * m).max(0) / 12 + 2) as usize);
    let basis = source(cache_dir).jacobi_basis(k, m, b)?;
    let text = serialize_jacobi(&basis);
    match out {
        Some(path) => atomic_write(&path, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verify(manifest: &Path, with: Option<&Path>, cache_dir: Option<&Path>) -> Result<bool, Error> {
    let report = verify_manifest(manifest, with, source(cache_dir).as_ref())?;
    for line in &report.passed {
        println!("PASS {line}");
    }
    for line in &report.failures {
        println!("FAIL {line}");
    }
    Ok(report.ok())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute {
            weight,
            precision,
            out,
            cache_dir,
            max_precision,
        } => compute(weight, precision, out, cache_dir.as_deref(), max_precision).map(|_| true),
        Command::Dims { from, to } => dims(from, to.unwrap_or(from)).map(|_| true),
        Command::Verify {
            manifest,
            with,
            cache_dir,
        } => verify(&manifest, with.as_deref(), cache_dir.as_deref()),
        Command::Jacobi {
            weight,
            index,
            precision,
            out,
            cache_dir,
        } => jacobi(weight, index, precision, out, cache_dir.as_deref()).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_VERIFY),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
