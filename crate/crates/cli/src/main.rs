use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::{error, info, warn};

mod commands;

use commands::CommandResult;

pub const THREADS_ENV: &str = "SPECTRAL_TORELLI_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "spectral-torelli",
    version,
    about = "Exact endomorphism certificates for genus-2 spectral curves"
)]
struct Cli {
    /// Print only the JSON payload on standard output.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

/// Curve source: a catalog family, or a family file.
#[derive(Args, Debug, Clone)]
pub struct Source {
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long, alias = "family-file")]
    pub file: Option<PathBuf>,
    /// Specialization point, e.g. h1=12,h2=17,s=29.
    #[arg(long)]
    pub at: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the built-in curve families.
    Catalog {
        #[arg(long)]
        family: Option<String>,
    },
    /// Igusa invariants of a family, or of one member with --at.
    Invariants {
        #[command(flatten)]
        source: Source,
    },
    /// Rank of the Jacobian of the absolute invariants at random points.
    Independence {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 12)]
        trials: usize,
        #[arg(long, default_value_t = spectral_torelli::igusa::DEFAULT_SEED)]
        seed: u64,
    },
    /// Point counts over F_p and F_{p^2}.
    CountPoints {
        #[arg(long)]
        p: u64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=2))]
        ext: Option<u32>,
        #[command(flatten)]
        source: Source,
    },
    /// Zeta numerator and Frobenius polynomial from N1, N2.
    Zeta {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n1: u64,
        #[arg(long)]
        n2: u64,
    },
    /// Frobenius polynomial from N1, N2 with its Galois analysis.
    Frobenius {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n1: u64,
        #[arg(long)]
        n2: u64,
    },
    /// Galois group of a monic integer quartic.
    Galois {
        /// Coefficients c4,c3,c2,c1,c0.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Two-prime trivial-endomorphism certificate.
    CertifyEndo {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        p1: Option<u64>,
        #[arg(long)]
        p2: Option<u64>,
        #[arg(long)]
        geometric: bool,
    },
    /// Painlevé divisor against the spectral curve.
    VerifyDivisor {
        #[arg(value_parser = ["gar92"])]
        system: String,
        /// Laurent solution file replacing the built-in one.
        #[arg(long)]
        series: Option<PathBuf>,
    },
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("{THREADS_ENV}={raw} is not a thread count"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())?;
    info!("using {n} worker threads");
    Ok(())
}

fn dispatch(command: Command) -> CommandResult {
    match command {
        Command::Catalog { family } => commands::catalog(family.as_deref()),
        Command::Invariants { source } => commands::invariants(&source),
        Command::Independence {
            source,
            trials,
            seed,
        } => commands::independence(&source, trials, seed),
        Command::CountPoints { p, ext, source } => commands::count_points(&source, p, ext),
        Command::Zeta { p, n1, n2 } => commands::zeta(p, n1, n2),
        Command::Frobenius { p, n1, n2 } => commands::frobenius(p, n1, n2),
        Command::Galois { poly } => commands::galois(&poly),
        Command::CertifyEndo {
            source,
            p1,
            p2,
            geometric,
        } => commands::certify_endo(&source, p1, p2, geometric),
        Command::VerifyDivisor { system, series } => {
            commands::verify_divisor(&system, series.as_deref())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = Cli::try_parse().unwrap_or_else(|e| e.exit());
    if let Err(msg) = configure_threads() {
        warn!("{msg}");
        return ExitCode::from(2);
    }
    let result = dispatch(cli.command);
    info!("{}: inputs {}", result.command, result.inputs);
    if let Some(msg) = &result.error {
        error!("{}: {msg}", result.command);
    }
    let mut out = std::io::stdout().lock();
    let written = if cli.json {
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&result.outputs).expect("serializable")
        )
    } else if result.error.is_none() {
        writeln!(out, "{}", result.summary)
    } else {
        Ok(())
    };
    if written.is_err() {
        return ExitCode::from(1);
    }
    ExitCode::from(result.exit_code)
}
