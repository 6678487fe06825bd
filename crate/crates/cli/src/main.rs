use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hermsym_cli::{
    cmd_decompose, cmd_describe, cmd_hwv, cmd_taylor, cmd_verify, BundleKind, CliError, Format, Report, RunConfig,
    Suite,
};

/// Exact toolkit for Hermitian symmetric spaces and nearly holomorphic sections.
#[derive(Parser)]
#[command(name = "hermsym", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Space grammar string, e.g. I:2,3, II:4, III:2, IV:5, V, VI.
    #[arg(long, global = true)]
    space: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Samples per property (verify) or roundtrip points (taylor).
    #[arg(long, global = true, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    /// Largest |m| enumerated by decompose and the roots suite.
    #[arg(long, global = true, default_value_t = 4)]
    max_total: u32,
    /// Taylor cut-off: q-degree and coefficient degree.
    #[arg(long, global = true, default_value_t = 2)]
    order: u32,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants n, r, p and model data of a space.
    Describe {
        /// Alternative to --space.
        #[arg(value_name = "SPACE")]
        name: Option<String>,
    },
    /// Run a seeded invariant suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// K-type table of a homogeneous bundle.
    Decompose {
        #[arg(value_enum)]
        bundle: BundleKind,
        /// Fibre weight of a line bundle, comma-separated ambient coordinates.
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<String>,
    },
    /// Generalized Taylor coefficients of a section file.
    Taylor { section: PathBuf },
    /// Highest weight polynomial p_m and the section p_m(q(z)).
    Hwv {
        /// m₁ ≥ … ≥ m_r, comma-separated.
        #[arg(long)]
        signature: String,
    },
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let mut cfg = RunConfig {
        space: cli.space.clone(),
        seed: cli.seed,
        samples: cli.samples as usize,
        max_total: cli.max_total,
        order: cli.order,
        format: cli.format,
    };
    match &cli.command {
        Command::Describe { name } => {
            if name.is_some() {
                cfg.space = name.clone();
            }
            cmd_describe(&cfg)
        }
        Command::Verify { suite } => cmd_verify(*suite, &cfg),
        Command::Decompose { bundle, nu } => cmd_decompose(*bundle, &cfg, nu.as_deref()),
        Command::Taylor { section } => cmd_taylor(section, &cfg),
        Command::Hwv { signature } => cmd_hwv(&cfg, signature),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &report.body).map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    print!("{}", report.body);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(report.exit as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
