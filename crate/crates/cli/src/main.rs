//! `posetohedron`: subposet vectors, chain polytopes, vertices, witnesses and
//! glued complexes from a poset file.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 input error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use posetohedron_core::{EnumerationLimit, Error};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Parser)]
#[command(
    name = "posetohedron",
    version,
    about = "Subposet vectors as lattice points of generalized permutohedra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report ranks in the unpadded poset (padded ranks minus one).
    #[arg(long, global = true)]
    raw: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for `fuzz`.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Enumerate linear extensions even above the size cap.
    #[arg(long, global = true)]
    force: bool,
    /// Largest |P| whose linear extensions are enumerated.
    #[arg(long, global = true, env = "POSETOHEDRON_MAX_P", default_value_t = 20,
          value_parser = clap::value_parser!(u64).range(1..))]
    max_p: u64,
    /// Largest |Q| for polytope and complex constructions.
    #[arg(long, global = true, default_value_t = 15, value_parser = clap::value_parser!(u64).range(1..=15))]
    max_r: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and check a poset file.
    Validate { file: PathBuf },
    /// Subposet vectors by enumeration and by lattice points, compared.
    Vectors { file: PathBuf },
    /// Interval multiplicities and inequality constants of N(P, Q) (chain Q).
    Polytope { file: PathBuf },
    /// Vertices from rectangle subdivisions (chain Q).
    Vertices { file: PathBuf },
    /// Linear extension realizing a lattice point (chain Q).
    Witness {
        file: PathBuf,
        /// Subposet vector `(sigma(q_1), ..., sigma(q_r))`, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Chamber blocks, their translation and the gluing certificates.
    Complex { file: PathBuf },
    /// Random instances through every property check.
    Fuzz {
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Largest |P| drawn.
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..=9))]
        size: u64,
        /// Largest |Q| drawn.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(0..=4))]
        labels: u64,
        /// Only chain instances.
        #[arg(long, conflicts_with = "general_only")]
        chain_only: bool,
        /// Only general instances.
        #[arg(long)]
        general_only: bool,
        /// Enumerate lattice points with a deliberately broken inequality
        /// description; the run must fail.
        #[arg(long, hide = true)]
        mutate: bool,
    },
}

/// Options shared by every command.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub raw: bool,
    pub format: Format,
    pub seed: u64,
    pub limit: EnumerationLimit,
    pub max_r: usize,
}

impl RunConfig {
    /// Shift applied to padded ranks on output.
    pub fn offset(&self) -> i64 {
        i64::from(self.raw)
    }

    pub fn convention(&self) -> &'static str {
        if self.raw {
            "raw"
        } else {
            "padded"
        }
    }
}

/// Successful run, possibly with a failed verification.
pub enum Verdict {
    Agree,
    Mismatch,
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::GluingViolation { .. } | Error::Infeasible(_) | Error::NonLatticePoint(_)) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = RunConfig {
        raw: cli.raw,
        format: cli.format,
        seed: cli.seed,
        limit: EnumerationLimit {
            max_elements: cli.max_p as usize,
            force: cli.force,
        },
        max_r: cli.max_r as usize,
    };
    let result = match cli.command {
        Command::Validate { file } => commands::validate(&config, &file),
        Command::Vectors { file } => commands::vectors(&config, &file),
        Command::Polytope { file } => commands::polytope(&config, &file),
        Command::Vertices { file } => commands::vertices(&config, &file),
        Command::Witness { file, point } => commands::witness(&config, &file, &point),
        Command::Complex { file } => commands::complex(&config, &file),
        Command::Fuzz {
            count,
            size,
            labels,
            chain_only,
            general_only,
            mutate,
        } => commands::fuzz(
            &config,
            posetohedron_core::fuzz::FuzzConfig {
                seed: config.seed,
                count,
                max_elements: size as usize,
                max_r: labels as usize,
                chain_cases: !general_only,
                general_cases: !chain_only,
                check_vertices: true,
                mutate,
            },
        ),
    };
    match result {
        Ok(Verdict::Agree) => ExitCode::SUCCESS,
        Ok(Verdict::Mismatch) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
