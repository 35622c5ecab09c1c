//! `inversive`: Mobius-invariant tables, rigidity solving, and rendering
//! for oriented-ball and point configurations.

mod commands;
mod error;
mod render;
mod schema;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use inversive::sample::Structure;
use inversive::ConfigurationKind;

#[derive(Parser)]
#[command(name = "inversive", version, about = "Mobius-invariant geometry of balls and points")]
struct Cli {
    /// Tolerance override for solver and verification commands.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for generation commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Balls,
    Points,
}

impl From<KindArg> for ConfigurationKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Balls => ConfigurationKind::Balls,
            KindArg::Points => ConfigurationKind::Points,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StructureArg {
    Full,
    StronglySymmetric,
    CommonSphere,
    CommonPoint,
}

impl From<StructureArg> for Structure {
    fn from(s: StructureArg) -> Self {
        match s {
            StructureArg::Full => Structure::Full,
            StructureArg::StronglySymmetric => Structure::StronglySymmetric,
            StructureArg::CommonSphere => Structure::CommonSphere,
            StructureArg::CommonPoint => Structure::CommonPoint,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the pairwise invariant matrix of a configuration.
    Gram { config: PathBuf },
    /// Find the Mobius map identifying two configurations.
    Solve {
        kind: KindArg,
        a: PathBuf,
        b: PathBuf,
        /// Write the resulting map to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report span class, degeneracy, and uniqueness of a configuration.
    Classify { config: PathBuf },
    /// Apply a Lorentz map file to a configuration, printing the image.
    Apply { map: PathBuf, config: PathBuf },
    /// Check whether two configurations correspond, optionally under a map.
    Verify {
        a: PathBuf,
        b: PathBuf,
        /// Verify against this specific map instead of the invariants.
        #[arg(long)]
        map: Option<PathBuf>,
        /// Compare absolute cross-ratios over all ordered 4-tuples.
        #[arg(long)]
        full_cross_ratios: bool,
    },
    /// Emit a seeded instance: A, its image B, and the generating map.
    Generate {
        #[arg(long)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = StructureArg::Full)]
        structure: StructureArg,
        /// Output prefix: writes PREFIX.a.json, PREFIX.b.json, PREFIX.map.json.
        #[arg(long)]
        out_prefix: PathBuf,
    },
    /// Draw a planar configuration as SVG.
    Render {
        config: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> error::Result<()> {
    match cli.command {
        Command::Gram { config } => commands::cmd_gram(&config, cli.json),
        Command::Solve { kind, a, b, out } => {
            commands::cmd_solve(kind.into(), &a, &b, cli.tol, cli.json, out.as_deref())
        }
        Command::Classify { config } => commands::cmd_classify(&config, cli.json),
        Command::Apply { map, config } => commands::cmd_apply(&map, &config),
        Command::Verify { a, b, map, full_cross_ratios } => {
            commands::cmd_verify(&a, &b, map.as_deref(), full_cross_ratios, cli.tol, cli.json)
        }
        Command::Generate { kind, n, dim, structure, out_prefix } => commands::cmd_generate(
            kind.into(),
            n,
            dim,
            cli.seed,
            structure.into(),
            &out_prefix,
        ),
        Command::Render { config, out } => render::cmd_render(&config, &out),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {}", e.message());
        std::process::exit(e.code());
    }
}
