//! `pebblefan`: command-line access to enumeration, posets, complexes, flip
//! graphs, fans, polytopes and counting series of pebble trees.
//!
//! Exit status is 0 on success, 2 when a certification check fails and 1 on
//! usage or input errors.

mod commands;

use clap::{Args, Parser, Subcommand, ValueEnum};
use commands::Report;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_USAGE: u8 = 1;
const EXIT_CERTIFICATION: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "pebblefan", version, about = "Pebble trees, their fans and polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Parameters and output options shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Number of leaves.
    #[arg(short = 'l', long = "leaves")]
    pub leaves: Option<usize>,
    /// Number of balanced colors.
    #[arg(short = 'b', long = "balanced", default_value_t = 0)]
    pub balanced: usize,
    /// Number of unbalanced colors.
    #[arg(short = 'u', long = "unbalanced", default_value_t = 0)]
    pub unbalanced: usize,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest ℓ(1+b+u) accepted before refusing to enumerate.
    #[arg(long = "max-size", default_value_t = pebblefan::DEFAULT_CAP)]
    pub max_size: usize,
    /// Write the output to this file instead of standard output.
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the trees of a parameter triple, or count them.
    Enumerate {
        #[command(flatten)]
        common: Common,
        /// Only trees with the maximal number of nodes.
        #[arg(long)]
        maximal: bool,
        /// Print only the number of trees.
        #[arg(long)]
        count: bool,
    },
    /// The contraction poset: rank sizes, or its Hasse diagram.
    Poset {
        #[command(flatten)]
        common: Common,
        /// Print the Hasse diagram in DOT.
        #[arg(long)]
        dot: bool,
    },
    /// The simplicial complex of label sets and its pseudomanifold check.
    Complex {
        #[command(flatten)]
        common: Common,
        /// Print every face as a JSON line.
        #[arg(long)]
        faces: bool,
    },
    /// The graph of flips between maximal trees.
    Flipgraph {
        #[command(flatten)]
        common: Common,
        /// Print the graph in DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Certify the fan of cones of maximal trees.
    Fan {
        #[command(flatten)]
        common: Common,
        /// Seed for the sampled coverage check.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Reading of the witness vector.
        #[arg(long, value_enum, default_value_t = Witness::Shifted)]
        witness: Witness,
    },
    /// Certify the polytope with the default heights, or print its
    /// description.
    Polytope {
        #[command(flatten)]
        common: Common,
        /// Print the f-vector, ending with the polytope itself.
        #[arg(long)]
        fvector: bool,
        /// Print the inequality description.
        #[arg(long)]
        hrep: bool,
        /// Print one vertex per maximal tree.
        #[arg(long)]
        vrep: bool,
        /// Face of the one-color polytope for a signature over {I, O}.
        #[arg(long, value_name = "SIGNATURE")]
        alpha: Option<String>,
    },
    /// Tree counts from the recurrences.
    Count {
        #[command(flatten)]
        common: Common,
        /// Print the counts of every (ℓ, b, u, n) up to ℓ as TSV.
        #[arg(long)]
        table: bool,
        /// Print the generating series up to x^ℓ.
        #[arg(long)]
        series: bool,
    },
    /// Run the checks of every module at one parameter triple.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Run every check.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        counts: bool,
        #[arg(long)]
        pseudomanifold: bool,
        #[arg(long)]
        fan: bool,
        #[arg(long)]
        polytope: bool,
        /// Seed for the sampled fan coverage check.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write one artifact to the file given by -o.
    Export {
        #[arg(value_enum)]
        kind: ExportKind,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    Literal,
    Shifted,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportKind {
    Trees,
    Poset,
    Faces,
    Flipgraph,
    Hrep,
    Vrep,
    Certificate,
}

/// Failure of a command before it could produce a report.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Engine(pebblefan::Error),
}

impl From<pebblefan::Error> for Failure {
    fn from(e: pebblefan::Error) -> Self {
        Failure::Engine(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Engine(pebblefan::Error::CertificationFailed(_)) => EXIT_CERTIFICATION,
            _ => EXIT_USAGE,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(message) => write!(f, "usage error: {message}"),
            Failure::Engine(e) => write!(f, "{e}"),
        }
    }
}

fn dispatch(command: Command) -> Result<(Report, Common), Failure> {
    let (report, common) = match command {
        Command::Enumerate { common, maximal, count } => (commands::enumerate(&common, maximal, count)?, common),
        Command::Poset { common, dot } => (commands::poset(&common, dot)?, common),
        Command::Complex { common, faces } => (commands::complex(&common, faces)?, common),
        Command::Flipgraph { common, dot } => (commands::flipgraph(&common, dot)?, common),
        Command::Fan { common, seed, witness } => (commands::fan(&common, seed, witness)?, common),
        Command::Polytope { common, fvector, hrep, vrep, alpha } => {
            let view = commands::PolytopeView { fvector, hrep, vrep, alpha };
            (commands::polytope(&common, &view)?, common)
        }
        Command::Count { common, table, series } => (commands::count(&common, table, series)?, common),
        Command::Verify { common, all, counts, pseudomanifold, fan, polytope, seed } => {
            let checks = commands::Checks {
                counts: all || counts,
                pseudomanifold: all || pseudomanifold,
                fan: all || fan,
                polytope: all || polytope,
            };
            (commands::verify(&common, &checks, seed)?, common)
        }
        Command::Export { kind, common, seed } => {
            let report = commands::export(&common, kind, seed)?;
            (report, Common { output: None, ..common })
        }
    };
    Ok((report, common))
}

fn emit(report: &Report, common: &Common) -> Result<(), Failure> {
    let text = if common.json {
        let mut s = serde_json::to_string_pretty(&report.json).expect("serializable report");
        s.push('\n');
        s
    } else {
        report.text.clone()
    };
    match &common.output {
        Some(path) => std::fs::write(path, text).map_err(|source| {
            Failure::Engine(pebblefan::Error::Io {
                path: path.display().to_string(),
                source,
            })
        }),
        None => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = dispatch(cli.command).and_then(|(report, common)| {
        emit(&report, &common)?;
        Ok(report.passed)
    });
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_CERTIFICATION),
        Err(failure) => {
            eprintln!("pebblefan: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
