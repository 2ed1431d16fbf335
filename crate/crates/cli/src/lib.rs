//! The `conlat` command line: argument parsing, command dispatch and error
//! reporting. Every command returns a [`Report`]; `main` only prints it.

pub mod bundled;
pub mod commands;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use conlat_core::error::{AlgebraError, CatalogError, DocumentError, EngineError, LatticeError};

pub use report::{Report, Status};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Args(#[from] clap::Error),
    #[error("{path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Document {
        path: String,
        #[source]
        source: DocumentError,
    },
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("writing {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 1 when the computation itself contradicts the prediction, 2 for bad
    /// input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Engine(
                EngineError::CrossCheckMismatch { .. }
                | EngineError::InfiniteBranch { .. }
                | EngineError::ChainBudgetExhausted { .. },
            ) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "conlat", version, about = "Congruence lattices of finite algebras and the doubling construction")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Write Hasse diagrams as Graphviz files into DIR
    #[arg(long, value_name = "DIR", global = true)]
    pub dot: Option<PathBuf>,
    /// Chain steps before giving up (default: size of the algebra plus one)
    #[arg(long, value_name = "N", global = true)]
    pub budget: Option<usize>,
    /// Worker threads for exhaustive searches
    #[arg(long, value_name = "N", global = true)]
    pub threads: Option<usize>,
    /// Check only the hypotheses the doubling lemmas use, not the full figure
    #[arg(long, global = true)]
    pub relaxed_bounds: bool,
    /// Print elapsed time to stderr
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Clone, Args)]
pub struct TripleArgs {
    /// Algebra document
    pub file: PathBuf,
    #[arg(long, default_value = "alpha")]
    pub alpha: String,
    #[arg(long, default_value = "beta")]
    pub beta: String,
    #[arg(long, default_value = "gamma")]
    pub gamma: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify the lattice generated from a labelled pentagon in Con(A(β))
    ClassifyN5 {
        #[command(flatten)]
        labels: TripleArgs,
        /// Also generate the lifted pentagon in Con(A(γ))
        #[arg(long)]
        l14: bool,
    },
    /// Generate the lattice from a labelled D1 in Con(A(β)) and compare with D13
    CheckD1 {
        #[command(flatten)]
        labels: TripleArgs,
    },
    /// Classify the lattice generated from a labelled D2 in Con(A(μ))
    ClassifyD2 {
        #[command(flatten)]
        labels: TripleArgs,
        /// Partition used as μ instead of α ∧ β (needs --delta)
        #[arg(long, requires = "delta")]
        mu: Option<String>,
        /// Partition used as δ instead of β ∧ γ (needs --mu)
        #[arg(long, requires = "mu")]
        delta: Option<String>,
    },
    /// Lattice predicates and pattern embeddings for a catalog entry or a
    /// document's partitions
    LatticeAudit {
        /// `catalog:NAME` (for example `catalog:K_2`) or a document path
        target: String,
        /// Generators to use from the document, comma separated (default: all)
        #[arg(long, value_delimiter = ',')]
        partitions: Vec<String>,
    },
    /// List or show catalog lattices
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run the bundled examples and compare with the expected classes
    Examples {
        /// Append the lemma checks for each example
        #[arg(long)]
        lemmas: bool,
    },
    /// Find every labelled pattern among the congruences of a document's algebra
    Search {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "n5")]
        pattern: PatternKind,
        /// Allow bottoms other than the least congruence
        #[arg(long)]
        any_bottom: bool,
        /// Classify each configuration found
        #[arg(long)]
        classify: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    /// Names and sizes
    List {
        #[arg(long, default_value_t = 3)]
        max_index: usize,
    },
    /// Elements, covers and landmarks of one entry
    Show { name: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PatternKind {
    N5,
    D1,
    D2,
}

/// Command line as echoed in reports.
pub fn echo<S: AsRef<str>>(args: &[S]) -> String {
    let mut parts = vec!["conlat".to_string()];
    for a in args {
        let a = a.as_ref();
        if a.is_empty() || a.contains(|c: char| c.is_whitespace() || c == '\'' || c == '"') {
            parts.push(format!("'{}'", a.replace('\'', "'\\''")));
        } else {
            parts.push(a.to_string());
        }
    }
    parts.join(" ")
}

/// Parses `args` (without the program name) and runs the command. DOT
/// artifacts are attached to the report, not written.
pub fn run<S: AsRef<str>>(args: &[S]) -> Result<Report, CliError> {
    let cli = Cli::try_parse_from(std::iter::once("conlat").chain(args.iter().map(|a| a.as_ref())))?;
    let command = echo(args);
    commands::dispatch(&cli, command)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn echo_quotes_spaces() {
        assert_eq!(echo(&["catalog", "show", "S* 1"]), "conlat catalog show 'S* 1'");
    }

    #[test]
    fn exit_codes() {
        let e = CliError::Engine(EngineError::InfiniteBranch {
            family: "K_inf".into(),
            steps: 3,
        });
        assert_eq!(e.exit_code(), 1);
        let e = CliError::Engine(EngineError::Threads(0));
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
