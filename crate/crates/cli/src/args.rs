use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Finite presemifields: families, validation, nuclei, Knuth orbits and
/// isotopy invariants. Every command prints one JSON document.
#[derive(Debug, Parser)]
#[command(name = "semifield-lab", version)]
pub struct Cli {
    /// Print JSON on a single line.
    #[arg(long, global = true)]
    pub compact: bool,
    #[command(subcommand)]
    pub verb: Verb,
}

// Parsed once per run; boxing the large variant buys nothing.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Describe GF(p^n) with the default or a given modulus.
    Field(FieldArgs),
    /// Build family members.
    Family {
        #[command(subcommand)]
        action: FamilyAction,
    },
    /// Re-run validation on a presemifield exchange file.
    Validate {
        /// Exchange file, or `-` for standard input.
        input: PathBuf,
    },
    /// Nuclei and center of a presemifield.
    Nuclei {
        input: PathBuf,
        /// Cross-check against the associativity definitions after
        /// turning the presemifield into a semifield.
        #[arg(long)]
        oracle: bool,
        /// Encoding of the element used to build the semifield.
        #[arg(long, default_value_t = 1)]
        e: u64,
    },
    /// Knuth chain operations.
    Knuth {
        #[command(subcommand)]
        action: KnuthAction,
    },
    /// Isotopy invariants and exhaustive search.
    Isotopy {
        #[command(subcommand)]
        action: IsotopyAction,
    },
    /// Recompute the center and middle nucleus orders of each family.
    Table {
        /// Restrict to one family tag, e.g. `bh`.
        #[arg(long)]
        family: Option<String>,
        /// Largest order to compute, e.g. `3^10` or `59049`.
        #[arg(long, default_value = "3^10")]
        cap: String,
    },
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub n: usize,
    /// Monic modulus coefficients, constant term first, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub modulus: Option<Vec<u32>>,
}

#[derive(Debug, Subcommand)]
pub enum FamilyAction {
    /// Construct a family member and emit its exchange document.
    Build(FamilyArgs),
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// Family tag: dickson, gtf, ganley, cohen-ganley, cmdy, pwblp, chk,
    /// zkw, bierbrauer, bh, lmptb, zp.
    #[arg(long, required_unless_present = "spec", conflicts_with = "spec")]
    pub tag: Option<String>,
    /// Family description as a JSON file instead of flags.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Write the exchange document here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub sigma: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub e: Option<usize>,
    /// `plus` or `minus`.
    #[arg(long)]
    pub sign: Option<String>,
    #[arg(long)]
    pub h: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    /// Constants as canonical element encodings.
    #[arg(long)]
    pub j: Option<u64>,
    #[arg(long)]
    pub u: Option<u64>,
    #[arg(long)]
    pub beta: Option<u64>,
    #[arg(long)]
    pub omega: Option<u64>,
    #[arg(long)]
    pub alpha: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum KnuthAction {
    /// Parameters of the six Knuth derivatives.
    Orbit { input: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum IsotopyAction {
    /// Compare two presemifields.
    Compare {
        a: PathBuf,
        b: PathBuf,
        /// Also run the exhaustive search.
        #[arg(long)]
        brute: bool,
        /// Maximum number of candidate pairs for the search.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
}
