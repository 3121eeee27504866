use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "quadalg", version, about = "Groebner bases, resolutions and Ext for graded algebras")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// The algebras C(m), m >= 5
    C,
    /// The 13-generator algebra B
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    /// 14 relations, the entries of psi_2 psi_1
    Full,
    /// the 11 relations without sv - sy1, tw - ty1, ux1 - uy1
    Short,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Coefficient field: `p:<prime>` or `q`
    #[arg(long, global = true, env = "QUADALG_FIELD")]
    pub field: Option<String>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Write the report here instead of stdout
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Run on the calling thread only
    #[arg(long, global = true)]
    pub sequential: bool,
}

/// Where the algebra comes from: a presentation file or a built-in family.
#[derive(Debug, Args, Clone)]
pub struct Source {
    /// Presentation file
    #[arg(long, conflicts_with_all = ["family", "m"])]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, ignore_case = true)]
    pub family: Option<Family>,
    /// Parameter of C(m)
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, value_enum, ignore_case = true, default_value = "full")]
    pub b_variant: Variant,
}

#[derive(Debug, Args, Clone, Default)]
pub struct Bounds {
    /// Largest cohomological degree
    #[arg(long)]
    pub imax: Option<usize>,
    /// Largest internal degree
    #[arg(long)]
    pub jmax: Option<u32>,
    /// Groebner basis truncation degree
    #[arg(long)]
    pub maxdeg: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the presentation of a built-in algebra
    MakeAlgebra {
        #[command(flatten)]
        source: Source,
    },
    /// Print the explicit resolution of a built-in algebra
    MakeComplex {
        #[command(flatten)]
        source: Source,
    },
    /// Truncated Groebner basis
    Gb {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Dimensions of the graded pieces
    Hilbert {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Minimal resolution of the trivial module: Betti table and Koszulity
    #[command(alias = "betti")]
    Resolve {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Check that a complex is a minimal free resolution
    Verify {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        bounds: Bounds,
        /// Complex file; defaults to the built-in complex of the family
        #[arg(long)]
        complex: Option<PathBuf>,
        /// Also run this many random single-entry mutations
        #[arg(long, default_value_t = 0)]
        mutations: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Bidegrees where the Ext algebra needs new generators
    ExtGens {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Evaluate every structural claim for C(m) and B
    PaperCheck {
        /// Comma-separated values of m, each at least 5
        #[arg(long, value_delimiter = ',', default_values_t = [5, 6, 7])]
        m: Vec<usize>,
        #[arg(long, value_enum, ignore_case = true, default_value = "full")]
        b_variant: Variant,
        /// Internal-degree bound; defaults to m + 3 and 8 for B
        #[arg(long)]
        jmax: Option<u32>,
    },
}
