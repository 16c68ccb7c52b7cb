use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact lattice, Chow-ring and cone computations for K3-fibred blowups.
///
/// Matrices and vectors are JSON arrays such as "[[4,6],[6,4]]"; a matrix
/// flag also accepts the path of a file holding one.
#[derive(Debug, Parser)]
#[command(name = "conelab", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Intersection numbers in a Chow ring
    Chow(ChowArgs),
    /// Integral lattices and their isometries
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
    /// Rational polyhedral cones
    Cone {
        #[command(subcommand)]
        cmd: ConeCmd,
    },
    /// Word enumeration and Dirichlet domains
    Domain {
        #[command(subcommand)]
        cmd: DomainCmd,
    },
    /// Verify a scenario file or a builtin scenario
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct ChowArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    #[command(subcommand)]
    pub cmd: ChowCmd,
}

#[derive(Debug, Args)]
pub struct RingArgs {
    /// Take the ring and H from a builtin scenario
    #[arg(long, global = true)]
    pub builtin: Option<String>,
    /// Take the ring and H from a scenario file
    #[arg(long, global = true)]
    pub scenario: Option<PathBuf>,
    /// Comma-separated variable names
    #[arg(long, global = true)]
    pub vars: Option<String>,
    /// Dimension of the variety
    #[arg(long, global = true)]
    pub dim: Option<u32>,
    /// Monomial relations as exponent arrays, e.g. "[[2,0],[0,4]]"
    #[arg(long, global = true)]
    pub relations: Option<String>,
    /// Top-degree values as [exponents, value] pairs, e.g. "[[[1,3],1]]"
    #[arg(long, global = true)]
    pub valuation: Option<String>,
    /// The polarisation H as an expression
    #[arg(long, global = true)]
    pub h: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum ChowCmd {
    /// Expand and reduce an expression; top-degree classes also get their degree
    Eval { expr: String },
    /// Gram matrix L_i.L_j.H^(n-2) of the basis (default: the ring variables)
    Gram {
        /// Comma-separated divisor expressions
        #[arg(long)]
        basis: Option<String>,
    },
    /// Class H^(n-1) of the base curve
    Curve,
    /// Genus of the base curve
    Genus,
}

#[derive(Debug, Subcommand)]
pub enum LatticeCmd {
    /// Evaluate x.y (or x.x without --y)
    Form {
        #[arg(long)]
        gram: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
    },
    /// Discriminant group L*/L
    Disc {
        #[arg(long)]
        gram: String,
    },
    /// Whether M^T G M = G
    Isometry {
        #[arg(long)]
        gram: String,
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Order of a unimodular matrix
    Order {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Search for vectors of a given norm in a box, optionally with a modular certificate
    MinusTwo {
        #[arg(long)]
        gram: String,
        /// Half-width of the search box
        #[arg(long, default_value_t = 10)]
        bound: u32,
        /// Largest modulus to try for a non-existence certificate
        #[arg(long)]
        certify: Option<u64>,
        #[arg(long, default_value_t = -2, allow_hyphen_values = true)]
        norm: i64,
    },
    /// Isotropic slopes bounding the positive cone of a rank-2 lattice
    Boundary {
        #[arg(long)]
        gram: String,
    },
    /// Translation isometry for isotropic f and y orthogonal to f
    Translation {
        #[arg(long)]
        gram: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Lattice-side Torelli test for an isometry
    Torelli {
        #[arg(long)]
        gram: String,
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        /// Nodal classes as a list of vectors
        #[arg(long, allow_hyphen_values = true)]
        nodal: Option<String>,
    },
}

#[derive(Debug, Args)]
pub struct ConeInput {
    /// Generating rays
    #[arg(long, allow_hyphen_values = true)]
    pub rays: Option<String>,
    /// Inequalities a with a.x >= 0
    #[arg(long, allow_hyphen_values = true)]
    pub facets: Option<String>,
    /// File holding the inequalities
    #[arg(long)]
    pub facets_file: Option<PathBuf>,
    /// Ambient dimension, needed only for empty lists
    #[arg(long)]
    pub dim: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum ConeCmd {
    /// Extremal rays (and lineality)
    Rays {
        #[command(flatten)]
        cone: ConeInput,
    },
    /// Facet inequalities (and equations)
    Facets {
        #[command(flatten)]
        cone: ConeInput,
    },
    /// Whether a point lies in the cone
    Member {
        #[command(flatten)]
        cone: ConeInput,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Dual cone under a pairing (default: the standard one)
    Dual {
        #[command(flatten)]
        cone: ConeInput,
        #[arg(long, allow_hyphen_values = true)]
        pairing: Option<String>,
    },
    /// Whether the cone equals the one spanned by --other
    Equal {
        #[command(flatten)]
        cone: ConeInput,
        #[arg(long, allow_hyphen_values = true)]
        other: String,
    },
    /// Image under a surjective linear map
    Quotient {
        #[command(flatten)]
        cone: ConeInput,
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Whether the target cone is covered by the pieces
    Cover {
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long, allow_hyphen_values = true)]
        piece: Vec<String>,
    },
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// Generator as LABEL=MATRIX; repeatable
    #[arg(long, allow_hyphen_values = true)]
    pub gen: Vec<String>,
    /// Take generators, k, x and the lattice from a builtin scenario
    #[arg(long)]
    pub builtin: Option<String>,
    /// Maximal word length
    #[arg(long)]
    pub k: Option<usize>,
    /// Also use the inverses of the generators
    #[arg(long)]
    pub inverses: bool,
    #[arg(long)]
    pub gram: Option<String>,
    /// Base point of the Dirichlet domain
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum DomainCmd {
    /// Group elements given by words of length at most k
    Words {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Dirichlet half-spaces
    Halfspaces {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// The Dirichlet domain and the norms of its rays
    Compute {
        #[command(flatten)]
        group: GroupArgs,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Name of a builtin scenario
    #[arg(long)]
    pub builtin: Option<String>,
    /// Scenario file
    pub file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Restrict to a section (chow, nef, movable, lattice, domain, lifting); repeatable
    #[arg(long)]
    pub section: Vec<String>,
    /// List the builtin scenarios
    #[arg(long)]
    pub list: bool,
}
