use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Exact computations with integral lattices of hyperbolic signature.
///
/// Vector arguments accept a JSON array (`[1,0,0]`) or the name of a vector
/// stored in the lattice file. List arguments also accept `walls`, `mbm`,
/// or comma-separated names.
#[derive(Debug, Parser)]
#[command(name = "hyperlattice", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Input {
    /// Lattice file (JSON).
    pub file: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct Walls {
    /// Reference class of positive square.
    #[arg(long, default_value = "kappa", allow_hyphen_values = true)]
    pub kappa: String,
    /// Wall classes.
    #[arg(long, default_value = "walls", allow_hyphen_values = true)]
    pub walls: String,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Rank, signature and determinant.
    Info(Input),
    /// Orthogonal complement of a sublattice.
    Complement {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        sub: String,
    },
    /// Saturation of a sublattice.
    Saturate {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        sub: String,
    },
    /// The lattice ℓ⊥/Zℓ as a lattice file.
    Quotient {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "ell", allow_hyphen_values = true)]
        ell: String,
    },
    /// Adapted basis for ℓ and a negative definite W ⊥ ℓ.
    Adapt {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "ell", allow_hyphen_values = true)]
        ell: String,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        w: String,
    },
    /// Parabolic isometry g(γ) in standard coordinates.
    Isometry {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "ell", allow_hyphen_values = true)]
        ell: String,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        w: String,
        /// Entries of γ, each divisible by d = det A.
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
    },
    /// Orbit of x under g(γ) and its convergence to the ray of ℓ.
    Orbit {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "ell", allow_hyphen_values = true)]
        ell: String,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        w: String,
        /// Defaults to the first generator.
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = 10)]
        m_max: usize,
    },
    /// Vectors of a given square (or square range) in a negative definite lattice.
    Enumerate {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "range", required_unless_present = "range")]
        square: Option<String>,
        /// Open range `qmin,qmax`.
        #[arg(long, allow_hyphen_values = true)]
        range: Option<String>,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Representatives of {x ∈ ℓ⊥ : -N < x² < 0} modulo ℓ.
    LambdaN {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "ell", allow_hyphen_values = true)]
        ell: String,
        #[arg(long)]
        n: String,
    },
    /// Primitive isotropic vectors in a coordinate box.
    Isotropic {
        #[command(flatten)]
        input: Input,
        #[arg(long = "box")]
        size: u32,
    },
    /// Nef test and chamber signature of x.
    Nef {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        walls: Walls,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Whether e⊥ separates x and y.
    Separates {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        walls: Walls,
        #[arg(long, allow_hyphen_values = true)]
        e: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Whether e⊥ meets the nef cone in a face of full dimension.
    MbmFace {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        walls: Walls,
        #[arg(long, allow_hyphen_values = true)]
        e: String,
    },
    /// Rank of the automorphism group fixing ℓ.
    AutRank {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        walls: Walls,
        #[arg(long, default_value = "ell", allow_hyphen_values = true)]
        ell: String,
        #[arg(long, default_value = "mbm", allow_hyphen_values = true)]
        mbm: String,
    },
    /// Mordell–Weil rank from the Picard number and reducible fibers.
    ShiodaTate {
        #[arg(long)]
        picard: usize,
        /// Component counts of the reducible fibers, comma-separated.
        #[arg(long, default_value = "")]
        fibers: String,
    },
}
