use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "tl", version, about = "Temperley-Lieb diagrams, idempotents and tensor ideals")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Text)]
    pub out: OutFormat,
    /// Directory for cached idempotents. `TL_CACHE_DIR` takes precedence.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Seed for every pseudo-random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for sweeps (default: available parallelism).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    CertifyGeneric,
}

#[derive(Args, Debug)]
pub struct Cell {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct Sweep {
    #[arg(long)]
    pub ell: u32,
    #[arg(long, default_value_t = 4)]
    pub max_n: usize,
    /// Random morphisms per cell.
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    /// Sandwich products per negligible sample.
    #[arg(long, default_value_t = 5)]
    pub sandwiches: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Number of diagrams in Hom(m, n).
    Dim(Cell),
    /// b ∘ a.
    Compose {
        b: String,
        a: String,
        #[arg(long)]
        ell: Option<u32>,
    },
    /// a ⊗ b.
    Tensor {
        a: String,
        b: String,
        #[arg(long)]
        ell: Option<u32>,
    },
    /// Markov trace of an endomorphism.
    Trace {
        a: String,
        #[arg(long)]
        ell: Option<u32>,
    },
    /// Jones-Wenzl projector.
    Jw {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: Option<u32>,
    },
    /// Path idempotent of a width sequence such as 1-2-1-2.
    Pathidem {
        #[arg(long)]
        path: String,
        #[arg(long)]
        ell: Option<u32>,
    },
    /// Evaluable idempotent z_λ^L of a non-critical diagram.
    Zleft {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        ell: u32,
        /// Print z_λ^L(τ) instead of the generic idempotent.
        #[arg(long)]
        evaluate: bool,
    },
    /// Bratteli diagram up to a level.
    Bratteli {
        #[arg(long)]
        max_n: usize,
    },
    /// Trace pairing matrix of Hom(m, n).
    Gram {
        #[command(flatten)]
        cell: Cell,
        #[arg(long)]
        ell: Option<u32>,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
    },
    /// Negligible morphisms in Hom(m, n).
    Neg {
        #[command(flatten)]
        cell: Cell,
        #[arg(long)]
        ell: Option<u32>,
    },
    /// The (m, n) part of the tensor ideal generated by a morphism.
    Ideal {
        /// Generator: JSON file or inline expression.
        #[arg(long)]
        gen: String,
        #[command(flatten)]
        cell: Cell,
        #[arg(long)]
        ell: Option<u32>,
        #[arg(long, default_value_t = 3)]
        max_levels: usize,
    },
    /// Compare Neg with the ideal of JW_(ℓ-1) on every cell up to max-n.
    Verify(Sweep),
    /// The same comparison restricted to even objects (odd ℓ).
    VerifyEven(Sweep),
    /// dim e·A·f over ℚ(t) against the same span at τ.
    Constancy {
        #[arg(long)]
        e: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        ell: u32,
        /// Number of random diagrams of Hom(m, n) spanning A (default: all).
        #[arg(long)]
        diagrams: Option<usize>,
    },
    /// Manage the idempotent cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum CacheAction {
    /// Print the cache directory.
    Path,
    /// List cached files.
    List,
    /// Remove every cached file.
    Clear,
}
