use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::Overrides;

/// Finite-quotient experiments on HLS groupoids of approximated free groups.
///
/// Every subcommand writes a CSV report (to --out, or stdout) whose `#` header
/// echoes the effective configuration. Exit status: 0 pass, 1 check failure,
/// 2 input error, 3 resource error.
#[derive(Debug, Parser)]
#[command(name = "hlslab", version, about, long_about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the quotients Γ₁..Γₙ and check nesting and separation.
    Quotients(QuotientsArgs),
    /// Per-level norm profile of a self-adjoint element against the ∞-fiber.
    Gap(GapArgs),
    /// Check an amenability certificate built from a Følner function or given directly.
    Amen(AmenArgs),
    /// Second eigenvalue of the Markov operator per level, for fd and congruence.
    Tau(TauArgs),
    /// Exact ∗-algebra identities on random fibered functions.
    ConvolveCheck(ConvolveArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Approximating sequence: fd, congruence or cyclic.
    #[arg(long)]
    pub family: Option<String>,
    /// Deepest level to build.
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Worker threads for per-level work (0: one per core).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Quotient cache directory [default: $HLSLAB_CACHE, else ~/.cache/hlslab].
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// TOML file with defaults; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Cap on the order of a single quotient.
    #[arg(long)]
    pub fiber_cap: Option<u64>,
    /// Cap on the number of words in a ball.
    #[arg(long)]
    pub ball_cap: Option<u64>,
    /// Deepest level for homomorphism enumeration (fd family).
    #[arg(long)]
    pub hom_cap: Option<usize>,
    /// Fill the wall_ms column (otherwise NA, keeping reports byte-stable).
    #[arg(long)]
    pub timings: bool,
}

impl CommonArgs {
    pub fn overrides(&self) -> Overrides {
        Overrides {
            family: self.family.clone(),
            n_max: self.n_max,
            jobs: self.jobs,
            cache_dir: self.cache_dir.clone(),
            out: self.out.clone(),
            fiber_cap: self.fiber_cap,
            ball_cap: self.ball_cap,
            hom_cap: self.hom_cap,
            ..Overrides::default()
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct QuotientsArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Largest word length tried when reporting the separation radius [default: 4].
    #[arg(long)]
    pub radius: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct GapArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Element: inline JSON, a builtin (generator-sum, markov, identity, ball:R, interval:N) or a file.
    #[arg(long)]
    pub element: Option<String>,
    /// Truncation radius for the ∞-fiber lower bound [default: 12].
    #[arg(long)]
    pub radius: Option<usize>,
    /// GAP needs the finite-level sup to clear the ∞-fiber upper end by this much [default: 0.25].
    #[arg(long)]
    pub margin: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct AmenArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Følner function ξ (same forms as for gap); η is its pushforward.
    #[arg(long, conflicts_with = "eta")]
    pub element: Option<String>,
    /// Certificate η as fibered-function JSON, inline or a file.
    #[arg(long)]
    pub eta: Option<String>,
    /// Compact set K: `word` for (∞, word), `n:word` for its image in Γₙ. Repeatable [default: each generator at ∞].
    #[arg(long = "k", value_name = "ELEMENT")]
    pub k: Vec<String>,
    /// Both defects must be strictly below this [default: 0.05].
    #[arg(long)]
    pub epsilon: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct TauArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Overwrite the stored congruence snapshot instead of comparing with it.
    #[arg(long)]
    pub update_snapshots: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ConvolveArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Random instances per identity.
    #[arg(long, default_value_t = 100)]
    pub cases: usize,
    /// Seed for the instance generator.
    #[arg(long, default_value_t = 0x48_4C_53)]
    pub seed: u64,
    /// Representation checks skip fibers larger than this.
    #[arg(long, default_value_t = 200)]
    pub max_order: usize,
}
