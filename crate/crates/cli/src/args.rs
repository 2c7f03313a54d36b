use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const DEFAULT_SEED: u64 = 0x7477_6865;

#[derive(Debug, Parser)]
#[command(
    name = "twheis",
    version,
    about = "Cohomology and restricted central extensions of twisted Heisenberg Lie algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Write the output to `<dir>/<command>.{txt,json}` instead of stdout.
    #[arg(long, global = true, env = "TWHEIS_OUT_DIR")]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Args, Clone)]
pub struct Base {
    /// Field: `p`, `p^k` or `p^k:c0,c1,...,ck` (monic modulus, low degree first).
    #[arg(long)]
    pub field: String,

    /// Half the dimension of the Heisenberg part (m >= 1).
    #[arg(long)]
    pub m: usize,

    /// Comma-separated nonzero λ_1, ..., λ_m (integers or polynomials in `x`).
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
}

#[derive(Debug, Args, Clone)]
pub struct RestrictedBase {
    #[command(flatten)]
    pub base: Base,

    /// Comma-separated μ_1, ..., μ_{2m+2}; all zero when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    /// H_{ij}: needs 1 <= i < j <= m and λ_i = ±λ_j.
    Hij,
    /// H_{i,m+j}: needs 1 <= i < j <= m and λ_i = ±λ_j.
    Himj,
    /// H_{i,m+i}: needs 1 <= i <= m-1.
    Himi,
    /// H_i: needs 1 <= i <= 2m+1.
    Hi,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ordinary cohomology H^q of h_m^λ.
    Cohomology {
        #[command(flatten)]
        base: Base,
        #[arg(long, default_value_t = 2)]
        q: usize,
    },
    /// Restricted cohomology H^q_* of h_m^{λ,μ}.
    RestrictedCohomology {
        #[command(flatten)]
        base: RestrictedBase,
        #[arg(long, default_value_t = 2)]
        q: usize,
    },
    /// Whether h_m^λ admits a restricted structure.
    Restrictable {
        #[command(flatten)]
        base: Base,
    },
    /// A restricted one-dimensional central extension, as algebra JSON.
    Extend {
        #[command(flatten)]
        base: RestrictedBase,
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// 1-based first index.
        #[arg(long)]
        i: usize,
        /// 1-based second index (hij and himj only).
        #[arg(long)]
        j: Option<usize>,
    },
    /// Checks the isomorphism conditions for Ψ given by (A, k) from μ to μ'.
    IsoCheck {
        #[command(flatten)]
        base: RestrictedBase,
        /// Comma-separated μ' of the target structure.
        #[arg(long, allow_hyphen_values = true)]
        target_mu: String,
        /// A as rows separated by `;` over e_1..e_{2m}, e_{2m+2}; identity when omitted.
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        /// Comma-separated k_1, ..., k_{2m+2}; k_{2m+1} = 1 and the rest 0 when omitted.
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
    },
    /// Runs the invariant suite for the given parameters.
    Verify {
        #[command(flatten)]
        base: RestrictedBase,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Cohomology { .. } => "cohomology",
            Command::RestrictedCohomology { .. } => "restricted-cohomology",
            Command::Restrictable { .. } => "restrictable",
            Command::Extend { .. } => "extend",
            Command::IsoCheck { .. } => "iso-check",
            Command::Verify { .. } => "verify",
        }
    }
}
