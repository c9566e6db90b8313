//! Command line syntax. Everything here is plain strings and numbers;
//! [`crate::config`] turns it into a validated [`crate::config::RunConfig`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "darboux",
    version,
    about = "Darboux polynomials, cofactors and first integrals of polynomial vector fields on R^3"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Every Darboux polynomial with constant cofactor up to a degree bound.
    Find {
        #[command(flatten)]
        common: CommonArgs,
        /// Degree bound for the search.
        #[arg(long, default_value_t = 8)]
        degree: u32,
    },
    /// Run `find` over a parameter grid and recover the locus of each generator.
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 8)]
        degree: u32,
        /// `amin:amax:steps,bmin:bmax:steps`; the special loci are always added.
        #[arg(long, default_value = "-2:2:5,-2:2:5")]
        grid: String,
    },
    /// Check `L_X f = k f` exactly; exit status 1 and the residual when it fails.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// The polynomial `f`.
        #[arg(allow_hyphen_values = true)]
        f: String,
        /// The cofactor `k`.
        #[arg(allow_hyphen_values = true)]
        k: String,
    },
    /// Fixed points, invariance drift, heteroclinic probe and escape evidence.
    Dynamics {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Print the canonical form of a polynomial, or of the selected field.
    Parse {
        #[command(flatten)]
        common: CommonArgs,
        /// Polynomial to normalize; the field is printed when omitted.
        #[arg(allow_hyphen_values = true)]
        expr: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// `d2-neg`, `d2-pos` or `file:<path>`.
    #[arg(long, default_value = "d2-neg")]
    pub field: String,
    /// Value of `a`: a rational `p/q`, `sym`, or `b` to tie it to `b`.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Value of `b`: a rational `p/q`, `sym`, or `a` to tie it to `a`.
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
    /// Write the report here instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Add the D2-equivariance check of the field to the report.
    #[arg(long)]
    pub check_equivariance: bool,
}

#[derive(Debug, Args)]
pub struct NumericArgs {
    /// Integration horizon for drift checks and trajectory dumps.
    #[arg(long, default_value_t = 5.0)]
    pub tmax: f64,
    /// RK4 step.
    #[arg(long, default_value_t = 1e-3)]
    pub step: f64,
    /// Arrival radius of the heteroclinic probe.
    #[arg(long, default_value_t = 1e-4)]
    pub tol: f64,
    /// Newton residual accepted as an equilibrium.
    #[arg(long, default_value_t = 1e-12)]
    pub newton_tol: f64,
    /// Eigenvalues with `|Re| <` this count as zero.
    #[arg(long, default_value_t = 1e-6)]
    pub hyperbolic_tol: f64,
    /// Offset from the origin along eigendirections in the probe.
    #[arg(long, default_value_t = 1e-6)]
    pub eps: f64,
    /// Integration horizon of the heteroclinic probe.
    #[arg(long, default_value_t = 60.0)]
    pub probe_tmax: f64,
    /// Half width of the box searched for equilibria.
    #[arg(long, default_value_t = 5.0)]
    pub box_half_width: f64,
    /// Initial condition `x,y,z` for drift checks and the dump.
    #[arg(long, default_value = "1,0,1", allow_hyphen_values = true)]
    pub x0: String,
    /// Random initial conditions for escape and attraction evidence.
    #[arg(long, default_value_t = 32)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Write the trajectory from `x0` as CSV.
    #[arg(long)]
    pub dump: Option<PathBuf>,
}
