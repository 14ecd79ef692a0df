use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "bergman",
    version,
    about = "Evaluate and verify Bergman kernels of D1, D2 and complex ellipsoids"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a kernel at a point pair or at a ν vector.
    Eval(EvalArgs),
    /// Run a verification suite and emit a report.
    Verify(VerifyArgs),
    /// Print the squared L² norm of a monomial.
    Norm(NormArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainArg {
    D1,
    D2,
    Ellipsoid,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodArg {
    Closed,
    Series,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormArg {
    /// Production closed forms.
    Corrected,
    /// Closed forms exactly as typeset.
    Printed,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValueFormat {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct DomainArgs {
    #[arg(long, value_enum)]
    pub domain: DomainArg,
    /// D1 exponent p, or the comma-separated ellipsoid exponents.
    #[arg(long)]
    pub p: Option<String>,
    /// D1 exponent λ.
    #[arg(long)]
    pub lambda: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct SeriesArgs {
    /// Cap on the total degree of summed shells.
    #[arg(long, default_value_t = 400)]
    pub max_degree: usize,
    /// Stop once three successive shells fall below this fraction of the partial sum.
    #[arg(long, default_value_t = 1e-10)]
    pub tail_tol: f64,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[command(flatten)]
    pub domain: DomainArgs,
    /// ν components, comma separated, each `re`, `re+imj` or `imj`.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["z", "zeta"])]
    pub nu: Option<String>,
    /// First point of the pair; ν_j = z_j·conj(ζ_j).
    #[arg(long, allow_hyphen_values = true, requires = "zeta")]
    pub z: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "z")]
    pub zeta: Option<String>,
    #[arg(long, value_enum, default_value = "closed")]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value = "corrected")]
    pub form: FormArg,
    #[command(flatten)]
    pub series: SeriesArgs,
    #[arg(long, value_enum, default_value = "text")]
    pub format: ValueFormat,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(subcommand)]
    pub suite: Suite,
}

#[derive(Args, Debug, Clone)]
pub struct ReportArgs {
    #[arg(long, value_enum, default_value = "json")]
    pub format: ReportFormat,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Suite {
    /// Multisum, closed ₂F₁ forms, F_A collapse and decomposition, contiguous relation.
    Identities {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Tolerance for most identities [default: 1e-10].
        #[arg(long)]
        tol: Option<f64>,
        /// Tolerance for the relation-derived forms [default: 1e-9].
        #[arg(long)]
        relation_tol: Option<f64>,
        #[arg(long, default_value_t = 4000)]
        max_degree: usize,
        #[arg(long, default_value_t = 1e-13)]
        tail_tol: f64,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Closed-form monomial norms against the quadrature oracle.
    Norms {
        #[command(flatten)]
        domain: DomainArgs,
        /// Bound on α₂, α₃ for d2 [default: 4] or on every component for d1 [default: 3].
        #[arg(long)]
        max_index: Option<i64>,
        /// Relative tolerance [default: 1e-8].
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Closed form vs series, symmetry, positivity, continuity and gradients.
    Kernels {
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long, default_value_t = 50)]
        points: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 0.2)]
        margin: f64,
        /// Route-agreement tolerance [default: 1e-6].
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value = "corrected")]
        form: FormArg,
        #[command(flatten)]
        series: SeriesArgs,
        #[command(flatten)]
        report: ReportArgs,
    },
}

#[derive(Args, Debug)]
pub struct NormArgs {
    #[command(flatten)]
    pub domain: DomainArgs,
    /// Exponents, comma separated (negative α₁ allowed on d2).
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    /// Also evaluate the quadrature oracle and compare.
    #[arg(long)]
    pub oracle: bool,
    /// Oracle agreement tolerance.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}
