use clap::{Args, Parser, Subcommand, ValueEnum};

use rfr_core::recombine::Backend;
use rfr_core::rootfinder::Precision;
use rfr_core::verify::FactorOptions;
use rfr_core::ToleranceConfig;

#[derive(Debug, Parser)]
#[command(name = "rfr", version, about = "Factor integer polynomials by recombining their real factors")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Recombination backend.
    #[arg(long, global = true, default_value = "e", value_parser = parse_backend)]
    pub backend: Backend,
    /// Acceptance tolerance for recombination, traces and coefficients.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub eps: f64,
    #[arg(long, global = true, value_enum, default_value_t = PrecisionArg::Auto)]
    pub precision: PrecisionArg,
    /// Worker threads; defaults to the number of physical cores.
    #[arg(long, global = true, env = "RFR_WORKERS")]
    pub workers: Option<usize>,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Comma-separated output.
    #[arg(long, global = true, conflicts_with = "json")]
    pub csv: bool,
    /// JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Count root finding and verification in the reported wall time.
    #[arg(long, global = true)]
    pub inclusive: bool,
}

/// Shields polynomial arguments such as `-2 0 1` or `-x^2+1` from option
/// parsing by giving them a leading space, which the parsers ignore.
pub fn normalize_args<I: IntoIterator<Item = String>>(args: I) -> Vec<String> {
    args.into_iter()
        .map(|a| {
            let mut chars = a.chars();
            let polynomial_like = chars.next() == Some('-')
                && (a.contains(char::is_whitespace)
                    || chars.next().is_some_and(|c| c.is_ascii_digit() || c == 'x' || c == 'X'));
            if polynomial_like {
                format!(" {a}")
            } else {
                a
            }
        })
        .collect()
}

fn parse_backend(s: &str) -> Result<Backend, String> {
    s.parse().map_err(|e| format!("{e}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PrecisionArg {
    Double,
    Extended,
    Auto,
}

impl From<PrecisionArg> for Precision {
    fn from(p: PrecisionArg) -> Self {
        match p {
            PrecisionArg::Double => Precision::Double,
            PrecisionArg::Extended => Precision::Extended,
            PrecisionArg::Auto => Precision::Auto,
        }
    }
}

impl CommonArgs {
    pub fn workers(&self) -> usize {
        self.workers
            .unwrap_or_else(num_cpus::get_physical)
            .max(1)
    }

    pub fn factor_options(&self) -> FactorOptions {
        FactorOptions {
            backend: self.backend,
            tolerance: ToleranceConfig {
                eps: self.eps,
                precision: self.precision.into(),
                ..ToleranceConfig::default()
            },
            workers: self.workers(),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factor polynomials given as arguments, or one per line on stdin.
    Factor(FactorArgs),
    /// Time random reducible inputs and print one CSV row per run.
    Bench(BenchArgs),
    /// Print a test polynomial as a coefficient list.
    Gen(GenArgs),
    /// Run the built-in consistency suites.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct FactorArgs {
    /// Coefficient lists (`1 0 -10 0 1`, low to high) or symbolic forms
    /// (`x^4 - 10x^2 + 1`).
    pub inputs: Vec<String>,
    /// Also print the computed roots of each square-free part.
    #[arg(long)]
    pub dump_roots: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Even degrees to run.
    #[arg(long, value_delimiter = ',', default_values_t = [8, 12, 16, 20, 24, 28, 32, 36, 40])]
    pub degrees: Vec<usize>,
    /// Backends to run; overrides --backend.
    #[arg(long, value_delimiter = ',', value_parser = parse_backend)]
    pub backends: Vec<Backend>,
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    #[arg(long, default_value_t = 100)]
    pub coeff_bound: i64,
    /// Omit the header row.
    #[arg(long)]
    pub no_header: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Random,
    Swinnerton,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub kind: GenKind,
    /// Degree of a random reducible product; must be even.
    #[arg(short, long, default_value_t = 8)]
    pub degree: usize,
    /// Index of the Swinnerton-Dyer polynomial (degree 2^k).
    #[arg(short, long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, default_value_t = 100)]
    pub coeff_bound: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SelftestLevel {
    Quick,
    Full,
}

/// Deliberate corruption used to check that the self-test can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Drop one candidate from the backend under test.
    Oracle,
    /// Inflate the measured insertion cost.
    Probes,
    /// Corrupt a reported factor before the certificate check.
    Certificate,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(value_enum, default_value_t = SelftestLevel::Quick)]
    pub level: SelftestLevel,
    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Option<Fault>,
}
