//! `contextlab` command-line front end.
//!
//! Exit codes: 0 success (findings such as "no two-valued states" are data),
//! 2 usage error, 3 input or validation error, 4 sweep or search budget
//! exceeded.

pub mod report;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use contextlab_core::coloring::{chromatic_number, ColoringError, DEFAULT_VERTEX_CAP};
use contextlab_core::enumeration::{
    additive_histogram, enumerate_two_valued_states, product_sum_histogram, EnumerationError, SweepOptions,
    DEFAULT_MAX_BITS,
};
use contextlab_core::linalg::{orthonormalize, reflector_between, LinalgError};
use contextlab_core::quantum::QuantumError;
use contextlab_core::rational::ParseRationalError;
use contextlab_core::{ContextHypergraph, EigenvalueScheme, HouseholderReflector, Rational, Vector};

use report::{AnalysisReport, ReportError, Section};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Input(_) => EXIT_INPUT,
            CliError::Budget(_) => EXIT_BUDGET,
        }
    }
}

impl From<EnumerationError> for CliError {
    fn from(e: EnumerationError) -> Self {
        match e {
            EnumerationError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<ColoringError> for CliError {
    fn from(e: ColoringError) -> Self {
        CliError::Budget(e.to_string())
    }
}

impl From<QuantumError> for CliError {
    fn from(e: QuantumError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<LinalgError> for CliError {
    fn from(e: LinalgError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ReportError> for CliError {
    fn from(e: ReportError) -> Self {
        match e {
            ReportError::Enumeration(e) => e.into(),
            ReportError::Quantum(e) => e.into(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "contextlab",
    version,
    about = "Householder operators and classical value assignments on context hypergraphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Built-in configuration (ceg18, std2, std3, std4, pair5)
    #[arg(long, conflicts_with = "file")]
    pub preset: Option<String>,
    /// Hypergraph file
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Write the histogram as `sum,count` CSV
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Number of counter partitions for the sweep
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Largest number of observables to sweep exhaustively
    #[arg(long, default_value_t = DEFAULT_MAX_BITS)]
    pub max_bits: u32,
}

impl SweepArgs {
    fn options(&self) -> SweepOptions {
        SweepOptions { max_bits: self.max_bits, jobs: self.jobs.max(1) }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Orthogonality, completeness, occurrence degrees and faithfulness
    Validate {
        #[command(flatten)]
        input: Input,
    },
    /// Enumerate two-valued {0,1} states
    States {
        #[command(flatten)]
        input: Input,
    },
    /// Histogram of context-product sums over all ±1 assignments
    Products {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Histogram of context sums over all ±1 assignments
    Additive {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Quantum predictions for an eigenvalue scheme
    Quantum {
        #[command(flatten)]
        input: Input,
        /// householder | projector | primes:p1,...,pd | custom:m1,...,md
        #[arg(long, default_value = "householder")]
        scheme: String,
        /// 1-based member carrying the -1 eigenvalue in context sums
        #[arg(long, default_value_t = 1)]
        minus_slot: usize,
    },
    /// Exact chromatic number of the shared-context graph
    Chromatic {
        #[command(flatten)]
        input: Input,
        /// Refuse exact coloring above this many observables
        #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
        max_vertices: usize,
    },
    /// Ad-hoc Householder operations on inline vectors like `2,1` or `1/2,-1`
    Householder {
        #[command(subcommand)]
        op: HouseholderOp,
    },
    /// Every analysis in one report
    Report {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        sweep: SweepArgs,
        /// 1-based member carrying the -1 eigenvalue in context sums
        #[arg(long, default_value_t = 1)]
        minus_slot: usize,
        /// Refuse exact coloring above this many observables
        #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
        max_vertices: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum HouseholderOp {
    /// Reflect VECTOR through the hyperplane orthogonal to GENERATOR
    Reflect {
        /// Nonzero vector normal to the mirror, e.g. `1,1`
        generator: String,
        /// Vector to reflect, same dimension
        vector: String,
    },
    /// Reflector exchanging two vectors of equal norm
    Between {
        /// Source vector
        from: String,
        /// Target vector with the same squared norm
        to: String,
    },
    /// Householder orthonormalization (floating point)
    Ortho {
        /// Linearly independent vectors, processed in order
        #[arg(required = true)]
        vectors: Vec<String>,
    },
}

fn parse_vector(text: &str) -> Result<Vector<Rational>, CliError> {
    let comps = text
        .split(',')
        .map(|c| c.parse::<Rational>())
        .collect::<Result<Vec<_>, ParseRationalError>>()
        .map_err(|e| CliError::Usage(format!("bad vector `{text}`: {e}")))?;
    Ok(Vector::new(comps))
}

fn parse_float_vector(text: &str) -> Result<Vector<f64>, CliError> {
    let comps = text
        .split(',')
        .map(|c| match c.parse::<Rational>() {
            Ok(r) => Ok(r.to_f64()),
            Err(_) => c.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("bad vector `{text}`"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Vector::new(comps))
}

fn load(input: &Input) -> Result<(String, ContextHypergraph), CliError> {
    match (&input.preset, &input.file) {
        (Some(name), None) => ContextHypergraph::preset(name)
            .map(|h| (format!("preset {name}"), h))
            .map_err(|e| CliError::Input(e.to_string())),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
            ContextHypergraph::parse(&text)
                .map(|h| (path.display().to_string(), h))
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
        }
        _ => Err(CliError::Usage("give exactly one of --preset <name> or <file>".into())),
    }
}

fn write_csv(path: &Option<PathBuf>, csv: &str) -> Result<(), CliError> {
    if let Some(path) = path {
        fs::write(path, csv).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn slot_index(minus_slot: usize) -> Result<usize, CliError> {
    minus_slot.checked_sub(1).ok_or_else(|| CliError::Usage("--minus-slot is 1-based".into()))
}

fn single(section: Section) -> AnalysisReport {
    AnalysisReport { sections: vec![section] }
}

/// Runs one command and returns the report text.
pub fn execute(cli: Cli) -> Result<String, CliError> {
    let report = match cli.command {
        Command::Validate { input } => {
            let (label, h) = load(&input)?;
            let validation = h.validate();
            let faithful = h.verify_faithful_representation().ok();
            let text = AnalysisReport {
                sections: vec![
                    report::configuration_section(&label, &h),
                    report::validation_section(&h, &validation, faithful.as_ref()),
                ],
            }
            .to_string();
            if !validation.is_valid() {
                return Err(CliError::Input(format!("{text}validation failed")));
            }
            text
        }
        Command::States { input } => {
            let (_, h) = load(&input)?;
            single(report::states_section(&h, &enumerate_two_valued_states(&h))).to_string()
        }
        Command::Products { input, sweep } => {
            let (_, h) = load(&input)?;
            let hist = product_sum_histogram(&h, sweep.options())?;
            write_csv(&sweep.csv, &hist.to_csv())?;
            single(report::products_section(&h, &hist)).to_string()
        }
        Command::Additive { input, sweep } => {
            let (_, h) = load(&input)?;
            let hist = additive_histogram(&h, sweep.options())?;
            write_csv(&sweep.csv, &hist.to_csv())?;
            single(report::additive_section(&h, &hist)).to_string()
        }
        Command::Quantum { input, scheme, minus_slot } => {
            let (_, h) = load(&input)?;
            let scheme: EigenvalueScheme = scheme.parse().map_err(|e: QuantumError| CliError::Usage(e.to_string()))?;
            single(report::quantum_section(&h, &[scheme], slot_index(minus_slot)?)?).to_string()
        }
        Command::Chromatic { input, max_vertices } => {
            let (_, h) = load(&input)?;
            let coloring = chromatic_number(&h.adjacency_graph(), max_vertices)?;
            single(report::structure_section(&h, Ok(&coloring))).to_string()
        }
        Command::Householder { op } => householder(op)?,
        Command::Report { input, sweep, minus_slot, max_vertices } => {
            let (label, h) = load(&input)?;
            let report = report::full_report(&label, &h, sweep.options(), max_vertices, slot_index(minus_slot)?)?;
            if let Some(path) = &sweep.csv {
                let hist = product_sum_histogram(&h, sweep.options())?;
                write_csv(&Some(path.clone()), &hist.to_csv())?;
            }
            report.to_string()
        }
    };
    Ok(report)
}

fn householder(op: HouseholderOp) -> Result<String, CliError> {
    let mut out = String::new();
    match op {
        HouseholderOp::Reflect { generator, vector } => {
            let u = HouseholderReflector::from_vector(&parse_vector(&generator)?)?;
            let v = parse_vector(&vector)?;
            out.push_str(&format!("generator: {}\nmatrix:\n{}", u.generator(), u.matrix()));
            out.push_str(&format!("determinant: {}\n", u.matrix().determinant()));
            out.push_str(&format!("reflected: {}\n", u.reflect(&v)?));
        }
        HouseholderOp::Between { from, to } => {
            let (x, y) = (parse_vector(&from)?, parse_vector(&to)?);
            let u = reflector_between(&x, &y)?;
            out.push_str(&format!("generator: {}\nmatrix:\n{}", u.generator(), u.matrix()));
            out.push_str(&format!("image of {}: {}\n", x, u.reflect(&x)?));
            out.push_str(&format!("image of {}: {}\n", y, u.reflect(&y)?));
        }
        HouseholderOp::Ortho { vectors } => {
            let inputs = vectors.iter().map(|v| parse_float_vector(v)).collect::<Result<Vec<_>, _>>()?;
            let result = orthonormalize(&inputs)?;
            for (step, u) in &result.reflectors {
                out.push_str(&format!("step {}: generator {}\n", step + 1, fmt_floats(u.generator().components())));
            }
            for (i, q) in result.vectors.iter().enumerate() {
                out.push_str(&format!("q{}: {}\n", i + 1, fmt_floats(q.components())));
            }
        }
    }
    Ok(out)
}

fn fmt_floats(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| format!("{x:.12}")).collect();
    format!("({})", parts.join(", "))
}

/// Parses `args` (program name first), runs the command and writes the
/// report to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
