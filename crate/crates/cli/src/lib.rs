//! Command-line front end for `metrilie`: document I/O, the bundled example
//! library and report rendering.
//!
//! [`run`] is the whole program minus process setup, so tests can drive it
//! in-process.

pub mod doc;
pub mod error;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use metrilie::complex::{structures_on_factors, verify_complex_structure};
use metrilie::decomp::{decompose_with, DecomposeOptions};
use metrilie::lab::{self, BlockSpec, ScanOptions};
use metrilie::{catalog, scalar, Backend, Matrix, MetricLieAlgebra};
use serde_json::{json, Value};

use crate::doc::AlgebraDoc;
use crate::error::{exit, CliError};
use crate::report::Report;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "metrilie", version, about = "Orthogonal decompositions and complex structures of metric Lie algebras")]
pub struct Cli {
    #[command(flatten)]
    pub flags: Flags,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Flags {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Zero tolerance of the numeric backend.
    #[arg(long, global = true, default_value_t = scalar::DEFAULT_TOLERANCE)]
    pub tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true, value_enum, default_value_t = BackendArg::Exact)]
    pub backend: BackendArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Exact,
    Numeric,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a document and check the Lie algebra and metric axioms.
    Check { path: String },
    /// Orthogonal decomposition into irreducible factors.
    Decompose { path: String },
    /// All orthogonal bi-invariant complex structures.
    Jstructs { path: String },
    /// Metric constructions and sampling experiments.
    #[command(subcommand)]
    Lab(LabCommand),
    /// Bundled example algebras.
    #[command(subcommand)]
    Examples(ExamplesCommand),
}

#[derive(Debug, Subcommand)]
pub enum LabCommand {
    /// Metric on a direct sum of blocks with exactly `l` irreducible factors.
    FactorCount {
        /// Example keys or document paths, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        blocks: Vec<String>,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = lab::DEFAULT_SPREAD)]
        spread: i64,
    },
    /// Metric making the direct sum of the blocks irreducible.
    Irreducible {
        #[arg(long, value_delimiter = ',', required = true)]
        blocks: Vec<String>,
        #[arg(long, default_value_t = lab::DEFAULT_SPREAD)]
        spread: i64,
    },
    /// Count complex structures on an `l`-factor Hermitian metric.
    Jcount {
        #[arg(long, value_delimiter = ',', required = true)]
        blocks: Vec<String>,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = lab::DEFAULT_SPREAD)]
        spread: i64,
    },
    /// Count complex structures across random metrics on one algebra.
    Scan {
        /// Example key or document path.
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Documents or example keys whose Gram matrices are used for the
        /// first trials.
        #[arg(long, value_delimiter = ',')]
        leading: Vec<String>,
        #[arg(long, default_value_t = lab::DEFAULT_SPREAD)]
        spread: i64,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExamplesCommand {
    List,
    Show { key: String },
}

/// Parse arguments, run the command, write the output; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::PARSE } else { exit::OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{rendered}") } else { write!(out, "{rendered}") };
            return code;
        }
    };
    let flags = cli.flags.clone();
    let name = command_name(&cli.command);
    let outcome = if flags.tol.is_finite() && flags.tol > 0.0 {
        scalar::set_tolerance(flags.tol);
        dispatch(&cli.command, &flags)
    } else {
        Err(Failure::Error(CliError::Usage(format!("--tol must be a positive number, got {}", flags.tol))))
    };
    match outcome {
        Ok(Output::Document(text)) => {
            let _ = writeln!(out, "{text}");
            exit::OK
        }
        Ok(Output::Report(r)) => {
            emit(out, &flags, name, &r);
            exit::OK
        }
        Err(Failure::Report(r, code)) => {
            emit(out, &flags, name, &r);
            code
        }
        Err(Failure::Error(e)) => {
            let code = e.exit_code();
            let _ = writeln!(err, "error: {}", e.message());
            if flags.format == Format::Structured {
                let mut doc = envelope(&flags, name);
                doc["error"] = json!({ "kind": e.kind(), "message": e.message(), "exit_code": code });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"));
            }
            code
        }
    }
}

enum Output {
    Report(Report),
    /// Raw document text, printed as is in both formats.
    Document(String),
}

enum Failure {
    /// A report describing a failed check, with its exit code.
    Report(Report, i32),
    Error(CliError),
}

impl<E: Into<CliError>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Error(e.into())
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Decompose { .. } => "decompose",
        Command::Jstructs { .. } => "jstructs",
        Command::Lab(LabCommand::FactorCount { .. }) => "lab factor-count",
        Command::Lab(LabCommand::Irreducible { .. }) => "lab irreducible",
        Command::Lab(LabCommand::Jcount { .. }) => "lab jcount",
        Command::Lab(LabCommand::Scan { .. }) => "lab scan",
        Command::Examples(ExamplesCommand::List) => "examples list",
        Command::Examples(ExamplesCommand::Show { .. }) => "examples show",
    }
}

fn envelope(flags: &Flags, command: &str) -> Value {
    json!({
        "schema": SCHEMA_VERSION,
        "command": command,
        "flags": {
            "seed": flags.seed,
            "tol": flags.tol,
            "format": match flags.format { Format::Text => "text", Format::Structured => "structured" },
            "backend": match flags.backend { BackendArg::Exact => "exact", BackendArg::Numeric => "numeric" },
        },
    })
}

fn emit(out: &mut dyn Write, flags: &Flags, command: &str, r: &Report) {
    match flags.format {
        Format::Text => {
            let _ = write!(out, "{}", r.text);
        }
        Format::Structured => {
            let mut doc = envelope(flags, command);
            doc["result"] = r.data.clone();
            if r.backend == Backend::Numeric {
                doc["tol"] = json!(flags.tol);
            }
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
    }
}

fn read(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_string(), source })
}

fn apply_backend(a: MetricLieAlgebra, j: Option<Matrix>, flags: &Flags) -> (MetricLieAlgebra, Option<Matrix>) {
    match flags.backend {
        BackendArg::Exact => (a, j),
        BackendArg::Numeric => (a.to_numeric(), j.map(|m| m.to_numeric())),
    }
}

fn load_path(path: &str, flags: &Flags) -> Result<(MetricLieAlgebra, Option<Matrix>), CliError> {
    let (a, j) = doc::load(&read(path)?)?;
    Ok(apply_backend(a, j, flags))
}

/// An example key or a document path.
fn resolve(source: &str) -> Result<MetricLieAlgebra, CliError> {
    if let Some(a) = catalog::lookup(source) {
        return Ok(a);
    }
    if std::path::Path::new(source).exists() {
        return Ok(doc::load(&read(source)?)?.0);
    }
    Err(CliError::UnknownExample(source.to_string()))
}

fn exact_only(flags: &Flags) -> Result<(), CliError> {
    match flags.backend {
        BackendArg::Exact => Ok(()),
        BackendArg::Numeric => Err(CliError::Usage("lab constructions run on the exact backend only".into())),
    }
}

fn block_spec(blocks: &[String], flags: &Flags, spread: i64) -> Result<BlockSpec, CliError> {
    exact_only(flags)?;
    if spread < 0 {
        return Err(CliError::Usage(format!("--spread must be non-negative, got {spread}")));
    }
    let algebras = blocks.iter().map(|b| resolve(b)).collect::<Result<Vec<_>, _>>()?;
    let mut spec = BlockSpec::new(algebras, flags.seed)?;
    spec.spread = spread;
    Ok(spec)
}

fn dispatch(command: &Command, flags: &Flags) -> Result<Output, Failure> {
    let options = DecomposeOptions::with_seed(flags.seed);
    match command {
        Command::Check { path } => {
            let parsed = AlgebraDoc::from_json(&read(path)?)?.parse()?;
            let jacobi = parsed.algebra.check_jacobi();
            if !jacobi.passes() {
                let r = report::jacobi_failure(&parsed.name, parsed.algebra.labels(), &jacobi);
                return Err(Failure::Report(r, exit::AXIOM));
            }
            let (a, j) = parsed.into_metric_algebra()?;
            let (a, j) = apply_backend(a, j, flags);
            let cert = j.as_ref().map(|j| verify_complex_structure(&a, j));
            let r = report::check(&a, &jacobi, cert.as_ref());
            match cert {
                Some(c) if !c.passes() => Err(Failure::Report(r, exit::AXIOM)),
                _ => Ok(Output::Report(r)),
            }
        }
        Command::Decompose { path } => {
            let (a, _) = load_path(path, flags)?;
            let d = decompose_with(&a, &options)?;
            Ok(Output::Report(report::decomposition(&a, &d)))
        }
        Command::Jstructs { path } => {
            let (a, _) = load_path(path, flags)?;
            let d = decompose_with(&a, &options)?;
            let js = structures_on_factors(&a, &d)?;
            Ok(Output::Report(report::structures(&a, d.len(), &js)))
        }
        Command::Lab(lab_command) => run_lab(lab_command, flags),
        Command::Examples(ExamplesCommand::List) => {
            let mut text = String::new();
            let width = catalog::ENTRIES.iter().map(|e| e.key.len()).max().unwrap_or(0);
            for e in catalog::ENTRIES {
                text.push_str(&format!("{:width$}  {}\n", e.key, e.description));
            }
            let list: Vec<Value> =
                catalog::ENTRIES.iter().map(|e| json!({ "key": e.key, "description": e.description })).collect();
            Ok(Output::Report(Report { text, data: json!({ "examples": list }), backend: Backend::Exact }))
        }
        Command::Examples(ExamplesCommand::Show { key }) => {
            let a = catalog::lookup(key).ok_or_else(|| CliError::UnknownExample(key.clone()))?;
            Ok(Output::Document(AlgebraDoc::render(&a, None).to_json()))
        }
    }
}

fn run_lab(command: &LabCommand, flags: &Flags) -> Result<Output, Failure> {
    match command {
        LabCommand::FactorCount { blocks, l, spread } => {
            let spec = block_spec(blocks, flags, *spread)?;
            let c = lab::make_metric_with_factor_count(&spec, *l)?;
            Ok(Output::Report(report::construction(&c, blocks, *spread)))
        }
        LabCommand::Irreducible { blocks, spread } => {
            let spec = block_spec(blocks, flags, *spread)?;
            let c = lab::make_irreducible_metric(&spec)?;
            Ok(Output::Report(report::construction(&c, blocks, *spread)))
        }
        LabCommand::Jcount { blocks, l, spread } => {
            let spec = block_spec(blocks, flags, *spread)?;
            let r = lab::jcount_experiment(&spec, *l)?;
            Ok(Output::Report(report::jcount(&r, blocks, *spread)))
        }
        LabCommand::Scan { algebra, trials, leading, spread } => {
            exact_only(flags)?;
            if *spread < 0 {
                return Err(CliError::Usage(format!("--spread must be non-negative, got {spread}")).into());
            }
            let a = resolve(algebra)?;
            let mut options = ScanOptions::new(*trials, flags.seed);
            options.spread = *spread;
            for source in leading {
                options.leading.push(resolve(source)?.metric().clone());
            }
            let r = lab::metric_scan(&a, &options)?;
            Ok(Output::Report(report::scan(a.name(), &r)))
        }
    }
}
