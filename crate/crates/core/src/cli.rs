//! Command-line front end.
//!
//! Exit codes: 0 success, 1 invalid flags or configuration, 2 rejected
//! input (bad catalog, invalid embedding, budget below seed size), 3 I/O
//! failure, 4 disconnected graph.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::catalog::{builtin_catalog, known_irreducible_count, verify_catalog, SeedCatalog};
use crate::enumerate::{enumerate_with, graph_isomorphism_counts, EnumerateOptions};
use crate::error::Error;
use crate::format::{self, FileKind};
use crate::graph::{MultiGraph, SimpleGraph};
use crate::laplacian::spanning_tree_count;
use crate::output;
use crate::partition::{
    general_surface_sum, partial_comparison, sphere_lower_bound, SeriesConfig, SeriesMode,
    Truncation, TutteConstant, DEFAULT_EPS,
};
use crate::surface::{validate_triangulation, SurfaceSpec};
use crate::tutte::{tutte, tutte_eval, DEFAULT_EDGE_LIMIT};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_REJECTED: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_DISCONNECTED: i32 = 4;

/// Caps the worker count for enumeration.
pub const THREADS_ENV: &str = "TRISTRING_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "tristring",
    version,
    about = "Surface triangulations, spanning trees and string partition sums"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate non-isomorphic triangulations from a seed catalog.
    Enumerate(EnumerateArgs),
    /// Count spanning trees of a graph or embedding file.
    Kappa(KappaArgs),
    /// Evaluate the partition-function series.
    Z(ZArgs),
    /// Check a catalog or embedding file.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// Built-in catalog to use when no --catalog is given.
    #[arg(long, default_value = "sphere", value_parser = parse_surface)]
    pub surface: SurfaceSpec,
    #[arg(long)]
    pub catalog: Option<PathBuf>,
    #[arg(long)]
    pub max_vertices: usize,
    /// Output path for the counts JSON (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Directory for one embedding file per class.
    #[arg(long)]
    pub classes_dir: Option<PathBuf>,
    /// Also report counts after merging graph-isomorphic classes.
    #[arg(long)]
    pub graph_iso: bool,
}

#[derive(Debug, Args)]
pub struct KappaArgs {
    /// Graph (`n m` edge list) or embedding file.
    pub file: PathBuf,
    /// Also compute the Tutte polynomial and check T(1,1) against the count.
    #[arg(long)]
    pub tutte: bool,
    #[arg(long, default_value_t = DEFAULT_EDGE_LIMIT)]
    pub edge_limit: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    LowerBound,
    Exact,
    Partial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstantArg {
    Reported,
    Printed,
}

#[derive(Debug, Args)]
pub struct ZArgs {
    #[arg(long, default_value = "sphere", value_parser = parse_surface)]
    pub surface: SurfaceSpec,
    #[arg(long, value_enum)]
    pub mode: ModeArg,
    #[arg(long)]
    pub mu: f64,
    #[arg(long = "dim")]
    pub dim: u32,
    #[arg(long, conflicts_with = "k_max")]
    pub eps: Option<f64>,
    #[arg(long)]
    pub k_max: Option<usize>,
    #[arg(long)]
    pub catalog: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,
    /// Leading constant of the asymptotic sphere count in lower-bound mode.
    #[arg(long, value_enum, default_value = "reported")]
    pub tutte_constant: ConstantArg,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Catalog or embedding file.
    pub file: PathBuf,
}

fn parse_surface(s: &str) -> Result<SurfaceSpec, String> {
    SurfaceSpec::from_name(s).ok_or_else(|| {
        format!("unknown surface `{s}` (sphere, torus, projective-plane, orientable-<g>, nonorientable-<g>)")
    })
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Io(_) => EXIT_IO,
            Error::Disconnected => EXIT_DISCONNECTED,
            Error::Config(_) | Error::EdgeLimitExceeded { .. } => EXIT_USAGE,
            _ => EXIT_REJECTED,
        };
        Failure::new(code, e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_IO, format!("cannot read {}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure::new(EXIT_IO, format!("cannot write {}: {e}", p.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::new(EXIT_IO, e.to_string())),
    }
}

fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
}

fn load_catalog(path: Option<&Path>, surface: SurfaceSpec) -> Result<SeedCatalog, Failure> {
    match path {
        Some(p) => Ok(format::parse_catalog(&read(p)?)?),
        None => {
            let cat = builtin_catalog(surface);
            if cat.seeds.is_empty() {
                return Err(Failure::new(
                    EXIT_USAGE,
                    format!("no built-in catalog for {}; pass --catalog", surface.name()),
                ));
            }
            Ok(cat)
        }
    }
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
            } else {
                let _ = write!(stdout, "{e}");
            }
            return code;
        }
    };
    let outcome = match &config.command {
        Command::Enumerate(a) => cmd_enumerate(a, stdout, stderr),
        Command::Kappa(a) => cmd_kappa(a, stdout),
        Command::Z(a) => cmd_z(a, stdout, stderr),
        Command::Verify(a) => cmd_verify(a, stdout),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn cmd_enumerate(
    a: &EnumerateArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    let catalog = load_catalog(a.catalog.as_deref(), a.surface)?;
    let report = verify_catalog(&catalog);
    if !report.valid() {
        return Err(Failure::new(
            EXIT_REJECTED,
            format!("catalog rejected\n{report}"),
        ));
    }
    let options = EnumerateOptions {
        threads: threads_from_env(),
    };
    let result = enumerate_with(&catalog, a.max_vertices, &options).map_err(|e| match e {
        Error::BelowSeedSize { .. } => {
            Failure::new(EXIT_REJECTED, format!("{e} (below seed size)"))
        }
        other => other.into(),
    })?;

    if let Some(dir) = &a.classes_dir {
        std::fs::create_dir_all(dir).map_err(|e| Failure::new(EXIT_IO, e.to_string()))?;
        for (&n, level) in &result.classes {
            for (i, t) in level.values().enumerate() {
                let path = dir.join(format!("{}_v{n:03}_{i:05}.emb", result.surface.name()));
                let text = format::write_embedding(t, catalog.surface.orientable);
                std::fs::write(&path, text).map_err(|e| {
                    Failure::new(EXIT_IO, format!("cannot write {}: {e}", path.display()))
                })?;
            }
        }
    }
    if a.graph_iso {
        let _ = writeln!(
            stderr,
            "graph-isomorphism counts: {:?}",
            graph_isomorphism_counts(&result)
        );
    }
    write_out(a.out.as_deref(), &output::enumeration_json(&result), stdout)?;
    Ok(EXIT_OK)
}

fn cmd_kappa(a: &KappaArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let text = read(&a.file)?;
    let graph = match format::sniff(&text) {
        Some(FileKind::Graph) => SimpleGraph::parse(&text)?,
        Some(FileKind::Embedding) => {
            let file = format::parse_embedding(&text)?;
            file.triangulation.graph()?
        }
        _ => {
            return Err(Failure::new(
                EXIT_REJECTED,
                "expected a graph (`n m`) or embedding (`V E flag`) file",
            ))
        }
    };
    if !graph.is_connected() {
        return Err(Failure::new(
            EXIT_DISCONNECTED,
            "graph is disconnected; it has no spanning tree",
        ));
    }
    let kappa = spanning_tree_count(&graph);
    let mut out = String::new();
    if a.tutte {
        let poly = tutte(&MultiGraph::from(&graph), a.edge_limit)?;
        let at_one = tutte_eval(&poly, 1, 1);
        if at_one != kappa {
            return Err(Failure::new(
                EXIT_REJECTED,
                format!("T(1,1) = {at_one} disagrees with the determinant count {kappa}"),
            ));
        }
        out.push_str(&format!("{poly}\n"));
    }
    out.push_str(&format!("{kappa}\n"));
    write_out(None, &out, stdout)?;
    Ok(EXIT_OK)
}

fn cmd_z(a: &ZArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Failure> {
    let mode = match a.mode {
        ModeArg::LowerBound => SeriesMode::LowerBoundSphere,
        ModeArg::Exact => SeriesMode::ExactEnumerated,
        ModeArg::Partial => SeriesMode::PartialSingleClass,
    };
    let truncation = match (a.eps, a.k_max) {
        (Some(eps), None) => Truncation::Tolerance(eps),
        (None, Some(k)) => Truncation::KMax(k),
        (None, None) if mode == SeriesMode::ExactEnumerated => {
            return Err(Failure::new(EXIT_USAGE, "exact mode needs --k-max"));
        }
        (None, None) => Truncation::Tolerance(DEFAULT_EPS),
        (Some(_), Some(_)) => {
            return Err(Failure::new(EXIT_USAGE, "--eps and --k-max are exclusive"))
        }
    };
    let mut cfg = SeriesConfig::new(a.mu, a.dim, truncation, mode);
    cfg.tutte_constant = match a.tutte_constant {
        ConstantArg::Reported => TutteConstant::Reported,
        ConstantArg::Printed => TutteConstant::Printed,
    };
    cfg.threads = threads_from_env();
    cfg.validate()
        .map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;

    let text = match mode {
        SeriesMode::LowerBoundSphere => {
            if a.surface != SurfaceSpec::SPHERE {
                return Err(Failure::new(
                    EXIT_USAGE,
                    "lower-bound mode is only defined for the sphere",
                ));
            }
            let r = sphere_lower_bound(&cfg)?;
            match a.format {
                OutputFormat::Json => output::partition_json(&r),
                OutputFormat::Csv => output::partition_csv(&[&r]),
            }
        }
        SeriesMode::ExactEnumerated => {
            let catalog = load_catalog(a.catalog.as_deref(), a.surface)?;
            let r = general_surface_sum(a.surface, &catalog, &cfg)?;
            if let Some(expected) = known_irreducible_count(catalog.surface) {
                if catalog.seeds.len() < expected {
                    let _ = writeln!(
                        stderr,
                        "note: catalog has {} of the {expected} irreducible triangulations of the {}; \
                         classes reachable only from the missing seeds are not counted",
                        catalog.seeds.len(),
                        catalog.surface.name()
                    );
                }
            }
            match a.format {
                OutputFormat::Json => output::partition_json(&r),
                OutputFormat::Csv => output::partition_csv(&[&r]),
            }
        }
        SeriesMode::PartialSingleClass => {
            let p = partial_comparison(&cfg)?;
            match a.format {
                OutputFormat::Json => output::partial_json(&p),
                OutputFormat::Csv => output::partition_csv(&[&p.sphere, &p.torus]),
            }
        }
    };
    write_out(a.out.as_deref(), &text, stdout)?;
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let text = read(&a.file)?;
    let (report, note) = match format::sniff(&text) {
        Some(FileKind::Catalog) => {
            let catalog = format::parse_catalog(&text)?;
            let note = known_irreducible_count(catalog.surface)
                .filter(|&n| n != catalog.seeds.len())
                .map(|n| {
                    format!(
                        "note: {} seeds given, {n} irreducible triangulations are known for the {}\n",
                        catalog.seeds.len(),
                        catalog.surface.name()
                    )
                });
            (verify_catalog(&catalog), note)
        }
        Some(FileKind::Embedding) => {
            let file = format::parse_embedding(&text)?;
            let mut report = file.header_report();
            report
                .violations
                .extend(validate_triangulation(&file.triangulation).violations);
            (report, None)
        }
        _ => {
            return Err(Failure::new(
                EXIT_REJECTED,
                "expected a catalog or embedding file",
            ))
        }
    };
    let mut out = report.to_string();
    if let Some(n) = note {
        out.push_str(&n);
    }
    write_out(None, &out, stdout)?;
    Ok(if report.valid() {
        EXIT_OK
    } else {
        EXIT_REJECTED
    })
}
