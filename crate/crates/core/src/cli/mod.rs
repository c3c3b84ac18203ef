//! The `higgsmot` command line: compute, tabulate and verify classes.

pub mod cache;
pub mod document;
pub mod render;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::curvezeta::{make_curve, CurveModel};
use crate::exactring::ClassRepr;
use crate::pipeline::{mss_class, mss_degree_needed, twist_for, HiggsTable, PipelineError};
use crate::residues::MAX_Z_VARS;

use cache::{default_root, Cache, CacheError};
use document::{ClassDocument, Truncation, SCHEMA_VERSION};
pub use verify::{CheckResult, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

const DEFAULT_MAX_DEGREE: u32 = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "higgsmot", version, about = "Motivic classes of semistable Higgs bundles on curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Genus of the curve.
    #[arg(long)]
    genus: u32,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Cache root; defaults to $HIGGSMOT_CACHE_DIR, then the user cache directory.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Skip the cache entirely.
    #[arg(long)]
    no_cache: bool,
    /// Largest z-degree the computation may expand to.
    #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
    max_degree: u32,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Class of the stack of semistable Higgs bundles of rank r and degree d.
    #[command(allow_negative_numbers = true)]
    Higgs {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        rank: u32,
        #[arg(long)]
        degree: i64,
    },
    /// Class of the stack of rank-r connections.
    Conn {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        rank: u32,
    },
    /// H_{r,d} for every r <= rank and 0 <= d <= degree.
    #[command(allow_negative_numbers = true)]
    Table {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        rank: u32,
        #[arg(long)]
        degree: i64,
    },
    /// Run verification suites.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Largest rank used by rank-dependent suites.
        #[arg(long, default_value_t = 2)]
        rank: u32,
        #[arg(long = "suite", value_enum, value_delimiter = ',', required = true)]
        suites: Vec<Suite>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Higgs,
    Conn,
    Table,
    Verify,
}

/// A validated request, independent of how it was parsed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComputeRequest {
    pub command: CommandKind,
    pub genus: u32,
    pub rank: u32,
    pub degree: Option<i64>,
    pub suites: Vec<Suite>,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
    pub use_cache: bool,
    pub max_degree: u32,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error(transparent)]
    Cache(#[from] CacheError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Pipeline(PipelineError::InsufficientTruncation { .. }) => EXIT_RESOURCE,
            CliError::Pipeline(_) => EXIT_CHECK_FAILED,
            CliError::Cache(_) => EXIT_RESOURCE,
        }
    }
}

impl ComputeRequest {
    fn from_command(cmd: Command) -> ComputeRequest {
        let (command, common, rank, degree, suites) = match cmd {
            Command::Higgs { common, rank, degree } => (CommandKind::Higgs, common, rank, Some(degree), vec![]),
            Command::Conn { common, rank } => (CommandKind::Conn, common, rank, None, vec![]),
            Command::Table { common, rank, degree } => (CommandKind::Table, common, rank, Some(degree), vec![]),
            Command::Verify { common, rank, suites } => (CommandKind::Verify, common, rank, None, suites),
        };
        ComputeRequest {
            command,
            genus: common.genus,
            rank,
            degree,
            suites,
            format: common.format,
            cache_dir: common.cache_dir,
            use_cache: !common.no_cache,
            max_degree: common.max_degree,
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.rank == 0 {
            return Err(CliError::Usage("--rank must be positive".into()));
        }
        match self.command {
            CommandKind::Higgs | CommandKind::Table if self.degree.is_none() => {
                Err(CliError::Usage("--degree is required".into()))
            }
            CommandKind::Table if self.degree < Some(0) => {
                Err(CliError::Usage("table degrees start at 0".into()))
            }
            CommandKind::Verify if self.suites.is_empty() => Err(CliError::Usage("at least one --suite is required".into())),
            _ => Ok(()),
        }
    }

    fn curve(&self) -> CurveModel {
        make_curve(self.genus as i64).expect("genus is nonnegative")
    }

    fn cache(&self) -> Option<Cache> {
        if !self.use_cache {
            return None;
        }
        default_root(self.cache_dir.as_deref()).map(|root| Cache::new(&root))
    }

    fn check_budget(&self, need_r: u32, need_d: u32) -> Result<(), CliError> {
        if need_r as usize > MAX_Z_VARS || need_d > self.max_degree {
            return Err(PipelineError::InsufficientTruncation {
                need_r,
                need_d,
                have_r: MAX_Z_VARS as u32,
                have_d: self.max_degree,
            }
            .into());
        }
        Ok(())
    }
}

/// `[M^ss_{r,d}]` (or `[Conn_r]` with `d = 0`) as a document, through the cache.
pub fn cmd_compute(req: &ComputeRequest) -> Result<ClassDocument, CliError> {
    req.validate()?;
    let d = match req.command {
        CommandKind::Higgs => req.degree.unwrap(),
        CommandKind::Conn => 0,
        _ => return Err(CliError::Usage("not a compute command".into())),
    };
    let (g, r) = (req.genus, req.rank);
    let key = format!("mss-g{g}-r{r}-d{d}");
    let cache = req.cache();
    if let Some(cache) = &cache {
        match cache.get(&key) {
            Ok(Some(doc)) => return Ok(doc),
            Ok(None) => {}
            Err(e) => eprintln!("warning: ignoring cache entry: {e}"),
        }
    }
    let need_d = mss_degree_needed(g, r, d);
    req.check_budget(r, need_d)?;
    let x = mss_class(&req.curve(), r, d)?;
    let trunc = Truncation { r_max: r, d_max: need_d, twist: twist_for(g, r, d) };
    let doc = ClassDocument::new(g, r, d, trunc, &x);
    if let Some(cache) = &cache {
        if let Err(e) = cache.put(&key, &doc) {
            eprintln!("warning: could not write cache: {e}");
        }
    }
    Ok(doc)
}

#[derive(Debug, Clone, Serialize)]
struct TableEntry {
    rank: u32,
    degree: u32,
    class: ClassRepr,
}

#[derive(Debug, Clone, Serialize)]
struct TableDocument {
    schema_version: String,
    genus: u32,
    rank: u32,
    degree: i64,
    entries: Vec<TableEntry>,
}

fn cmd_table(req: &ComputeRequest, out: &mut dyn Write) -> Result<(), CliError> {
    req.validate()?;
    let d_max = req.degree.unwrap() as u32;
    req.check_budget(req.rank, d_max)?;
    let t = HiggsTable::shared(&req.curve(), req.rank, d_max)?;
    let mut entries = Vec::new();
    for r in 1..=req.rank {
        for d in 0..=d_max {
            entries.push((r, d, t.h(r, d)?));
        }
    }
    match req.format {
        Format::Json => {
            let doc = TableDocument {
                schema_version: SCHEMA_VERSION.into(),
                genus: req.genus,
                rank: req.rank,
                degree: d_max as i64,
                entries: entries
                    .into_iter()
                    .map(|(rank, degree, x)| TableEntry { rank, degree, class: x.into() })
                    .collect(),
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap()).ok();
        }
        Format::Text => {
            for (r, d, x) in entries {
                writeln!(out, "H[{r},{d}] = {}", render::text(&x)).ok();
            }
        }
        Format::Latex => {
            writeln!(out, "\\begin{{align*}}").ok();
            for (r, d, x) in entries {
                writeln!(out, "H_{{{r},{d}}} &= {} \\\\", render::latex(&x)).ok();
            }
            writeln!(out, "\\end{{align*}}").ok();
        }
    }
    Ok(())
}

pub fn cmd_verify(req: &ComputeRequest) -> Result<Vec<CheckResult>, CliError> {
    req.validate()?;
    Ok(verify::run(&req.curve(), req.rank, &req.suites))
}

fn print_document(doc: &ClassDocument, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let x = doc.class().map_err(|e| CliError::Usage(e.to_string()))?;
    let text = match format {
        Format::Json => doc.to_json(),
        Format::Text => render::text(&x),
        Format::Latex => render::latex(&x),
    };
    writeln!(out, "{text}").ok();
    Ok(())
}

fn execute(req: &ComputeRequest, out: &mut dyn Write) -> Result<i32, CliError> {
    match req.command {
        CommandKind::Higgs | CommandKind::Conn => {
            let doc = cmd_compute(req)?;
            print_document(&doc, req.format, out)?;
            Ok(EXIT_OK)
        }
        CommandKind::Table => cmd_table(req, out).map(|()| EXIT_OK),
        CommandKind::Verify => {
            let results = cmd_verify(req)?;
            for r in &results {
                writeln!(out, "{}", r.line()).ok();
            }
            Ok(if results.iter().all(|r| r.passed) { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if !e.use_stderr() {
                e.print().ok();
                return EXIT_OK;
            }
            let msg = e.render().to_string();
            eprint!("{msg}");
            if !msg.contains("Usage:") {
                eprintln!("\n{}", Cli::command().render_usage());
            }
            return EXIT_USAGE;
        }
    };
    let req = ComputeRequest::from_command(cli.command);
    match execute(&req, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
