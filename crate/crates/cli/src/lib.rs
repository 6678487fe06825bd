//! Report assembly behind the `hermsym` binary.
//!
//! Every command returns a [`Report`]: the rendered artifact and the exit code
//! it should produce. Configuration problems surface as [`CliError::Config`]
//! (exit 2); failed computations as [`CliError::Failure`] (exit 1).

use std::fmt::Write as _;
use std::sync::Arc;

use hermsym_jordan::{space, SpaceDescriptor, SpaceSpec};
use serde::Serialize;

pub mod decompose;
pub mod describe;
pub mod hwv;
pub mod taylor;
pub mod verify;

pub use decompose::{cmd_decompose, BundleKind};
pub use describe::cmd_describe;
pub use hwv::cmd_hwv;
pub use taylor::cmd_taylor;
pub use verify::{cmd_verify, roots_suite, Outcome, Suite};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub space: Option<String>,
    pub seed: u64,
    pub samples: usize,
    pub max_total: u32,
    pub order: u32,
    pub format: Option<Format>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { space: None, seed: 0, samples: 20, max_total: 4, order: 2, format: None }
    }
}

impl RunConfig {
    pub fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    /// The `--space` value parsed, or a config error when it is missing.
    pub fn spec(&self) -> Result<SpaceSpec, CliError> {
        let s = self.space.as_deref().ok_or_else(|| CliError::Config("no space given (use --space)".into()))?;
        parse_spec(s)
    }

    pub fn header(&self, command: &str, space: &str) -> Header {
        Header {
            tool: "hermsym",
            version: VERSION,
            command: command.to_string(),
            space: space.to_string(),
            seed: self.seed,
            samples: self.samples,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

pub fn parse_spec(s: &str) -> Result<SpaceSpec, CliError> {
    s.parse::<SpaceSpec>().map_err(|e| CliError::Config(format!("invalid space {s:?}: {e}")))
}

/// The matrix model of a classical space; exceptional spaces are a config error.
pub fn descriptor(spec: &SpaceSpec) -> Result<Arc<SpaceDescriptor>, CliError> {
    if !spec.family().is_classical() {
        return Err(CliError::Config(format!("{spec} is available at root level only")));
    }
    space(&spec.to_string()).map_err(|e| CliError::Config(e.to_string()))
}

/// Comma-separated list of integers.
pub fn parse_list<T: std::str::FromStr>(what: &str, s: &str) -> Result<Vec<T>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| t.trim().parse::<T>().map_err(|_| CliError::Config(format!("invalid {what} {s:?}")))).collect()
}

/// Provenance block printed at the top of every report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Header {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub space: String,
    pub seed: u64,
    pub samples: usize,
}

impl Header {
    /// `# key: value` lines, used by the text and CSV renderings.
    pub fn comment_block(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {} {}", self.tool, self.version);
        let _ = writeln!(out, "# command: {}", self.command);
        let _ = writeln!(out, "# space: {}", self.space);
        let _ = writeln!(out, "# seed: {}", self.seed);
        let _ = writeln!(out, "# samples: {}", self.samples);
        out
    }
}

/// A rendered artifact and the exit code that goes with it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub body: String,
    pub exit: i32,
}

impl Report {
    pub fn ok(body: String) -> Self {
        Report { body, exit: 0 }
    }
}

/// JSON with the header as an extra top-level key.
pub(crate) fn json_with_header<T: Serialize>(header: &Header, payload: &T) -> String {
    #[derive(Serialize)]
    struct Wrapped<'a, T> {
        header: &'a Header,
        #[serde(flatten)]
        payload: &'a T,
    }
    let mut s = serde_json::to_string_pretty(&Wrapped { header, payload }).expect("reports serialize");
    s.push('\n');
    s
}

/// Header comment lines followed by CSV records.
pub(crate) fn csv_with_header(header: &Header, columns: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(columns).expect("in-memory writer");
    for r in rows {
        w.write_record(&r).expect("in-memory writer");
    }
    let bytes = w.into_inner().expect("in-memory writer");
    header.comment_block() + &String::from_utf8(bytes).expect("utf-8 records")
}

pub(crate) fn join<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}
