//! Verification planning, a deterministic runner with an on-disk cache, and
//! machine-readable reports keyed by claim ids.

pub mod cache;
pub mod checks;
pub mod claims;
pub mod commands;
pub mod plan;
pub mod report;
mod runner;

use std::path::{Path, PathBuf};

use dkoszul_core::exact::ExactError;
use dkoszul_core::CoreError;

pub use cache::Cache;
pub use plan::{Check, VerificationPlan};
pub use report::{Record, Report, Status};
pub use runner::{run, run_with_cache};

pub(crate) use runner::record as runner_record;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("unknown key: {0}")]
    UnknownKey(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl HarnessError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        HarnessError::Io { path: path.to_path_buf(), source }
    }
}

/// Exit status for a run that could not produce a report.
pub const EXIT_CONFIG: i32 = 2;
