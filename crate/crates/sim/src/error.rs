use std::path::PathBuf;

use care_core::CareError;
use thiserror::Error;

pub type Result<T, E = SimError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum SimError {
    #[error(transparent)]
    Care(#[from] CareError),

    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("malformed world file: {0}")]
    WorldFormat(String),

    #[error("invalid world: {0}")]
    InvalidWorld(String),

    #[error("invalid experiment: {0}")]
    InvalidExperiment(String),
}
