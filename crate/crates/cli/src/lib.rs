//! Group descriptions, corpora, single-group commands and verification
//! campaigns behind the `pgt` binary.

pub mod campaign;
pub mod commands;
pub mod corpus;
pub mod record;
pub mod spec;

pub use record::{ResultRecord, Status};
pub use spec::{parse_group, parse_spec, Group, GroupSpec};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("malformed group document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Group(#[from] pgt_core::Error),
    #[error("invalid group description: {0}")]
    Spec(String),
    #[error("unknown campaign {0:?}")]
    UnknownCampaign(String),
}
