use std::path::PathBuf;

use crate::model::{UserId, Violation};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid scenario: {}", join_violations(.0))]
    InvalidScenario(Vec<Violation>),

    #[error("load of user {0} is not an integer multiple of the replication unit")]
    NonIntegralLoad(UserId),

    #[error("replica {0} has no cluster assignment")]
    MissingReplica(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("need at least {k} distinct points, found {distinct}")]
    TooFewDistinctPoints { k: usize, distinct: usize },

    #[error("user {0} is not covered by the placement")]
    UncoveredUser(UserId),

    #[error("user {user} references cluster {index} but only {k} centroids exist")]
    ClusterOutOfRange {
        user: UserId,
        index: usize,
        k: usize,
    },

    #[error("instance too large for exhaustive search: {users} users, k = {k}")]
    InstanceTooLarge { users: usize, k: usize },

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unsupported schema_version {found} (expected {expected})")]
    SchemaVersionMismatch { found: u64, expected: u64 },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        // serde_json appends " at line L column C" to its message; keep only the cause.
        let full = e.to_string();
        let message = match full.rfind(" at line ") {
            Some(pos) => full[..pos].to_string(),
            None => full,
        };
        Error::Parse {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
