use std::io;

/// Errors shared by every module of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("edge list contains no edges")]
    EmptyEdgeList,

    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: u64, n: usize },

    /// A shortest-path count does not fit in 64 bits. `u` and `v` name the
    /// offending pair in the ids of the graph being indexed or queried.
    #[error("shortest-path count overflow for pair ({u}, {v})")]
    CountOverflow { u: u32, v: u32 },

    #[error("vertices {s} and {t} do not share a fringe tree")]
    NotSameTree { s: u32, t: u32 },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error("not an index file (bad magic)")]
    BadMagic,

    #[error("unsupported index format version {0}")]
    UnsupportedVersion(u16),

    #[error("index checksum mismatch")]
    ChecksumMismatch,

    #[error("truncated index file")]
    Truncated,

    #[error("corrupt index: {0}")]
    Corrupt(String),

    #[error("graph too large for oracle verification: n = {n} exceeds bound {bound}")]
    OracleBound { n: usize, bound: usize },

    #[error("worker pool failure: {0}")]
    ThreadPool(String),

    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
