use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    /// Exhaustive search refused because the instance is too large.
    #[error("n = {n} exceeds the exhaustive-search cap of {cap}{hint}")]
    SizeCap {
        n: usize,
        cap: usize,
        hint: &'static str,
    },

    #[error("link count {ell} out of range for n = {n} (expected 0..={max})")]
    LinksOutOfRange { n: usize, ell: usize, max: usize },

    #[error("node set is not a connected component: {0}")]
    NotAComponent(String),

    #[error("inconsistent inputs: {0}")]
    Inconsistent(String),

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::SizeCap { .. } => 2,
            _ => 1,
        }
    }
}
