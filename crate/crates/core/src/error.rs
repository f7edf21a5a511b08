use thiserror::Error;

/// Errors produced by graph construction, parsing and index computation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid family spec `{spec}`: {reason}")]
    InvalidFamily { spec: String, reason: String },

    #[error("invalid graph6 input: {0}")]
    Graph6(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    /// A configured resource bound was exceeded. `bound` names the limit.
    #[error("size bound exceeded: {bound} is {value}, limit {limit}")]
    SizeBound {
        bound: &'static str,
        value: String,
        limit: String,
    },

    #[error("no closed form applies: {0}")]
    NoClosedForm(String),

    #[error("x-join fiber error: {0}")]
    Fiber(String),

    #[error("join has unnatural automorphisms ({natural} natural of {total})")]
    NotNatural { natural: String, total: String },

    /// An internal consistency check failed; this is a bug, not a user error.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn size_bound(
        bound: &'static str,
        value: impl ToString,
        limit: impl ToString,
    ) -> Self {
        Error::SizeBound {
            bound,
            value: value.to_string(),
            limit: limit.to_string(),
        }
    }

    /// True for errors caused by exceeding a resource bound.
    pub fn is_resource_bound(&self) -> bool {
        matches!(self, Error::SizeBound { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
