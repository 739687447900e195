use thiserror::Error;

use crate::cue_model::CueSubcategory;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("lexicon: {0}")]
    Lexicon(String),

    #[error("invalid configuration: field `{field}`: {reason}")]
    Config { field: String, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("span {start}..{end} is out of bounds for text of length {len}")]
    SpanOutOfBounds {
        start: usize,
        end: usize,
        len: usize,
    },

    #[error(
        "review item {index} (post `{post_id}`, {subcategory} at {start}..{end}) has no verdict"
    )]
    UnlabeledItem {
        index: usize,
        post_id: String,
        subcategory: CueSubcategory,
        start: usize,
        end: usize,
    },

    #[error("{0}")]
    Data(String),

    #[error("stratum (emotion `{emotion}`, sarcastic {sarcastic}) has {available} eligible posts, {required} required")]
    InsufficientStratum {
        emotion: String,
        sarcastic: bool,
        available: usize,
        required: usize,
    },

    #[error(
        "post `{0}` has no cue left to strip; present and removed variants would be identical"
    )]
    NothingToStrip(String),

    #[error("response references unknown item `{0}`")]
    UnknownItem(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("degenerate: infinite t (zero variance with mean difference {0})")]
    DegenerateT(f64),

    #[error("information matrix is singular")]
    SingularInformation,
}
