use thiserror::Error;

/// Errors produced anywhere in the watermarking pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),

    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),

    #[error("malformed file: {0}")]
    MalformedFile(String),

    #[error("empty input")]
    EmptyInput,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("reference signal has zero energy")]
    ZeroReference,

    #[error("bad block size: expected {expected} bits, got {got}")]
    BadBlockSize { expected: usize, got: usize },

    #[error("malformed stream: {0}")]
    MalformedStream(String),

    #[error("watermark too long: {wm_len} exceeds capacity {capacity}")]
    WatermarkTooLong { wm_len: usize, capacity: usize },

    #[error("key mismatch: {0}")]
    KeyMismatch(String),

    #[error("malformed key: {0}")]
    MalformedKey(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
