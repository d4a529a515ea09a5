use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the benchmark toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: failed to decode image: {source}")]
    Decode {
        path: PathBuf,
        #[source]
        source: image::ImageError,
    },

    #[error("{path}: failed to encode image: {source}")]
    Encode {
        path: PathBuf,
        #[source]
        source: image::ImageError,
    },

    #[error("{path}: unsupported bit depth (only 8-bit PNG is supported)")]
    UnsupportedBitDepth { path: PathBuf },

    #[error("{path}: unsupported color type (only grayscale and RGB are supported)")]
    UnsupportedColorType { path: PathBuf },

    #[error("{path}: non-binary mask ({count} pixels outside {{0, 255}})")]
    NonBinaryMask { path: PathBuf, count: usize },

    #[error("dimension mismatch: {left} vs {right} in {context}")]
    DimensionMismatch {
        left: String,
        right: String,
        context: String,
    },

    #[error("invalid {what}: {detail}")]
    InvalidParameter { what: String, detail: String },

    #[error("image {width}x{height} too small: {detail}")]
    ImageTooSmall {
        width: usize,
        height: usize,
        detail: String,
    },

    #[error("composition input has {count} nonzero pixels on masked cells (mis-paired input/mask?)")]
    InputNotZeroOnMask { count: usize },

    #[error("track-2 record for image '{id}' is missing its semantic map")]
    MissingSemantic { id: String },

    #[error("empty input: {context}")]
    EmptyInput { context: String },

    #[error("unknown metric '{name}' (known: {known})")]
    UnknownMetric { name: String, known: String },

    #[error("runs share no image ids")]
    EmptyIntersection,

    #[error("plugin '{name}' failed: {detail}")]
    Plugin { name: String, detail: String },

    #[error("manifest invalid: {detail}")]
    InvalidManifest { detail: String },

    #[error("label mapping invalid: {detail}")]
    InvalidMapping { detail: String },

    #[error("malformed records file: {detail}")]
    InvalidRecords { detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
