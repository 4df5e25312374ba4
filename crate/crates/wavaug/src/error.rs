use std::io;
use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("malformed WAV: {0}")]
    MalformedWav(String),
    #[error(
        "unsupported WAV encoding: format {format}, {bits} bits (need 16-bit PCM or 32-bit float)"
    )]
    UnsupportedEncoding { format: u16, bits: u16 },
    #[error("malformed ARAF: {0}")]
    MalformedAraf(String),
    #[error("invalid config: {0}")]
    Config(String),
    #[error("{path}: does not match the {layout} layout: {reason}")]
    LayoutMismatch {
        path: PathBuf,
        layout: &'static str,
        reason: &'static str,
    },
    #[error("missing metadata: {0}")]
    MissingMetadata(String),
    #[error("PNG encoding failed: {0}")]
    Png(#[from] ::png::EncodingError),
    #[error(transparent)]
    Core(#[from] wavaug_core::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Stable variant name; core errors report their own variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Io { .. } => "IoError",
            Error::MalformedWav(_) => "MalformedWav",
            Error::UnsupportedEncoding { .. } => "UnsupportedEncoding",
            Error::MalformedAraf(_) => "MalformedAraf",
            Error::Config(_) => "ConfigError",
            Error::LayoutMismatch { .. } => "LayoutMismatch",
            Error::MissingMetadata(_) => "MissingMetadata",
            Error::Png(_) => "PngError",
            Error::Core(e) => e.name(),
        }
    }
}
