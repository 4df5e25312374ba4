use alloc::string::String;

use crate::augment::AugmentationKind;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("audio buffer is empty")]
    EmptyAudio,
    #[error("audio buffer is silent")]
    SilentAudio,
    #[error("non-finite sample at index {0}")]
    NonFiniteSample(usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(&'static str),
    #[error("magnitude {value} out of range for {kind}")]
    MagnitudeOutOfRange { kind: AugmentationKind, value: f64 },
    #[error("policy size {n} exceeds search space of {len}")]
    InvalidN { n: usize, len: usize },
    #[error("unknown augmentation {0:?}")]
    UnknownAugmentation(String),
    #[error("augmentation {0} listed twice")]
    DuplicateKind(AugmentationKind),
    #[error("search space is empty")]
    EmptySearchSpace,
    #[error("`magnitude` and `level` are mutually exclusive ({0})")]
    ConflictingMagnitude(AugmentationKind),
}

impl Error {
    /// Stable variant name, used in reports and host-language error messages.
    pub fn name(&self) -> &'static str {
        match self {
            Error::EmptyAudio => "EmptyAudio",
            Error::SilentAudio => "SilentAudio",
            Error::NonFiniteSample(_) => "NonFiniteSample",
            Error::InvalidParams(_) => "InvalidParams",
            Error::MagnitudeOutOfRange { .. } => "MagnitudeOutOfRange",
            Error::InvalidN { .. } => "InvalidN",
            Error::UnknownAugmentation(_) => "UnknownAugmentation",
            Error::DuplicateKind(_) => "DuplicateKind",
            Error::EmptySearchSpace => "EmptySearchSpace",
            Error::ConflictingMagnitude(_) => "ConflictingMagnitude",
        }
    }
}
