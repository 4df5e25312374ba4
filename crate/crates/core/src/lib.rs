//! Deterministic waveform augmentation.
//!
//! This crate holds the pure algorithmic half of `wavaug`: the waveform type,
//! spectral machinery (STFT, phase vocoder, mel filterbank, biquad filters,
//! bilinear resize), the eleven augmentation operators, and the uniform
//! policy sampler. It is `no_std` and only needs `alloc`; file formats, the
//! dataset runner and the CLI live in the `wavaug` crate.
//!
//! Every random decision is drawn from [`RandomSource`], a pinned splitmix64
//! stream, so a given seed reproduces the same bytes on every platform.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod augment;
pub mod dsp;
mod error;
mod fft;
pub(crate) mod math;
pub mod policy;
pub mod rng;
pub mod signal;

pub use augment::{AugmentationKind, MagnitudeSpec};
pub use dsp::{ComplexSpectrogram, FeatureImage, MelParams, Scale, Window};
pub use error::{Error, Result};
pub use policy::{Policy, PolicyStep, SearchSpace, SeedPlan};
pub use rng::RandomSource;
pub use signal::Waveform;
