//! Spectral machinery: STFT/ISTFT, phase vocoder, mel features, biquads and
//! image resizing.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};

mod biquad;
mod mel;
mod resize;
mod stft;
mod vocoder;

pub use biquad::{biquad_bandpass, biquad_bandstop, Biquad};
pub use mel::{
    hz_to_mel, mel_center_frequencies, mel_features, mel_filterbank, mel_spectrogram, mel_to_hz,
    MelFilterbank, POWER_FLOOR, TOP_DB,
};
pub use resize::resize_bilinear;
pub use stft::{istft, stft};
pub use vocoder::phase_vocoder;

pub(crate) use stft::{istft_samples, stft_samples};

/// Analysis window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Window {
    /// Periodic Hann: `0.5 * (1 - cos(2*pi*n/N))`.
    #[default]
    Hann,
}

impl Window {
    pub fn values(self, len: usize) -> Vec<f64> {
        match self {
            Window::Hann => (0..len)
                .map(|n| {
                    0.5 * (1.0
                        - crate::math::cos(2.0 * core::f64::consts::PI * n as f64 / len as f64))
                })
                .collect(),
        }
    }
}

/// STFT frames, `n_fft/2 + 1` bins by `n_frames` frames.
///
/// Stored frame-major: bin `k` of frame `t` lives at `t * n_bins + k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSpectrogram {
    data: Vec<Complex64>,
    n_fft: usize,
    hop: usize,
    n_frames: usize,
    sample_rate: u32,
}

impl ComplexSpectrogram {
    pub fn new(
        data: Vec<Complex64>,
        n_fft: usize,
        hop: usize,
        n_frames: usize,
        sample_rate: u32,
    ) -> Result<Self> {
        check_frame_params(n_fft, hop)?;
        if data.len() != (n_fft / 2 + 1) * n_frames {
            return Err(Error::InvalidParams(
                "spectrogram data does not match its shape",
            ));
        }
        if data.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidParams(
                "spectrogram contains non-finite values",
            ));
        }
        Ok(Self {
            data,
            n_fft,
            hop,
            n_frames,
            sample_rate,
        })
    }

    pub fn n_fft(&self) -> usize {
        self.n_fft
    }
    pub fn hop(&self) -> usize {
        self.hop
    }
    pub fn n_bins(&self) -> usize {
        self.n_fft / 2 + 1
    }
    pub fn n_frames(&self) -> usize {
        self.n_frames
    }
    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }
    /// `(n_bins, n_frames)`.
    pub fn shape(&self) -> (usize, usize) {
        (self.n_bins(), self.n_frames)
    }

    pub fn get(&self, bin: usize, frame: usize) -> Complex64 {
        self.data[frame * self.n_bins() + bin]
    }

    pub fn frame(&self, t: usize) -> &[Complex64] {
        let nb = self.n_bins();
        &self.data[t * nb..(t + 1) * nb]
    }

    pub fn frames(&self) -> impl Iterator<Item = &[Complex64]> {
        self.data.chunks_exact(self.n_bins())
    }
}

pub(crate) fn check_frame_params(n_fft: usize, hop: usize) -> Result<()> {
    if n_fft < 2 || !n_fft.is_multiple_of(2) {
        return Err(Error::InvalidParams(
            "n_fft must be a positive even integer",
        ));
    }
    if hop == 0 {
        return Err(Error::InvalidParams("hop must be positive"));
    }
    if hop > n_fft {
        return Err(Error::InvalidParams("hop must not exceed n_fft"));
    }
    Ok(())
}

/// How the values of a [`FeatureImage`] are scaled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Power,
    Decibel,
}

/// Real 2-D tensor, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureImage {
    values: Vec<f32>,
    rows: usize,
    cols: usize,
    scale: Scale,
}

impl FeatureImage {
    pub fn new(values: Vec<f32>, rows: usize, cols: usize, scale: Scale) -> Result<Self> {
        if rows.checked_mul(cols) != Some(values.len()) {
            return Err(Error::InvalidParams("image data does not match its shape"));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample(i));
        }
        Ok(Self {
            values,
            rows,
            cols,
            scale,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    pub fn scale(&self) -> Scale {
        self.scale
    }
    pub fn values(&self) -> &[f32] {
        &self.values
    }
    pub fn into_values(self) -> Vec<f32> {
        self.values
    }
    pub fn get(&self, row: usize, col: usize) -> f32 {
        self.values[row * self.cols + col]
    }

    /// `(min, max)`; `(0, 0)` for an empty image.
    pub fn range(&self) -> (f32, f32) {
        if self.values.is_empty() {
            return (0.0, 0.0);
        }
        self.values
            .iter()
            .fold((f32::INFINITY, f32::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            })
    }
}

/// Mel-spectrogram parameters. `fmax: None` means Nyquist.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MelParams {
    pub n_fft: usize,
    pub hop: usize,
    pub n_mels: usize,
    pub fmin: f64,
    pub fmax: Option<f64>,
    pub window: Window,
}

impl Default for MelParams {
    fn default() -> Self {
        Self {
            n_fft: 1024,
            hop: 512,
            n_mels: 64,
            fmin: 0.0,
            fmax: None,
            window: Window::Hann,
        }
    }
}

impl MelParams {
    /// Upper edge for a given sample rate.
    pub fn fmax_for(&self, sample_rate: u32) -> f64 {
        self.fmax.unwrap_or(sample_rate as f64 / 2.0)
    }
}
