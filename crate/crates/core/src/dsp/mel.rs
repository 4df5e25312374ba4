use alloc::vec;
use alloc::vec::Vec;

use super::{stft, FeatureImage, MelParams, Scale};
use crate::error::{Error, Result};
use crate::math;
use crate::signal::Waveform;

/// Power floor added before taking the log.
pub const POWER_FLOOR: f64 = 1e-10;
/// Dynamic range kept below the loudest value.
pub const TOP_DB: f64 = 80.0;

/// HTK mel scale.
pub fn hz_to_mel(hz: f64) -> f64 {
    2595.0 * math::log10(1.0 + hz / 700.0)
}

pub fn mel_to_hz(mel: f64) -> f64 {
    700.0 * (math::powf(10.0, mel / 2595.0) - 1.0)
}

/// `n_mels + 2` frequencies equally spaced in mel between `fmin` and `fmax`;
/// filter `m` has its feet at entries `m` and `m + 2` and its centre at `m + 1`.
fn mel_points(n_mels: usize, fmin: f64, fmax: f64) -> Vec<f64> {
    let (lo, hi) = (hz_to_mel(fmin), hz_to_mel(fmax));
    let step = (hi - lo) / (n_mels + 1) as f64;
    (0..n_mels + 2)
        .map(|i| mel_to_hz(lo + step * i as f64))
        .collect()
}

/// Centre frequency of each mel filter, in Hz.
pub fn mel_center_frequencies(n_mels: usize, fmin: f64, fmax: f64) -> Vec<f64> {
    let pts = mel_points(n_mels, fmin, fmax);
    pts[1..=n_mels].to_vec()
}

/// Triangular mel filters as a dense `n_mels x (n_fft/2 + 1)` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct MelFilterbank {
    weights: Vec<f64>,
    n_mels: usize,
    n_bins: usize,
}

impl MelFilterbank {
    pub fn n_mels(&self) -> usize {
        self.n_mels
    }
    pub fn n_bins(&self) -> usize {
        self.n_bins
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.n_mels, self.n_bins)
    }
    pub fn row(&self, m: usize) -> &[f64] {
        &self.weights[m * self.n_bins..(m + 1) * self.n_bins]
    }
    pub fn get(&self, m: usize, bin: usize) -> f64 {
        self.weights[m * self.n_bins + bin]
    }

    /// Project one power frame onto the filters.
    pub fn apply(&self, power: &[f64], out: &mut [f64]) {
        assert_eq!(power.len(), self.n_bins);
        assert_eq!(out.len(), self.n_mels);
        for (m, o) in out.iter_mut().enumerate() {
            *o = self.row(m).iter().zip(power).map(|(w, p)| w * p).sum();
        }
    }
}

/// HTK-style triangular filterbank.
///
/// Each filter peaks at exactly 1.0 on the FFT bin nearest its mel centre and
/// falls linearly to zero at the neighbouring centres.
pub fn mel_filterbank(
    sample_rate: u32,
    n_fft: usize,
    n_mels: usize,
    fmin: f64,
    fmax: f64,
) -> Result<MelFilterbank> {
    if sample_rate == 0 {
        return Err(Error::InvalidParams("sample rate must be positive"));
    }
    if n_fft < 2 || !n_fft.is_multiple_of(2) {
        return Err(Error::InvalidParams(
            "n_fft must be a positive even integer",
        ));
    }
    if n_mels < 2 {
        return Err(Error::InvalidParams("n_mels must be at least 2"));
    }
    let nyquist = sample_rate as f64 / 2.0;
    if !(fmin >= 0.0 && fmin < fmax && fmax <= nyquist) {
        return Err(Error::InvalidParams(
            "need 0 <= fmin < fmax <= sample_rate/2",
        ));
    }

    let n_bins = n_fft / 2 + 1;
    let bin_hz = sample_rate as f64 / n_fft as f64;
    let pts = mel_points(n_mels, fmin, fmax);
    let mut weights = vec![0.0; n_mels * n_bins];
    for m in 0..n_mels {
        let (left, right) = (pts[m], pts[m + 2]);
        let peak = (math::round(pts[m + 1] / bin_hz) as usize).min(n_bins - 1);
        let peak_hz = peak as f64 * bin_hz;
        let row = &mut weights[m * n_bins..(m + 1) * n_bins];
        for (j, w) in row.iter_mut().enumerate() {
            let f = j as f64 * bin_hz;
            *w = if j == peak {
                1.0
            } else if j < peak && f > left {
                (f - left) / (peak_hz - left)
            } else if j > peak && f < right {
                (right - f) / (right - peak_hz)
            } else {
                0.0
            };
        }
    }
    Ok(MelFilterbank {
        weights,
        n_mels,
        n_bins,
    })
}

/// dB-scaled mel-spectrogram, `n_mels` rows by `len/hop + 1` columns.
///
/// `10*log10(power + 1e-10)`, then clamped to the top 80 dB.
pub fn mel_spectrogram(w: &Waveform, p: &MelParams) -> Result<FeatureImage> {
    w.ensure_non_empty()?;
    let fb = mel_filterbank(
        w.sample_rate(),
        p.n_fft,
        p.n_mels,
        p.fmin,
        p.fmax_for(w.sample_rate()),
    )?;
    let spec = stft(w, p.n_fft, p.hop, p.window)?;
    let cols = spec.n_frames();
    let rows = p.n_mels;

    let mut db = vec![0.0f64; rows * cols];
    let mut power = vec![0.0; spec.n_bins()];
    let mut mel = vec![0.0; rows];
    for (t, frame) in spec.frames().enumerate() {
        for (p, c) in power.iter_mut().zip(frame) {
            *p = c.norm_sqr();
        }
        fb.apply(&power, &mut mel);
        for (m, v) in mel.iter().enumerate() {
            db[m * cols + t] = 10.0 * math::log10(v + POWER_FLOOR);
        }
    }
    let max = db.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let floor = max - TOP_DB;
    let values = db.into_iter().map(|v| v.max(floor) as f32).collect();
    FeatureImage::new(values, rows, cols, Scale::Decibel)
}

/// Mel-spectrogram, optionally resized to `(rows, cols)`: the feature image
/// handed to a classifier.
pub fn mel_features(
    w: &Waveform,
    p: &MelParams,
    resize: Option<(usize, usize)>,
) -> Result<FeatureImage> {
    let img = mel_spectrogram(w, p)?;
    match resize {
        Some((rows, cols)) => super::resize_bilinear(&img, rows, cols),
        None => Ok(img),
    }
}
