//! Mono waveform and amplitude utilities.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

/// Mono sample buffer with its sample rate.
///
/// Samples are stored as `f32` so a float WAV round trip is lossless; all
/// processing happens in `f64` and is rounded once on the way out.
#[derive(Debug, Clone, PartialEq)]
pub struct Waveform {
    samples: Vec<f32>,
    sample_rate: u32,
}

impl Waveform {
    /// Build a waveform, rejecting a zero sample rate or non-finite samples.
    /// Empty buffers are allowed here; operators reject them individually.
    pub fn new(samples: Vec<f32>, sample_rate: u32) -> Result<Self> {
        if sample_rate == 0 {
            return Err(Error::InvalidParams("sample rate must be positive"));
        }
        if let Some(i) = samples.iter().position(|s| !s.is_finite()) {
            return Err(Error::NonFiniteSample(i));
        }
        Ok(Self {
            samples,
            sample_rate,
        })
    }

    /// Build from `f64` values, rounding each to `f32`.
    pub fn from_f64(samples: &[f64], sample_rate: u32) -> Result<Self> {
        Self::new(samples.iter().map(|&s| s as f32).collect(), sample_rate)
    }

    pub fn samples(&self) -> &[f32] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f32> {
        self.samples
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration_secs(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate as f64
    }

    pub fn peak(&self) -> f32 {
        self.samples.iter().fold(0.0f32, |m, s| m.max(s.abs()))
    }

    /// Mean of squares.
    pub fn power(&self) -> f64 {
        if self.samples.is_empty() {
            return 0.0;
        }
        self.samples
            .iter()
            .map(|&s| (s as f64) * (s as f64))
            .sum::<f64>()
            / self.len() as f64
    }

    pub fn rms(&self) -> f64 {
        math::sqrt(self.power())
    }

    pub(crate) fn to_f64(&self) -> Vec<f64> {
        self.samples.iter().map(|&s| s as f64).collect()
    }

    pub(crate) fn ensure_non_empty(&self) -> Result<()> {
        if self.samples.is_empty() {
            Err(Error::EmptyAudio)
        } else {
            Ok(())
        }
    }

    /// Same sample rate, new samples. Callers guarantee finiteness.
    pub(crate) fn with_samples(&self, samples: Vec<f32>) -> Self {
        debug_assert!(samples.iter().all(|s| s.is_finite()));
        Self {
            samples,
            sample_rate: self.sample_rate,
        }
    }
}

/// Linear-interpolation resampling to `target_rate`.
///
/// Output length is `round(len * target_rate / sample_rate)`.
pub fn resample(w: &Waveform, target_rate: u32) -> Result<Waveform> {
    w.ensure_non_empty()?;
    if target_rate == 0 {
        return Err(Error::InvalidParams("target rate must be positive"));
    }
    if target_rate == w.sample_rate {
        return Ok(w.clone());
    }
    let out_len = math::round(w.len() as f64 * target_rate as f64 / w.sample_rate as f64) as usize;
    let step = w.sample_rate as f64 / target_rate as f64;
    let src = w.to_f64();
    let out = interpolate(&src, out_len, step);
    Ok(Waveform {
        samples: out.into_iter().map(|v| v as f32).collect(),
        sample_rate: target_rate,
    })
}

/// Read `src` at positions `i * step` for `i in 0..out_len`, holding the last
/// sample past the end.
pub(crate) fn interpolate(src: &[f64], out_len: usize, step: f64) -> Vec<f64> {
    let last = src.len().saturating_sub(1);
    (0..out_len)
        .map(|i| {
            let pos = i as f64 * step;
            let i0 = math::floor(pos) as usize;
            if i0 >= last {
                return src[last];
            }
            let frac = pos - i0 as f64;
            let (a, b) = (src[i0], src[i0 + 1]);
            a + (b - a) * frac
        })
        .collect()
}

/// Scale so the largest absolute sample equals `target_peak`.
pub fn peak_normalize(w: &Waveform, target_peak: f64) -> Result<Waveform> {
    w.ensure_non_empty()?;
    if !(target_peak > 0.0 && target_peak <= 1.0) {
        return Err(Error::InvalidParams("target peak must lie in (0, 1]"));
    }
    let peak = w.peak() as f64;
    if peak == 0.0 {
        return Err(Error::SilentAudio);
    }
    let gain = target_peak / peak;
    Ok(w.with_samples(
        w.samples
            .iter()
            .map(|&s| (s as f64 * gain) as f32)
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn wave(samples: Vec<f32>, sr: u32) -> Waveform {
        Waveform::new(samples, sr).unwrap()
    }

    #[test]
    fn rejects_bad_construction() {
        assert!(matches!(
            Waveform::new(vec![0.0], 0),
            Err(Error::InvalidParams(_))
        ));
        assert_eq!(
            Waveform::new(vec![0.0, f32::NAN], 8000),
            Err(Error::NonFiniteSample(1))
        );
        assert_eq!(
            Waveform::new(vec![f32::INFINITY], 8000),
            Err(Error::NonFiniteSample(0))
        );
    }

    #[test]
    fn resample_identity() {
        let w = wave(vec![0.1, -0.4, 0.3], 8000);
        assert_eq!(resample(&w, 8000).unwrap(), w);
    }

    #[test]
    fn resample_constant() {
        let w = wave(vec![0.25; 1000], 8000);
        for rate in [4000, 11025, 16000, 44100] {
            let out = resample(&w, rate).unwrap();
            assert_eq!(out.sample_rate(), rate);
            let expected = (1000.0 * rate as f64 / 8000.0).round() as usize;
            assert_eq!(out.len(), expected);
            assert!(out.samples().iter().all(|&s| s == 0.25));
        }
    }

    #[test]
    fn resample_empty_errors() {
        let w = wave(vec![], 8000);
        assert_eq!(resample(&w, 16000), Err(Error::EmptyAudio));
    }

    #[test]
    fn peak_normalize_examples() {
        let w = wave(vec![0.5, -0.25], 8000);
        let out = peak_normalize(&w, 1.0).unwrap();
        assert_eq!(out.samples(), &[1.0, -0.5]);
        let again = peak_normalize(&out, 1.0).unwrap();
        assert_eq!(again, out);
    }

    #[test]
    fn peak_normalize_silent() {
        let w = wave(vec![0.0; 10], 8000);
        assert_eq!(peak_normalize(&w, 1.0), Err(Error::SilentAudio));
    }
}
