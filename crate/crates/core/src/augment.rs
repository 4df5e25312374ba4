//! Waveform augmentation operators.
//!
//! Every operator takes a magnitude in its kind's natural unit (see
//! [`MagnitudeSpec`]) and a [`RandomSource`]. The number of draws each one
//! consumes is fixed for a given input length:
//!
//! | operator            | draws                  |
//! |---------------------|------------------------|
//! | noise               | 2 per pair of samples  |
//! | pad, trim           | 1 (which end)          |
//! | time_mask           | 1 (mask start)         |
//! | gain                | 1 (gain in dB)         |
//! | bpf, bsf            | 1 (centre frequency)   |
//! | everything else     | 0                      |

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
use core::str::FromStr;

use crate::dsp::{self, Biquad, Window};
use crate::error::{Error, Result};
use crate::math;
use crate::rng::RandomSource;
use crate::signal::{self, Waveform};

/// The eleven augmentation kinds, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AugmentationKind {
    NoiseInjection,
    PitchShift,
    TimeStretch,
    Padding,
    Clip,
    Reverse,
    BandPassFilter,
    Gain,
    TimeMask,
    Trim,
    BandStopFilter,
}

impl AugmentationKind {
    pub const ALL: [AugmentationKind; 11] = [
        AugmentationKind::NoiseInjection,
        AugmentationKind::PitchShift,
        AugmentationKind::TimeStretch,
        AugmentationKind::Padding,
        AugmentationKind::Clip,
        AugmentationKind::Reverse,
        AugmentationKind::BandPassFilter,
        AugmentationKind::Gain,
        AugmentationKind::TimeMask,
        AugmentationKind::Trim,
        AugmentationKind::BandStopFilter,
    ];

    /// Kinds enabled when no configuration says otherwise (no trim, no
    /// band-stop).
    pub const DEFAULT: [AugmentationKind; 9] = [
        AugmentationKind::NoiseInjection,
        AugmentationKind::PitchShift,
        AugmentationKind::TimeStretch,
        AugmentationKind::Padding,
        AugmentationKind::Clip,
        AugmentationKind::Reverse,
        AugmentationKind::BandPassFilter,
        AugmentationKind::Gain,
        AugmentationKind::TimeMask,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AugmentationKind::NoiseInjection => "noise",
            AugmentationKind::PitchShift => "pitch",
            AugmentationKind::TimeStretch => "stretch",
            AugmentationKind::Padding => "pad",
            AugmentationKind::Clip => "clip",
            AugmentationKind::Reverse => "reverse",
            AugmentationKind::BandPassFilter => "bpf",
            AugmentationKind::Gain => "gain",
            AugmentationKind::TimeMask => "time_mask",
            AugmentationKind::Trim => "trim",
            AugmentationKind::BandStopFilter => "bsf",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }

    pub fn spec(self) -> MagnitudeSpec {
        use AugmentationKind::*;
        let (unit, lo, hi, default) = match self {
            NoiseInjection => ("snr_db", 0.0, 60.0, 20.0),
            PitchShift => ("semitones", -12.0, 12.0, 2.0),
            TimeStretch => ("rate", 0.5, 2.0, 1.4),
            Padding => ("fraction", 0.0, 0.5, 0.1),
            Clip => ("peak_fraction", 0.0, 1.0, 0.6),
            Reverse => ("unused", 0.0, 0.0, 0.0),
            BandPassFilter | BandStopFilter => ("octaves", 0.5, 4.0, 2.0),
            Gain => ("db", 0.0, 24.0, 12.0),
            TimeMask => ("fraction", 0.0, 0.5, 0.1),
            Trim => ("fraction", 0.0, 0.4, 0.1),
        };
        MagnitudeSpec {
            kind: self,
            unit,
            lo,
            hi,
            default,
            lo_exclusive: self == Clip,
        }
    }
}

impl fmt::Display for AugmentationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AugmentationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_name(s).ok_or_else(|| Error::UnknownAugmentation(s.into()))
    }
}

/// Allowed magnitude range and default for one kind.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MagnitudeSpec {
    pub kind: AugmentationKind,
    pub unit: &'static str,
    pub lo: f64,
    pub hi: f64,
    pub default: f64,
    /// `lo` itself is not allowed (clip level 0 would silence everything).
    pub lo_exclusive: bool,
}

impl MagnitudeSpec {
    pub fn contains(&self, value: f64) -> bool {
        let above = if self.lo_exclusive {
            value > self.lo
        } else {
            value >= self.lo
        };
        above && value <= self.hi
    }

    pub fn check(&self, value: f64) -> Result<f64> {
        if self.kind == AugmentationKind::Reverse || self.contains(value) {
            Ok(value)
        } else {
            Err(Error::MagnitudeOutOfRange {
                kind: self.kind,
                value,
            })
        }
    }

    /// Map a normalised level in `[0, 1]` linearly onto `[lo, hi]`.
    pub fn from_level(&self, level: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&level) {
            return Err(Error::MagnitudeOutOfRange {
                kind: self.kind,
                value: level,
            });
        }
        self.check(self.lo + level * (self.hi - self.lo))
    }
}

/// Apply one augmentation by kind.
pub fn apply(
    kind: AugmentationKind,
    w: &Waveform,
    magnitude: f64,
    rng: &mut RandomSource,
) -> Result<Waveform> {
    use AugmentationKind::*;
    match kind {
        NoiseInjection => noise_inject(w, magnitude, rng),
        PitchShift => pitch_shift(w, magnitude, rng),
        TimeStretch => time_stretch(w, magnitude, rng),
        Padding => pad(w, magnitude, rng),
        Clip => clip(w, magnitude, rng),
        Reverse => reverse(w, magnitude, rng),
        BandPassFilter => band_pass(w, magnitude, rng),
        Gain => gain(w, magnitude, rng),
        TimeMask => time_mask(w, magnitude, rng),
        Trim => trim(w, magnitude, rng),
        BandStopFilter => band_stop(w, magnitude, rng),
    }
}

fn prepare(w: &Waveform, kind: AugmentationKind, magnitude: f64) -> Result<f64> {
    w.ensure_non_empty()?;
    kind.spec().check(magnitude)
}

fn finish(w: &Waveform, y: &[f64]) -> Waveform {
    w.with_samples(y.iter().map(|&v| v as f32).collect())
}

/// Standard normal pair from two uniform draws (Box-Muller).
pub fn gaussian_pair(rng: &mut RandomSource) -> (f64, f64) {
    let u1 = rng.next_float();
    let u2 = rng.next_float();
    let r = math::sqrt(-2.0 * math::ln(1.0 - u1));
    let theta = 2.0 * PI * u2;
    (r * math::cos(theta), r * math::sin(theta))
}

/// Add white Gaussian noise at exactly `snr_db` against the input's power.
pub fn noise_inject(w: &Waveform, snr_db: f64, rng: &mut RandomSource) -> Result<Waveform> {
    prepare(w, AugmentationKind::NoiseInjection, snr_db)?;
    let signal_power = w.power();
    if signal_power == 0.0 {
        return Err(Error::SilentAudio);
    }
    let n = w.len();
    let mut noise = Vec::with_capacity(n + 1);
    while noise.len() < n {
        let (a, b) = gaussian_pair(rng);
        noise.push(a);
        noise.push(b);
    }
    noise.truncate(n);

    let noise_power = noise.iter().map(|z| z * z).sum::<f64>() / n as f64;
    let target = signal_power / math::powf(10.0, snr_db / 10.0);
    let scale = if noise_power > 0.0 {
        math::sqrt(target / noise_power)
    } else {
        0.0
    };
    let y: Vec<f64> = w
        .samples()
        .iter()
        .zip(&noise)
        .map(|(&x, z)| x as f64 + scale * z)
        .collect();
    Ok(finish(w, &y))
}

const STRETCH_N_FFT: usize = 1024;
const STRETCH_HOP: usize = 256;

/// Phase-vocoder stretch of raw samples, cut or zero-filled to `out_len`.
fn stretch_samples(x: &[f64], sample_rate: u32, rate: f64, out_len: usize) -> Result<Vec<f64>> {
    // Trailing zeros keep the last input samples inside fully overlapped frames.
    let mut padded = Vec::with_capacity(x.len() + STRETCH_N_FFT);
    padded.extend_from_slice(x);
    padded.resize(x.len() + STRETCH_N_FFT, 0.0);
    let spec = dsp::stft_samples(
        &padded,
        sample_rate,
        STRETCH_N_FFT,
        STRETCH_HOP,
        Window::Hann,
    )?;
    let stretched = dsp::phase_vocoder(&spec, rate)?;
    let mut y = dsp::istft_samples(&stretched, Window::Hann)?;
    y.resize(out_len, 0.0);
    Ok(y)
}

/// Change duration by `rate` (`> 1` shortens) without changing pitch.
///
/// The result has exactly `round(len / rate)` samples.
pub fn time_stretch(w: &Waveform, rate: f64, _rng: &mut RandomSource) -> Result<Waveform> {
    prepare(w, AugmentationKind::TimeStretch, rate)?;
    let out_len = math::round(w.len() as f64 / rate) as usize;
    let y = stretch_samples(&w.to_f64(), w.sample_rate(), rate, out_len)?;
    Ok(finish(w, &y))
}

/// Shift pitch by `semitones` keeping the length.
///
/// Stretches the signal to `ratio` times its duration, then reads it back
/// `ratio` times faster with linear interpolation.
pub fn pitch_shift(w: &Waveform, semitones: f64, _rng: &mut RandomSource) -> Result<Waveform> {
    prepare(w, AugmentationKind::PitchShift, semitones)?;
    if semitones == 0.0 {
        return Ok(w.clone());
    }
    let ratio = math::exp2(semitones / 12.0);
    let long_len = math::round(w.len() as f64 * ratio) as usize;
    let stretched = stretch_samples(&w.to_f64(), w.sample_rate(), 1.0 / ratio, long_len.max(1))?;
    let y = signal::interpolate(&stretched, w.len(), ratio);
    Ok(finish(w, &y))
}

/// `(start, k)`: the `k` samples at the beginning (`start == 0`) or the end
/// chosen by one draw.
fn pick_end(len: usize, fraction: f64, rng: &mut RandomSource) -> (usize, usize) {
    let k = math::floor(fraction * len as f64) as usize;
    let start = if rng.next_below(2) == 0 { 0 } else { len - k };
    (start, k)
}

/// Zero `floor(fraction * len)` samples at one end.
pub fn pad(w: &Waveform, fraction: f64, rng: &mut RandomSource) -> Result<Waveform> {
    prepare(w, AugmentationKind::Padding, fraction)?;
    let (start, k) = pick_end(w.len(), fraction, rng);
    let mut y = w.samples().to_vec();
    y[start..start + k].fill(0.0);
    Ok(w.with_samples(y))
}

/// Clamp to `level` times the input peak.
pub fn clip(w: &Waveform, level: f64, _rng: &mut RandomSource) -> Result<Waveform> {
    prepare(w, AugmentationKind::Clip, level)?;
    let t = (level * w.peak() as f64) as f32;
    Ok(w.with_samples(w.samples().iter().map(|&s| s.clamp(-t, t)).collect()))
}

/// Time reversal; the magnitude is ignored.
pub fn reverse(w: &Waveform, _magnitude: f64, _rng: &mut RandomSource) -> Result<Waveform> {
    w.ensure_non_empty()?;
    let mut y = w.samples().to_vec();
    y.reverse();
    Ok(w.with_samples(y))
}

/// Centre frequency for the band filters: log-uniform in
/// `[100 Hz, 0.45 * sample_rate]`, one draw.
pub fn draw_band_center(rng: &mut RandomSource, sample_rate: u32) -> f64 {
    let hi = 0.45 * sample_rate as f64;
    let lo = 100.0f64.min(hi / 2.0);
    lo * math::powf(hi / lo, rng.next_float())
}

/// Quality factor of a band `octaves` wide.
pub fn bandwidth_q(octaves: f64) -> f64 {
    1.0 / (math::exp2(octaves / 2.0) - math::exp2(-octaves / 2.0))
}

fn band_filter(
    w: &Waveform,
    kind: AugmentationKind,
    octaves: f64,
    rng: &mut RandomSource,
) -> Result<Waveform> {
    prepare(w, kind, octaves)?;
    let center = draw_band_center(rng, w.sample_rate());
    let q = bandwidth_q(octaves);
    let filter = match kind {
        AugmentationKind::BandStopFilter => Biquad::bandstop(w.sample_rate(), center, q)?,
        _ => Biquad::bandpass(w.sample_rate(), center, q)?,
    };
    Ok(finish(w, &filter.process(&w.to_f64())))
}

/// Band-pass around a randomly drawn centre.
pub fn band_pass(w: &Waveform, octaves: f64, rng: &mut RandomSource) -> Result<Waveform> {
    band_filter(w, AugmentationKind::BandPassFilter, octaves, rng)
}

/// Notch around a randomly drawn centre.
pub fn band_stop(w: &Waveform, octaves: f64, rng: &mut RandomSource) -> Result<Waveform> {
    band_filter(w, AugmentationKind::BandStopFilter, octaves, rng)
}

/// Gain in dB drawn uniformly from `[-max_db, max_db]`, one draw.
pub fn draw_gain_db(rng: &mut RandomSource, max_db: f64) -> f64 {
    -max_db + 2.0 * max_db * rng.next_float()
}

/// Scale by a random gain of at most `max_db` either way.
pub fn gain(w: &Waveform, max_db: f64, rng: &mut RandomSource) -> Result<Waveform> {
    prepare(w, AugmentationKind::Gain, max_db)?;
    let factor = math::powf(10.0, draw_gain_db(rng, max_db) / 20.0);
    let y: Vec<f64> = w.samples().iter().map(|&s| s as f64 * factor).collect();
    Ok(finish(w, &y))
}

/// Silence `floor(fraction * len)` contiguous samples at a random offset.
pub fn time_mask(w: &Waveform, fraction: f64, rng: &mut RandomSource) -> Result<Waveform> {
    prepare(w, AugmentationKind::TimeMask, fraction)?;
    let len = w.len();
    let k = math::floor(fraction * len as f64) as usize;
    let start = rng.next_below((len - k + 1) as u64) as usize;
    let mut y = w.samples().to_vec();
    y[start..start + k].fill(0.0);
    Ok(w.with_samples(y))
}

/// Drop `floor(fraction * len)` samples from one end.
pub fn trim(w: &Waveform, fraction: f64, rng: &mut RandomSource) -> Result<Waveform> {
    prepare(w, AugmentationKind::Trim, fraction)?;
    let (start, k) = pick_end(w.len(), fraction, rng);
    let y = if start == 0 {
        w.samples()[k..].to_vec()
    } else {
        w.samples()[..start].to_vec()
    };
    Ok(w.with_samples(y))
}

/// Expected output length of `kind` at `magnitude` for an input of `len`.
pub fn output_len(kind: AugmentationKind, magnitude: f64, len: usize) -> usize {
    match kind {
        AugmentationKind::TimeStretch => math::round(len as f64 / magnitude) as usize,
        AugmentationKind::Trim => len - math::floor(magnitude * len as f64) as usize,
        _ => len,
    }
}
