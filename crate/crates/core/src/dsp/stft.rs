use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::{check_frame_params, ComplexSpectrogram, Window};
use crate::error::{Error, Result};
use crate::fft::Fft;
use crate::signal::Waveform;

/// Centered STFT.
///
/// The input is padded by `n_fft/2` reflected samples on each side and frame
/// `t` covers padded samples `[t*hop, t*hop + n_fft)`, giving
/// `len/hop + 1` frames.
pub fn stft(w: &Waveform, n_fft: usize, hop: usize, window: Window) -> Result<ComplexSpectrogram> {
    w.ensure_non_empty()?;
    stft_samples(&w.to_f64(), w.sample_rate(), n_fft, hop, window)
}

pub(crate) fn stft_samples(
    x: &[f64],
    sample_rate: u32,
    n_fft: usize,
    hop: usize,
    window: Window,
) -> Result<ComplexSpectrogram> {
    if x.is_empty() {
        return Err(Error::EmptyAudio);
    }
    check_frame_params(n_fft, hop)?;
    let pad = n_fft / 2;
    let n_frames = x.len() / hop + 1;
    let n_bins = n_fft / 2 + 1;
    let win = window.values(n_fft);
    let fft = Fft::new(n_fft);

    let mut data = Vec::with_capacity(n_bins * n_frames);
    let mut buf = vec![Complex64::new(0.0, 0.0); n_fft];
    for t in 0..n_frames {
        let start = t * hop;
        for (n, slot) in buf.iter_mut().enumerate() {
            let idx = reflect_index(start as isize + n as isize - pad as isize, x.len());
            *slot = Complex64::new(x[idx] * win[n], 0.0);
        }
        fft.forward(&mut buf);
        data.extend_from_slice(&buf[..n_bins]);
    }
    ComplexSpectrogram::new(data, n_fft, hop, n_frames, sample_rate)
}

/// Mirror an out-of-range index back into `[0, len)` without repeating the
/// edge sample (numpy "reflect"), folding as many times as needed.
fn reflect_index(i: isize, len: usize) -> usize {
    if len == 1 {
        return 0;
    }
    let period = 2 * (len as isize - 1);
    let m = i.rem_euclid(period);
    if m >= len as isize {
        (period - m) as usize
    } else {
        m as usize
    }
}

/// Weighted overlap-add inverse of [`stft`].
///
/// Frames are windowed again, summed, and divided by the summed squared
/// window. The centre padding is removed and the result has
/// `(n_frames - 1) * hop` samples.
pub fn istft(s: &ComplexSpectrogram, window: Window) -> Result<Waveform> {
    let out = istft_samples(s, window)?;
    Waveform::from_f64(&out, s.sample_rate())
}

pub(crate) fn istft_samples(s: &ComplexSpectrogram, window: Window) -> Result<Vec<f64>> {
    let n_fft = s.n_fft();
    let hop = s.hop();
    if hop > n_fft / 2 {
        return Err(Error::InvalidParams("istft needs hop <= n_fft/2"));
    }
    let n_frames = s.n_frames();
    let out_len = n_frames.saturating_sub(1) * hop;
    if out_len == 0 {
        return Ok(Vec::new());
    }
    let win = window.values(n_fft);
    let fft = Fft::new(n_fft);
    let total = n_fft + hop * (n_frames - 1);
    let mut acc = vec![0.0f64; total];
    let mut norm = vec![0.0f64; total];
    let mut buf = vec![Complex64::new(0.0, 0.0); n_fft];
    let n_bins = s.n_bins();

    for (t, frame) in s.frames().enumerate() {
        buf[..n_bins].copy_from_slice(frame);
        for k in n_bins..n_fft {
            buf[k] = frame[n_fft - k].conj();
        }
        fft.inverse(&mut buf);
        let start = t * hop;
        for n in 0..n_fft {
            acc[start + n] += buf[n].re * win[n];
            norm[start + n] += win[n] * win[n];
        }
    }

    let pad = n_fft / 2;
    Ok((pad..pad + out_len)
        .map(|i| {
            if norm[i] > 1e-10 {
                acc[i] / norm[i]
            } else {
                acc[i]
            }
        })
        .collect())
}
