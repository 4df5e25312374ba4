use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use super::ComplexSpectrogram;
use crate::error::{Error, Result};
use crate::math;

/// Phase-vocoder time-scale modification.
///
/// Produces `ceil(n_frames / rate)` frames. Output frame `t` reads the input
/// at fractional position `t * rate`: magnitudes are interpolated linearly
/// between the two neighbouring frames and the phase is advanced by the
/// measured instantaneous frequency of each bin. `rate > 1` shortens.
pub fn phase_vocoder(s: &ComplexSpectrogram, rate: f64) -> Result<ComplexSpectrogram> {
    if !rate.is_finite() || rate <= 0.0 {
        return Err(Error::InvalidParams("rate must be positive"));
    }
    let n_bins = s.n_bins();
    let n_frames = s.n_frames();
    let n_out = math::ceil(n_frames as f64 / rate) as usize;

    let expected: Vec<f64> = (0..n_bins)
        .map(|k| 2.0 * PI * s.hop() as f64 * k as f64 / s.n_fft() as f64)
        .collect();
    let mut phase: Vec<f64> = s.frame(0).iter().map(|c| c.arg()).collect();
    let zero = Complex64::new(0.0, 0.0);

    let mut data = Vec::with_capacity(n_bins * n_out);
    for t in 0..n_out {
        let pos = t as f64 * rate;
        // `n_out` can overshoot by one frame when `n_frames / rate` rounds up.
        let (i, alpha) = match math::floor(pos) as usize {
            i if i < n_frames => (i, pos - i as f64),
            _ => (n_frames - 1, 0.0),
        };
        let left = s.frame(i);
        let right = (i + 1 < n_frames).then(|| s.frame(i + 1));
        for k in 0..n_bins {
            let l = left[k];
            let r = right.map_or(zero, |f| f[k]);
            let mag = (1.0 - alpha) * l.norm() + alpha * r.norm();
            data.push(Complex64::from_polar(mag, phase[k]));

            let dphase = r.arg() - l.arg() - expected[k];
            let wrapped = dphase - 2.0 * PI * math::round(dphase / (2.0 * PI));
            phase[k] += expected[k] + wrapped;
        }
    }
    ComplexSpectrogram::new(data, s.n_fft(), s.hop(), n_out, s.sample_rate())
}
