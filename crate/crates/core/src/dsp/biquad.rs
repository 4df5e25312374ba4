use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math;
use crate::signal::Waveform;

/// Normalised biquad coefficients (`a0 == 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Biquad {
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
    pub a1: f64,
    pub a2: f64,
}

impl Biquad {
    /// Band-pass with 0 dB gain at the centre (RBJ cookbook).
    pub fn bandpass(sample_rate: u32, center_hz: f64, q: f64) -> Result<Self> {
        let (w0, alpha) = prewarp(sample_rate, center_hz, q)?;
        let a0 = 1.0 + alpha;
        Ok(Self {
            b0: alpha / a0,
            b1: 0.0,
            b2: -alpha / a0,
            a1: -2.0 * math::cos(w0) / a0,
            a2: (1.0 - alpha) / a0,
        })
    }

    /// Notch (RBJ cookbook).
    pub fn bandstop(sample_rate: u32, center_hz: f64, q: f64) -> Result<Self> {
        let (w0, alpha) = prewarp(sample_rate, center_hz, q)?;
        let a0 = 1.0 + alpha;
        let c = -2.0 * math::cos(w0) / a0;
        Ok(Self {
            b0: 1.0 / a0,
            b1: c,
            b2: 1.0 / a0,
            a1: c,
            a2: (1.0 - alpha) / a0,
        })
    }

    /// Complex response at angular frequency `omega` (radians/sample).
    pub fn response(&self, omega: f64) -> Complex64 {
        let z1 = Complex64::from_polar(1.0, -omega);
        let z2 = z1 * z1;
        (self.b0 + z1 * self.b1 + z2 * self.b2) / (1.0 + z1 * self.a1 + z2 * self.a2)
    }

    /// Direct form I over the whole buffer, zero initial state.
    pub fn process(&self, x: &[f64]) -> Vec<f64> {
        let (mut x1, mut x2, mut y1, mut y2) = (0.0, 0.0, 0.0, 0.0);
        x.iter()
            .map(|&x0| {
                let y0 = self.b0 * x0 + self.b1 * x1 + self.b2 * x2 - self.a1 * y1 - self.a2 * y2;
                x2 = x1;
                x1 = x0;
                y2 = y1;
                y1 = y0;
                y0
            })
            .collect()
    }
}

fn prewarp(sample_rate: u32, center_hz: f64, q: f64) -> Result<(f64, f64)> {
    let nyquist = sample_rate as f64 / 2.0;
    if !(center_hz > 0.0 && center_hz < nyquist) {
        return Err(Error::InvalidParams(
            "center frequency must lie in (0, sample_rate/2)",
        ));
    }
    if !q.is_finite() || q <= 0.0 {
        return Err(Error::InvalidParams("q must be positive"));
    }
    let w0 = 2.0 * PI * center_hz / sample_rate as f64;
    Ok((w0, math::sin(w0) / (2.0 * q)))
}

fn run(w: &Waveform, filter: Biquad) -> Result<Waveform> {
    let y = filter.process(&w.to_f64());
    Waveform::from_f64(&y, w.sample_rate())
}

pub fn biquad_bandpass(w: &Waveform, center_hz: f64, q: f64) -> Result<Waveform> {
    run(w, Biquad::bandpass(w.sample_rate(), center_hz, q)?)
}

pub fn biquad_bandstop(w: &Waveform, center_hz: f64, q: f64) -> Result<Waveform> {
    run(w, Biquad::bandstop(w.sample_rate(), center_hz, q)?)
}
