#![allow(dead_code)]

use std::f64::consts::PI;

use wavaug_core::{RandomSource, Waveform};

pub fn sine(freq: f64, sr: u32, len: usize, amp: f64) -> Waveform {
    let x: Vec<f32> = (0..len)
        .map(|n| (amp * (2.0 * PI * freq * n as f64 / sr as f64).sin()) as f32)
        .collect();
    Waveform::new(x, sr).unwrap()
}

pub fn white_noise(len: usize, sr: u32, seed: u64) -> Waveform {
    let mut rng = RandomSource::new(seed);
    let x: Vec<f32> = (0..len)
        .map(|_| (rng.next_float() * 2.0 - 1.0) as f32 * 0.5)
        .collect();
    Waveform::new(x, sr).unwrap()
}

/// Direct O(n^2) DFT of a real sequence, bins 0..=n/2.
pub fn direct_dft(x: &[f64]) -> Vec<(f64, f64)> {
    let n = x.len();
    (0..=n / 2)
        .map(|k| {
            let mut re = 0.0;
            let mut im = 0.0;
            for (t, v) in x.iter().enumerate() {
                let a = -2.0 * PI * ((k * t) % n) as f64 / n as f64;
                re += v * a.cos();
                im += v * a.sin();
            }
            (re, im)
        })
        .collect()
}

/// Frequency of the largest DFT magnitude, by direct evaluation of every bin
/// with a rotating phasor.
pub fn peak_frequency(samples: &[f32], sr: u32) -> f64 {
    let n = samples.len();
    let mut best = (0usize, 0.0f64);
    for k in 1..n / 2 {
        let step = -2.0 * PI * k as f64 / n as f64;
        let (sin_s, cos_s) = step.sin_cos();
        let (mut c, mut s) = (1.0f64, 0.0f64);
        let (mut re, mut im) = (0.0, 0.0);
        for &v in samples {
            re += v as f64 * c;
            im += v as f64 * s;
            let nc = c * cos_s - s * sin_s;
            s = c * sin_s + s * cos_s;
            c = nc;
        }
        let mag = re * re + im * im;
        if mag > best.1 {
            best = (k, mag);
        }
    }
    best.0 as f64 * sr as f64 / n as f64
}

pub fn rms(x: &[f32]) -> f64 {
    (x.iter().map(|&v| (v as f64).powi(2)).sum::<f64>() / x.len() as f64).sqrt()
}

pub fn snr_db(clean: &[f32], noisy: &[f32]) -> f64 {
    let ps: f64 = clean.iter().map(|&v| (v as f64).powi(2)).sum();
    let pn: f64 = clean
        .iter()
        .zip(noisy)
        .map(|(&a, &b)| (b as f64 - a as f64).powi(2))
        .sum();
    10.0 * (ps / pn).log10()
}
