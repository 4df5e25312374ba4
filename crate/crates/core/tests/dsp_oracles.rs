mod common;

use std::f64::consts::PI;

use common::{direct_dft, peak_frequency, rms, sine, white_noise};
use proptest::prelude::*;
use wavaug_core::dsp::{
    biquad_bandpass, biquad_bandstop, istft, mel_filterbank, mel_spectrogram, phase_vocoder,
    resize_bilinear, stft, Biquad,
};
use wavaug_core::signal::{peak_normalize, resample};
use wavaug_core::{MelParams, Waveform, Window};

#[test]
fn stft_frame_matches_direct_dft() {
    let w = white_noise(5000, 8000, 11);
    for n_fft in [256usize, 512, 1024, 300] {
        let hop = n_fft / 4;
        let s = stft(&w, n_fft, hop, Window::Hann).unwrap();
        let win = Window::Hann.values(n_fft);
        // an interior frame, no reflection involved
        let t = 6;
        let start = t * hop - n_fft / 2;
        let frame: Vec<f64> = (0..n_fft)
            .map(|n| w.samples()[start + n] as f64 * win[n])
            .collect();
        let reference = direct_dft(&frame);
        for (k, (re, im)) in reference.iter().enumerate() {
            let c = s.get(k, t);
            assert!(
                (c.re - re).abs() < 1e-6 && (c.im - im).abs() < 1e-6,
                "n_fft={n_fft} k={k}"
            );
        }
    }
}

#[test]
fn stft_peaks_at_exact_bin() {
    let (sr, n_fft, k) = (8000u32, 512usize, 37usize);
    let w = sine(k as f64 * sr as f64 / n_fft as f64, sr, 8000, 0.8);
    let s = stft(&w, n_fft, 128, Window::Hann).unwrap();
    for t in 4..s.n_frames() - 4 {
        let best = (0..s.n_bins())
            .max_by(|&a, &b| s.get(a, t).norm().total_cmp(&s.get(b, t).norm()))
            .unwrap();
        assert_eq!(best, k, "frame {t}");
    }
}

#[test]
fn stft_shape_formula() {
    let w = white_noise(8000, 8000, 1);
    let s = stft(&w, 1024, 512, Window::Hann).unwrap();
    assert_eq!(s.shape(), (513, (8000f64 / 512.0).floor() as usize + 1));
    assert_eq!(s.shape(), (513, 16));
}

#[test]
fn cola_round_trip() {
    let x = white_noise(8192, 8000, 5);
    let s = stft(&x, 1024, 256, Window::Hann).unwrap();
    let y = istft(&s, Window::Hann).unwrap();
    assert_eq!(y.len(), (s.n_frames() - 1) * 256);
    let n = y.len();
    let err: Vec<f32> = (0..n).map(|i| y.samples()[i] - x.samples()[i]).collect();
    let rel = rms(&err) / rms(&x.samples()[..n]);
    assert!(rel < 1e-6, "relative RMS error {rel}");
}

#[test]
fn vocoder_keeps_pitch_and_counts_frames() {
    let w = sine(440.0, 8000, 16000, 0.5);
    let s = stft(&w, 1024, 256, Window::Hann).unwrap();
    let fast = phase_vocoder(&s, 1.4).unwrap();
    assert_eq!(fast.n_frames(), (s.n_frames() as f64 / 1.4).ceil() as usize);
    let y = istft(&fast, Window::Hann).unwrap();
    let f = peak_frequency(y.samples(), 8000);
    assert!((f - 440.0).abs() / 440.0 < 0.03, "peak {f}");
}

#[test]
fn resample_keeps_frequency() {
    let w = sine(440.0, 8000, 8000, 0.5);
    let up = resample(&w, 16000).unwrap();
    assert_eq!(up.len(), 16000);
    let f = peak_frequency(up.samples(), 16000);
    let bin = 16000.0 / up.len() as f64;
    assert!((f - 440.0).abs() <= bin, "peak {f}");
}

fn db(x: f64) -> f64 {
    20.0 * x.log10()
}

/// Steady-state gain of the filter on a sine, against |H(e^jw)|.
fn measured_vs_analytic(filter: &Biquad, apply: impl Fn(&Waveform) -> Waveform, freq: f64) {
    let sr = 8000;
    let w = sine(freq, sr, 24000, 0.5);
    let y = apply(&w);
    let settle = 8000;
    let measured = db(rms(&y.samples()[settle..]) / rms(&w.samples()[settle..]));
    let analytic = db(filter.response(2.0 * PI * freq / sr as f64).norm());
    assert!(
        (measured - analytic).abs() < 1.0,
        "{freq} Hz: measured {measured}, analytic {analytic}"
    );
}

#[test]
fn bandpass_matches_analytic_response() {
    let (center, q) = (1000.0, 1.0);
    let f = Biquad::bandpass(8000, center, q).unwrap();
    for freq in [250.0, 500.0, 1000.0, 2000.0] {
        measured_vs_analytic(&f, |w| biquad_bandpass(w, center, q).unwrap(), freq);
    }
    let at_center = db(f.response(2.0 * PI * center / 8000.0).norm());
    assert!(at_center.abs() < 3.0);
    // two octaves above centre, q = 1
    let far = db(Biquad::bandpass(8000, 800.0, 1.0)
        .unwrap()
        .response(2.0 * PI * 3200.0 / 8000.0)
        .norm());
    assert!(far < -12.0, "{far}");
    let w = sine(800.0, 8000, 24000, 0.5);
    let y = biquad_bandpass(&sine(3200.0, 8000, 24000, 0.5), 800.0, 1.0).unwrap();
    assert!(db(rms(&y.samples()[8000..]) / rms(&w.samples()[8000..])) < -12.0);
}

#[test]
fn bandstop_matches_analytic_response() {
    let (center, q) = (1000.0, 1.0);
    let f = Biquad::bandstop(8000, center, q).unwrap();
    for freq in [200.0, 1900.0, 3000.0] {
        measured_vs_analytic(&f, |w| biquad_bandstop(w, center, q).unwrap(), freq);
    }
    let w = sine(center, 8000, 24000, 0.5);
    let y = biquad_bandstop(&w, center, q).unwrap();
    assert!(db(rms(&y.samples()[8000..]) / rms(&w.samples()[8000..])) < -20.0);

    let dc = Waveform::new(vec![0.25; 8000], 8000).unwrap();
    let y = biquad_bandstop(&dc, center, q).unwrap();
    assert!(db(rms(&y.samples()[4000..]) / 0.25).abs() < 3.0);
    assert!((f.response(0.0).norm() - 1.0).abs() < 1e-12);
}

#[test]
fn mel_shapes() {
    let fb = mel_filterbank(8000, 1024, 64, 0.0, 4000.0).unwrap();
    assert_eq!(fb.shape(), (64, 513));
    let w = white_noise(8000, 8000, 3);
    let img = mel_spectrogram(&w, &MelParams::default()).unwrap();
    assert_eq!(img.shape(), (64, 16));
    let (lo, hi) = img.range();
    assert!(hi - lo <= 80.0);
    let small = resize_bilinear(&img, 32, 32).unwrap();
    assert_eq!(small.shape(), (32, 32));
    assert!(small.values().iter().all(|v| v.is_finite()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn cola_holds_for_random_signals(seed in any::<u64>(), extra in 0usize..2000) {
        let n_fft = 512;
        let x = white_noise(4 * n_fft + extra, 16000, seed);
        let s = stft(&x, n_fft, n_fft / 4, Window::Hann).unwrap();
        let y = istft(&s, Window::Hann).unwrap();
        let n = y.len();
        let err: Vec<f32> = (0..n).map(|i| y.samples()[i] - x.samples()[i]).collect();
        prop_assert!(rms(&err) / rms(&x.samples()[..n]) < 1e-6);
    }

    #[test]
    fn stft_is_linear(seed in any::<u64>(), a in -4.0f64..4.0) {
        let x = white_noise(1500, 8000, seed);
        let ax = Waveform::from_f64(&x.samples().iter().map(|&v| v as f64 * a).collect::<Vec<_>>(), 8000).unwrap();
        let s = stft(&x, 256, 64, Window::Hann).unwrap();
        let sa = stft(&ax, 256, 64, Window::Hann).unwrap();
        let scale = s.frames().flatten().map(|c| c.norm()).fold(0.0, f64::max) * a.abs();
        for (p, q) in s.frames().flatten().zip(sa.frames().flatten()) {
            prop_assert!((p * a - q).norm() <= 1e-6 * scale.max(1e-12));
        }
    }

    #[test]
    fn vocoder_identity_rate(seed in any::<u64>()) {
        let x = white_noise(3000, 8000, seed);
        let s = stft(&x, 256, 64, Window::Hann).unwrap();
        let v = phase_vocoder(&s, 1.0).unwrap();
        prop_assert_eq!(v.n_frames(), s.n_frames());
        for (p, q) in s.frames().flatten().zip(v.frames().flatten()) {
            prop_assert!((p.norm() - q.norm()).abs() <= 1e-6 * p.norm().max(1.0));
        }
    }

    #[test]
    fn mel_images_are_finite_and_bounded(seed in any::<u64>(), len in 1usize..6000, amp in 0.0f64..1.0) {
        let x = white_noise(len, 8000, seed);
        let scaled = Waveform::from_f64(&x.samples().iter().map(|&v| v as f64 * amp).collect::<Vec<_>>(), 8000).unwrap();
        let img = mel_spectrogram(&scaled, &MelParams::default()).unwrap();
        prop_assert_eq!(img.shape(), (64, len / 512 + 1));
        let (lo, hi) = img.range();
        prop_assert!(img.values().iter().all(|v| v.is_finite()));
        prop_assert!(hi - lo <= 80.0);
    }

    #[test]
    fn filterbank_output_nonnegative(power in prop::collection::vec(0.0f64..1e3, 257)) {
        let fb = mel_filterbank(16000, 512, 40, 20.0, 7600.0).unwrap();
        let mut out = vec![0.0; 40];
        fb.apply(&power, &mut out);
        prop_assert!(out.iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn resize_corners_and_range(rows in 1usize..40, cols in 1usize..40, out_r in 1usize..50, out_c in 1usize..50, seed in any::<u64>()) {
        let mut rng = wavaug_core::RandomSource::new(seed);
        let v: Vec<f32> = (0..rows * cols).map(|_| (rng.next_float() * 160.0 - 100.0) as f32).collect();
        let img = wavaug_core::FeatureImage::new(v, rows, cols, wavaug_core::Scale::Decibel).unwrap();
        let out = resize_bilinear(&img, out_r, out_c).unwrap();
        let (lo, hi) = img.range();
        prop_assert!(out.values().iter().all(|&x| x >= lo && x <= hi));
        prop_assert_eq!(out.get(0, 0), img.get(0, 0));
        if out_r > 1 && out_c > 1 {
            prop_assert_eq!(out.get(out_r - 1, out_c - 1), img.get(rows - 1, cols - 1));
            prop_assert_eq!(out.get(0, out_c - 1), img.get(0, cols - 1));
            prop_assert_eq!(out.get(out_r - 1, 0), img.get(rows - 1, 0));
        }
    }

    #[test]
    fn resample_preserves_duration(len in 1usize..5000, from in 1000u32..48000, to in 1000u32..48000) {
        let w = Waveform::new(vec![0.1; len], from).unwrap();
        let out = resample(&w, to).unwrap();
        prop_assert!((out.duration_secs() - w.duration_secs()).abs() <= 0.5 / to as f64 + 1e-12);
    }

    #[test]
    fn peak_normalize_hits_target(seed in any::<u64>(), len in 1usize..500, target in 0.01f64..=1.0) {
        let w = white_noise(len, 8000, seed);
        prop_assume!(w.peak() > 0.0);
        let out = peak_normalize(&w, target).unwrap();
        let scan = out.samples().iter().fold(0.0f64, |m, &v| m.max((v as f64).abs()));
        prop_assert!((scan - target).abs() <= 1e-6 * target);
        let again = peak_normalize(&out, target).unwrap();
        for (a, b) in again.samples().iter().zip(out.samples()) {
            prop_assert!((a - b).abs() as f64 <= 1e-6 * target);
        }
    }
}
