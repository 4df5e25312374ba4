mod common;

use common::{peak_frequency, rms, sine, snr_db, white_noise};
use proptest::prelude::*;
use wavaug_core::augment::{
    self, band_pass, band_stop, bandwidth_q, draw_band_center, noise_inject, output_len,
    pitch_shift, time_stretch,
};
use wavaug_core::dsp::Biquad;
use wavaug_core::{AugmentationKind, RandomSource, Waveform};

#[test]
fn noise_snr_20() {
    let w = sine(440.0, 16000, 16000, 0.5);
    for seed in 0..5 {
        let y = noise_inject(&w, 20.0, &mut RandomSource::new(seed)).unwrap();
        assert_eq!(y.len(), w.len());
        let snr = snr_db(w.samples(), y.samples());
        assert!((19.5..=20.5).contains(&snr), "snr {snr}");
    }
}

#[test]
fn noise_snr_60() {
    let w = sine(440.0, 16000, 16000, 0.5);
    let y = noise_inject(&w, 60.0, &mut RandomSource::new(3)).unwrap();
    let diff: Vec<f32> = w
        .samples()
        .iter()
        .zip(y.samples())
        .map(|(a, b)| b - a)
        .collect();
    let ratio = rms(&diff) / rms(w.samples());
    assert!((ratio - 1e-3).abs() <= 0.05e-3, "ratio {ratio}");
}

#[test]
fn pitch_up_an_octave() {
    let w = sine(440.0, 8000, 16000, 0.5);
    let y = pitch_shift(&w, 12.0, &mut RandomSource::new(0)).unwrap();
    assert_eq!(y.len(), w.len());
    assert_eq!(y.sample_rate(), 8000);
    let f = peak_frequency(y.samples(), 8000);
    assert!((f - 880.0).abs() / 880.0 < 0.03, "peak {f}");
}

#[test]
fn pitch_down_an_octave() {
    let w = sine(880.0, 8000, 16000, 0.5);
    let y = pitch_shift(&w, -12.0, &mut RandomSource::new(0)).unwrap();
    assert_eq!(y.len(), w.len());
    let f = peak_frequency(y.samples(), 8000);
    assert!((f - 440.0).abs() / 440.0 < 0.03, "peak {f}");
}

#[test]
fn pitch_zero_is_identity() {
    let w = sine(440.0, 8000, 8000, 0.5);
    let y = pitch_shift(&w, 0.0, &mut RandomSource::new(0)).unwrap();
    assert_eq!(y.len(), w.len());
    let f = peak_frequency(y.samples(), 8000);
    assert!((f - 440.0).abs() / 440.0 < 0.01);
}

#[test]
fn stretch_examples() {
    let w = sine(440.0, 8000, 16000, 0.5);
    let same = time_stretch(&w, 1.0, &mut RandomSource::new(0)).unwrap();
    assert_eq!(same.len(), 16000);
    assert!((rms(same.samples()) / rms(w.samples()) - 1.0).abs() < 0.05);

    let fast = time_stretch(&w, 1.4, &mut RandomSource::new(0)).unwrap();
    assert_eq!(fast.len(), 11429);
    let f = peak_frequency(fast.samples(), 8000);
    assert!((f - 440.0).abs() / 440.0 < 0.03, "peak {f}");
}

#[test]
fn band_pass_passes_its_center() {
    let sr = 8000;
    for seed in 0..6 {
        let center = draw_band_center(&mut RandomSource::new(seed), sr);
        let w = sine(center, sr, 32000, 0.5);
        let y = band_pass(&w, 2.0, &mut RandomSource::new(seed)).unwrap();
        assert_eq!(y.len(), w.len());
        let gain_db = 20.0 * (rms(&y.samples()[16000..]) / rms(&w.samples()[16000..])).log10();
        let analytic = Biquad::bandpass(sr, center, bandwidth_q(2.0)).unwrap();
        let h = analytic
            .response(2.0 * std::f64::consts::PI * center / sr as f64)
            .norm();
        assert!((h - 1.0).abs() < 1e-9);
        assert!(gain_db.abs() < 3.0, "center {center}: {gain_db} dB");
    }
}

#[test]
fn band_stop_rejects_its_center() {
    let sr = 16000;
    for seed in 10..16 {
        let center = draw_band_center(&mut RandomSource::new(seed), sr);
        let w = sine(center, sr, 64000, 0.5);
        let y = band_stop(&w, 2.0, &mut RandomSource::new(seed)).unwrap();
        let gain_db = 20.0 * (rms(&y.samples()[32000..]) / rms(&w.samples()[32000..])).log10();
        assert!(gain_db < -20.0, "center {center}: {gain_db} dB");
    }
}

fn kind_strategy() -> impl Strategy<Value = AugmentationKind> {
    prop::sample::select(AugmentationKind::ALL.to_vec())
}

fn magnitude_strategy(kind: AugmentationKind) -> BoxedStrategy<f64> {
    let s = kind.spec();
    if s.lo == s.hi {
        Just(s.lo).boxed()
    } else if s.lo_exclusive {
        (s.lo..=s.hi)
            .prop_filter("open lower bound", move |&m| m > s.lo)
            .boxed()
    } else {
        (s.lo..=s.hi).boxed()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn length_contract(
        (kind, magnitude) in kind_strategy().prop_flat_map(|k| (Just(k), magnitude_strategy(k))),
        len in 1usize..20000,
        sr in prop::sample::select(vec![8000u32, 16000, 22050]),
        seed in any::<u64>(),
    ) {
        let w = white_noise(len, sr, seed);
        let y = augment::apply(kind, &w, magnitude, &mut RandomSource::new(seed)).unwrap();
        prop_assert_eq!(y.len(), output_len(kind, magnitude, len));
        prop_assert_eq!(y.sample_rate(), sr);
        prop_assert!(y.samples().iter().all(|v| v.is_finite()));
        prop_assert!(!y.is_empty());
    }

    #[test]
    fn operators_are_deterministic(
        (kind, magnitude) in kind_strategy().prop_flat_map(|k| (Just(k), magnitude_strategy(k))),
        len in 1usize..3000,
        seed in any::<u64>(),
    ) {
        let w = white_noise(len, 8000, seed ^ 1);
        let a = augment::apply(kind, &w, magnitude, &mut RandomSource::new(seed)).unwrap();
        let b = augment::apply(kind, &w, magnitude, &mut RandomSource::new(seed)).unwrap();
        let bits = |x: &Waveform| x.samples().iter().map(|v| v.to_bits()).collect::<Vec<_>>();
        prop_assert_eq!(bits(&a), bits(&b));
    }

    #[test]
    fn clip_is_bounded_and_idempotent(len in 1usize..2000, level in 0.01f64..=1.0, seed in any::<u64>()) {
        let w = white_noise(len, 8000, seed);
        let mut rng = RandomSource::new(0);
        let y = augment::clip(&w, level, &mut rng).unwrap();
        let t = (level * w.peak() as f64) as f32;
        prop_assert!(y.peak() <= t);
        let y2: Vec<f32> = y.samples().iter().map(|&s| s.clamp(-t, t)).collect();
        prop_assert_eq!(y2.as_slice(), y.samples());
    }
}
