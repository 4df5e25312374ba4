use alloc::vec::Vec;

use super::FeatureImage;
use crate::error::{Error, Result};
use crate::math;

/// Source coordinate and blend weight for each output index, align-corners.
fn axis_map(input: usize, output: usize) -> Vec<(usize, usize, f64)> {
    (0..output)
        .map(|i| {
            let pos = if output == 1 {
                0.0
            } else {
                i as f64 * (input - 1) as f64 / (output - 1) as f64
            };
            let i0 = (math::floor(pos) as usize).min(input - 1);
            let i1 = (i0 + 1).min(input - 1);
            (i0, i1, pos - i0 as f64)
        })
        .collect()
}

/// Align-corners bilinear resize.
///
/// Output index `i` samples the input at `i * (in - 1) / (out - 1)`, so the
/// four corners are copied exactly and no value leaves the input's range.
pub fn resize_bilinear(
    img: &FeatureImage,
    out_rows: usize,
    out_cols: usize,
) -> Result<FeatureImage> {
    if img.rows() == 0 || img.cols() == 0 {
        return Err(Error::InvalidParams("cannot resize an empty image"));
    }
    if out_rows == 0 || out_cols == 0 {
        return Err(Error::InvalidParams("output dimensions must be at least 1"));
    }
    let (lo, hi) = img.range();
    let rows = axis_map(img.rows(), out_rows);
    let cols = axis_map(img.cols(), out_cols);
    let lerp = |a: f64, b: f64, t: f64| a + (b - a) * t;

    let mut values = Vec::with_capacity(out_rows * out_cols);
    for &(r0, r1, tr) in &rows {
        for &(c0, c1, tc) in &cols {
            let top = lerp(img.get(r0, c0) as f64, img.get(r0, c1) as f64, tc);
            let bottom = lerp(img.get(r1, c0) as f64, img.get(r1, c1) as f64, tc);
            let v = lerp(top, bottom, tr) as f32;
            values.push(v.clamp(lo, hi));
        }
    }
    FeatureImage::new(values, out_rows, out_cols, img.scale())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsp::Scale;
    use alloc::vec;

    fn image(rows: usize, cols: usize) -> FeatureImage {
        let values = (0..rows * cols)
            .map(|i| ((i * 37) % 101) as f32 * 0.5 - 20.0)
            .collect();
        FeatureImage::new(values, rows, cols, Scale::Decibel).unwrap()
    }

    #[test]
    fn same_shape_is_identity() {
        let img = image(64, 16);
        let out = resize_bilinear(&img, 64, 16).unwrap();
        for (a, b) in img.values().iter().zip(out.values()) {
            assert!((a - b).abs() <= 1e-6);
        }
    }

    #[test]
    fn corners_and_range() {
        let img = image(64, 16);
        let out = resize_bilinear(&img, 32, 32).unwrap();
        assert_eq!(out.shape(), (32, 32));
        assert_eq!(out.get(0, 0), img.get(0, 0));
        assert_eq!(out.get(0, 31), img.get(0, 15));
        assert_eq!(out.get(31, 0), img.get(63, 0));
        assert_eq!(out.get(31, 31), img.get(63, 15));
        let (lo, hi) = img.range();
        assert!(out.values().iter().all(|&v| v >= lo && v <= hi));
    }

    #[test]
    fn constant_stays_constant() {
        let img = FeatureImage::new(vec![-3.5; 12], 3, 4, Scale::Decibel).unwrap();
        for (r, c) in [(1, 1), (7, 2), (32, 32)] {
            let out = resize_bilinear(&img, r, c).unwrap();
            assert!(out.values().iter().all(|&v| v == -3.5));
        }
    }

    #[test]
    fn single_pixel_output_takes_origin() {
        let img = image(5, 5);
        let out = resize_bilinear(&img, 1, 1).unwrap();
        assert_eq!(out.values(), &[img.get(0, 0)]);
    }

    #[test]
    fn rejects_zero_dims() {
        let img = image(2, 2);
        assert!(resize_bilinear(&img, 0, 3).is_err());
        let empty = FeatureImage::new(vec![], 0, 0, Scale::Power).unwrap();
        assert!(resize_bilinear(&empty, 3, 3).is_err());
    }
}
