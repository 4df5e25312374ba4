//! 8-bit grayscale previews of feature images.

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use wavaug_core::FeatureImage;

use crate::error::{Error, Result};

/// Map values linearly so the minimum is black and the maximum white; a flat
/// image is mid-gray. Rows are flipped so the first row (lowest mel band)
/// ends up at the bottom.
pub fn to_gray(img: &FeatureImage) -> Vec<u8> {
    let (lo, hi) = img.range();
    let span = hi as f64 - lo as f64;
    let mut out = Vec::with_capacity(img.values().len());
    for r in (0..img.rows()).rev() {
        for c in 0..img.cols() {
            let v = img.get(r, c) as f64;
            out.push(if span > 0.0 {
                ((v - lo as f64) / span * 255.0).round() as u8
            } else {
                128
            });
        }
    }
    out
}

pub fn write_preview(path: impl AsRef<Path>, img: &FeatureImage) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut enc = ::png::Encoder::new(BufWriter::new(file), img.cols() as u32, img.rows() as u32);
    enc.set_color(::png::ColorType::Grayscale);
    enc.set_depth(::png::BitDepth::Eight);
    let mut writer = enc.write_header()?;
    writer.write_image_data(&to_gray(img))?;
    writer.finish()?;
    Ok(())
}
