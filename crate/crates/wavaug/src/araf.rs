//! ARAF tensor files.
//!
//! ```text
//! "ARAF" | version: u32 = 1 | ndim: u32 | dims: ndim x u32 | payload: f32 row-major
//! ```
//! All integers and floats little-endian.

use std::fs;
use std::path::Path;

use wavaug_core::FeatureImage;

use crate::error::{Error, Result};

pub const MAGIC: [u8; 4] = *b"ARAF";
pub const VERSION: u32 = 1;

/// A decoded ARAF tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    pub dims: Vec<u32>,
    pub values: Vec<f32>,
}

impl Tensor {
    pub fn new(dims: Vec<u32>, values: Vec<f32>) -> Result<Self> {
        let count = dims
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d as usize));
        if count != Some(values.len()) {
            return Err(Error::MalformedAraf(format!(
                "dims {dims:?} do not match {} values",
                values.len()
            )));
        }
        Ok(Self { dims, values })
    }
}

impl From<&FeatureImage> for Tensor {
    fn from(img: &FeatureImage) -> Self {
        Tensor {
            dims: vec![img.rows() as u32, img.cols() as u32],
            values: img.values().to_vec(),
        }
    }
}

pub fn encode(t: &Tensor) -> Vec<u8> {
    let mut out = Vec::with_capacity(12 + 4 * t.dims.len() + 4 * t.values.len());
    out.extend_from_slice(&MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&(t.dims.len() as u32).to_le_bytes());
    for d in &t.dims {
        out.extend_from_slice(&d.to_le_bytes());
    }
    for v in &t.values {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

pub fn decode(bytes: &[u8]) -> Result<Tensor> {
    let word = |i: usize| -> Result<u32> {
        bytes
            .get(i..i + 4)
            .map(|b| u32::from_le_bytes(b.try_into().unwrap()))
            .ok_or_else(|| Error::MalformedAraf("truncated header".into()))
    };
    if bytes.len() < 4 || bytes[..4] != MAGIC {
        return Err(Error::MalformedAraf("bad magic".into()));
    }
    let version = word(4)?;
    if version != VERSION {
        return Err(Error::MalformedAraf(format!(
            "unsupported version {version}"
        )));
    }
    let ndim = word(8)? as usize;
    let dims = (0..ndim)
        .map(|i| word(12 + 4 * i))
        .collect::<Result<Vec<_>>>()?;
    let payload = &bytes[12 + 4 * ndim..];
    if !payload.len().is_multiple_of(4) {
        return Err(Error::MalformedAraf(
            "payload is not whole float32 values".into(),
        ));
    }
    let values = payload
        .chunks_exact(4)
        .map(|b| f32::from_le_bytes(b.try_into().unwrap()))
        .collect();
    Tensor::new(dims, values)
}

pub fn write(path: impl AsRef<Path>, t: &Tensor) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, encode(t)).map_err(|e| Error::io(path, e))
}

pub fn read(path: impl AsRef<Path>) -> Result<Tensor> {
    let path = path.as_ref();
    decode(&fs::read(path).map_err(|e| Error::io(path, e))?)
}
