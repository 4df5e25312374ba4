//! RIFF/WAVE codec.
//!
//! Reads PCM 16-bit and IEEE float 32-bit files with any number of channels
//! (downmixed to mono by averaging). Always writes mono float 32-bit with a
//! plain 16-byte `fmt ` chunk, so a write/read round trip is bit-exact.

use std::fs;
use std::path::Path;

use wavaug_core::Waveform;

use crate::error::{Error, Result};

const FORMAT_PCM: u16 = 1;
const FORMAT_FLOAT: u16 = 3;
const FORMAT_EXTENSIBLE: u16 = 0xFFFE;

/// Bytes before the sample data in files written by [`encode_wav`].
pub const HEADER_LEN: usize = 44;

pub fn read_wav(path: impl AsRef<Path>) -> Result<Waveform> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_wav(&bytes)
}

pub fn write_wav(path: impl AsRef<Path>, w: &Waveform) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, encode_wav(w)).map_err(|e| Error::io(path, e))
}

struct Format {
    tag: u16,
    channels: u16,
    sample_rate: u32,
    bits: u16,
}

fn u16_at(b: &[u8], at: usize) -> u16 {
    u16::from_le_bytes([b[at], b[at + 1]])
}

fn u32_at(b: &[u8], at: usize) -> u32 {
    u32::from_le_bytes([b[at], b[at + 1], b[at + 2], b[at + 3]])
}

fn malformed(msg: &str) -> Error {
    Error::MalformedWav(msg.into())
}

fn parse_fmt(body: &[u8]) -> Result<Format> {
    if body.len() < 16 {
        return Err(malformed("fmt chunk shorter than 16 bytes"));
    }
    let mut tag = u16_at(body, 0);
    if tag == FORMAT_EXTENSIBLE {
        // cbSize(2) validBits(2) channelMask(4), then the sub-format GUID whose
        // first two bytes are the real format tag
        if body.len() < 40 {
            return Err(malformed("extensible fmt chunk too short"));
        }
        tag = u16_at(body, 24);
    }
    Ok(Format {
        tag,
        channels: u16_at(body, 2),
        sample_rate: u32_at(body, 4),
        bits: u16_at(body, 14),
    })
}

pub fn decode_wav(bytes: &[u8]) -> Result<Waveform> {
    if bytes.len() < 12 || &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"WAVE" {
        return Err(malformed("missing RIFF/WAVE header"));
    }
    let mut fmt = None;
    let mut data = None;
    let mut pos = 12;
    while pos + 8 <= bytes.len() {
        let id = &bytes[pos..pos + 4];
        let size = u32_at(bytes, pos + 4) as usize;
        let start = pos + 8;
        // streaming writers leave the size open; take what is there
        let end = start.saturating_add(size).min(bytes.len());
        match id {
            b"fmt " => fmt = Some(parse_fmt(&bytes[start..end])?),
            b"data" => data = Some(&bytes[start..end]),
            _ => {}
        }
        pos = start.saturating_add(size).saturating_add(size & 1);
    }
    let fmt = fmt.ok_or_else(|| malformed("no fmt chunk"))?;
    let data = data.ok_or_else(|| malformed("no data chunk"))?;
    if fmt.channels == 0 {
        return Err(malformed("zero channels"));
    }
    if fmt.sample_rate == 0 {
        return Err(malformed("zero sample rate"));
    }
    let width = match (fmt.tag, fmt.bits) {
        (FORMAT_PCM, 16) => 2,
        (FORMAT_FLOAT, 32) => 4,
        (format, bits) => return Err(Error::UnsupportedEncoding { format, bits }),
    };
    let channels = fmt.channels as usize;
    let frame = width * channels;
    let frames = data.len() / frame;
    if frames == 0 {
        return Err(wavaug_core::Error::EmptyAudio.into());
    }

    let sample = |at: usize| -> f32 {
        if width == 2 {
            i16::from_le_bytes([data[at], data[at + 1]]) as f32 / 32768.0
        } else {
            f32::from_le_bytes([data[at], data[at + 1], data[at + 2], data[at + 3]])
        }
    };
    let samples: Vec<f32> = if channels == 1 {
        (0..frames).map(|i| sample(i * width)).collect()
    } else {
        (0..frames)
            .map(|i| {
                let sum: f64 = (0..channels)
                    .map(|c| sample(i * frame + c * width) as f64)
                    .sum();
                (sum / channels as f64) as f32
            })
            .collect()
    };
    Ok(Waveform::new(samples, fmt.sample_rate)?)
}

pub fn encode_wav(w: &Waveform) -> Vec<u8> {
    let data_len = (w.len() * 4) as u32;
    let mut out = Vec::with_capacity(HEADER_LEN + data_len as usize);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&(36 + data_len).to_le_bytes());
    out.extend_from_slice(b"WAVE");
    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&FORMAT_FLOAT.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes());
    out.extend_from_slice(&w.sample_rate().to_le_bytes());
    out.extend_from_slice(&(w.sample_rate() * 4).to_le_bytes());
    out.extend_from_slice(&4u16.to_le_bytes());
    out.extend_from_slice(&32u16.to_le_bytes());
    out.extend_from_slice(b"data");
    out.extend_from_slice(&data_len.to_le_bytes());
    for s in w.samples() {
        out.extend_from_slice(&s.to_le_bytes());
    }
    out
}
