//! PCM16 mono RIFF/WAVE subset.

use std::path::Path;

use super::PcmBuffer;
use crate::error::{Error, Result};

pub const WAV_HEADER_LEN: usize = 44;

const FORMAT_PCM: u16 = 1;

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedFile(msg.into())
}

fn le_u16(b: &[u8], at: usize) -> u16 {
    u16::from_le_bytes([b[at], b[at + 1]])
}

fn le_u32(b: &[u8], at: usize) -> u32 {
    u32::from_le_bytes([b[at], b[at + 1], b[at + 2], b[at + 3]])
}

struct Fmt {
    sample_rate: u32,
}

fn parse_fmt(body: &[u8]) -> Result<Fmt> {
    if body.len() < 16 {
        return Err(malformed("fmt chunk shorter than 16 bytes"));
    }
    let format = le_u16(body, 0);
    let channels = le_u16(body, 2);
    let sample_rate = le_u32(body, 4);
    let block_align = le_u16(body, 12);
    let bits = le_u16(body, 14);
    if format != FORMAT_PCM {
        return Err(Error::UnsupportedFormat(format!(
            "format code {format} (only PCM is supported)"
        )));
    }
    if channels != 1 {
        return Err(Error::UnsupportedFormat(format!(
            "{channels} channels (only mono is supported)"
        )));
    }
    if bits != 16 {
        return Err(Error::UnsupportedFormat(format!(
            "{bits} bits per sample (only 16 is supported)"
        )));
    }
    if block_align != 2 {
        return Err(malformed(format!("block align {block_align} for 16-bit mono")));
    }
    if sample_rate == 0 {
        return Err(malformed("sample rate is zero"));
    }
    Ok(Fmt { sample_rate })
}

/// Parses an in-memory WAV file. Unknown chunks are skipped.
pub fn parse_wav(bytes: &[u8]) -> Result<PcmBuffer> {
    if bytes.len() < 12 {
        return Err(malformed("shorter than a RIFF header"));
    }
    if &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"WAVE" {
        return Err(malformed("missing RIFF/WAVE magic"));
    }

    let mut fmt = None;
    let mut data: Option<&[u8]> = None;
    let mut pos = 12;
    while pos < bytes.len() {
        if bytes.len() - pos < 8 {
            return Err(malformed("truncated chunk header"));
        }
        let id = &bytes[pos..pos + 4];
        let size = le_u32(bytes, pos + 4) as usize;
        let start = pos + 8;
        let end = start
            .checked_add(size)
            .filter(|&e| e <= bytes.len())
            .ok_or_else(|| malformed(format!("chunk {:?} overruns file", String::from_utf8_lossy(id))))?;
        let body = &bytes[start..end];
        match id {
            b"fmt " => {
                if fmt.is_some() {
                    return Err(malformed("duplicate fmt chunk"));
                }
                fmt = Some(parse_fmt(body)?);
            }
            b"data" => {
                if data.is_some() {
                    return Err(malformed("more than one data chunk"));
                }
                data = Some(body);
            }
            _ => {}
        }
        // RIFF chunks are word aligned; a trailing pad byte may be absent.
        pos = end + (size & 1);
    }

    let fmt = fmt.ok_or_else(|| malformed("missing fmt chunk"))?;
    let data = data.ok_or_else(|| malformed("missing data chunk"))?;
    if data.len() % 2 != 0 {
        return Err(malformed("data chunk is not a whole number of samples"));
    }
    let words = data
        .chunks_exact(2)
        .map(|c| i16::from_le_bytes([c[0], c[1]]))
        .collect();
    Ok(PcmBuffer::new(words, fmt.sample_rate))
}

/// Canonical 44-byte-header encoding.
pub fn serialize_wav(buf: &PcmBuffer) -> Result<Vec<u8>> {
    let data_len = buf
        .words
        .len()
        .checked_mul(2)
        .and_then(|n| u32::try_from(n).ok())
        .filter(|n| n.checked_add(36).is_some())
        .ok_or_else(|| Error::InvalidParameter("too many samples for a RIFF file".into()))?;
    let mut out = Vec::with_capacity(WAV_HEADER_LEN + data_len as usize);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&(36 + data_len).to_le_bytes());
    out.extend_from_slice(b"WAVE");
    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&FORMAT_PCM.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes());
    out.extend_from_slice(&buf.sample_rate.to_le_bytes());
    out.extend_from_slice(&buf.sample_rate.wrapping_mul(2).to_le_bytes());
    out.extend_from_slice(&2u16.to_le_bytes());
    out.extend_from_slice(&16u16.to_le_bytes());
    out.extend_from_slice(b"data");
    out.extend_from_slice(&data_len.to_le_bytes());
    for w in &buf.words {
        out.extend_from_slice(&w.to_le_bytes());
    }
    Ok(out)
}

pub fn read_wav(path: impl AsRef<Path>) -> Result<PcmBuffer> {
    parse_wav(&std::fs::read(path)?)
}

pub fn write_wav(buf: &PcmBuffer, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, serialize_wav(buf)?)?;
    Ok(())
}
