//! Hamming(15,11) protection of a PCM16 bitstream.
//!
//! A protected stream is a 45-bit header followed by 15-bit payload
//! codewords. The header is the 32-bit big-endian count of payload bits,
//! padded to 33 bits and encoded as three codewords, so framing survives a
//! single flip per block like the payload does.

mod hamming;

pub use hamming::{
    decode_word, encode_word, hamming_decode_block, hamming_encode_block, syndrome, syndrome_word,
    DecodedBlock, CODE_BITS, DATA_BITS,
};

use crate::error::{Error, Result};
use crate::signal_io::PcmBuffer;

pub const HEADER_DATA_BITS: usize = 32;
pub const HEADER_BLOCKS: usize = 3;
pub const HEADER_CODE_BITS: usize = HEADER_BLOCKS * CODE_BITS;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BitOrigin {
    /// 16-bit words serialized most significant bit first.
    Pcm16MsbFirst,
    Raw,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitStream {
    pub bits: Vec<bool>,
    pub origin: BitOrigin,
}

impl BitStream {
    pub fn raw(bits: Vec<bool>) -> Self {
        Self {
            bits,
            origin: BitOrigin::Raw,
        }
    }

    pub fn from_pcm(buf: &PcmBuffer) -> Self {
        let bits = buf
            .words
            .iter()
            .flat_map(|&w| (0..16).rev().map(move |i| (w as u16) >> i & 1 == 1))
            .collect();
        Self {
            bits,
            origin: BitOrigin::Pcm16MsbFirst,
        }
    }

    /// Repacks MSB-first 16-bit words.
    pub fn to_words(&self) -> Result<Vec<i16>> {
        if !self.bits.len().is_multiple_of(16) {
            return Err(Error::MalformedStream(format!(
                "{} bits is not a whole number of 16-bit words",
                self.bits.len()
            )));
        }
        Ok(self
            .bits
            .chunks_exact(16)
            .map(|c| c.iter().fold(0u16, |acc, &b| acc << 1 | u16::from(b)) as i16)
            .collect())
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

fn encode_blocks(bits: &[bool], out: &mut Vec<bool>) {
    for chunk in bits.chunks(DATA_BITS) {
        let data = chunk
            .iter()
            .enumerate()
            .fold(0u16, |acc, (t, &b)| acc | u16::from(b) << t);
        let cw = encode_word(data);
        out.extend((0..CODE_BITS).map(|i| cw >> i & 1 == 1));
    }
}

/// Decodes consecutive codewords, appending data bits; returns the number
/// of blocks in which a bit was corrected.
fn decode_blocks(bits: &[bool], out: &mut Vec<bool>) -> usize {
    let mut corrected = 0;
    for chunk in bits.chunks_exact(CODE_BITS) {
        let cw = chunk
            .iter()
            .enumerate()
            .fold(0u16, |acc, (i, &b)| acc | u16::from(b) << i);
        let (data, pos) = decode_word(cw);
        corrected += usize::from(pos != 0);
        out.extend((0..DATA_BITS).map(|t| data >> t & 1 == 1));
    }
    corrected
}

/// Number of payload codewords needed for `payload_bits` data bits.
pub fn payload_blocks(payload_bits: usize) -> usize {
    payload_bits.div_ceil(DATA_BITS)
}

/// Serializes and Hamming-encodes a PCM buffer.
pub fn protect(buf: &PcmBuffer) -> Result<BitStream> {
    let payload = BitStream::from_pcm(buf);
    let count = u32::try_from(payload.len())
        .map_err(|_| Error::InvalidParameter("buffer too long for a 32-bit bit count".into()))?;

    let header: Vec<bool> = (0..HEADER_DATA_BITS)
        .rev()
        .map(|i| count >> i & 1 == 1)
        .collect();
    let mut out = Vec::with_capacity(HEADER_CODE_BITS + CODE_BITS * payload_blocks(payload.len()));
    encode_blocks(&header, &mut out);
    encode_blocks(&payload.bits, &mut out);
    debug_assert_eq!(out.len() - HEADER_CODE_BITS, CODE_BITS * payload_blocks(payload.len()));
    Ok(BitStream::raw(out))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unprotected {
    pub pcm: PcmBuffer,
    /// Codewords (header included) in which a single bit was flipped back.
    pub corrected_blocks: usize,
}

/// Inverse of [`protect`]. The stream carries no sample rate, so the caller
/// supplies it.
pub fn unprotect(stream: &BitStream, sample_rate: u32) -> Result<Unprotected> {
    let n = stream.len();
    if n < HEADER_CODE_BITS || !(n - HEADER_CODE_BITS).is_multiple_of(CODE_BITS) {
        return Err(Error::MalformedStream(format!(
            "length {n} is not 45 + 15k"
        )));
    }
    let blocks = (n - HEADER_CODE_BITS) / CODE_BITS;

    let mut header = Vec::with_capacity(HEADER_BLOCKS * DATA_BITS);
    let mut corrected = decode_blocks(&stream.bits[..HEADER_CODE_BITS], &mut header);
    let count = header[..HEADER_DATA_BITS]
        .iter()
        .fold(0u32, |acc, &b| acc << 1 | u32::from(b)) as usize;
    if !count.is_multiple_of(16) || payload_blocks(count) != blocks {
        return Err(Error::MalformedStream(format!(
            "header declares {count} payload bits, stream holds {blocks} blocks"
        )));
    }

    let mut payload = Vec::with_capacity(blocks * DATA_BITS);
    corrected += decode_blocks(&stream.bits[HEADER_CODE_BITS..], &mut payload);
    payload.truncate(count);
    let words = BitStream {
        bits: payload,
        origin: BitOrigin::Pcm16MsbFirst,
    }
    .to_words()?;
    Ok(Unprotected {
        pcm: PcmBuffer::new(words, sample_rate),
        corrected_blocks: corrected,
    })
}

/// Packs bits MSB-first into bytes, zero-padding the final byte.
pub fn pack_bits(bits: &[bool]) -> Vec<u8> {
    bits.chunks(8)
        .map(|c| {
            c.iter()
                .enumerate()
                .fold(0u8, |acc, (i, &b)| acc | u8::from(b) << (7 - i))
        })
        .collect()
}

pub fn unpack_bits(bytes: &[u8], len: usize) -> Vec<bool> {
    bytes
        .iter()
        .flat_map(|&byte| (0..8).rev().map(move |i| byte >> i & 1 == 1))
        .take(len)
        .collect()
}

/// On-disk form of a protected stream.
pub fn serialize_stream(stream: &BitStream) -> Vec<u8> {
    pack_bits(&stream.bits)
}

/// Recovers a protected stream from its packed bytes. The logical length is
/// the unique `45 + 15k` that packs into exactly this many bytes.
pub fn parse_stream(bytes: &[u8]) -> Result<BitStream> {
    let total = bytes.len() * 8;
    let len = (total.saturating_sub(7)..=total)
        .find(|&l| l >= HEADER_CODE_BITS && (l - HEADER_CODE_BITS).is_multiple_of(CODE_BITS))
        .ok_or_else(|| {
            Error::MalformedStream(format!("{} bytes cannot hold a 45 + 15k bit stream", bytes.len()))
        })?;
    Ok(BitStream::raw(unpack_bits(bytes, len)))
}
