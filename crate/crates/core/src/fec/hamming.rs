//! Hamming(15,11) with the positional layout: codeword positions are
//! numbered 1..=15, parity bits sit at 1, 2, 4 and 8, and data bits fill
//! the remaining positions in ascending order. The syndrome of a received
//! word is the position of a single flipped bit.

use crate::error::{Error, Result};

pub const DATA_BITS: usize = 11;
pub const CODE_BITS: usize = 15;

const PARITY_POSITIONS: [usize; 4] = [1, 2, 4, 8];
const DATA_POSITIONS: [usize; DATA_BITS] = [3, 5, 6, 7, 9, 10, 11, 12, 13, 14, 15];

/// Result of decoding one codeword.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecodedBlock {
    pub data: [bool; DATA_BITS],
    /// 1-based position that was flipped back, or 0 if none.
    pub corrected_position: usize,
}

// Packed form: bit `t` of a data word is data bit `t`; bit `p - 1` of a
// codeword is position `p`.

/// XOR of the positions of all set bits.
pub fn syndrome_word(codeword: u16) -> usize {
    (1..=CODE_BITS)
        .filter(|&p| codeword >> (p - 1) & 1 == 1)
        .fold(0, |acc, p| acc ^ p)
}

pub fn encode_word(data: u16) -> u16 {
    let mut cw = 0u16;
    for (t, &pos) in DATA_POSITIONS.iter().enumerate() {
        cw |= (data >> t & 1) << (pos - 1);
    }
    // With parity positions still clear, the syndrome's bit p is exactly
    // the parity over the positions parity bit p must balance.
    let s = syndrome_word(cw);
    for p in PARITY_POSITIONS {
        if s & p != 0 {
            cw |= 1 << (p - 1);
        }
    }
    cw
}

/// Decodes with single-error correction; returns `(data, corrected_position)`.
pub fn decode_word(codeword: u16) -> (u16, usize) {
    let codeword = codeword & 0x7fff;
    let s = syndrome_word(codeword);
    let fixed = if s == 0 { codeword } else { codeword ^ (1 << (s - 1)) };
    let data = DATA_POSITIONS
        .iter()
        .enumerate()
        .fold(0u16, |acc, (t, &pos)| acc | (fixed >> (pos - 1) & 1) << t);
    (data, s)
}

fn pack(bits: &[bool]) -> u16 {
    bits.iter()
        .enumerate()
        .fold(0, |acc, (i, &b)| acc | (u16::from(b) << i))
}

pub fn hamming_encode_block(data: &[bool]) -> Result<[bool; CODE_BITS]> {
    if data.len() != DATA_BITS {
        return Err(Error::BadBlockSize {
            expected: DATA_BITS,
            got: data.len(),
        });
    }
    let cw = encode_word(pack(data));
    Ok(std::array::from_fn(|i| cw >> i & 1 == 1))
}

pub fn hamming_decode_block(codeword: &[bool]) -> Result<DecodedBlock> {
    if codeword.len() != CODE_BITS {
        return Err(Error::BadBlockSize {
            expected: CODE_BITS,
            got: codeword.len(),
        });
    }
    let (data, corrected_position) = decode_word(pack(codeword));
    Ok(DecodedBlock {
        data: std::array::from_fn(|t| data >> t & 1 == 1),
        corrected_position,
    })
}

pub fn syndrome(codeword: &[bool]) -> Result<usize> {
    if codeword.len() != CODE_BITS {
        return Err(Error::BadBlockSize {
            expected: CODE_BITS,
            got: codeword.len(),
        });
    }
    Ok(syndrome_word(pack(codeword)))
}
