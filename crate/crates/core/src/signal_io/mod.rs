//! Carrier file formats and the PCM <-> float sample domain.
//!
//! Audio travels as 16-bit mono PCM on disk ([`PcmBuffer`]) and as
//! normalized `f64` samples in memory ([`AudioClip`]). Images are 8-bit
//! grayscale ([`GrayImage`]); DCT-marked images that must stay lossless are
//! stored as raw `f64` grids ([`crate::transform::Grid`]).

mod floatgrid;
mod pgm;
mod wav;

pub use floatgrid::{parse_float_grid, read_float_grid, serialize_float_grid, write_float_grid};
pub use pgm::{parse_pgm, read_pgm, serialize_pgm, write_pgm};
pub use wav::{parse_wav, read_wav, serialize_wav, write_wav, WAV_HEADER_LEN};

use crate::error::{Error, Result};

/// Divisor mapping PCM16 words onto [-1.0, 1.0).
pub const PCM_SCALE: f64 = 32768.0;

/// Integer PCM16 mono samples as stored on disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcmBuffer {
    pub words: Vec<i16>,
    pub sample_rate: u32,
}

impl PcmBuffer {
    pub fn new(words: Vec<i16>, sample_rate: u32) -> Self {
        Self { words, sample_rate }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Mono audio in the normalized float domain.
#[derive(Clone, Debug, PartialEq)]
pub struct AudioClip {
    pub samples: Vec<f64>,
    pub sample_rate: u32,
}

impl AudioClip {
    pub fn new(samples: Vec<f64>, sample_rate: u32) -> Self {
        Self {
            samples,
            sample_rate,
        }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// 8-bit grayscale raster, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::EmptyInput);
        }
        let expected = width
            .checked_mul(height)
            .ok_or_else(|| Error::MalformedFile("image dimensions overflow".into()))?;
        if pixels.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: pixels.len(),
            });
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    pub fn pixel_count(&self) -> usize {
        self.pixels.len()
    }
}

pub fn pcm_to_float(buf: &PcmBuffer) -> AudioClip {
    let samples = buf.words.iter().map(|&w| f64::from(w) / PCM_SCALE).collect();
    AudioClip::new(samples, buf.sample_rate)
}

/// Quantizes to PCM16, saturating at the word range.
pub fn float_to_pcm(clip: &AudioClip) -> PcmBuffer {
    let words = clip.samples.iter().map(|&s| quantize(s)).collect();
    PcmBuffer::new(words, clip.sample_rate)
}

fn quantize(sample: f64) -> i16 {
    // NaN saturates to 0 through the `as` cast.
    (sample * PCM_SCALE).round().clamp(-32768.0, 32767.0) as i16
}

/// Sniffed kind of a file handled by the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileKind {
    Wav,
    Pgm,
    FloatGrid,
    Bits,
}

impl FileKind {
    pub fn sniff(bytes: &[u8]) -> Self {
        if bytes.starts_with(b"RIFF") {
            FileKind::Wav
        } else if bytes.len() >= 2 && bytes[0] == b'P' && (b'1'..=b'7').contains(&bytes[1]) {
            FileKind::Pgm
        } else if bytes.starts_with(floatgrid::MAGIC) {
            FileKind::FloatGrid
        } else {
            FileKind::Bits
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FileKind::Wav => "wav",
            FileKind::Pgm => "pgm",
            FileKind::FloatGrid => "float-grid",
            FileKind::Bits => "bits",
        }
    }
}
