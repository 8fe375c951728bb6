//! Embedding and extraction for the four watermarking schemes.
//!
//! * Interleaving: watermark samples are inserted between cover samples,
//!   one after every `stride = floor(cover_len / wm_len)` cover samples.
//! * DCT audio-in-audio: the last `wm_len` DCT coefficients of the cover
//!   are replaced by `alpha` times the DCT of the watermark.
//! * Audio-in-image: as above, but the cover spectrum is a 2D DCT of the
//!   pixel values (0..=255, not normalized) read in zigzag order.
//! * Image-in-audio: the zigzag-scanned 2D DCT of the watermark image,
//!   with pixels normalized to [0, 1], replaces the cover's spectral tail.
//!
//! Extraction is key-driven: the [`EmbedKey`] carries the geometry and
//! gain, the original cover is never needed.

mod key;

pub use key::{EmbedKey, Scheme};

use crate::error::{Error, Result};
use crate::metrics::{self, FidelityReport};
use crate::signal_io::{AudioClip, GrayImage};
use crate::transform::{dct1d, dct2d, idct1d, idct2d, zigzag_scan, zigzag_unscan, Grid};

fn check_capacity(wm_len: usize, capacity: usize) -> Result<()> {
    if wm_len == 0 {
        return Err(Error::EmptyInput);
    }
    if wm_len > capacity {
        return Err(Error::WatermarkTooLong { wm_len, capacity });
    }
    Ok(())
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "alpha {alpha} must be positive and finite"
        )))
    }
}

fn check_len(what: &str, got: usize, expected: usize) -> Result<()> {
    if got != expected {
        return Err(Error::KeyMismatch(format!(
            "{what} has {got} samples, key expects {expected}"
        )));
    }
    Ok(())
}

/// Overwrites the last `payload.len()` coefficients with `alpha · payload`.
fn replace_tail(spectrum: &mut [f64], payload: &[f64], alpha: f64) {
    let start = spectrum.len() - payload.len();
    for (slot, &p) in spectrum[start..].iter_mut().zip(payload) {
        *slot = alpha * p;
    }
}

fn read_tail(spectrum: &[f64], len: usize, alpha: f64) -> Vec<f64> {
    spectrum[spectrum.len() - len..]
        .iter()
        .map(|&c| c / alpha)
        .collect()
}

/// Positions in the marked signal that hold watermark samples.
pub fn inserted_positions(key: &EmbedKey) -> impl Iterator<Item = usize> {
    let stride = key.stride;
    (0..key.wm_len).map(move |j| (j + 1) * stride + j)
}

pub fn embed_interleave(cover: &AudioClip, wm: &AudioClip) -> Result<(AudioClip, EmbedKey)> {
    check_capacity(wm.len(), cover.len())?;
    let key = EmbedKey::new(
        Scheme::Interleave,
        cover.len(),
        wm.len(),
        1.0,
        None,
        wm.sample_rate,
    )?;
    let mut marked = Vec::with_capacity(cover.len() + wm.len());
    let mut pending = wm.samples.iter();
    for (i, &c) in cover.samples.iter().enumerate() {
        marked.push(c);
        if (i + 1) % key.stride == 0 {
            if let Some(&w) = pending.next() {
                marked.push(w);
            }
        }
    }
    debug_assert_eq!(marked.len(), cover.len() + wm.len());
    Ok((AudioClip::new(marked, cover.sample_rate), key))
}

/// Splits a marked signal back into `(watermark, cover)`.
pub fn extract_interleave(marked: &AudioClip, key: &EmbedKey) -> Result<(AudioClip, AudioClip)> {
    key.expect_scheme(Scheme::Interleave)?;
    check_len("marked signal", marked.len(), key.cover_len + key.wm_len)?;
    let mut wm = Vec::with_capacity(key.wm_len);
    let mut cover = Vec::with_capacity(key.cover_len);
    let mut next = inserted_positions(key).peekable();
    for (i, &s) in marked.samples.iter().enumerate() {
        if next.peek() == Some(&i) {
            next.next();
            wm.push(s);
        } else {
            cover.push(s);
        }
    }
    Ok((
        AudioClip::new(wm, key.sample_rate),
        AudioClip::new(cover, marked.sample_rate),
    ))
}

pub fn embed_dct_aa(cover: &AudioClip, wm: &AudioClip, alpha: f64) -> Result<(AudioClip, EmbedKey)> {
    check_capacity(wm.len(), cover.len())?;
    check_alpha(alpha)?;
    let key = EmbedKey::new(
        Scheme::DctAudioAudio,
        cover.len(),
        wm.len(),
        alpha,
        None,
        wm.sample_rate,
    )?;
    let mut spectrum = dct1d(&cover.samples)?;
    replace_tail(&mut spectrum, &dct1d(&wm.samples)?, alpha);
    Ok((AudioClip::new(idct1d(&spectrum)?, cover.sample_rate), key))
}

pub fn extract_dct_aa(marked: &AudioClip, key: &EmbedKey) -> Result<AudioClip> {
    key.expect_scheme(Scheme::DctAudioAudio)?;
    check_len("marked signal", marked.len(), key.cover_len)?;
    let spectrum = dct1d(&marked.samples)?;
    let wm = idct1d(&read_tail(&spectrum, key.wm_len, key.alpha))?;
    Ok(AudioClip::new(wm, key.sample_rate))
}

fn image_to_grid(img: &GrayImage, scale: f64) -> Result<Grid> {
    let values = img.pixels().iter().map(|&p| f64::from(p) * scale).collect();
    Grid::new(img.height(), img.width(), values)
}

/// Rounds and clamps a float raster to 8 bits.
pub fn render_gray(grid: &Grid) -> Result<GrayImage> {
    let pixels = grid
        .values()
        .iter()
        .map(|&v| v.round().clamp(0.0, 255.0) as u8)
        .collect();
    GrayImage::new(grid.cols(), grid.rows(), pixels)
}

/// Returns the marked image as a float grid (rows = image height).
pub fn embed_audio_in_image(cover: &GrayImage, wm: &AudioClip, alpha: f64) -> Result<(Grid, EmbedKey)> {
    check_capacity(wm.len(), cover.pixel_count())?;
    check_alpha(alpha)?;
    let key = EmbedKey::new(
        Scheme::AudioInImage,
        cover.pixel_count(),
        wm.len(),
        alpha,
        Some((cover.width(), cover.height())),
        wm.sample_rate,
    )?;
    let spectrum = dct2d(&image_to_grid(cover, 1.0)?)?;
    let mut scanned = zigzag_scan(&spectrum);
    replace_tail(&mut scanned, &dct1d(&wm.samples)?, alpha);
    let marked = idct2d(&zigzag_unscan(&scanned, cover.height(), cover.width())?)?;
    Ok((marked, key))
}

pub fn extract_audio_in_image(marked: &Grid, key: &EmbedKey) -> Result<AudioClip> {
    key.expect_scheme(Scheme::AudioInImage)?;
    if (marked.cols(), marked.rows()) != (key.img_width, key.img_height) {
        return Err(Error::KeyMismatch(format!(
            "marked image is {}x{}, key expects {}x{}",
            marked.cols(),
            marked.rows(),
            key.img_width,
            key.img_height
        )));
    }
    let scanned = zigzag_scan(&dct2d(marked)?);
    let wm = idct1d(&read_tail(&scanned, key.wm_len, key.alpha))?;
    Ok(AudioClip::new(wm, key.sample_rate))
}

pub fn embed_image_in_audio(cover: &AudioClip, wm: &GrayImage, alpha: f64) -> Result<(AudioClip, EmbedKey)> {
    check_capacity(wm.pixel_count(), cover.len())?;
    check_alpha(alpha)?;
    let key = EmbedKey::new(
        Scheme::ImageInAudio,
        cover.len(),
        wm.pixel_count(),
        alpha,
        Some((wm.width(), wm.height())),
        cover.sample_rate,
    )?;
    let payload = zigzag_scan(&dct2d(&image_to_grid(wm, 1.0 / 255.0)?)?);
    let mut spectrum = dct1d(&cover.samples)?;
    replace_tail(&mut spectrum, &payload, alpha);
    Ok((AudioClip::new(idct1d(&spectrum)?, cover.sample_rate), key))
}

/// Recovers the image before 8-bit rounding, in pixel units.
pub fn extract_image_in_audio_float(marked: &AudioClip, key: &EmbedKey) -> Result<Grid> {
    key.expect_scheme(Scheme::ImageInAudio)?;
    check_len("marked signal", marked.len(), key.cover_len)?;
    let spectrum = dct1d(&marked.samples)?;
    let scanned = read_tail(&spectrum, key.wm_len, key.alpha);
    let mut grid = idct2d(&zigzag_unscan(&scanned, key.img_height, key.img_width)?)?;
    for v in grid.values_mut() {
        *v *= 255.0;
    }
    Ok(grid)
}

pub fn extract_image_in_audio(marked: &AudioClip, key: &EmbedKey) -> Result<GrayImage> {
    render_gray(&extract_image_in_audio_float(marked, key)?)
}

/// Distortion introduced by embedding.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Distortion {
    /// Cover against the aligned marked signal. For interleaving the
    /// inserted positions are removed first, so this is zero by construction.
    pub report: FidelityReport,
    /// Interleaving only: MSE over the leading `cover_len` samples without
    /// alignment.
    pub prefix_mse: Option<f64>,
}

/// `cover` and `marked` are flat sample (or row-major pixel) sequences in
/// the same units: normalized samples for audio covers, 0..=255 for images.
pub fn embedding_distortion(cover: &[f64], marked: &[f64], key: &EmbedKey) -> Result<Distortion> {
    check_len("cover", cover.len(), key.cover_len)?;
    match key.scheme {
        Scheme::Interleave => {
            check_len("marked signal", marked.len(), key.cover_len + key.wm_len)?;
            let mut next = inserted_positions(key).peekable();
            let aligned: Vec<f64> = marked
                .iter()
                .enumerate()
                .filter_map(|(i, &s)| {
                    if next.peek() == Some(&i) {
                        next.next();
                        None
                    } else {
                        Some(s)
                    }
                })
                .collect();
            Ok(Distortion {
                report: FidelityReport::compare(cover, &aligned)?,
                prefix_mse: Some(metrics::mse(cover, &marked[..cover.len()])?),
            })
        }
        _ => {
            check_len("marked signal", marked.len(), key.cover_len)?;
            Ok(Distortion {
                report: FidelityReport::compare(cover, marked)?,
                prefix_mse: None,
            })
        }
    }
}
