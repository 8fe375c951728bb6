//! Lossless `f64` raster: `DCTF`, u32 LE width, u32 LE height, then
//! width×height little-endian `f64` values in row-major order.

use std::path::Path;

use crate::error::{Error, Result};
use crate::transform::Grid;

pub(super) const MAGIC: &[u8; 4] = b"DCTF";
const HEADER_LEN: usize = 12;

pub fn parse_float_grid(bytes: &[u8]) -> Result<Grid> {
    if bytes.len() < HEADER_LEN || &bytes[..4] != MAGIC {
        return Err(Error::MalformedFile("missing DCTF header".into()));
    }
    let width = u32::from_le_bytes(bytes[4..8].try_into().unwrap()) as usize;
    let height = u32::from_le_bytes(bytes[8..12].try_into().unwrap()) as usize;
    let body = &bytes[HEADER_LEN..];
    let expected = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(8))
        .ok_or_else(|| Error::MalformedFile("grid dimensions overflow".into()))?;
    if body.len() != expected {
        return Err(Error::MalformedFile(format!(
            "grid body is {} bytes, header implies {expected}",
            body.len()
        )));
    }
    let values = body
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Grid::new(height, width, values)
}

pub fn serialize_float_grid(grid: &Grid) -> Result<Vec<u8>> {
    let dim = |n: usize| {
        u32::try_from(n).map_err(|_| Error::InvalidParameter("grid dimension exceeds u32".into()))
    };
    let mut out = Vec::with_capacity(HEADER_LEN + 8 * grid.len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&dim(grid.cols())?.to_le_bytes());
    out.extend_from_slice(&dim(grid.rows())?.to_le_bytes());
    for v in grid.values() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    Ok(out)
}

pub fn read_float_grid(path: impl AsRef<Path>) -> Result<Grid> {
    parse_float_grid(&std::fs::read(path)?)
}

pub fn write_float_grid(grid: &Grid, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, serialize_float_grid(grid)?)?;
    Ok(())
}
