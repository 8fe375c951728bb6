//! Orthonormal DCT-II / DCT-III in one and two dimensions, and zigzag
//! coefficient ordering.

mod dct;
mod zigzag;

pub use dct::{dct1d, dct2d, idct1d, idct2d, DctPlan};
pub use zigzag::{zigzag_order, zigzag_scan, zigzag_unscan, ZigzagPath};

use crate::error::{Error, Result};

/// Row-major 2D grid of `f64`. Used for float images and their spectra;
/// `(0, 0)` of a spectrum is the DC term.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

/// DCT-domain counterpart of an image grid.
pub type Spectrum2D = Grid;

impl Grid {
    pub fn new(rows: usize, cols: usize, values: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyInput);
        }
        let expected = rows.checked_mul(cols).ok_or(Error::DimensionMismatch {
            expected: usize::MAX,
            got: values.len(),
        })?;
        if values.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: values.len(),
            });
        }
        Ok(Self { rows, cols, values })
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::new(rows, cols, vec![0.0; rows.saturating_mul(cols)])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: f64) {
        self.values[row * self.cols + col] = v;
    }
}
