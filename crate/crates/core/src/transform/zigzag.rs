//! JPEG-style anti-diagonal ordering of 2D coefficients.

use super::Grid;
use crate::error::{Error, Result};

/// Visiting order over a `rows × cols` grid. Anti-diagonal `d = row + col`
/// is visited in increasing `d`; odd diagonals run with increasing row,
/// even diagonals with decreasing row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigzagPath {
    rows: usize,
    cols: usize,
    order: Vec<(usize, usize)>,
}

impl ZigzagPath {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> &[(usize, usize)] {
        &self.order
    }

    /// Row-major flat indices in zigzag order.
    pub fn flat_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.order.iter().map(move |&(r, c)| r * self.cols + c)
    }
}

pub fn zigzag_order(rows: usize, cols: usize) -> ZigzagPath {
    let mut order = Vec::with_capacity(rows * cols);
    if rows > 0 && cols > 0 {
        for d in 0..rows + cols - 1 {
            let lo = d.saturating_sub(cols - 1);
            let hi = d.min(rows - 1);
            if d % 2 == 1 {
                order.extend((lo..=hi).map(|r| (r, d - r)));
            } else {
                order.extend((lo..=hi).rev().map(|r| (r, d - r)));
            }
        }
    }
    ZigzagPath { rows, cols, order }
}

pub fn zigzag_scan(spec: &Grid) -> Vec<f64> {
    let path = zigzag_order(spec.rows(), spec.cols());
    let values = spec.values();
    path.flat_indices().map(|i| values[i]).collect()
}

pub fn zigzag_unscan(seq: &[f64], rows: usize, cols: usize) -> Result<Grid> {
    let mut grid = Grid::zeros(rows, cols)?;
    if seq.len() != grid.len() {
        return Err(Error::DimensionMismatch {
            expected: grid.len(),
            got: seq.len(),
        });
    }
    let path = zigzag_order(rows, cols);
    let values = grid.values_mut();
    for (i, &v) in path.flat_indices().zip(seq) {
        values[i] = v;
    }
    Ok(grid)
}
