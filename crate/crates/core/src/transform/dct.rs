//! Orthonormal DCT-II and its inverse.
//!
//! `F(u) = sqrt(2/N) · A(u) · Σ_i cos(u(2i+1)π / 2N) · f(i)`, with
//! `A(0) = 1/√2` and `A(u) = 1` otherwise. The transform matrix is
//! orthogonal, so the inverse is its transpose.
//!
//! Evaluation goes through a length-N complex FFT (Makhoul's even/odd
//! reordering), so any N is O(N log N).

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use super::Grid;
use crate::error::{Error, Result};

/// Precomputed FFTs and twiddles for one transform length.
pub struct DctPlan {
    len: usize,
    fft: Arc<dyn Fft<f64>>,
    ifft: Arc<dyn Fft<f64>>,
    /// `exp(-iπk / 2N)`
    twiddle: Vec<Complex<f64>>,
    /// `sqrt(2/N) · A(k)`
    norm: Vec<f64>,
}

impl DctPlan {
    pub fn new(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::EmptyInput);
        }
        let mut planner = FftPlanner::new();
        let n = len as f64;
        let twiddle = (0..len)
            .map(|k| Complex::from_polar(1.0, -PI * k as f64 / (2.0 * n)))
            .collect();
        let base = (2.0 / n).sqrt();
        let norm = (0..len)
            .map(|k| if k == 0 { base * FRAC_1_SQRT_2 } else { base })
            .collect();
        Ok(Self {
            len,
            fft: planner.plan_fft_forward(len),
            ifft: planner.plan_fft_inverse(len),
            twiddle,
            norm,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn check(&self, got: usize) -> Result<()> {
        if got != self.len {
            return Err(Error::DimensionMismatch {
                expected: self.len,
                got,
            });
        }
        Ok(())
    }

    /// Forward transform into `out`.
    pub fn forward_into(&self, signal: &[f64], out: &mut [f64]) -> Result<()> {
        self.check(signal.len())?;
        self.check(out.len())?;
        let n = self.len;
        let mut buf = vec![Complex::new(0.0, 0.0); n];
        // Even-indexed samples ascending, odd-indexed descending.
        for (k, slot) in buf.iter_mut().enumerate() {
            let src = if k < n.div_ceil(2) { 2 * k } else { 2 * (n - 1 - k) + 1 };
            slot.re = signal[src];
        }
        self.fft.process(&mut buf);
        for k in 0..n {
            out[k] = (buf[k] * self.twiddle[k]).re * self.norm[k];
        }
        Ok(())
    }

    /// Inverse transform into `out`.
    pub fn inverse_into(&self, spectrum: &[f64], out: &mut [f64]) -> Result<()> {
        self.check(spectrum.len())?;
        self.check(out.len())?;
        let n = self.len;
        let raw = |k: usize| spectrum[k] / self.norm[k];
        let mut buf: Vec<Complex<f64>> = (0..n)
            .map(|k| {
                let mirrored = if k == 0 { 0.0 } else { raw(n - k) };
                self.twiddle[k].conj() * Complex::new(raw(k), -mirrored)
            })
            .collect();
        self.ifft.process(&mut buf);
        let scale = 1.0 / n as f64;
        for (k, v) in buf.iter().enumerate() {
            let dst = if k < n.div_ceil(2) { 2 * k } else { 2 * (n - 1 - k) + 1 };
            out[dst] = v.re * scale;
        }
        Ok(())
    }

    pub fn forward(&self, signal: &[f64]) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.len];
        self.forward_into(signal, &mut out)?;
        Ok(out)
    }

    pub fn inverse(&self, spectrum: &[f64]) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.len];
        self.inverse_into(spectrum, &mut out)?;
        Ok(out)
    }
}

pub fn dct1d(signal: &[f64]) -> Result<Vec<f64>> {
    DctPlan::new(signal.len())?.forward(signal)
}

pub fn idct1d(spectrum: &[f64]) -> Result<Vec<f64>> {
    DctPlan::new(spectrum.len())?.inverse(spectrum)
}

#[derive(Clone, Copy)]
enum Direction {
    Forward,
    Inverse,
}

fn separable(grid: &Grid, dir: Direction) -> Result<Grid> {
    let (rows, cols) = (grid.rows(), grid.cols());
    let row_plan = DctPlan::new(cols)?;
    let col_plan = DctPlan::new(rows)?;
    let apply = |plan: &DctPlan, src: &[f64], dst: &mut [f64]| match dir {
        Direction::Forward => plan.forward_into(src, dst),
        Direction::Inverse => plan.inverse_into(src, dst),
    };

    let mut out = Grid::zeros(rows, cols)?;
    for (src, dst) in grid
        .values()
        .chunks_exact(cols)
        .zip(out.values_mut().chunks_exact_mut(cols))
    {
        apply(&row_plan, src, dst)?;
    }

    let mut column = vec![0.0; rows];
    let mut transformed = vec![0.0; rows];
    for c in 0..cols {
        for (r, slot) in column.iter_mut().enumerate() {
            *slot = out.get(r, c);
        }
        apply(&col_plan, &column, &mut transformed)?;
        for (r, &v) in transformed.iter().enumerate() {
            out.set(r, c, v);
        }
    }
    Ok(out)
}

/// 2D orthonormal DCT-II; rows index `u`, columns index `v`.
pub fn dct2d(grid: &Grid) -> Result<Grid> {
    separable(grid, Direction::Forward)
}

pub fn idct2d(spectrum: &Grid) -> Result<Grid> {
    separable(spectrum, Direction::Inverse)
}
