//! Fidelity measures: mean squared error, SNR and bit error rate.

use crate::error::{Error, Result};

/// One comparison between a reference and a test signal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FidelityReport {
    pub mse: f64,
    /// `+inf` when the signals are identical, `-inf` when only the
    /// reference is silent.
    pub snr_db: f64,
    pub n: usize,
}

impl FidelityReport {
    pub fn compare(reference: &[f64], test: &[f64]) -> Result<Self> {
        check_lengths(reference.len(), test.len())?;
        let (signal, error) = energies(reference, test);
        Ok(Self {
            mse: error / reference.len() as f64,
            snr_db: if error == 0.0 {
                f64::INFINITY
            } else {
                10.0 * (signal / error).log10()
            },
            n: reference.len(),
        })
    }
}

fn check_lengths(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::LengthMismatch { left: a, right: b });
    }
    if a == 0 {
        return Err(Error::EmptyInput);
    }
    Ok(())
}

/// (Σ ref², Σ (ref − test)²)
fn energies(reference: &[f64], test: &[f64]) -> (f64, f64) {
    reference
        .iter()
        .zip(test)
        .fold((0.0, 0.0), |(s, e), (&r, &t)| (s + r * r, e + (r - t) * (r - t)))
}

pub fn mse(x: &[f64], y: &[f64]) -> Result<f64> {
    check_lengths(x.len(), y.len())?;
    let sum: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
    Ok(sum / x.len() as f64)
}

pub fn snr_db(reference: &[f64], test: &[f64]) -> Result<f64> {
    check_lengths(reference.len(), test.len())?;
    let (signal, error) = energies(reference, test);
    if signal == 0.0 {
        return Err(Error::ZeroReference);
    }
    if error == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (signal / error).log10())
}

pub fn ber(sent: &[bool], received: &[bool]) -> Result<f64> {
    check_lengths(sent.len(), received.len())?;
    Ok(bit_errors(sent, received) as f64 / sent.len() as f64)
}

/// Number of differing positions over the common prefix.
pub fn bit_errors(a: &[bool], b: &[bool]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}
