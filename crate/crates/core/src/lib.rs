//! Watermarking toolkit: hides audio or images inside audio or image
//! carriers by sample interleaving or DCT coefficient replacement, protects
//! the transmitted PCM stream with Hamming(15,11), simulates noisy channels
//! and scores fidelity with MSE, SNR and BER.

pub mod channel;
pub mod cli;
pub mod error;
pub mod fec;
pub mod metrics;
pub mod schemes;
pub mod signal_io;
pub mod transform;

pub use error::{Error, Result};
