//! Seeded corruption models for the transmission path.
//!
//! Randomness comes from ChaCha20 (`rand_chacha::ChaCha20Rng`) seeded with
//! `seed_from_u64`, which is specified independently of platform and word
//! size. Bit flips draw one `u64` per bit and flip when its top 53 bits,
//! read as a fraction in [0, 1), fall below `p`. Gaussian noise uses
//! `rand_distr::StandardNormal` scaled by `sigma`.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::fec::{BitOrigin, BitStream};
use crate::signal_io::{AudioClip, PcmBuffer};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChannelModel {
    Bitflip,
    Awgn,
    Lossless,
}

impl std::str::FromStr for ChannelModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bitflip" => Ok(Self::Bitflip),
            "awgn" => Ok(Self::Awgn),
            "lossless" => Ok(Self::Lossless),
            other => Err(Error::InvalidParameter(format!("unknown channel model {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelSpec {
    pub model: ChannelModel,
    /// Per-bit flip probability.
    pub p: f64,
    /// Noise standard deviation in normalized sample units.
    pub sigma: f64,
    pub seed: u64,
}

impl ChannelSpec {
    pub fn new(model: ChannelModel, p: f64, sigma: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!("p = {p} outside [0, 1]")));
        }
        if !(sigma >= 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidParameter(format!("sigma = {sigma} must be finite and >= 0")));
        }
        Ok(Self {
            model,
            p,
            sigma,
            seed,
        })
    }

    pub fn bitflip(p: f64, seed: u64) -> Result<Self> {
        Self::new(ChannelModel::Bitflip, p, 0.0, seed)
    }

    pub fn awgn(sigma: f64, seed: u64) -> Result<Self> {
        Self::new(ChannelModel::Awgn, 0.0, sigma, seed)
    }

    pub fn lossless() -> Self {
        Self {
            model: ChannelModel::Lossless,
            p: 0.0,
            sigma: 0.0,
            seed: 0,
        }
    }

    fn rng(&self) -> ChaCha20Rng {
        ChaCha20Rng::seed_from_u64(self.seed)
    }
}

fn unit_interval(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

pub fn apply_bitflip(stream: &BitStream, spec: &ChannelSpec) -> Result<BitStream> {
    match spec.model {
        ChannelModel::Lossless => Ok(stream.clone()),
        ChannelModel::Awgn => Err(Error::InvalidParameter(
            "awgn applies to samples, not bits".into(),
        )),
        ChannelModel::Bitflip => {
            let mut rng = spec.rng();
            let bits = stream
                .bits
                .iter()
                .map(|&b| b ^ (unit_interval(&mut rng) < spec.p))
                .collect();
            Ok(BitStream {
                bits,
                origin: stream.origin,
            })
        }
    }
}

/// Bit flips over the MSB-first serialization of the PCM words.
pub fn apply_bitflip_pcm(buf: &PcmBuffer, spec: &ChannelSpec) -> Result<PcmBuffer> {
    let flipped = apply_bitflip(&BitStream::from_pcm(buf), spec)?;
    debug_assert_eq!(flipped.origin, BitOrigin::Pcm16MsbFirst);
    Ok(PcmBuffer::new(flipped.to_words()?, buf.sample_rate))
}

/// Adds seeded Gaussian noise and clamps to [-1, 1]. `sigma == 0` returns
/// the clip unchanged.
pub fn apply_awgn(clip: &AudioClip, spec: &ChannelSpec) -> Result<AudioClip> {
    match spec.model {
        ChannelModel::Lossless => Ok(clip.clone()),
        ChannelModel::Bitflip => Err(Error::InvalidParameter(
            "bitflip applies to bits, not samples".into(),
        )),
        ChannelModel::Awgn if spec.sigma == 0.0 => Ok(clip.clone()),
        ChannelModel::Awgn => {
            let mut rng = spec.rng();
            let samples = clip
                .samples
                .iter()
                .map(|&s| {
                    let n: f64 = StandardNormal.sample(&mut rng);
                    (s + spec.sigma * n).clamp(-1.0, 1.0)
                })
                .collect();
            Ok(AudioClip::new(samples, clip.sample_rate))
        }
    }
}
