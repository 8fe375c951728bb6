//! The extraction key and its `name=value` sidecar format.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    Interleave,
    DctAudioAudio,
    AudioInImage,
    ImageInAudio,
}

impl Scheme {
    pub const ALL: [Scheme; 4] = [
        Scheme::Interleave,
        Scheme::DctAudioAudio,
        Scheme::AudioInImage,
        Scheme::ImageInAudio,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Interleave => "interleave",
            Scheme::DctAudioAudio => "dct-aa",
            Scheme::AudioInImage => "audio-in-image",
            Scheme::ImageInAudio => "image-in-audio",
        }
    }

    pub fn uses_image(self) -> bool {
        matches!(self, Scheme::AudioInImage | Scheme::ImageInAudio)
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| Error::MalformedKey(format!("unknown scheme {s:?}")))
    }
}

/// Everything extraction needs; the cover itself is never required.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbedKey {
    pub scheme: Scheme,
    /// Cover length in samples, or pixels for audio-in-image.
    pub cover_len: usize,
    /// Watermark length in samples, or pixels for image-in-audio.
    pub wm_len: usize,
    /// `floor(cover_len / wm_len)`; the insertion period for interleaving.
    pub stride: usize,
    /// Embedding gain for the DCT schemes.
    pub alpha: f64,
    /// Dimensions of the image carrier or watermark; 0 for audio-only schemes.
    pub img_width: usize,
    pub img_height: usize,
    /// Rate of the audio watermark, or of the cover for image-in-audio.
    pub sample_rate: u32,
}

const FIELDS: [&str; 8] = [
    "scheme",
    "cover_len",
    "wm_len",
    "stride",
    "alpha",
    "img_width",
    "img_height",
    "sample_rate",
];

fn format_alpha(alpha: f64) -> String {
    // `Display` for f64 never uses an exponent; force a decimal point.
    let s = alpha.to_string();
    if s.contains('.') {
        s
    } else {
        format!("{s}.0")
    }
}

impl EmbedKey {
    pub fn new(
        scheme: Scheme,
        cover_len: usize,
        wm_len: usize,
        alpha: f64,
        image_dims: Option<(usize, usize)>,
        sample_rate: u32,
    ) -> Result<Self> {
        let (img_width, img_height) = image_dims.unwrap_or((0, 0));
        let key = Self {
            scheme,
            cover_len,
            wm_len,
            stride: cover_len.checked_div(wm_len).unwrap_or(0),
            alpha,
            img_width,
            img_height,
            sample_rate,
        };
        key.validate()?;
        Ok(key)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::MalformedKey(msg));
        if self.cover_len == 0 || self.wm_len == 0 {
            return bad("cover_len and wm_len must be positive".into());
        }
        if self.wm_len > self.cover_len {
            return bad(format!("wm_len {} exceeds cover_len {}", self.wm_len, self.cover_len));
        }
        if self.stride != self.cover_len / self.wm_len {
            return bad(format!(
                "stride {} != floor({} / {})",
                self.stride, self.cover_len, self.wm_len
            ));
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return bad(format!("alpha {} must be positive and finite", self.alpha));
        }
        if self.sample_rate == 0 {
            return bad("sample_rate must be positive".into());
        }
        let pixels = self.img_width.checked_mul(self.img_height);
        match self.scheme {
            Scheme::AudioInImage if pixels != Some(self.cover_len) => {
                bad("image dimensions disagree with cover_len".into())
            }
            Scheme::ImageInAudio if pixels != Some(self.wm_len) => {
                bad("image dimensions disagree with wm_len".into())
            }
            Scheme::Interleave | Scheme::DctAudioAudio if pixels != Some(0) => {
                bad("audio-only scheme carries image dimensions".into())
            }
            _ => Ok(()),
        }
    }

    /// Sidecar text: one `name=value` per line in a fixed order.
    pub fn to_sidecar(&self) -> String {
        format!(
            "scheme={}\ncover_len={}\nwm_len={}\nstride={}\nalpha={}\nimg_width={}\nimg_height={}\nsample_rate={}\n",
            self.scheme,
            self.cover_len,
            self.wm_len,
            self.stride,
            format_alpha(self.alpha),
            self.img_width,
            self.img_height,
            self.sample_rate,
        )
    }

    pub fn from_sidecar(text: &str) -> Result<Self> {
        let mut values: [Option<&str>; 8] = [None; 8];
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (name, value) = line
                .split_once('=')
                .ok_or_else(|| Error::MalformedKey(format!("line {line:?} is not name=value")))?;
            let slot = FIELDS
                .iter()
                .position(|f| *f == name)
                .ok_or_else(|| Error::MalformedKey(format!("unknown key {name:?}")))?;
            if values[slot].replace(value).is_some() {
                return Err(Error::MalformedKey(format!("duplicate key {name:?}")));
            }
        }
        let get = |i: usize| values[i].ok_or_else(|| Error::MalformedKey(format!("missing key {:?}", FIELDS[i])));
        fn num<T: FromStr>(name: &str, v: &str) -> Result<T> {
            v.parse()
                .map_err(|_| Error::MalformedKey(format!("{name}={v:?} is not a valid number")))
        }
        let alpha_text = get(4)?;
        if !alpha_text.contains('.') {
            return Err(Error::MalformedKey(format!("alpha={alpha_text:?} lacks a decimal point")));
        }
        let key = Self {
            scheme: get(0)?.parse()?,
            cover_len: num("cover_len", get(1)?)?,
            wm_len: num("wm_len", get(2)?)?,
            stride: num("stride", get(3)?)?,
            alpha: num("alpha", alpha_text)?,
            img_width: num("img_width", get(5)?)?,
            img_height: num("img_height", get(6)?)?,
            sample_rate: num("sample_rate", get(7)?)?,
        };
        key.validate()?;
        Ok(key)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_sidecar(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_sidecar())?;
        Ok(())
    }

    pub(crate) fn expect_scheme(&self, scheme: Scheme) -> Result<()> {
        if self.scheme != scheme {
            return Err(Error::KeyMismatch(format!(
                "key is for {}, not {scheme}",
                self.scheme
            )));
        }
        Ok(())
    }
}
