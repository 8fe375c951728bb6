//! Command-line front end: embed, extract, protect, unprotect, channel and
//! evaluate. Exit codes: 0 success, 1 usage error, 2 data or format error.

mod report;

pub use report::{format_float, Report};

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::channel::{self, ChannelModel, ChannelSpec};
use crate::error::Error;
use crate::fec;
use crate::metrics::{self, FidelityReport};
use crate::schemes::{self, EmbedKey, Scheme};
use crate::signal_io::{
    float_to_pcm, parse_float_grid, parse_pgm, parse_wav, pcm_to_float, serialize_float_grid,
    serialize_pgm, serialize_wav, AudioClip, FileKind, GrayImage,
};
use crate::transform::Grid;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

/// Default rate for streams unprotected without `--rate`.
pub const DEFAULT_RATE: u32 = 44_100;

#[derive(Debug, Parser)]
#[command(name = "wmkit", version, about = "Audio and image watermarking toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Hide a watermark in a cover and write the marked carrier plus key.
    Embed(EmbedArgs),
    /// Recover a watermark from a marked carrier using its key.
    Extract(ExtractArgs),
    /// Hamming(15,11)-protect a WAV file into a packed bit stream.
    Protect(InOut),
    /// Decode a protected bit stream back into a WAV file.
    Unprotect(UnprotectArgs),
    /// Pass a WAV or protected stream through a seeded noisy channel.
    Channel(ChannelArgs),
    /// Compare two files of the same kind.
    Evaluate(EvaluateArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SchemeArg {
    Interleave,
    DctAa,
    AudioInImage,
    ImageInAudio,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Interleave => Scheme::Interleave,
            SchemeArg::DctAa => Scheme::DctAudioAudio,
            SchemeArg::AudioInImage => Scheme::AudioInImage,
            SchemeArg::ImageInAudio => Scheme::ImageInAudio,
        }
    }
}

#[derive(Debug, Args)]
struct EmbedArgs {
    #[arg(long, value_enum)]
    scheme: SchemeArg,
    #[arg(long)]
    cover: PathBuf,
    #[arg(long)]
    watermark: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    key: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Also write an 8-bit rounded preview (audio-in-image only).
    #[arg(long)]
    render_pgm: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ExtractArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    key: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Original watermark to score the recovery against.
    #[arg(long)]
    reference: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct InOut {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct UnprotectArgs {
    #[command(flatten)]
    io: InOut,
    /// Sample rate of the output WAV; the stream itself does not carry one.
    #[arg(long, default_value_t = DEFAULT_RATE)]
    rate: u32,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModelArg {
    Bitflip,
    Awgn,
    Lossless,
}

impl From<ModelArg> for ChannelModel {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Bitflip => ChannelModel::Bitflip,
            ModelArg::Awgn => ChannelModel::Awgn,
            ModelArg::Lossless => ChannelModel::Lossless,
        }
    }
}

#[derive(Debug, Args)]
struct ChannelArgs {
    #[arg(long, value_enum)]
    model: ModelArg,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    sigma: Option<f64>,
    #[command(flatten)]
    io: InOut,
}

#[derive(Debug, Args)]
struct EvaluateArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
}

/// Result of one CLI invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub report_text: String,
    /// Single-line diagnostic; empty on success.
    pub error_text: String,
}

enum Failure {
    Usage(String),
    Data(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Data(Error::Io(e))
    }
}

type CmdResult = Result<Report, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandOutcome {
                    exit_code: EXIT_OK,
                    report_text: rendered,
                    error_text: String::new(),
                },
                _ => CommandOutcome {
                    exit_code: EXIT_USAGE,
                    report_text: String::new(),
                    error_text: first_line(&rendered),
                },
            };
        }
    };
    let result = match cli.command {
        Command::Embed(a) => cmd_embed(&a),
        Command::Extract(a) => cmd_extract(&a),
        Command::Protect(a) => cmd_protect(&a),
        Command::Unprotect(a) => cmd_unprotect(&a),
        Command::Channel(a) => cmd_channel(&a),
        Command::Evaluate(a) => cmd_evaluate(&a),
    };
    match result {
        Ok(report) => CommandOutcome {
            exit_code: EXIT_OK,
            report_text: report.to_string(),
            error_text: String::new(),
        },
        Err(Failure::Usage(msg)) => CommandOutcome {
            exit_code: EXIT_USAGE,
            report_text: String::new(),
            error_text: first_line(&format!("error: {msg}")),
        },
        Err(Failure::Data(e)) => CommandOutcome {
            exit_code: EXIT_DATA,
            report_text: String::new(),
            error_text: first_line(&format!("error: {e}")),
        },
    }
}

fn first_line(s: &str) -> String {
    s.lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .unwrap_or("error")
        .to_string()
}

/// Writes through a temporary file in the destination directory so a
/// failed command leaves no partial output.
fn stage(path: &Path, bytes: &[u8]) -> Result<tempfile::NamedTempFile, Failure> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    Ok(tmp)
}

fn commit(files: Vec<(tempfile::NamedTempFile, &Path)>) -> Result<(), Failure> {
    for (tmp, path) in files {
        tmp.persist(path).map_err(|e| Failure::Data(Error::Io(e.error)))?;
    }
    Ok(())
}

fn write_outputs(outputs: &[(&Path, Vec<u8>)]) -> Result<(), Failure> {
    let staged = outputs
        .iter()
        .map(|(path, bytes)| Ok((stage(path, bytes)?, *path)))
        .collect::<Result<Vec<_>, Failure>>()?;
    commit(staged)
}

fn load_clip(path: &Path) -> Result<AudioClip, Failure> {
    Ok(pcm_to_float(&parse_wav(&std::fs::read(path)?)?))
}

fn load_image(path: &Path) -> Result<GrayImage, Failure> {
    Ok(parse_pgm(&std::fs::read(path)?)?)
}

fn wav_bytes(clip: &AudioClip) -> Result<Vec<u8>, Failure> {
    Ok(serialize_wav(&float_to_pcm(clip))?)
}

fn pixels_as_f64(img: &GrayImage) -> Vec<f64> {
    img.pixels().iter().map(|&p| f64::from(p)).collect()
}

fn cmd_embed(a: &EmbedArgs) -> CmdResult {
    let scheme = Scheme::from(a.scheme);
    if a.render_pgm.is_some() && scheme != Scheme::AudioInImage {
        return Err(Failure::Usage("--render-pgm applies to audio-in-image only".into()));
    }
    let mut outputs: Vec<(&Path, Vec<u8>)> = Vec::new();
    let (cover, marked, key) = match scheme {
        Scheme::Interleave | Scheme::DctAudioAudio | Scheme::ImageInAudio => {
            let cover = load_clip(&a.cover)?;
            let (marked, key) = match scheme {
                Scheme::Interleave => schemes::embed_interleave(&cover, &load_clip(&a.watermark)?)?,
                Scheme::DctAudioAudio => {
                    schemes::embed_dct_aa(&cover, &load_clip(&a.watermark)?, a.alpha)?
                }
                _ => schemes::embed_image_in_audio(&cover, &load_image(&a.watermark)?, a.alpha)?,
            };
            // Score what is actually written: the quantized carrier.
            let pcm = float_to_pcm(&marked);
            outputs.push((&a.out, serialize_wav(&pcm)?));
            (cover.samples, pcm_to_float(&pcm).samples, key)
        }
        Scheme::AudioInImage => {
            let cover = load_image(&a.cover)?;
            let (marked, key) =
                schemes::embed_audio_in_image(&cover, &load_clip(&a.watermark)?, a.alpha)?;
            outputs.push((&a.out, serialize_float_grid(&marked)?));
            if let Some(preview) = &a.render_pgm {
                outputs.push((preview, serialize_pgm(&schemes::render_gray(&marked)?)));
            }
            (pixels_as_f64(&cover), marked.into_values(), key)
        }
    };
    let distortion = schemes::embedding_distortion(&cover, &marked, &key)?;
    outputs.push((&a.key, key.to_sidecar().into_bytes()));
    write_outputs(&outputs)?;
    Ok(Report::new()
        .text("scheme", scheme.name())
        .fidelity(&distortion.report))
}

fn load_marked_grid(path: &Path) -> Result<Grid, Failure> {
    let bytes = std::fs::read(path)?;
    match FileKind::sniff(&bytes) {
        FileKind::Pgm => {
            let img = parse_pgm(&bytes)?;
            Ok(Grid::new(img.height(), img.width(), pixels_as_f64(&img))?)
        }
        _ => Ok(parse_float_grid(&bytes)?),
    }
}

fn cmd_extract(a: &ExtractArgs) -> CmdResult {
    let key = EmbedKey::read(&a.key)?;
    let report = Report::new().text("scheme", key.scheme.name());
    // Recovered watermark as (file bytes, comparable samples, kind).
    let (bytes, recovered) = match key.scheme {
        Scheme::Interleave => {
            let (wm, _) = schemes::extract_interleave(&load_clip(&a.input)?, &key)?;
            (wav_bytes(&wm)?, pcm_to_float(&float_to_pcm(&wm)).samples)
        }
        Scheme::DctAudioAudio => {
            let wm = schemes::extract_dct_aa(&load_clip(&a.input)?, &key)?;
            (wav_bytes(&wm)?, pcm_to_float(&float_to_pcm(&wm)).samples)
        }
        Scheme::AudioInImage => {
            let wm = schemes::extract_audio_in_image(&load_marked_grid(&a.input)?, &key)?;
            (wav_bytes(&wm)?, pcm_to_float(&float_to_pcm(&wm)).samples)
        }
        Scheme::ImageInAudio => {
            let img = schemes::extract_image_in_audio(&load_clip(&a.input)?, &key)?;
            (serialize_pgm(&img), pixels_as_f64(&img))
        }
    };
    let report = match &a.reference {
        Some(path) => {
            let reference = match key.scheme {
                Scheme::ImageInAudio => pixels_as_f64(&load_image(path)?),
                _ => load_clip(path)?.samples,
            };
            report.fidelity(&FidelityReport::compare(&reference, &recovered)?)
        }
        None => report.int("n", recovered.len()),
    };
    write_outputs(&[(&a.out, bytes)])?;
    Ok(report)
}

fn cmd_protect(a: &InOut) -> CmdResult {
    let pcm = parse_wav(&std::fs::read(&a.input)?)?;
    let stream = fec::protect(&pcm)?;
    write_outputs(&[(&a.out, fec::serialize_stream(&stream))])?;
    Ok(Report::new().int("n", stream.len()))
}

fn cmd_unprotect(a: &UnprotectArgs) -> CmdResult {
    if a.rate == 0 {
        return Err(Failure::Usage("--rate must be positive".into()));
    }
    let stream = fec::parse_stream(&std::fs::read(&a.io.input)?)?;
    let out = fec::unprotect(&stream, a.rate)?;
    write_outputs(&[(&a.io.out, serialize_wav(&out.pcm)?)])?;
    Ok(Report::new()
        .int("n", out.pcm.len())
        .int("corrected_blocks", out.corrected_blocks))
}

fn cmd_channel(a: &ChannelArgs) -> CmdResult {
    let model = ChannelModel::from(a.model);
    let (p, sigma) = match model {
        ChannelModel::Bitflip => (
            a.p.ok_or_else(|| Failure::Usage("--model bitflip requires --p".into()))?,
            0.0,
        ),
        ChannelModel::Awgn => (
            0.0,
            a.sigma
                .ok_or_else(|| Failure::Usage("--model awgn requires --sigma".into()))?,
        ),
        ChannelModel::Lossless => (0.0, 0.0),
    };
    let spec = ChannelSpec::new(model, p, sigma, a.seed).map_err(|e| Failure::Usage(e.to_string()))?;
    let input = std::fs::read(&a.io.input)?;
    let kind = FileKind::sniff(&input);

    let (bytes, report) = match (model, kind) {
        (ChannelModel::Lossless, _) => (input.clone(), Report::new().int("n", input.len())),
        (ChannelModel::Bitflip, FileKind::Wav) => {
            let pcm = parse_wav(&input)?;
            let noisy = channel::apply_bitflip_pcm(&pcm, &spec)?;
            let sent = fec::BitStream::from_pcm(&pcm);
            let got = fec::BitStream::from_pcm(&noisy);
            (serialize_wav(&noisy)?, bit_report(&sent.bits, &got.bits))
        }
        (ChannelModel::Bitflip, FileKind::Bits) => {
            let stream = fec::parse_stream(&input)?;
            let noisy = channel::apply_bitflip(&stream, &spec)?;
            (fec::serialize_stream(&noisy), bit_report(&stream.bits, &noisy.bits))
        }
        (ChannelModel::Awgn, FileKind::Wav) => {
            let clip = pcm_to_float(&parse_wav(&input)?);
            let noisy = float_to_pcm(&channel::apply_awgn(&clip, &spec)?);
            let received = pcm_to_float(&noisy);
            (
                serialize_wav(&noisy)?,
                Report::new().fidelity(&FidelityReport::compare(&clip.samples, &received.samples)?),
            )
        }
        (_, kind) => {
            return Err(Failure::Data(Error::UnsupportedFormat(format!(
                "{} channel cannot carry a {} file",
                a.model_name(),
                kind.name()
            ))))
        }
    };
    write_outputs(&[(&a.io.out, bytes)])?;
    Ok(report)
}

impl ChannelArgs {
    fn model_name(&self) -> &'static str {
        match self.model {
            ModelArg::Bitflip => "bitflip",
            ModelArg::Awgn => "awgn",
            ModelArg::Lossless => "lossless",
        }
    }
}

fn bit_report(sent: &[bool], received: &[bool]) -> Report {
    let errors = metrics::bit_errors(sent, received);
    let ber = if sent.is_empty() { 0.0 } else { errors as f64 / sent.len() as f64 };
    Report::new().float("ber", ber).int("n", sent.len())
}

fn as_image_values(kind: FileKind, bytes: &[u8]) -> Result<Option<Grid>, Failure> {
    Ok(match kind {
        FileKind::Pgm => {
            let img = parse_pgm(bytes)?;
            Some(Grid::new(img.height(), img.width(), pixels_as_f64(&img))?)
        }
        FileKind::FloatGrid => Some(parse_float_grid(bytes)?),
        _ => None,
    })
}

fn cmd_evaluate(a: &EvaluateArgs) -> CmdResult {
    let (bytes_a, bytes_b) = (std::fs::read(&a.a)?, std::fs::read(&a.b)?);
    let (kind_a, kind_b) = (FileKind::sniff(&bytes_a), FileKind::sniff(&bytes_b));
    let mismatch = || {
        Failure::Data(Error::UnsupportedFormat(format!(
            "cannot compare a {} file with a {} file",
            kind_a.name(),
            kind_b.name()
        )))
    };
    match (kind_a, kind_b) {
        (FileKind::Wav, FileKind::Wav) => {
            let x = pcm_to_float(&parse_wav(&bytes_a)?);
            let y = pcm_to_float(&parse_wav(&bytes_b)?);
            Ok(Report::new().fidelity(&FidelityReport::compare(&x.samples, &y.samples)?))
        }
        (FileKind::Bits, FileKind::Bits) => {
            let x = fec::parse_stream(&bytes_a)?;
            let y = fec::parse_stream(&bytes_b)?;
            let ber = metrics::ber(&x.bits, &y.bits)?;
            let as_f = |s: &fec::BitStream| s.bits.iter().map(|&b| f64::from(u8::from(b))).collect::<Vec<_>>();
            let r = FidelityReport::compare(&as_f(&x), &as_f(&y))?;
            Ok(Report::new()
                .float("mse", r.mse)
                .float("snr_db", r.snr_db)
                .float("ber", ber)
                .int("n", r.n))
        }
        _ => {
            let x = as_image_values(kind_a, &bytes_a)?.ok_or_else(mismatch)?;
            let y = as_image_values(kind_b, &bytes_b)?.ok_or_else(mismatch)?;
            if (x.rows(), x.cols()) != (y.rows(), y.cols()) {
                return Err(Failure::Data(Error::DimensionMismatch {
                    expected: x.len(),
                    got: y.len(),
                }));
            }
            Ok(Report::new().fidelity(&FidelityReport::compare(x.values(), y.values())?))
        }
    }
}
