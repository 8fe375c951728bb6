#![allow(dead_code)]

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wmkit::signal_io::{pcm_to_float, AudioClip, GrayImage, PcmBuffer};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn norm(u: usize, n: usize) -> f64 {
    let a = if u == 0 { 1.0 / 2f64.sqrt() } else { 1.0 };
    (2.0 / n as f64).sqrt() * a
}

/// Direct evaluation of the 1D DCT-II sum, O(N²).
pub fn dct1d_direct(f: &[f64]) -> Vec<f64> {
    let n = f.len();
    (0..n)
        .map(|u| {
            norm(u, n)
                * f.iter()
                    .enumerate()
                    .map(|(i, &x)| (u as f64 * (2 * i + 1) as f64 * PI / (2 * n) as f64).cos() * x)
                    .sum::<f64>()
        })
        .collect()
}

/// Direct quadruple-sum evaluation of the 2D DCT-II over a row-major
/// `rows × cols` grid.
pub fn dct2d_direct(f: &[f64], rows: usize, cols: usize) -> Vec<f64> {
    let mut out = vec![0.0; rows * cols];
    for u in 0..rows {
        for v in 0..cols {
            let mut sum = 0.0;
            for i in 0..rows {
                let cu = (u as f64 * (2 * i + 1) as f64 * PI / (2 * rows) as f64).cos();
                for j in 0..cols {
                    let cv = (v as f64 * (2 * j + 1) as f64 * PI / (2 * cols) as f64).cos();
                    sum += cu * cv * f[i * cols + j];
                }
            }
            out[u * cols + v] = norm(u, rows) * norm(v, cols) * sum;
        }
    }
    out
}

pub fn random_signal(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}

/// Random PCM-quantized clip with amplitude at most `amp`.
pub fn random_pcm_clip(rng: &mut impl Rng, n: usize, amp: f64) -> AudioClip {
    let limit = (amp * 32767.0) as i16;
    let words = (0..n).map(|_| rng.random_range(-limit..=limit)).collect();
    pcm_to_float(&PcmBuffer::new(words, 8000))
}

pub fn random_image(rng: &mut impl Rng, w: usize, h: usize) -> GrayImage {
    GrayImage::new(w, h, (0..w * h).map(|_| rng.random()).collect()).unwrap()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

pub struct CliRun {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the `wmkit` binary with `args`.
pub fn wmkit<I, S>(args: I) -> CliRun
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    let out = Command::new(env!("CARGO_BIN_EXE_wmkit"))
        .args(args)
        .output()
        .expect("spawn wmkit");
    CliRun {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

/// Runs the checked-in fixtures through every command and returns each
/// artifact (files and captured stdout) by name.
pub fn golden_pipeline(work: &Path) -> Vec<(String, Vec<u8>)> {
    let data = data_dir();
    let input = |name: &str| data.join(name).to_str().unwrap().to_string();
    let out = |name: &str| work.join(name).to_str().unwrap().to_string();
    let mut artifacts = Vec::new();
    let mut step = |label: &str, args: Vec<String>, files: &[&str]| {
        let run = wmkit(&args);
        assert_eq!(run.code, 0, "{label}: {}", run.stderr);
        artifacts.push((format!("{label}.txt"), run.stdout.into_bytes()));
        for f in files {
            artifacts.push((f.to_string(), std::fs::read(work.join(f)).unwrap()));
        }
    };
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();

    // Interleave with Hamming protection over a bit-flipping channel.
    step("ia_embed", s(&["embed", "--scheme", "interleave", "--cover", &input("cover.wav"), "--watermark", &input("watermark.wav"), "--out", &out("ia_marked.wav"), "--key", &out("ia.key")]), &["ia_marked.wav", "ia.key"]);
    step("ia_protect", s(&["protect", "--in", &out("ia_marked.wav"), "--out", &out("ia_marked.bits")]), &["ia_marked.bits"]);
    step("ia_channel", s(&["channel", "--model", "bitflip", "--p", "0.0005", "--seed", "2024", "--in", &out("ia_marked.bits"), "--out", &out("ia_noisy.bits")]), &["ia_noisy.bits"]);
    step("ia_unprotect", s(&["unprotect", "--in", &out("ia_noisy.bits"), "--out", &out("ia_received.wav"), "--rate", "8000"]), &["ia_received.wav"]);
    step("ia_extract", s(&["extract", "--in", &out("ia_received.wav"), "--key", &out("ia.key"), "--out", &out("ia_recovered.wav"), "--reference", &input("watermark.wav")]), &["ia_recovered.wav"]);
    step("ia_evaluate", s(&["evaluate", "--a", &input("watermark.wav"), "--b", &out("ia_recovered.wav")]), &[]);

    // Same channel without protection, for comparison.
    step("ia_raw_channel", s(&["channel", "--model", "bitflip", "--p", "0.0005", "--seed", "2024", "--in", &out("ia_marked.wav"), "--out", &out("ia_raw_noisy.wav")]), &["ia_raw_noisy.wav"]);
    step("ia_raw_extract", s(&["extract", "--in", &out("ia_raw_noisy.wav"), "--key", &out("ia.key"), "--out", &out("ia_raw_recovered.wav"), "--reference", &input("watermark.wav")]), &["ia_raw_recovered.wav"]);

    // Image in audio through the same protected chain.
    step("iia_embed", s(&["embed", "--scheme", "image-in-audio", "--cover", &input("cover.wav"), "--watermark", &input("watermark.pgm"), "--out", &out("iia_marked.wav"), "--key", &out("iia.key"), "--alpha", "0.5"]), &["iia_marked.wav", "iia.key"]);
    step("iia_protect", s(&["protect", "--in", &out("iia_marked.wav"), "--out", &out("iia_marked.bits")]), &["iia_marked.bits"]);
    step("iia_channel", s(&["channel", "--model", "bitflip", "--p", "0.0005", "--seed", "7", "--in", &out("iia_marked.bits"), "--out", &out("iia_noisy.bits")]), &["iia_noisy.bits"]);
    step("iia_unprotect", s(&["unprotect", "--in", &out("iia_noisy.bits"), "--out", &out("iia_received.wav"), "--rate", "8000"]), &["iia_received.wav"]);
    step("iia_extract", s(&["extract", "--in", &out("iia_received.wav"), "--key", &out("iia.key"), "--out", &out("iia_recovered.pgm"), "--reference", &input("watermark.pgm")]), &["iia_recovered.pgm"]);
    step("iia_evaluate", s(&["evaluate", "--a", &input("watermark.pgm"), "--b", &out("iia_recovered.pgm")]), &[]);

    // DCT audio in audio over Gaussian noise.
    step("da_embed", s(&["embed", "--scheme", "dct-aa", "--cover", &input("cover.wav"), "--watermark", &input("watermark.wav"), "--out", &out("da_marked.wav"), "--key", &out("da.key")]), &["da_marked.wav", "da.key"]);
    step("da_channel", s(&["channel", "--model", "awgn", "--sigma", "0.001", "--seed", "3", "--in", &out("da_marked.wav"), "--out", &out("da_noisy.wav")]), &["da_noisy.wav"]);
    step("da_extract", s(&["extract", "--in", &out("da_noisy.wav"), "--key", &out("da.key"), "--out", &out("da_recovered.wav"), "--reference", &input("watermark.wav")]), &["da_recovered.wav"]);

    // Audio in image, from the float grid and from the 8-bit preview.
    step("ai_embed", s(&["embed", "--scheme", "audio-in-image", "--cover", &input("cover.pgm"), "--watermark", &input("watermark.wav"), "--out", &out("ai_marked.dctf"), "--key", &out("ai.key"), "--render-pgm", &out("ai_preview.pgm")]), &["ai_marked.dctf", "ai.key", "ai_preview.pgm"]);
    step("ai_extract", s(&["extract", "--in", &out("ai_marked.dctf"), "--key", &out("ai.key"), "--out", &out("ai_recovered.wav"), "--reference", &input("watermark.wav")]), &["ai_recovered.wav"]);
    step("ai_extract_preview", s(&["extract", "--in", &out("ai_preview.pgm"), "--key", &out("ai.key"), "--out", &out("ai_preview_recovered.wav"), "--reference", &input("watermark.wav")]), &["ai_preview_recovered.wav"]);
    step("ai_evaluate", s(&["evaluate", "--a", &input("cover.pgm"), "--b", &out("ai_marked.dctf")]), &[]);

    artifacts
}

/// Compares artifacts with `tests/data/golden`; with `WMKIT_UPDATE_GOLDEN`
/// set, rewrites the golden files instead.
pub fn check_golden(artifacts: &[(String, Vec<u8>)]) -> Result<(), String> {
    let dir = data_dir().join("golden");
    if std::env::var_os("WMKIT_UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(&dir).unwrap();
        for (name, bytes) in artifacts {
            std::fs::write(dir.join(name), bytes).unwrap();
        }
        return Ok(());
    }
    let mut failures = Vec::new();
    for (name, bytes) in artifacts {
        match std::fs::read(dir.join(name)) {
            Ok(expected) if &expected == bytes => {}
            Ok(_) => failures.push(format!("{name} differs")),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(failures.join(", "))
    }
}
