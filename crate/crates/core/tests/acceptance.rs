//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line per
//! criterion and exits non-zero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::Rng;

use common::{dct1d_direct, dct2d_direct, max_abs_diff, random_image, random_pcm_clip, random_signal, rng};
use wmkit::channel::{apply_bitflip, ChannelSpec};
use wmkit::fec::{self, decode_word, encode_word, BitStream};
use wmkit::metrics::{bit_errors, mse};
use wmkit::schemes::{self, EmbedKey};
use wmkit::signal_io::{
    float_to_pcm, parse_float_grid, parse_pgm, parse_wav, pcm_to_float, serialize_pgm,
    serialize_wav, AudioClip, GrayImage, PcmBuffer,
};
use wmkit::transform::{dct1d, dct2d, idct1d, idct2d, Grid};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

fn energy(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

/// 1. Transform correctness.
fn transform_correctness() -> Outcome {
    let start = Instant::now();
    let mut r = rng(1);
    let mut worst_inv = 0.0f64;
    let mut worst_parseval = 0.0f64;
    for case in 0..500 {
        let n = if case < 4 { [1, 2, 3, 1024][case] } else { r.random_range(1..=1024) };
        let x = random_signal(&mut r, n);
        let spec = dct1d(&x).unwrap();
        worst_inv = worst_inv.max(max_abs_diff(&idct1d(&spec).unwrap(), &x));
        worst_inv = worst_inv.max(max_abs_diff(&dct1d(&idct1d(&x).unwrap()).unwrap(), &x));
        worst_parseval = worst_parseval.max((energy(&x) - energy(&spec)).abs());
        if case % 10 == 0 {
            let d = max_abs_diff(&spec, &dct1d_direct(&x));
            ensure(d < 1e-9, || format!("1D fast vs direct differ by {d:e} at N={n}"))?;
        }
    }
    for _ in 0..100 {
        let (rows, cols) = (r.random_range(1..=64), r.random_range(1..=64));
        let g = Grid::new(rows, cols, random_signal(&mut r, rows * cols)).unwrap();
        let spec = dct2d(&g).unwrap();
        worst_inv = worst_inv.max(max_abs_diff(idct2d(&spec).unwrap().values(), g.values()));
        worst_parseval = worst_parseval.max((energy(g.values()) - energy(spec.values())).abs());
    }
    let mut worst_direct = 0.0f64;
    for rows in 1..=16 {
        for cols in [1, 2, 5, 7, 8, 13, 16] {
            let g = Grid::new(rows, cols, random_signal(&mut r, rows * cols)).unwrap();
            let fast = dct2d(&g).unwrap();
            worst_direct = worst_direct.max(max_abs_diff(fast.values(), &dct2d_direct(g.values(), rows, cols)));
        }
    }
    ensure(worst_inv < 1e-9, || format!("inverse error {worst_inv:e}"))?;
    ensure(worst_parseval < 1e-9, || format!("Parseval error {worst_parseval:e}"))?;
    ensure(worst_direct < 1e-9, || format!("2D separable vs direct {worst_direct:e}"))?;
    within(Duration::from_secs(30), start)?;
    Ok(format!(
        "inverse {worst_inv:.1e}, Parseval {worst_parseval:.1e}, direct 2D {worst_direct:.1e}, {:.2?}",
        start.elapsed()
    ))
}

/// 2. Exhaustive Hamming(15,11).
fn hamming_exhaustive() -> Outcome {
    let start = Instant::now();
    let mut ok = 0usize;
    for d in 0u16..2048 {
        let cw = encode_word(d);
        ensure(decode_word(cw) == (d, 0), || format!("clean decode of {d}"))?;
        for k in 1..=15usize {
            ensure(decode_word(cw ^ (1 << (k - 1))) == (d, k), || format!("data {d}, flip {k}"))?;
            ok += 1;
        }
    }
    ensure(ok == 30_720, || format!("{ok} single-error cases"))?;
    within(Duration::from_secs(5), start)?;
    Ok(format!("2048 clean + {ok} single-error cases, {:.2?}", start.elapsed()))
}

/// 3. Interleave round trip.
fn interleave_round_trip() -> Outcome {
    let mut r = rng(3);
    for case in 0..100 {
        let nc = r.random_range(1..=20_000);
        let nw = r.random_range(1..=nc);
        let cover = random_pcm_clip(&mut r, nc, 1.0);
        let wm = random_pcm_clip(&mut r, nw, 1.0);
        let (marked, key) = schemes::embed_interleave(&cover, &wm).unwrap();
        // Transmit as PCM16.
        let received = pcm_to_float(&parse_wav(&serialize_wav(&float_to_pcm(&marked)).unwrap()).unwrap());
        let (w, c) = schemes::extract_interleave(&received, &key).unwrap();
        ensure(w.samples == wm.samples, || format!("case {case}: watermark differs"))?;
        ensure(c.samples == cover.samples, || format!("case {case}: cover differs"))?;
        ensure(mse(&w.samples, &wm.samples).unwrap() == 0.0, || "nonzero MSE".into())?;
    }
    Ok("100 pairs, watermark and cover bit-identical, MSE = 0".into())
}

/// 4. DCT audio-in-audio.
fn dct_audio_in_audio() -> Outcome {
    let mut r = rng(4);
    let (mut worst_float, mut worst_pcm) = (0.0f64, 0.0f64);
    for _ in 0..50 {
        let n = r.random_range(8..=32_768);
        let nw = r.random_range(1..=n / 8);
        let cover = random_pcm_clip(&mut r, n, 0.3);
        let wm = random_pcm_clip(&mut r, nw, 0.3);
        let (marked, key) = schemes::embed_dct_aa(&cover, &wm, 1.0).unwrap();
        let float = schemes::extract_dct_aa(&marked, &key).unwrap();
        worst_float = worst_float.max(mse(&float.samples, &wm.samples).unwrap());
        let quantized = pcm_to_float(&float_to_pcm(&marked));
        let rec = schemes::extract_dct_aa(&quantized, &key).unwrap();
        worst_pcm = worst_pcm.max(mse(&rec.samples, &wm.samples).unwrap());
    }
    ensure(worst_float < 1e-12, || format!("float MSE {worst_float:e}"))?;
    ensure(worst_pcm < 1e-7, || format!("PCM16 MSE {worst_pcm:e}"))?;
    Ok(format!("50 pairs, float MSE <= {worst_float:.2e}, PCM16 MSE <= {worst_pcm:.2e}"))
}

/// 5. Image-in-audio.
fn image_in_audio() -> Outcome {
    let mut r = rng(5);
    for case in 0..50 {
        let (w, h) = (r.random_range(1..=64), r.random_range(1..=64));
        let img = random_image(&mut r, w, h);
        let n = w * h * r.random_range(16..=20);
        let cover = AudioClip::new(random_signal(&mut r, n).iter().map(|v| v * 0.5).collect(), 8000);
        let (marked, key) = schemes::embed_image_in_audio(&cover, &img, 1.0).unwrap();
        let got = schemes::extract_image_in_audio(&marked, &key).unwrap();
        ensure(got == img, || format!("case {case}: {w}x{h} image not pixel-exact"))?;
    }
    Ok("50 images up to 64x64, pixel-exact (MSE = 0)".into())
}

/// 6. Audio-in-image.
fn audio_in_image() -> Outcome {
    let mut r = rng(6);
    let (mut worst_float, mut worst_render) = (0.0f64, 0.0f64);
    for _ in 0..30 {
        let (w, h) = (r.random_range(2..=64), r.random_range(2..=64));
        let cover = random_image(&mut r, w, h);
        let nw = r.random_range(1..=w * h / 2);
        let wm = random_pcm_clip(&mut r, nw, 0.5);
        let (marked, key) = schemes::embed_audio_in_image(&cover, &wm, 1.0).unwrap();
        let rec = schemes::extract_audio_in_image(&marked, &key).unwrap();
        worst_float = worst_float.max(mse(&rec.samples, &wm.samples).unwrap());

        let rendered = schemes::render_gray(&marked).unwrap();
        let grid = Grid::new(h, w, rendered.pixels().iter().map(|&p| f64::from(p)).collect()).unwrap();
        let lossy = schemes::extract_audio_in_image(&grid, &key).unwrap();
        let m = mse(&lossy.samples, &wm.samples).unwrap();
        ensure(m.is_finite(), || "8-bit rendering MSE not finite".into())?;
        worst_render = worst_render.max(m);
    }
    ensure(worst_float < 1e-9, || format!("float-grid MSE {worst_float:e}"))?;
    Ok(format!("float-grid MSE <= {worst_float:.2e}; 8-bit rendering MSE <= {worst_render:.3e} (reported)"))
}

/// Payload BER through the FEC path and raw, for one channel.
fn fec_bers(words: usize, p: f64, seed: u64) -> (f64, f64) {
    let mut r = rng(seed ^ 0xfec);
    let pcm = PcmBuffer::new((0..words).map(|_| r.random()).collect(), 8000);
    let sent = BitStream::from_pcm(&pcm);

    let raw = apply_bitflip(&sent, &ChannelSpec::bitflip(p, seed).unwrap()).unwrap();
    let pre = bit_errors(&sent.bits, &raw.bits) as f64 / sent.len() as f64;

    let protected = fec::protect(&pcm).unwrap();
    let noisy = apply_bitflip(&protected, &ChannelSpec::bitflip(p, seed + 1).unwrap()).unwrap();
    let back = fec::unprotect(&noisy, 8000).unwrap();
    let post = bit_errors(&sent.bits, &BitStream::from_pcm(&back.pcm).bits) as f64 / sent.len() as f64;
    (pre, post)
}

/// 7. FEC under noise.
fn fec_under_noise() -> Outcome {
    let start = Instant::now();
    let words = 62_500; // 10^6 payload bits
    let (pre, post) = fec_bers(words, 1e-3, 70);
    ensure(pre > 0.0, || "no raw errors at p = 1e-3".into())?;
    ensure(post < pre / 10.0, || format!("post-FEC BER {post:e} vs pre-FEC {pre:e}"))?;
    let (pre_low, post_low) = fec_bers(words, 1e-5, 71);
    ensure(post_low < 1e-6, || format!("post-FEC BER {post_low:e} at p = 1e-5"))?;
    within(Duration::from_secs(60), start)?;
    Ok(format!(
        "p=1e-3: pre {pre:.3e}, post {post:.3e}; p=1e-5: pre {pre_low:.3e}, post {post_low:.1e}; {:.2?}",
        start.elapsed()
    ))
}

/// 8. Alpha invariance.
fn alpha_invariance() -> Outcome {
    let mut r = rng(8);
    let alphas = [0.5, 1.0, 2.0, 8.0];
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let cover = random_pcm_clip(&mut r, 2048, 0.5);
        let wm = random_pcm_clip(&mut r, 200, 0.5);
        let img = random_image(&mut r, 12, 9);
        let cover_img = random_image(&mut r, 30, 20);
        let outputs: Vec<[Vec<f64>; 3]> = alphas
            .iter()
            .map(|&a| {
                let (m, k) = schemes::embed_dct_aa(&cover, &wm, a).unwrap();
                let aa = schemes::extract_dct_aa(&m, &k).unwrap().samples;
                let (m, k) = schemes::embed_audio_in_image(&cover_img, &wm, a).unwrap();
                let ai = schemes::extract_audio_in_image(&m, &k).unwrap().samples;
                let (m, k) = schemes::embed_image_in_audio(&cover, &img, a).unwrap();
                let ia = schemes::extract_image_in_audio_float(&m, &k).unwrap().into_values();
                [aa, ai, ia]
            })
            .collect();
        for out in &outputs[1..] {
            for s in 0..3 {
                worst = worst.max(max_abs_diff(&out[s], &outputs[0][s]));
            }
        }
    }
    ensure(worst < 1e-9, || format!("alpha changes extraction by {worst:e}"))?;
    Ok(format!("alphas {alphas:?}, 3 DCT schemes, max deviation {worst:.2e}"))
}

/// 9. Energy accounting for dct-aa, against the direct-sum DCT.
fn energy_accounting() -> Outcome {
    let mut r = rng(9);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let n = r.random_range(2..=1024);
        let nw = r.random_range(1..=n);
        let alpha = r.random_range(0.1..4.0);
        let cover = AudioClip::new(random_signal(&mut r, n), 8000);
        let wm = AudioClip::new(random_signal(&mut r, nw), 8000);
        let (marked, key) = schemes::embed_dct_aa(&cover, &wm, alpha).unwrap();
        let c = dct1d_direct(&cover.samples);
        let w = dct1d_direct(&wm.samples);
        let predicted = c[n - nw..]
            .iter()
            .zip(&w)
            .map(|(ct, wt)| (ct - alpha * wt).powi(2))
            .sum::<f64>()
            / n as f64;
        let measured = schemes::embedding_distortion(&cover.samples, &marked.samples, &key)
            .unwrap()
            .report
            .mse;
        worst = worst.max(((measured - predicted) / predicted).abs());
    }
    ensure(worst < 1e-9, || format!("relative error {worst:e}"))?;
    Ok(format!("50 cases, worst relative error {worst:.2e}"))
}

fn mutate(r: &mut impl Rng, mut bytes: Vec<u8>) -> Vec<u8> {
    match r.random_range(0..5) {
        0 => {
            let cut = r.random_range(0..=bytes.len());
            bytes.truncate(cut);
        }
        1 => {
            for _ in 0..r.random_range(1..8) {
                if !bytes.is_empty() {
                    let i = r.random_range(0..bytes.len());
                    bytes[i] = r.random();
                }
            }
        }
        2 => {
            // Corrupt a header field with an extreme value.
            if bytes.len() >= 8 {
                let i = r.random_range(0..bytes.len().min(48) - 3);
                let v: u32 = [0, 1, u32::MAX, 0x7fff_ffff, r.random()][r.random_range(0..5)];
                bytes[i..i + 4].copy_from_slice(&v.to_le_bytes());
            }
        }
        3 => {
            let extra = r.random_range(0..64);
            bytes.extend((0..extra).map(|_| r.random::<u8>()));
        }
        _ => {
            let len = r.random_range(0..96);
            bytes = (0..len).map(|_| r.random()).collect();
        }
    }
    bytes
}

/// 10. Parser robustness.
fn parser_robustness() -> Outcome {
    let mut r = rng(10);
    let wav = serialize_wav(&PcmBuffer::new((0..40).map(|i| i * 311).collect(), 8000)).unwrap();
    let pgm = serialize_pgm(&GrayImage::new(5, 4, (0..20).collect()).unwrap());
    let (mut parsed, mut errors, mut crashes) = (0, 0, 0);
    let prev = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    for i in 0..10_000 {
        let seed_bytes = if i % 2 == 0 { wav.clone() } else { pgm.clone() };
        let input = mutate(&mut r, seed_bytes);
        let result = catch_unwind(AssertUnwindSafe(|| {
            let ok = if i % 2 == 0 { parse_wav(&input).is_ok() } else { parse_pgm(&input).is_ok() };
            let _ = parse_float_grid(&input);
            let _ = fec::parse_stream(&input);
            let _ = EmbedKey::from_sidecar(&String::from_utf8_lossy(&input));
            ok
        }));
        match result {
            Ok(true) => parsed += 1,
            Ok(false) => errors += 1,
            Err(_) => crashes += 1,
        }
    }
    std::panic::set_hook(prev);
    ensure(crashes == 0, || format!("{crashes} crashes"))?;
    Ok(format!("10000 inputs: {parsed} parsed, {errors} typed errors, 0 crashes"))
}

/// 11. CLI golden pipeline.
fn cli_golden_pipeline() -> Outcome {
    let work = tempfile::tempdir().map_err(|e| e.to_string())?;
    let artifacts = common::golden_pipeline(work.path());
    common::check_golden(&artifacts)?;
    Ok(format!("{} artifacts byte-identical to frozen outputs", artifacts.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("transform correctness", transform_correctness),
        ("hamming exhaustive", hamming_exhaustive),
        ("interleave round trip", interleave_round_trip),
        ("dct audio-in-audio", dct_audio_in_audio),
        ("image-in-audio", image_in_audio),
        ("audio-in-image", audio_in_image),
        ("fec under noise", fec_under_noise),
        ("alpha invariance", alpha_invariance),
        ("energy accounting", energy_accounting),
        ("parser robustness", parser_robustness),
        ("cli golden pipeline", cli_golden_pipeline),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(check).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into());
            Err(msg)
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
