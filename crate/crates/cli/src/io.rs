use std::fs;
use std::io::Write;
use std::path::Path;

use spectra_core::audio_steg::{read_wav, write_wav, WavAudio};
use spectra_core::Signal;

use crate::CliError;

/// Largest absolute sample written to a WAV file before rescaling.
const WAV_HEADROOM: f64 = 0.999;

pub fn is_wav(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("wav"))
}

pub fn read_audio(path: &Path) -> Result<WavAudio, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    read_wav(&bytes).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

/// Reads a WAV file or a text file with one sample per line. The first
/// column of each line is used; a non-numeric first line is taken as a header.
pub fn read_signal(path: &Path) -> Result<Signal, CliError> {
    if is_wav(path) {
        let audio = read_audio(path)?;
        return Signal::new(audio.samples)
            .map_err(|e| CliError::Data(format!("{}: {e}", path.display())));
    }
    let text =
        fs::read_to_string(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    let mut samples = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let field = line.split(',').next().unwrap_or("").trim();
        if field.is_empty() {
            continue;
        }
        match field.parse::<f64>() {
            Ok(v) => samples.push(v),
            Err(_) if i == 0 => continue,
            Err(_) => {
                return Err(CliError::Data(format!(
                    "{}:{}: `{field}` is not a number",
                    path.display(),
                    i + 1
                )))
            }
        }
    }
    Signal::new(samples).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

pub fn signal_csv(x: &Signal) -> String {
    let mut out = String::from("sample\n");
    for s in x.samples() {
        out.push_str(&format!("{s}\n"));
    }
    out
}

pub fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|e| CliError::Data(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| CliError::Data(format!("stdout: {e}"))),
    }
}

/// Writes `x` as CSV, or as 16-bit WAV when the path ends in `.wav`.
/// Signals that would clip are scaled to fit; the gain goes to stderr.
pub fn write_signal(path: Option<&Path>, x: &Signal, sample_rate: u32) -> Result<(), CliError> {
    match path {
        Some(p) if is_wav(p) => {
            let peak = x.peak_abs();
            let x = if peak > WAV_HEADROOM {
                let gain = WAV_HEADROOM / peak;
                eprintln!("note: scaled by {gain:.6} to fit 16-bit full scale");
                x.scaled(gain)
            } else {
                x.clone()
            };
            let encoded = write_wav(&WavAudio::new(sample_rate, x.into_samples()));
            if encoded.clamped > 0 {
                eprintln!("warning: {} samples clamped", encoded.clamped);
            }
            write_output(Some(p), &encoded.bytes)
        }
        _ => write_output(path, signal_csv(x).as_bytes()),
    }
}
