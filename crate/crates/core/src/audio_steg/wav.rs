//! 16-bit PCM RIFF/WAVE reading and writing.
//!
//! Reading accepts mono or stereo files, skips unknown chunks and requires
//! `fmt ` to precede `data`. Writing always emits the canonical 44-byte
//! mono header.

use thiserror::Error;

/// Full scale of a signed 16-bit sample.
const FULL_SCALE: f64 = 32768.0;
const CANONICAL_HEADER_LEN: usize = 44;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WavError {
    #[error("malformed WAV header: {0}")]
    MalformedHeader(String),
    #[error("unsupported WAV format code {0} (only PCM, code 1, is read)")]
    NotPcm(u16),
    #[error("unsupported bit depth {0} (only 16-bit PCM is read)")]
    UnsupportedBitDepth(u16),
    #[error("unsupported channel count {0} (mono or stereo only)")]
    UnsupportedChannels(u16),
}

fn malformed(msg: impl Into<String>) -> WavError {
    WavError::MalformedHeader(msg.into())
}

/// Mono audio with samples normalized so that 16-bit `s` maps to `s / 32768`.
#[derive(Debug, Clone, PartialEq)]
pub struct WavAudio {
    pub sample_rate: u32,
    pub samples: Vec<f64>,
}

impl WavAudio {
    pub fn new(sample_rate: u32, samples: Vec<f64>) -> Self {
        Self {
            sample_rate,
            samples,
        }
    }

    pub fn channel_count(&self) -> u16 {
        1
    }
}

/// Result of encoding: the file bytes and how many samples saturated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedWav {
    pub bytes: Vec<u8>,
    pub clamped: usize,
}

fn u16_at(b: &[u8], at: usize) -> u16 {
    u16::from_le_bytes([b[at], b[at + 1]])
}

fn u32_at(b: &[u8], at: usize) -> u32 {
    u32::from_le_bytes([b[at], b[at + 1], b[at + 2], b[at + 3]])
}

struct Format {
    channels: u16,
    sample_rate: u32,
}

fn parse_fmt(body: &[u8]) -> Result<Format, WavError> {
    if body.len() < 16 {
        return Err(malformed(format!(
            "fmt chunk is {} bytes, need 16",
            body.len()
        )));
    }
    let code = u16_at(body, 0);
    let channels = u16_at(body, 2);
    let sample_rate = u32_at(body, 4);
    let bits = u16_at(body, 14);
    if code != 1 {
        return Err(WavError::NotPcm(code));
    }
    if bits != 16 {
        return Err(WavError::UnsupportedBitDepth(bits));
    }
    if channels != 1 && channels != 2 {
        return Err(WavError::UnsupportedChannels(channels));
    }
    Ok(Format {
        channels,
        sample_rate,
    })
}

/// Decodes a PCM WAV file. Stereo input is downmixed by averaging the two
/// channels. A `data` chunk that claims more bytes than the file holds is
/// read up to the last complete frame.
pub fn read_wav(bytes: &[u8]) -> Result<WavAudio, WavError> {
    if bytes.len() < CANONICAL_HEADER_LEN {
        return Err(malformed(format!(
            "file is {} bytes, shorter than a {CANONICAL_HEADER_LEN}-byte header",
            bytes.len()
        )));
    }
    if &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"WAVE" {
        return Err(malformed("missing RIFF/WAVE signature"));
    }

    let mut format: Option<Format> = None;
    let mut pos = 12;
    while pos + 8 <= bytes.len() {
        let id = &bytes[pos..pos + 4];
        let size = u32_at(bytes, pos + 4) as usize;
        let body_start = pos + 8;
        let body_end = body_start.saturating_add(size);
        match id {
            b"fmt " => {
                if body_end > bytes.len() {
                    return Err(malformed("fmt chunk runs past end of file"));
                }
                format = Some(parse_fmt(&bytes[body_start..body_end])?);
            }
            b"data" => {
                let fmt = format.ok_or_else(|| malformed("data chunk precedes fmt chunk"))?;
                let body = &bytes[body_start..body_end.min(bytes.len())];
                let frame = 2 * fmt.channels as usize;
                let samples = body
                    .chunks_exact(frame)
                    .map(|f| {
                        let sum: f64 = f
                            .chunks_exact(2)
                            .map(|s| i16::from_le_bytes([s[0], s[1]]) as f64)
                            .sum();
                        sum / (fmt.channels as f64 * FULL_SCALE)
                    })
                    .collect();
                return Ok(WavAudio::new(fmt.sample_rate, samples));
            }
            _ => {}
        }
        // Chunks are word aligned.
        pos = body_end.saturating_add(size & 1);
    }
    Err(malformed("no data chunk"))
}

/// Round half away from zero, then saturate to the i16 range.
fn quantize(sample: f64) -> (i16, bool) {
    let v = (sample * FULL_SCALE).round();
    if v.is_nan() {
        (0, true)
    } else if v > i16::MAX as f64 {
        (i16::MAX, true)
    } else if v < i16::MIN as f64 {
        (i16::MIN, true)
    } else {
        (v as i16, false)
    }
}

/// Encodes mono 16-bit PCM with the canonical 44-byte header.
pub fn write_wav(audio: &WavAudio) -> EncodedWav {
    let data_len = audio.samples.len() * 2;
    let mut out = Vec::with_capacity(CANONICAL_HEADER_LEN + data_len);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&((36 + data_len) as u32).to_le_bytes());
    out.extend_from_slice(b"WAVE");
    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes());
    out.extend_from_slice(&audio.sample_rate.to_le_bytes());
    out.extend_from_slice(&(audio.sample_rate.wrapping_mul(2)).to_le_bytes());
    out.extend_from_slice(&2u16.to_le_bytes());
    out.extend_from_slice(&16u16.to_le_bytes());
    out.extend_from_slice(b"data");
    out.extend_from_slice(&(data_len as u32).to_le_bytes());

    let mut clamped = 0;
    for &s in &audio.samples {
        let (q, saturated) = quantize(s);
        clamped += saturated as usize;
        out.extend_from_slice(&q.to_le_bytes());
    }
    EncodedWav {
        bytes: out,
        clamped,
    }
}
