use std::io::Cursor;

use hound::{SampleFormat, WavReader, WavSpec, WavWriter};

use crate::{AudioError, RenderedAudio};

fn spec(sample_rate: u32) -> WavSpec {
    WavSpec {
        channels: 2,
        sample_rate,
        bits_per_sample: 32,
        sample_format: SampleFormat::Float,
    }
}

/// 32-bit float stereo RIFF/WAVE.
pub fn encode_wav(audio: &RenderedAudio) -> Result<Vec<u8>, AudioError> {
    let mut bytes = Cursor::new(Vec::new());
    {
        let mut writer = WavWriter::new(&mut bytes, spec(audio.sample_rate))?;
        for (l, r) in audio.left.iter().zip(&audio.right) {
            writer.write_sample(*l)?;
            writer.write_sample(*r)?;
        }
        writer.finalize()?;
    }
    Ok(bytes.into_inner())
}

pub fn decode_wav(bytes: &[u8]) -> Result<RenderedAudio, AudioError> {
    let mut reader = WavReader::new(Cursor::new(bytes))?;
    let s = reader.spec();
    if s.channels != 2 || s.bits_per_sample != 32 || s.sample_format != SampleFormat::Float {
        return Err(AudioError::UnsupportedWav(format!(
            "{} channels, {} bits, {:?}",
            s.channels, s.bits_per_sample, s.sample_format
        )));
    }
    let samples = reader.samples::<f32>().collect::<Result<Vec<f32>, _>>()?;
    let (left, right) = samples.chunks_exact(2).map(|f| (f[0], f[1])).unzip();
    Ok(RenderedAudio {
        sample_rate: s.sample_rate,
        left,
        right,
    })
}

/// Interleaved little-endian f32 frames with no header.
pub fn encode_raw_f32(audio: &RenderedAudio) -> Vec<u8> {
    audio
        .left
        .iter()
        .zip(&audio.right)
        .flat_map(|(l, r)| l.to_le_bytes().into_iter().chain(r.to_le_bytes()))
        .collect()
}
