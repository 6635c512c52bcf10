//! Offline, deterministic stereo rendering of sonification parameters.

mod convolve;
mod ir;
mod render;
mod synth;
mod wav;

use thiserror::Error;

pub use convolve::{convolve_direct, convolve_fft};
pub use ir::{generate_impulse_response, ImpulseResponse, IR_SECONDS};
pub use render::{frame_of, Mixer, Renderer, Stems};
pub use synth::{equal_power_pan, oscillator, render_mono, FADE_SECONDS};
pub use wav::{decode_wav, encode_raw_f32, encode_wav};

#[derive(Debug, Error)]
pub enum AudioError {
    #[error("sample rate {0} Hz is below the 8000 Hz minimum")]
    BadSampleRate(u32),
    #[error("invalid audio parameters: {0}")]
    InvalidParams(String),
    #[error("sonification failed: {0}")]
    Sonify(#[from] sonoterrain_core::sonify::SonifyError),
    #[error("wav: {0}")]
    Wav(#[from] hound::Error),
    #[error("wav: expected 2-channel 32-bit float, got {0}")]
    UnsupportedWav(String),
}

pub const MIN_SAMPLE_RATE: u32 = 8000;

/// Stereo float audio. Both channels always have the same length.
#[derive(Debug, Clone, PartialEq)]
pub struct RenderedAudio {
    pub sample_rate: u32,
    pub left: Vec<f32>,
    pub right: Vec<f32>,
}

impl RenderedAudio {
    pub fn silent(sample_rate: u32, frames: usize) -> Self {
        Self {
            sample_rate,
            left: vec![0.0; frames],
            right: vec![0.0; frames],
        }
    }

    pub fn frames(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    pub fn duration_s(&self) -> f64 {
        self.frames() as f64 / self.sample_rate as f64
    }

    pub fn peak(&self) -> f32 {
        self.left
            .iter()
            .chain(&self.right)
            .fold(0.0f32, |m, v| m.max(v.abs()))
    }
}
