use std::f64::consts::{FRAC_PI_4, TAU};

use sonoterrain_core::sonify::{AudioParams, Waveform};

/// Linear attack and release length.
pub const FADE_SECONDS: f64 = 0.005;

fn shape(waveform: Waveform, phase: f64) -> f64 {
    let p = phase - phase.floor();
    match waveform {
        Waveform::Sine => (TAU * p).sin(),
        // Starts at 0 rising, like the sine.
        Waveform::Triangle => {
            let q = p - 0.25;
            4.0 * (q - q.floor() - 0.5).abs() - 1.0
        }
        Waveform::Square => {
            if p < 0.5 {
                1.0
            } else {
                -1.0
            }
        }
    }
}

/// `frames` samples of a unit-amplitude oscillator, sweeping linearly from `f0` to `f1` Hz.
pub fn oscillator(waveform: Waveform, f0: f64, f1: f64, frames: usize, sample_rate: u32) -> Vec<f64> {
    let sr = sample_rate as f64;
    let span = frames.saturating_sub(1).max(1) as f64;
    let mut phase = 0.0f64;
    let mut out = Vec::with_capacity(frames);
    for n in 0..frames {
        out.push(shape(waveform, phase));
        let freq = f0 + (f1 - f0) * (n as f64 / span);
        phase += freq / sr;
        phase -= phase.floor();
    }
    out
}

fn fade_gain(n: usize, frames: usize, fade: usize) -> f64 {
    let fade = fade.max(1) as f64;
    let up = n as f64 / fade;
    let down = (frames - n) as f64 / fade;
    up.min(down).min(1.0)
}

fn lowpass(signal: &mut [f64], cutoff_hz: f64, sample_rate: u32) {
    let a = 1.0 - (-TAU * cutoff_hz / sample_rate as f64).exp();
    let mut y = 0.0;
    for s in signal.iter_mut() {
        y += a * (*s - y);
        *s = y;
    }
}

/// The mono voice of one tone: oscillator, fades, gain, then the lowpass.
pub fn render_mono(params: &AudioParams, sample_rate: u32) -> Vec<f64> {
    let frames = (params.dur_s * sample_rate as f64).round() as usize;
    let fade = (FADE_SECONDS * sample_rate as f64).round() as usize;
    let f1 = params.sweep_to_hz.unwrap_or(params.freq_hz);
    let mut voice = oscillator(params.waveform, params.freq_hz, f1, frames, sample_rate);
    for (n, s) in voice.iter_mut().enumerate() {
        *s *= params.gain * fade_gain(n, frames, fade);
    }
    lowpass(&mut voice, params.lowpass_hz, sample_rate);
    voice
}

/// Channel gains `(left, right)` for a pan in [−1, 1].
pub fn equal_power_pan(pan: f64) -> (f64, f64) {
    let angle = (pan.clamp(-1.0, 1.0) + 1.0) * FRAC_PI_4;
    (angle.cos(), angle.sin())
}
