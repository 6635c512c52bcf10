//! Measurement helpers for rendered audio.

#![allow(dead_code)]

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

/// Frequency (Hz) of the strongest non-DC bin of a length-matched FFT, and the bin width.
pub fn dominant_frequency(signal: &[f32], sample_rate: u32) -> (f64, f64) {
    let n = signal.len();
    let mut buf: Vec<Complex<f64>> = signal.iter().map(|&s| Complex::new(s as f64, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let bin = (1..n / 2)
        .max_by(|&a, &b| buf[a].norm().total_cmp(&buf[b].norm()))
        .unwrap_or(0);
    let width = sample_rate as f64 / n as f64;
    (bin as f64 * width, width)
}

pub fn rms(signal: &[f32]) -> f64 {
    if signal.is_empty() {
        return 0.0;
    }
    (signal.iter().map(|&s| (s as f64) * (s as f64)).sum::<f64>() / signal.len() as f64).sqrt()
}

pub fn rms64(signal: &[f64]) -> f64 {
    if signal.is_empty() {
        return 0.0;
    }
    (signal.iter().map(|s| s * s).sum::<f64>() / signal.len() as f64).sqrt()
}

/// RMS of consecutive non-overlapping windows.
pub fn windowed_rms(signal: &[f64], window: usize) -> Vec<f64> {
    signal.chunks(window).map(rms64).collect()
}

pub fn energy(signal: &[f32]) -> f64 {
    signal.iter().map(|&s| (s as f64) * (s as f64)).sum()
}
