use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{AudioError, MIN_SAMPLE_RATE};

pub const IR_SECONDS: f64 = 2.2;
const DECAY_POWER: f64 = 3.5;

/// Stereo reverb impulse response: decorrelated noise under a `(1 − n/(N−1))^3.5` envelope.
/// Each channel is scaled to unit energy.
#[derive(Debug, Clone, PartialEq)]
pub struct ImpulseResponse {
    pub sample_rate: u32,
    pub left: Vec<f64>,
    pub right: Vec<f64>,
}

impl ImpulseResponse {
    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    pub fn envelope(&self, n: usize) -> f64 {
        envelope(n, self.len())
    }
}

fn envelope(n: usize, len: usize) -> f64 {
    if len < 2 {
        return 1.0;
    }
    (1.0 - n as f64 / (len - 1) as f64).max(0.0).powf(DECAY_POWER)
}

fn unit_energy(mut v: Vec<f64>) -> Vec<f64> {
    let norm = v.iter().map(|s| s * s).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|s| *s /= norm);
    }
    v
}

pub fn generate_impulse_response(sample_rate: u32, seed: u64) -> Result<ImpulseResponse, AudioError> {
    if sample_rate < MIN_SAMPLE_RATE {
        return Err(AudioError::BadSampleRate(sample_rate));
    }
    let len = (IR_SECONDS * sample_rate as f64).round() as usize;
    let channel = |stream: u64| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        let noise = (0..len).map(|n| rng.random_range(-1.0..1.0) * envelope(n, len)).collect();
        unit_energy(noise)
    };
    Ok(ImpulseResponse {
        sample_rate,
        left: channel(0),
        right: channel(1),
    })
}
