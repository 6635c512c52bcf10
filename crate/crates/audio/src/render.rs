use std::time::Duration;

use sonoterrain_core::region::PlaybackPlan;
use sonoterrain_core::sonify::{AudioParams, Sonifier};

use crate::convolve::convolve_fft;
use crate::ir::ImpulseResponse;
use crate::synth::{equal_power_pan, render_mono};
use crate::{AudioError, RenderedAudio};

/// Nearest frame to a time offset, computed in integers.
pub fn frame_of(t: Duration, sample_rate: u32) -> usize {
    let num = t.as_nanos() * sample_rate as u128;
    ((num + 500_000_000) / 1_000_000_000) as usize
}

/// Renders tones against one impulse response. `level` scales every tone.
#[derive(Debug, Clone)]
pub struct Renderer {
    ir: ImpulseResponse,
    level: f64,
}

impl Renderer {
    pub fn new(ir: ImpulseResponse) -> Self {
        Self { ir, level: 1.0 }
    }

    pub fn with_level(mut self, level: f64) -> Self {
        self.level = level;
        self
    }

    pub fn sample_rate(&self) -> u32 {
        self.ir.sample_rate
    }

    pub fn ir(&self) -> &ImpulseResponse {
        &self.ir
    }

    pub fn mixer(&self) -> Mixer<'_> {
        Mixer {
            renderer: self,
            dry: [Vec::new(), Vec::new()],
            send: [Vec::new(), Vec::new()],
        }
    }

    pub fn render_tone(&self, params: &AudioParams) -> Result<RenderedAudio, AudioError> {
        let mut mixer = self.mixer();
        mixer.add_at_frame(0, params)?;
        Ok(mixer.finish())
    }

    pub fn render_plan_stems(&self, plan: &PlaybackPlan, sonifier: &Sonifier) -> Result<Stems, AudioError> {
        let mut mixer = self.mixer();
        for entry in &plan.entries {
            let params = sonifier.params_for(&entry.sample, entry.dur.as_secs_f64())?;
            mixer.add(entry.start, &params)?;
        }
        Ok(mixer.stems())
    }

    pub fn render_plan(&self, plan: &PlaybackPlan, sonifier: &Sonifier) -> Result<RenderedAudio, AudioError> {
        Ok(self.render_plan_stems(plan, sonifier)?.mix())
    }
}

/// Accumulates tones on a dry bus and a reverb send bus.
#[derive(Debug, Clone)]
pub struct Mixer<'a> {
    renderer: &'a Renderer,
    dry: [Vec<f64>; 2],
    send: [Vec<f64>; 2],
}

fn add_into(bus: &mut Vec<f64>, at: usize, signal: &[f64], gain: f64) {
    if gain == 0.0 || signal.is_empty() {
        return;
    }
    if bus.len() < at + signal.len() {
        bus.resize(at + signal.len(), 0.0);
    }
    for (b, s) in bus[at..].iter_mut().zip(signal) {
        *b += s * gain;
    }
}

impl Mixer<'_> {
    pub fn add(&mut self, start: Duration, params: &AudioParams) -> Result<(), AudioError> {
        self.add_at_frame(frame_of(start, self.renderer.sample_rate()), params)
    }

    pub fn add_at_frame(&mut self, start: usize, params: &AudioParams) -> Result<(), AudioError> {
        if !params.is_valid() {
            return Err(AudioError::InvalidParams(format!("{params:?}")));
        }
        let sr = self.renderer.sample_rate();
        let voice = render_mono(params, sr);
        let (l, r) = equal_power_pan(params.pan);
        let level = self.renderer.level;
        let dry = (1.0 - params.wet) * level;
        let wet = params.wet * level;
        let predelay = (params.predelay_ms * sr as f64 / 1000.0).round() as usize;
        add_into(&mut self.dry[0], start, &voice, dry * l);
        add_into(&mut self.dry[1], start, &voice, dry * r);
        add_into(&mut self.send[0], start + predelay, &voice, wet * l);
        add_into(&mut self.send[1], start + predelay, &voice, wet * r);
        Ok(())
    }

    /// Convolve the send bus with the impulse response and hand back both buses.
    pub fn stems(self) -> Stems {
        let ir = &self.renderer.ir;
        let [send_l, send_r] = self.send;
        let [mut dry_l, mut dry_r] = self.dry;
        let frames = dry_l.len().max(dry_r.len());
        dry_l.resize(frames, 0.0);
        dry_r.resize(frames, 0.0);
        Stems {
            sample_rate: ir.sample_rate,
            dry: [dry_l, dry_r],
            wet: [convolve_fft(&send_l, &ir.left), convolve_fft(&send_r, &ir.right)],
        }
    }

    pub fn finish(self) -> RenderedAudio {
        self.stems().mix()
    }
}

/// Unlimited dry and wet buses, for analysis or final mixing.
#[derive(Debug, Clone, PartialEq)]
pub struct Stems {
    pub sample_rate: u32,
    pub dry: [Vec<f64>; 2],
    pub wet: [Vec<f64>; 2],
}

impl Stems {
    /// Frames up to and including the last non-silent dry frame.
    pub fn dry_span_frames(&self) -> usize {
        let last = |ch: &[f64]| ch.iter().rposition(|&s| s != 0.0).map_or(0, |i| i + 1);
        last(&self.dry[0]).max(last(&self.dry[1]))
    }

    /// Sum the buses and scale the whole buffer down if it would clip.
    pub fn mix(&self) -> RenderedAudio {
        let frames = [&self.dry[0], &self.dry[1], &self.wet[0], &self.wet[1]]
            .iter()
            .map(|v| v.len())
            .max()
            .unwrap_or(0);
        let at = |v: &[f64], n: usize| v.get(n).copied().unwrap_or(0.0);
        let sum = |ch: usize| -> Vec<f64> {
            (0..frames)
                .map(|n| at(&self.dry[ch], n) + at(&self.wet[ch], n))
                .collect()
        };
        let (left, right) = (sum(0), sum(1));
        let peak = left.iter().chain(&right).fold(0.0f64, |m, v| m.max(v.abs()));
        let scale = if peak > 1.0 { 1.0 / peak } else { 1.0 };
        let out = |ch: Vec<f64>| ch.into_iter().map(|s| (s * scale).clamp(-1.0, 1.0) as f32).collect();
        RenderedAudio {
            sample_rate: self.sample_rate,
            left: out(left),
            right: out(right),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_rounding() {
        assert_eq!(frame_of(Duration::from_millis(425), 48_000), 20_400);
        assert_eq!(frame_of(Duration::from_nanos(10_417), 48_000), 1);
        assert_eq!(frame_of(Duration::from_nanos(10_416), 48_000), 0);
    }
}
