//! Mapping from focus samples and cue requests to synthesis parameters.
//!
//! X drives stereo pan, Y drives pitch (and, by default, timbre), Z drives a
//! combined depth cue of gain, reverb wet mix, pre-delay and lowpass damping.

use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::event::{Event, SoundRequest, ToneCue};
use crate::nav::FocusSample;
use crate::salience::PeakSign;

#[derive(Debug, Error, PartialEq)]
pub enum SonifyError {
    #[error("{what} = {value} is outside [0, 1]")]
    OutOfRange { what: &'static str, value: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Waveform {
    Sine,
    Triangle,
    Square,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AudioParams {
    pub freq_hz: f64,
    pub waveform: Waveform,
    /// −1 hard left, +1 hard right.
    pub pan: f64,
    pub gain: f64,
    /// Reverb send fraction; the dry path plays at `1 − wet`.
    pub wet: f64,
    pub predelay_ms: f64,
    pub lowpass_hz: f64,
    pub dur_s: f64,
    /// End frequency of a linear sweep, if any.
    pub sweep_to_hz: Option<f64>,
}

impl AudioParams {
    /// Ranges every tone must respect, data tone or cue.
    pub fn is_valid(&self) -> bool {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        positive(self.freq_hz)
            && self.sweep_to_hz.is_none_or(positive)
            && (-1.0..=1.0).contains(&self.pan)
            && (0.0..=1.0).contains(&self.gain)
            && (0.0..=1.0).contains(&self.wet)
            && self.predelay_ms.is_finite()
            && self.predelay_ms >= 0.0
            && positive(self.lowpass_hz)
            && positive(self.dur_s)
    }
}

/// Which normalized coordinate picks the waveform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WaveformDriver {
    #[default]
    Height,
    XPosition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CueKind {
    Reference,
    PeakPositive,
    PeakNegative,
    Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SonifierConfig {
    pub min_hz: f64,
    pub max_hz: f64,
    pub gain_near: f64,
    pub gain_far: f64,
    pub wet_near: f64,
    pub wet_far: f64,
    pub predelay_near_ms: f64,
    pub predelay_far_ms: f64,
    pub lowpass_near_hz: f64,
    pub lowpass_far_hz: f64,
    pub waveform_driver: WaveformDriver,
    /// Length of the tone played when the focus moves or is replayed.
    pub focus_tone_s: f64,
    pub reference_hz: f64,
    pub reference_s: f64,
    pub peak_positive_hz: f64,
    pub peak_negative_hz: f64,
    pub peak_sweep_ratio: f64,
    pub peak_sweep_s: f64,
    pub boundary_hz: f64,
    pub boundary_s: f64,
    pub boundary_gain: f64,
}

impl Default for SonifierConfig {
    fn default() -> Self {
        Self {
            min_hz: 200.0,
            max_hz: 800.0,
            gain_near: 1.0,
            gain_far: 0.3,
            wet_near: 0.20,
            wet_far: 0.95,
            predelay_near_ms: 10.0,
            predelay_far_ms: 90.0,
            lowpass_near_hz: 6500.0,
            lowpass_far_hz: 2000.0,
            waveform_driver: WaveformDriver::Height,
            focus_tone_s: 0.3,
            reference_hz: 300.0,
            reference_s: 0.5,
            peak_positive_hz: 800.0,
            peak_negative_hz: 400.0,
            peak_sweep_ratio: 1.5,
            peak_sweep_s: 0.25,
            boundary_hz: 150.0,
            boundary_s: 0.1,
            boundary_gain: 0.5,
        }
    }
}

/// Gain, wet mix, pre-delay and lowpass cutoff for one depth.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DepthCue {
    pub gain: f64,
    pub wet: f64,
    pub predelay_ms: f64,
    pub lowpass_hz: f64,
}

/// A tone and when it starts, relative to whatever triggered it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScheduledTone {
    pub offset: Duration,
    pub params: AudioParams,
}

fn unit(what: &'static str, value: f64) -> Result<f64, SonifyError> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(SonifyError::OutOfRange { what, value })
    }
}

// Weighted form: exact at both ends.
fn lerp(near: f64, far: f64, t: f64) -> f64 {
    near * (1.0 - t) + far * t
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Sonifier {
    pub config: SonifierConfig,
}

impl Sonifier {
    pub fn new(config: SonifierConfig) -> Self {
        Self { config }
    }

    /// Exponential in frequency, so equal height steps are equal pitch intervals.
    pub fn map_pitch(&self, y_norm: f64) -> Result<f64, SonifyError> {
        let t = unit("y_norm", y_norm)?;
        let c = &self.config;
        Ok(c.min_hz * (c.max_hz / c.min_hz).powf(t))
    }

    pub fn map_pan(&self, x_norm: f64) -> Result<f64, SonifyError> {
        Ok(2.0 * unit("x_norm", x_norm)? - 1.0)
    }

    pub fn map_depth(&self, z_norm: f64) -> Result<DepthCue, SonifyError> {
        let t = unit("z_norm", z_norm)?;
        let c = &self.config;
        Ok(DepthCue {
            gain: lerp(c.gain_near, c.gain_far, t),
            wet: lerp(c.wet_near, c.wet_far, t),
            predelay_ms: lerp(c.predelay_near_ms, c.predelay_far_ms, t),
            lowpass_hz: lerp(c.lowpass_near_hz, c.lowpass_far_hz, t),
        })
    }

    /// Thirds of [0, 1]: sine below 1/3, triangle below 2/3, square above.
    pub fn waveform_for(&self, driver_value: f64) -> Waveform {
        if driver_value < 1.0 / 3.0 {
            Waveform::Sine
        } else if driver_value < 2.0 / 3.0 {
            Waveform::Triangle
        } else {
            Waveform::Square
        }
    }

    pub fn params_for(&self, sample: &FocusSample, dur_s: f64) -> Result<AudioParams, SonifyError> {
        let freq_hz = self.map_pitch(sample.y_norm)?;
        let pan = self.map_pan(sample.x_norm)?;
        let depth = self.map_depth(sample.z_norm)?;
        let driver = match self.config.waveform_driver {
            WaveformDriver::Height => sample.y_norm,
            WaveformDriver::XPosition => sample.x_norm,
        };
        Ok(AudioParams {
            freq_hz,
            waveform: self.waveform_for(driver),
            pan,
            gain: depth.gain,
            wet: depth.wet,
            predelay_ms: depth.predelay_ms,
            lowpass_hz: depth.lowpass_hz,
            dur_s,
            sweep_to_hz: None,
        })
    }

    pub fn special_cue(&self, kind: CueKind) -> AudioParams {
        let c = &self.config;
        let near = AudioParams {
            freq_hz: c.reference_hz,
            waveform: Waveform::Sine,
            pan: 0.0,
            gain: c.gain_near,
            wet: c.wet_near,
            predelay_ms: c.predelay_near_ms,
            lowpass_hz: c.lowpass_near_hz,
            dur_s: c.reference_s,
            sweep_to_hz: None,
        };
        let sweep = |base: f64| AudioParams {
            freq_hz: base,
            sweep_to_hz: Some(base * c.peak_sweep_ratio),
            dur_s: c.peak_sweep_s,
            ..near
        };
        match kind {
            CueKind::Reference => near,
            CueKind::PeakPositive => sweep(c.peak_positive_hz),
            CueKind::PeakNegative => sweep(c.peak_negative_hz),
            CueKind::Boundary => AudioParams {
                freq_hz: c.boundary_hz,
                waveform: Waveform::Square,
                gain: c.boundary_gain,
                dur_s: c.boundary_s,
                ..near
            },
        }
    }

    /// Tones requested by an event, offsets relative to the event time.
    pub fn tones_for_event(&self, event: &Event) -> Result<Vec<ScheduledTone>, SonifyError> {
        let now = |params| {
            vec![ScheduledTone {
                offset: Duration::ZERO,
                params,
            }]
        };
        let tones = match event {
            Event::FocusMoved { focus, cue, .. } => match cue {
                Some(ToneCue::Data) => now(self.params_for(focus, self.config.focus_tone_s)?),
                Some(ToneCue::Peak(PeakSign::Positive)) => now(self.special_cue(CueKind::PeakPositive)),
                Some(ToneCue::Peak(PeakSign::Negative)) => now(self.special_cue(CueKind::PeakNegative)),
                None => Vec::new(),
            },
            Event::BoundaryHit { .. } => now(self.special_cue(CueKind::Boundary)),
            Event::Announce { sound: Some(sound), .. } => match sound {
                SoundRequest::Reference => now(self.special_cue(CueKind::Reference)),
                SoundRequest::Replay { sample } => now(self.params_for(sample, self.config.focus_tone_s)?),
                SoundRequest::Playback { plan } => plan
                    .entries
                    .iter()
                    .map(|e| {
                        Ok(ScheduledTone {
                            offset: e.start,
                            params: self.params_for(&e.sample, e.dur.as_secs_f64())?,
                        })
                    })
                    .collect::<Result<_, SonifyError>>()?,
            },
            _ => Vec::new(),
        };
        Ok(tones)
    }
}
