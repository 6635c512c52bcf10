use std::time::Duration;

use serde::{Deserialize, Serialize};
use sonoterrain_audio::{frame_of, generate_impulse_response, AudioError, RenderedAudio, Renderer};
use sonoterrain_core::config::Config;
use sonoterrain_core::event::{AutoplayPhase, Event, Key, KeyMap};
use sonoterrain_core::{Engine, SurfaceDataset};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KeyPress {
    /// Engine key id or a physical key name such as `ArrowLeft`.
    pub key: String,
    pub at_s: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SessionScript {
    /// Built-in dataset name or CSV path; the command line may override it.
    #[serde(default)]
    pub dataset: Option<String>,
    #[serde(default)]
    pub seed: Option<u64>,
    pub keys: Vec<KeyPress>,
}

impl SessionScript {
    pub fn validate(&self) -> Result<(), String> {
        let mut last = 0.0;
        for (i, press) in self.keys.iter().enumerate() {
            if !press.at_s.is_finite() || press.at_s < 0.0 {
                return Err(format!("key {i}: at_s must be a non-negative number"));
            }
            if press.at_s < last {
                return Err(format!("key {i}: at_s {} goes back in time", press.at_s));
            }
            last = press.at_s;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum SessionError {
    #[error("script key {index} ({key:?}) is not bound to any engine key")]
    UnknownKey { index: usize, key: String },
    #[error("invalid script: {0}")]
    Script(String),
    #[error(transparent)]
    Audio(#[from] AudioError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranscriptRecord {
    pub seq: u64,
    pub t_s: f64,
    pub name: String,
    pub payload: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Transcript {
    pub records: Vec<TranscriptRecord>,
}

impl Transcript {
    pub fn to_jsonl(&self) -> String {
        self.records
            .iter()
            .map(|r| serde_json::to_string(r).expect("records always serialize") + "\n")
            .collect()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.records.iter().map(|r| r.name.as_str())
    }
}

pub struct SessionOutput {
    pub transcript: Transcript,
    pub audio: RenderedAudio,
    pub engine: Engine,
}

enum Step {
    Key(Key),
    Tick,
}

/// Replay `script` against `dataset`. Key times snap to audio frames; auto-play
/// ticks run on the same frame clock, after any key at the same frame.
pub fn run_script(
    script: &SessionScript,
    dataset: SurfaceDataset,
    config: &Config,
    seed: u64,
) -> Result<SessionOutput, SessionError> {
    script.validate().map_err(SessionError::Script)?;
    let keymap = KeyMap::with_overrides(&config.keys);
    let sr = config.render.sample_rate;
    let mut keys = Vec::with_capacity(script.keys.len());
    for (index, press) in script.keys.iter().enumerate() {
        let key = keymap.resolve(&press.key).map_err(|_| SessionError::UnknownKey {
            index,
            key: press.key.clone(),
        })?;
        keys.push((frame_of(Duration::from_secs_f64(press.at_s), sr), key));
    }

    let renderer = Renderer::new(generate_impulse_response(sr, seed)?).with_level(config.render.level);
    let mut mixer = renderer.mixer();
    let mut engine = Engine::new(dataset, config.clone());
    let tick_frames = frame_of(Duration::from_secs_f64(config.autoplay.interval_s), sr).max(1);
    let mut transcript = Transcript::default();
    let mut next_tick: Option<usize> = None;
    let mut pending = keys.into_iter().peekable();

    loop {
        let take_key = match (pending.peek(), next_tick) {
            (Some(&(k, _)), Some(t)) => k <= t,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => break,
        };
        let (frame, step) = if take_key {
            let (k, key) = pending.next().expect("peeked");
            (k, Step::Key(key))
        } else {
            (next_tick.expect("a tick is due"), Step::Tick)
        };
        let events = match step {
            Step::Key(key) => engine.press(key),
            Step::Tick => engine.tick(),
        };

        let restarted = events
            .iter()
            .any(|e| matches!(e, Event::AutoplayStateChanged { state: AutoplayPhase::Playing, .. }));
        next_tick = match (engine.is_autoplaying(), step) {
            (false, _) => None,
            (true, Step::Tick) => Some(frame + tick_frames),
            (true, Step::Key(_)) if restarted => Some(frame + tick_frames),
            (true, Step::Key(_)) => next_tick,
        };

        for event in events {
            for tone in engine.sonifier().tones_for_event(&event).expect("engine samples are normalized") {
                mixer.add_at_frame(frame + frame_of(tone.offset, sr), &tone.params)?;
            }
            let wire = serde_json::to_value(&event).expect("events always serialize");
            transcript.records.push(TranscriptRecord {
                seq: transcript.records.len() as u64,
                t_s: frame as f64 / sr as f64,
                name: event.name().as_str().to_string(),
                payload: wire["payload"].clone(),
            });
        }
    }

    Ok(SessionOutput {
        transcript,
        audio: mixer.finish(),
        engine,
    })
}
