//! Random key storms against the engine, checking the event protocol.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sonoterrain_core::event::{EventName, Key};
use sonoterrain_core::{Config, Engine, SurfaceDataset};

/// Drive `presses` random keys (with auto-play ticks mixed in) through a fresh
/// engine and return the first protocol violation, if any.
pub fn storm(dataset: SurfaceDataset, config: Config, seed: u64, presses: usize) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut engine = Engine::new(dataset, config);
    let names: Vec<&str> = EventName::ALL.iter().map(|n| n.as_str()).collect();
    for step in 0..presses {
        let events = if rng.random_range(0..8) == 0 {
            engine.tick()
        } else {
            let key = Key::ALL[rng.random_range(0..Key::ALL.len())];
            let before = engine.state().clone();
            let events = engine.press(key);
            if matches!(key, Key::Replay | Key::Reference) && engine.state() != &before {
                return Err(format!("step {step}: '{}' changed engine state", key.id()));
            }
            events
        };
        for ev in &events {
            let wire = serde_json::to_value(ev).map_err(|e| e.to_string())?;
            let name = wire["name"].as_str().unwrap_or_default();
            if !names.contains(&name) || name != ev.name().as_str() {
                return Err(format!("step {step}: event name {name:?} outside the enumeration"));
            }
        }
        let cursor = engine.cursor();
        if !cursor.is_valid(engine.surface()) {
            return Err(format!("step {step}: invalid cursor {cursor:?}"));
        }
        if engine.state().highlight.focus != Some(cursor.focus_index(engine.surface())) {
            return Err(format!("step {step}: highlight out of sync with cursor"));
        }
    }
    Ok(())
}
