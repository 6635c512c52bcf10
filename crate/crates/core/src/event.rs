//! Key identifiers and the closed set of cross-layer events.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::autoplay::Perspective;
use crate::data::GridPos;
use crate::nav::{DisplayMode, FocusSample};
use crate::region::{Bounds, PlaybackPlan};
use crate::salience::PeakSign;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown key {0:?}")]
pub struct UnknownKey(pub String);

/// Engine-level key identifiers. Physical keys are mapped onto these by a [`KeyMap`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Key {
    Left,
    Right,
    Up,
    Down,
    /// `2`: toggle surface / point mode.
    ToggleMode,
    /// `0`: reference tone at the origin.
    Reference,
    /// `.`: replay the current focus.
    Replay,
    /// `J`: jump to the next salient peak.
    Jump,
    /// `D`: drag-select.
    Select,
    /// `G`: play the stored buffer.
    Playback,
    /// `P`: start, switch perspective of, or resume auto-play.
    AutoPlay,
    Enter,
    Escape,
}

impl Key {
    pub const ALL: [Key; 13] = [
        Key::Left,
        Key::Right,
        Key::Up,
        Key::Down,
        Key::ToggleMode,
        Key::Reference,
        Key::Replay,
        Key::Jump,
        Key::Select,
        Key::Playback,
        Key::AutoPlay,
        Key::Enter,
        Key::Escape,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Key::Left => "left",
            Key::Right => "right",
            Key::Up => "up",
            Key::Down => "down",
            Key::ToggleMode => "2",
            Key::Reference => "0",
            Key::Replay => ".",
            Key::Jump => "J",
            Key::Select => "D",
            Key::Playback => "G",
            Key::AutoPlay => "P",
            Key::Enter => "Enter",
            Key::Escape => "Escape",
        }
    }

    pub fn direction(self) -> Option<Direction> {
        match self {
            Key::Left => Some(Direction::Left),
            Key::Right => Some(Direction::Right),
            Key::Up => Some(Direction::Up),
            Key::Down => Some(Direction::Down),
            _ => None,
        }
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Key {
    type Err = UnknownKey;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Key::ALL
            .into_iter()
            .find(|k| k.id() == s)
            .ok_or_else(|| UnknownKey(s.to_string()))
    }
}

impl Serialize for Key {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.id())
    }
}

impl<'de> Deserialize<'de> for Key {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Physical key names (browser `KeyboardEvent.key` style) to engine keys.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KeyMap(BTreeMap<String, Key>);

impl Default for KeyMap {
    fn default() -> Self {
        let pairs = [
            ("ArrowLeft", Key::Left),
            ("ArrowRight", Key::Right),
            ("ArrowUp", Key::Up),
            ("ArrowDown", Key::Down),
            ("j", Key::Jump),
            ("d", Key::Select),
            ("g", Key::Playback),
            ("p", Key::AutoPlay),
        ];
        let mut map: BTreeMap<String, Key> =
            pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        for key in Key::ALL {
            map.insert(key.id().to_string(), key);
        }
        Self(map)
    }
}

impl KeyMap {
    /// Add or replace bindings on top of the defaults.
    pub fn with_overrides(overrides: &BTreeMap<String, Key>) -> Self {
        let mut map = Self::default();
        map.0.extend(overrides.iter().map(|(k, v)| (k.clone(), *v)));
        map
    }

    pub fn resolve(&self, name: &str) -> Result<Key, UnknownKey> {
        self.0
            .get(name)
            .copied()
            .ok_or_else(|| UnknownKey(name.to_string()))
    }

    pub fn bindings(&self) -> impl Iterator<Item = (&str, Key)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Left,
    Right,
    Up,
    Down,
}

impl Direction {
    /// Row and column step. Up walks away from the listener (increasing Z).
    pub fn delta(self) -> (isize, isize) {
        match self {
            Direction::Left => (0, -1),
            Direction::Right => (0, 1),
            Direction::Up => (1, 0),
            Direction::Down => (-1, 0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EventName {
    DisplayModeChanged,
    DragSelectSelectionConfirmed,
    AutoplayStateChanged,
    FocusMoved,
    BoundaryHit,
    Announce,
}

impl EventName {
    pub const ALL: [EventName; 6] = [
        EventName::DisplayModeChanged,
        EventName::DragSelectSelectionConfirmed,
        EventName::AutoplayStateChanged,
        EventName::FocusMoved,
        EventName::BoundaryHit,
        EventName::Announce,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EventName::DisplayModeChanged => "display-mode-changed",
            EventName::DragSelectSelectionConfirmed => "drag-select-selection-confirmed",
            EventName::AutoplayStateChanged => "autoplay-state-changed",
            EventName::FocusMoved => "focus-moved",
            EventName::BoundaryHit => "boundary-hit",
            EventName::Announce => "announce",
        }
    }
}

impl fmt::Display for EventName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MoveCause {
    Navigate,
    ModeSwitch,
    Jump,
    Restore,
    Autoplay,
}

/// Which tone a focus change should sound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ToneCue {
    Data,
    Peak(PeakSign),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AutoplayPhase {
    Playing,
    Paused,
    Finished,
    Stopped,
}

/// Audio attached to an announcement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SoundRequest {
    Reference,
    Replay { sample: FocusSample },
    Playback { plan: PlaybackPlan },
}

/// A cross-layer event. The variant is the event name; serialized as
/// `{"name": "...", "payload": {...}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", content = "payload", rename_all = "kebab-case")]
pub enum Event {
    DisplayModeChanged {
        from: DisplayMode,
        to: DisplayMode,
    },
    DragSelectSelectionConfirmed {
        bounds: Bounds,
        width: usize,
        depth: usize,
        item_count: usize,
    },
    AutoplayStateChanged {
        state: AutoplayPhase,
        perspective: Perspective,
        next: usize,
        total: usize,
    },
    FocusMoved {
        focus: FocusSample,
        cause: MoveCause,
        cue: Option<ToneCue>,
    },
    BoundaryHit {
        direction: Direction,
        mode: DisplayMode,
        cell: GridPos,
    },
    Announce {
        text: String,
        sound: Option<SoundRequest>,
    },
}

impl Event {
    pub fn name(&self) -> EventName {
        match self {
            Event::DisplayModeChanged { .. } => EventName::DisplayModeChanged,
            Event::DragSelectSelectionConfirmed { .. } => EventName::DragSelectSelectionConfirmed,
            Event::AutoplayStateChanged { .. } => EventName::AutoplayStateChanged,
            Event::FocusMoved { .. } => EventName::FocusMoved,
            Event::BoundaryHit { .. } => EventName::BoundaryHit,
            Event::Announce { .. } => EventName::Announce,
        }
    }

    pub fn announce(text: impl Into<String>) -> Self {
        Event::Announce {
            text: text.into(),
            sound: None,
        }
    }
}
