//! Drag-select regions, the stored buffer, and its sequential/aggregated playback.

use std::cmp::Ordering;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::data::GridPos;
use crate::event::{Event, Key};
use crate::nav::{DisplayMode, FocusSample, NavCursor, Surface};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RegionError {
    #[error("no selection anchor; press D to start selecting")]
    ConfirmWithoutAnchor,
    #[error("buffer is empty")]
    EmptyBuffer,
    #[error("no buffer stored")]
    NoBufferStored,
}

/// Inclusive cell bounds of a region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub row_min: usize,
    pub row_max: usize,
    pub col_min: usize,
    pub col_max: usize,
}

impl Bounds {
    pub fn spanning(a: GridPos, b: GridPos) -> Self {
        Self {
            row_min: a.row.min(b.row),
            row_max: a.row.max(b.row),
            col_min: a.col.min(b.col),
            col_max: a.col.max(b.col),
        }
    }

    pub fn contains(&self, cell: GridPos) -> bool {
        (self.row_min..=self.row_max).contains(&cell.row)
            && (self.col_min..=self.col_max).contains(&cell.col)
    }

    /// Extent along X, in cells.
    pub fn width(&self) -> usize {
        self.col_max - self.col_min + 1
    }

    /// Extent along Z, in cells.
    pub fn depth(&self) -> usize {
        self.row_max - self.row_min + 1
    }

    pub fn center(&self) -> GridPos {
        GridPos::new(
            (self.row_min + self.row_max) / 2,
            (self.col_min + self.col_max) / 2,
        )
    }

    pub fn cells(&self) -> impl Iterator<Item = GridPos> + '_ {
        (self.row_min..=self.row_max)
            .flat_map(move |r| (self.col_min..=self.col_max).map(move |c| GridPos::new(r, c)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlaybackMode {
    Sequential,
    Aggregated,
}

/// A saved region. Items are value copies, ordered front-to-back then left-to-right.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionBuffer {
    pub bounds: Bounds,
    pub items: Vec<FocusSample>,
    pub playback_mode: PlaybackMode,
    /// G presses since the buffer was stored.
    pub g_presses: u32,
}

impl RegionBuffer {
    pub fn new(bounds: Bounds, items: Vec<FocusSample>) -> Self {
        Self {
            bounds,
            items: sequence_order(&items),
            playback_mode: PlaybackMode::Sequential,
            g_presses: 0,
        }
    }

    /// Collect every non-empty rectangle (surface mode) or every point (point mode) inside `bounds`.
    pub fn capture(bounds: Bounds, mode: DisplayMode, surface: &Surface) -> Self {
        let items = match mode {
            DisplayMode::Surface => bounds
                .cells()
                .filter_map(|cell| surface.rectangle_sample(cell).ok())
                .collect(),
            DisplayMode::Point => bounds
                .cells()
                .flat_map(|cell| surface.grid.rect(cell).member_indices.iter())
                .map(|&i| surface.point_sample(i))
                .collect(),
        };
        Self::new(bounds, items)
    }

    /// JSON handed to external consumers (assistant context, tests).
    pub fn export_json(&self) -> serde_json::Value {
        serde_json::json!({
            "bounds": self.bounds,
            "items": self.items,
            "mode": self.playback_mode,
        })
    }
}

pub fn aggregate_mean(buffer: &RegionBuffer) -> Result<f64, RegionError> {
    if buffer.items.is_empty() {
        return Err(RegionError::EmptyBuffer);
    }
    let sum: f64 = buffer.items.iter().map(|s| s.y).sum();
    Ok(sum / buffer.items.len() as f64)
}

fn front_to_back(a: &FocusSample, b: &FocusSample) -> Ordering {
    a.z.partial_cmp(&b.z)
        .unwrap_or(Ordering::Equal)
        .then(a.x.partial_cmp(&b.x).unwrap_or(Ordering::Equal))
        .then(a.index.cmp(&b.index))
}

/// Ascending Z, then ascending X, then original index.
pub fn sequence_order(items: &[FocusSample]) -> Vec<FocusSample> {
    let mut ordered = items.to_vec();
    ordered.sort_by(front_to_back);
    ordered
}

/// Sequential and aggregated timing. Integer milliseconds keep gaps exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct PlaybackTiming {
    pub item_ms: u64,
    pub gap_ms: u64,
    pub aggregate_ms: u64,
}

impl Default for PlaybackTiming {
    fn default() -> Self {
        Self {
            item_ms: 300,
            gap_ms: 125,
            aggregate_ms: 1000,
        }
    }
}

mod secs {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        let v = f64::deserialize(d)?;
        Duration::try_from_secs_f64(v).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanEntry {
    /// The item, or for aggregated plans the buffer centroid carrying the mean height.
    pub sample: FocusSample,
    #[serde(rename = "start_s", with = "secs")]
    pub start: Duration,
    #[serde(rename = "dur_s", with = "secs")]
    pub dur: Duration,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlaybackPlan {
    pub mode: PlaybackMode,
    pub entries: Vec<PlanEntry>,
}

impl PlaybackPlan {
    pub fn empty() -> Self {
        Self {
            mode: PlaybackMode::Sequential,
            entries: Vec::new(),
        }
    }

    /// From the first start to the end of the last entry.
    pub fn span(&self) -> Duration {
        self.entries
            .iter()
            .map(|e| e.start + e.dur)
            .max()
            .unwrap_or_default()
    }
}

fn centroid(buffer: &RegionBuffer, mean_y: f64) -> FocusSample {
    let n = buffer.items.len() as f64;
    let mean = |f: fn(&FocusSample) -> f64| buffer.items.iter().map(f).sum::<f64>() / n;
    let first = buffer.items[0];
    FocusSample {
        x: mean(|s| s.x),
        y: mean_y,
        z: mean(|s| s.z),
        x_norm: mean(|s| s.x_norm),
        y_norm: mean(|s| s.y_norm),
        z_norm: mean(|s| s.z_norm),
        kind: first.kind,
        index: first.index,
        cell: buffer.bounds.center(),
    }
}

/// Register one G press and build the matching plan: odd presses play
/// sequentially, even presses play the mean.
pub fn playback_plan(
    buffer: Option<&RegionBuffer>,
    timing: &PlaybackTiming,
) -> Result<(RegionBuffer, PlaybackPlan), RegionError> {
    let buffer = buffer.ok_or(RegionError::NoBufferStored)?;
    if buffer.items.is_empty() {
        return Err(RegionError::EmptyBuffer);
    }
    let mut next = buffer.clone();
    next.g_presses += 1;
    next.playback_mode = if next.g_presses % 2 == 1 {
        PlaybackMode::Sequential
    } else {
        PlaybackMode::Aggregated
    };

    let plan = match next.playback_mode {
        PlaybackMode::Sequential => {
            let item = Duration::from_millis(timing.item_ms);
            let stride = Duration::from_millis(timing.item_ms + timing.gap_ms);
            PlaybackPlan {
                mode: PlaybackMode::Sequential,
                entries: sequence_order(&next.items)
                    .into_iter()
                    .enumerate()
                    .map(|(k, sample)| PlanEntry {
                        sample,
                        start: stride * k as u32,
                        dur: item,
                    })
                    .collect(),
            }
        }
        PlaybackMode::Aggregated => {
            let mean = aggregate_mean(&next)?;
            PlaybackPlan {
                mode: PlaybackMode::Aggregated,
                entries: vec![PlanEntry {
                    sample: centroid(&next, mean),
                    start: Duration::ZERO,
                    dur: Duration::from_millis(timing.aggregate_ms),
                }],
            }
        }
    };
    Ok((next, plan))
}

/// How a selection gets its anchor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectionFlow {
    /// D anchors at the cursor right away.
    #[default]
    AnchorOnSelect,
    /// D enters selection mode, the first Enter anchors, the second confirms.
    AnchorOnEnter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SelectionPhase {
    Inactive,
    /// Waiting for Enter to anchor (only in [`SelectionFlow::AnchorOnEnter`]).
    Armed,
    Anchored,
    Expanding,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectionState {
    pub phase: SelectionPhase,
    pub anchor: Option<GridPos>,
    pub corner: Option<GridPos>,
}

impl Default for SelectionState {
    fn default() -> Self {
        Self {
            phase: SelectionPhase::Inactive,
            anchor: None,
            corner: None,
        }
    }
}

impl SelectionState {
    pub fn is_active(&self) -> bool {
        self.phase != SelectionPhase::Inactive
    }

    /// Region spanned so far, once anchored.
    pub fn bounds(&self) -> Option<Bounds> {
        Some(Bounds::spanning(self.anchor?, self.corner?))
    }

    fn anchored_at(cell: GridPos) -> Self {
        Self {
            phase: SelectionPhase::Anchored,
            anchor: Some(cell),
            corner: Some(cell),
        }
    }
}

/// Outcome of a selection key.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionStep {
    pub state: SelectionState,
    pub confirmed: Option<RegionBuffer>,
    pub events: Vec<Event>,
}

/// Advance the selection sub-machine. `cursor` is the position after any
/// movement the key caused.
pub fn selection_step(
    sel: &SelectionState,
    cursor: &NavCursor,
    key: Key,
    flow: SelectionFlow,
    surface: &Surface,
) -> Result<SelectionStep, RegionError> {
    let here = cursor.grid_pos;
    let unchanged = || SelectionStep {
        state: *sel,
        confirmed: None,
        events: Vec::new(),
    };
    let step = match (key, sel.phase) {
        (Key::Select, _) => match flow {
            SelectionFlow::AnchorOnSelect => SelectionStep {
                state: SelectionState::anchored_at(here),
                confirmed: None,
                events: vec![Event::announce(format!(
                    "Selecting. Anchored at row {}, column {}. Move to the opposite corner and press Enter.",
                    here.row + 1,
                    here.col + 1
                ))],
            },
            SelectionFlow::AnchorOnEnter => SelectionStep {
                state: SelectionState {
                    phase: SelectionPhase::Armed,
                    anchor: None,
                    corner: None,
                },
                confirmed: None,
                events: vec![Event::announce(
                    "Selection mode. Press Enter to anchor the first corner.",
                )],
            },
        },
        (Key::Enter, SelectionPhase::Inactive) => return Err(RegionError::ConfirmWithoutAnchor),
        (Key::Enter, SelectionPhase::Armed) => SelectionStep {
            state: SelectionState::anchored_at(here),
            confirmed: None,
            events: vec![Event::announce(format!(
                "Anchored at row {}, column {}.",
                here.row + 1,
                here.col + 1
            ))],
        },
        (Key::Enter, SelectionPhase::Anchored | SelectionPhase::Expanding) => {
            let anchor = sel.anchor.ok_or(RegionError::ConfirmWithoutAnchor)?;
            let bounds = Bounds::spanning(anchor, here);
            let buffer = RegionBuffer::capture(bounds, cursor.mode, surface);
            let events = vec![
                Event::DragSelectSelectionConfirmed {
                    bounds,
                    width: bounds.width(),
                    depth: bounds.depth(),
                    item_count: buffer.items.len(),
                },
                Event::announce(format!(
                    "Buffer saved: {} by {} region",
                    bounds.width(),
                    bounds.depth()
                )),
            ];
            SelectionStep {
                state: SelectionState::default(),
                confirmed: Some(buffer),
                events,
            }
        }
        (Key::Escape, phase) if phase != SelectionPhase::Inactive => SelectionStep {
            state: SelectionState::default(),
            confirmed: None,
            events: vec![Event::announce("Selection cancelled.")],
        },
        (k, SelectionPhase::Anchored | SelectionPhase::Expanding) if k.direction().is_some() => {
            let state = SelectionState {
                phase: SelectionPhase::Expanding,
                anchor: sel.anchor,
                corner: Some(here),
            };
            let b = state.bounds().expect("anchored selections have bounds");
            SelectionStep {
                state,
                confirmed: None,
                events: vec![Event::announce(format!(
                    "Selecting {} by {}.",
                    b.width(),
                    b.depth()
                ))],
            }
        }
        _ => unchanged(),
    };
    Ok(step)
}

/// Tracks whether the focus is inside the stored region and announces crossings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BoundaryWatcher {
    pub inside: bool,
}

impl BoundaryWatcher {
    pub fn new(inside: bool) -> Self {
        Self { inside }
    }

    pub fn observe(&mut self, buffer: &RegionBuffer, focus: &FocusSample) -> Option<Event> {
        let now = buffer.bounds.contains(focus.cell);
        let was = std::mem::replace(&mut self.inside, now);
        match (was, now) {
            (false, true) => Some(Event::announce("Entered selection")),
            (true, false) => Some(Event::announce("Left selection")),
            _ => None,
        }
    }
}
