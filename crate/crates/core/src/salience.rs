//! Jump-to-peak: statistical selection of the most salient rectangles and the J-key cycle.

use std::cmp::Ordering;
use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::data::{GridModel, GridPos, Rectangle};
use crate::event::{Event, Key, MoveCause, ToneCue};
use crate::nav::{current_focus, DisplayMode, Interaction, NavCursor, Surface};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SalienceError {
    #[error("grid has no non-empty rectangles")]
    NoRectangles,
    #[error("no peaks to jump to")]
    NoPeaks,
    #[error("jump to peak works in surface mode")]
    NotInSurfaceMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PeakSign {
    Positive,
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Peak {
    pub rect_index: usize,
    pub sign: PeakSign,
    pub x: f64,
    pub z: f64,
    pub avg_y: f64,
}

/// Selected peaks, positives (descending) before negatives (ascending), plus the jump cursor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeakSet {
    pub peaks: Vec<Peak>,
    pub cursor: usize,
}

impl PeakSet {
    pub fn len(&self) -> usize {
        self.peaks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.peaks.is_empty()
    }

    pub fn current(&self) -> Option<&Peak> {
        self.peaks.get(self.cursor)
    }

    pub fn rect_indices(&self) -> Vec<usize> {
        self.peaks.iter().map(|p| p.rect_index).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SalienceConfig {
    /// Candidates drawn from each end of the height ranking.
    pub candidate_count: usize,
    /// Peaks kept per sign.
    pub select_count: usize,
    /// Fraction of the avg_y range a candidate may sit from the mean and still count as unremarkable.
    pub threshold_fraction: f64,
}

impl Default for SalienceConfig {
    fn default() -> Self {
        Self {
            candidate_count: 20,
            select_count: 10,
            threshold_fraction: 0.2,
        }
    }
}

impl SalienceConfig {
    pub fn is_valid(&self) -> bool {
        self.candidate_count > 0
            && self.select_count > 0
            && self.threshold_fraction > 0.0
            && self.threshold_fraction < 1.0
    }
}

fn by_height(a: &Rectangle, b: &Rectangle) -> Ordering {
    a.avg_y.partial_cmp(&b.avg_y).unwrap_or(Ordering::Equal)
}

fn dedup_key(r: &Rectangle) -> (u64, u64, u64) {
    // + 0.0 folds -0.0 onto 0.0
    (
        (r.center_x + 0.0).to_bits(),
        (r.center_z + 0.0).to_bits(),
        (r.avg_y + 0.0).to_bits(),
    )
}

fn to_peak(r: &Rectangle, sign: PeakSign) -> Peak {
    Peak {
        rect_index: r.index,
        sign,
        x: r.center_x,
        z: r.center_z,
        avg_y: r.avg_y,
    }
}

/// Pick the most salient rectangles. Ties anywhere break toward the lower rectangle index.
pub fn detect_peaks(grid: &GridModel, config: &SalienceConfig) -> Result<PeakSet, SalienceError> {
    let rects: Vec<&Rectangle> = grid.non_empty().collect();
    if rects.is_empty() {
        return Err(SalienceError::NoRectangles);
    }

    // Candidate pools from both ends of the ranking. The bottom pool never
    // reuses a rectangle already drawn into the top pool.
    let mut descending = rects.clone();
    descending.sort_by(|a, b| by_height(b, a).then(a.index.cmp(&b.index)));
    let top: Vec<&Rectangle> = descending.iter().take(config.candidate_count).copied().collect();
    let in_top: HashSet<usize> = top.iter().map(|r| r.index).collect();

    let mut ascending = rects.clone();
    ascending.sort_by(|a, b| by_height(a, b).then(a.index.cmp(&b.index)));
    let bottom: Vec<&Rectangle> = ascending
        .iter()
        .filter(|r| !in_top.contains(&r.index))
        .take(config.candidate_count)
        .copied()
        .collect();

    let mut seen = HashSet::new();
    let top: Vec<&Rectangle> = top.into_iter().filter(|r| seen.insert(dedup_key(r))).collect();
    let bottom: Vec<&Rectangle> = bottom.into_iter().filter(|r| seen.insert(dedup_key(r))).collect();

    let n = rects.len() as f64;
    let mean = rects.iter().map(|r| r.avg_y).sum::<f64>() / n;
    let min = rects.iter().map(|r| r.avg_y).fold(f64::INFINITY, f64::min);
    let max = rects.iter().map(|r| r.avg_y).fold(f64::NEG_INFINITY, f64::max);
    let threshold = (max - min) * config.threshold_fraction;
    let within = |r: &&Rectangle| (r.avg_y - mean).abs() <= threshold;

    let top_all_within = top.iter().all(within);
    let bottom_all_within = bottom.iter().all(within);
    let (keep_top, keep_bottom) = if bottom_all_within && !top_all_within {
        (true, false)
    } else if top_all_within && !bottom_all_within {
        (false, true)
    } else {
        (true, true)
    };

    let mut peaks = Vec::new();
    if keep_top {
        peaks.extend(
            top.iter()
                .take(config.select_count)
                .map(|r| to_peak(r, PeakSign::Positive)),
        );
    }
    if keep_bottom {
        peaks.extend(
            bottom
                .iter()
                .take(config.select_count)
                .map(|r| to_peak(r, PeakSign::Negative)),
        );
    }
    Ok(PeakSet { peaks, cursor: 0 })
}

fn peak_pos(peak: &Peak, grid: &GridModel) -> GridPos {
    grid.pos_of(peak.rect_index)
}

fn sign_word(sign: PeakSign) -> &'static str {
    match sign {
        PeakSign::Positive => "peak",
        PeakSign::Negative => "trough",
    }
}

fn arrive(cursor: &NavCursor, peaks: &PeakSet, surface: &Surface, prefix: &str) -> Vec<Event> {
    let peak = peaks.current().expect("peak cursor stays in range");
    let focus = current_focus(cursor, surface).expect("peaks are never empty rectangles");
    vec![
        Event::FocusMoved {
            focus,
            cause: MoveCause::Jump,
            cue: Some(ToneCue::Peak(peak.sign)),
        },
        Event::announce(format!(
            "{prefix}{} {} of {}. Row {}, column {}.",
            capitalize(sign_word(peak.sign)),
            peaks.cursor + 1,
            peaks.len(),
            cursor.grid_pos.row + 1,
            cursor.grid_pos.col + 1,
        )),
    ]
}

fn capitalize(s: &str) -> String {
    let mut c = s.chars();
    c.next()
        .map(|f| f.to_uppercase().chain(c).collect())
        .unwrap_or_default()
}

/// Advance the jump cycle. `J` enters jump mode or moves to the next peak; `Escape`
/// leaves jump mode and restores the saved position. Other keys leave everything unchanged.
pub fn jump_step(
    cursor: &NavCursor,
    peaks: Option<&PeakSet>,
    key: Key,
    surface: &Surface,
    config: &SalienceConfig,
) -> Result<(NavCursor, Option<PeakSet>, Vec<Event>), SalienceError> {
    let in_jump = cursor.interaction == Interaction::Jump;
    match key {
        Key::Jump if cursor.mode != DisplayMode::Surface => Err(SalienceError::NotInSurfaceMode),
        Key::Jump => match peaks.filter(|_| in_jump) {
            None => {
                let mut set = match detect_peaks(&surface.grid, config) {
                    Err(SalienceError::NoRectangles) => return Err(SalienceError::NoPeaks),
                    other => other?,
                };
                if set.is_empty() {
                    return Err(SalienceError::NoPeaks);
                }
                set.cursor = 0;
                let mut next = *cursor;
                next.saved_pos = Some(cursor.grid_pos);
                next.interaction = Interaction::Jump;
                next.place_on_rect(peak_pos(&set.peaks[0], &surface.grid));
                let events = arrive(&next, &set, surface, "Jump mode. ");
                Ok((next, Some(set), events))
            }
            Some(current) => {
                let mut set = current.clone();
                set.cursor = (set.cursor + 1) % set.len();
                let mut next = *cursor;
                next.place_on_rect(peak_pos(&set.peaks[set.cursor], &surface.grid));
                let events = arrive(&next, &set, surface, "");
                Ok((next, Some(set), events))
            }
        },
        Key::Escape if in_jump => {
            let mut next = *cursor;
            let saved = cursor.saved_pos.expect("jump mode always saves a position");
            next.place_on_rect(saved);
            next.interaction = Interaction::Idle;
            next.saved_pos = None;
            let focus = current_focus(&next, surface).expect("saved positions are non-empty");
            let events = vec![
                Event::FocusMoved {
                    focus,
                    cause: MoveCause::Restore,
                    cue: Some(ToneCue::Data),
                },
                Event::announce(format!(
                    "Left jump mode. Row {}, column {}.",
                    saved.row + 1,
                    saved.col + 1
                )),
            ];
            Ok((next, None, events))
        }
        _ => Ok((*cursor, peaks.cloned(), Vec::new())),
    }
}
