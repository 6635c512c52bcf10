//! Cursor, focus and highlight state for two-tier keyboard navigation.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::data::{
    build_grid, compute_stats, normalize, Axis, DatasetStats, GridModel, GridPos, SurfaceDataset,
};
use crate::event::{Direction, Event, Key, MoveCause, SoundRequest, ToneCue};

pub const FOCUS_COLOR: &str = "magenta";
pub const FOCUS_SIZE_MULTIPLIER: f32 = 4.0;
pub const SELECTION_COLOR: &str = "white";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NavError {
    #[error("cursor sits on empty rectangle {0}")]
    EmptyRectangle(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DisplayMode {
    Surface,
    Point,
}

impl DisplayMode {
    pub fn toggled(self) -> Self {
        match self {
            DisplayMode::Surface => DisplayMode::Point,
            DisplayMode::Point => DisplayMode::Surface,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Interaction {
    Idle,
    Selecting,
    Jump,
    Autoplay,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FocusKind {
    Rectangle,
    Point,
}

/// The value under the cursor, raw and normalized.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FocusSample {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub x_norm: f64,
    pub y_norm: f64,
    pub z_norm: f64,
    pub kind: FocusKind,
    /// Rectangle index or point index, depending on `kind`.
    pub index: usize,
    /// Grid cell holding the focus.
    pub cell: GridPos,
}

impl FocusSample {
    pub fn from_raw(
        x: f64,
        y: f64,
        z: f64,
        kind: FocusKind,
        index: usize,
        cell: GridPos,
        stats: &DatasetStats,
    ) -> Self {
        Self {
            x,
            y,
            z,
            x_norm: normalize(x, Axis::X, stats),
            y_norm: normalize(y, Axis::Y, stats),
            z_norm: normalize(z, Axis::Z, stats),
            kind,
            index,
            cell,
        }
    }
}

/// A loaded dataset with everything navigation needs precomputed.
#[derive(Debug, Clone, PartialEq)]
pub struct Surface {
    pub dataset: SurfaceDataset,
    pub stats: DatasetStats,
    pub grid: GridModel,
    /// Points per row in point mode; equals the point count when the
    /// dataset is not laid out as a complete lattice.
    pub point_row_len: usize,
}

impl Surface {
    pub fn new(dataset: SurfaceDataset, rows: usize, cols: usize) -> Self {
        let stats = compute_stats(&dataset);
        let grid = build_grid(&dataset, rows, cols);
        let point_row_len = point_row_len(&dataset);
        Self {
            dataset,
            stats,
            grid,
            point_row_len,
        }
    }

    pub fn rectangle_sample(&self, pos: GridPos) -> Result<FocusSample, NavError> {
        let rect = self.grid.rect(pos);
        if rect.empty {
            return Err(NavError::EmptyRectangle(rect.index));
        }
        Ok(FocusSample::from_raw(
            rect.center_x,
            rect.avg_y,
            rect.center_z,
            FocusKind::Rectangle,
            rect.index,
            pos,
            &self.stats,
        ))
    }

    pub fn point_sample(&self, index: usize) -> FocusSample {
        let p = self.dataset.points()[index];
        let cell = self.grid.pos_of(self.grid.cell_of_point(index));
        FocusSample::from_raw(p.x, p.y, p.z, FocusKind::Point, index, cell, &self.stats)
    }
}

fn point_row_len(dataset: &SurfaceDataset) -> usize {
    let pts = dataset.points();
    let first_z = pts[0].z;
    let run = pts.iter().take_while(|p| p.z == first_z).count();
    if pts.len().is_multiple_of(run) {
        run
    } else {
        pts.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NavCursor {
    pub mode: DisplayMode,
    /// Current cell; in point mode, the cell holding the focused point.
    pub grid_pos: GridPos,
    pub point_index: usize,
    pub interaction: Interaction,
    /// Position to return to when jump mode is escaped. Set only in jump mode.
    pub saved_pos: Option<GridPos>,
}

impl NavCursor {
    /// Surface mode on the first non-empty rectangle.
    pub fn start(surface: &Surface) -> Self {
        let grid_pos = surface
            .grid
            .first_non_empty()
            .expect("a non-empty dataset always fills at least one rectangle");
        Self {
            mode: DisplayMode::Surface,
            grid_pos,
            point_index: surface.grid.rect(grid_pos).member_indices[0],
            interaction: Interaction::Idle,
            saved_pos: None,
        }
    }

    /// Rectangle index in surface mode, point index in point mode.
    pub fn focus_index(&self, surface: &Surface) -> usize {
        match self.mode {
            DisplayMode::Surface => surface.grid.index_of(self.grid_pos),
            DisplayMode::Point => self.point_index,
        }
    }

    pub fn is_valid(&self, surface: &Surface) -> bool {
        let in_bounds =
            surface.grid.contains(self.grid_pos) && self.point_index < surface.dataset.len();
        let on_data = match self.mode {
            DisplayMode::Surface => !surface.grid.is_empty_at(self.grid_pos),
            DisplayMode::Point => {
                surface.grid.cell_of_point(self.point_index) == surface.grid.index_of(self.grid_pos)
            }
        };
        in_bounds && on_data && (self.saved_pos.is_some() == (self.interaction == Interaction::Jump))
    }

    /// Put the cursor on rectangle `pos` in surface mode.
    pub fn place_on_rect(&mut self, pos: GridPos) {
        self.mode = DisplayMode::Surface;
        self.grid_pos = pos;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CursorStyle {
    Yellow,
    White,
}

/// What the visual layer should emphasize.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HighlightState {
    /// Drawn magenta at [`FOCUS_SIZE_MULTIPLIER`] size.
    pub focus: Option<usize>,
    /// Rectangle indices drawn white.
    pub selection: BTreeSet<usize>,
    pub cursor_style: CursorStyle,
}

impl Default for HighlightState {
    fn default() -> Self {
        Self {
            focus: None,
            selection: BTreeSet::new(),
            cursor_style: CursorStyle::Yellow,
        }
    }
}

pub fn current_focus(cursor: &NavCursor, surface: &Surface) -> Result<FocusSample, NavError> {
    match cursor.mode {
        DisplayMode::Surface => surface.rectangle_sample(cursor.grid_pos),
        DisplayMode::Point => Ok(surface.point_sample(cursor.point_index)),
    }
}

fn fmt_value(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// Spoken description of a focus sample using the dataset's axis labels.
pub fn describe_focus(sample: &FocusSample, surface: &Surface) -> String {
    let label = |a| surface.dataset.axis_meta(a).label.clone();
    let values = format!(
        "{} {}, {} {}, {} {}",
        label(Axis::X),
        fmt_value(sample.x),
        label(Axis::Y),
        fmt_value(sample.y),
        label(Axis::Z),
        fmt_value(sample.z)
    );
    match sample.kind {
        crate::nav::FocusKind::Rectangle => format!(
            "Row {}, column {}. {values}.",
            sample.cell.row + 1,
            sample.cell.col + 1
        ),
        crate::nav::FocusKind::Point => format!(
            "Point {} of {}. {values}.",
            sample.index + 1,
            surface.dataset.len()
        ),
    }
}

/// Announcement for switching from `old` to `new`; `cursor` is already in the new mode.
pub fn mode_switch_effects(
    old: DisplayMode,
    new: DisplayMode,
    cursor: &NavCursor,
    surface: &Surface,
) -> String {
    debug_assert_ne!(old, new);
    match new {
        DisplayMode::Point => format!(
            "Point mode. Point {} of {}.",
            cursor.point_index + 1,
            surface.dataset.len()
        ),
        DisplayMode::Surface => format!(
            "Surface mode. Row {}, column {} of {} by {}.",
            cursor.grid_pos.row + 1,
            cursor.grid_pos.col + 1,
            surface.grid.rows(),
            surface.grid.cols()
        ),
    }
}

/// Result of offering a key to the navigation layer.
#[derive(Debug, Clone, PartialEq)]
pub enum NavOutcome {
    Handled(NavCursor, Vec<Event>),
    /// The key belongs to a sub-machine (jump, selection, playback, auto-play).
    Forward,
}

fn step_surface(pos: GridPos, dir: Direction, grid: &GridModel) -> Option<GridPos> {
    let (dr, dc) = dir.delta();
    let mut row = pos.row as isize;
    let mut col = pos.col as isize;
    loop {
        row += dr;
        col += dc;
        if row < 0 || col < 0 || row >= grid.rows() as isize || col >= grid.cols() as isize {
            return None;
        }
        let next = GridPos::new(row as usize, col as usize);
        if !grid.is_empty_at(next) {
            return Some(next);
        }
    }
}

fn step_point(index: usize, dir: Direction, row_len: usize, count: usize) -> Option<usize> {
    let col = index % row_len;
    match dir {
        Direction::Left => (col > 0).then(|| index - 1),
        Direction::Right => (col + 1 < row_len && index + 1 < count).then(|| index + 1),
        Direction::Up => (index + row_len < count).then(|| index + row_len),
        Direction::Down => index.checked_sub(row_len),
    }
}

/// Move one cell or point in `dir`. Empty rectangles are skipped; edges clamp.
pub fn move_cursor(cursor: &NavCursor, dir: Direction, surface: &Surface) -> Option<NavCursor> {
    let mut next = *cursor;
    match cursor.mode {
        DisplayMode::Surface => {
            next.grid_pos = step_surface(cursor.grid_pos, dir, &surface.grid)?;
        }
        DisplayMode::Point => {
            next.point_index = step_point(
                cursor.point_index,
                dir,
                surface.point_row_len,
                surface.dataset.len(),
            )?;
            next.grid_pos = surface.grid.pos_of(surface.grid.cell_of_point(next.point_index));
        }
    }
    Some(next)
}

/// Switch display mode, carrying the position across tiers.
pub fn toggle_mode(cursor: &NavCursor, surface: &Surface) -> NavCursor {
    let mut next = *cursor;
    next.mode = cursor.mode.toggled();
    match next.mode {
        DisplayMode::Point => {
            next.point_index = surface.grid.rect(cursor.grid_pos).member_indices[0];
        }
        DisplayMode::Surface => {
            next.grid_pos = surface.grid.pos_of(surface.grid.cell_of_point(cursor.point_index));
        }
    }
    next
}

fn focus_event(cursor: &NavCursor, surface: &Surface, cause: MoveCause) -> Event {
    let focus = current_focus(cursor, surface).expect("navigation never rests on an empty rectangle");
    Event::FocusMoved {
        focus,
        cause,
        cue: Some(ToneCue::Data),
    }
}

/// Navigation keys: arrows, mode toggle, reference and replay. Everything else is forwarded.
pub fn handle_key(cursor: &NavCursor, key: Key, surface: &Surface) -> NavOutcome {
    if let Some(dir) = key.direction() {
        return match move_cursor(cursor, dir, surface) {
            Some(next) => {
                let ev = focus_event(&next, surface, MoveCause::Navigate);
                NavOutcome::Handled(next, vec![ev])
            }
            None => NavOutcome::Handled(
                *cursor,
                vec![Event::BoundaryHit {
                    direction: dir,
                    mode: cursor.mode,
                    cell: cursor.grid_pos,
                }],
            ),
        };
    }
    match key {
        Key::ToggleMode => {
            let next = toggle_mode(cursor, surface);
            let events = vec![
                Event::DisplayModeChanged {
                    from: cursor.mode,
                    to: next.mode,
                },
                focus_event(&next, surface, MoveCause::ModeSwitch),
                Event::announce(mode_switch_effects(cursor.mode, next.mode, &next, surface)),
            ];
            NavOutcome::Handled(next, events)
        }
        Key::Reference => NavOutcome::Handled(
            *cursor,
            vec![Event::Announce {
                text: "Reference tone, origin.".into(),
                sound: Some(SoundRequest::Reference),
            }],
        ),
        Key::Replay => {
            let sample = current_focus(cursor, surface)
                .expect("navigation never rests on an empty rectangle");
            NavOutcome::Handled(
                *cursor,
                vec![Event::Announce {
                    text: describe_focus(&sample, surface),
                    sound: Some(SoundRequest::Replay { sample }),
                }],
            )
        }
        _ => NavOutcome::Forward,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{AxisMeta, Point};

    /// 3 columns × 2 rows of points on a unit lattice, one point per cell of a 2×3 grid.
    fn small_surface() -> Surface {
        let pts = (0..2)
            .flat_map(|z| (0..3).map(move |x| Point::new(x as f64, (x + z) as f64, z as f64)))
            .collect();
        let meta = [AxisMeta::new("x", ""), AxisMeta::new("y", ""), AxisMeta::new("z", "")];
        Surface::new(SurfaceDataset::new(pts, meta, "t").unwrap(), 2, 3)
    }

    #[test]
    fn right_edge_clamps_with_boundary_hit() {
        let s = small_surface();
        let mut c = NavCursor::start(&s);
        c.grid_pos = GridPos::new(0, 2);
        let NavOutcome::Handled(next, events) = handle_key(&c, Key::Right, &s) else {
            panic!("arrow keys are navigation")
        };
        assert_eq!(next, c);
        assert!(matches!(events.as_slice(), [Event::BoundaryHit { direction: Direction::Right, .. }]));
    }

    #[test]
    fn toggle_emits_display_mode_changed() {
        let s = small_surface();
        let c = NavCursor::start(&s);
        let NavOutcome::Handled(next, events) = handle_key(&c, Key::ToggleMode, &s) else {
            panic!()
        };
        assert_eq!(next.mode, DisplayMode::Point);
        assert_eq!(
            events[0],
            Event::DisplayModeChanged { from: DisplayMode::Surface, to: DisplayMode::Point }
        );
        assert!(matches!(&events[2], Event::Announce { text, .. } if text.starts_with("Point mode. Point 1 of 6")));
    }

    #[test]
    fn repeated_toggles_alternate_announcements() {
        let s = small_surface();
        let mut c = NavCursor::start(&s);
        let mut texts = Vec::new();
        for _ in 0..4 {
            let NavOutcome::Handled(next, events) = handle_key(&c, Key::ToggleMode, &s) else { panic!() };
            if let Event::Announce { text, .. } = &events[2] {
                texts.push(text.clone());
            }
            c = next;
        }
        assert_eq!(texts[0], texts[2]);
        assert_eq!(texts[1], texts[3]);
        assert!(texts[1].starts_with("Surface mode. Row 1, column 1"));
    }

    #[test]
    fn replay_does_not_move() {
        let s = small_surface();
        let c = NavCursor::start(&s);
        let NavOutcome::Handled(next, events) = handle_key(&c, Key::Replay, &s) else { panic!() };
        assert_eq!(next, c);
        let expected = current_focus(&c, &s).unwrap();
        assert!(matches!(&events[0], Event::Announce { sound: Some(SoundRequest::Replay { sample }), .. } if *sample == expected));
    }

    #[test]
    fn focus_copies_rectangle_fields() {
        let s = small_surface();
        let c = NavCursor::start(&s);
        let f = current_focus(&c, &s).unwrap();
        let r = s.grid.rect(c.grid_pos);
        assert_eq!((f.x, f.y, f.z, f.kind), (r.center_x, r.avg_y, r.center_z, FocusKind::Rectangle));
        assert!(f.x_norm > 0.0 && f.x_norm < 1.0);
        assert!(f.z_norm > 0.0 && f.z_norm < 1.0);
    }

    #[test]
    fn point_focus_is_exact_triple() {
        let pts = vec![Point::new(0.0, 0.0, 0.0), Point::new(1.5, 0.2, 9.0)];
        let meta = [AxisMeta::new("x", ""), AxisMeta::new("y", ""), AxisMeta::new("z", "")];
        let s = Surface::new(SurfaceDataset::new(pts, meta, "t").unwrap(), 2, 2);
        let mut c = NavCursor::start(&s);
        c.mode = DisplayMode::Point;
        c.point_index = 1;
        let f = current_focus(&c, &s).unwrap();
        assert_eq!((f.x, f.y, f.z, f.kind), (1.5, 0.2, 9.0, FocusKind::Point));
    }

    #[test]
    fn empty_rectangle_is_an_error() {
        let pts = vec![Point::new(0.0, 0.0, 0.0), Point::new(1.0, 1.0, 1.0)];
        let meta = [AxisMeta::new("x", ""), AxisMeta::new("y", ""), AxisMeta::new("z", "")];
        let s = Surface::new(SurfaceDataset::new(pts, meta, "t").unwrap(), 2, 2);
        let mut c = NavCursor::start(&s);
        c.grid_pos = GridPos::new(0, 1);
        assert_eq!(current_focus(&c, &s), Err(NavError::EmptyRectangle(1)));
    }

    #[test]
    fn navigation_skips_empty_cells() {
        // Diagonal data on a 3×3 grid: only (0,0), (1,1), (2,2) are filled.
        let pts = (0..3).map(|i| Point::new(i as f64, 0.0, i as f64)).collect();
        let meta = [AxisMeta::new("x", ""), AxisMeta::new("y", ""), AxisMeta::new("z", "")];
        let s = Surface::new(SurfaceDataset::new(pts, meta, "t").unwrap(), 3, 3);
        let c = NavCursor::start(&s);
        assert!(move_cursor(&c, Direction::Right, &s).is_none());
        assert!(move_cursor(&c, Direction::Up, &s).is_none());
    }

    #[test]
    fn point_mode_walks_the_lattice() {
        let s = small_surface();
        assert_eq!(s.point_row_len, 3);
        let mut c = toggle_mode(&NavCursor::start(&s), &s);
        c = move_cursor(&c, Direction::Right, &s).unwrap();
        assert_eq!(c.point_index, 1);
        c = move_cursor(&c, Direction::Up, &s).unwrap();
        assert_eq!(c.point_index, 4);
        assert_eq!(c.grid_pos, GridPos::new(1, 1));
        assert!(move_cursor(&c, Direction::Up, &s).is_none());
        c = move_cursor(&c, Direction::Right, &s).unwrap();
        assert!(move_cursor(&c, Direction::Right, &s).is_none());
    }
}
