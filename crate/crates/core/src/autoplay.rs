//! Automatic axis-aligned sweeps over the grid.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::data::{GridModel, GridPos};
use crate::event::{AutoplayPhase, Event, MoveCause, ToneCue};
use crate::nav::{current_focus, NavCursor, Surface};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AutoplayError {
    #[error("grid has no non-empty rectangles to sweep")]
    EmptyGrid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Perspective {
    /// Row by row front to back, each row left to right.
    #[default]
    XRows,
    /// Column by column left to right, each column front to back.
    ZColumns,
    /// Rows front to back, alternating direction.
    Boustrophedon,
}

impl Perspective {
    pub fn next(self) -> Self {
        match self {
            Perspective::XRows => Perspective::ZColumns,
            Perspective::ZColumns => Perspective::Boustrophedon,
            Perspective::Boustrophedon => Perspective::XRows,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Perspective::XRows => "rows along X",
            Perspective::ZColumns => "columns along Z",
            Perspective::Boustrophedon => "alternating rows",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepState {
    Idle,
    Playing,
    Paused,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepProgram {
    pub perspective: Perspective,
    pub commands: Vec<GridPos>,
    pub interval_s: f64,
    pub state: SweepState,
    /// Index of the next command to play.
    pub next: usize,
}

pub fn build_sweep(
    grid: &GridModel,
    perspective: Perspective,
    interval_s: f64,
) -> Result<SweepProgram, AutoplayError> {
    assert!(interval_s > 0.0, "sweep interval must be positive");
    let (rows, cols) = (grid.rows(), grid.cols());
    let order: Vec<GridPos> = match perspective {
        Perspective::XRows => (0..rows)
            .flat_map(|r| (0..cols).map(move |c| GridPos::new(r, c)))
            .collect(),
        Perspective::ZColumns => (0..cols)
            .flat_map(|c| (0..rows).map(move |r| GridPos::new(r, c)))
            .collect(),
        Perspective::Boustrophedon => (0..rows)
            .flat_map(|r| {
                let row: Vec<GridPos> = (0..cols).map(|c| GridPos::new(r, c)).collect();
                if r % 2 == 1 {
                    row.into_iter().rev().collect::<Vec<_>>()
                } else {
                    row
                }
            })
            .collect(),
    };
    let commands: Vec<GridPos> = order.into_iter().filter(|&p| !grid.is_empty_at(p)).collect();
    if commands.is_empty() {
        return Err(AutoplayError::EmptyGrid);
    }
    Ok(SweepProgram {
        perspective,
        commands,
        interval_s,
        state: SweepState::Idle,
        next: 0,
    })
}

impl SweepProgram {
    fn with_state(&self, state: SweepState, phase: AutoplayPhase) -> (SweepProgram, Event) {
        let mut next = self.clone();
        next.state = state;
        let event = Event::AutoplayStateChanged {
            state: phase,
            perspective: self.perspective,
            next: next.next,
            total: self.commands.len(),
        };
        (next, event)
    }

    pub fn start(&self) -> (SweepProgram, Event) {
        self.with_state(SweepState::Playing, AutoplayPhase::Playing)
    }

    pub fn pause(&self) -> (SweepProgram, Event) {
        self.with_state(SweepState::Paused, AutoplayPhase::Paused)
    }

    pub fn resume(&self) -> (SweepProgram, Event) {
        self.with_state(SweepState::Playing, AutoplayPhase::Playing)
    }

    pub fn stop(&self) -> (SweepProgram, Event) {
        self.with_state(SweepState::Idle, AutoplayPhase::Stopped)
    }

    pub fn is_finished(&self) -> bool {
        self.next >= self.commands.len()
    }
}

/// One clock tick: play the next command, or finish when none are left.
pub fn autoplay_tick(
    program: &SweepProgram,
    cursor: &NavCursor,
    surface: &Surface,
) -> (SweepProgram, NavCursor, Vec<Event>) {
    if program.state != SweepState::Playing {
        return (program.clone(), *cursor, Vec::new());
    }
    if program.is_finished() {
        let (done, event) = program.with_state(SweepState::Idle, AutoplayPhase::Finished);
        return (done, *cursor, vec![event]);
    }
    let mut next_program = program.clone();
    let pos = program.commands[program.next];
    next_program.next += 1;
    let mut next_cursor = *cursor;
    next_cursor.place_on_rect(pos);
    let focus = current_focus(&next_cursor, surface).expect("sweeps only visit non-empty rectangles");
    let event = Event::FocusMoved {
        focus,
        cause: MoveCause::Autoplay,
        cue: Some(ToneCue::Data),
    };
    (next_program, next_cursor, vec![event])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{AxisMeta, Point, SurfaceDataset};

    fn full_surface(rows: usize, cols: usize) -> Surface {
        let pts = (0..rows)
            .flat_map(|r| (0..cols).map(move |c| Point::new(c as f64, 0.0, r as f64)))
            .collect();
        let meta = [AxisMeta::new("x", ""), AxisMeta::new("y", ""), AxisMeta::new("z", "")];
        Surface::new(SurfaceDataset::new(pts, meta, "t").unwrap(), rows, cols)
    }

    #[test]
    fn x_rows_order_on_2x2() {
        let s = full_surface(2, 2);
        let p = build_sweep(&s.grid, Perspective::XRows, 0.18).unwrap();
        let expected: Vec<GridPos> = [(0, 0), (0, 1), (1, 0), (1, 1)]
            .into_iter()
            .map(|(r, c)| GridPos::new(r, c))
            .collect();
        assert_eq!(p.commands, expected);
    }

    #[test]
    fn boustrophedon_reverses_odd_rows() {
        let s = full_surface(2, 3);
        let p = build_sweep(&s.grid, Perspective::Boustrophedon, 0.18).unwrap();
        assert_eq!(p.commands[3], GridPos::new(1, 2));
        assert_eq!(p.commands[5], GridPos::new(1, 0));
    }

    #[test]
    fn full_20x20_sweep_has_400_commands() {
        let s = full_surface(20, 20);
        for perspective in [Perspective::XRows, Perspective::ZColumns, Perspective::Boustrophedon] {
            let p = build_sweep(&s.grid, perspective, 0.18).unwrap();
            assert_eq!(p.commands.len(), 400);
            let mut sorted = p.commands.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), 400);
        }
    }

    #[test]
    fn tick_through_to_finish() {
        let s = full_surface(2, 2);
        let (mut program, start) = build_sweep(&s.grid, Perspective::XRows, 0.18).unwrap().start();
        assert!(matches!(start, Event::AutoplayStateChanged { state: AutoplayPhase::Playing, .. }));
        let mut cursor = NavCursor::start(&s);
        let mut moves = 0;
        loop {
            let (p, c, events) = autoplay_tick(&program, &cursor, &s);
            program = p;
            cursor = c;
            match events.as_slice() {
                [Event::FocusMoved { .. }] => moves += 1,
                [Event::AutoplayStateChanged { state: AutoplayPhase::Finished, .. }] => break,
                other => panic!("{other:?}"),
            }
        }
        assert_eq!(moves, 4);
        assert_eq!(program.state, SweepState::Idle);
        assert_eq!(cursor.grid_pos, GridPos::new(1, 1));
    }

    #[test]
    fn paused_program_does_not_advance() {
        let s = full_surface(2, 2);
        let (program, _) = build_sweep(&s.grid, Perspective::XRows, 0.18).unwrap().start();
        let (program, _) = program.pause();
        let cursor = NavCursor::start(&s);
        let (after, c, events) = autoplay_tick(&program, &cursor, &s);
        assert_eq!(after, program);
        assert_eq!(c, cursor);
        assert!(events.is_empty());
    }
}
