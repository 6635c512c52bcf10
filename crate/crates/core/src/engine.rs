//! The interaction engine: routes keys to navigation and the jump, selection,
//! playback and auto-play sub-machines, and keeps highlight state in sync.

use serde::{Deserialize, Serialize};

use crate::autoplay::{autoplay_tick, build_sweep, Perspective, SweepProgram, SweepState};
use crate::config::Config;
use crate::data::SurfaceDataset;
use crate::event::{Event, Key, KeyMap, SoundRequest};
use crate::nav::{
    handle_key, CursorStyle, DisplayMode, HighlightState, Interaction, NavCursor, NavOutcome,
    Surface,
};
use crate::region::{
    playback_plan, selection_step, BoundaryWatcher, RegionBuffer, RegionError, SelectionState,
};
use crate::salience::{jump_step, PeakSet, SalienceError};
use crate::sonify::Sonifier;

/// Everything that changes in response to keys and ticks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EngineState {
    pub cursor: NavCursor,
    pub highlight: HighlightState,
    pub selection: SelectionState,
    pub buffer: Option<RegionBuffer>,
    pub watcher: BoundaryWatcher,
    pub peaks: Option<PeakSet>,
    pub autoplay: Option<SweepProgram>,
    pub perspective: Perspective,
}

/// Single-owner state machine over one loaded surface.
#[derive(Debug, Clone)]
pub struct Engine {
    surface: Surface,
    config: Config,
    keymap: KeyMap,
    sonifier: Sonifier,
    state: EngineState,
}

fn error_text(err: impl std::fmt::Display) -> String {
    let msg = err.to_string();
    let mut chars = msg.chars();
    match chars.next() {
        Some(first) => format!("{}{}.", first.to_uppercase(), chars.as_str()),
        None => msg,
    }
}

impl Engine {
    pub fn new(dataset: SurfaceDataset, config: Config) -> Self {
        let surface = Surface::new(dataset, config.grid.rows, config.grid.cols);
        let cursor = NavCursor::start(&surface);
        let state = EngineState {
            cursor,
            highlight: HighlightState::default(),
            selection: SelectionState::default(),
            buffer: None,
            watcher: BoundaryWatcher::default(),
            peaks: None,
            autoplay: None,
            perspective: config.autoplay.perspective,
        };
        let mut engine = Self {
            keymap: KeyMap::with_overrides(&config.keys),
            sonifier: Sonifier::new(config.sonification),
            surface,
            config,
            state,
        };
        engine.refresh_highlight();
        engine
    }

    pub fn surface(&self) -> &Surface {
        &self.surface
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    pub fn sonifier(&self) -> &Sonifier {
        &self.sonifier
    }

    pub fn state(&self) -> &EngineState {
        &self.state
    }

    pub fn cursor(&self) -> &NavCursor {
        &self.state.cursor
    }

    pub fn is_autoplaying(&self) -> bool {
        matches!(&self.state.autoplay, Some(p) if p.state == SweepState::Playing)
    }

    /// Press a physical or engine key name. Unknown names are ignored.
    pub fn press_named(&mut self, name: &str) -> Vec<Event> {
        match self.keymap.resolve(name) {
            Ok(key) => self.press(key),
            Err(_) => Vec::new(),
        }
    }

    pub fn press(&mut self, key: Key) -> Vec<Event> {
        let mut events = Vec::new();
        let pauses = key.direction().is_some() || matches!(key, Key::ToggleMode | Key::Jump | Key::Select);
        if pauses && self.is_autoplaying() {
            self.pause_autoplay(&mut events);
        }

        match key {
            Key::Reference | Key::Replay => {
                if let NavOutcome::Handled(_, evs) = handle_key(&self.state.cursor, key, &self.surface) {
                    events.extend(evs);
                }
            }
            Key::Left | Key::Right | Key::Up | Key::Down | Key::ToggleMode => {
                self.leave_jump(&mut events);
                if let NavOutcome::Handled(cursor, evs) = handle_key(&self.state.cursor, key, &self.surface) {
                    self.state.cursor = cursor;
                    events.extend(evs);
                }
                if self.state.selection.is_active() {
                    self.select(key, &mut events);
                }
            }
            Key::Jump => {
                if self.state.selection.is_active() {
                    events.push(Event::announce("Finish or cancel the selection first."));
                } else {
                    self.jump(key, &mut events);
                }
            }
            Key::Select => {
                self.leave_jump(&mut events);
                self.select(key, &mut events);
            }
            Key::Enter => self.select(key, &mut events),
            Key::Escape => {
                if self.state.selection.is_active() {
                    self.select(key, &mut events);
                } else if self.state.cursor.interaction == Interaction::Jump {
                    self.jump(key, &mut events);
                } else if let Some(program) = self.state.autoplay.take() {
                    let (_, ev) = program.stop();
                    self.state.cursor.interaction = Interaction::Idle;
                    events.push(ev);
                }
            }
            Key::Playback => match playback_plan(self.state.buffer.as_ref(), &self.config.playback) {
                Ok((buffer, plan)) => {
                    let text = match plan.entries.len() {
                        1 if plan.mode == crate::region::PlaybackMode::Aggregated => {
                            "Aggregated playback: buffer mean.".to_string()
                        }
                        n => format!("Sequential playback: {n} items."),
                    };
                    self.state.buffer = Some(buffer);
                    events.push(Event::Announce {
                        text,
                        sound: Some(SoundRequest::Playback { plan }),
                    });
                }
                Err(e) => events.push(Event::announce(error_text(e))),
            },
            Key::AutoPlay => self.autoplay_key(&mut events),
        }

        self.finish_batch(events)
    }

    /// Host clock tick for auto-play. No-op unless a sweep is playing.
    pub fn tick(&mut self) -> Vec<Event> {
        let Some(program) = self.state.autoplay.as_ref() else {
            return Vec::new();
        };
        let (program, cursor, events) = autoplay_tick(program, &self.state.cursor, &self.surface);
        self.state.cursor = cursor;
        if program.state == SweepState::Idle {
            self.state.cursor.interaction = Interaction::Idle;
            self.state.autoplay = None;
        } else {
            self.state.autoplay = Some(program);
        }
        self.finish_batch(events)
    }

    fn pause_autoplay(&mut self, events: &mut Vec<Event>) {
        if let Some(program) = &self.state.autoplay {
            let (paused, ev) = program.pause();
            self.state.autoplay = Some(paused);
            self.state.cursor.interaction = Interaction::Idle;
            events.push(ev);
        }
    }

    /// Drop out of jump mode where the cursor currently is.
    fn leave_jump(&mut self, events: &mut Vec<Event>) {
        if self.state.cursor.interaction == Interaction::Jump {
            self.state.cursor.interaction = Interaction::Idle;
            self.state.cursor.saved_pos = None;
            self.state.peaks = None;
            events.push(Event::announce("Left jump mode."));
        }
    }

    fn jump(&mut self, key: Key, events: &mut Vec<Event>) {
        match jump_step(
            &self.state.cursor,
            self.state.peaks.as_ref(),
            key,
            &self.surface,
            &self.config.salience,
        ) {
            Ok((cursor, peaks, evs)) => {
                self.state.cursor = cursor;
                self.state.peaks = peaks;
                events.extend(evs);
            }
            Err(e @ (SalienceError::NotInSurfaceMode | SalienceError::NoPeaks | SalienceError::NoRectangles)) => {
                events.push(Event::announce(error_text(e)));
            }
        }
    }

    fn select(&mut self, key: Key, events: &mut Vec<Event>) {
        match selection_step(
            &self.state.selection,
            &self.state.cursor,
            key,
            self.config.selection.flow,
            &self.surface,
        ) {
            Ok(step) => {
                self.state.selection = step.state;
                self.state.cursor.interaction = if step.state.is_active() {
                    Interaction::Selecting
                } else {
                    Interaction::Idle
                };
                if let Some(buffer) = step.confirmed {
                    self.state.watcher = BoundaryWatcher::new(buffer.bounds.contains(self.state.cursor.grid_pos));
                    self.state.buffer = Some(buffer);
                }
                events.extend(step.events);
            }
            Err(e @ (RegionError::ConfirmWithoutAnchor | RegionError::EmptyBuffer | RegionError::NoBufferStored)) => {
                events.push(Event::announce(error_text(e)));
            }
        }
    }

    fn autoplay_key(&mut self, events: &mut Vec<Event>) {
        if self.state.cursor.mode != DisplayMode::Surface {
            events.push(Event::announce("Auto-play works in surface mode."));
            return;
        }
        if self.state.selection.is_active() {
            events.push(Event::announce("Finish or cancel the selection first."));
            return;
        }
        self.leave_jump(events);
        let (program, ev) = match self.state.autoplay.as_ref().map(|p| p.state) {
            Some(SweepState::Paused) => self.state.autoplay.as_ref().unwrap().resume(),
            current => {
                if current == Some(SweepState::Playing) {
                    self.state.perspective = self.state.perspective.next();
                }
                let program = build_sweep(&self.surface.grid, self.state.perspective, self.config.autoplay.interval_s)
                    .expect("a loaded surface always has a non-empty rectangle");
                program.start()
            }
        };
        self.state.autoplay = Some(program);
        self.state.cursor.interaction = Interaction::Autoplay;
        events.push(ev);
    }

    /// Interleave boundary crossings after focus moves and refresh highlights.
    fn finish_batch(&mut self, events: Vec<Event>) -> Vec<Event> {
        let mut out = Vec::with_capacity(events.len());
        for ev in events {
            let crossing = match (&ev, &self.state.buffer) {
                (Event::FocusMoved { focus, .. }, Some(buffer)) => self.state.watcher.observe(buffer, focus),
                _ => None,
            };
            out.push(ev);
            out.extend(crossing);
        }
        self.refresh_highlight();
        out
    }

    fn refresh_highlight(&mut self) {
        let grid = &self.surface.grid;
        let cursor = &self.state.cursor;
        let active = self.state.selection.bounds().filter(|_| self.state.selection.is_active());
        let shown = active.or_else(|| self.state.buffer.as_ref().map(|b| b.bounds));
        self.state.highlight = HighlightState {
            focus: Some(cursor.focus_index(&self.surface)),
            selection: shown
                .map(|b| b.cells().map(|c| grid.index_of(c)).collect())
                .unwrap_or_default(),
            cursor_style: match active {
                Some(b) if b.contains(cursor.grid_pos) => CursorStyle::White,
                _ => CursorStyle::Yellow,
            },
        };
    }
}
