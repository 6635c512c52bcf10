//! Data model, navigation and interaction state machines for sonified 3-D surfaces.

pub mod autoplay;
pub mod config;
pub mod data;
pub mod engine;
pub mod event;
pub mod nav;
pub mod region;
pub mod salience;
pub mod sonify;

pub use config::Config;
pub use data::{parse_dataset, Axis, DataError, Point, SurfaceDataset};
pub use engine::{Engine, EngineState};
pub use event::{Event, EventName, Key, KeyMap};
