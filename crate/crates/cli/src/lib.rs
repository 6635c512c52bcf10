//! Headless driver for the sonoterrain engine: scripted sessions, WAV output and
//! event transcripts.

pub mod load;
pub mod report;
pub mod session;

pub use load::{load_config, load_dataset, load_script, LoadError};
pub use session::{run_script, KeyPress, SessionOutput, SessionScript, Transcript, TranscriptRecord};
