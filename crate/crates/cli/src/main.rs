use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use sonoterrain_audio::{encode_raw_f32, encode_wav};
use sonoterrain_cli::report::{peaks_text, stats_json, stats_text};
use sonoterrain_cli::session::SessionError;
use sonoterrain_cli::{load_config, load_dataset, load_script, run_script, LoadError};
use sonoterrain_core::nav::Surface;
use sonoterrain_core::salience::detect_peaks;

#[derive(Parser)]
#[command(name = "sonoterrain", version, about = "Explore 3-D surface data by ear, headlessly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Replay a key script and write the rendered audio and event transcript.
    Run {
        /// Built-in dataset name or CSV path. Defaults to the script's dataset.
        #[arg(long)]
        data: Option<String>,
        #[arg(long)]
        script: PathBuf,
        #[arg(long)]
        out_wav: PathBuf,
        #[arg(long)]
        out_transcript: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Reverb seed. Overrides the script and config.
        #[arg(long)]
        seed: Option<u64>,
        /// Also write interleaved little-endian f32 frames here.
        #[arg(long)]
        out_raw: Option<PathBuf>,
    },
    /// Print summary statistics of a dataset.
    Stats {
        #[arg(long)]
        data: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the jump-to-peak targets of a dataset.
    Peaks {
        #[arg(long)]
        data: String,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Run {
            data,
            script,
            out_wav,
            out_transcript,
            config,
            seed,
            out_raw,
        } => {
            let config = load_config(config.as_deref())?;
            let script = load_script(&script)?;
            let data = data
                .or_else(|| script.dataset.clone())
                .context("no dataset given on the command line or in the script")?;
            let dataset = load_dataset(&data)?;
            let seed = seed.or(script.seed).unwrap_or(config.render.ir_seed);
            let output = run_script(&script, dataset, &config, seed)?;
            fs::write(&out_wav, encode_wav(&output.audio)?).with_context(|| format!("writing {}", out_wav.display()))?;
            fs::write(&out_transcript, output.transcript.to_jsonl())
                .with_context(|| format!("writing {}", out_transcript.display()))?;
            if let Some(raw) = out_raw {
                fs::write(&raw, encode_raw_f32(&output.audio)).with_context(|| format!("writing {}", raw.display()))?;
            }
        }
        Command::Stats { data, json } => {
            let dataset = load_dataset(&data)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&stats_json(&dataset))?);
            } else {
                print!("{}", stats_text(&dataset));
            }
        }
        Command::Peaks { data, config, json } => {
            let config = load_config(config.as_deref())?;
            let surface = Surface::new(load_dataset(&data)?, config.grid.rows, config.grid.cols);
            let peaks = detect_peaks(&surface.grid, &config.salience)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&peaks)?);
            } else {
                print!("{}", peaks_text(&peaks, &surface));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            let load_failure = err.downcast_ref::<LoadError>().is_some()
                || matches!(
                    err.downcast_ref::<SessionError>(),
                    Some(SessionError::UnknownKey { .. } | SessionError::Script(_))
                );
            if load_failure {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
