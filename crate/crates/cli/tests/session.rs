use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use sonoterrain_audio::encode_wav;
use sonoterrain_cli::session::SessionError;
use sonoterrain_cli::{load_dataset, load_script, run_script, KeyPress, SessionOutput, SessionScript};
use sonoterrain_core::config::Config;
use sonoterrain_core::data::build_grid;

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

fn script(keys: &[(&str, f64)]) -> SessionScript {
    SessionScript {
        dataset: Some("gaussian".into()),
        seed: Some(1),
        keys: keys.iter().map(|&(key, at_s)| KeyPress { key: key.into(), at_s }).collect(),
    }
}

fn run(s: &SessionScript) -> SessionOutput {
    let dataset = load_dataset(s.dataset.as_deref().unwrap()).unwrap();
    run_script(s, dataset, &Config::default(), s.seed.unwrap()).unwrap()
}

fn run_demo() -> SessionOutput {
    let s = load_script(&data_dir().join("demo_script.json")).unwrap();
    run(&s)
}

#[test]
fn jump_lands_on_the_highest_rectangle_with_a_peak_cue() {
    let out = run(&script(&[("J", 0.0)]));
    let grid = build_grid(&load_dataset("gaussian").unwrap(), 20, 20);
    let best = grid
        .non_empty()
        .fold(None::<(usize, f64)>, |acc, r| match acc {
            Some((_, y)) if y >= r.avg_y => acc,
            _ => Some((r.index, r.avg_y)),
        })
        .unwrap();
    let records = &out.transcript.records;
    let moved = records.iter().find(|r| r.name == "focus-moved").unwrap();
    assert_eq!(moved.payload["cause"], "jump");
    assert_eq!(moved.payload["cue"], serde_json::json!({ "peak": "positive" }));
    assert_eq!(moved.payload["focus"]["index"], best.0);
    assert!(records
        .iter()
        .any(|r| r.name == "announce" && r.payload["text"].as_str().unwrap().starts_with("Jump mode. Peak 1 of")));
}

#[test]
fn replay_only_never_moves() {
    let out = run(&script(&[(".", 0.0), (".", 0.5), (".", 1.0)]));
    assert_eq!(out.transcript.names().filter(|n| *n == "focus-moved").count(), 0);
    assert_eq!(out.transcript.records.len(), 3);
    assert!(!out.audio.is_empty());
}

#[test]
fn arrow_pauses_autoplay_where_the_user_moved() {
    let out = run(&script(&[("P", 0.0), ("ArrowUp", 1.0)]));
    let records = &out.transcript.records;
    let sweep_moves = records
        .iter()
        .filter(|r| r.name == "focus-moved" && r.payload["cause"] == "autoplay")
        .count();
    // Ticks at 0.18, 0.36, ..., 0.90 s precede the key at 1.0 s.
    assert_eq!(sweep_moves, 5);
    let paused = records
        .iter()
        .position(|r| r.name == "autoplay-state-changed" && r.payload["state"] == "paused")
        .unwrap();
    assert_eq!(records[paused].t_s, 1.0);
    let after: Vec<_> = records[paused + 1..].iter().collect();
    assert_eq!(after.len(), 1);
    assert_eq!(after[0].payload["cause"], "navigate");
    assert_eq!(out.engine.cursor().grid_pos.row, 1);
    assert_eq!(out.engine.cursor().grid_pos.col, 4);
}

#[test]
fn keys_win_ties_with_ticks() {
    let out = run(&script(&[("P", 0.0), ("Escape", 0.18)]));
    let names: Vec<_> = out.transcript.names().collect();
    assert_eq!(names, vec!["autoplay-state-changed", "autoplay-state-changed"]);
}

#[test]
fn sequence_numbers_and_times_increase() {
    let out = run_demo();
    let records = &out.transcript.records;
    assert!(records.len() > 40);
    for (i, w) in records.windows(2).enumerate() {
        assert_eq!(w[0].seq, i as u64);
        assert!(w[1].seq > w[0].seq);
        assert!(w[1].t_s >= w[0].t_s);
    }
    let names = [
        "display-mode-changed",
        "drag-select-selection-confirmed",
        "autoplay-state-changed",
        "focus-moved",
        "boundary-hit",
        "announce",
    ];
    assert!(records.iter().all(|r| names.contains(&r.name.as_str())));
    for name in names {
        assert!(records.iter().any(|r| r.name == name), "demo never emits {name}");
    }
}

#[test]
fn bad_scripts_are_rejected() {
    let dataset = || load_dataset("gaussian").unwrap();
    let unknown = script(&[("Tab", 0.0)]);
    assert!(matches!(
        run_script(&unknown, dataset(), &Config::default(), 0),
        Err(SessionError::UnknownKey { index: 0, .. })
    ));
    let backwards = script(&[("J", 1.0), ("J", 0.5)]);
    assert!(matches!(
        run_script(&backwards, dataset(), &Config::default(), 0),
        Err(SessionError::Script(_))
    ));
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[test]
fn demo_matches_golden_files() {
    let a = run_demo();
    let b = run_demo();
    let (wav_a, wav_b) = (encode_wav(&a.audio).unwrap(), encode_wav(&b.audio).unwrap());
    assert_eq!(wav_a, wav_b);
    let jsonl = a.transcript.to_jsonl();
    assert_eq!(jsonl, b.transcript.to_jsonl());

    let transcript_path = data_dir().join("demo_transcript.jsonl");
    let hash_path = data_dir().join("demo_wav.sha256");
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&transcript_path, &jsonl).unwrap();
        std::fs::write(&hash_path, sha256_hex(&wav_a) + "\n").unwrap();
    }
    assert_eq!(jsonl, std::fs::read_to_string(&transcript_path).unwrap());
    assert_eq!(sha256_hex(&wav_a), std::fs::read_to_string(&hash_path).unwrap().trim());
}
