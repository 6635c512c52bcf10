use std::process::Command;

fn sonoterrain(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_sonoterrain")).args(args).output().unwrap()
}

#[test]
fn load_errors_exit_with_2() {
    assert_eq!(sonoterrain(&["stats", "--data", "/no/such/file.csv"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "x,y,z\n1,2\n").unwrap();
    let out = sonoterrain(&["peaks", "--data", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let script = dir.path().join("s.json");
    std::fs::write(&script, r#"{"keys":[{"key":"Tab","at_s":0}]}"#).unwrap();
    let wav = dir.path().join("o.wav");
    let out = sonoterrain(&[
        "run", "--data", "gaussian", "--script", script.to_str().unwrap(),
        "--out-wav", wav.to_str().unwrap(), "--out-transcript", dir.path().join("t").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!wav.exists());
}

#[test]
fn stats_json_and_peaks_listing() {
    let out = sonoterrain(&["stats", "--data", "benzene_like", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["count"], 3116);
    assert_eq!(v["x"]["mode"], 120.0);

    let out = sonoterrain(&["peaks", "--data", "sinusoidal"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 20);
    assert!(text.lines().next().unwrap().contains("peak"));
    assert!(text.lines().last().unwrap().contains("trough"));
}

#[test]
fn run_with_config_and_raw_dump() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("c.toml");
    std::fs::write(&config, "[render]\nsample_rate = 8000\n\n[keys]\ns = \"right\"\n").unwrap();
    let script = dir.path().join("s.json");
    std::fs::write(&script, r#"{"dataset":"sinusoidal","keys":[{"key":"s","at_s":0},{"key":"0","at_s":0.5}]}"#).unwrap();
    let (wav, raw, jsonl) = (dir.path().join("o.wav"), dir.path().join("o.f32"), dir.path().join("o.jsonl"));
    let out = sonoterrain(&[
        "run", "--script", script.to_str().unwrap(), "--config", config.to_str().unwrap(), "--seed", "3",
        "--out-wav", wav.to_str().unwrap(), "--out-transcript", jsonl.to_str().unwrap(), "--out-raw", raw.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let audio = sonoterrain_audio::decode_wav(&std::fs::read(&wav).unwrap()).unwrap();
    assert_eq!(audio.sample_rate, 8000);
    assert_eq!(std::fs::read(&raw).unwrap().len(), audio.frames() * 8);
    let lines = std::fs::read_to_string(&jsonl).unwrap();
    assert_eq!(lines.lines().count(), 2);
    assert!(lines.lines().next().unwrap().contains("\"focus-moved\""));
}
