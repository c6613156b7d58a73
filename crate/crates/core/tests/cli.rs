use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs")
}

fn ffwm(config: &Path, out: &Path, extra: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffwm"))
        .arg("--config")
        .arg(config)
        .arg("--out")
        .arg(out)
        .args(extra)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, body: &str) -> PathBuf {
    let p = dir.join("run.json");
    std::fs::write(&p, body).unwrap();
    p
}

fn read_rows(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

fn column(header: &[String], name: &str) -> usize {
    header
        .iter()
        .position(|h| h == name)
        .unwrap_or_else(|| panic!("no column {name}"))
}

#[test]
fn phasematch_lists_the_reference_quartet() {
    let tmp = tempfile::tempdir().unwrap();
    let o = ffwm(
        &configs().join("diamond_ring.json"),
        tmp.path(),
        &["phasematch"],
    );
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let (h, rows) = read_rows(&tmp.path().join("quartets.csv"));
    let (ia, ib, ii) = (
        column(&h, "m_a"),
        column(&h, "m_b"),
        column(&h, "lambda_idl_um"),
    );
    let row = rows
        .iter()
        .find(|r| r[ia] == "28" && r[ib] == "115")
        .expect("28 + 115 split present");
    let idl: f64 = row[ii].parse().unwrap();
    assert!((idl - 1.2987).abs() < 2e-3, "{idl}");
    assert!(tmp.path().join("phasematch.manifest.json").exists());
}

#[test]
fn empty_pump_window_gives_header_only() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        r#"{"schema_version": 1, "phasematch": {"pump_window_um": [1.0, 1.0]}}"#,
    );
    let o = ffwm(&cfg, &tmp.path().join("out"), &["phasematch"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let (h, rows) = read_rows(&tmp.path().join("out/quartets.csv"));
    assert!(!h.is_empty());
    assert!(rows.is_empty());
}

#[test]
fn config_errors_exit_with_2() {
    let tmp = tempfile::tempdir().unwrap();
    let missing = ffwm(&tmp.path().join("nope.json"), tmp.path(), &["sweep"]);
    assert_eq!(missing.status.code(), Some(2));

    let bad = write_config(tmp.path(), "{ not json");
    assert_eq!(ffwm(&bad, tmp.path(), &["sweep"]).status.code(), Some(2));

    let unknown = write_config(tmp.path(), r#"{"schema_version": 1, "sweeep": {}}"#);
    assert_eq!(
        ffwm(&unknown, tmp.path(), &["sweep"]).status.code(),
        Some(2)
    );

    let version = write_config(tmp.path(), r#"{"schema_version": 7}"#);
    assert_eq!(
        ffwm(&version, tmp.path(), &["sweep"]).status.code(),
        Some(2)
    );

    let grid = write_config(
        tmp.path(),
        r#"{"schema_version": 1, "sweep": {"q_bar": [1e5, 1e4], "r_zpl": [0.48], "p_budget_w": [1.0]}}"#,
    );
    assert_eq!(ffwm(&grid, tmp.path(), &["sweep"]).status.code(), Some(2));

    let missing_table = write_config(
        tmp.path(),
        r#"{"schema_version": 1, "material": {"path": "absent.csv"}}"#,
    );
    assert_eq!(
        ffwm(&missing_table, tmp.path(), &["noise"]).status.code(),
        Some(2)
    );
}

#[test]
fn zero_threads_is_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    let o = ffwm(
        &configs().join("single_point.json"),
        tmp.path(),
        &["--threads", "0", "sweep"],
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn single_point_sweep_has_one_row() {
    let tmp = tempfile::tempdir().unwrap();
    let o = ffwm(&configs().join("single_point.json"), tmp.path(), &["sweep"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let (h, rows) = read_rows(&tmp.path().join("sweep.csv"));
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][column(&h, "flag")], "ok");
    assert!(tmp.path().join("sweep.svg").exists());
}

#[test]
fn sweep_is_byte_identical_across_thread_counts() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = configs().join("saturation_map.json");
    let mut seen = Vec::new();
    for (i, threads) in ["1", "4"].iter().enumerate() {
        let dir = tmp.path().join(i.to_string());
        let o = ffwm(&cfg, &dir, &["--threads", threads, "saturation"]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&o.stderr)
        );
        seen.push((
            std::fs::read(dir.join("saturation.csv")).unwrap(),
            std::fs::read(dir.join("saturation.manifest.json")).unwrap(),
        ));
    }
    assert_eq!(seen[0], seen[1]);
}

#[test]
fn lossless_emitter_has_unit_beta() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        r#"{"schema_version": 1, "efficiency": {"q_bar": 1e9, "p_budget_w": 1.0, "r_zpl": 1.0, "eta_spatial": 0.66}}"#,
    );
    let o = ffwm(&cfg, &tmp.path().join("out"), &["efficiency"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let (h, rows) = read_rows(&tmp.path().join("out/efficiency.csv"));
    let beta: f64 = rows[0][column(&h, "beta")].parse().unwrap();
    assert!((beta - 1.0).abs() < 1e-9, "{beta}");
}

#[test]
fn every_command_writes_a_manifest() {
    let tmp = tempfile::tempdir().unwrap();
    for (cfg, cmd) in [
        ("diamond_ring.json", "efficiency"),
        ("diamond_ring.json", "noise"),
        ("beam_gaussian.json", "beam"),
    ] {
        let o = ffwm(&configs().join(cfg), tmp.path(), &[cmd]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{cmd}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        let m: serde_json::Value = serde_json::from_slice(
            &std::fs::read(tmp.path().join(format!("{cmd}.manifest.json"))).unwrap(),
        )
        .unwrap();
        assert_eq!(m["command"], cmd);
        assert_eq!(m["constants_sha256"].as_str().unwrap().len(), 64);
        for f in m["outputs"].as_array().unwrap() {
            assert!(tmp.path().join(f.as_str().unwrap()).exists(), "{f}");
        }
    }
}
