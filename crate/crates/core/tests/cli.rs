use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use bipolariton::io::parse_csv;

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("bipol-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&d);
    fs::create_dir_all(&d).unwrap();
    d
}

fn bipol(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bipol"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("BIPOL_THREADS")
        .output()
        .unwrap()
}

fn table(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    parse_csv(&fs::read_to_string(path).unwrap()).unwrap()
}

fn col(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap()
}

#[test]
fn every_file_carries_the_schema_line() {
    let d = scratch("schema");
    for args in [&["dispersion"][..], &["spectrum", "--n", "20"], &["amplitudes", "--state", "2", "--n", "20", "--k-index", "3"]] {
        assert!(bipol(args, &d).status.success(), "{args:?}");
    }
    let mut n = 0;
    for e in fs::read_dir(&d).unwrap() {
        let p = e.unwrap().path();
        assert!(fs::read_to_string(&p).unwrap().starts_with("# schema=1\n"), "{}", p.display());
        n += 1;
    }
    assert_eq!(n, 4);
    let (h, rows) = table(&d.join("amplitudes_2.csv"));
    assert_eq!(h.join(","), "n,A_re,A_im,BS_re,BS_im,BA_re,BA_im,C_re,C_im");
    assert_eq!(rows.len(), 20);
    let (h, _) = table(&d.join("spectrum.csv"));
    assert_eq!(h.join(","), "state_index,K,energy,band_class,w_AA,w_AB,w_CC,delta_A,flag");
}

#[test]
fn identical_runs_are_byte_identical() {
    let a = scratch("det-a");
    let b = scratch("det-b");
    let args = ["bound-search", "--n", "30", "--potential", "nna", "--d-strength", "-2.5"];
    assert!(bipol(&args, &a).status.success());
    let out = Command::new(env!("CARGO_BIN_EXE_bipol"))
        .args(args)
        .arg("--out")
        .arg(&b)
        .env("BIPOL_THREADS", "3")
        .output()
        .unwrap();
    assert!(out.status.success());
    for f in ["bound.csv", "bound_exact.csv"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap());
    }
    let (h, rows) = table(&a.join("bound.csv"));
    assert_eq!(&h[..7].join(","), "K,D,ell,root_energy,eig_energy,match_residual,regime");
    assert_eq!(rows.len(), 1);
}

#[test]
fn figure_four_has_three_blockade_series() {
    let d = scratch("fig4");
    assert!(bipol(&["reproduce", "--figure", "4"], &d).status.success());
    let (h, rows) = table(&d.join("delta_a.csv"));
    let c = col(&h, "ell");
    let mut ells: Vec<&str> = rows.iter().map(|r| r[c].as_str()).collect();
    ells.dedup();
    assert_eq!(ells, ["0", "3", "10"]);
}

#[test]
fn noninteracting_spectrum_has_no_bunching() {
    let d = scratch("free");
    let cfg = d.join("free.json");
    fs::write(&cfg, r#"{"units": {"energy": "G", "length": "a"}, "params": {"n_sites": 30, "hard_core": false}}"#).unwrap();
    assert!(bipol(&["spectrum", "--config", cfg.to_str().unwrap()], &d).status.success());
    let (h, rows) = table(&d.join("spectrum.csv"));
    let c = col(&h, "delta_A");
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r[c].parse::<f64>().unwrap() == 0.0));
}

#[test]
fn oracle_check_passes() {
    let d = scratch("oracle");
    let out = bipol(&["oracle-check"], &d);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("oracle.json")).unwrap()).unwrap();
    assert_eq!(doc["pass"], true);
    assert!(doc["checks"].as_array().unwrap().len() > 20);
}

#[test]
fn sweep_scenario_adds_axis_columns_and_json() {
    let d = scratch("sweep");
    let cfg = d.join("scan.json");
    fs::write(
        &cfg,
        r#"{
            "units": {"energy": "G", "length": "a"},
            "params": {"n_sites": 24},
            "sweep": [{"parameter": "blockade_cells", "values": [0, 2]}, {"parameter": "detuning", "values": [0.1, 0.5]}],
            "options": {"k_indices": [0, 2]},
            "emit": ["csv", "json"]
        }"#,
    )
    .unwrap();
    let out = bipol(&["gap-scan", "--config", cfg.to_str().unwrap(), "--threads", "2"], &d);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (h, rows) = table(&d.join("gap_summary.csv"));
    assert_eq!(&h[..3], ["blockade_cells", "detuning", "K"]);
    assert_eq!(rows.len(), 8);
    assert_eq!((rows[3][0].as_str(), rows[4][0].as_str()), ("0", "2"));
    assert_eq!(rows[2][1].parse::<f64>().unwrap(), 0.5);
    let j: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("gap_summary.json")).unwrap()).unwrap();
    assert_eq!(j["rows"].as_array().unwrap().len(), 8);
}

#[test]
fn usage_errors_exit_nonzero() {
    let d = scratch("usage");
    for args in [&["frobnicate"][..], &["spectrum", "--bogus"], &["reproduce", "--figure", "9"], &["spectrum", "--potential", "yukawa"]] {
        let out = bipol(args, &d);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn failed_runs_leave_diagnostics() {
    let d = scratch("diag");
    let out = bipol(&["amplitudes", "--state", "100000", "--n", "20"], &d);
    assert_eq!(out.status.code(), Some(1));
    assert!(fs::read_to_string(d.join("diagnostics.txt")).unwrap().contains("state"));
    let bad = d.join("bad.json");
    fs::write(&bad, r#"{"sweep": [{"parameter": "colour", "values": [1]}]}"#).unwrap();
    assert_eq!(bipol(&["spectrum", "--config", bad.to_str().unwrap()], &d).status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_bipol"))
        .args(["dispersion", "--out"])
        .arg(&d)
        .env("BIPOL_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
