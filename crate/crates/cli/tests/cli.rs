use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qmtraj(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmtraj"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("spawn qmtraj")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

const SMALL: &[&str] = &["--modes", "12", "--half-width", "20", "--x-points", "401", "--time-limit", "10"];

#[test]
fn synthesize_with_defaults_writes_all_artifacts() {
    let tmp = tempfile::tempdir().unwrap();
    let out = qmtraj(tmp.path(), &["synthesize", "-o", "run"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = tmp.path().join("run");
    for name in ["manifest.json", "timings.json", "timeseries.csv", "snapshots.csv", "coefficients.json"] {
        assert!(run.join(name).exists(), "missing {name}");
    }
    let m = json(&run.join("manifest.json"));
    assert_eq!(m["config"]["modes"], 40);
    assert_eq!(m["config"]["w2"], 4.0);
    assert!(m["results"]["relative_mass_drift"].as_f64().unwrap() < 0.05);
    let ts = fs::read_to_string(run.join("timeseries.csv")).unwrap();
    assert_eq!(ts.lines().next(), Some("t,x_M,sigma_x"));
    assert_eq!(ts.lines().count(), 62);

    let out = qmtraj(tmp.path(), &["verify", "--input", "run/manifest.json", "-o", "check"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&tmp.path().join("check/report.json"));
    assert_eq!(r["passed"], true);
    assert_eq!(r["source"]["subcommand"], "synthesize");
}

#[test]
fn reruns_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    for dir in ["a", "b"] {
        let mut args = vec!["synthesize", "-o", dir];
        args.extend_from_slice(SMALL);
        assert!(qmtraj(tmp.path(), &args).status.success());
    }
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    let mut compared = 0;
    for entry in fs::read_dir(&a).unwrap() {
        let name = entry.unwrap().file_name();
        if name == "timings.json" {
            continue;
        }
        let (x, y) = (fs::read(a.join(&name)).unwrap(), fs::read(b.join(&name)).unwrap());
        // The output directory is part of the echoed configuration.
        let strip = |v: Vec<u8>, d: &str| String::from_utf8(v).unwrap().replace(&format!("\"output\": \"{d}\""), "");
        assert_eq!(strip(x, "a"), strip(y, "b"), "{name:?} differs");
        compared += 1;
    }
    assert_eq!(compared, 4);
}

#[test]
fn negative_dx_names_the_field() {
    let tmp = tempfile::tempdir().unwrap();
    let out = qmtraj(tmp.path(), &["synthesize", "--dx", "-3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("`dx`"), "{err}");
    assert!(!tmp.path().join("out").exists());
}

#[test]
fn config_file_values_yield_to_flags() {
    let tmp = tempfile::tempdir().unwrap();
    fs::write(tmp.path().join("run.toml"), "modes = 7\nhalf_width = 12.0\noutput = \"from-file\"\n").unwrap();
    let out = qmtraj(tmp.path(), &["basis", "--config", "run.toml", "--modes", "9"]);
    assert!(out.status.success());
    let m = json(&tmp.path().join("from-file/manifest.json"));
    assert_eq!(m["config"]["modes"], 9);
    assert_eq!(m["config"]["half_width"], 12.0);
    let csv = fs::read_to_string(tmp.path().join("from-file/basis.csv")).unwrap();
    assert_eq!(csv.lines().count(), 11);
    assert!(csv.starts_with("n,parity,k_n,phi_n,omega_n\n0,even,"));
}

#[test]
fn unknown_config_keys_are_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    fs::write(tmp.path().join("bad.toml"), "mode = 7\n").unwrap();
    let out = qmtraj(tmp.path(), &["basis", "--config", "bad.toml"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("mode"));
}

#[test]
fn oversized_time_window_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    let out = qmtraj(tmp.path(), &["synthesize", "--half-time", "39"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`half_time`"));
}

#[test]
fn missing_input_is_an_io_error() {
    let tmp = tempfile::tempdir().unwrap();
    let out = qmtraj(tmp.path(), &["verify", "--input", "nowhere/manifest.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nowhere/manifest.json"));
}

#[test]
fn bad_thread_count_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_qmtraj"))
        .current_dir(tmp.path())
        .env("QMTRAJ_THREADS", "many")
        .arg("basis")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("QMTRAJ_THREADS"));
}

#[test]
fn verify_exit_status_follows_the_checks() {
    let tmp = tempfile::tempdir().unwrap();
    let naive = qmtraj(tmp.path(), &["verify", "--target", "naive-transmitted", "--checks", "boundary", "-o", "naive"]);
    assert_eq!(naive.status.code(), Some(1));
    let r = json(&tmp.path().join("naive/report.json"));
    assert_eq!(r["report"]["boundary"]["ehrenfest_pass"], false);
    let fixed = qmtraj(tmp.path(), &["verify", "--target", "transmitted", "--checks", "unitarity,boundary", "-o", "fixed"]);
    assert!(fixed.status.success());
    let r = json(&tmp.path().join("fixed/report.json"));
    assert_eq!(r["report"]["boundary"]["energy_pass"], true);
    assert!(r["report"]["hierarchy"].is_null());
}

#[test]
fn target_and_mixture_tables() {
    let tmp = tempfile::tempdir().unwrap();
    assert!(qmtraj(tmp.path(), &["target", "--target", "transmitted", "-o", "t", "--x-points", "401", "--time-limit", "2"]).status.success());
    let csv = fs::read_to_string(tmp.path().join("t/target.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 5 * 401);
    let m = json(&tmp.path().join("t/manifest.json"));
    for t in m["results"]["totals"].as_array().unwrap() {
        assert!((t["mass"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    }

    assert!(qmtraj(tmp.path(), &["mixture", "--k", "1.0", "-o", "m", "--x-points", "201"]).status.success());
    let m = json(&tmp.path().join("m/manifest.json"));
    assert!((m["results"]["weights"]["transmitted"].as_f64().unwrap() - 0.5).abs() < 1e-15);
    let last = fs::read_to_string(tmp.path().join("m/mixture.csv")).unwrap();
    let row: Vec<f64> = last.lines().last().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert!((row[1] - 0.5).abs() < 1e-10 && (row[2] - 0.5).abs() < 1e-10);
}

#[test]
fn wigner_observables_of_the_oscillator() {
    let tmp = tempfile::tempdir().unwrap();
    let out = qmtraj(tmp.path(), &["wigner", "--wigner-state", "ho-ground", "--omega0", "2", "--wigner-points", "256", "-o", "w"]);
    assert!(out.status.success());
    let o = json(&tmp.path().join("w/observables.json"));
    assert!((o["e"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert!((o["de"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(o["config"]["subcommand"], "wigner");
    let csv = fs::read_to_string(tmp.path().join("w/wigner.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 256 * 256);
}

#[test]
fn two_particle_demo_and_file_input() {
    let tmp = tempfile::tempdir().unwrap();
    assert!(qmtraj(tmp.path(), &["two-particle", "-o", "p"]).status.success());
    let r = json(&tmp.path().join("p/two_particle.json"));
    assert!(r["continuity"]["particle1"].as_f64().unwrap() < 1e-3);
    assert!(r["frames"][0]["separability"]["r0"].as_f64().unwrap() < 1e-10);

    assert!(qmtraj(tmp.path(), &["two-particle", "--demo", "entangled", "-o", "e"]).status.success());
    let r = json(&tmp.path().join("e/two_particle.json"));
    assert!(r["frames"][0]["separability"]["r0"].as_f64().unwrap() > 0.1);
    assert!(r["frames"][0]["observables"].is_null());

    // A single static product frame given as a file.
    let n = 21;
    let grid = serde_json::json!({ "lower": -5.0, "upper": 5.0, "count": n });
    let bump = |i: usize| (-(i as f64 - 10.0).powi(2) / 8.0).exp();
    let table = |f: &dyn Fn(usize, usize) -> [f64; 2]| -> Vec<Vec<[f64; 2]>> { (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect() };
    let file = serde_json::json!({
        "x1": grid, "x2": grid, "masses": [1.0, 3.0], "hbar": 1.0,
        "frames": [{
            "t": 0.0,
            "diagonal": table(&|i, j| [bump(i) * bump(j), 0.0]),
            "d1": table(&|i, j| [0.0, 0.5 * bump(i) * bump(j)]),
            "d2": table(&|i, j| [0.0, 0.0 * bump(i) * bump(j)]),
        }]
    });
    fs::write(tmp.path().join("field.json"), file.to_string()).unwrap();
    let out = qmtraj(tmp.path(), &["two-particle", "--input", "field.json", "-o", "f"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&tmp.path().join("f/two_particle.json"));
    assert!(r["continuity"].is_null());
    assert!((r["frames"][0]["observables"]["p1"].as_f64().unwrap() - 0.5).abs() < 1e-12);
}
