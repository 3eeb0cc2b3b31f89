use std::path::Path;
use std::process::{Command, Output};

fn ridgelab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ridgelab")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

const RADON: &str = "kind = radon-check\ntarget = gaussian\ntarget.sigma2 = 0.5\nd = 2\nchecks = 8\n";

#[test]
fn version_names_both_crates() {
    let out = ridgelab(&["version"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("ridgelab ") && text.contains("ridge-core "));
}

#[test]
fn successful_run_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "radon.conf", &format!("{RADON}sinogram = true\n"));
    let out_dir = dir.path().join("out");
    let out = ridgelab(&["run", &cfg, "--out", out_dir.to_str().unwrap(), "--threads", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(out_dir.join("radon-check.csv")).unwrap();
    assert!(csv.starts_with("check,omega_1,omega_2,b,spectral,direct,rel_err\n"));
    assert_eq!(csv.lines().count(), 9);
    let sino = std::fs::read_to_string(out_dir.join("radon-check_sinogram.csv")).unwrap();
    assert!(sino.starts_with("omega_index,b,value\n"));
    let report = std::fs::read_to_string(out_dir.join("radon-check.report.txt")).unwrap();
    assert!(report.contains("wall_clock_seconds") && report.contains("PASS max_rel_err"));
}

#[test]
fn config_errors_exit_with_two_and_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    for (text, needle) in [
        (format!("{RADON}colour = red\n"), "line 6"),
        (format!("{RADON}d = 3\n"), "line 6"),
        ("kind = radon-check\nd = 0\n".to_string(), "line 2"),
        ("kind = rate-sweep\nd = 2\nwidths = \n".to_string(), "line 3"),
    ] {
        let cfg = write(dir.path(), "bad.conf", &text);
        let out = ridgelab(&["run", &cfg, "--out", dir.path().to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2));
        assert!(String::from_utf8_lossy(&out.stderr).contains(needle), "{text}");
    }
}

#[test]
fn tolerance_failures_exit_with_three_after_writing() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "strict.conf", &format!("{RADON}tolerance = 1e-300\n"));
    let out = ridgelab(&["run", &cfg, "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let report = std::fs::read_to_string(dir.path().join("radon-check.report.txt")).unwrap();
    assert!(report.contains("FAIL max_rel_err"));
}

#[test]
fn io_and_format_errors_exit_with_four() {
    let dir = tempfile::tempdir().unwrap();
    let out = ridgelab(&["run", dir.path().join("missing.conf").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    let net = write(dir.path(), "bad.ridgenet", "NOTRIDGE v1 d=1 k=1 n=0\n");
    let pts = write(dir.path(), "pts.csv", "0.5\n");
    let out = ridgelab(&["eval", &net, "--points", &pts]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn saved_networks_evaluate_from_the_command_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "peano.conf",
        "kind = peano-reconstruct\nd = 1\nk = 1\nrefine = false\nsave_network = true\n",
    );
    let out = ridgelab(&["run", &cfg, "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let net = dir.path().join("peano-reconstruct_network.ridgenet");
    assert!(std::fs::read_to_string(&net).unwrap().starts_with("RIDGENET v1 d=1 k=1 n="));
    let pts = write(dir.path(), "pts.csv", "x\n0\n0.5\n-1\n");
    let out = ridgelab(&["eval", net.to_str().unwrap(), "--points", &pts]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "x_1,value");
    for (row, x) in rows[1..].iter().zip([0.0f64, 0.5, -1.0]) {
        let v: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
        assert!((v - (-x * x / 2.0).exp()).abs() < 1e-3);
    }
}

#[test]
fn repeated_runs_give_identical_csv_and_seeds_matter() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "sweep.conf",
        "kind = rate-sweep\nd = 2\nk = 1\nsphere_level = 5\nline_n = 512\nwidths = 8,16,32\nrepeats = 2\npoints = 2000\nseed = 9\n",
    );
    let runs: Vec<_> = ["a", "b", "c"]
        .iter()
        .map(|sub| {
            let out = dir.path().join(sub);
            let mut args = vec!["run", cfg.as_str(), "--out", out.to_str().unwrap()];
            if *sub == "c" {
                args.extend(["--seed", "10"]);
            }
            assert_eq!(ridgelab(&args).status.code(), Some(0));
            std::fs::read(out.join("rate-sweep_runs.csv")).unwrap()
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    assert_ne!(runs[0], runs[2]);
}
