//! End-to-end acceptance suite. Every criterion is expressed as one or more
//! experiment configs; the binary prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;
use std::time::Instant;

use ridgelab::{parse_config, run, ExperimentReport};

const SLICE_TOL: f64 = 1e-6;
const SLICE_CHECKS: usize = 50;
const INVERSION_TOL: f64 = 1e-3;
const INVERSION_CHECKS: usize = 100;
const PROFILE_TOL: f64 = 1e-6;
const PEANO_TOL: f64 = 1e-3;
const PEANO_CHECKS: usize = 200;
const LIFT_TOL: f64 = 1e-10;
const LIFT_CHECKS: usize = 1000;
const VARIATION_TOL: f64 = 0.05;
const SAMPLING_SLOPE_MAX: f64 = -0.45;
const QUADRATURE_SLOPE_MAX: f64 = -1.0;
const SAMPLING_REPEATS: usize = 5;
const MOLLIFY_SLOPE_MARGIN: f64 = 0.2;
const SCHEDULE_SLACK: f64 = 1.5;
const WIDTHS: &str = "16,32,64,128,256,512,1024";
const EPSILONS: &str = "0.25,0.125,0.0625,0.03125,0.015625";
const SWEEP_SEED: u64 = 1;

/// Outputs of the first run of criteria 7-9, compared against a rerun.
static FIRST_RUN: OnceLock<tempfile::TempDir> = OnceLock::new();

fn first_run_dir() -> PathBuf {
    FIRST_RUN.get_or_init(|| tempfile::tempdir().expect("tempdir")).path().to_path_buf()
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn execute(text: &str) -> ExperimentReport {
    let cfg = parse_config(text).unwrap_or_else(|e| panic!("invalid acceptance config: {e}\n{text}"));
    run(&cfg).unwrap_or_else(|e| panic!("experiment failed to run: {e}\n{text}"))
}

fn summary(report: &ExperimentReport, key: &str) -> String {
    report.summary.iter().find(|(k, _)| k == key).map(|(_, v)| v.clone()).unwrap_or_default()
}

fn failed_checks(report: &ExperimentReport) -> Vec<String> {
    report
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{} = {:e} ({})", c.name, c.value, c.limit))
        .collect()
}

/// Runs each config; the criterion passes when every check of every run does.
fn all_cases(cases: Vec<(String, String)>, show: impl Fn(&ExperimentReport) -> String) -> Outcome {
    run_cases(cases, None, show)
}

fn run_cases(cases: Vec<(String, String)>, save: Option<&Path>, show: impl Fn(&ExperimentReport) -> String) -> Outcome {
    let mut failures = Vec::new();
    let mut details = Vec::new();
    for (label, text) in cases {
        let report = execute(&text);
        if let Some(dir) = save {
            report.write(dir).expect("write outputs");
        }
        if report.checks.is_empty() {
            failures.push(format!("{label}: no checks recorded"));
        }
        for f in failed_checks(&report) {
            failures.push(format!("{label}: {f}"));
        }
        details.push(format!("{label} {}", show(&report)));
    }
    Outcome { passed: failures.is_empty(), detail: if failures.is_empty() { details.join("; ") } else { failures.join("; ") } }
}

fn gaussian(sigma2: f64, d: usize) -> String {
    format!("target = gaussian\ntarget.sigma2 = {sigma2}\nd = {d}\n")
}

fn fourier_slice() -> Outcome {
    let cases = [(2, "0.2,-0.3"), (3, "0.1,0.2,-0.2")]
        .iter()
        .map(|(d, c)| {
            (
                format!("d={d}"),
                format!(
                    "kind = radon-check\n{}target.center = {c}\nchecks = {SLICE_CHECKS}\ntolerance = {SLICE_TOL}\nseed = 3\n",
                    gaussian(0.5, *d)
                ),
            )
        })
        .collect();
    all_cases(cases, |r| format!("max_rel_err={}", summary(r, "max_rel_err")))
}

fn inversion() -> Outcome {
    let text = format!(
        "kind = inversion-check\n{}sphere_level = 8\nline_n = 2048\nline_l = 4\nchecks = {INVERSION_CHECKS}\ntolerance = {INVERSION_TOL}\n",
        gaussian(1.0, 2)
    );
    all_cases(vec![("d=2".into(), text)], |r| {
        format!("base={} refined={}", summary(r, "max_rel_error_base"), summary(r, "max_rel_error_refined"))
    })
}

fn profile_identity() -> Outcome {
    let cases = [(1.0, "0"), (0.3, "0.25")]
        .iter()
        .map(|(s2, c)| {
            (
                format!("sigma2={s2}"),
                format!("kind = profile-identity\n{}target.center = {c}\ntolerance = {PROFILE_TOL}\n", gaussian(*s2, 1)),
            )
        })
        .collect();
    all_cases(cases, |r| format!("max_abs_err={}", summary(r, "max_abs_err")))
}

fn peano() -> Outcome {
    let mut cases = Vec::new();
    for d in [1, 2] {
        for k in 0..=2 {
            cases.push((
                format!("d={d},k={k}"),
                format!(
                    "kind = peano-reconstruct\n{}k = {k}\nchecks = {PEANO_CHECKS}\ntolerance = {PEANO_TOL}\nseed = 2\n",
                    gaussian(1.0, d)
                ),
            ));
        }
    }
    all_cases(cases, |r| format!("{}->{}", summary(r, "sup_error_base"), summary(r, "sup_error_refined")))
}

fn lift() -> Outcome {
    let text = format!("kind = lift-check\nd = 2\nk = 3\nchecks = {LIFT_CHECKS}\ntolerance = {LIFT_TOL}\nseed = 4\n");
    all_cases(vec![("d=2,k<=3".into(), text)], |r| format!("max_abs_err={}", summary(r, "max_abs_err")))
}

fn variation() -> Outcome {
    let mut cases = Vec::new();
    for s2 in [0.5, 1.0] {
        for d in [1, 2] {
            for k in [0, 1] {
                cases.push((
                    format!("s2={s2},d={d},k={k}"),
                    format!("kind = variation-bound\n{}k = {k}\ntolerance = {VARIATION_TOL}\n", gaussian(s2, d)),
                ));
            }
        }
    }
    all_cases(cases, |r| format!("ratio={} change={}", summary(r, "ratio_base"), summary(r, "ratio_change")))
}

fn sampling_config() -> String {
    format!(
        "kind = rate-sweep\n{}k = 1\np = 2\nwidths = {WIDTHS}\nrepeats = {SAMPLING_REPEATS}\nseed = {SWEEP_SEED}\nconstructor = sampling\nslope_max = {SAMPLING_SLOPE_MAX}\noutput = sampling\n",
        gaussian(1.0, 2)
    )
}

fn quadrature_config() -> String {
    format!(
        "kind = rate-sweep\n{}k = 1\np = 2\nwidths = {WIDTHS}\nconstructor = quadrature\nquadrature_level = 3\nslope_max = {QUADRATURE_SLOPE_MAX}\noutput = quadrature\n",
        gaussian(1.0, 2)
    )
}

fn schedule_config() -> String {
    format!(
        "kind = rate-sweep\n{}k = 1\ns = 2\np = 2\nwidths = {WIDTHS}\nrepeats = {SAMPLING_REPEATS}\nseed = {SWEEP_SEED}\nschedule = epsilon\nmonotone_slack = {SCHEDULE_SLACK}\noutput = schedule\n",
        gaussian(1.0, 2)
    )
}

fn mollify_configs() -> Vec<(String, String)> {
    let mut out = Vec::new();
    for d in [1, 2] {
        for s in 1..=3u32 {
            out.push((
                format!("d={d},s={s}"),
                format!(
                    "kind = mollify-sweep\n{}s = {s}\np = 2\nepsilons = {EPSILONS}\nslope_min = {}\noutput = mollify_d{d}_s{s}\n",
                    gaussian(1.0, d),
                    s as f64 - MOLLIFY_SLOPE_MARGIN
                ),
            ));
        }
    }
    out
}

fn slope(r: &ExperimentReport) -> String {
    r.fit.map_or_else(|| "none".into(), |f| format!("slope={:.3}", f.slope))
}

fn width_sweep() -> Outcome {
    let cases = vec![("sampling".into(), sampling_config()), ("quadrature".into(), quadrature_config())];
    run_cases(cases, Some(&first_run_dir()), slope)
}

fn mollification() -> Outcome {
    run_cases(mollify_configs(), Some(&first_run_dir()), slope)
}

fn schedule() -> Outcome {
    run_cases(vec![("d=2,k=1".into(), schedule_config())], Some(&first_run_dir()), |r| {
        let worst = r.checks.iter().find(|c| c.name == "max_step_ratio").map_or(f64::NAN, |c| c.value);
        format!("max_step_ratio={worst:.3} {}", slope(r))
    })
}

fn csv_bodies(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    std::fs::read_dir(dir)
        .expect("output directory")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "csv"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).expect("csv file")))
        .collect()
}

/// Reruns criteria 7-9 on a single worker thread; CSV files must match the
/// first run byte for byte.
fn determinism() -> Outcome {
    let mut configs = vec![sampling_config(), quadrature_config(), schedule_config()];
    configs.extend(mollify_configs().into_iter().map(|(_, c)| c));
    let second = tempfile::tempdir().expect("tempdir");
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().expect("thread pool");
    for text in &configs {
        single.install(|| execute(text)).write(second.path()).expect("write outputs");
    }
    let (a, b) = (csv_bodies(&first_run_dir()), csv_bodies(second.path()));
    let differing: Vec<&String> = a.keys().filter(|k| a.get(*k) != b.get(*k)).collect();
    let passed = !a.is_empty() && a.len() == b.len() && differing.is_empty();
    Outcome { passed, detail: format!("{} csv files compared, {} differ {differing:?}", a.len(), differing.len()) }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 fourier-slice consistency", fourier_slice),
        ("2 inversion round-trip", inversion),
        ("3 one-dimensional profile identity", profile_identity),
        ("4 peano reconstruction", peano),
        ("5 polynomial lift exactness", lift),
        ("6 variation-bound stability", variation),
        ("7 width sweep", width_sweep),
        ("8 mollification rate", mollification),
        ("9 schedule coupling", schedule),
        ("10 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        if !outcome.passed {
            failed += 1;
        }
        println!(
            "{} criterion {name} [{:.1}s]: {}",
            if outcome.passed { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            outcome.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
