//! Executes experiments and assembles their reports.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use ridge_core::fourier_radon::{filtered_profile, radon_direct, radon_transform, sinogram, Reconstructor};
use ridge_core::metrics::{lp_from_differences, rate_fit, Abscissa, ErrorSeries, Norm};
use ridge_core::mollify::{epsilon_schedule, mollified_target, Mollifier, MollifierSpec};
use ridge_core::network::{poly_to_ridge, quadrature_network, quadrature_network_with_knots, sampled_network};
use ridge_core::polynomial::{monomial_exponents, PolynomialPart};
use ridge_core::quadrature::sample_directions;
use ridge_core::ridge_density::{sobolev_seminorm, DirectionEntry, PeanoDensity, SmoothnessSpec};
use ridge_core::targets::{make_cusp_radial, make_gaussian};
use ridge_core::{
    BallSampler, GaussianSpec, LineGrid, RateFit, ShallowNetwork, SpectralOptions, SphereGrid, TargetFunction,
};

use crate::config::{Constructor, ExperimentConfig, ExperimentKind, Schedule, TargetConfig};
use crate::error::{AppError, AppResult};
use crate::netfile::write_network;
use crate::seeds::derive_seed;

/// A CSV table; `suffix` distinguishes secondary files of one experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub suffix: Option<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub footer: Option<String>,
}

impl Table {
    fn new(suffix: Option<&str>, header: &[&str]) -> Self {
        Self {
            suffix: suffix.map(str::to_string),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            footer: None,
        }
    }

    pub fn to_csv(&self) -> AppResult<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| AppError::Config(format!("csv encoding failed: {e}"));
        w.write_record(&self.header).map_err(csv_err)?;
        for r in &self.rows {
            w.write_record(r).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| AppError::Config(format!("csv encoding failed: {e}")))?;
        let mut s = String::from_utf8(bytes).expect("csv output is utf-8");
        if let Some(f) = &self.footer {
            let _ = writeln!(s, "# {f}");
        }
        Ok(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub limit: String,
    pub passed: bool,
}

#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub tables: Vec<Table>,
    pub summary: Vec<(String, String)>,
    pub checks: Vec<Check>,
    pub fit: Option<RateFit>,
    pub networks: Vec<(String, ShallowNetwork)>,
    pub wall_clock: Duration,
}

impl ExperimentReport {
    fn new(config: &ExperimentConfig) -> Self {
        Self {
            config: config.clone(),
            tables: Vec::new(),
            summary: Vec::new(),
            checks: Vec::new(),
            fit: None,
            networks: Vec::new(),
            wall_clock: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn note(&mut self, key: &str, value: impl ToString) {
        self.summary.push((key.to_string(), value.to_string()));
    }

    fn check(&mut self, name: &str, value: f64, limit: String, passed: bool) {
        self.checks.push(Check { name: name.to_string(), value, limit, passed });
    }

    pub fn table(&self, suffix: Option<&str>) -> Option<&Table> {
        self.tables.iter().find(|t| t.suffix.as_deref() == suffix)
    }

    fn file_name(&self, suffix: Option<&str>, ext: &str) -> String {
        match suffix {
            Some(s) => format!("{}_{s}.{ext}", self.config.output),
            None => format!("{}.{ext}", self.config.output),
        }
    }

    pub fn report_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "[config]");
        s.push_str(&self.config.echo());
        let _ = writeln!(s, "\n[summary]");
        for (k, v) in &self.summary {
            let _ = writeln!(s, "{k} = {v}");
        }
        if let Some(fit) = &self.fit {
            let _ = writeln!(s, "slope = {:e}", fit.slope);
            let _ = writeln!(s, "intercept = {:e}", fit.intercept);
            let _ = writeln!(s, "residual = {:e}", fit.residual);
        }
        if !self.checks.is_empty() {
            let _ = writeln!(s, "\n[checks]");
            for c in &self.checks {
                let _ = writeln!(s, "{} {} = {:e} ({})", if c.passed { "PASS" } else { "FAIL" }, c.name, c.value, c.limit);
            }
        }
        let _ = writeln!(s, "\n[run]");
        let _ = writeln!(s, "wall_clock_seconds = {:.3}", self.wall_clock.as_secs_f64());
        let _ = writeln!(s, "version = {}", crate::VERSION);
        s
    }

    /// Writes CSV tables, networks and the report file into `dir`.
    pub fn write(&self, dir: &Path) -> AppResult<Vec<PathBuf>> {
        std::fs::create_dir_all(dir).map_err(|e| AppError::io(dir, e))?;
        let mut written = Vec::new();
        for t in &self.tables {
            let path = dir.join(self.file_name(t.suffix.as_deref(), "csv"));
            std::fs::write(&path, t.to_csv()?).map_err(|e| AppError::io(&path, e))?;
            written.push(path);
        }
        for (name, net) in &self.networks {
            let path = dir.join(self.file_name(Some(name), "ridgenet"));
            write_network(net, &path)?;
            written.push(path);
        }
        let path = dir.join(self.file_name(None, "report.txt"));
        std::fs::write(&path, self.report_text()).map_err(|e| AppError::io(&path, e))?;
        written.push(path);
        Ok(written)
    }
}

fn num(v: f64) -> String {
    format!("{v:e}")
}

pub fn build_target(cfg: &ExperimentConfig) -> AppResult<TargetFunction> {
    Ok(match &cfg.target {
        TargetConfig::Gaussian { sigma2, amplitude, center } => make_gaussian(GaussianSpec {
            center: center.clone().unwrap_or_else(|| vec![0.0; cfg.d]),
            width: *sigma2,
            amplitude: *amplitude,
        })?,
        TargetConfig::Cusp { gamma } => make_cusp_radial(*gamma, cfg.d)?,
    })
}

fn line_grid(cfg: &ExperimentConfig) -> AppResult<LineGrid> {
    Ok(LineGrid::new(cfg.line_l, cfg.line_n)?)
}

/// Peano density with directions processed in parallel and reduced in order.
pub fn density(
    f: &TargetFunction,
    k: u32,
    sphere: &SphereGrid,
    grid: &LineGrid,
    opts: &SpectralOptions,
) -> AppResult<PeanoDensity> {
    let entries = sphere
        .nodes()
        .par_iter()
        .zip(sphere.weights().par_iter())
        .map(|(w, wt)| DirectionEntry::new(f, k, w, *wt, grid, opts))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PeanoDensity::assemble(f.dim(), k, sphere, grid, entries)?)
}

fn reconstructor(f: &TargetFunction, sphere: &SphereGrid, grid: &LineGrid, opts: &SpectralOptions) -> AppResult<Reconstructor> {
    let profiles = sphere
        .nodes()
        .par_iter()
        .map(|w| filtered_profile(f, w, 0, grid, opts))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Reconstructor::from_profiles(sphere, profiles)?)
}

fn points(cfg: &ExperimentConfig, label: &str, count: usize) -> AppResult<Vec<Vec<f64>>> {
    Ok(BallSampler::new(cfg.d, cfg.point_mode, count, derive_seed(cfg.seed, label, 0))?.points())
}

fn values(pts: &[Vec<f64>], g: impl Fn(&[f64]) -> f64 + Sync) -> Vec<f64> {
    pts.par_iter().map(|x| g(x)).collect()
}

fn error(pts: &[Vec<f64>], reference: &[f64], g: impl Fn(&[f64]) -> f64 + Sync, norm: Norm, d: usize) -> AppResult<f64> {
    let diffs: Vec<f64> = pts.par_iter().zip(reference.par_iter()).map(|(x, r)| g(x) - r).collect();
    Ok(lp_from_differences(&diffs, norm, d)?)
}

/// Runs one experiment; tolerance failures are recorded as failed checks.
pub fn run(cfg: &ExperimentConfig) -> AppResult<ExperimentReport> {
    let start = Instant::now();
    let mut report = ExperimentReport::new(cfg);
    match cfg.kind {
        ExperimentKind::RadonCheck => radon_check(cfg, &mut report)?,
        ExperimentKind::InversionCheck => inversion_check(cfg, &mut report)?,
        ExperimentKind::VariationBound => variation_bound(cfg, &mut report)?,
        ExperimentKind::PeanoReconstruct => peano_reconstruct(cfg, &mut report)?,
        ExperimentKind::RateSweep => rate_sweep(cfg, &mut report)?,
        ExperimentKind::MollifySweep => mollify_sweep(cfg, &mut report)?,
        ExperimentKind::ProfileIdentity => profile_identity(cfg, &mut report)?,
        ExperimentKind::LiftCheck => lift_check(cfg, &mut report)?,
    }
    report.wall_clock = start.elapsed();
    Ok(report)
}

const RADON_DIRECT_RESOLUTION: usize = 256;
const RADON_KNOT_RANGE: f64 = 1.5;

fn radon_check(cfg: &ExperimentConfig, report: &mut ExperimentReport) -> AppResult<()> {
    let f = build_target(cfg)?;
    let grid = line_grid(cfg)?;
    let opts = SpectralOptions::default();
    let dirs = sample_directions(cfg.d, cfg.checks, derive_seed(cfg.seed, "radon-directions", 0));
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, "radon-knots", 0));
    let knots: Vec<f64> = (0..cfg.checks).map(|_| rng.random_range(-RADON_KNOT_RANGE..RADON_KNOT_RANGE)).collect();
    let rows = dirs
        .par_iter()
        .zip(knots.par_iter())
        .map(|(w, b)| -> AppResult<(f64, f64, f64)> {
            let p = radon_transform(&f, w, &grid, &opts)?;
            let peak = p.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            Ok((p.value_at(*b), radon_direct(&f, w, *b, RADON_DIRECT_RESOLUTION)?, peak))
        })
        .collect::<AppResult<Vec<_>>>()?;

    let mut header = vec!["check".to_string()];
    header.extend((1..=cfg.d).map(|i| format!("omega_{i}")));
    header.extend(["b", "spectral", "direct", "rel_err"].map(String::from));
    let mut t = Table { suffix: None, header, rows: Vec::new(), footer: None };
    let mut worst = 0.0f64;
    for (i, ((w, b), (spec, direct, peak))) in dirs.iter().zip(&knots).zip(&rows).enumerate() {
        let rel = if *peak > 0.0 { (spec - direct).abs() / peak } else { (spec - direct).abs() };
        worst = worst.max(rel);
        let mut row = vec![i.to_string()];
        row.extend(w.iter().map(|v| num(*v)));
        row.extend([num(*b), num(*spec), num(*direct), num(rel)]);
        t.rows.push(row);
    }
    report.tables.push(t);
    report.note("max_rel_err", num(worst));
    if let Some(tol) = cfg.tolerance {
        report.check("max_rel_err", worst, format!("<= {tol:e}"), worst <= tol);
    }
    if cfg.sinogram {
        let sphere = SphereGrid::new(cfg.d, cfg.sphere_level)?;
        let mut s = Table::new(Some("sinogram"), &["omega_index", "b", "value"]);
        for (i, b, v) in sinogram(&f, &sphere, &grid, &opts)? {
            s.rows.push(vec![i.to_string(), num(b), num(v)]);
        }
        report.tables.push(s);
    }
    Ok(())
}

/// Base and (optionally) refined `(sphere level, line grid)` pairs.
fn stages(cfg: &ExperimentConfig) -> AppResult<Vec<(&'static str, u32, LineGrid)>> {
    let grid = line_grid(cfg)?;
    let mut out = vec![("base", cfg.sphere_level, grid)];
    if cfg.refine {
        out.push(("refined", cfg.sphere_level + 1, grid.refined()));
    }
    Ok(out)
}

fn stage_row(name: &str, level: u32, grid: &LineGrid) -> Vec<String> {
    vec![name.to_string(), level.to_string(), grid.count().to_string(), grid.half_width().to_string()]
}

fn refinement_checks(report: &mut ExperimentReport, name: &str, errors: &[f64], tol: Option<f64>) {
    if let Some(tol) = tol {
        report.check(name, errors[0], format!("<= {tol:e}"), errors[0] <= tol);
    }
    if errors.len() > 1 {
        report.check(
            &format!("{name}_refined"),
            errors[1],
            format!("< {:e}", errors[0]),
            errors[1] < errors[0],
        );
    }
}

fn inversion_check(cfg: &ExperimentConfig, report: &mut ExperimentReport) -> AppResult<()> {
    let f = build_target(cfg)?;
    let opts = SpectralOptions::default();
    let pts = points(cfg, "inversion-points", cfg.checks)?;
    let exact = values(&pts, |x| f.evaluate(x));
    let scale = exact.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    let mut t = Table::new(None, &["stage", "sphere_level", "line_n", "line_l", "max_rel_error"]);
    let mut errors = Vec::new();
    for (name, level, grid) in stages(cfg)? {
        let sphere = SphereGrid::new(cfg.d, level)?;
        let r = reconstructor(&f, &sphere, &grid, &opts)?;
        let e = error(&pts, &exact, |x| r.evaluate(x), Norm::Sup, cfg.d)? / scale;
        let mut row = stage_row(name, level, &grid);
        row.push(num(e));
        t.rows.push(row);
        report.note(&format!("max_rel_error_{name}"), num(e));
        errors.push(e);
    }
    report.tables.push(t);
    refinement_checks(report, "max_rel_error", &errors, cfg.tolerance);
    Ok(())
}

fn variation_bound(cfg: &ExperimentConfig, report: &mut ExperimentReport) -> AppResult<()> {
    let f = build_target(cfg)?;
    let opts = SpectralOptions::default();
    let s = SmoothnessSpec::embedding_order(cfg.d, cfg.k).s;
    let seminorm = sobolev_seminorm(&f, s)?;
    report.note("sobolev_order", s);
    report.note("seminorm", num(seminorm));
    let mut t = Table::new(
        None,
        &["stage", "sphere_level", "line_n", "line_l", "variation_bound", "seminorm", "ratio"],
    );
    let mut ratios = Vec::new();
    for (i, (name, level, grid)) in stages(cfg)?.into_iter().enumerate() {
        let sphere = SphereGrid::new(cfg.d, level)?;
        let dens = density(&f, cfg.k, &sphere, &grid, &opts)?;
        let v = dens.variation_bound();
        let ratio = v / seminorm;
        let mut row = stage_row(name, level, &grid);
        row.extend([num(v), num(seminorm), num(ratio)]);
        t.rows.push(row);
        report.note(&format!("variation_bound_{name}"), num(v));
        report.note(&format!("ratio_{name}"), num(ratio));
        ratios.push(ratio);
        if cfg.profiles && i == 0 {
            for (j, prof) in dens.profiles.iter().enumerate().take(4) {
                let suffix = format!("profile_w{j}_order{}", cfg.k + 1);
                let mut p = Table::new(Some(&suffix), &["b", "value"]);
                for (b, v) in grid.nodes().zip(&prof.values) {
                    p.rows.push(vec![num(b), num(*v)]);
                }
                report.tables.push(p);
            }
        }
    }
    report.tables.push(t);
    if !ratios[0].is_finite() {
        report.check("ratio", ratios[0], "finite".into(), false);
    }
    if ratios.len() > 1 {
        let change = (ratios[1] - ratios[0]).abs() / ratios[0].abs();
        report.note("ratio_change", num(change));
        if let Some(tol) = cfg.tolerance {
            report.check("ratio_change", change, format!("< {tol:e}"), change < tol);
        }
    }
    Ok(())
}

fn peano_reconstruct(cfg: &ExperimentConfig, report: &mut ExperimentReport) -> AppResult<()> {
    let f = build_target(cfg)?;
    let opts = SpectralOptions::default();
    let pts = points(cfg, "peano-points", cfg.checks)?;
    let exact = values(&pts, |x| f.evaluate(x));
    let mut t = Table::new(None, &["stage", "sphere_level", "line_n", "line_l", "width", "l1_mass", "sup_error"]);
    let mut errors = Vec::new();
    for (name, level, grid) in stages(cfg)? {
        let sphere = SphereGrid::new(cfg.d, level)?;
        let net = quadrature_network(&density(&f, cfg.k, &sphere, &grid, &opts)?);
        let e = error(&pts, &exact, |x| net.evaluate(x), Norm::Sup, cfg.d)?;
        let mut row = stage_row(name, level, &grid);
        row.extend([net.width().to_string(), num(net.l1_mass()), num(e)]);
        t.rows.push(row);
        report.note(&format!("sup_error_{name}"), num(e));
        errors.push(e);
        if cfg.save_network && name == "base" {
            report.networks.push(("network".into(), net));
        }
    }
    report.tables.push(t);
    refinement_checks(report, "sup_error", &errors, cfg.tolerance);
    Ok(())
}

fn sweep_checks(report: &mut ExperimentReport, cfg: &ExperimentConfig, series: &[(f64, f64)]) -> AppResult<()> {
    let kind = if cfg.kind == ExperimentKind::MollifySweep { Abscissa::Scale } else { Abscissa::Width };
    let mut t = Table::new(None, &["abscissa", "error"]);
    for (a, e) in series {
        let a = if kind == Abscissa::Width { (*a as usize).to_string() } else { num(*a) };
        t.rows.push(vec![a, num(*e)]);
    }
    if series.len() >= 3 {
        let fit = rate_fit(&ErrorSeries::new(kind, cfg.p, series.to_vec())?)?;
        t.footer = Some(format!("slope={:e},intercept={:e},residual={:e}", fit.slope, fit.intercept, fit.residual));
        if let Some(m) = cfg.slope_max {
            report.check("slope", fit.slope, format!("<= {m}"), fit.slope <= m);
        }
        if let Some(m) = cfg.slope_min {
            report.check("slope", fit.slope, format!(">= {m}"), fit.slope >= m);
        }
        report.fit = Some(fit);
    } else if cfg.slope_max.is_some() || cfg.slope_min.is_some() {
        return Err(AppError::Config("a slope check needs at least three sweep points".into()));
    }
    if let Some(slack) = cfg.monotone_slack {
        let worst = series.windows(2).map(|w| w[1].1 / w[0].1).fold(0.0f64, f64::max);
        report.check("max_step_ratio", worst, format!("<= {slack}"), worst <= slack);
    }
    report.tables.insert(0, t);
    Ok(())
}

fn rate_sweep(cfg: &ExperimentConfig, report: &mut ExperimentReport) -> AppResult<()> {
    let f = build_target(cfg)?;
    let grid = line_grid(cfg)?;
    let opts = SpectralOptions::default();
    let pts = points(cfg, "eval-points", cfg.points)?;
    let exact = values(&pts, |x| f.evaluate(x));

    let eps: Vec<Option<f64>> = cfg
        .widths
        .iter()
        .map(|n| match cfg.schedule {
            Schedule::None => Ok(None),
            Schedule::Epsilon => epsilon_schedule(*n, cfg.d).map(Some),
        })
        .collect::<Result<_, _>>()?;
    let target_for = |e: Option<f64>| -> AppResult<TargetFunction> {
        match e {
            None => Ok(f.clone()),
            Some(e) => Ok(mollified_target(&f, cfg.s, e)?),
        }
    };

    let (sphere, repeats) = match cfg.constructor {
        Constructor::Sampling => (SphereGrid::new(cfg.d, cfg.sphere_level)?, cfg.repeats),
        Constructor::Quadrature => {
            let s = SphereGrid::new(cfg.d, cfg.quadrature_level)?;
            if let Some(n) = cfg.widths.iter().find(|n| *n % s.len() != 0) {
                return Err(AppError::Config(format!(
                    "width {n} is not a multiple of the {} quadrature directions",
                    s.len()
                )));
            }
            (s, 1)
        }
    };
    report.note("directions", sphere.len());
    report.note("repeats", repeats);

    // densities: one per width under the schedule, otherwise shared
    let mut densities = Vec::new();
    if cfg.schedule == Schedule::None {
        densities.push(density(&f, cfg.k, &sphere, &grid, &opts)?);
    } else {
        for e in &eps {
            densities.push(density(&target_for(*e)?, cfg.k, &sphere, &grid, &opts)?);
        }
    }

    let runs: Vec<(usize, usize)> = (0..cfg.widths.len()).flat_map(|w| (0..repeats).map(move |r| (w, r))).collect();
    let results = runs
        .par_iter()
        .map(|&(wi, r)| -> AppResult<(u64, f64, Option<ShallowNetwork>)> {
            let n = cfg.widths[wi];
            let dens = &densities[if densities.len() == 1 { 0 } else { wi }];
            let (seed, net) = match cfg.constructor {
                Constructor::Sampling => {
                    let seed = derive_seed(cfg.seed, "sampling", ((wi as u64) << 32) | r as u64);
                    (seed, sampled_network(dens, n, seed)?)
                }
                Constructor::Quadrature => (0, quadrature_network_with_knots(dens, n / sphere.len())?),
            };
            let diffs: Vec<f64> = pts.iter().zip(&exact).map(|(x, v)| net.evaluate(x) - v).collect();
            let e = lp_from_differences(&diffs, cfg.p, cfg.d)?;
            let keep = cfg.save_network && wi + 1 == cfg.widths.len() && r == 0;
            Ok((seed, e, keep.then_some(net)))
        })
        .collect::<AppResult<Vec<_>>>()?;

    let mut detail = Table::new(Some("runs"), &["width", "repeat", "seed", "epsilon", "error"]);
    let mut series = Vec::new();
    for (wi, n) in cfg.widths.iter().enumerate() {
        let mut sum = 0.0;
        for (&(w, r), (seed, e, net)) in runs.iter().zip(&results) {
            if w != wi {
                continue;
            }
            sum += e;
            detail.rows.push(vec![
                n.to_string(),
                r.to_string(),
                seed.to_string(),
                eps[wi].map_or_else(|| "none".to_string(), num),
                num(*e),
            ]);
            if let Some(net) = net {
                report.networks.push((format!("n{n}"), net.clone()));
            }
        }
        series.push((*n as f64, sum / repeats as f64));
    }
    sweep_checks(report, cfg, &series)?;
    report.tables.push(detail);
    Ok(())
}

fn mollify_sweep(cfg: &ExperimentConfig, report: &mut ExperimentReport) -> AppResult<()> {
    let f = build_target(cfg)?;
    let pts = points(cfg, "eval-points", cfg.points)?;
    let exact = values(&pts, |x| f.evaluate(x));
    let mut series = Vec::new();
    for eps in &cfg.epsilons {
        let m = Mollifier::new(MollifierSpec::new(cfg.d, *eps, cfg.s)?, cfg.mollify_resolution)?;
        let e = error(&pts, &exact, |x| m.apply(|y| f.evaluate(y), x), cfg.p, cfg.d)?;
        series.push((*eps, e));
    }
    sweep_checks(report, cfg, &series)
}

/// `F_omega(u)` against `f(omega u) / 2` on `[-1, 1]` for both directions.
fn profile_identity(cfg: &ExperimentConfig, report: &mut ExperimentReport) -> AppResult<()> {
    let f = build_target(cfg)?;
    let grid = line_grid(cfg)?;
    let opts = SpectralOptions::default();
    let (lo, hi) = grid.unit_interval_indices()?;
    let mut t = Table::new(None, &["omega", "nodes", "max_abs_err"]);
    let mut worst = 0.0f64;
    for omega in [1.0, -1.0] {
        let prof = filtered_profile(&f, &[omega], 0, &grid, &opts)?;
        let err = (lo..=hi)
            .map(|m| (prof.values[m] - 0.5 * f.evaluate(&[omega * grid.node(m)])).abs())
            .fold(0.0f64, f64::max);
        t.rows.push(vec![num(omega), (hi - lo + 1).to_string(), num(err)]);
        worst = worst.max(err);
    }
    report.tables.push(t);
    report.note("max_abs_err", num(worst));
    if let Some(tol) = cfg.tolerance {
        report.check("max_abs_err", worst, format!("<= {tol:e}"), worst <= tol);
    }
    Ok(())
}

/// Ridge lifts of random polynomials of each degree `0..=k`.
fn lift_check(cfg: &ExperimentConfig, report: &mut ExperimentReport) -> AppResult<()> {
    let pts = points(cfg, "lift-points", cfg.checks)?;
    let mut t = Table::new(None, &["degree", "monomials", "width", "max_abs_err"]);
    let mut worst = 0.0f64;
    for j in 0..=cfg.k {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, "lift-coefficients", j as u64));
        let terms: Vec<(Vec<u32>, f64)> =
            monomial_exponents(cfg.d, j).into_iter().map(|e| (e, rng.random_range(-1.0..1.0))).collect();
        let p = PolynomialPart::from_terms(cfg.d, terms)?;
        let net = poly_to_ridge(&p, j)?;
        let err = pts.iter().map(|x| (net.evaluate(x) - p.evaluate(x)).abs()).fold(0.0f64, f64::max);
        t.rows.push(vec![j.to_string(), p.len().to_string(), net.width().to_string(), num(err)]);
        worst = worst.max(err);
    }
    report.tables.push(t);
    report.note("max_abs_err", num(worst));
    if let Some(tol) = cfg.tolerance {
        report.check("max_abs_err", worst, format!("<= {tol:e}"), worst <= tol);
    }
    Ok(())
}
