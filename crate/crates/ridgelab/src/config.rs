//! Flat `key = value` experiment configuration with `#` comments.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use ridge_core::metrics::Norm;
use ridge_core::SampleMode;

use crate::error::{AppError, AppResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    RadonCheck,
    InversionCheck,
    VariationBound,
    PeanoReconstruct,
    RateSweep,
    MollifySweep,
    ProfileIdentity,
    LiftCheck,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::RadonCheck => "radon-check",
            ExperimentKind::InversionCheck => "inversion-check",
            ExperimentKind::VariationBound => "variation-bound",
            ExperimentKind::PeanoReconstruct => "peano-reconstruct",
            ExperimentKind::RateSweep => "rate-sweep",
            ExperimentKind::MollifySweep => "mollify-sweep",
            ExperimentKind::ProfileIdentity => "profile-identity",
            ExperimentKind::LiftCheck => "lift-check",
        }
    }
}

impl FromStr for ExperimentKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "radon-check" => ExperimentKind::RadonCheck,
            "inversion-check" => ExperimentKind::InversionCheck,
            "variation-bound" => ExperimentKind::VariationBound,
            "peano-reconstruct" => ExperimentKind::PeanoReconstruct,
            "rate-sweep" => ExperimentKind::RateSweep,
            "mollify-sweep" => ExperimentKind::MollifySweep,
            "profile-identity" => ExperimentKind::ProfileIdentity,
            "lift-check" => ExperimentKind::LiftCheck,
            _ => return Err(format!("unknown experiment kind `{s}`")),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TargetConfig {
    Gaussian { sigma2: f64, amplitude: f64, center: Option<Vec<f64>> },
    Cusp { gamma: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constructor {
    Quadrature,
    Sampling,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schedule {
    /// Build networks for the target itself.
    None,
    /// Build networks for the mollified target at `eps = n^{-1/d}`.
    Epsilon,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub target: TargetConfig,
    pub d: usize,
    pub k: u32,
    pub s: u32,
    pub p: Norm,
    pub sphere_level: u32,
    pub line_n: usize,
    pub line_l: f64,
    pub widths: Vec<usize>,
    pub epsilons: Vec<f64>,
    pub seed: u64,
    pub repeats: usize,
    pub constructor: Constructor,
    pub schedule: Schedule,
    pub quadrature_level: u32,
    pub points: usize,
    pub point_mode: SampleMode,
    pub checks: usize,
    pub tolerance: Option<f64>,
    pub refine: bool,
    pub slope_max: Option<f64>,
    pub slope_min: Option<f64>,
    pub monotone_slack: Option<f64>,
    pub mollify_resolution: usize,
    pub sinogram: bool,
    pub profiles: bool,
    pub save_network: bool,
    pub output: String,
}

const KEYS: &[&str] = &[
    "kind",
    "target",
    "target.sigma2",
    "target.amplitude",
    "target.center",
    "target.gamma",
    "d",
    "k",
    "s",
    "p",
    "sphere_level",
    "line_n",
    "line_l",
    "widths",
    "epsilons",
    "seed",
    "repeats",
    "constructor",
    "schedule",
    "quadrature_level",
    "points",
    "point_mode",
    "checks",
    "tolerance",
    "refine",
    "slope_max",
    "slope_min",
    "monotone_slack",
    "mollify_resolution",
    "sinogram",
    "profiles",
    "save_network",
    "output",
];

/// Raw `key -> (value, line)` entries.
struct Entries(BTreeMap<String, (String, usize)>);

impl Entries {
    fn parse(text: &str) -> AppResult<Self> {
        let mut map: BTreeMap<String, (String, usize)> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| AppError::ConfigLine { line, msg: format!("expected `key = value`, found `{content}`") })?;
            let key = key.trim();
            let value = value.trim();
            if key.is_empty() {
                return Err(AppError::ConfigLine { line, msg: "missing key before `=`".into() });
            }
            if value.is_empty() {
                return Err(AppError::ConfigLine { line, msg: format!("missing value for `{key}`") });
            }
            if !KEYS.contains(&key) {
                return Err(AppError::ConfigLine { line, msg: format!("unknown key `{key}`") });
            }
            if let Some((_, first)) = map.get(key) {
                return Err(AppError::ConfigLine {
                    line,
                    msg: format!("duplicate key `{key}` (first set on line {first})"),
                });
            }
            map.insert(key.to_string(), (value.to_string(), line));
        }
        Ok(Self(map))
    }

    fn get<T: FromStr>(&self, key: &str) -> AppResult<Option<T>> {
        match self.0.get(key) {
            None => Ok(None),
            Some((v, line)) => v
                .parse()
                .map(Some)
                .map_err(|_| AppError::ConfigLine { line: *line, msg: format!("invalid value `{v}` for `{key}`") }),
        }
    }

    fn get_or<T: FromStr>(&self, key: &str, default: T) -> AppResult<T> {
        Ok(self.get(key)?.unwrap_or(default))
    }

    fn list<T: FromStr>(&self, key: &str) -> AppResult<Option<Vec<T>>> {
        match self.0.get(key) {
            None => Ok(None),
            Some((v, line)) => v
                .split(',')
                .map(|s| s.trim())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<T>())
                .collect::<Result<Vec<T>, _>>()
                .map(Some)
                .map_err(|_| AppError::ConfigLine { line: *line, msg: format!("invalid list `{v}` for `{key}`") }),
        }
    }

    fn with<T>(&self, key: &str, parse: impl Fn(&str) -> Result<T, String>) -> AppResult<Option<T>> {
        match self.0.get(key) {
            None => Ok(None),
            Some((v, line)) => parse(v).map(Some).map_err(|msg| AppError::ConfigLine { line: *line, msg }),
        }
    }

    fn line(&self, key: &str) -> Option<usize> {
        self.0.get(key).map(|(_, l)| *l)
    }

    fn fail(&self, key: &str, msg: impl Into<String>) -> AppError {
        match self.line(key) {
            Some(line) => AppError::ConfigLine { line, msg: msg.into() },
            None => AppError::Config(msg.into()),
        }
    }
}

fn parse_bool(s: &str) -> Result<bool, String> {
    match s {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(format!("expected a boolean, found `{s}`")),
    }
}

/// Parses and validates a configuration file.
pub fn parse_config(text: &str) -> AppResult<ExperimentConfig> {
    let e = Entries::parse(text)?;
    let kind: ExperimentKind = e
        .with("kind", |s| s.parse())?
        .ok_or_else(|| AppError::Config("missing required key `kind`".into()))?;
    let d: usize = e.get("d")?.ok_or_else(|| AppError::Config("missing required key `d`".into()))?;
    if !(1..=3).contains(&d) {
        return Err(e.fail("d", format!("dimension d = {d} is not supported (1..=3)")));
    }

    let target = match e.get_or("target", "gaussian".to_string())?.as_str() {
        "gaussian" => {
            let center: Option<Vec<f64>> = e.list("target.center")?;
            if let Some(c) = &center {
                if c.len() != d {
                    return Err(e.fail("target.center", format!("center has {} entries, expected {d}", c.len())));
                }
            }
            let sigma2 = e.get_or("target.sigma2", 1.0)?;
            if !(sigma2 > 0.0) {
                return Err(e.fail("target.sigma2", "target.sigma2 must be positive"));
            }
            TargetConfig::Gaussian { sigma2, amplitude: e.get_or("target.amplitude", 1.0)?, center }
        }
        "cusp" => {
            let gamma = e.get_or("target.gamma", 2.0)?;
            if !(gamma > 0.0) {
                return Err(e.fail("target.gamma", "target.gamma must be positive"));
            }
            TargetConfig::Cusp { gamma }
        }
        other => return Err(e.fail("target", format!("unknown target `{other}`"))),
    };

    let p = e
        .with("p", |s| Norm::from_p(s).map_err(|err| err.to_string()))?
        .unwrap_or(Norm::L2);
    let constructor = e
        .with("constructor", |s| match s {
            "quadrature" => Ok(Constructor::Quadrature),
            "sampling" => Ok(Constructor::Sampling),
            _ => Err(format!("unknown constructor `{s}`")),
        })?
        .unwrap_or(Constructor::Sampling);
    let schedule = e
        .with("schedule", |s| match s {
            "none" => Ok(Schedule::None),
            "epsilon" => Ok(Schedule::Epsilon),
            _ => Err(format!("unknown schedule `{s}`")),
        })?
        .unwrap_or(Schedule::None);
    let point_mode = e
        .with("point_mode", |s| match s {
            "lattice" => Ok(SampleMode::Lattice),
            "random" | "pseudo-random" => Ok(SampleMode::PseudoRandom),
            _ => Err(format!("unknown point mode `{s}`")),
        })?
        .unwrap_or(SampleMode::Lattice);

    let default_checks = match kind {
        ExperimentKind::RadonCheck => 50,
        ExperimentKind::InversionCheck => 100,
        ExperimentKind::LiftCheck => 1000,
        _ => 200,
    };
    let default_tolerance = match kind {
        ExperimentKind::RadonCheck => Some(1e-6),
        ExperimentKind::InversionCheck | ExperimentKind::PeanoReconstruct => Some(1e-3),
        ExperimentKind::VariationBound => Some(0.05),
        ExperimentKind::ProfileIdentity => Some(1e-6),
        ExperimentKind::LiftCheck => Some(1e-10),
        _ => None,
    };

    let cfg = ExperimentConfig {
        kind,
        target,
        d,
        k: e.get_or("k", 1)?,
        s: e.get_or("s", 2)?,
        p,
        sphere_level: e.get_or("sphere_level", 8)?,
        line_n: e.get_or("line_n", 2048)?,
        line_l: e.get_or("line_l", 4.0)?,
        widths: e.list("widths")?.unwrap_or_default(),
        epsilons: e.list("epsilons")?.unwrap_or_default(),
        seed: e.get_or("seed", 0)?,
        repeats: e.get_or("repeats", 1)?,
        constructor,
        schedule,
        quadrature_level: e.get_or("quadrature_level", 3)?,
        points: e.get_or("points", 1 << 16)?,
        point_mode,
        checks: e.get_or("checks", default_checks)?,
        tolerance: e.get("tolerance")?.or(default_tolerance),
        refine: e.with("refine", parse_bool)?.unwrap_or(true),
        slope_max: e.get("slope_max")?,
        slope_min: e.get("slope_min")?,
        monotone_slack: e.get("monotone_slack")?,
        mollify_resolution: e.get_or("mollify_resolution", ridge_core::mollify::DEFAULT_RESOLUTION)?,
        sinogram: e.with("sinogram", parse_bool)?.unwrap_or(false),
        profiles: e.with("profiles", parse_bool)?.unwrap_or(false),
        save_network: e.with("save_network", parse_bool)?.unwrap_or(false),
        output: e.get_or("output", kind.name().to_string())?,
    };
    validate(&cfg, &e)?;
    Ok(cfg)
}

fn validate(cfg: &ExperimentConfig, e: &Entries) -> AppResult<()> {
    if cfg.sphere_level == 0 {
        return Err(e.fail("sphere_level", "sphere_level must be at least 1"));
    }
    if cfg.line_n < 8 || !cfg.line_n.is_power_of_two() {
        return Err(e.fail("line_n", "line_n must be a power of two >= 8"));
    }
    if !(cfg.line_l >= 1.0) {
        return Err(e.fail("line_l", "line_l must be >= 1"));
    }
    if cfg.repeats == 0 {
        return Err(e.fail("repeats", "repeats must be at least 1"));
    }
    if cfg.points == 0 || cfg.checks == 0 {
        return Err(e.fail(if cfg.points == 0 { "points" } else { "checks" }, "point counts must be positive"));
    }
    if cfg.s == 0 {
        return Err(e.fail("s", "s must be at least 1"));
    }
    if cfg.output.contains(['/', '\\']) || cfg.output.starts_with('.') {
        return Err(e.fail("output", "output must be a plain file stem"));
    }
    match cfg.kind {
        ExperimentKind::RateSweep => {
            if cfg.widths.is_empty() {
                return Err(e.fail("widths", "rate-sweep needs a nonempty `widths` list"));
            }
            if cfg.widths[0] == 0 || cfg.widths.windows(2).any(|w| w[1] <= w[0]) {
                return Err(e.fail("widths", "widths must be positive and strictly increasing"));
            }
        }
        ExperimentKind::MollifySweep => {
            if cfg.epsilons.is_empty() {
                return Err(e.fail("epsilons", "mollify-sweep needs a nonempty `epsilons` list"));
            }
            if cfg.epsilons.iter().any(|x| !(*x > 0.0 && *x <= 1.0)) || cfg.epsilons.windows(2).any(|w| w[1] >= w[0]) {
                return Err(e.fail("epsilons", "epsilons must lie in (0, 1] and be strictly decreasing"));
            }
        }
        ExperimentKind::ProfileIdentity if cfg.d != 1 => {
            return Err(e.fail("d", "profile-identity is defined for d = 1"));
        }
        _ => {}
    }
    Ok(())
}

impl ExperimentConfig {
    /// Normalized `key = value` echo of the effective configuration.
    pub fn echo(&self) -> String {
        let mut s = String::new();
        let list = |v: &[String]| v.join(",");
        let _ = writeln!(s, "kind = {}", self.kind.name());
        match &self.target {
            TargetConfig::Gaussian { sigma2, amplitude, center } => {
                let _ = writeln!(s, "target = gaussian");
                let _ = writeln!(s, "target.sigma2 = {sigma2}");
                let _ = writeln!(s, "target.amplitude = {amplitude}");
                if let Some(c) = center {
                    let _ = writeln!(s, "target.center = {}", list(&c.iter().map(|v| v.to_string()).collect::<Vec<_>>()));
                }
            }
            TargetConfig::Cusp { gamma } => {
                let _ = writeln!(s, "target = cusp");
                let _ = writeln!(s, "target.gamma = {gamma}");
            }
        }
        let _ = writeln!(s, "d = {}", self.d);
        let _ = writeln!(s, "k = {}", self.k);
        let _ = writeln!(s, "s = {}", self.s);
        let _ = writeln!(s, "p = {}", if self.p == Norm::L2 { "2" } else { "inf" });
        let _ = writeln!(s, "sphere_level = {}", self.sphere_level);
        let _ = writeln!(s, "line_n = {}", self.line_n);
        let _ = writeln!(s, "line_l = {}", self.line_l);
        if !self.widths.is_empty() {
            let _ = writeln!(s, "widths = {}", list(&self.widths.iter().map(|v| v.to_string()).collect::<Vec<_>>()));
        }
        if !self.epsilons.is_empty() {
            let _ = writeln!(s, "epsilons = {}", list(&self.epsilons.iter().map(|v| v.to_string()).collect::<Vec<_>>()));
        }
        let _ = writeln!(s, "seed = {}", self.seed);
        let _ = writeln!(s, "repeats = {}", self.repeats);
        let _ = writeln!(
            s,
            "constructor = {}",
            if self.constructor == Constructor::Quadrature { "quadrature" } else { "sampling" }
        );
        let _ = writeln!(s, "schedule = {}", if self.schedule == Schedule::Epsilon { "epsilon" } else { "none" });
        let _ = writeln!(s, "quadrature_level = {}", self.quadrature_level);
        let _ = writeln!(s, "points = {}", self.points);
        let _ = writeln!(
            s,
            "point_mode = {}",
            if self.point_mode == SampleMode::Lattice { "lattice" } else { "random" }
        );
        let _ = writeln!(s, "checks = {}", self.checks);
        for (key, v) in [
            ("tolerance", self.tolerance),
            ("slope_max", self.slope_max),
            ("slope_min", self.slope_min),
            ("monotone_slack", self.monotone_slack),
        ] {
            if let Some(v) = v {
                let _ = writeln!(s, "{key} = {v}");
            }
        }
        let _ = writeln!(s, "refine = {}", self.refine);
        let _ = writeln!(s, "mollify_resolution = {}", self.mollify_resolution);
        let _ = writeln!(s, "sinogram = {}", self.sinogram);
        let _ = writeln!(s, "profiles = {}", self.profiles);
        let _ = writeln!(s, "save_network = {}", self.save_network);
        let _ = writeln!(s, "output = {}", self.output);
        s
    }
}
