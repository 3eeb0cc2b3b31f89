use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ridgelab::error::{AppError, AppResult};
use ridgelab::netfile::read_network;
use ridgelab::{parse_config, run};

#[derive(Parser)]
#[command(name = "ridgelab", about = "Ridge-function approximation experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a config file.
    Run {
        config: PathBuf,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Overrides the config seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads (default: all cores).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Evaluate a saved network at points read from a CSV file.
    Eval {
        network: PathBuf,
        #[arg(long)]
        points: PathBuf,
    },
    /// Print version information.
    Version,
}

fn run_command(config: &Path, out: &Path, seed: Option<u64>, threads: Option<usize>) -> AppResult<bool> {
    if let Some(n) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| AppError::Config(format!("cannot set thread count: {e}")))?;
    }
    let text = std::fs::read_to_string(config).map_err(|e| AppError::io(config, e))?;
    let mut cfg = parse_config(&text)?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    let report = run(&cfg)?;
    for path in report.write(out)? {
        println!("wrote {}", path.display());
    }
    for (k, v) in &report.summary {
        println!("{k} = {v}");
    }
    if let Some(fit) = &report.fit {
        println!("slope = {:.4}", fit.slope);
    }
    for c in &report.checks {
        println!("{} {} = {:e} ({})", if c.passed { "PASS" } else { "FAIL" }, c.name, c.value, c.limit);
    }
    Ok(report.passed())
}

fn read_points(path: &Path, d: usize) -> AppResult<Vec<Vec<f64>>> {
    let text = std::fs::read_to_string(path).map_err(|e| AppError::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut out = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let line = i + 1;
        let rec = rec.map_err(|e| AppError::Format { path: path.into(), line, msg: e.to_string() })?;
        let parsed: Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(x) if x.len() == d => out.push(x),
            Ok(x) => {
                return Err(AppError::Format {
                    path: path.into(),
                    line,
                    msg: format!("expected {d} coordinates, found {}", x.len()),
                })
            }
            Err(_) if i == 0 => continue,
            Err(e) => return Err(AppError::Format { path: path.into(), line, msg: e.to_string() }),
        }
    }
    Ok(out)
}

fn eval_command(network: &Path, points: &Path) -> AppResult<()> {
    let net = read_network(network)?;
    let pts = read_points(points, net.dim())?;
    let mut header: Vec<String> = (1..=net.dim()).map(|i| format!("x_{i}")).collect();
    header.push("value".into());
    println!("{}", header.join(","));
    for x in &pts {
        let coords: Vec<String> = x.iter().map(|v| v.to_string()).collect();
        println!("{},{:e}", coords.join(","), net.evaluate(x));
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { config, out, seed, threads } => run_command(&config, &out, seed, threads).map(|ok| {
            if ok {
                0
            } else {
                eprintln!("error: one or more tolerance checks failed");
                3
            }
        }),
        Command::Eval { network, points } => eval_command(&network, &points).map(|_| 0),
        Command::Version => {
            println!("ridgelab {}", ridgelab::VERSION);
            println!("ridge-core {}", ridge_core::VERSION);
            Ok(0)
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
