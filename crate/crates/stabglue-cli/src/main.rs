mod commands;
mod config;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use stabglue::family::ScanRow;
use stabglue::geometry::Angle;
use stabglue::morphism::SodSide;
use stabglue::scalar::format_rational;

use commands::RunError;
use config::RunConfig;
use report::Recorder;

/// Environment variable holding the worker count for grid and path shards.
const WORKERS_ENV: &str = "STABGLUE_WORKERS";

#[derive(Parser, Debug)]
#[command(
    name = "stabglue",
    version,
    about = "Exact checks for glued and tilted stability conditions"
)]
struct Cli {
    /// JSON configuration file; flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Path of the JSON report.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Largest total dimension of corpus objects.
    #[arg(long, global = true)]
    corpus_cap: Option<usize>,
    /// Charge of the point object, such as `i` or `-1+i`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    point_charge: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Samples the angle-sum inequality and the ratio bound.
    VerifyKernel {
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Angles as multiples of π, such as `2/3pi`; defaults to π/6, π/2, 2π/3, 5π/6.
        #[arg(long = "theta")]
        thetas: Vec<String>,
    },
    /// Harder–Narasimhan filtration of one object of the model.
    Hn {
        /// Object literal, such as `I[1,2]@0 + I[2,2]@1`.
        #[arg(long, allow_hyphen_values = true)]
        object: String,
        /// Charge literal, one entry per vertex.
        #[arg(long, allow_hyphen_values = true)]
        charge: Option<String>,
        #[arg(long)]
        vertices: Option<usize>,
    },
    /// Validates both glued stability conditions.
    Glue {
        #[arg(long)]
        side: Option<SodSide>,
    },
    /// Builds and validates the tilted condition at one point.
    Tilt {
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
        #[arg(long)]
        side: Option<SodSide>,
    },
    /// Scans a rectangular grid of points.
    Scan {
        #[arg(long, allow_hyphen_values = true)]
        beta_min: Option<String>,
        #[arg(long)]
        omega_min: Option<String>,
        #[arg(long)]
        step: Option<String>,
        #[arg(long)]
        beta_count: Option<usize>,
        #[arg(long)]
        omega_count: Option<usize>,
        #[arg(long)]
        eps: Option<String>,
        #[arg(long, default_value = "sod0")]
        side: SodSide,
        /// CSV table of the scanned points.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Certifies the continuity chain along the path.
    Path {
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        eps: Option<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::VerifyKernel { .. } => "verify-kernel",
            Command::Hn { .. } => "hn",
            Command::Glue { .. } => "glue",
            Command::Tilt { .. } => "tilt",
            Command::Scan { .. } => "scan",
            Command::Path { .. } => "path",
        }
    }
}

fn workers() -> Result<usize, RunError> {
    match std::env::var(WORKERS_ENV) {
        Err(_) => Ok(1),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(RunError::Usage(format!(
                "{WORKERS_ENV} must be a positive integer, got {v:?}"
            ))),
        },
    }
}

fn merged_config(cli: &Cli) -> Result<RunConfig, RunError> {
    let mut c = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(r) = &cli.report {
        c.report = r.clone();
    }
    if let Some(cap) = cli.corpus_cap {
        c.corpus_cap = cap;
    }
    if let Some(z) = &cli.point_charge {
        c.point_charge = z.clone();
    }
    match &cli.command {
        Command::VerifyKernel { samples, seed, .. } => {
            c.samples = samples.unwrap_or(c.samples);
            c.seed = seed.unwrap_or(c.seed);
        }
        Command::Hn {
            charge, vertices, ..
        } => {
            if let Some(z) = charge {
                c.model.charge = z.clone();
            }
            c.model.vertices = vertices.unwrap_or(c.model.vertices);
        }
        Command::Scan {
            beta_min,
            omega_min,
            step,
            beta_count,
            omega_count,
            eps,
            csv,
            ..
        } => {
            let g = &mut c.grid;
            for (field, value) in [
                (&mut g.beta_min, beta_min),
                (&mut g.omega_min, omega_min),
                (&mut g.step, step),
            ] {
                if let Some(v) = value {
                    *field = v.clone();
                }
            }
            g.beta_count = beta_count.unwrap_or(g.beta_count);
            g.omega_count = omega_count.unwrap_or(g.omega_count);
            if let Some(e) = eps {
                c.eps = e.clone();
            }
            if csv.is_some() {
                c.csv = csv.clone();
            }
        }
        Command::Path { steps, eps } => {
            c.path_steps = steps.unwrap_or(c.path_steps);
            if let Some(e) = eps {
                c.eps = e.clone();
            }
        }
        Command::Glue { .. } | Command::Tilt { .. } => {}
    }
    Ok(c)
}

fn write_csv(path: &Path, rows: &[ScanRow]) -> Result<(), RunError> {
    let fail = |e: csv::Error| RunError::Usage(format!("cannot write {}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(fail)?;
    w.write_record([
        "beta",
        "omega",
        "in_region",
        "sup_ratio",
        "heart_ok",
        "ball_ok",
    ])
    .map_err(fail)?;
    let flag = |b: Option<bool>| b.map(|b| b.to_string()).unwrap_or_default();
    for r in rows {
        w.write_record([
            format_rational(&r.beta),
            format_rational(&r.omega),
            r.in_region.to_string(),
            r.sup_ratio
                .as_ref()
                .map(|x| format!("{:.12}", x.to_f64()))
                .unwrap_or_default(),
            flag(r.heart_ok),
            flag(r.ball_ok),
        ])
        .map_err(fail)?;
    }
    w.flush()
        .map_err(|e| RunError::Usage(format!("cannot write {}: {e}", path.display())))
}

fn run(cli: &Cli) -> Result<bool, RunError> {
    let config = merged_config(cli)?;
    let v = config.validate()?;
    let workers = workers()?;
    let mut rec = Recorder::default();
    match &cli.command {
        Command::VerifyKernel { thetas, .. } => {
            let angles: Vec<Angle> = if thetas.is_empty() {
                [1, 3, 4, 5].into_iter().map(Angle::from_sixths).collect()
            } else {
                thetas
                    .iter()
                    .map(|t| {
                        t.parse()
                            .map_err(|e| RunError::Usage(format!("theta: {e}")))
                    })
                    .collect::<Result<_, _>>()?
            };
            rec.run("verify-kernel", || {
                commands::verify_kernel(&config, &angles)
            })?;
        }
        Command::Hn { object, .. } => rec.run("hn", || commands::hn(&v, object))?,
        Command::Glue { side } => rec.run("glue", || commands::glue(&config, &v, *side))?,
        Command::Tilt { beta, omega, side } => {
            let p = commands::plane_point(beta, omega)?;
            rec.run("tilt", || commands::tilt(&config, &v, *side, &p))?;
        }
        Command::Scan { side, .. } => {
            let mut rows = Vec::new();
            rec.run("scan", || {
                let (results, r) = commands::scan(&config, &v, *side, workers)?;
                rows = r;
                Ok::<_, RunError>(results)
            })?;
            if let Some(path) = &config.csv {
                write_csv(path, &rows)?;
            }
        }
        Command::Path { .. } => rec.run("path", || commands::path(&config, &v, workers))?,
    }
    let report = rec.finish(cli.command.name(), &config);
    report
        .write(&config.report)
        .map_err(|e| RunError::Usage(format!("cannot write {}: {e}", config.report.display())))?;
    for r in &report.results {
        let verdict = if r.passed { "pass" } else { "FAIL" };
        match &r.witness {
            Some(w) => println!("{verdict} {} ({w})", r.check),
            None => println!("{verdict} {}", r.check),
        }
    }
    Ok(report.passed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(RunError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
