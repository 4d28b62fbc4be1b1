//! `slowdiff` command line: named, reproducible experiments over the
//! slow-diffusion laboratory. Every experiment writes a data artifact plus a
//! summary JSON into the output directory; reruns with the same configuration
//! and seed are byte-identical.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numeric failure,
//! 4 inconclusive verdict.

mod config;
mod experiments;
mod output;

use clap::{Parser, Subcommand};
use config::Config;
use experiments::Common;
use output::{Format, Writer};
use slowdiff::params::Equation;
use slowdiff::{Error, Result};
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "slowdiff", version, about = "Slow-diffusion laboratory experiments")]
struct Cli {
    /// Flat `key = value` configuration file; command-line flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for artifacts.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Data artifact format.
    #[arg(long, global = true)]
    format: Option<String>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// p-Laplace exponent (p > 2).
    #[arg(long, global = true)]
    p: Option<f64>,
    /// Porous-medium exponent (m > 1).
    #[arg(long, global = true)]
    m: Option<f64>,
    /// Spatial dimension.
    #[arg(long, global = true)]
    n: Option<u32>,
    /// Barenblatt profile constant.
    #[arg(long = "C", global = true)]
    c: Option<f64>,
    /// Eigenfunction domain length.
    #[arg(long = "L", global = true)]
    l: Option<f64>,
    /// Spatial resolution (node count).
    #[arg(long, global = true)]
    grid: Option<usize>,
    #[arg(long = "t-end", global = true)]
    t_end: Option<f64>,
    /// CFL safety factor in (0, 1].
    #[arg(long, global = true)]
    cfl: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a closed-form solution on a grid.
    Evaluate {
        /// barenblatt | separable | pme-separable
        #[arg(long)]
        solution: Option<String>,
        /// Evaluation time.
        #[arg(long)]
        t: Option<f64>,
        /// Blow-up time of separable solutions.
        #[arg(long)]
        t0: Option<f64>,
        #[arg(long = "x-min")]
        x_min: Option<f64>,
        #[arg(long = "x-max")]
        x_max: Option<f64>,
    },
    /// Variational eigenfunction solve, optionally against the 1D oracle.
    Eigen {
        #[arg(long)]
        oracle: bool,
        /// p-laplace | pme
        #[arg(long)]
        equation: Option<String>,
    },
    /// Finite-difference evolution runs.
    Evolve {
        /// barenblatt | bump | pme-bump | comparison
        #[arg(long)]
        scenario: Option<String>,
        /// Trial count for the comparison scenario.
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Ring boundary-value dichotomy probe.
    Probe {
        /// separable | bounded | both
        #[arg(long)]
        trace: Option<String>,
        /// Blow-up time of the separable trace.
        #[arg(long)]
        t0: Option<f64>,
    },
    /// Summability classification and class verdicts.
    Classify {
        /// barenblatt | separable | pme-separable
        #[arg(long)]
        input: Option<String>,
        /// Single summability exponent (default: full class verdict).
        #[arg(long)]
        q: Option<f64>,
        /// Run the sharp-exponent panel (barenblatt input).
        #[arg(long)]
        sharp: bool,
        #[arg(long)]
        t0: Option<f64>,
    },
    /// Empirical intrinsic Harnack constants.
    Harnack {
        /// barenblatt | pme-bump | both
        #[arg(long)]
        input: Option<String>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long = "c-used")]
        c_used: Option<f64>,
    },
    /// Caccioppoli energy check across refinement levels.
    Caccioppoli {
        #[arg(long)]
        levels: Option<usize>,
    },
    /// Space-time infimal convolution study.
    Infconv {
        /// Comma-separated epsilon sequence.
        #[arg(long)]
        eps: Option<String>,
    },
    /// Porous-medium mirror panel.
    Pme,
}

fn run(cli: Cli) -> Result<()> {
    let cfg = Config::load(cli.config.as_deref())?;
    let out_dir = cli
        .out
        .map(|p| p.to_string_lossy().into_owned())
        .map(Some)
        .unwrap_or(None);
    let out_dir = cfg.string(out_dir, "out", "out")?;
    let format: Format = cfg.string(cli.format, "format", "csv")?.parse()?;
    let writer = Writer::new(std::path::Path::new(&out_dir), format)?;

    let common = Common {
        p: cfg.f64(cli.p, "p", 3.0)?,
        m: cfg.f64(cli.m, "m", 2.0)?,
        n: cfg.u32(cli.n, "n", 1)?,
        c: cfg.f64(cli.c, "C", 1.0)?,
        l: cfg.f64(cli.l, "L", 1.0)?,
        grid: cfg.usize(cli.grid, "grid", 513)?,
        t_end: cfg.f64(cli.t_end, "t-end", 1.0)?,
        cfl: cfg.f64(cli.cfl, "cfl", 0.9)?,
        seed: cfg.u64(cli.seed, "seed", 1)?,
    };

    let result = match cli.command {
        Command::Evaluate { solution, t, t0, x_min, x_max } => {
            let solution = cfg.string(solution, "solution", "barenblatt")?;
            let t = cfg.f64(t, "t", 1.0)?;
            let t0 = cfg.f64(t0, "t0", 0.5)?;
            let x_min = cfg.f64(x_min, "x-min", -4.0)?;
            let x_max = cfg.f64(x_max, "x-max", 4.0)?;
            experiments::evaluate(&writer, &common, &solution, t, t0, x_min, x_max)
        }
        Command::Eigen { oracle, equation } => {
            let eq = match cfg.string(equation, "equation", "p-laplace")?.as_str() {
                "p-laplace" => Equation::PLaplace,
                "pme" => Equation::Pme,
                other => return Err(Error::Config(format!("unknown equation `{other}`"))),
            };
            let oracle = cfg.flag(oracle, "oracle")?;
            experiments::eigen(&writer, &common, oracle, eq)
        }
        Command::Evolve { scenario, trials } => {
            let scenario = cfg.string(scenario, "scenario", "barenblatt")?;
            let trials = cfg.usize(trials, "trials", 1000)?;
            experiments::evolve_experiment(&writer, &common, &scenario, trials)
        }
        Command::Probe { trace, t0 } => {
            let trace = cfg.string(trace, "trace", "both")?;
            let t0 = cfg.f64(t0, "t0", 0.15)?;
            experiments::probe(&writer, &common, &trace, t0)
        }
        Command::Classify { input, q, sharp, t0 } => {
            let input = cfg.string(input, "input", "barenblatt")?;
            let sharp = cfg.flag(sharp, "sharp")?;
            let t0 = cfg.f64(t0, "t0", 0.5)?;
            let q = match q {
                Some(q) => Some(q),
                None => {
                    // a `q` key in the config applies only when given
                    match cfg.f64(None, "q", f64::NAN) {
                        Ok(v) if v.is_nan() => None,
                        Ok(v) => Some(v),
                        Err(e) => return Err(e),
                    }
                }
            };
            experiments::classify(&writer, &common, &input, q, sharp, t0)
        }
        Command::Harnack { input, samples, c_used } => {
            let input = cfg.string(input, "input", "both")?;
            let samples = cfg.usize(samples, "samples", 200)?;
            let c_used = cfg.f64(c_used, "c-used", 1.0)?;
            experiments::harnack(&writer, &common, &input, samples, c_used)
        }
        Command::Caccioppoli { levels } => {
            let levels = cfg.usize(levels, "levels", 3)?;
            experiments::caccioppoli(&writer, &common, levels)
        }
        Command::Infconv { eps } => {
            let eps = cfg.string(eps, "eps", "0.1,0.05,0.025")?;
            let eps: Vec<f64> = eps
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse()
                        .map_err(|_| Error::Config(format!("bad epsilon `{s}`")))
                })
                .collect::<Result<_>>()?;
            experiments::infconv(&writer, &common, &eps)
        }
        Command::Pme => experiments::pme_panel(&writer, &common),
    };

    if let Err(err) = &result {
        writer.write_error(err);
    }
    result
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}
