use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use jcm_core::cli::config::{parse_config, parse_grid, Observable, Sweep};
use jcm_core::cli::presets::PRESET_NAMES;
use jcm_core::cli::runner::{run_scenario, run_target};
use jcm_core::cli::validate::validate;
use jcm_core::JcmError;

#[derive(Parser)]
#[command(name = "jcm", version, about = "Squeezed displaced number state superpositions in the multiphoton Jaynes-Cummings model")]
struct Cli {
    /// Worker threads (defaults to all cores). Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a figure preset (fig1..fig10) or a scenario config file.
    Run {
        target: String,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Fixed Fock-space dimension instead of the automatic choice.
        #[arg(long)]
        dim: Option<usize>,
        /// Config override, `key=value`; repeatable.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
    },
    /// Cross-check closed forms against independent numerical routes.
    Validate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Wigner function on a grid for the state described by a config file.
    Wigner {
        config: PathBuf,
        /// Grid points as `NX,NP`.
        #[arg(long, default_value = "101,101")]
        grid: String,
        /// Half-width of the square phase-space window.
        #[arg(long)]
        range: Option<f64>,
        /// Evolution time; defaults to `t` of a wigner-sweep config, else 0.
        #[arg(long)]
        t: Option<f64>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// List the available presets.
    Presets,
}

fn execute(cmd: Command) -> Result<bool, JcmError> {
    match cmd {
        Command::Run { target, out, dim, set } => {
            let mut overrides = set;
            if let Some(d) = dim {
                overrides.push(format!("dim={d}"));
            }
            for path in run_target(&target, &overrides, &out)? {
                println!("{}", path.display());
            }
            Ok(true)
        }
        Command::Validate { seed } => {
            let report = validate(seed)?;
            println!("{report}");
            Ok(report.passed())
        }
        Command::Wigner { config, grid, range, t, out } => {
            let (nx, np) = parse_grid(&grid).map_err(JcmError::InvalidArgument)?;
            let text = fs::read_to_string(&config)?;
            let mut cfg = parse_config(&text, &[])?;
            let t = t.unwrap_or(match cfg.sweep {
                Sweep::Wigner { t, .. } => t,
                _ => 0.0,
            });
            cfg.sweep = Sweep::Wigner { nx, np, range, t };
            cfg.observables = vec![Observable::Wigner];
            for path in run_scenario(&cfg, &out)? {
                println!("{}", path.display());
            }
            Ok(true)
        }
        Command::Presets => {
            for name in PRESET_NAMES {
                println!("{name}");
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match execute(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
