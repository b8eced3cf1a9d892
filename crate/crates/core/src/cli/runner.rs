//! Scenario execution and CSV emission.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::config::{parse_config, Observable, ScenarioConfig, Sweep};
use super::fmt_num;
use super::presets::preset;
use crate::asymptotics::{harmonic_params, inversion_asymptotic, quarter_revival_state};
use crate::dynamics::{atomic_inversion, evolve_field, photon_distribution_t, ModelParams};
use crate::error::{JcmError, Result};
use crate::fock::{set_tail_tolerance, FieldState};
use crate::observables::{mandel_q, squeezing_factors};
use crate::states::{field_state, field_state_auto, SuperpositionParams};
use crate::wigner::wigner_grid;

fn initial_field(params: &SuperpositionParams, model: ModelParams, dim: Option<usize>) -> Result<FieldState> {
    match dim {
        Some(d) => field_state(params, d),
        None => field_state_auto(params, model.k),
    }
}

fn mean_of(p: &[f64]) -> f64 {
    p.iter().enumerate().map(|(m, v)| m as f64 * v).sum()
}

fn write_rows(path: &Path, header: &str, rows: &[String]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "{header}")?;
    for row in rows {
        writeln!(w, "{row}")?;
    }
    w.flush()?;
    Ok(())
}

fn num_or_nan(r: Result<f64>) -> Result<f64> {
    match r {
        Ok(v) => Ok(v),
        Err(JcmError::Vacuum { .. }) => Ok(f64::NAN),
        Err(e) => Err(e),
    }
}

fn join(values: &[f64]) -> String {
    values.iter().map(|v| fmt_num(*v)).collect::<Vec<_>>().join(",")
}

/// Runs one scenario and writes its CSV files into `out`.
pub fn run_scenario(cfg: &ScenarioConfig, out: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out)?;
    if cfg.tolerance.is_some() {
        set_tail_tolerance(cfg.tolerance);
    }
    let result = match cfg.sweep {
        Sweep::Time { .. } => run_time(cfg, out),
        Sweep::Alpha { t, .. } => run_alpha(cfg, t, out),
        Sweep::Wigner { nx, np, range, t } => run_wigner(cfg, nx, np, range, t, out),
    };
    if cfg.tolerance.is_some() {
        set_tail_tolerance(None);
    }
    result
}

fn run_time(cfg: &ScenarioConfig, out: &Path) -> Result<Vec<PathBuf>> {
    let model = cfg.model;
    let field = initial_field(&cfg.state, model, cfg.dim)?;
    let p0 = field.probabilities();
    let mean = mean_of(&p0);
    let times = cfg.times(mean);
    // fails early with the truncation diagnostic
    evolve_field(&field, model, 0.0)?;
    let mut written = Vec::new();
    for &obs in &cfg.observables {
        let path;
        match obs {
            Observable::Inversion => {
                path = out.join("inversion.csv");
                let rows: Vec<String> = times
                    .par_iter()
                    .map(|&t| join(&[t, atomic_inversion(&p0, model, t)]))
                    .collect();
                write_rows(&path, "T,sigma_z", &rows)?;
            }
            Observable::Pnd => {
                path = out.join("pnd.csv");
                let rows: Vec<String> = p0.iter().enumerate().map(|(m, p)| format!("{m},{}", fmt_num(*p))).collect();
                write_rows(&path, "m,P", &rows)?;
                if !cfg.pnd_times.is_empty() {
                    let extra = out.join("pnd_t.csv");
                    let mut rows = Vec::new();
                    for &t in &cfg.pnd_times {
                        for (m, p) in photon_distribution_t(&p0, model, t).iter().enumerate() {
                            rows.push(format!("{},{m},{}", fmt_num(t), fmt_num(*p)));
                        }
                    }
                    write_rows(&extra, "T,m,P", &rows)?;
                    written.push(extra);
                }
            }
            Observable::Purity => {
                path = out.join("purity.csv");
                let rows = times
                    .par_iter()
                    .map(|&t| Ok(join(&[t, evolve_field(&field, model, t)?.purity()])))
                    .collect::<Result<Vec<String>>>()?;
                write_rows(&path, "T,Tf", &rows)?;
            }
            Observable::MandelQ => {
                path = out.join("mandel.csv");
                let rows = times
                    .par_iter()
                    .map(|&t| {
                        let psi = evolve_field(&field, model, t)?;
                        Ok(join(&[t, num_or_nan(mandel_q(&psi))?]))
                    })
                    .collect::<Result<Vec<String>>>()?;
                write_rows(&path, "T,Q", &rows)?;
            }
            Observable::Squeezing => {
                path = out.join("squeezing.csv");
                let rows = times
                    .par_iter()
                    .map(|&t| {
                        let q = squeezing_factors(&evolve_field(&field, model, t)?);
                        Ok(join(&[t, q.f, q.s]))
                    })
                    .collect::<Result<Vec<String>>>()?;
                write_rows(&path, "T,F,S", &rows)?;
            }
            Observable::AsymptoticInversion => {
                path = out.join("asymptotic.csv");
                let eta = harmonic_params(mean)?;
                let eps = cfg.state.eps();
                let alpha = cfg.state.alpha;
                let rows = times
                    .par_iter()
                    .map(|&t| Ok(join(&[t, inversion_asymptotic(t, alpha, eps, &eta)?])))
                    .collect::<Result<Vec<String>>>()?;
                write_rows(&path, "T,sigma_z_approx", &rows)?;
            }
            Observable::QuarterRevival => {
                path = out.join("quarter_revival.csv");
                let t = 0.25 * std::f64::consts::PI;
                let exact = photon_distribution_t(&p0, model, t);
                let (approx, _) = quarter_revival_state(field.amplitudes())?;
                let pa = approx.probabilities();
                let rows: Vec<String> = exact
                    .iter()
                    .enumerate()
                    .map(|(m, pe)| format!("{m},{},{}", fmt_num(*pe), fmt_num(pa.get(m).copied().unwrap_or(0.0))))
                    .collect();
                write_rows(&path, "m,P_exact,P_asymptotic", &rows)?;
            }
            Observable::Wigner => {
                return Err(JcmError::InvalidArgument(
                    "the wigner observable needs `sweep = wigner`".into(),
                ))
            }
        }
        written.push(path);
    }
    Ok(written)
}

fn run_alpha(cfg: &ScenarioConfig, t: f64, out: &Path) -> Result<Vec<PathBuf>> {
    let model = cfg.model;
    let alphas = cfg.alphas();
    // one row of every requested observable per amplitude
    let per_alpha = alphas
        .par_iter()
        .map(|&alpha| {
            let params = SuperpositionParams::new(alpha, cfg.state.r, cfg.state.n, cfg.state.eps());
            let field = initial_field(&params, model, cfg.dim)?;
            let psi = evolve_field(&field, model, t)?;
            let mut cols: Vec<Vec<f64>> = Vec::new();
            for &obs in &cfg.observables {
                cols.push(match obs {
                    Observable::Inversion => vec![psi.inversion()],
                    Observable::Purity => vec![psi.purity()],
                    Observable::MandelQ => vec![num_or_nan(mandel_q(&psi))?],
                    Observable::Squeezing => {
                        let q = squeezing_factors(&psi);
                        vec![q.f, q.s]
                    }
                    other => {
                        return Err(JcmError::InvalidArgument(format!(
                            "observable `{other}` is not available in an alpha sweep"
                        )))
                    }
                });
            }
            Ok(cols)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut written = Vec::new();
    for (j, &obs) in cfg.observables.iter().enumerate() {
        let (file, header) = match obs {
            Observable::Inversion => ("inversion.csv", "alpha,sigma_z"),
            Observable::Purity => ("purity.csv", "alpha,Tf"),
            Observable::MandelQ => ("mandel.csv", "alpha,Q"),
            _ => ("squeezing.csv", "alpha,F,S"),
        };
        let rows: Vec<String> = alphas
            .iter()
            .zip(&per_alpha)
            .map(|(a, cols)| {
                let mut v = vec![*a];
                v.extend_from_slice(&cols[j]);
                join(&v)
            })
            .collect();
        let path = out.join(file);
        write_rows(&path, header, &rows)?;
        written.push(path);
    }
    Ok(written)
}

fn run_wigner(
    cfg: &ScenarioConfig,
    nx: usize,
    np: usize,
    range: Option<f64>,
    t: f64,
    out: &Path,
) -> Result<Vec<PathBuf>> {
    if cfg.observables.iter().any(|o| *o != Observable::Wigner) {
        return Err(JcmError::InvalidArgument(
            "a wigner sweep only produces the wigner observable".into(),
        ));
    }
    let field = initial_field(&cfg.state, cfg.model, cfg.dim)?;
    let psi = evolve_field(&field, cfg.model, t)?;
    let b = range.unwrap_or(cfg.state.beta().abs() + 6.0);
    let grid = wigner_grid(&psi, (-b, b), (-b, b), nx, np, t)?;
    let path = out.join("wigner.csv");
    let mut w = BufWriter::new(File::create(&path)?);
    grid.write_csv(&mut w)?;
    w.flush()?;
    Ok(vec![path])
}

/// Runs a preset name or a config file path. Presets write one
/// subdirectory per sub-scenario under `out/<preset>`.
pub fn run_target(target: &str, overrides: &[String], out: &Path) -> Result<Vec<PathBuf>> {
    if let Some(subs) = preset(target) {
        let mut written = Vec::new();
        for (name, text) in subs {
            let cfg = parse_config(&text, overrides)?;
            written.extend(run_scenario(&cfg, &out.join(target).join(name))?);
        }
        return Ok(written);
    }
    let path = Path::new(target);
    if !path.is_file() {
        return Err(JcmError::InvalidArgument(format!(
            "`{target}` is neither a preset (fig1..fig10) nor a config file"
        )));
    }
    let text = fs::read_to_string(path)?;
    let cfg = parse_config(&text, overrides)?;
    run_scenario(&cfg, out)
}
