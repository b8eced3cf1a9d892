//! Flat `key = value` scenario files.
//!
//! ```text
//! # even displaced number state, one-photon model
//! alpha = 3
//! n = 1
//! eps = 1
//! k = 1
//! sweep = time
//! t_max = 40
//! observables = inversion, purity
//! ```
//!
//! Blank lines and `#` comments are ignored. Overrides given on the command
//! line are applied after the file and win over it.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::dynamics::ModelParams;
use crate::error::{JcmError, Result};
use crate::states::SuperpositionParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Observable {
    Inversion,
    Pnd,
    Purity,
    MandelQ,
    Squeezing,
    Wigner,
    AsymptoticInversion,
    QuarterRevival,
}

impl Observable {
    pub const ALL: [Observable; 8] = [
        Observable::Inversion,
        Observable::Pnd,
        Observable::Purity,
        Observable::MandelQ,
        Observable::Squeezing,
        Observable::Wigner,
        Observable::AsymptoticInversion,
        Observable::QuarterRevival,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Observable::Inversion => "inversion",
            Observable::Pnd => "pnd",
            Observable::Purity => "purity",
            Observable::MandelQ => "mandel_q",
            Observable::Squeezing => "squeezing",
            Observable::Wigner => "wigner",
            Observable::AsymptoticInversion => "asymptotic_inversion",
            Observable::QuarterRevival => "quarter_revival",
        }
    }
}

impl FromStr for Observable {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        Observable::ALL
            .iter()
            .copied()
            .find(|o| o.name() == s || (s == "mandel" && *o == Observable::MandelQ))
            .ok_or_else(|| format!("unknown observable `{s}`"))
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Sweep {
    /// `t_max = None` selects the default span for the model.
    Time { t_min: f64, t_max: Option<f64>, dt: f64 },
    Alpha { alpha_min: f64, alpha_max: f64, alpha_step: f64, t: f64 },
    Wigner { nx: usize, np: usize, range: Option<f64>, t: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub state: SuperpositionParams,
    pub model: ModelParams,
    pub sweep: Sweep,
    pub observables: Vec<Observable>,
    pub dim: Option<usize>,
    pub tolerance: Option<f64>,
    /// Times at which `pnd_t.csv` samples `P(m, T)`.
    pub pnd_times: Vec<f64>,
}

impl ScenarioConfig {
    /// Time samples of a time sweep; `mean_n` feeds the default span.
    pub fn times(&self, mean_n: f64) -> Vec<f64> {
        match self.sweep {
            Sweep::Time { t_min, t_max, dt } => {
                let t_max = t_max.unwrap_or_else(|| default_t_max(self.model.k, mean_n));
                let n = ((t_max - t_min) / dt + 1e-9).floor() as usize;
                (0..=n).map(|i| t_min + i as f64 * dt).collect()
            }
            _ => Vec::new(),
        }
    }

    /// Amplitudes of an alpha sweep.
    pub fn alphas(&self) -> Vec<f64> {
        match self.sweep {
            Sweep::Alpha {
                alpha_min,
                alpha_max,
                alpha_step,
                ..
            } => {
                let n = ((alpha_max - alpha_min) / alpha_step + 1e-9).floor() as usize;
                (0..=n).map(|i| alpha_min + i as f64 * alpha_step).collect()
            }
            _ => Vec::new(),
        }
    }
}

/// Four mixture revival periods for `k = 1`, four periods `pi` for `k = 2`.
pub fn default_t_max(k: usize, mean_n: f64) -> f64 {
    if k == 2 {
        4.0 * PI
    } else {
        4.0 * PI * mean_n.max(1.0).sqrt()
    }
}

/// Parses `0`, `-1`, `i`, `-i`, `0.5i`, `1+2i`, `0.3-0.4i`.
pub fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || format!("cannot parse complex number `{s}`");
    if t.is_empty() {
        return Err(err());
    }
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| err());
    };
    // split at the last sign that is not part of an exponent or leading
    let split = body
        .char_indices()
        .rev()
        .find(|&(i, c)| (c == '+' || c == '-') && i > 0 && !matches!(body.as_bytes()[i - 1], b'e' | b'E'))
        .map(|(i, _)| i);
    let imag = |x: &str| -> std::result::Result<f64, String> {
        match x {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => x.parse::<f64>().map_err(|_| err()),
        }
    };
    match split {
        Some(i) => {
            let re = body[..i].parse::<f64>().map_err(|_| err())?;
            Ok(Complex64::new(re, imag(&body[i..])?))
        }
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

/// Ordered `key -> (line, value)` map of a config text.
fn parse_pairs(text: &str) -> Result<BTreeMap<String, (usize, String)>> {
    let mut out = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(JcmError::Config {
                line: line_no,
                message: format!("expected `key = value`, got `{line}`"),
            });
        };
        let key = key.trim().to_ascii_lowercase();
        if key.is_empty() {
            return Err(JcmError::Config {
                line: line_no,
                message: "empty key".into(),
            });
        }
        if out.insert(key.clone(), (line_no, value.trim().to_string())).is_some() {
            return Err(JcmError::Config {
                line: line_no,
                message: format!("duplicate key `{key}`"),
            });
        }
    }
    Ok(out)
}

struct Fields {
    pairs: BTreeMap<String, (usize, String)>,
}

impl Fields {
    fn take(&mut self, key: &str) -> Option<(usize, String)> {
        self.pairs.remove(key)
    }

    fn parse<T: FromStr>(&mut self, key: &str) -> Result<Option<T>> {
        match self.take(key) {
            None => Ok(None),
            Some((line, v)) => v.parse::<T>().map(Some).map_err(|_| JcmError::Config {
                line,
                message: format!("invalid value `{v}` for `{key}`"),
            }),
        }
    }

    fn require<T: FromStr>(&mut self, key: &str, line_hint: usize) -> Result<T> {
        self.parse(key)?.ok_or_else(|| JcmError::Config {
            line: line_hint,
            message: format!("missing required key `{key}`"),
        })
    }

    fn list<T, F>(&mut self, key: &str, f: F) -> Result<Option<Vec<T>>>
    where
        F: Fn(&str) -> std::result::Result<T, String>,
    {
        match self.take(key) {
            None => Ok(None),
            Some((line, v)) => v
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| f(s.trim()).map_err(|message| JcmError::Config { line, message }))
                .collect::<Result<Vec<T>>>()
                .map(Some),
        }
    }
}

/// Parses a config text, then applies `overrides` (`key=value` strings).
pub fn parse_config(text: &str, overrides: &[String]) -> Result<ScenarioConfig> {
    let mut pairs = parse_pairs(text)?;
    for (i, ov) in overrides.iter().enumerate() {
        let Some((k, v)) = ov.split_once('=') else {
            return Err(JcmError::Config {
                line: 0,
                message: format!("override {} is not `key=value`: `{ov}`", i + 1),
            });
        };
        pairs.insert(k.trim().to_ascii_lowercase(), (0, v.trim().to_string()));
    }
    let last_line = pairs.values().map(|(l, _)| *l).max().unwrap_or(0);
    let mut f = Fields { pairs };

    let alpha: f64 = f.parse("alpha")?.unwrap_or(0.0);
    let r: f64 = f.parse("r")?.unwrap_or(0.0);
    let n: usize = f.parse("n")?.unwrap_or(0);
    let eps = match f.take("eps") {
        None => Complex64::new(0.0, 0.0),
        Some((line, v)) => parse_complex(&v).map_err(|message| JcmError::Config { line, message })?,
    };
    let k: usize = f.parse("k")?.unwrap_or(1);
    let model = ModelParams::new(k).map_err(|e| JcmError::Config {
        line: 0,
        message: e.to_string(),
    })?;

    let sweep_kind = f.take("sweep").unwrap_or((0, "time".into()));
    let sweep = match sweep_kind.1.as_str() {
        "time" => {
            let t_min: f64 = f.parse("t_min")?.unwrap_or(0.0);
            let t_max: Option<f64> = f.parse("t_max")?;
            let dt: f64 = f.parse("dt")?.unwrap_or(0.02);
            if !(dt > 0.0) {
                return Err(JcmError::Config {
                    line: sweep_kind.0,
                    message: format!("dt must be positive, got {dt}"),
                });
            }
            if let Some(t_max) = t_max {
                if t_max < t_min {
                    return Err(JcmError::Config {
                        line: sweep_kind.0,
                        message: format!("t_max {t_max} below t_min {t_min}"),
                    });
                }
            }
            Sweep::Time { t_min, t_max, dt }
        }
        "alpha" => {
            let alpha_min: f64 = f.require("alpha_min", last_line)?;
            let alpha_max: f64 = f.require("alpha_max", last_line)?;
            let alpha_step: f64 = f.require("alpha_step", last_line)?;
            let t: f64 = f.parse("t")?.unwrap_or(0.0);
            if !(alpha_step > 0.0) || alpha_max < alpha_min {
                return Err(JcmError::Config {
                    line: sweep_kind.0,
                    message: "alpha sweep needs alpha_min <= alpha_max and alpha_step > 0".into(),
                });
            }
            Sweep::Alpha {
                alpha_min,
                alpha_max,
                alpha_step,
                t,
            }
        }
        "wigner" => {
            let (nx, np) = match f.take("grid") {
                None => (101, 101),
                Some((line, v)) => parse_grid(&v).map_err(|message| JcmError::Config { line, message })?,
            };
            let range: Option<f64> = f.parse("range")?;
            let t: f64 = f.parse("t")?.unwrap_or(0.0);
            Sweep::Wigner { nx, np, range, t }
        }
        other => {
            return Err(JcmError::Config {
                line: sweep_kind.0,
                message: format!("unknown sweep `{other}` (time, alpha, wigner)"),
            })
        }
    };

    let mut observables = f
        .list("observables", |s| s.parse::<Observable>())?
        .unwrap_or_else(|| match sweep {
            Sweep::Wigner { .. } => vec![Observable::Wigner],
            _ => vec![Observable::Inversion],
        });
    observables.sort();
    observables.dedup();
    if observables.is_empty() {
        return Err(JcmError::Config {
            line: last_line,
            message: "no observables requested".into(),
        });
    }
    let dim: Option<usize> = f.parse("dim")?;
    let tolerance: Option<f64> = f.parse("tolerance")?;
    let pnd_times = f
        .list("pnd_times", |s| s.parse::<f64>().map_err(|_| format!("invalid time `{s}`")))?
        .unwrap_or_default();

    if let Some((key, (line, _))) = f.pairs.iter().next() {
        return Err(JcmError::Config {
            line: *line,
            message: format!("unknown key `{key}`"),
        });
    }

    Ok(ScenarioConfig {
        state: SuperpositionParams::new(alpha, r, n, eps),
        model,
        sweep,
        observables,
        dim,
        tolerance,
        pnd_times,
    })
}

/// `NX,NP` with both at least 1.
pub fn parse_grid(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("grid must be `NX,NP`, got `{s}`"))?;
    let nx = a.trim().parse::<usize>().map_err(|_| format!("invalid NX `{a}`"))?;
    let np = b.trim().parse::<usize>().map_err(|_| format!("invalid NP `{b}`"))?;
    if nx == 0 || np == 0 {
        return Err("grid sizes must be positive".into());
    }
    Ok((nx, np))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        let c = |re, im| Complex64::new(re, im);
        assert_eq!(parse_complex("0").unwrap(), c(0.0, 0.0));
        assert_eq!(parse_complex("-1").unwrap(), c(-1.0, 0.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("0.5i").unwrap(), c(0.0, 0.5));
        assert_eq!(parse_complex("1+2i").unwrap(), c(1.0, 2.0));
        assert_eq!(parse_complex("0.3 - 0.4i").unwrap(), c(0.3, -0.4));
        assert_eq!(parse_complex("1e-3+1e-2i").unwrap(), c(1e-3, 1e-2));
        assert_eq!(parse_complex("-2-i").unwrap(), c(-2.0, -1.0));
        assert!(parse_complex("").is_err());
        assert!(parse_complex("x").is_err());
    }

    #[test]
    fn full_config() {
        let text = "# comment\nalpha = 5\nn = 1\neps = i\nk = 2\n\nsweep = time\nt_max = 10 # inline\ndt = 0.5\nobservables = pnd, inversion\npnd_times = 1, 2.5\n";
        let cfg = parse_config(text, &[]).unwrap();
        assert_eq!(cfg.state.alpha, 5.0);
        assert_eq!(cfg.model.k, 2);
        assert_eq!(cfg.observables, vec![Observable::Inversion, Observable::Pnd]);
        assert_eq!(cfg.pnd_times, vec![1.0, 2.5]);
        assert_eq!(cfg.times(1.0).len(), 21);
    }

    #[test]
    fn overrides_win() {
        let cfg = parse_config("alpha = 2\nk = 1\n", &["alpha=3".into(), "k = 4".into()]).unwrap();
        assert_eq!(cfg.state.alpha, 3.0);
        assert_eq!(cfg.model.k, 4);
    }

    #[test]
    fn diagnostics_carry_lines() {
        let err = parse_config("alpha = 2\nbogus line\n", &[]).unwrap_err();
        assert!(matches!(err, JcmError::Config { line: 2, .. }));
        let err = parse_config("alpha = 2\nk = two\n", &[]).unwrap_err();
        assert!(matches!(err, JcmError::Config { line: 2, .. }));
        let err = parse_config("alpha = 2\ncolour = red\n", &[]).unwrap_err();
        assert!(matches!(err, JcmError::Config { line: 2, .. }));
        let err = parse_config("alpha = 1\nalpha = 2\n", &[]).unwrap_err();
        assert!(matches!(err, JcmError::Config { line: 2, .. }));
        let err = parse_config("dt = -1\nsweep = time\n", &[]).unwrap_err();
        assert!(matches!(err, JcmError::Config { line: 2, .. }));
        let err = parse_config("observables = spin\n", &[]).unwrap_err();
        assert!(matches!(err, JcmError::Config { line: 1, .. }));
        assert!(parse_config("k = 0\n", &[]).is_err());
        assert!(parse_config("sweep = alpha\nalpha_min = 1\n", &[]).is_err());
    }

    #[test]
    fn default_spans() {
        assert!((default_t_max(1, 50.0) - 4.0 * PI * 50f64.sqrt()).abs() < 1e-12);
        assert!((default_t_max(2, 50.0) - 4.0 * PI).abs() < 1e-12);
        let cfg = parse_config("sweep = alpha\nalpha_min = 0.5\nalpha_max = 1.5\nalpha_step = 0.25\nt = 1.578\n", &[]).unwrap();
        assert_eq!(cfg.alphas(), vec![0.5, 0.75, 1.0, 1.25, 1.5]);
    }

    #[test]
    fn grid_spec() {
        assert_eq!(parse_grid("201,101").unwrap(), (201, 101));
        assert!(parse_grid("201").is_err());
        assert!(parse_grid("0,3").is_err());
    }
}
