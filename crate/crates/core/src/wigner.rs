//! Wigner function of the reduced field (hbar = 1, `a = (x + ip)/sqrt(2)`).
//!
//! In this convention a coherent amplitude `alpha` peaks at
//! `(sqrt(2) Re alpha, sqrt(2) Im alpha)` and `W >= -1/pi`.
//!
//! The series evaluator sums `rho_{m m'} W_{m m'}` over `m >= m'` and adds the
//! conjugate half, so only non-negative Laguerre upper indices are needed.
//! Each `W_{m m'}` is formed from the bounded Laguerre function
//! `sqrt(m'!/m!) y^{a/2} e^{-y/2} L_{m'}^{(a)}(y)`, `a = m - m'`,
//! `y = 2|x + ip|^2`, which is generated by recurrence in `m'`.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::asymptotics::HarmonicApproxParams;
use crate::dynamics::{JointState, ModelParams};
use crate::error::{JcmError, Result};
use crate::numerics::{hermite_functions, ln_factorial};

/// Laguerre functions `sqrt(j!/(j+a)!) y^{a/2} e^{-y/2} L_j^{(a)}(y)` for
/// `j = 0..len`, by forward recurrence with rescaling.
pub fn laguerre_functions(len: usize, a: usize, y: f64) -> Vec<f64> {
    let mut out = vec![0.0; len];
    if len == 0 || (y == 0.0 && a > 0) {
        return out;
    }
    let af = a as f64;
    let mut scale = if a == 0 {
        -0.5 * y
    } else {
        0.5 * af * y.ln() - 0.5 * y - 0.5 * ln_factorial(a)
    };
    let mut factor = scale.exp();
    let mut prev = 1.0;
    out[0] = factor;
    if len == 1 {
        return out;
    }
    let mut cur = (1.0 + af - y) / (1.0 + af).sqrt();
    out[1] = cur * factor;
    for j in 1..len - 1 {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + af - y) * cur - (jf * (jf + af)).sqrt() * prev)
            / ((jf + 1.0) * (jf + 1.0 + af)).sqrt();
        prev = cur;
        cur = next;
        let mag = cur.abs().max(prev.abs());
        if mag > 1e100 {
            cur /= mag;
            prev /= mag;
            scale += mag.ln();
            factor = scale.exp();
        }
        out[j + 1] = cur * factor;
    }
    out
}

/// Accumulates `sum_{m,m'} rho_{m m'} W_{m m'}` for `rho = sum_b |v_b><v_b|`.
/// Returns the diagonal part and the `m > m'` part separately.
fn wigner_parts(branches: &[&[Complex64]], x: f64, p: f64) -> (f64, Complex64) {
    let dim = branches.iter().map(|b| b.len()).max().unwrap_or(0);
    let chi_conj = Complex64::new(x, -p);
    let r = chi_conj.norm();
    let unit = if r > 0.0 { chi_conj / r } else { Complex64::new(1.0, 0.0) };
    let y = 2.0 * r * r;

    let mut diag = 0.0;
    let mut lower = Complex64::new(0.0, 0.0);
    let mut phase = Complex64::new(1.0, 0.0);
    for a in 0..dim {
        if a > 0 {
            phase *= unit;
        }
        let lf = laguerre_functions(dim - a, a, y);
        if a == 0 {
            for (j, l) in lf.iter().enumerate() {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                let rho: f64 = branches.iter().map(|b| b.get(j).map_or(0.0, |v| v.norm_sqr())).sum();
                diag += sign * rho * l;
            }
        } else {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, l) in lf.iter().enumerate() {
                if *l == 0.0 {
                    continue;
                }
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                let rho: Complex64 = branches
                    .iter()
                    .map(|b| match (b.get(j + a), b.get(j)) {
                        (Some(u), Some(v)) => u * v.conj(),
                        _ => Complex64::new(0.0, 0.0),
                    })
                    .sum();
                acc += rho * (sign * l);
            }
            lower += acc * phase;
        }
    }
    (diag / PI, lower / PI)
}

/// `W(x, p)` of the reduced field of `psi`.
pub fn wigner_point(psi: &JointState, x: f64, p: f64) -> f64 {
    let e = psi.excited_branch();
    let g = psi.ground_branch();
    let (diag, lower) = wigner_parts(&[&e, &g], x, p);
    diag + 2.0 * lower.re
}

/// Full double sum without using realness: the `m < m'` half is added as
/// the conjugate of the computed half. The imaginary part is roundoff.
pub fn wigner_point_complex(psi: &JointState, x: f64, p: f64) -> Complex64 {
    let e = psi.excited_branch();
    let g = psi.ground_branch();
    let (diag, lower) = wigner_parts(&[&e, &g], x, p);
    // rho_{m' m} W_{m' m} = conj(rho_{m m'} W_{m m'}) term by term
    Complex64::new(diag, 0.0) + lower + lower.conj()
}

/// Wigner function of a pure field state.
pub fn wigner_pure(amps: &[Complex64], x: f64, p: f64) -> f64 {
    let (diag, lower) = wigner_parts(&[amps], x, p);
    diag + 2.0 * lower.re
}

/// Adaptive Simpson integration of a complex integrand on `[a, b]`, with the
/// interval pre-split into `panels` pieces.
pub fn integrate_adaptive<F>(f: &F, a: f64, b: f64, panels: usize, tol: f64) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    fn simpson<F: Fn(f64) -> Complex64>(
        f: &F,
        a: f64,
        fa: Complex64,
        b: f64,
        fb: Complex64,
        m: f64,
        fm: Complex64,
        whole: Complex64,
        tol: f64,
        depth: u32,
    ) -> Complex64 {
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (fa + 4.0 * flm + fm) * ((m - a) / 6.0);
        let right = (fm + 4.0 * frm + fb) * ((b - m) / 6.0);
        let delta = left + right - whole;
        if depth == 0 || delta.norm() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        simpson(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1)
            + simpson(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1)
    }

    let panels = panels.max(1);
    let h = (b - a) / panels as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..panels {
        let lo = a + h * i as f64;
        let hi = lo + h;
        let mid = 0.5 * (lo + hi);
        let (flo, fhi, fmid) = (f(lo), f(hi), f(mid));
        let whole = (flo + 4.0 * fmid + fhi) * (h / 6.0);
        total += simpson(f, lo, flo, hi, fhi, mid, fmid, whole, tol / panels as f64, 40);
    }
    total
}

fn position_wavefunction(amps: &[Complex64], x: f64) -> Complex64 {
    hermite_functions(amps.len(), x)
        .iter()
        .zip(amps)
        .map(|(phi, c)| c * phi)
        .sum()
}

/// `W(x, p)` by direct quadrature of
/// `(1/2pi) int dz e^{-ipz} <x + z/2| rho |x - z/2>` with position-space
/// number-state wavefunctions. Meant for small truncations.
pub fn wigner_integral_oracle(psi: &JointState, x: f64, p: f64) -> Result<f64> {
    let e = psi.excited_branch();
    let g = psi.ground_branch();
    let limit = 2.0 * ((psi.field_dim() as f64).sqrt() + 6.0);
    let integrand = |z: f64| -> Complex64 {
        let kernel = Complex64::from_polar(1.0, -p * z);
        let mut acc = Complex64::new(0.0, 0.0);
        for branch in [&e, &g] {
            let plus = position_wavefunction(branch, x + 0.5 * z);
            let minus = position_wavefunction(branch, x - 0.5 * z);
            acc += plus * minus.conj();
        }
        kernel * acc
    };
    let tail = integrand(limit).norm().max(integrand(-limit).norm());
    if tail > 1e-10 {
        return Err(JcmError::Quadrature { tail, limit });
    }
    let value = integrate_adaptive(&integrand, -limit, limit, 64, 1e-10);
    Ok(value.re / (2.0 * PI))
}

/// `W(0, T)` from the photon distribution alone:
/// `(1/pi) sum_m (-1)^m P(m) [cos^2 + (-1)^k sin^2](T sqrt(h(m,k)))`,
/// which is `(1/pi) sum (-1)^m P(m) cos(2T sqrt(h(m,k)))` for odd `k` and
/// time independent for even `k`.
pub fn wigner_origin_series(p: &[f64], model: ModelParams, t: f64) -> f64 {
    let k_sign = if model.k.is_multiple_of(2) { 1.0 } else { -1.0 };
    p.iter()
        .enumerate()
        .map(|(m, pm)| {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            let (s, c) = (t * model.rabi(m)).sin_cos();
            sign * pm * (c * c + k_sign * s * s)
        })
        .sum::<f64>()
        / PI
}

/// Wigner function sampled on a rectangular grid; `values[ix * np + ip]`.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerGrid {
    pub x_axis: Vec<f64>,
    pub p_axis: Vec<f64>,
    pub values: Vec<f64>,
    pub t: f64,
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![0.5 * (lo + hi)];
    }
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

impl WignerGrid {
    #[inline]
    pub fn at(&self, ix: usize, ip: usize) -> f64 {
        self.values[ix * self.p_axis.len() + ip]
    }

    fn spacing(axis: &[f64]) -> f64 {
        if axis.len() < 2 {
            0.0
        } else {
            axis[1] - axis[0]
        }
    }

    /// Riemann sum of `W dx dp`.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * Self::spacing(&self.x_axis) * Self::spacing(&self.p_axis)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Strict local maxima over the 8-neighbourhood with value above `floor`,
    /// returned as `(ix, ip)` sorted by decreasing height.
    pub fn local_maxima(&self, floor: f64) -> Vec<(usize, usize)> {
        let (nx, np) = (self.x_axis.len(), self.p_axis.len());
        let mut found = Vec::new();
        for ix in 1..nx.saturating_sub(1) {
            for ip in 1..np.saturating_sub(1) {
                let v = self.at(ix, ip);
                if v <= floor {
                    continue;
                }
                let mut is_max = true;
                'nb: for dx in [-1isize, 0, 1] {
                    for dp in [-1isize, 0, 1] {
                        if dx == 0 && dp == 0 {
                            continue;
                        }
                        let w = self.at((ix as isize + dx) as usize, (ip as isize + dp) as usize);
                        if w >= v {
                            is_max = false;
                            break 'nb;
                        }
                    }
                }
                if is_max {
                    found.push((ix, ip));
                }
            }
        }
        found.sort_by(|a, b| self.at(b.0, b.1).partial_cmp(&self.at(a.0, a.1)).unwrap());
        found
    }

    /// Local maxima at least `rel_floor * max()` high, thinned greedily by
    /// height so that kept peaks are at least `radius` apart in phase space.
    pub fn separated_maxima(&self, rel_floor: f64, radius: f64) -> Vec<(f64, f64, f64)> {
        let floor = rel_floor * self.max();
        let mut kept: Vec<(f64, f64, f64)> = Vec::new();
        for (ix, ip) in self.local_maxima(floor) {
            let (x, p) = (self.x_axis[ix], self.p_axis[ip]);
            if kept.iter().all(|(kx, kp, _)| (kx - x).hypot(kp - p) >= radius) {
                kept.push((x, p, self.at(ix, ip)));
            }
        }
        kept
    }

    /// Writes `x,p,W` rows.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "x,p,W")?;
        for (ix, x) in self.x_axis.iter().enumerate() {
            for (ip, p) in self.p_axis.iter().enumerate() {
                writeln!(
                    out,
                    "{},{},{}",
                    crate::cli::fmt_num(*x),
                    crate::cli::fmt_num(*p),
                    crate::cli::fmt_num(self.at(ix, ip))
                )?;
            }
        }
        Ok(())
    }
}

/// Evaluates [`wigner_point`] on an `nx x np` grid; rows are computed in
/// parallel and assembled in order.
pub fn wigner_grid(
    psi: &JointState,
    x_range: (f64, f64),
    p_range: (f64, f64),
    nx: usize,
    np: usize,
    t: f64,
) -> Result<WignerGrid> {
    if nx == 0 || np == 0 {
        return Err(JcmError::InvalidArgument("empty Wigner grid".into()));
    }
    let x_axis = linspace(x_range.0, x_range.1, nx);
    let p_axis = linspace(p_range.0, p_range.1, np);
    let values = x_axis
        .par_iter()
        .flat_map_iter(|&x| p_axis.iter().map(move |&p| wigner_point(psi, x, p)))
        .collect::<Vec<_>>();
    Ok(WignerGrid {
        x_axis,
        p_axis,
        values,
        t,
    })
}

/// Two-component cat form of the Wigner function for a strong coherent
/// input in the one-photon model under the harmonic approximation. The
/// `1/(2pi)` prefactor is kept as derived; the form is not normalized.
pub fn cat_wigner_asymptotic(x: f64, p: f64, t: f64, alpha: f64, eta: &HarmonicApproxParams) -> f64 {
    let half = 0.5 * t * eta.eta2;
    let (sh, ch) = half.sin_cos();
    let e1 = std::f64::consts::SQRT_2 * alpha * ch;
    let e2 = std::f64::consts::SQRT_2 * alpha * sh;
    let fringe = 2.0
        * (-p * p).exp()
        * sh
        * (t * (eta.eta1 - 0.5 * eta.eta2)
            + 2.0 * alpha * (std::f64::consts::SQRT_2 * x - alpha * ch) * sh)
            .sin();
    (-(x - e1).powi(2)).exp() * ((-(p - e2).powi(2)).exp() + (-(p + e2).powi(2)).exp() - fringe) / (2.0 * PI)
}
