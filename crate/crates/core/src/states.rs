//! Closed-form number-basis coefficients of the superposition
//! `lambda [D(alpha) + eps D(-alpha)] S(r) |n>` for real `alpha`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{JcmError, Result};
use crate::fock::{default_dim, headroom_levels, tail_tolerance, top_mass, FieldState};
use crate::numerics::{assoc_laguerre, hermite_sequence, laguerre, ln_factorial, ScaledComplex};

/// Below this squeeze parameter the displaced-number-state branch is used.
pub const R_MIN: f64 = 1e-6;
/// Below this displacement the squeezed-number-state branch is used.
pub const ALPHA_MIN: f64 = 1e-12;
/// Largest dimension tried by the automatic truncation search.
pub const MAX_AUTO_DIM: usize = 8192;

/// Parameters of the superposition state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperpositionParams {
    /// Real displacement amplitude.
    pub alpha: f64,
    /// Squeeze parameter.
    pub r: f64,
    /// Fock excitation of the seed state.
    pub n: usize,
    /// `|eps|`.
    pub eps_mod: f64,
    /// Relative phase of the two components, radians.
    pub eps_phase: f64,
}

impl SuperpositionParams {
    pub fn new(alpha: f64, r: f64, n: usize, eps: Complex64) -> Self {
        Self {
            alpha,
            r,
            n,
            eps_mod: eps.norm(),
            eps_phase: if eps.norm() == 0.0 { 0.0 } else { eps.arg() },
        }
    }

    /// `eps = 0`: squeezed displaced number state.
    pub fn single(alpha: f64, r: f64, n: usize) -> Self {
        Self::new(alpha, r, n, Complex64::new(0.0, 0.0))
    }

    /// `eps = i`: Yurke-Stoler superposition.
    pub fn yurke_stoler(alpha: f64, r: f64, n: usize) -> Self {
        Self {
            alpha,
            r,
            n,
            eps_mod: 1.0,
            eps_phase: 0.5 * PI,
        }
    }

    /// `eps = 1`.
    pub fn even(alpha: f64, r: f64, n: usize) -> Self {
        Self {
            alpha,
            r,
            n,
            eps_mod: 1.0,
            eps_phase: 0.0,
        }
    }

    /// `eps = -1`.
    pub fn odd(alpha: f64, r: f64, n: usize) -> Self {
        Self {
            alpha,
            r,
            n,
            eps_mod: 1.0,
            eps_phase: PI,
        }
    }

    pub fn eps(&self) -> Complex64 {
        // Snap the named phases so that eps = 1, -1, i are exact.
        let (s, c) = self.eps_phase.sin_cos();
        let snap = |v: f64| if v.abs() < 1e-15 { 0.0 } else { v };
        Complex64::new(snap(c), snap(s)) * self.eps_mod
    }

    /// `beta = alpha cosh r + alpha^* sinh r`, i.e. `alpha e^r` for real alpha.
    pub fn beta(&self) -> f64 {
        BetaParam::from_params(self).beta
    }

    /// `+1` for an even-parity superposition, `-1` for odd, `None` otherwise.
    ///
    /// With `eps = +-1` only levels with `(-1)^m = +-(-1)^n` are populated.
    pub fn photon_parity(&self) -> Option<f64> {
        let eps = self.eps();
        let n_sign = if self.n.is_multiple_of(2) { 1.0 } else { -1.0 };
        if (eps - 1.0).norm() < 1e-14 {
            Some(n_sign)
        } else if (eps + 1.0).norm() < 1e-14 {
            Some(-n_sign)
        } else {
            None
        }
    }
}

/// Effective displacement seen by the squeezed component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaParam {
    pub beta: f64,
}

impl BetaParam {
    pub fn from_params(p: &SuperpositionParams) -> Self {
        Self {
            beta: p.alpha * p.r.cosh() + p.alpha * p.r.sinh(),
        }
    }
}

fn normalization_bracket(params: &SuperpositionParams, r: f64) -> f64 {
    let beta = params.alpha * r.exp();
    let b2 = beta * beta;
    1.0 + params.eps_mod * params.eps_mod
        + 2.0 * params.eps_mod * (-2.0 * b2).exp() * laguerre(params.n, 4.0 * b2) * params.eps_phase.cos()
}

fn normalization_at(params: &SuperpositionParams, r: f64) -> Result<f64> {
    let bracket = normalization_bracket(params, r);
    if bracket <= 1e-14 {
        return Err(JcmError::Degenerate { bracket });
    }
    Ok(bracket.powf(-0.5))
}

/// Normalization constant `lambda`, chosen so the coefficients have unit norm.
pub fn normalization(params: &SuperpositionParams) -> Result<f64> {
    let r = if params.r.abs() < R_MIN { 0.0 } else { params.r };
    normalization_at(params, r)
}

fn parity_factor(params: &SuperpositionParams, m: usize) -> Complex64 {
    let sign = if (params.n + m).is_multiple_of(2) { 1.0 } else { -1.0 };
    let f = Complex64::new(1.0, 0.0) + sign * params.eps();
    // exact zero for the selection rule
    if f.norm() < 1e-15 {
        Complex64::new(0.0, 0.0)
    } else {
        f
    }
}

/// Square root of a real number on the branch consistent with the sign of
/// the squeeze parameter: negative arguments map to `i sgn(r) sqrt|x|`.
fn branch_sqrt(x: f64, r: f64) -> Complex64 {
    if x >= 0.0 {
        Complex64::new(x.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, r.signum() * (-x).sqrt())
    }
}

/// `<m|D(alpha)|n>` for real alpha, scaled by nothing else.
fn displaced_number_element(m: usize, n: usize, alpha: f64) -> ScaledComplex {
    if alpha == 0.0 {
        return if m == n {
            ScaledComplex::from_real(1.0)
        } else {
            ScaledComplex::ZERO
        };
    }
    let a2 = alpha * alpha;
    let (lo, hi) = if m >= n { (n, m) } else { (m, n) };
    let diff = hi - lo;
    let lag = assoc_laguerre(lo, diff, a2);
    let base = if m >= n { alpha } else { -alpha };
    let sign = if base < 0.0 && diff % 2 == 1 { -1.0 } else { 1.0 };
    let ln_mag = 0.5 * (ln_factorial(lo) - ln_factorial(hi)) + diff as f64 * alpha.abs().ln() - 0.5 * a2;
    ScaledComplex::from_ln(ln_mag) * ScaledComplex::from_real(sign * lag)
}

/// Coefficients `C_m` for `m = 0..dim`.
pub fn coefficients(params: &SuperpositionParams, dim: usize) -> Result<Vec<Complex64>> {
    if params.r.abs() < R_MIN {
        let lambda = normalization_at(params, 0.0)?;
        return Ok((0..dim)
            .map(|m| {
                let pf = parity_factor(params, m);
                if pf.norm() == 0.0 {
                    return Complex64::new(0.0, 0.0);
                }
                (displaced_number_element(m, params.n, params.alpha) * ScaledComplex::from_real(lambda))
                    .to_complex()
                    * pf
            })
            .collect());
    }
    generic_coefficients(params, dim)
}

fn generic_coefficients(params: &SuperpositionParams, dim: usize) -> Result<Vec<Complex64>> {
    let r = params.r;
    let n = params.n;
    let alpha = if params.alpha.abs() < ALPHA_MIN { 0.0 } else { params.alpha };
    let lambda = normalization_at(params, r)?;

    let t = r.tanh();
    let s = branch_sqrt((2.0 * r).sinh(), r);
    let q_m = ScaledComplex::from_complex(branch_sqrt(0.5 * t, r));
    let q_n = ScaledComplex::from_complex(branch_sqrt(-0.5 * t, r));
    let two_over_s = ScaledComplex::from_complex(2.0 / s);
    let i = Complex64::new(0.0, 1.0);
    let z_n = i * alpha / s;
    let z_m = r.exp() * alpha / s;
    let h_n = hermite_sequence(n + 1, z_n);
    let h_m = hermite_sequence(dim.max(1), z_m);

    // lambda / sqrt(n! cosh r) * exp[alpha^2 e^{2r} (tanh r - 1) / 2]
    let ln_front = lambda.ln() - 0.5 * (ln_factorial(n) + r.cosh().ln())
        + 0.5 * alpha * alpha * (2.0 * r).exp() * (t - 1.0);

    let mut out = Vec::with_capacity(dim);
    for m in 0..dim {
        let pf = parity_factor(params, m);
        if pf.norm() == 0.0 {
            out.push(Complex64::new(0.0, 0.0));
            continue;
        }
        let mut sum = ScaledComplex::ZERO;
        for j in 0..=m.min(n) {
            let ln_comb = ln_factorial(n) + ln_factorial(m)
                - ln_factorial(j)
                - ln_factorial(n - j)
                - ln_factorial(m - j);
            let term = ScaledComplex::from_ln(ln_comb)
                * two_over_s.powi(j)
                * q_n.powi(n - j)
                * h_n[n - j]
                * h_m[m - j];
            sum = sum + term;
        }
        let front = ScaledComplex::from_ln(ln_front - 0.5 * ln_factorial(m)) * q_m.powi(m);
        out.push((front * sum).to_complex() * pf);
    }
    Ok(out)
}

/// Single coefficient `C_m`.
pub fn coefficient(m: usize, params: &SuperpositionParams) -> Result<Complex64> {
    Ok(coefficients(params, m + 1)?[m])
}

/// Closed-form field state in a `dim`-level space, tail-checked.
pub fn field_state(params: &SuperpositionParams, dim: usize) -> Result<FieldState> {
    FieldState::from_amplitudes(coefficients(params, dim)?).check_tail(tail_tolerance())
}

/// Closed-form field state with the truncation chosen automatically: the
/// heuristic dimension, doubled until the tail check passes.
pub fn field_state_auto(params: &SuperpositionParams, k: usize) -> Result<FieldState> {
    let mut dim = default_dim(params, k).max(params.n + k + 2);
    loop {
        match field_state(params, dim) {
            Err(JcmError::Truncation { .. }) if dim < MAX_AUTO_DIM => dim *= 2,
            Ok(st)
                if k > 0
                    && dim < MAX_AUTO_DIM
                    && top_mass(st.amplitudes(), headroom_levels(dim, k)) >= tail_tolerance() =>
            {
                dim *= 2
            }
            other => return other,
        }
    }
}

/// `P(m) = |C_m|^2` for `m = 0..dim`.
pub fn photon_distribution(params: &SuperpositionParams, dim: usize) -> Result<Vec<f64>> {
    Ok(field_state(params, dim)?.probabilities())
}

/// Initial mean photon number.
pub fn mean_photon(params: &SuperpositionParams, dim: usize) -> Result<f64> {
    Ok(photon_distribution(params, dim)?
        .iter()
        .enumerate()
        .map(|(m, p)| m as f64 * p)
        .sum())
}
