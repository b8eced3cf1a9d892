//! Harmonic-approximation formulas for strong coherent-type inputs:
//! approximate inversion, its envelopes, splitting and revival times, and
//! the quarter-revival factorized state of the two-photon model.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{JcmError, Result};
use crate::fock::FieldState;
use crate::states::{normalization, SuperpositionParams};

/// Linearization `sqrt(m + 1) ~ (eta1 + eta2 m)/2` about the mean photon number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicApproxParams {
    pub eta1: f64,
    pub eta2: f64,
    /// `None` for the fixed two-photon map.
    pub mean_n: Option<f64>,
}

pub fn harmonic_params(mean_n: f64) -> Result<HarmonicApproxParams> {
    if !(mean_n > 0.0) || !mean_n.is_finite() {
        return Err(JcmError::InvalidArgument(format!("mean photon number must be positive, got {mean_n}")));
    }
    let s = mean_n.sqrt();
    Ok(HarmonicApproxParams {
        eta1: s + 1.0 / s,
        eta2: 1.0 / s,
        mean_n: Some(mean_n),
    })
}

/// `sqrt((m+1)(m+2)) ~ 3/2 + m`.
pub fn two_photon() -> HarmonicApproxParams {
    HarmonicApproxParams {
        eta1: 3.0,
        eta2: 2.0,
        mean_n: None,
    }
}

/// Envelope of the mixture part.
pub fn f1(t: f64, alpha: f64, eta: &HarmonicApproxParams) -> f64 {
    let s2 = (0.5 * eta.eta2 * t).sin().powi(2);
    let a2 = alpha * alpha;
    (1.0 - 4.0 * a2 * s2) * (-2.0 * a2 * s2).exp()
}

/// Envelope of the interference part.
pub fn f2(t: f64, alpha: f64, eta: &HarmonicApproxParams) -> f64 {
    let c2 = (0.5 * eta.eta2 * t).cos().powi(2);
    let a2 = alpha * alpha;
    (1.0 - 4.0 * a2 * c2) * (-2.0 * a2 * c2).exp()
}

/// Approximate inversion for `D(alpha)|1>` superpositions in the one-photon
/// model. The prefactor is the inverse normalization bracket, so the value
/// at `T = 0` is 1.
pub fn inversion_asymptotic(t: f64, alpha: f64, eps: Complex64, eta: &HarmonicApproxParams) -> Result<f64> {
    let lam = normalization(&SuperpositionParams::new(alpha, 0.0, 1, eps))?.powi(2);
    let a2 = alpha * alpha;
    let base = t * (eta.eta1 + eta.eta2);
    let swing = a2 * (eta.eta2 * t).sin();
    let mixture = (1.0 + eps.norm_sqr()) * f1(t, alpha, eta) * (base + swing).cos();
    let interference = if eps.norm() > 0.0 {
        2.0 * eps.norm() * f2(t, alpha, eta) * eps.arg().cos() * (base - swing).cos()
    } else {
        0.0
    };
    Ok(lam * (mixture + interference))
}

/// Times in `[0, 2pi/eta2)` at which the mixture envelope splits: zeros of
/// `1 - 4a^2 s^2` for `n = 1` and of `8a^4 s^4 - 8a^2 s^2 + 1` for `n = 2`,
/// with `s = sin(eta2 T/2)`. Sorted ascending.
pub fn envelope_split_times(alpha: f64, n: usize, eta: &HarmonicApproxParams) -> Result<Vec<f64>> {
    let a2 = alpha * alpha;
    let s_values: Vec<f64> = match n {
        1 => vec![1.0 / (2.0 * alpha.abs())],
        2 => {
            let h = 0.5 / 2f64.sqrt();
            vec![((0.5 - h) / a2).sqrt(), ((0.5 + h) / a2).sqrt()]
        }
        _ => return Err(JcmError::InvalidArgument(format!("split times defined for n in {{1, 2}}, got {n}"))),
    };
    let mut out = Vec::new();
    for s in s_values {
        if !(s <= 1.0) {
            return Err(JcmError::NoRoot(format!("sin(eta2 T/2) = {s} for alpha = {alpha}")));
        }
        // s >= 0 and eta2 T/2 in [0, pi)
        let theta = s.asin();
        out.push(2.0 * theta / eta.eta2);
        out.push(2.0 * (PI - theta) / eta.eta2);
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    Ok(out)
}

/// `(2 pi sqrt(n), pi sqrt(n))`: mixture and interference revival times.
pub fn revival_times(mean_n: f64) -> Result<(f64, f64)> {
    if !(mean_n > 0.0) || !mean_n.is_finite() {
        return Err(JcmError::InvalidArgument(format!("mean photon number must be positive, got {mean_n}")));
    }
    let s = mean_n.sqrt();
    Ok((2.0 * PI * s, PI * s))
}

/// `C_{m-2}/C_m` for `D(alpha)|1>`, evaluated from the closed relation.
pub fn quarter_revival_ratio(m: usize, alpha: f64) -> Result<f64> {
    if m < 2 {
        return Err(JcmError::InvalidArgument(format!("ratio needs m >= 2, got {m}")));
    }
    let a2 = alpha * alpha;
    let mf = m as f64;
    if (mf - a2).abs() < 1e-9 {
        return Err(JcmError::Pole { m, alpha_sq: a2 });
    }
    let a4 = a2 * a2;
    Ok((mf * mf / a4 - mf / a4).sqrt() * (mf - a2 - 2.0) / (mf - a2))
}

/// Atomic superposition `c_plus |+> + c_minus |->`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomicState {
    pub c_plus: Complex64,
    pub c_minus: Complex64,
}

/// Factorized state of the two-photon model at `T = pi/4`: the field
/// amplitudes `C_m cos[(pi/4)(m + 3/2)]`, renormalized, and the atom in
/// `(|+> + i|->)/sqrt(2)`.
pub fn quarter_revival_state(coeffs: &[Complex64]) -> Result<(FieldState, AtomicState)> {
    let amps = coeffs
        .iter()
        .enumerate()
        .map(|(m, c)| c * (0.25 * PI * (m as f64 + 1.5)).cos())
        .collect();
    let field = FieldState::normalized(amps)?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    Ok((
        field,
        AtomicState {
            c_plus: Complex64::new(h, 0.0),
            c_minus: Complex64::new(0.0, h),
        },
    ))
}

/// Centered moving RMS of a uniformly sampled signal. Windows are truncated
/// at the ends.
pub fn moving_rms(signal: &[f64], dt: f64, window: f64) -> Vec<f64> {
    let half = ((0.5 * window / dt).round() as usize).max(1);
    let mut prefix = Vec::with_capacity(signal.len() + 1);
    prefix.push(0.0);
    for v in signal {
        prefix.push(prefix.last().unwrap() + v * v);
    }
    (0..signal.len())
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + half + 1).min(signal.len());
            ((prefix[hi] - prefix[lo]) / (hi - lo) as f64).max(0.0).sqrt()
        })
        .collect()
}

/// Interior local maxima. A plateau counts once, at its first index.
pub fn local_maxima(values: &[f64]) -> Vec<usize> {
    let mut out = Vec::new();
    let n = values.len();
    let mut i = 1;
    while i + 1 < n {
        if values[i] > values[i - 1] {
            let mut j = i;
            while j + 1 < n && values[j + 1] == values[i] {
                j += 1;
            }
            if j + 1 < n && values[j + 1] < values[i] {
                out.push(i);
            }
            i = j + 1;
        } else {
            i += 1;
        }
    }
    out
}

/// Local maxima whose topographic prominence is at least `min_prominence`.
pub fn prominent_maxima(values: &[f64], min_prominence: f64) -> Vec<usize> {
    local_maxima(values)
        .into_iter()
        .filter(|&i| {
            let peak = values[i];
            let left = values[..i]
                .iter()
                .rev()
                .take_while(|v| **v <= peak)
                .cloned()
                .fold(peak, f64::min);
            let right = values[i + 1..]
                .iter()
                .take_while(|v| **v <= peak)
                .cloned()
                .fold(peak, f64::min);
            peak - left.max(right) >= min_prominence
        })
        .collect()
}
