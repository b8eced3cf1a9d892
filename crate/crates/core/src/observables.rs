//! Normally ordered field moments, Mandel Q and quadrature squeezing.

use num_complex::Complex64;

use crate::dynamics::{FieldDensityMatrix, JointState};
use crate::error::{JcmError, Result};

/// `sqrt(m!/(m-s2)!) * sqrt((m-s2+s)!/(m-s2)!)`, the matrix element of
/// `a^dag^s a^s2` between `|m>` and `|m-s2+s>`.
fn ladder_weight(m: usize, s: usize, s2: usize) -> f64 {
    let base = m - s2;
    let mut w = 1.0;
    for i in 1..=s2 {
        w *= (base + i) as f64;
    }
    for i in 1..=s {
        w *= (base + i) as f64;
    }
    w.sqrt()
}

/// Anything that can report `<a^dag^s a^s2>` of the field.
pub trait FieldMoments {
    fn moment(&self, s: usize, s2: usize) -> Complex64;

    fn mean_photon(&self) -> f64 {
        self.moment(1, 1).re
    }

    fn number_distribution(&self) -> Vec<f64>;
}

impl FieldMoments for FieldDensityMatrix {
    fn moment(&self, s: usize, s2: usize) -> Complex64 {
        moment(self, s, s2)
    }

    fn number_distribution(&self) -> Vec<f64> {
        self.diagonal()
    }
}

/// Sum over the two branches of the pure joint state; no matrix is built.
impl FieldMoments for JointState {
    fn moment(&self, s: usize, s2: usize) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for branch in [self.excited_branch(), self.ground_branch()] {
            for m in s2..branch.len() {
                let target = m - s2 + s;
                if target >= branch.len() {
                    continue;
                }
                acc += branch[m] * branch[target].conj() * ladder_weight(m, s, s2);
            }
        }
        acc
    }

    fn number_distribution(&self) -> Vec<f64> {
        self.photon_distribution()
    }
}

/// `<a^dag^s a^s2> = Tr[rho a^dag^s a^s2]`.
pub fn moment(rho: &FieldDensityMatrix, s: usize, s2: usize) -> Complex64 {
    let dim = rho.dim();
    let mut acc = Complex64::new(0.0, 0.0);
    for m in s2..dim {
        let target = m - s2 + s;
        if target >= dim {
            continue;
        }
        acc += rho.get(m, target) * ladder_weight(m, s, s2);
    }
    acc
}

/// Mandel `Q = (<n^2> - <n>^2 - <n>) / <n>`.
pub fn mandel_q<F: FieldMoments + ?Sized>(field: &F) -> Result<f64> {
    mandel_q_from_distribution(&field.number_distribution())
}

/// Mandel Q from a photon-number distribution. The variance is summed about
/// the mean so that nearly Poissonian fields keep their small `Q`.
pub fn mandel_q_from_distribution(p: &[f64]) -> Result<f64> {
    let mean: f64 = p.iter().enumerate().map(|(m, v)| m as f64 * v).sum();
    if mean <= 1e-12 {
        return Err(JcmError::Vacuum { mean });
    }
    let var: f64 = p.iter().enumerate().map(|(m, v)| (m as f64 - mean).powi(2) * v).sum();
    Ok((var - mean) / mean)
}

/// Quadrature variances relative to the vacuum level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureReport {
    /// `4<dX^2> - 1` with `X = (a + a^dag)/2`.
    pub f: f64,
    /// `4<dY^2> - 1` with `Y = (a - a^dag)/(2i)`.
    pub s: f64,
    pub mean_x: f64,
    pub mean_y: f64,
}

impl QuadratureReport {
    /// `(F+1)(S+1)`, at least 1 by the uncertainty relation.
    pub fn uncertainty_product(&self) -> f64 {
        (self.f + 1.0) * (self.s + 1.0)
    }
}

pub fn squeezing_factors<F: FieldMoments + ?Sized>(field: &F) -> QuadratureReport {
    let a = field.moment(0, 1);
    let a2 = field.moment(0, 2);
    let n = field.mean_photon();
    let mean_x = a.re;
    let mean_y = a.im;
    QuadratureReport {
        f: 2.0 * a2.re + 2.0 * n - 4.0 * mean_x * mean_x,
        s: -2.0 * a2.re + 2.0 * n - 4.0 * mean_y * mean_y,
        mean_x,
        mean_y,
    }
}
