//! Truncated Fock-space operator algebra.
//!
//! This is the brute-force route: displacement and squeeze operators are
//! built as matrix exponentials of their generators and applied to number
//! states, and the atom-field coupling is exponentiated directly. The closed
//! forms in [`crate::states`] and [`crate::dynamics`] are checked against it.

use std::sync::atomic::{AtomicU64, Ordering};

use num_complex::Complex64;

use crate::dynamics::{JointState, ModelParams};
use crate::error::{JcmError, Result};
use crate::numerics::{ln_factorial, sqrt_h_log};
use crate::states::SuperpositionParams;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Default tail-mass tolerance, overridable through `JCM_DEFAULT_TOL`.
pub const DEFAULT_TAIL_TOLERANCE: f64 = 1e-12;

// f64 bits; 0 means no override
static TOLERANCE_OVERRIDE: AtomicU64 = AtomicU64::new(0);

/// Process-wide tolerance that takes precedence over the environment.
pub fn set_tail_tolerance(tol: Option<f64>) {
    let bits = tol.filter(|t| *t > 0.0).map_or(0, f64::to_bits);
    TOLERANCE_OVERRIDE.store(bits, Ordering::Relaxed);
}

/// Tail-mass tolerance in effect for this process.
pub fn tail_tolerance() -> f64 {
    let bits = TOLERANCE_OVERRIDE.load(Ordering::Relaxed);
    if bits != 0 {
        return f64::from_bits(bits);
    }
    std::env::var("JCM_DEFAULT_TOL")
        .ok()
        .and_then(|s| s.trim().parse::<f64>().ok())
        .filter(|t| *t > 0.0)
        .unwrap_or(DEFAULT_TAIL_TOLERANCE)
}

/// Number of top indices that count as the tail of a `dim`-level vector.
/// Two levels at least, so single-parity states cannot hide their tail.
pub fn tail_len(dim: usize) -> usize {
    ((dim as f64) * 0.05).ceil().max(2.0).min(dim as f64) as usize
}

/// Probability in the top 5% of the basis.
pub fn tail_mass(amps: &[Complex64]) -> f64 {
    let n = tail_len(amps.len()).min(amps.len());
    amps[amps.len() - n..].iter().map(|c| c.norm_sqr()).sum()
}

/// Probability in the top `levels` entries.
pub fn top_mass(amps: &[Complex64], levels: usize) -> f64 {
    let n = levels.min(amps.len());
    amps[amps.len() - n..].iter().map(|c| c.norm_sqr()).sum()
}

/// Truncation heuristic: mean plus ten standard deviations of the photon
/// distribution, with room for `k` extra quanta.
pub fn default_dim(params: &SuperpositionParams, k: usize) -> usize {
    let beta = params.beta().abs();
    let squeeze = params.n as f64 * (2.0 * params.r.abs()).exp();
    (beta * beta + 10.0 * beta + squeeze + k as f64 + 20.0).ceil() as usize
}

/// Levels at the top of the field space that must stay empty for an
/// evolution with absorption parameter `k`.
pub fn headroom_levels(dim: usize, k: usize) -> usize {
    k + tail_len(dim)
}

/// Dense square matrix over the truncated number basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    dim: usize,
    entries: Vec<Complex64>,
}

impl FockOperator {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut out = Self::zeros(dim);
        for i in 0..dim {
            out.entries[i * dim + i] = ONE;
        }
        out
    }

    /// `a`, with `a[m-1][m] = sqrt(m)`.
    pub fn annihilation(dim: usize) -> Self {
        let mut out = Self::zeros(dim);
        for m in 1..dim {
            out.entries[(m - 1) * dim + m] = Complex64::new((m as f64).sqrt(), 0.0);
        }
        out
    }

    pub fn creation(dim: usize) -> Self {
        Self::annihilation(dim).adjoint()
    }

    /// Diagonal `(-1)^n`.
    pub fn parity(dim: usize) -> Self {
        let mut out = Self::zeros(dim);
        for m in 0..dim {
            out.entries[m * dim + m] = if m % 2 == 0 { ONE } else { -ONE };
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, v: Complex64) {
        self.entries[row * self.dim + col] = v;
    }

    pub fn column(&self, col: usize) -> Vec<Complex64> {
        (0..self.dim).map(|r| self.get(r, col)).collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.entries[c * self.dim + r] = self.entries[r * self.dim + c].conj();
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|v| v * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for l in 0..d {
                let a = self.entries[i * d + l];
                if a == ZERO {
                    continue;
                }
                let row = &other.entries[l * d..(l + 1) * d];
                let dst = &mut out.entries[i * d..(i + 1) * d];
                for (o, b) in dst.iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|r| {
                self.entries[r * self.dim..(r + 1) * self.dim]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Induced 1-norm (max column sum).
    pub fn norm_one(&self) -> f64 {
        (0..self.dim)
            .map(|c| (0..self.dim).map(|r| self.get(r, c).norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise difference over the leading `block x block` corner.
    pub fn max_abs_diff_block(&self, other: &Self, block: usize) -> f64 {
        let b = block.min(self.dim).min(other.dim);
        let mut worst: f64 = 0.0;
        for r in 0..b {
            for c in 0..b {
                worst = worst.max((self.get(r, c) - other.get(r, c)).norm());
            }
        }
        worst
    }

    /// Matrix exponential by scaling and squaring of a truncated Taylor series.
    pub fn exp(&self) -> Self {
        let norm = self.norm_one();
        let squarings = if norm > 0.5 {
            (norm / 0.5).log2().ceil() as u32
        } else {
            0
        };
        let scaled = self.scale(Complex64::new(0.5f64.powi(squarings as i32), 0.0));
        let mut sum = Self::identity(self.dim);
        let mut term = Self::identity(self.dim);
        for j in 1..=30 {
            term = term.matmul(&scaled).scale(Complex64::new(1.0 / j as f64, 0.0));
            sum = sum.add(&term);
            let tn = term.norm_one();
            if tn < 1e-18 * sum.norm_one() {
                break;
            }
        }
        for _ in 0..squarings {
            sum = sum.matmul(&sum);
        }
        sum
    }
}

/// Sparse generator stored as a set of diagonals.
#[derive(Debug, Clone)]
pub struct BandGenerator {
    dim: usize,
    /// `(offset, values)`: entry `(i, i + offset)` is `values[i]` for rows
    /// where the column is in range.
    bands: Vec<(isize, Vec<Complex64>)>,
}

impl BandGenerator {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            bands: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Adds `values[i]` at `(i, i + offset)`.
    pub fn push_band(&mut self, offset: isize, values: Vec<Complex64>) {
        assert_eq!(values.len(), self.dim);
        self.bands.push((offset, values));
    }

    fn col_of(&self, row: usize, offset: isize) -> Option<usize> {
        let c = row as isize + offset;
        (c >= 0 && (c as usize) < self.dim).then_some(c as usize)
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![ZERO; self.dim];
        for (offset, vals) in &self.bands {
            for (row, o) in out.iter_mut().enumerate() {
                if let Some(col) = self.col_of(row, *offset) {
                    *o += vals[row] * v[col];
                }
            }
        }
        out
    }

    /// Row-sum bound on the operator norm.
    pub fn norm_inf(&self) -> f64 {
        let mut rows = vec![0.0; self.dim];
        for (offset, vals) in &self.bands {
            for (row, acc) in rows.iter_mut().enumerate() {
                if self.col_of(row, *offset).is_some() {
                    *acc += vals[row].norm();
                }
            }
        }
        rows.into_iter().fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> FockOperator {
        let mut out = FockOperator::zeros(self.dim);
        for (offset, vals) in &self.bands {
            for row in 0..self.dim {
                if let Some(col) = self.col_of(row, *offset) {
                    let cur = out.get(row, col);
                    out.set(row, col, cur + vals[row]);
                }
            }
        }
        out
    }

    /// `exp(G) v` by substepped Taylor series; each substep has `||G h|| <= 1/2`.
    pub fn exp_apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        let norm = self.norm_inf();
        let steps = ((norm / 0.5).ceil() as usize).max(1);
        let h = 1.0 / steps as f64;
        let mut state = v.to_vec();
        for _ in 0..steps {
            let mut term = state.clone();
            let mut sum = state.clone();
            for j in 1..=40 {
                term = self.apply(&term);
                let f = h / j as f64;
                term.iter_mut().for_each(|t| *t *= f);
                let mut tn: f64 = 0.0;
                for (s, t) in sum.iter_mut().zip(&term) {
                    *s += t;
                    tn = tn.max(t.norm());
                }
                if tn < 1e-20 {
                    break;
                }
            }
            state = sum;
        }
        state
    }
}

/// Generator `alpha a^dag - alpha^* a` of the displacement operator.
pub fn displacement_generator(alpha: Complex64, dim: usize) -> BandGenerator {
    let mut g = BandGenerator::new(dim);
    // (m, m-1): alpha sqrt(m); (m, m+1): -alpha^* sqrt(m+1)
    let lower = (0..dim)
        .map(|m| alpha * (m as f64).sqrt())
        .collect::<Vec<_>>();
    let upper = (0..dim)
        .map(|m| -alpha.conj() * ((m + 1) as f64).sqrt())
        .collect::<Vec<_>>();
    g.push_band(-1, lower);
    g.push_band(1, upper);
    g
}

/// Generator `(r/2)(a^2 - a^dag^2)` of the squeeze operator.
pub fn squeeze_generator(r: f64, dim: usize) -> BandGenerator {
    let mut g = BandGenerator::new(dim);
    let half = 0.5 * r;
    // a^2: (m, m+2) = sqrt((m+1)(m+2)); a^dag^2: (m, m-2) = sqrt(m(m-1))
    let upper = (0..dim)
        .map(|m| Complex64::new(half * (((m + 1) * (m + 2)) as f64).sqrt(), 0.0))
        .collect::<Vec<_>>();
    let lower = (0..dim)
        .map(|m| {
            let v = if m >= 2 { ((m * (m - 1)) as f64).sqrt() } else { 0.0 };
            Complex64::new(-half * v, 0.0)
        })
        .collect::<Vec<_>>();
    g.push_band(2, upper);
    g.push_band(-2, lower);
    g
}

/// `D(alpha) = exp(alpha a^dag - alpha^* a)` on the truncated space.
pub fn displacement(alpha: Complex64, dim: usize) -> Result<FockOperator> {
    if dim < 2 {
        return Err(JcmError::InvalidArgument(format!("dim {dim} < 2")));
    }
    Ok(displacement_generator(alpha, dim).to_dense().exp())
}

/// `S(r) = exp[(r/2)(a^2 - a^dag^2)]` on the truncated space.
pub fn squeeze(r: f64, dim: usize) -> Result<FockOperator> {
    if dim < 2 {
        return Err(JcmError::InvalidArgument(format!("dim {dim} < 2")));
    }
    Ok(squeeze_generator(r, dim).to_dense().exp())
}

/// Normalized field amplitudes over a truncated number basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    amplitudes: Vec<Complex64>,
    tail_mass: f64,
}

impl FieldState {
    /// Wraps amplitudes as given (no renormalization); records the tail mass.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Self {
        let tail_mass = tail_mass(&amplitudes);
        Self {
            amplitudes,
            tail_mass,
        }
    }

    /// Renormalizes to unit norm first.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(JcmError::Degenerate { bracket: norm });
        }
        amplitudes.iter_mut().for_each(|c| *c /= norm);
        Ok(Self::from_amplitudes(amplitudes))
    }

    /// Number state `|n>` in a `dim`-level space.
    pub fn fock(n: usize, dim: usize) -> Self {
        let mut amps = vec![ZERO; dim.max(n + 1)];
        amps[n] = ONE;
        Self::from_amplitudes(amps)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|c| c.norm_sqr()).collect()
    }

    /// Errors unless the tail mass is below `tol`.
    pub fn check_tail(self, tol: f64) -> Result<Self> {
        if self.tail_mass >= tol {
            return Err(JcmError::Truncation {
                dim: self.dim(),
                tail_mass: self.tail_mass,
                tolerance: tol,
                suggested_dim: 2 * self.dim(),
            });
        }
        Ok(self)
    }

    /// `|<self|other>|^2` with zero padding of the shorter vector.
    pub fn overlap_sqr(&self, other: &FieldState) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            .norm_sqr()
    }
}

/// `lambda [D(alpha) + eps D(-alpha)] S(r) |n>` with a complex displacement,
/// built from the operator exponentials and normalized numerically.
pub fn build_superposition_numeric(
    alpha: Complex64,
    r: f64,
    n: usize,
    eps: Complex64,
    dim: usize,
) -> Result<FieldState> {
    if dim < 2 || n >= dim {
        return Err(JcmError::InvalidArgument(format!(
            "dim {dim} too small for n = {n}"
        )));
    }
    let mut fock = vec![ZERO; dim];
    fock[n] = ONE;
    let squeezed = squeeze_generator(r, dim).exp_apply(&fock);
    let plus = displacement_generator(alpha, dim).exp_apply(&squeezed);
    let amps = if eps == ZERO {
        plus
    } else {
        let minus = displacement_generator(-alpha, dim).exp_apply(&squeezed);
        plus.iter().zip(&minus).map(|(p, m)| p + eps * m).collect()
    };
    let norm = amps.iter().map(|c| c.norm_sqr()).sum::<f64>();
    if norm <= 1e-28 {
        return Err(JcmError::Degenerate { bracket: norm });
    }
    FieldState::normalized(amps)?.check_tail(tail_tolerance())
}

/// Operator-route construction of the superposition state.
pub fn build_ssdns_numeric(params: &SuperpositionParams, dim: usize) -> Result<FieldState> {
    build_superposition_numeric(
        Complex64::new(params.alpha, 0.0),
        params.r,
        params.n,
        params.eps(),
        dim,
    )
}

fn check_headroom(field: &FieldState, k: usize) -> Result<()> {
    let tol = tail_tolerance();
    let mass = top_mass(field.amplitudes(), headroom_levels(field.dim(), k));
    if mass >= tol {
        return Err(JcmError::Truncation {
            dim: field.dim(),
            tail_mass: mass,
            tolerance: tol,
            suggested_dim: 2 * field.dim(),
        });
    }
    Ok(())
}

/// `exp(-i T H)` for a 2x2 Hermitian `H`, via its Pauli decomposition.
fn expm_hermitian_2x2(h: [[Complex64; 2]; 2], t: f64) -> [[Complex64; 2]; 2] {
    let a = 0.5 * (h[0][0].re + h[1][1].re);
    let bz = 0.5 * (h[0][0].re - h[1][1].re);
    let bx = h[0][1].re;
    let by = -h[0][1].im;
    let b = (bx * bx + by * by + bz * bz).sqrt();
    let global = Complex64::from_polar(1.0, -a * t);
    let (c, s) = ((b * t).cos(), (b * t).sin());
    let i = Complex64::new(0.0, 1.0);
    let (nx, ny, nz) = if b > 0.0 { (bx / b, by / b, bz / b) } else { (0.0, 0.0, 0.0) };
    // cos(bt) I - i sin(bt) (n . sigma)
    let u00 = Complex64::new(c, 0.0) - i * s * nz;
    let u11 = Complex64::new(c, 0.0) + i * s * nz;
    let u01 = -i * s * Complex64::new(nx, -ny);
    let u10 = -i * s * Complex64::new(nx, ny);
    [[global * u00, global * u01], [global * u10, global * u11]]
}

/// Evolves `|+> (x) field` under `g(a^k s+ + a^dag^k s-)` by exact
/// diagonalization of each invariant pair `{|m,+>, |m+k,->}`.
pub fn hamiltonian_evolve_oracle(field: &FieldState, k: usize, t: f64) -> Result<JointState> {
    let model = ModelParams::new(k)?;
    check_headroom(field, k)?;
    let mut excited = Vec::with_capacity(field.dim());
    let mut ground = Vec::with_capacity(field.dim());
    for (m, &c) in field.amplitudes().iter().enumerate() {
        let coupling = sqrt_h_log(m, k);
        let h = [
            [ZERO, Complex64::new(coupling, 0.0)],
            [Complex64::new(coupling, 0.0), ZERO],
        ];
        let u = expm_hermitian_2x2(h, t);
        excited.push(u[0][0] * c);
        ground.push(u[1][0] * c);
    }
    Ok(JointState::from_parts(model, excited, ground))
}

/// Same evolution by a dense exponential of the full `2(dim+k)`-dimensional
/// interaction Hamiltonian. Only intended for small `dim`.
pub fn hamiltonian_evolve_full(field: &FieldState, k: usize, t: f64) -> Result<JointState> {
    let model = ModelParams::new(k)?;
    check_headroom(field, k)?;
    let dim = field.dim();
    let levels = dim + k;
    // basis: excited |m,+> at index m, ground |l,-> at index levels + l
    let total = 2 * levels;
    let mut gen = FockOperator::zeros(total);
    let minus_i_t = Complex64::new(0.0, -t);
    for m in 0..levels {
        let l = m + k;
        if l >= levels {
            break;
        }
        let g = ((ln_factorial(l) - ln_factorial(m)) * 0.5).exp();
        gen.set(m, levels + l, minus_i_t * g);
        gen.set(levels + l, m, minus_i_t * g);
    }
    let u = gen.exp();
    let mut psi0 = vec![ZERO; total];
    psi0[..dim].copy_from_slice(field.amplitudes());
    let psi = u.apply(&psi0);
    let excited = psi[..dim].to_vec();
    let ground = (0..dim).map(|m| psi[levels + m + k]).collect();
    Ok(JointState::from_parts(model, excited, ground))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn unitarity_defect(u: &FockOperator, block: usize) -> f64 {
        let prod = u.adjoint().matmul(u);
        prod.max_abs_diff_block(&FockOperator::identity(u.dim()), block)
    }

    #[test]
    fn rejects_tiny_dim() {
        assert!(displacement(c(1.0, 0.0), 1).is_err());
        assert!(squeeze(0.5, 1).is_err());
    }

    #[test]
    fn zero_parameters_give_identity() {
        let d = displacement(ZERO, 12).unwrap();
        assert!(d.max_abs_diff_block(&FockOperator::identity(12), 12) < 1e-15);
        let s = squeeze(0.0, 12).unwrap();
        assert!(s.max_abs_diff_block(&FockOperator::identity(12), 12) < 1e-15);
    }

    #[test]
    fn displacement_column_is_coherent_state() {
        let d = displacement(c(1.0, 0.0), 40).unwrap();
        let mut fact = 1.0;
        for m in 0..20 {
            if m > 0 {
                fact *= m as f64;
            }
            let want = (-0.5f64).exp() / fact.sqrt();
            assert!((d.get(m, 0) - c(want, 0.0)).norm() < 1e-12, "m={m}");
        }
        assert!((d.get(2, 0).re - 0.42888).abs() < 1e-5);
    }

    #[test]
    fn displacement_inverse_and_unitarity() {
        let dim = 60;
        let alpha = c(1.3, -0.4);
        let d = displacement(alpha, dim).unwrap();
        let dm = displacement(-alpha, dim).unwrap();
        let prod = d.matmul(&dm);
        assert!(prod.max_abs_diff_block(&FockOperator::identity(dim), dim / 2) < 1e-10);
        assert!(unitarity_defect(&d, dim * 4 / 5) < 1e-8);
    }

    #[test]
    fn squeeze_structure() {
        let dim = 50;
        let s = squeeze(1.0, dim).unwrap();
        for r in 0..dim {
            for col in 0..dim {
                if (r + col) % 2 == 1 {
                    assert_eq!(s.get(r, col), ZERO);
                }
            }
        }
        let want = 1.0 / 1f64.cosh().sqrt();
        assert!((s.get(0, 0).re - want).abs() < 1e-10);
        assert!((want - 0.80501).abs() < 1e-5);
        let p = FockOperator::parity(dim);
        let comm = s.matmul(&p).max_abs_diff_block(&p.matmul(&s), dim);
        assert!(comm < 1e-10);
        assert!(unitarity_defect(&squeeze(0.3, dim).unwrap(), dim * 4 / 5) < 1e-8);
    }

    #[test]
    fn dense_and_action_exponentials_agree() {
        let dim = 40;
        let g = displacement_generator(c(0.7, 0.2), dim);
        let dense = g.to_dense().exp();
        let mut v = vec![ZERO; dim];
        v[3] = ONE;
        let a = g.exp_apply(&v);
        let b = dense.column(3);
        let worst = a.iter().zip(&b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        assert!(worst < 1e-12);
    }

    #[test]
    fn numeric_builder_trivial_cases() {
        let vac = build_superposition_numeric(ZERO, 0.0, 0, ZERO, 10).unwrap();
        assert!((vac.amplitudes()[0] - ONE).norm() < 1e-15);
        let fock2 = build_superposition_numeric(ZERO, 0.0, 2, ONE, 10).unwrap();
        for (m, a) in fock2.amplitudes().iter().enumerate() {
            let want = if m == 2 { 1.0 } else { 0.0 };
            assert!((a.norm() - want).abs() < 1e-15);
        }
        let cat = build_superposition_numeric(c(5.0, 0.0), 0.0, 0, ONE, 90).unwrap();
        for (m, a) in cat.amplitudes().iter().enumerate() {
            if m % 2 == 1 {
                assert!(a.norm() < 1e-14, "m={m} amp={a}");
            }
        }
    }

    #[test]
    fn numeric_builder_reports_truncation() {
        let err = build_superposition_numeric(c(5.0, 0.0), 0.0, 0, ZERO, 20).unwrap_err();
        assert!(matches!(err, JcmError::Truncation { suggested_dim: 40, .. }));
    }

    #[test]
    fn oracle_evolution_trivial_cases() {
        let field = FieldState::fock(0, 12);
        let psi = hamiltonian_evolve_oracle(&field, 1, 0.0).unwrap();
        assert!((psi.excited()[0] - ONE).norm() < 1e-15);
        assert!(psi.ground().iter().all(|g| g.norm() == 0.0));
        for &t in &[0.3, 1.0, 2.7] {
            let psi = hamiltonian_evolve_oracle(&field, 1, t).unwrap();
            assert!((psi.excited()[0] - c(t.cos(), 0.0)).norm() < 1e-14);
            assert!((psi.ground()[0] - c(0.0, -t.sin())).norm() < 1e-14);
        }
    }

    #[test]
    fn block_and_full_routes_agree() {
        let field = build_superposition_numeric(c(1.5, 0.0), 0.0, 0, ZERO, 30).unwrap();
        for k in 1..=3 {
            let a = hamiltonian_evolve_oracle(&field, k, 1.7).unwrap();
            let b = hamiltonian_evolve_full(&field, k, 1.7).unwrap();
            assert!(a.max_abs_diff(&b) < 1e-9, "k={k} diff={}", a.max_abs_diff(&b));
            assert!((b.norm_sqr() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn headroom_failure_is_reported() {
        let mut amps = vec![ZERO; 10];
        amps[9] = ONE;
        let field = FieldState::from_amplitudes(amps);
        assert!(matches!(
            hamiltonian_evolve_oracle(&field, 2, 1.0),
            Err(JcmError::Truncation { .. })
        ));
    }

    #[test]
    fn default_dim_covers_mean() {
        let p = SuperpositionParams::new(7.0, 0.0, 1, ZERO);
        let dim = default_dim(&p, 1);
        assert_eq!(dim, (49.0f64 + 70.0 + 1.0 + 1.0 + 20.0).ceil() as usize);
    }
}
