//! Exact resonant evolution of the multiphoton Jaynes-Cummings model with the
//! atom initially excited, and the quantities read off the evolved state.
//!
//! Time is the scaled time `T = g t` throughout.

use num_complex::Complex64;

use crate::error::{JcmError, Result};
use crate::fock::{headroom_levels, tail_tolerance, top_mass, FieldState};
use crate::numerics::sqrt_h;

/// Model parameters: the number `k` of photons exchanged per transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelParams {
    pub k: usize,
}

impl ModelParams {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(JcmError::InvalidArgument("absorption parameter k must be >= 1".into()));
        }
        Ok(Self { k })
    }

    /// Rabi frequency of the pair `{|m,+>, |m+k,->}`.
    #[inline]
    pub fn rabi(&self, m: usize) -> f64 {
        sqrt_h(m, self.k)
    }
}

/// Pure atom-field state. `excited[m]` is the amplitude of `|m,+>` and
/// `ground[m]` the amplitude of `|m+k,->`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointState {
    model: ModelParams,
    excited: Vec<Complex64>,
    ground: Vec<Complex64>,
}

impl JointState {
    pub fn from_parts(model: ModelParams, excited: Vec<Complex64>, ground: Vec<Complex64>) -> Self {
        assert_eq!(excited.len(), ground.len());
        Self {
            model,
            excited,
            ground,
        }
    }

    pub fn model(&self) -> ModelParams {
        self.model
    }

    pub fn k(&self) -> usize {
        self.model.k
    }

    /// Number of field levels carried by the initial field.
    pub fn dim(&self) -> usize {
        self.excited.len()
    }

    /// Number of field levels the reduced state lives on.
    pub fn field_dim(&self) -> usize {
        self.dim() + self.k()
    }

    pub fn excited(&self) -> &[Complex64] {
        &self.excited
    }

    pub fn ground(&self) -> &[Complex64] {
        &self.ground
    }

    /// Field vector of the excited branch, indexed by photon number.
    pub fn excited_branch(&self) -> Vec<Complex64> {
        let mut v = self.excited.clone();
        v.resize(self.field_dim(), Complex64::new(0.0, 0.0));
        v
    }

    /// Field vector of the ground branch, indexed by photon number.
    pub fn ground_branch(&self) -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); self.k()];
        v.extend_from_slice(&self.ground);
        v
    }

    pub fn norm_sqr(&self) -> f64 {
        self.excited.iter().chain(&self.ground).map(|c| c.norm_sqr()).sum()
    }

    /// `<sigma_z>` from the branch populations.
    pub fn inversion(&self) -> f64 {
        let pe: f64 = self.excited.iter().map(|c| c.norm_sqr()).sum();
        let pg: f64 = self.ground.iter().map(|c| c.norm_sqr()).sum();
        pe - pg
    }

    /// Photon-number distribution of the reduced field.
    pub fn photon_distribution(&self) -> Vec<f64> {
        let mut p = vec![0.0; self.field_dim()];
        for (m, a) in self.excited.iter().enumerate() {
            p[m] += a.norm_sqr();
        }
        for (m, b) in self.ground.iter().enumerate() {
            p[m + self.k()] += b.norm_sqr();
        }
        p
    }

    /// `Tr rho_f^2` using the rank-2 structure of the reduced state:
    /// `|e|^4 + |g|^4 + 2 |<e|g>|^2` with `e`, `g` the branch vectors.
    pub fn purity(&self) -> f64 {
        let k = self.k();
        let pe: f64 = self.excited.iter().map(|c| c.norm_sqr()).sum();
        let pg: f64 = self.ground.iter().map(|c| c.norm_sqr()).sum();
        // <e|g> = sum_l e_l^* g_l, with g_l = ground[l - k]
        let overlap: Complex64 = self
            .ground
            .iter()
            .enumerate()
            .filter_map(|(m, g)| self.excited.get(m + k).map(|e| e.conj() * g))
            .sum();
        pe * pe + pg * pg + 2.0 * overlap.norm_sqr()
    }

    /// Largest componentwise difference from another joint state.
    pub fn max_abs_diff(&self, other: &JointState) -> f64 {
        let n = self.dim().max(other.dim());
        let get = |v: &[Complex64], i: usize| v.get(i).copied().unwrap_or_default();
        (0..n)
            .map(|i| {
                (get(&self.excited, i) - get(&other.excited, i))
                    .norm()
                    .max((get(&self.ground, i) - get(&other.ground, i)).norm())
            })
            .fold(0.0, f64::max)
    }
}

/// Evolves `|+> (x) sum_m C_m |m>` to scaled time `t`.
pub fn evolve(coeffs: &[Complex64], model: ModelParams, t: f64) -> Result<JointState> {
    let tol = tail_tolerance();
    let mass = top_mass(coeffs, headroom_levels(coeffs.len(), model.k));
    if mass >= tol {
        return Err(JcmError::Truncation {
            dim: coeffs.len(),
            tail_mass: mass,
            tolerance: tol,
            suggested_dim: 2 * coeffs.len(),
        });
    }
    let minus_i = Complex64::new(0.0, -1.0);
    let (excited, ground) = coeffs
        .iter()
        .enumerate()
        .map(|(m, &c)| {
            let (s, co) = (t * model.rabi(m)).sin_cos();
            (c * co, minus_i * c * s)
        })
        .unzip();
    Ok(JointState::from_parts(model, excited, ground))
}

/// Convenience wrapper over [`evolve`] for a field state.
pub fn evolve_field(field: &FieldState, model: ModelParams, t: f64) -> Result<JointState> {
    evolve(field.amplitudes(), model, t)
}

/// `<sigma_z(T)> = sum_m P(m) cos(2 T sqrt(h(m,k)))`.
pub fn atomic_inversion(p: &[f64], model: ModelParams, t: f64) -> f64 {
    p.iter()
        .enumerate()
        .map(|(m, pm)| pm * (2.0 * t * model.rabi(m)).cos())
        .sum()
}

/// Time-dependent photon distribution; the result has `p.len() + k` entries.
pub fn photon_distribution_t(p: &[f64], model: ModelParams, t: f64) -> Vec<f64> {
    let k = model.k;
    let mut out = vec![0.0; p.len() + k];
    for (m, &pm) in p.iter().enumerate() {
        let (s, c) = (t * model.rabi(m)).sin_cos();
        out[m] += pm * c * c;
        out[m + k] += pm * s * s;
    }
    out
}

/// Reduced field density matrix, stored densely.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldDensityMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl FieldDensityMatrix {
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Self {
        assert_eq!(entries.len(), dim * dim);
        Self { dim, entries }
    }

    /// `|psi><psi|`.
    pub fn pure(psi: &[Complex64]) -> Self {
        let dim = psi.len();
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                entries[i * dim + j] = psi[i] * psi[j].conj();
            }
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `rho[row][col] = <row|rho|col>`.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i).re).collect()
    }

    /// Largest `|rho - rho^dag|` entry.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..=i {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }
}

/// Traces out the atom.
pub fn reduced_field_dm(psi: &JointState) -> FieldDensityMatrix {
    let e = psi.excited_branch();
    let g = psi.ground_branch();
    let dim = psi.field_dim();
    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            entries[i * dim + j] = e[i] * e[j].conj() + g[i] * g[j].conj();
        }
    }
    FieldDensityMatrix { dim, entries }
}

/// `Tr rho^2`.
pub fn purity(rho: &FieldDensityMatrix) -> f64 {
    // Tr(rho rho) = sum_ij rho_ij rho_ji = sum_ij |rho_ij|^2 for Hermitian rho
    rho.entries.iter().map(|c| c.norm_sqr()).sum()
}

/// `<ref|rho|ref>`. A reference shorter than `rho` is zero-padded.
pub fn field_fidelity(rho: &FieldDensityMatrix, reference: &FieldState) -> Result<f64> {
    let r = reference.amplitudes();
    if r.len() > rho.dim() {
        return Err(JcmError::DimMismatch {
            left: rho.dim(),
            right: r.len(),
        });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, ri) in r.iter().enumerate() {
        let mut row = Complex64::new(0.0, 0.0);
        for (j, rj) in r.iter().enumerate() {
            row += rho.get(i, j) * rj;
        }
        acc += ri.conj() * row;
    }
    Ok(acc.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::hamiltonian_evolve_oracle;
    use crate::states::{field_state_auto, SuperpositionParams};
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn model(k: usize) -> ModelParams {
        ModelParams::new(k).unwrap()
    }

    #[test]
    fn rejects_zero_k() {
        assert!(ModelParams::new(0).is_err());
    }

    #[test]
    fn evolve_trivial_cases() {
        let st = field_state_auto(&SuperpositionParams::yurke_stoler(2.0, 0.3, 1), 2).unwrap();
        let psi = evolve_field(&st, model(2), 0.0).unwrap();
        assert_eq!(psi.excited(), st.amplitudes());
        assert!(psi.ground().iter().all(|g| g.norm() == 0.0));

        let vac = FieldState::fock(0, 10);
        let psi = evolve_field(&vac, model(1), PI / 2.0).unwrap();
        assert!(psi.excited()[0].norm() < 1e-15);
        assert!((psi.ground()[0] - c(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn evolve_matches_block_oracle() {
        let st = field_state_auto(&SuperpositionParams::single(2.0, 0.0, 0), 3).unwrap();
        let a = evolve_field(&st, model(3), 1.3).unwrap();
        let b = hamiltonian_evolve_oracle(&st, 3, 1.3).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-8);
    }

    #[test]
    fn inversion_examples() {
        let p = vec![0.2, 0.3, 0.5];
        assert!((atomic_inversion(&p, model(2), 0.0) - 1.0).abs() < 1e-15);
        let vac = vec![1.0];
        for &t in &[0.1, 1.0, 5.3] {
            let want = (2.0 * 2f64.sqrt() * t).cos();
            assert!((atomic_inversion(&vac, model(2), t) - want).abs() < 1e-14);
        }
    }

    #[test]
    fn inversion_consistent_with_joint_state() {
        let st = field_state_auto(&SuperpositionParams::even(3.0, 0.2, 1), 2).unwrap();
        let p = st.probabilities();
        for &t in &[0.4, 3.3, 17.0] {
            let psi = evolve_field(&st, model(2), t).unwrap();
            assert!((psi.inversion() - atomic_inversion(&p, model(2), t)).abs() < 1e-12);
        }
    }

    #[test]
    fn distribution_t_and_density_diagonal_agree() {
        let st = field_state_auto(&SuperpositionParams::yurke_stoler(2.5, 0.0, 1), 3).unwrap();
        let p = st.probabilities();
        assert_eq!(photon_distribution_t(&p, model(3), 0.0)[..p.len()], p[..]);
        for &t in &[0.7, 4.1] {
            let pt = photon_distribution_t(&p, model(3), t);
            let psi = evolve_field(&st, model(3), t).unwrap();
            let rho = reduced_field_dm(&psi);
            assert!((rho.trace().re - 1.0).abs() < 1e-10);
            assert!(rho.hermiticity_defect() < 1e-12);
            for (a, b) in pt.iter().zip(rho.diagonal()) {
                assert!((a - b).abs() < 1e-12);
            }
            assert!((pt.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn reduced_state_at_zero_is_projector() {
        let st = field_state_auto(&SuperpositionParams::odd(1.5, 0.0, 0), 1).unwrap();
        let psi = evolve_field(&st, model(1), 0.0).unwrap();
        let rho = reduced_field_dm(&psi);
        assert!((purity(&rho) - 1.0).abs() < 1e-12);
        let f = field_fidelity(&rho, &st).unwrap();
        assert!((f - 1.0).abs() < 1e-12);
    }

    #[test]
    fn purity_routes_agree_and_bounded() {
        let st = field_state_auto(&SuperpositionParams::single(3.0, 0.0, 1), 1).unwrap();
        for &t in &[0.0, 1.1, 5.0, 9.42] {
            let psi = evolve_field(&st, model(1), t).unwrap();
            let dense = purity(&reduced_field_dm(&psi));
            let fast = psi.purity();
            assert!((dense - fast).abs() < 1e-12);
            assert!((0.5 - 1e-10..=1.0 + 1e-10).contains(&fast));
        }
    }

    #[test]
    fn fidelity_rejects_oversized_reference() {
        let st = FieldState::fock(0, 5);
        let psi = evolve_field(&st, model(1), 0.3).unwrap();
        let rho = reduced_field_dm(&psi);
        assert!(matches!(
            field_fidelity(&rho, &FieldState::fock(0, 20)),
            Err(JcmError::DimMismatch { .. })
        ));
    }

    #[test]
    fn excitation_number_is_conserved() {
        let st = field_state_auto(&SuperpositionParams::yurke_stoler(2.0, 0.2, 1), 4).unwrap();
        let p = st.probabilities();
        let n0: f64 = p.iter().enumerate().map(|(m, v)| m as f64 * v).sum();
        for k in 1..=4 {
            for &t in &[0.5, 13.0, 50.0] {
                let psi = evolve_field(&st, model(k), t).unwrap();
                let pt = psi.photon_distribution();
                let nt: f64 = pt.iter().enumerate().map(|(m, v)| m as f64 * v).sum();
                let lhs = nt + 0.5 * k as f64 * psi.inversion();
                assert!((lhs - n0 - 0.5 * k as f64).abs() < 1e-9);
                assert!((psi.norm_sqr() - 1.0).abs() < 1e-10);
            }
        }
    }
}
