//! Scalar special functions and log-space combinatorics.
//!
//! Everything here is a pure function of its arguments. Factorial ratios are
//! evaluated in log space because the photon numbers involved (m ~ 450 for
//! strongly displaced fields) overflow raw `f64` factorials long before the
//! physically meaningful products do.

use std::sync::OnceLock;

use num_complex::Complex64;

/// Size of the process-wide factorial table. Larger arguments fall back to
/// the Stirling series.
const SHARED_TABLE_LEN: usize = 1 << 14;

/// `ln(m!)` for `m` in `0..len`, built by cumulative summation of `ln(m)`.
#[derive(Debug, Clone)]
pub struct LogFactorialTable {
    values: Vec<f64>,
}

impl LogFactorialTable {
    pub fn new(len: usize) -> Self {
        let len = len.max(1);
        let mut values = Vec::with_capacity(len);
        values.push(0.0);
        let mut acc = 0.0;
        for m in 1..len {
            acc += (m as f64).ln();
            values.push(acc);
        }
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `ln(m!)`; panics when `m` is outside the table.
    #[inline]
    pub fn get(&self, m: usize) -> f64 {
        self.values[m]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

fn shared_table() -> &'static LogFactorialTable {
    static TABLE: OnceLock<LogFactorialTable> = OnceLock::new();
    TABLE.get_or_init(|| LogFactorialTable::new(SHARED_TABLE_LEN))
}

/// `ln(m!)` for any `m`.
pub fn ln_factorial(m: usize) -> f64 {
    let table = shared_table();
    if m < table.len() {
        table.get(m)
    } else {
        // Stirling series for ln Γ(x) at x = m + 1.
        let x = m as f64 + 1.0;
        let inv = 1.0 / x;
        let inv2 = inv * inv;
        (x - 0.5) * x.ln() - x
            + 0.5 * (2.0 * std::f64::consts::PI).ln()
            + inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)))
    }
}

/// Physicists' Hermite polynomial `H_n(z)` by the three-term recurrence.
///
/// Evaluated in complex arithmetic for every argument; arguments of the form
/// `iy` are common in the squeezed-state coefficients.
pub fn hermite(n: usize, z: Complex64) -> Complex64 {
    let mut prev = Complex64::new(1.0, 0.0);
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * z;
    for j in 1..n {
        let next = 2.0 * z * cur - 2.0 * j as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Laguerre polynomial `L_n(x)`.
pub fn laguerre(n: usize, x: f64) -> f64 {
    assoc_laguerre(n, 0, x)
}

/// Generalized Laguerre polynomial `L_n^{(a)}(x)` by upward recurrence in `n`.
pub fn assoc_laguerre(n: usize, a: usize, x: f64) -> f64 {
    let a = a as f64;
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + a - x;
    for j in 1..n {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + a - x) * cur - (jf + a) * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `sqrt((m+k)!/m!)`, the multiphoton Rabi frequency in units of the coupling.
///
/// The ratio is a product of `k` factors, so it is formed directly while that
/// product stays small; very large `k` goes through log-factorials.
pub fn sqrt_h(m: usize, k: usize) -> f64 {
    if k <= 32 {
        let mut prod = 1.0;
        for i in 1..=k {
            prod *= (m + i) as f64;
        }
        prod.sqrt()
    } else {
        sqrt_h_log(m, k)
    }
}

/// Log-space route for `sqrt((m+k)!/m!)`.
pub fn sqrt_h_log(m: usize, k: usize) -> f64 {
    (0.5 * (ln_factorial(m + k) - ln_factorial(m))).exp()
}

/// A complex number stored as a unit phase and a natural-log magnitude.
///
/// Products and sums of factors spanning hundreds of decades are combined in
/// this form and exponentiated once at the end.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledComplex {
    /// Unit-modulus phase factor, or exactly zero.
    pub phase: Complex64,
    /// `ln |value|`; meaningless when `phase` is zero.
    pub ln_mag: f64,
}

impl ScaledComplex {
    pub const ZERO: Self = Self {
        phase: Complex64::new(0.0, 0.0),
        ln_mag: 0.0,
    };

    pub fn from_complex(z: Complex64) -> Self {
        Self::from_parts(z, 0.0)
    }

    pub fn from_real(x: f64) -> Self {
        Self::from_complex(Complex64::new(x, 0.0))
    }

    /// `e^{ln_mag}` with a positive real phase.
    pub fn from_ln(ln_mag: f64) -> Self {
        if ln_mag == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        Self {
            phase: Complex64::new(1.0, 0.0),
            ln_mag,
        }
    }

    /// `mantissa * e^{ln_scale}`.
    pub fn from_parts(mantissa: Complex64, ln_scale: f64) -> Self {
        let norm = mantissa.norm();
        if norm == 0.0 || norm.is_nan() {
            return Self::ZERO;
        }
        Self {
            phase: mantissa / norm,
            ln_mag: ln_scale + norm.ln(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.phase.re == 0.0 && self.phase.im == 0.0
    }

    /// Integer power.
    pub fn powi(self, e: usize) -> Self {
        if e == 0 {
            return Self::from_ln(0.0);
        }
        if self.is_zero() {
            return Self::ZERO;
        }
        let arg = self.phase.arg() * e as f64;
        Self {
            phase: Complex64::from_polar(1.0, arg),
            ln_mag: self.ln_mag * e as f64,
        }
    }

    pub fn scale_ln(self, ln_factor: f64) -> Self {
        if self.is_zero() {
            return self;
        }
        Self {
            phase: self.phase,
            ln_mag: self.ln_mag + ln_factor,
        }
    }

    pub fn to_complex(self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        self.phase * self.ln_mag.exp()
    }
}

impl std::ops::Mul for ScaledComplex {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::ZERO;
        }
        let phase = self.phase * rhs.phase;
        let norm = phase.norm();
        Self {
            phase: phase / norm,
            ln_mag: self.ln_mag + rhs.ln_mag,
        }
    }
}

impl std::ops::Add for ScaledComplex {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let top = self.ln_mag.max(rhs.ln_mag);
        let sum = self.phase * (self.ln_mag - top).exp() + rhs.phase * (rhs.ln_mag - top).exp();
        Self::from_parts(sum, top)
    }
}

/// `H_l(z)` for `l = 0..len`, carried in log-magnitude form.
///
/// Runs the recurrence on `H_l / sqrt(2^l l!)`, which grows slowly, and
/// rescales whenever the mantissa gets large.
pub fn hermite_sequence(len: usize, z: Complex64) -> Vec<ScaledComplex> {
    let mut out = Vec::with_capacity(len);
    if len == 0 {
        return out;
    }
    let ln2 = std::f64::consts::LN_2;
    let norm_ln = |l: usize| 0.5 * (l as f64 * ln2 + ln_factorial(l));

    let mut scale = 0.0;
    let mut prev = Complex64::new(1.0, 0.0);
    out.push(ScaledComplex::from_real(1.0));
    if len == 1 {
        return out;
    }
    let sqrt2 = std::f64::consts::SQRT_2;
    let mut cur = sqrt2 * z;
    out.push(ScaledComplex::from_parts(cur, norm_ln(1)));
    for l in 1..len - 1 {
        let lf = l as f64;
        let next = (2.0 / (lf + 1.0)).sqrt() * z * cur - (lf / (lf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        let mag = cur.norm().max(prev.norm());
        if mag > 1e150 {
            cur /= mag;
            prev /= mag;
            scale += mag.ln();
        }
        out.push(ScaledComplex::from_parts(cur, scale + norm_ln(l + 1)));
    }
    out
}

/// Normalized harmonic-oscillator eigenfunctions `<x|n>` for `n = 0..len`.
pub fn hermite_functions(len: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(len);
    if len == 0 {
        return out;
    }
    let mut prev = (-0.5 * x * x).exp() / std::f64::consts::PI.powf(0.25);
    out.push(prev);
    if len == 1 {
        return out;
    }
    let mut cur = std::f64::consts::SQRT_2 * x * prev;
    out.push(cur);
    for n in 1..len - 1 {
        let nf = n as f64;
        let next = (2.0 / (nf + 1.0)).sqrt() * x * cur - (nf / (nf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        out.push(cur);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hermite_low_orders() {
        assert_eq!(hermite(0, c(3.3, -1.0)), c(1.0, 0.0));
        assert_eq!(hermite(1, c(2.0, 0.0)), c(4.0, 0.0));
        // 8z^3 - 12z at z = i: -8i - 12i
        let z = c(0.0, 1.0);
        let oracle = 8.0 * z * z * z - 12.0 * z;
        assert!((hermite(3, z) - oracle).norm() < 1e-14);
        assert!((hermite(3, z) - c(0.0, -20.0)).norm() < 1e-14);
    }

    #[test]
    fn laguerre_low_orders() {
        assert_eq!(laguerre(0, 3.7), 1.0);
        assert_eq!(laguerre(1, 2.0), -1.0);
        let x: f64 = 2.0;
        assert!((laguerre(2, x) - (1.0 - 2.0 * x + x * x / 2.0)).abs() < 1e-15);
        assert!((laguerre(2, 2.0) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn assoc_laguerre_low_orders() {
        assert_eq!(assoc_laguerre(0, 7, 1.3), 1.0);
        assert!((assoc_laguerre(1, 2, 0.5) - 2.5).abs() < 1e-15);
        let x: f64 = 1.0;
        assert!((assoc_laguerre(2, 1, x) - (3.0 - 3.0 * x + x * x / 2.0)).abs() < 1e-15);
        assert!((assoc_laguerre(2, 1, 1.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn assoc_laguerre_zero_index_is_laguerre() {
        for n in 0..=50 {
            for &x in &[0.0, 0.3, 2.0, 7.5, 31.0] {
                assert_eq!(assoc_laguerre(n, 0, x), laguerre(n, x));
            }
        }
    }

    #[test]
    fn sqrt_h_values() {
        assert_eq!(sqrt_h(0, 1), 1.0);
        assert!((sqrt_h(2, 2) - 12f64.sqrt()).abs() < 1e-15);
        assert!((sqrt_h(0, 2) - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn sqrt_h_squared_matches_integer_factorials() {
        let fact = |n: u64| (1..=n).product::<u64>().max(1);
        for k in 1..=6usize {
            for m in 0..=(20 - k) {
                let h = sqrt_h(m, k);
                let want = fact((m + k) as u64) as f64;
                assert!((h * h * fact(m as u64) as f64 - want).abs() <= 1e-14 * want, "m={m} k={k}");
            }
        }
    }

    #[test]
    fn sqrt_h_direct_and_log_agree() {
        for k in 1..=4 {
            for m in [0usize, 1, 5, 19, 100, 450, 2000] {
                let a = sqrt_h(m, k);
                let b = sqrt_h_log(m, k);
                assert!((a - b).abs() / a < 1e-12, "m={m} k={k}");
            }
        }
    }

    #[test]
    fn log_factorial_table_invariants() {
        let t = LogFactorialTable::new(600);
        assert_eq!(t.get(0), 0.0);
        for m in 1..600 {
            let d = t.get(m) - t.get(m - 1);
            assert!((d - (m as f64).ln()).abs() <= 1e-12 * (m as f64).ln().max(1.0));
        }
    }

    #[test]
    fn stirling_tail_matches_table() {
        let t = LogFactorialTable::new(SHARED_TABLE_LEN + 10);
        for m in [SHARED_TABLE_LEN, SHARED_TABLE_LEN + 5] {
            assert!((ln_factorial(m) - t.get(m)).abs() / t.get(m) < 1e-13);
        }
        // Series also agrees in the table range.
        let x = 300usize;
        let xf = x as f64 + 1.0;
        let inv = 1.0 / xf;
        let stirling = (xf - 0.5) * xf.ln() - xf + 0.5 * (2.0 * std::f64::consts::PI).ln() + inv / 12.0
            - inv.powi(3) / 360.0;
        assert!((stirling - ln_factorial(x)).abs() < 1e-10);
    }

    #[test]
    fn hermite_sequence_matches_plain_recurrence() {
        for &z in &[c(0.7, 0.0), c(0.0, 1.3), c(2.0, -0.5), c(-3.1, 0.2)] {
            let seq = hermite_sequence(40, z);
            for (l, v) in seq.iter().enumerate() {
                let direct = hermite(l, z);
                let got = v.to_complex();
                assert!(
                    (got - direct).norm() <= 1e-11 * direct.norm().max(1.0),
                    "l={l} z={z} got={got} want={direct}"
                );
            }
        }
    }

    #[test]
    fn hermite_sequence_survives_large_orders() {
        let seq = hermite_sequence(900, c(7.1, 0.0));
        assert!(seq.iter().all(|v| v.ln_mag.is_finite()));
        // H_n(0) = (-1)^{n/2} n!/(n/2)! for even n.
        let seq0 = hermite_sequence(601, c(0.0, 0.0));
        let want = ln_factorial(600) - ln_factorial(300);
        assert!((seq0[600].ln_mag - want).abs() < 1e-9);
        assert!((seq0[600].phase - c(1.0, 0.0)).norm() < 1e-12);
        assert!(seq0[599].is_zero() || seq0[599].to_complex().norm() == 0.0);
    }

    #[test]
    fn hermite_functions_orthonormal() {
        // Trapezoid on a wide grid is spectrally accurate for Gaussians.
        let n = 12;
        let h = 0.01;
        let mut gram = vec![0.0; n * n];
        let mut x = -15.0;
        while x <= 15.0 {
            let f = hermite_functions(n, x);
            for i in 0..n {
                for j in 0..n {
                    gram[i * n + j] += f[i] * f[j] * h;
                }
            }
            x += h;
        }
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((gram[i * n + j] - want).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn scaled_complex_arithmetic() {
        let a = ScaledComplex::from_complex(c(3.0, 4.0));
        let b = ScaledComplex::from_complex(c(-1.0, 2.0));
        assert!(((a * b).to_complex() - c(3.0, 4.0) * c(-1.0, 2.0)).norm() < 1e-12);
        assert!(((a + b).to_complex() - c(2.0, 6.0)).norm() < 1e-12);
        assert!((a.powi(3).to_complex() - c(3.0, 4.0).powi(3)).norm() < 1e-10);
        let huge = ScaledComplex::from_ln(2000.0);
        let tiny = ScaledComplex::from_ln(-1995.0);
        assert!(((huge * tiny).to_complex().re - 5f64.exp()).abs() < 1e-9);
        assert!(ScaledComplex::ZERO.to_complex() == c(0.0, 0.0));
    }

    proptest! {
        #[test]
        fn hermite_parity(n in 0usize..=30, re in -3.0f64..3.0, im in -3.0f64..3.0) {
            let z = c(re, im);
            let a = hermite(n, -z);
            let b = hermite(n, z) * if n % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert!((a - b).norm() <= 1e-10 * b.norm().max(1e-300) + 1e-300);
        }

        #[test]
        fn hermite_imaginary_argument_has_fixed_phase(n in 0usize..=30, y in -4.0f64..4.0) {
            let v = hermite(n, c(0.0, y));
            // v = i^n * real, so the component orthogonal to i^n vanishes.
            let rotated = v * c(0.0, -1.0).powi(n as i32);
            prop_assert!(rotated.im.abs() <= 1e-12 * v.norm().max(1e-300));
        }
    }
}
