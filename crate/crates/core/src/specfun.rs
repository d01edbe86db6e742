//! Special functions and quadrature primitives.
//!
//! Legendre polynomials and their derivatives, the L²_sin-orthonormal
//! associated Legendre functions `Q_n^m`, spherical harmonics, the
//! Gauss-Lobatto rule on `[-1, 1]`, spherical Bessel functions `j_n` and
//! complete elliptic integrals.
//!
//! Sign conventions: `P_n^m(x) = (1-x²)^{m/2} d^m/dx^m P_n(x)` (no
//! Condon-Shortley factor inside `P_n^m`), and
//! `Y_n^m = (-1)^{(m+|m|)/2} Q_n^{|m|}(θ) e^{imφ}/√(2π)`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Legendre polynomial `P_n(x)` and its derivative `P_n'(x)`.
///
/// Three-term recurrence for the values, `P'_{k+1} = P'_{k-1} + (2k+1) P_k`
/// for the derivative, so the endpoints `x = ±1` need no special casing.
pub fn legendre_p(n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let (mut p_prev, mut p) = (1.0, x);
    let (mut d_prev, mut d) = (0.0, 1.0);
    for k in 1..n {
        let kf = k as f64;
        let p_next = ((2.0 * kf + 1.0) * x * p - kf * p_prev) / (kf + 1.0);
        let d_next = d_prev + (2.0 * kf + 1.0) * p;
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
    }
    (p, d)
}

/// Fill `out[n] = P_n(x)` for `n = 0..out.len()`.
pub fn legendre_p_table(x: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    out[0] = 1.0;
    if out.len() == 1 {
        return;
    }
    out[1] = x;
    for k in 1..out.len() - 1 {
        let kf = k as f64;
        out[k + 1] = ((2.0 * kf + 1.0) * x * out[k] - kf * out[k - 1]) / (kf + 1.0);
    }
}

/// Normalized associated Legendre function `Q_n^m(θ)`.
///
/// `Q_n^m = sqrt((2n+1)/2 · (n-|m|)!/(n+|m|)!) · P_n^{|m|}(cos θ)`, so that
/// `∫₀^π Q_n^m Q_{n'}^m sin θ dθ = δ_{nn'}`. Evaluated by the normalized
/// recurrence in `n` at fixed `m`; no factorials are formed.
pub fn assoc_legendre_q(n: usize, m: i64, theta: f64) -> Result<f64> {
    let m_abs = m.unsigned_abs() as usize;
    if m_abs > n {
        return Err(Error::OrderOutOfRange { n, m });
    }
    let (x, s) = (theta.cos(), theta.sin());
    Ok(q_column(n, m_abs, x, s).0)
}

/// `d/dθ Q_n^m(θ)` for `θ ∈ (0, π)`.
pub fn assoc_legendre_q_dtheta(n: usize, m: i64, theta: f64) -> Result<f64> {
    let m_abs = m.unsigned_abs() as usize;
    if m_abs > n {
        return Err(Error::OrderOutOfRange { n, m });
    }
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::PoleGradient(theta));
    }
    let (x, s) = (theta.cos(), theta.sin());
    let (q, q_prev) = q_column(n, m_abs, x, s);
    let nf = n as f64;
    let mf = m_abs as f64;
    let c = if n == m_abs {
        0.0
    } else {
        ((2.0 * nf + 1.0) / (2.0 * nf - 1.0) * (nf * nf - mf * mf)).sqrt()
    };
    Ok((nf * x * q - c * q_prev) / s)
}

/// Returns `(Q_n^m, Q_{n-1}^m)` with `Q_{m-1}^m := 0`.
fn q_column(n: usize, m: usize, x: f64, s: f64) -> (f64, f64) {
    // Q_m^m = sqrt((2m+1)/(2m)) sin θ Q_{m-1}^{m-1}, Q_0^0 = 1/√2.
    let mut qmm = FRAC_1_SQRT_2;
    for k in 1..=m {
        let kf = k as f64;
        qmm *= ((2.0 * kf + 1.0) / (2.0 * kf)).sqrt() * s;
    }
    if n == m {
        return (qmm, 0.0);
    }
    let mf = m as f64;
    let mut q_prev = qmm;
    let mut q = (2.0 * mf + 3.0).sqrt() * x * qmm;
    for k in (m + 2)..=n {
        let kf = k as f64;
        let a = ((4.0 * kf * kf - 1.0) / (kf * kf - mf * mf)).sqrt();
        let b = (((kf - 1.0) * (kf - 1.0) - mf * mf) / (4.0 * (kf - 1.0) * (kf - 1.0) - 1.0)).sqrt();
        let q_next = a * (x * q - b * q_prev);
        q_prev = q;
        q = q_next;
    }
    (q, q_prev)
}

fn harmonic_phase(m: i64) -> f64 {
    if m > 0 && m % 2 == 1 {
        -1.0
    } else {
        1.0
    }
}

/// Spherical harmonic `Y_n^m(θ, φ)`.
pub fn spherical_harmonic(n: usize, m: i64, theta: f64, phi: f64) -> Result<Complex64> {
    let q = assoc_legendre_q(n, m, theta)?;
    let e = Complex64::from_polar(1.0 / (2.0 * PI).sqrt(), m as f64 * phi);
    Ok(e * (harmonic_phase(m) * q))
}

/// Surface gradient of `Y_n^m` as `(∂θ Y, (1/sin θ) ∂φ Y)`, `θ ∈ (0, π)`.
pub fn spherical_harmonic_gradient(
    n: usize,
    m: i64,
    theta: f64,
    phi: f64,
) -> Result<(Complex64, Complex64)> {
    let dq = assoc_legendre_q_dtheta(n, m, theta)?;
    let q = assoc_legendre_q(n, m, theta)?;
    let e = Complex64::from_polar(1.0 / (2.0 * PI).sqrt(), m as f64 * phi) * harmonic_phase(m);
    let d_phi = Complex64::new(0.0, m as f64) * e * (q / theta.sin());
    Ok((e * dq, d_phi))
}

/// The (N+1)-point Gauss-Lobatto rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussLobattoRule {
    order: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLobattoRule {
    /// `N`: the rule has `N + 1` nodes and is exact to degree `2N - 1`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Ascending nodes `η_0 = -1 < … < η_N = 1`.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `Σ ω_j g(η_j)`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, g: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * g(x))
            .sum()
    }
}

const NEWTON_TOL: f64 = 1e-15;
const NEWTON_MAX_ITER: usize = 100;

/// Build the Gauss-Lobatto rule of order `N ≥ 2`.
///
/// Interior nodes are the roots of `P_N'`, found by Newton's method from the
/// Chebyshev-Lobatto points `-cos(jπ/N)`; only the left half is iterated and
/// the right half is mirrored so that `η_j = -η_{N-j}` holds exactly.
/// Weights are `2 / (N(N+1) P_N(η_j)²)`.
pub fn gauss_lobatto(order: usize) -> Result<GaussLobattoRule> {
    if order < 2 {
        return Err(Error::OrderTooSmall(order));
    }
    let n = order;
    let nf = n as f64;
    let mut nodes = vec![0.0; n + 1];
    let mut weights = vec![0.0; n + 1];
    nodes[0] = -1.0;
    nodes[n] = 1.0;
    let end_weight = 2.0 / (nf * (nf + 1.0));
    weights[0] = end_weight;
    weights[n] = end_weight;

    for j in 1..=(n - 1) / 2 {
        let mut x = -(j as f64 * PI / nf).cos();
        let mut last_step = f64::INFINITY;
        let mut converged = false;
        for _ in 0..NEWTON_MAX_ITER {
            let (p, dp) = legendre_p(n, x);
            let d2p = (2.0 * x * dp - nf * (nf + 1.0) * p) / (1.0 - x * x);
            let step = dp / d2p;
            x -= step;
            let size = step.abs();
            // stagnation at rounding level counts as convergence
            if size <= NEWTON_TOL || (size < 1e-13 && size >= last_step) {
                converged = true;
                break;
            }
            last_step = size;
        }
        if !converged {
            return Err(Error::NoConvergence { order: n, index: j });
        }
        let (p, _) = legendre_p(n, x);
        let w = end_weight / (p * p);
        nodes[j] = x;
        nodes[n - j] = -x;
        weights[j] = w;
        weights[n - j] = w;
    }
    if n % 2 == 0 {
        let (p, _) = legendre_p(n, 0.0);
        nodes[n / 2] = 0.0;
        weights[n / 2] = end_weight / (p * p);
    }
    Ok(GaussLobattoRule {
        order: n,
        nodes,
        weights,
    })
}

/// Legendre expansion `Σ c_n P_n(x)` on `[-1, 1]` with complex coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LegendreSeries {
    coeffs: Vec<Complex64>,
}

impl LegendreSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "a Legendre series needs at least one coefficient");
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Clenshaw evaluation.
    pub fn eval(&self, x: f64) -> Complex64 {
        let n = self.degree();
        let mut b1 = Complex64::new(0.0, 0.0);
        let mut b2 = Complex64::new(0.0, 0.0);
        for k in (1..=n).rev() {
            let kf = k as f64;
            // P_{k+1} = α_k P_k + β_{k+1} P_{k-1} with α_k = (2k+1)x/(k+1), β_k = -k/(k+1)
            let alpha = (2.0 * kf + 1.0) * x / (kf + 1.0);
            let beta = -(kf + 1.0) / (kf + 2.0);
            let b0 = self.coeffs[k] + b1 * alpha + b2 * beta;
            b2 = b1;
            b1 = b0;
        }
        // P_1 = x, β_1 = -1/2
        self.coeffs[0] + b1 * x + b2 * (-0.5)
    }
}

/// Below this wavenumber `j_n` is summed from its ascending series.
pub const BESSEL_SERIES_KAPPA: f64 = 1e-2;

/// Spherical Bessel functions `j_0(κ), …, j_{n_max}(κ)` for `κ > 0`.
///
/// * `κ < 1e-2`: ascending series for every order.
/// * orders `n ≤ κ`: upward recurrence from the closed forms of `j_0`, `j_1`.
/// * orders `n > κ`: Miller's downward recurrence started well above both
///   `n_max` and `κ`, matched to the upward values (or to `j_0` when `κ < 2`).
///
/// Values that underflow are returned as `0`.
pub fn spherical_bessel_j(n_max: usize, kappa: f64) -> Result<Vec<f64>> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(Error::InvalidWavenumber {
            kappa,
            requirement: "finite and > 0",
        });
    }
    let mut out = vec![0.0; n_max + 1];
    if kappa < BESSEL_SERIES_KAPPA {
        for (n, v) in out.iter_mut().enumerate() {
            *v = bessel_series(n, kappa);
        }
        return Ok(out);
    }

    let (s, c) = kappa.sin_cos();
    let j0 = s / kappa;
    let j1 = s / (kappa * kappa) - c / kappa;
    // j_1's closed form cancels badly for small κ; there only j_0 is used
    let upward_to = if kappa < 2.0 {
        0
    } else {
        (kappa.floor() as usize).min(n_max)
    };
    out[0] = j0;
    if upward_to >= 1 {
        out[1] = j1;
    }
    for n in 1..upward_to {
        out[n + 1] = (2.0 * n as f64 + 1.0) / kappa * out[n] - out[n - 1];
    }
    if n_max <= upward_to {
        return Ok(out);
    }

    // Miller: anchor indices shared with the upward sweep.
    let anchor_lo = if kappa < 2.0 { 0 } else { upward_to - 1 };
    let top = n_max.max(kappa.ceil() as usize);
    let start = top + (40.0 * top as f64).sqrt().ceil() as usize + 15;
    let mut down = vec![0.0; n_max + 1 - anchor_lo];
    let mut d_next = 0.0;
    let mut d = 1.0;
    for n in (anchor_lo + 1..=start).rev() {
        let d_prev = (2.0 * n as f64 + 1.0) / kappa * d - d_next;
        d_next = d;
        d = d_prev;
        // d now holds order n-1
        let idx = n - 1;
        if idx <= n_max && idx >= anchor_lo {
            down[idx - anchor_lo] = d;
        }
        if idx < n_max && idx + 1 >= anchor_lo {
            down[idx + 1 - anchor_lo] = d_next;
        }
        if d.abs() > 1e250 {
            d *= 1e-250;
            d_next *= 1e-250;
            for v in &mut down {
                *v *= 1e-250;
            }
        }
    }
    let scale = if kappa < 2.0 {
        out[0] / down[0]
    } else {
        let (f0, f1) = (out[anchor_lo], out[anchor_lo + 1]);
        let gmax = down[0].abs().max(down[1].abs());
        let (g0, g1) = (down[0] / gmax, down[1] / gmax);
        (f0 * g0 + f1 * g1) / (g0 * g0 + g1 * g1) / gmax
    };
    for n in (upward_to + 1)..=n_max {
        out[n] = down[n - anchor_lo] * scale;
    }
    Ok(out)
}

/// Ascending series `κⁿ/(2n+1)!! Σ_k (-κ²/2)^k / (k! (2n+3)…(2n+2k+1))`.
fn bessel_series(n: usize, kappa: f64) -> f64 {
    let mut prefactor = 1.0;
    for i in 1..=n {
        prefactor *= kappa / (2.0 * i as f64 + 1.0);
        if prefactor == 0.0 {
            return 0.0;
        }
    }
    let half_sq = -0.5 * kappa * kappa;
    let two_n = 2.0 * n as f64;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        term *= half_sq / (kf * (two_n + 2.0 * kf + 1.0));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    prefactor * sum
}

/// Complete elliptic integrals `(K, E)` as functions of the complementary
/// modulus `k' = sqrt(1 - k²)`, by the arithmetic-geometric mean.
///
/// Taking `k'` rather than `k` keeps full relative accuracy as `k → 1`.
/// `K` is `+∞` at `k' = 0`.
pub fn complete_elliptic_integrals(k_complement: f64) -> (f64, f64) {
    let kc = k_complement.abs();
    if kc == 0.0 {
        return (f64::INFINITY, 1.0);
    }
    let mut a = 1.0;
    let mut b = kc;
    // Σ 2^{n-1} c_n², starting with c_0² = k² = (1-k')(1+k')
    let mut sum = 0.5 * (1.0 - kc) * (1.0 + kc);
    let mut pow = 0.5;
    for _ in 0..64 {
        let c = 0.5 * (a - b);
        let a_next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = a_next;
        pow *= 2.0;
        sum += pow * c * c;
        if c.abs() <= f64::EPSILON * a {
            break;
        }
    }
    let k = PI / (2.0 * a);
    (k, k * (1.0 - sum))
}
