//! `H⁰` and `H¹` norms on the sphere by a dense tensor rectangular rule.
//!
//! `‖F‖²_{H⁰} = ∫∫ |F|² sin θ dθ dφ` and
//! `‖F‖²_{H¹} = ¼‖F‖²_{H⁰} + ∫∫ (|∂θF|² + |(1/sin θ)∂φF|²) sin θ dθ dφ`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Jet, RingField, RingGradientField};

/// Placement of the rectangular-rule nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NormRule {
    /// `θ_i = iπ/n_θ`, `φ_k = 2πk/n_φ`. The `i = 0` row sits on the north
    /// pole and is dropped; the `θ = π` row is never reached.
    #[default]
    LeftEndpoint,
    /// `θ_i = (i+½)π/n_θ`, `φ_k = (k+½)2π/n_φ`.
    Midpoint,
}

/// Product rule on `(0, π) × [0, 2π)`.
#[derive(Debug, Clone)]
pub struct NormGrid {
    n_theta: usize,
    n_phi: usize,
    rule: NormRule,
    theta: Vec<f64>,
    sin_theta: Vec<f64>,
    phi: Vec<f64>,
    weight: f64,
}

impl Default for NormGrid {
    /// 400 × 400 left-endpoint rule (159 600 interior points).
    fn default() -> Self {
        Self::new(400, 400, NormRule::LeftEndpoint).expect("valid default grid")
    }
}

impl NormGrid {
    pub fn new(n_theta: usize, n_phi: usize, rule: NormRule) -> Result<Self> {
        if n_theta < 2 || n_phi < 1 {
            return Err(Error::InvalidArgument(format!(
                "norm grid {n_theta}x{n_phi} is too coarse"
            )));
        }
        let dt = PI / n_theta as f64;
        let dp = 2.0 * PI / n_phi as f64;
        let (theta, phi): (Vec<f64>, Vec<f64>) = match rule {
            NormRule::LeftEndpoint => (
                (1..n_theta).map(|i| i as f64 * dt).collect(),
                (0..n_phi).map(|k| k as f64 * dp).collect(),
            ),
            NormRule::Midpoint => (
                (0..n_theta).map(|i| (i as f64 + 0.5) * dt).collect(),
                (0..n_phi).map(|k| (k as f64 + 0.5) * dp).collect(),
            ),
        };
        let sin_theta = theta.iter().map(|t| t.sin()).collect();
        Ok(Self {
            n_theta,
            n_phi,
            rule,
            theta,
            sin_theta,
            phi,
            weight: dt * dp,
        })
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    pub fn rule(&self) -> NormRule {
        self.rule
    }

    /// Colatitudes actually used (all strictly inside `(0, π)`).
    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn phi(&self) -> &[f64] {
        &self.phi
    }

    /// `Δθ Δφ`, shared by every node.
    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn num_points(&self) -> usize {
        self.theta.len() * self.phi.len()
    }

    /// `Σ w sin θ`, the rule's approximation of `4π`.
    pub fn area(&self) -> f64 {
        self.weight * self.sin_theta.iter().sum::<f64>() * self.phi.len() as f64
    }

    /// Apply `row` to every θ-row in parallel and add the results in row order.
    fn sum_rows<R: Fn(usize) -> f64 + Sync>(&self, row: R) -> f64 {
        let parts: Vec<f64> = (0..self.theta.len()).into_par_iter().map(|i| row(i)).collect();
        parts.iter().sum::<f64>() * self.weight
    }
}

/// `‖F‖_{H⁰}`.
pub fn h0_norm<F: RingField + ?Sized>(f: &F, grid: &NormGrid) -> f64 {
    grid.sum_rows(|i| {
        let mut vals = vec![Complex64::new(0.0, 0.0); grid.phi.len()];
        f.ring_values(grid.theta[i], &grid.phi, &mut vals);
        vals.iter().map(|v| v.norm_sqr()).sum::<f64>() * grid.sin_theta[i]
    })
    .sqrt()
}

/// `‖F‖_{H¹}`, with the gradient supplied by the field.
pub fn h1_norm<F: RingGradientField + ?Sized>(f: &F, grid: &NormGrid) -> f64 {
    sobolev_norms(f, grid).1
}

/// `(‖F‖_{H⁰}, ‖F‖_{H¹})` in a single sweep.
pub fn sobolev_norms<F: RingGradientField + ?Sized>(f: &F, grid: &NormGrid) -> (f64, f64) {
    let rows: Vec<(f64, f64)> = (0..grid.theta.len())
        .into_par_iter()
        .map(|i| {
            let mut jets = vec![Jet::default(); grid.phi.len()];
            f.ring_jets(grid.theta[i], &grid.phi, &mut jets);
            let s = grid.sin_theta[i];
            let mass: f64 = jets.iter().map(|j| j.value.norm_sqr()).sum();
            let grad: f64 = jets
                .iter()
                .map(|j| j.d_theta.norm_sqr() + j.d_phi.norm_sqr())
                .sum();
            (mass * s, grad * s)
        })
        .collect();
    let mass = rows.iter().map(|r| r.0).sum::<f64>() * grid.weight;
    let grad = rows.iter().map(|r| r.1).sum::<f64>() * grid.weight;
    (mass.sqrt(), (0.25 * mass + grad).sqrt())
}

/// Estimated orders of convergence `log₂(e_{i-1}/e_i)` for errors measured
/// at successively doubled `N`. The result has one entry fewer than `errors`.
pub fn eoc(errors: &[f64]) -> Result<Vec<f64>> {
    if let Some(bad) = errors.iter().find(|e| !(**e > 0.0) || !e.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "EOC needs positive finite errors, got {bad}"
        )));
    }
    Ok(errors.windows(2).map(|w| (w[0] / w[1]).log2()).collect())
}
