//! Filon-type cubature for `∫_{S²} F(x) e^{iκ x₃} dS(x)`.
//!
//! Only the zeroth azimuthal mode of `F` survives the integral, so the rule
//! needs ring means of `F` on the Gauss-Lobatto latitudes. Those means are
//! interpolated by a polynomial in `x = cos θ`, expanded in Legendre
//! polynomials, and integrated against `e^{iκx}` exactly through the moments
//! `μ_n(κ) = ∫ P_n(x) e^{iκx} dx = 2 iⁿ j_n(κ)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::SphereFunction;
use crate::interp::{azimuthal_mean, SampleArray, SphericalGrid};
use crate::specfun::{gauss_lobatto, legendre_p_table, spherical_bessel_j, GaussLobattoRule, LegendreSeries};

fn check_kappa(kappa: f64) -> Result<()> {
    if kappa >= 0.0 && kappa.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidWavenumber {
            kappa,
            requirement: "finite and >= 0",
        })
    }
}

/// Legendre moments `μ_0(κ), …, μ_{n_max}(κ)` of `e^{iκx}` on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct OscillatoryKernel {
    kappa: f64,
    moments: Vec<Complex64>,
}

impl OscillatoryKernel {
    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn n_max(&self) -> usize {
        self.moments.len() - 1
    }

    pub fn moments(&self) -> &[Complex64] {
        &self.moments
    }
}

/// `μ_n(κ) = 2 iⁿ j_n(κ)`; at `κ = 0`, `μ_0 = 2` and the rest vanish.
pub fn legendre_moments(kappa: f64, n_max: usize) -> Result<OscillatoryKernel> {
    check_kappa(kappa)?;
    let mut moments = vec![Complex64::new(0.0, 0.0); n_max + 1];
    if kappa == 0.0 {
        moments[0] = Complex64::new(2.0, 0.0);
    } else {
        let j = spherical_bessel_j(n_max, kappa)?;
        for (n, (mu, jn)) in moments.iter_mut().zip(j).enumerate() {
            let v = 2.0 * jn;
            *mu = match n % 4 {
                0 => Complex64::new(v, 0.0),
                1 => Complex64::new(0.0, v),
                2 => Complex64::new(-v, 0.0),
                _ => Complex64::new(0.0, -v),
            };
        }
    }
    Ok(OscillatoryKernel { kappa, moments })
}

/// Legendre coefficients of the degree-`N` polynomial through `values` at the
/// (ascending) nodes of `rule`.
///
/// The discrete inner products are exact except for `⟨P_N, P_N⟩`, which the
/// Lobatto rule gets wrong; `c_N` is divided by the discrete norm instead.
pub fn poly_to_legendre(values: &[Complex64], rule: &GaussLobattoRule) -> Result<LegendreSeries> {
    let n = rule.order();
    if values.len() != n + 1 {
        return Err(Error::ShapeMismatch {
            expected: n + 1,
            actual: values.len(),
        });
    }
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
    let mut p = vec![0.0; n + 1];
    let mut top_norm = 0.0;
    for ((&x, &w), v) in rule.nodes().iter().zip(rule.weights()).zip(values) {
        legendre_p_table(x, &mut p);
        for (c, pk) in coeffs.iter_mut().zip(&p) {
            *c += v * (w * pk);
        }
        top_norm += w * p[n] * p[n];
    }
    for (k, c) in coeffs.iter_mut().enumerate().take(n) {
        *c *= (2 * k + 1) as f64 / 2.0;
    }
    coeffs[n] /= top_norm;
    Ok(LegendreSeries::new(coeffs))
}

/// `∫_{-1}^{1} p(x) e^{iκx} dx = Σ c_n μ_n(κ)`.
pub fn filon_1d(series: &LegendreSeries, kernel: &OscillatoryKernel) -> Result<Complex64> {
    if kernel.n_max() < series.degree() {
        return Err(Error::DegreeMismatch {
            series: series.degree(),
            kernel: kernel.n_max(),
        });
    }
    Ok(series
        .coeffs()
        .iter()
        .zip(kernel.moments())
        .map(|(c, mu)| c * mu)
        .sum())
}

/// Self-checks that come for free with a cubature evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Diagnostics {
    /// `max |p(±1) - f_0(pole)|` of the Legendre form at the endpoints.
    pub endpoint_residual: f64,
    /// `|c_N|`, the top Legendre coefficient; large values flag under-resolution.
    pub tail: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CubatureResult {
    pub value: Complex64,
    #[serde(rename = "N")]
    pub order: usize,
    pub kappa: f64,
    pub diagnostics: Diagnostics,
}

/// Ring means `f_0^j` of `F` on the Gauss-Lobatto latitudes, in latitude
/// order (north pole first). Poles are sampled once.
pub fn zero_mode_samples<F: SphereFunction + ?Sized>(f: &F, grid: &SphericalGrid) -> Vec<Complex64> {
    let n = grid.order();
    let phis = grid.phi();
    grid.theta()
        .iter()
        .enumerate()
        .map(|(j, &theta)| {
            if j == 0 || j == n {
                f.value(theta, 0.0)
            } else {
                phis.iter().map(|&phi| f.value(theta, phi)).sum::<Complex64>() / phis.len() as f64
            }
        })
        .collect()
}

/// Cubature from ring means given in latitude order.
pub fn cubature_from_zero_mode(rule: &GaussLobattoRule, ring_means: &[Complex64], kappa: f64) -> Result<CubatureResult> {
    check_kappa(kappa)?;
    let n = rule.order();
    if ring_means.len() != n + 1 {
        return Err(Error::ShapeMismatch {
            expected: n + 1,
            actual: ring_means.len(),
        });
    }
    // latitude j sits at η_{N-j}
    let ascending: Vec<Complex64> = ring_means.iter().rev().cloned().collect();
    let series = poly_to_legendre(&ascending, rule)?;
    let kernel = legendre_moments(kappa, n)?;
    let value = 2.0 * PI * filon_1d(&series, &kernel)?;
    let endpoint_residual = (series.eval(-1.0) - ascending[0])
        .norm()
        .max((series.eval(1.0) - ascending[n]).norm());
    Ok(CubatureResult {
        value,
        order: n,
        kappa,
        diagnostics: Diagnostics {
            endpoint_residual,
            tail: series.coeffs()[n].norm(),
        },
    })
}

/// `I_{κ,N}(F)`: Filon-type cubature with `N` latitude intervals.
///
/// `F` is evaluated on the `(N+1) × 2N` interpolation grid only.
pub fn cubature<F: SphereFunction + ?Sized>(f: &F, order: usize, kappa: f64) -> Result<CubatureResult> {
    check_kappa(kappa)?;
    let grid = SphericalGrid::new(order)?;
    let means = zero_mode_samples(f, &grid);
    cubature_from_zero_mode(grid.rule(), &means, kappa)
}

/// Cubature from a full sample array (e.g. one produced by [`crate::interp::sample`]).
pub fn cubature_from_samples(samples: &SampleArray, kappa: f64) -> Result<CubatureResult> {
    check_kappa(kappa)?;
    let n = samples.order();
    let rule = gauss_lobatto(n)?;
    let means: Vec<Complex64> = (0..=n)
        .map(|j| {
            let ring = samples.ring(j);
            ring.iter().sum::<Complex64>() / ring.len() as f64
        })
        .collect();
    cubature_from_zero_mode(&rule, &means, kappa)
}

/// Reference value of `∫ F e^{iκ x₃} dS` from a high-order cubature whose
/// ring means use the trapezoid rule with `k_ref` points.
pub fn reference_integral<F: SphereFunction + ?Sized>(f: &F, kappa: f64, n_ref: usize, k_ref: usize) -> Result<Complex64> {
    check_kappa(kappa)?;
    let grid = SphericalGrid::new(n_ref)?;
    let means = grid
        .theta()
        .par_iter()
        .map(|&theta| azimuthal_mean(f, theta, k_ref))
        .collect::<Result<Vec<_>>>()?;
    Ok(cubature_from_zero_mode(grid.rule(), &means, kappa)?.value)
}

pub const DEFAULT_N_REF: usize = 800;
pub const DEFAULT_K_REF: usize = 4096;

/// Composite Filon rule for `∫ g(x) e^{iκx} dx` over a union of panels.
///
/// On each panel `g` is replaced by its degree-`q` interpolant at the mapped
/// Lobatto nodes, which is integrated exactly. Panels may be arbitrarily long
/// compared to the wavelength.
#[derive(Debug, Clone)]
pub struct PanelFilon {
    rule: GaussLobattoRule,
}

impl PanelFilon {
    pub fn new(degree: usize) -> Result<Self> {
        Ok(Self {
            rule: gauss_lobatto(degree)?,
        })
    }

    pub fn degree(&self) -> usize {
        self.rule.order()
    }

    /// `∫_a^b g(x) e^{iκx} dx` on a single panel.
    pub fn panel<G: Fn(f64) -> Complex64>(&self, g: &G, kappa: f64, a: f64, b: f64) -> Result<Complex64> {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let values: Vec<Complex64> = self.rule.nodes().iter().map(|&t| g(c + h * t)).collect();
        let series = poly_to_legendre(&values, &self.rule)?;
        let kh = kappa * h;
        let mut kernel = legendre_moments(kh.abs(), self.degree())?;
        if kh < 0.0 {
            kernel = kernel.conj();
        }
        Ok(Complex64::from_polar(h, kappa * c) * filon_1d(&series, &kernel)?)
    }

    /// Sum of [`PanelFilon::panel`] over consecutive breakpoints.
    pub fn integrate<G: Fn(f64) -> Complex64 + Sync>(&self, g: &G, kappa: f64, breakpoints: &[f64]) -> Result<Complex64> {
        let parts = breakpoints
            .par_windows(2)
            .map(|w| self.panel(g, kappa, w[0], w[1]))
            .collect::<Result<Vec<_>>>()?;
        Ok(parts.iter().sum())
    }
}

impl OscillatoryKernel {
    /// Moments for `-κ`: `μ_n(-κ) = conj(μ_n(κ))`.
    fn conj(&self) -> Self {
        Self {
            kappa: -self.kappa,
            moments: self.moments.iter().map(|m| m.conj()).collect(),
        }
    }
}

/// Breakpoints on `[a, b]` refined geometrically toward the interior point
/// `z`: panel lengths shrink by `ratio` per level, `levels` levels per side.
pub fn graded_breakpoints(a: f64, b: f64, z: f64, ratio: f64, levels: usize) -> Vec<f64> {
    let mut left = Vec::new();
    if z > a {
        let len = z - a;
        left.push(a);
        for i in 1..=levels {
            left.push(z - len * ratio.powi(i as i32));
        }
    }
    left.push(z);
    if z < b {
        let len = b - z;
        for i in (1..=levels).rev() {
            left.push(z + len * ratio.powi(i as i32));
        }
        left.push(b);
    }
    left
}
