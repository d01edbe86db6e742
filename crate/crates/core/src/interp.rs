//! Interpolation onto χ_N at Gauss-Lobatto latitudes and equispaced azimuths.
//!
//! The construction is mode by mode:
//!
//! 1. sample `F` on the `(N+1) × 2N` grid,
//! 2. take the azimuthal DFT of every latitude ring,
//! 3. interpolate each Fourier coefficient in `x = cos θ`: even modes by a
//!    degree-`N` polynomial through all `N+1` latitudes, odd modes as
//!    `sin θ · q(cos θ)` with `q` of degree `N-2` through the interior
//!    latitudes (after dividing the data by `sin θ_j`).
//!
//! The result is `Σ_{-N<m≤N} p_m(θ) e^{imφ}`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::barycentric::{dot, Barycentric};
use crate::error::{Error, Result};
use crate::field::{Jet, RingField, RingGradientField, SphereFunction};
use crate::filon::poly_to_legendre;
use crate::specfun::{gauss_lobatto, GaussLobattoRule, LegendreSeries};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Latitudes `θ_j = arccos(η_{N-j})` and azimuths `φ_k = kπ/N`, `-N < k ≤ N`.
#[derive(Debug, Clone)]
pub struct SphericalGrid {
    order: usize,
    rule: GaussLobattoRule,
    theta: Vec<f64>,
    cos_theta: Vec<f64>,
    phi: Vec<f64>,
}

impl SphericalGrid {
    pub fn new(order: usize) -> Result<Self> {
        let rule = gauss_lobatto(order)?;
        let n = order;
        let cos_theta: Vec<f64> = (0..=n).map(|j| rule.nodes()[n - j]).collect();
        let mut theta: Vec<f64> = cos_theta.iter().map(|x| x.acos()).collect();
        theta[0] = 0.0;
        theta[n] = PI;
        let phi = (0..2 * n)
            .map(|idx| (idx as i64 - (n as i64 - 1)) as f64 * PI / n as f64)
            .collect();
        Ok(Self {
            order,
            rule,
            theta,
            cos_theta,
            phi,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rule(&self) -> &GaussLobattoRule {
        &self.rule
    }

    /// `θ_0 = 0 < θ_1 < … < θ_N = π`.
    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    /// `cos θ_j = η_{N-j}`, taken from the rule without a cos/arccos round trip.
    pub fn cos_theta(&self) -> &[f64] {
        &self.cos_theta
    }

    /// `φ` for `k = -N+1, …, N`, in that order.
    pub fn phi(&self) -> &[f64] {
        &self.phi
    }

    /// Azimuth index `k` of column `idx`.
    pub fn azimuth_k(&self, idx: usize) -> i64 {
        idx as i64 - (self.order as i64 - 1)
    }

    /// Distinct points on the sphere (each pole counted once).
    pub fn num_points(&self) -> usize {
        2 * self.order * self.order - 2 * self.order + 2
    }
}

/// Samples `F_k^j = F(θ_j, kπ/N)`, row-major in `j`, columns `k = -N+1..N`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleArray {
    order: usize,
    data: Vec<Complex64>,
}

impl SampleArray {
    pub fn from_values(order: usize, data: Vec<Complex64>) -> Result<Self> {
        if order < 2 {
            return Err(Error::OrderTooSmall(order));
        }
        let expected = (order + 1) * 2 * order;
        if data.len() != expected {
            return Err(Error::ShapeMismatch {
                expected,
                actual: data.len(),
            });
        }
        Ok(Self { order, data })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn ring(&self, j: usize) -> &[Complex64] {
        let w = 2 * self.order;
        &self.data[j * w..(j + 1) * w]
    }

    /// `F_k^j` with signed `k ∈ (-N, N]`.
    pub fn get(&self, j: usize, k: i64) -> Complex64 {
        self.ring(j)[(k + self.order as i64 - 1) as usize]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.data
    }
}

/// Sample `F` on the grid. Pole rows take the single value `F(0, 0)` and
/// `F(π, 0)`.
pub fn sample<F: SphereFunction + ?Sized>(f: &F, grid: &SphericalGrid) -> SampleArray {
    let n = grid.order();
    let w = 2 * n;
    let mut data = Vec::with_capacity((n + 1) * w);
    for (j, &theta) in grid.theta().iter().enumerate() {
        if j == 0 || j == n {
            let v = f.value(theta, 0.0);
            data.extend(std::iter::repeat_n(v, w));
        } else {
            data.extend(grid.phi().iter().map(|&phi| f.value(theta, phi)));
        }
    }
    SampleArray { order: n, data }
}

/// Azimuthal Fourier coefficients `f_m^j`, `m = -N+1..N`, of every ring.
#[derive(Debug, Clone, PartialEq)]
pub struct RingSpectrum {
    order: usize,
    data: Vec<Complex64>,
}

impl RingSpectrum {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn ring(&self, j: usize) -> &[Complex64] {
        let w = 2 * self.order;
        &self.data[j * w..(j + 1) * w]
    }

    /// `f_m^j` with signed `m ∈ (-N, N]`.
    pub fn get(&self, j: usize, m: i64) -> Complex64 {
        self.ring(j)[(m + self.order as i64 - 1) as usize]
    }
}

/// How the per-ring transform is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DftMethod {
    /// O(N²) direct sum with a shared twiddle table.
    #[default]
    Direct,
    Fft,
}

/// `f_m^j = (1/2N) Σ_k F_k^j exp(-2πi mk/(2N))`.
///
/// Pole rings keep only their mean; all other coefficients there are zero.
pub fn ring_dft(samples: &SampleArray) -> RingSpectrum {
    ring_dft_with(samples, DftMethod::Direct)
}

pub fn ring_dft_with(samples: &SampleArray, method: DftMethod) -> RingSpectrum {
    let n = samples.order();
    let w = 2 * n;
    let scale = 1.0 / w as f64;
    let mut data = vec![ZERO; (n + 1) * w];
    match method {
        DftMethod::Direct => {
            let twiddle: Vec<Complex64> = (0..w)
                .map(|r| Complex64::from_polar(1.0, -2.0 * PI * r as f64 / w as f64))
                .collect();
            for j in 0..=n {
                let ring = samples.ring(j);
                let out = &mut data[j * w..(j + 1) * w];
                for (mi, o) in out.iter_mut().enumerate() {
                    let m = mi as i64 - (n as i64 - 1);
                    let mut acc = ZERO;
                    for (ki, v) in ring.iter().enumerate() {
                        let k = ki as i64 - (n as i64 - 1);
                        acc += v * twiddle[(m * k).rem_euclid(w as i64) as usize];
                    }
                    *o = acc * scale;
                }
            }
        }
        DftMethod::Fft => {
            let fft = FftPlanner::new().plan_fft_forward(w);
            let mut buf = vec![ZERO; w];
            for j in 0..=n {
                for (ki, v) in samples.ring(j).iter().enumerate() {
                    let k = ki as i64 - (n as i64 - 1);
                    buf[k.rem_euclid(w as i64) as usize] = *v;
                }
                fft.process(&mut buf);
                let out = &mut data[j * w..(j + 1) * w];
                for (mi, o) in out.iter_mut().enumerate() {
                    let m = mi as i64 - (n as i64 - 1);
                    *o = buf[m.rem_euclid(w as i64) as usize] * scale;
                }
            }
        }
    }
    for j in [0, n] {
        for (mi, o) in data[j * w..(j + 1) * w].iter_mut().enumerate() {
            if mi != n - 1 {
                *o = ZERO;
            }
        }
    }
    RingSpectrum { order: n, data }
}

/// `F_k^j = Σ_m f_m^j exp(2πi mk/(2N))`.
pub fn inverse_ring_dft(spectrum: &RingSpectrum) -> SampleArray {
    let n = spectrum.order();
    let w = 2 * n;
    let twiddle: Vec<Complex64> = (0..w)
        .map(|r| Complex64::from_polar(1.0, 2.0 * PI * r as f64 / w as f64))
        .collect();
    let mut data = vec![ZERO; (n + 1) * w];
    for j in 0..=n {
        let ring = spectrum.ring(j);
        for ki in 0..w {
            let k = ki as i64 - (n as i64 - 1);
            let mut acc = ZERO;
            for (mi, f) in ring.iter().enumerate() {
                let m = mi as i64 - (n as i64 - 1);
                acc += f * twiddle[(m * k).rem_euclid(w as i64) as usize];
            }
            data[j * w + ki] = acc;
        }
    }
    SampleArray { order: n, data }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(m: i64) -> Self {
        if m.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// One Fourier mode of the interpolant.
///
/// `values` are node values of the polynomial in `x = cos θ`: `p_m` itself at
/// all `N+1` latitudes for even `m`, `p_m / sin θ` at the `N-1` interior
/// latitudes for odd `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModalPolynomial {
    pub m: i64,
    pub parity: Parity,
    pub values: Vec<Complex64>,
}

/// `Q_N F`: the unique element of χ_N matching `F` on the grid.
#[derive(Debug, Clone)]
pub struct SphericalInterpolant {
    order: usize,
    even_basis: Barycentric,
    odd_basis: Barycentric,
    modes: Vec<ModalPolynomial>,
    north: Complex64,
    south: Complex64,
    mean_series: LegendreSeries,
}

/// Interpolate `F` with `N` latitude intervals.
pub fn interpolate<F: SphereFunction + ?Sized>(f: &F, order: usize) -> Result<SphericalInterpolant> {
    let grid = SphericalGrid::new(order)?;
    let samples = sample(f, &grid);
    SphericalInterpolant::from_samples(&grid, &samples)
}

impl SphericalInterpolant {
    pub fn from_samples(grid: &SphericalGrid, samples: &SampleArray) -> Result<Self> {
        if samples.order() != grid.order() {
            return Err(Error::InvalidArgument(format!(
                "samples are for N = {}, grid has N = {}",
                samples.order(),
                grid.order()
            )));
        }
        Self::from_spectrum(grid, &ring_dft(samples))
    }

    pub fn from_spectrum(grid: &SphericalGrid, spectrum: &RingSpectrum) -> Result<Self> {
        let n = grid.order();
        if spectrum.order() != n {
            return Err(Error::InvalidArgument(format!(
                "spectrum is for N = {}, grid has N = {}",
                spectrum.order(),
                n
            )));
        }
        let x = grid.cos_theta();
        let sin_theta: Vec<f64> = grid.theta().iter().map(|t| t.sin()).collect();
        let even_basis = Barycentric::new(x.to_vec());
        let odd_basis = Barycentric::new(x[1..n].to_vec());

        let modes: Vec<ModalPolynomial> = (-(n as i64) + 1..=n as i64)
            .map(|m| {
                let parity = Parity::of(m);
                let values = match parity {
                    Parity::Even => (0..=n).map(|j| spectrum.get(j, m)).collect(),
                    // interior latitudes only; sin θ_j > 0 there
                    Parity::Odd => (1..n).map(|j| spectrum.get(j, m) / sin_theta[j]).collect(),
                };
                ModalPolynomial { m, parity, values }
            })
            .collect();

        for mode in modes.iter().filter(|p| p.parity == Parity::Even && p.m != 0) {
            debug_assert!(mode.values[0] == ZERO && mode.values[n] == ZERO);
        }

        let zero_mode = &modes[n - 1];
        // Legendre form wants ascending η, i.e. reversed latitude order
        let ascending: Vec<Complex64> = zero_mode.values.iter().rev().cloned().collect();
        let mean_series = poly_to_legendre(&ascending, grid.rule())?;

        Ok(Self {
            order: n,
            even_basis,
            odd_basis,
            north: zero_mode.values[0],
            south: zero_mode.values[n],
            modes,
            mean_series,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Modes in the order `m = -N+1, …, N`.
    pub fn modes(&self) -> &[ModalPolynomial] {
        &self.modes
    }

    pub fn mode(&self, m: i64) -> Option<&ModalPolynomial> {
        let idx = m + self.order as i64 - 1;
        if idx < 0 {
            return None;
        }
        self.modes.get(idx as usize)
    }

    /// Legendre expansion of the `m = 0` polynomial in `x = cos θ`.
    pub fn mean_series(&self) -> &LegendreSeries {
        &self.mean_series
    }

    pub fn pole_values(&self) -> (Complex64, Complex64) {
        (self.north, self.south)
    }

    /// `p_m(θ)` for a single mode.
    pub fn mode_value(&self, m: i64, theta: f64) -> Option<Complex64> {
        let mode = self.mode(m)?;
        let x = theta.cos();
        Some(match mode.parity {
            Parity::Even => self.even_basis.eval(&mode.values, x),
            Parity::Odd => self.odd_basis.eval(&mode.values, x) * theta.sin(),
        })
    }

    /// `(Q_N F)(θ, φ)`.
    pub fn evaluate(&self, theta: f64, phi: f64) -> Complex64 {
        let mut out = [ZERO];
        self.ring_values(theta, &[phi], &mut out);
        out[0]
    }

    /// `(∂θ Q_N F, (1/sin θ) ∂φ Q_N F)` at an interior point.
    pub fn evaluate_surface_gradient(&self, theta: f64, phi: f64) -> Result<(Complex64, Complex64)> {
        if !(theta > 0.0 && theta < PI) {
            return Err(Error::PoleGradient(theta));
        }
        let mut out = [Jet::default()];
        self.ring_jets(theta, &[phi], &mut out);
        Ok((out[0].d_theta, out[0].d_phi))
    }

    /// Per-mode `p_m(θ)` and optionally `(∂θ p_m, i m p_m / sin θ)`.
    fn modal_values(&self, theta: f64, with_gradient: bool) -> (Vec<Complex64>, Vec<(Complex64, Complex64)>) {
        let n = self.order;
        let (s, x) = theta.sin_cos();
        let mut le = vec![0.0; n + 1];
        let mut lo = vec![0.0; n - 1];
        let mut dle = vec![0.0; if with_gradient { n + 1 } else { 0 }];
        let mut dlo = vec![0.0; if with_gradient { n - 1 } else { 0 }];
        if with_gradient {
            self.even_basis.basis(x, &mut le, Some(&mut dle));
            self.odd_basis.basis(x, &mut lo, Some(&mut dlo));
        } else {
            self.even_basis.basis(x, &mut le, None);
            self.odd_basis.basis(x, &mut lo, None);
        }
        let mut values = Vec::with_capacity(2 * n);
        let mut grads = Vec::with_capacity(if with_gradient { 2 * n } else { 0 });
        for mode in &self.modes {
            let im = Complex64::new(0.0, mode.m as f64);
            match mode.parity {
                Parity::Even => {
                    let p = dot(&le, &mode.values);
                    values.push(p);
                    if with_gradient {
                        let dp = dot(&dle, &mode.values);
                        grads.push((dp * (-s), im * p / s));
                    }
                }
                Parity::Odd => {
                    let q = dot(&lo, &mode.values);
                    values.push(q * s);
                    if with_gradient {
                        let dq = dot(&dlo, &mode.values);
                        grads.push((q * x - dq * (s * s), im * q));
                    }
                }
            }
        }
        (values, grads)
    }

    fn pole_value(&self, theta: f64) -> Option<Complex64> {
        if theta <= 0.0 {
            Some(self.north)
        } else if theta >= PI {
            Some(self.south)
        } else {
            None
        }
    }

    /// Serializable record: `N` and per-mode node values as `[re, im]` pairs.
    pub fn to_record(&self) -> InterpolantRecord {
        InterpolantRecord {
            order: self.order,
            modes: self
                .modes
                .iter()
                .map(|p| ModeRecord {
                    m: p.m,
                    parity: p.parity,
                    node_values: p.values.iter().map(|c| [c.re, c.im]).collect(),
                })
                .collect(),
        }
    }

    pub fn from_record(record: &InterpolantRecord) -> Result<Self> {
        let grid = SphericalGrid::new(record.order)?;
        let n = record.order;
        let w = 2 * n;
        if record.modes.len() != w {
            return Err(Error::ShapeMismatch {
                expected: w,
                actual: record.modes.len(),
            });
        }
        // rebuild the spectrum; odd node values get their sin θ_j back
        let mut spectrum = RingSpectrum {
            order: n,
            data: vec![ZERO; (n + 1) * w],
        };
        for (mi, mode) in record.modes.iter().enumerate() {
            let expected_len = match mode.parity {
                Parity::Even => n + 1,
                Parity::Odd => n - 1,
            };
            if mode.node_values.len() != expected_len || Parity::of(mode.m) != mode.parity {
                return Err(Error::InvalidArgument(format!("malformed record for mode {}", mode.m)));
            }
            for (i, [re, im]) in mode.node_values.iter().enumerate() {
                let (j, v) = match mode.parity {
                    Parity::Even => (i, Complex64::new(*re, *im)),
                    Parity::Odd => (i + 1, Complex64::new(*re, *im) * grid.theta()[i + 1].sin()),
                };
                spectrum.data[j * w + mi] = v;
            }
        }
        let mut interp = Self::from_spectrum(&grid, &spectrum)?;
        // keep the stored odd values bit-for-bit
        for (mode, rec) in interp.modes.iter_mut().zip(&record.modes) {
            mode.values = rec.node_values.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
        }
        Ok(interp)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterpolantRecord {
    #[serde(rename = "N")]
    pub order: usize,
    pub modes: Vec<ModeRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeRecord {
    pub m: i64,
    pub parity: Parity,
    pub node_values: Vec<[f64; 2]>,
}

fn fourier_sum(order: usize, coeffs: &[Complex64], phi: f64) -> Complex64 {
    let step = Complex64::from_polar(1.0, phi);
    let mut e = Complex64::from_polar(1.0, -(order as f64 - 1.0) * phi);
    let mut acc = ZERO;
    for c in coeffs {
        acc += c * e;
        e *= step;
    }
    acc
}

impl SphereFunction for SphericalInterpolant {
    fn value(&self, theta: f64, phi: f64) -> Complex64 {
        self.evaluate(theta, phi)
    }
}

impl RingField for SphericalInterpolant {
    fn ring_values(&self, theta: f64, phis: &[f64], out: &mut [Complex64]) {
        if let Some(v) = self.pole_value(theta) {
            out.iter_mut().for_each(|o| *o = v);
            return;
        }
        let (values, _) = self.modal_values(theta, false);
        for (o, &phi) in out.iter_mut().zip(phis) {
            *o = fourier_sum(self.order, &values, phi);
        }
    }
}

impl RingGradientField for SphericalInterpolant {
    fn ring_jets(&self, theta: f64, phis: &[f64], out: &mut [Jet]) {
        let (values, grads) = self.modal_values(theta, true);
        let d_theta: Vec<Complex64> = grads.iter().map(|g| g.0).collect();
        let d_phi: Vec<Complex64> = grads.iter().map(|g| g.1).collect();
        for (o, &phi) in out.iter_mut().zip(phis) {
            *o = Jet {
                value: fourier_sum(self.order, &values, phi),
                d_theta: fourier_sum(self.order, &d_theta, phi),
                d_phi: fourier_sum(self.order, &d_phi, phi),
            };
        }
    }
}

/// `(1/K) Σ_k F(θ, 2πk/K)`: the periodic trapezoid rule for the azimuthal
/// mean `(1/2π) ∫ F(θ, φ) dφ`.
pub fn azimuthal_mean<F: SphereFunction + ?Sized>(f: &F, theta: f64, points: usize) -> Result<Complex64> {
    if points < 2 {
        return Err(Error::InvalidArgument(format!(
            "azimuthal mean needs at least 2 points, got {points}"
        )));
    }
    let h = 2.0 * PI / points as f64;
    let sum: Complex64 = (0..points).map(|k| f.value(theta, k as f64 * h)).sum();
    Ok(sum / points as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::RealFn;

    #[test]
    fn grid_layout() {
        let g = SphericalGrid::new(5).unwrap();
        assert_eq!(g.theta()[0], 0.0);
        assert_eq!(g.theta()[5], PI);
        assert!(g.theta().windows(2).all(|w| w[0] < w[1]));
        assert_eq!(g.phi().len(), 10);
        assert!((g.phi()[0] + 4.0 * PI / 5.0).abs() < 1e-15);
        assert_eq!(g.phi()[9], PI);
        for w in g.phi().windows(2) {
            assert!((w[1] - w[0] - PI / 5.0).abs() < 1e-14);
        }
        assert_eq!(g.num_points(), 42);
        assert_eq!(g.azimuth_k(0), -4);
    }

    #[test]
    fn grid_rejects_small_order() {
        assert!(SphericalGrid::new(1).is_err());
        assert!(interpolate(&RealFn(|_: f64, _: f64| 1.0), 1).is_err());
    }

    #[test]
    fn sample_examples() {
        let g = SphericalGrid::new(4).unwrap();
        let s = sample(&RealFn(|_: f64, _: f64| 1.0), &g);
        assert!(s.values().iter().all(|v| *v == Complex64::new(1.0, 0.0)));
        let s = sample(&RealFn(|t: f64, _: f64| t.cos()), &g);
        for j in 0..=4 {
            let eta = g.rule().nodes()[4 - j];
            assert!(s.ring(j).iter().all(|v| (v.re - eta).abs() < 1e-15));
        }
        let y11 = |t: f64, p: f64| crate::specfun::spherical_harmonic(1, 1, t, p).unwrap();
        let s = sample(&y11, &g);
        assert!(s.ring(0).iter().chain(s.ring(4)).all(|v| v.norm() < 1e-16));
    }

    #[test]
    fn dft_pure_modes() {
        let g = SphericalGrid::new(3).unwrap();
        let s = sample(&|_: f64, p: f64| Complex64::from_polar(1.0, p), &g);
        let f = ring_dft(&s);
        for j in 1..3 {
            for m in -2..=3 {
                let expected = if m == 1 { 1.0 } else { 0.0 };
                assert!((f.get(j, m) - expected).norm() < 1e-15, "j={j} m={m}");
            }
        }
        // pole rows of a non-constant function keep their mean only
        assert_eq!(f.get(0, 1), ZERO);
        let c = sample(&RealFn(|_: f64, _: f64| 2.5), &g);
        let f = ring_dft(&c);
        assert!((f.get(1, 0) - 2.5).norm() < 1e-15);
        assert!(f.get(1, 2).norm() < 1e-15);
    }

    #[test]
    fn dft_rejects_bad_shape() {
        assert!(SampleArray::from_values(3, vec![ZERO; 5]).is_err());
        assert!(SampleArray::from_values(3, vec![ZERO; 24]).is_ok());
    }

    #[test]
    fn constant_interpolant() {
        let q = interpolate(&RealFn(|_: f64, _: f64| 1.0), 6).unwrap();
        for &(t, p) in &[(0.0, 0.3), (0.4, 1.0), (2.0, -2.0), (PI, 0.0)] {
            assert!((q.evaluate(t, p) - 1.0).norm() < 1e-14);
        }
        for mode in q.modes().iter().filter(|m| m.m != 0) {
            assert!(mode.values.iter().all(|v| v.norm() < 1e-15));
        }
    }

    #[test]
    fn cos_theta_interpolant() {
        let q = interpolate(&RealFn(|t: f64, _: f64| t.cos()), 4).unwrap();
        assert!((q.evaluate(PI / 3.0, 0.77) - 0.5).norm() < 1e-12);
        let (dt, dp) = q.evaluate_surface_gradient(1.1, 0.2).unwrap();
        assert!((dt + 1.1f64.sin()).norm() < 1e-12);
        assert!(dp.norm() < 1e-12);
    }

    #[test]
    fn gradient_rejected_at_poles() {
        let q = interpolate(&RealFn(|t: f64, _: f64| t.cos()), 4).unwrap();
        assert!(matches!(q.evaluate_surface_gradient(0.0, 0.1), Err(Error::PoleGradient(_))));
        assert!(q.evaluate_surface_gradient(PI, 0.1).is_err());
    }

    #[test]
    fn azimuthal_mean_examples() {
        let c = azimuthal_mean(&RealFn(|_: f64, _: f64| 3.0), 0.5, 2).unwrap();
        assert!((c - 3.0).norm() < 1e-15);
        for k in 2..10 {
            let m = azimuthal_mean(&RealFn(|_: f64, p: f64| 1.0 + p.cos()), 1.0, k).unwrap();
            assert!((m - 1.0).norm() < 1e-14, "K={k}");
        }
        assert!(azimuthal_mean(&RealFn(|_: f64, _: f64| 1.0), 0.5, 1).is_err());
    }

    #[test]
    fn record_round_trip() {
        let f = |t: f64, p: f64| Complex64::new(t.sin() * p.cos(), (2.0 * t).cos() * p.sin());
        let q = interpolate(&f, 5).unwrap();
        let rec = q.to_record();
        let json = serde_json::to_string(&rec).unwrap();
        assert!(json.starts_with("{\"N\":5"));
        let back: InterpolantRecord = serde_json::from_str(&json).unwrap();
        let q2 = SphericalInterpolant::from_record(&back).unwrap();
        for &(t, p) in &[(0.3, 0.1), (1.7, -2.2)] {
            assert!((q.evaluate(t, p) - q2.evaluate(t, p)).norm() < 1e-14);
        }
    }
}
