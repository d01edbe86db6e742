//! The test functions `F_s(x) = |x - x*|^s` on the unit sphere.

use std::f64::consts::{FRAC_2_PI, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{to_cartesian, RingField, RingGradientField, Jet, SphereFunction};
use crate::filon::{graded_breakpoints, PanelFilon};
use crate::specfun::complete_elliptic_integrals;

/// `[2/3, 1/3, 2/3]`.
pub const DEFAULT_CENTER: [f64; 3] = [2.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0];

/// `|x - x*|^s` for a unit vector `x*` and `s > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceFunction {
    center: [f64; 3],
    power: f64,
}

impl DistanceFunction {
    pub fn new(center: [f64; 3], power: f64) -> Result<Self> {
        let r = center.iter().map(|c| c * c).sum::<f64>().sqrt();
        if (r - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "center must be a unit vector, |x*| = {r}"
            )));
        }
        if !(power > 0.0) || !power.is_finite() {
            return Err(Error::InvalidArgument(format!("power must be positive, got {power}")));
        }
        Ok(Self { center, power })
    }

    /// `F_s` with the default center.
    pub fn standard(power: f64) -> Result<Self> {
        Self::new(DEFAULT_CENTER, power)
    }

    pub fn center(&self) -> [f64; 3] {
        self.center
    }

    pub fn power(&self) -> f64 {
        self.power
    }

    fn offset(&self, theta: f64, phi: f64) -> [f64; 3] {
        let x = to_cartesian(theta, phi);
        [x[0] - self.center[0], x[1] - self.center[1], x[2] - self.center[2]]
    }

    pub fn eval(&self, theta: f64, phi: f64) -> f64 {
        let d = self.offset(theta, phi);
        let r2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
        r2.powf(0.5 * self.power)
    }

    /// `(∂θ F, (1/sin θ) ∂φ F)` from the ambient gradient `s r^{s-2}(x - x*)`.
    /// Set to zero at `x = x*`.
    pub fn gradient(&self, theta: f64, phi: f64) -> (f64, f64) {
        let d = self.offset(theta, phi);
        let r2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
        if r2 == 0.0 {
            return (0.0, 0.0);
        }
        let g = self.power * r2.powf(0.5 * self.power - 1.0);
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        let e_theta = [ct * cp, ct * sp, -st];
        let e_phi = [-sp, cp, 0.0];
        let dot = |e: [f64; 3]| g * (e[0] * d[0] + e[1] * d[1] + e[2] * d[2]);
        (dot(e_theta), dot(e_phi))
    }

    /// Exact azimuthal mean `(1/2π) ∫ F(θ, φ) dφ` for integer powers, from
    /// complete elliptic integrals.
    pub fn azimuthal_mean(&self, theta: f64) -> Result<f64> {
        let s = self.integer_power()?;
        let [cx, cy, cz] = self.center;
        let theta_c = cx.hypot(cy).atan2(cz);
        // |x - x*|² = (A + B)(1 - k² sin² t) after a shift in φ,
        // with A + B = 4 sin²((θ+θ*)/2) and A - B = 4 sin²((θ-θ*)/2)
        let sum = (0.5 * (theta + theta_c)).sin().abs();
        let diff = (0.5 * (theta - theta_c)).sin().abs();
        if sum == 0.0 {
            return Ok(if s == 0 { 1.0 } else { 0.0 });
        }
        let kc = diff / sum;
        let ab = 4.0 * sum * sum;
        let k2 = (1.0 - kc) * (1.0 + kc);
        let kc2 = kc * kc;
        // J_n = ∫_0^{π/2} (1 - k² sin² t)^{n/2} dt,
        // J_{n+2} = ((n+1)(2-k²) J_n - n(1-k²) J_{n-2}) / (n+2)
        let (mut prev, mut cur, mut n) = if s % 2 == 1 {
            let (k, e) = complete_elliptic_integrals(kc);
            // (1-k²) K → 0 as k' → 0
            let k_term = if kc == 0.0 { 0.0 } else { kc2 * k };
            (k_term, e, 1u32)
        } else {
            (0.0, 0.5 * PI, 0u32)
        };
        // `prev` carries (1-k²) J_{n-2}
        while n < s {
            let nf = n as f64;
            let next = ((nf + 1.0) * (2.0 - k2) * cur - nf * prev) / (nf + 2.0);
            prev = kc2 * cur;
            cur = next;
            n += 2;
        }
        Ok(FRAC_2_PI * ab.powf(0.5 * s as f64) * cur)
    }

    fn integer_power(&self) -> Result<u32> {
        let s = self.power;
        if s.fract() != 0.0 || s > 64.0 {
            return Err(Error::InvalidArgument(format!(
                "exact azimuthal means need an integer power, got {s}"
            )));
        }
        Ok(s as u32)
    }

    /// `∫_{S²} F(x) e^{iκ x₃} dS` to near machine precision, as
    /// `2π ∫ g(x) e^{iκx} dx` with the exact ring mean `g` and a composite
    /// Filon rule graded toward the kink at `x = x*₃`.
    pub fn oscillatory_integral(&self, kappa: f64) -> Result<Complex64> {
        self.integer_power()?;
        let pf = PanelFilon::new(40)?;
        let z = self.center[2].clamp(-1.0, 1.0);
        let breakpoints = graded_breakpoints(-1.0, 1.0, z, 0.5, 60);
        let g = |x: f64| {
            let theta = x.clamp(-1.0, 1.0).acos();
            Complex64::new(self.azimuthal_mean(theta).unwrap_or(f64::NAN), 0.0)
        };
        let v = pf.integrate(&g, kappa, &breakpoints)?;
        if !v.is_finite() {
            return Err(Error::InvalidArgument("non-finite reference integral".into()));
        }
        Ok(2.0 * PI * v)
    }
}

impl SphereFunction for DistanceFunction {
    fn value(&self, theta: f64, phi: f64) -> Complex64 {
        Complex64::new(self.eval(theta, phi), 0.0)
    }
}

impl RingField for DistanceFunction {
    fn ring_values(&self, theta: f64, phis: &[f64], out: &mut [Complex64]) {
        for (o, &phi) in out.iter_mut().zip(phis) {
            *o = Complex64::new(self.eval(theta, phi), 0.0);
        }
    }
}

impl RingGradientField for DistanceFunction {
    fn ring_jets(&self, theta: f64, phis: &[f64], out: &mut [Jet]) {
        for (o, &phi) in out.iter_mut().zip(phis) {
            let (dt, dp) = self.gradient(theta, phi);
            *o = Jet {
                value: Complex64::new(self.eval(theta, phi), 0.0),
                d_theta: Complex64::new(dt, 0.0),
                d_phi: Complex64::new(dp, 0.0),
            };
        }
    }
}
