//! Functions on the sphere in spherical polar coordinates.
//!
//! A point is addressed by colatitude `θ ∈ [0, π]` and azimuth `φ`, with
//! `p(θ, φ) = (sin θ cos φ, sin θ sin φ, cos θ)`.

use num_complex::Complex64;

/// A complex-valued function `F(θ, φ)` on the sphere.
pub trait SphereFunction: Sync {
    fn value(&self, theta: f64, phi: f64) -> Complex64;
}

impl<F> SphereFunction for F
where
    F: Fn(f64, f64) -> Complex64 + Sync,
{
    fn value(&self, theta: f64, phi: f64) -> Complex64 {
        self(theta, phi)
    }
}

/// Real-valued `F(θ, φ)`.
pub struct RealFn<F>(pub F);

impl<F> SphereFunction for RealFn<F>
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    fn value(&self, theta: f64, phi: f64) -> Complex64 {
        Complex64::new((self.0)(theta, phi), 0.0)
    }
}

/// `F°(x)` given on Cartesian points of the unit sphere.
pub struct Cartesian<F>(pub F);

impl<F> SphereFunction for Cartesian<F>
where
    F: Fn([f64; 3]) -> Complex64 + Sync,
{
    fn value(&self, theta: f64, phi: f64) -> Complex64 {
        (self.0)(to_cartesian(theta, phi))
    }
}

pub fn to_cartesian(theta: f64, phi: f64) -> [f64; 3] {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [st * cp, st * sp, ct]
}

/// Value of a function together with its surface gradient components
/// `∂θ F` and `(1/sin θ) ∂φ F`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Jet {
    pub value: Complex64,
    pub d_theta: Complex64,
    pub d_phi: Complex64,
}

impl std::ops::Sub for Jet {
    type Output = Jet;

    fn sub(self, rhs: Jet) -> Jet {
        Jet {
            value: self.value - rhs.value,
            d_theta: self.d_theta - rhs.d_theta,
            d_phi: self.d_phi - rhs.d_phi,
        }
    }
}

/// A function that can be evaluated along a latitude ring in one call.
///
/// Norm computations walk a tensor grid ring by ring; implementors with
/// θ-separable structure (interpolants) share the θ-dependent work.
pub trait RingField: Sync {
    fn ring_values(&self, theta: f64, phis: &[f64], out: &mut [Complex64]);
}

/// A [`RingField`] that also provides surface gradients (interior θ only).
pub trait RingGradientField: RingField {
    fn ring_jets(&self, theta: f64, phis: &[f64], out: &mut [Jet]);
}

/// Pointwise function adapter for [`RingField`].
pub struct PointField<F>(pub F);

impl<F: SphereFunction> RingField for PointField<F> {
    fn ring_values(&self, theta: f64, phis: &[f64], out: &mut [Complex64]) {
        for (o, &phi) in out.iter_mut().zip(phis) {
            *o = self.0.value(theta, phi);
        }
    }
}

/// Pointwise function plus pointwise gradient `(∂θ F, (1/sin θ)∂φ F)`.
pub struct PointGradField<F, G> {
    pub value: F,
    pub gradient: G,
}

impl<F, G> PointGradField<F, G> {
    pub fn new(value: F, gradient: G) -> Self {
        Self { value, gradient }
    }
}

impl<F, G> RingField for PointGradField<F, G>
where
    F: SphereFunction,
    G: Fn(f64, f64) -> (Complex64, Complex64) + Sync,
{
    fn ring_values(&self, theta: f64, phis: &[f64], out: &mut [Complex64]) {
        for (o, &phi) in out.iter_mut().zip(phis) {
            *o = self.value.value(theta, phi);
        }
    }
}

impl<F, G> RingGradientField for PointGradField<F, G>
where
    F: SphereFunction,
    G: Fn(f64, f64) -> (Complex64, Complex64) + Sync,
{
    fn ring_jets(&self, theta: f64, phis: &[f64], out: &mut [Jet]) {
        for (o, &phi) in out.iter_mut().zip(phis) {
            let (d_theta, d_phi) = (self.gradient)(theta, phi);
            *o = Jet {
                value: self.value.value(theta, phi),
                d_theta,
                d_phi,
            };
        }
    }
}

/// `A - B`, e.g. an interpolant minus the function it interpolates.
pub struct Difference<'a, A: ?Sized, B: ?Sized>(pub &'a A, pub &'a B);

impl<A, B> RingField for Difference<'_, A, B>
where
    A: RingField + ?Sized,
    B: RingField + ?Sized,
{
    fn ring_values(&self, theta: f64, phis: &[f64], out: &mut [Complex64]) {
        let mut tmp = vec![Complex64::new(0.0, 0.0); phis.len()];
        self.0.ring_values(theta, phis, out);
        self.1.ring_values(theta, phis, &mut tmp);
        for (o, t) in out.iter_mut().zip(tmp) {
            *o -= t;
        }
    }
}

impl<A, B> RingGradientField for Difference<'_, A, B>
where
    A: RingGradientField + ?Sized,
    B: RingGradientField + ?Sized,
{
    fn ring_jets(&self, theta: f64, phis: &[f64], out: &mut [Jet]) {
        let mut tmp = vec![Jet::default(); phis.len()];
        self.0.ring_jets(theta, phis, out);
        self.1.ring_jets(theta, phis, &mut tmp);
        for (o, t) in out.iter_mut().zip(tmp) {
            *o = *o - t;
        }
    }
}

/// `a · F` for a ring field `F`.
pub struct Scaled<'a, A: ?Sized>(pub Complex64, pub &'a A);

impl<A: RingField + ?Sized> RingField for Scaled<'_, A> {
    fn ring_values(&self, theta: f64, phis: &[f64], out: &mut [Complex64]) {
        self.1.ring_values(theta, phis, out);
        out.iter_mut().for_each(|v| *v *= self.0);
    }
}

impl<A: RingGradientField + ?Sized> RingGradientField for Scaled<'_, A> {
    fn ring_jets(&self, theta: f64, phis: &[f64], out: &mut [Jet]) {
        self.1.ring_jets(theta, phis, out);
        for j in out.iter_mut() {
            j.value *= self.0;
            j.d_theta *= self.0;
            j.d_phi *= self.0;
        }
    }
}
