//! C interface to `sphere-filon`.
//!
//! Every function returns an [`SfStatus`]. On failure a message is stored per
//! thread and can be fetched with [`sf_last_error_message`]. Handles are
//! opaque and must be released with their `_free` function. Panics never
//! cross the boundary; they are reported as `SF_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, c_void};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use sphere_filon::interp::{SampleArray, SphericalGrid, SphericalInterpolant};
use sphere_filon::{filon, specfun, Error, GaussLobattoRule};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Convergence = 3,
    BufferTooSmall = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SfComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for SfComplex {
    fn from(c: Complex64) -> Self {
        Self { re: c.re, im: c.im }
    }
}

impl From<SfComplex> for Complex64 {
    fn from(c: SfComplex) -> Self {
        Complex64::new(c.re, c.im)
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SfCubatureResult {
    pub value: SfComplex,
    pub order: usize,
    pub kappa: f64,
    /// Endpoint residual of the Legendre form of the ring means.
    pub endpoint_residual: f64,
    /// Magnitude of the top Legendre coefficient.
    pub tail: f64,
}

/// Gauss-Lobatto rule handle.
pub struct SfRule(GaussLobattoRule);

/// Spherical interpolant handle.
pub struct SfInterpolant(SphericalInterpolant);

/// `F(θ, φ)` supplied by the caller. Called on the calling thread only.
pub type SfSphereCallback = Option<extern "C" fn(theta: f64, phi: f64, user_data: *mut c_void) -> SfComplex>;

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

struct Failure(SfStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::NoConvergence { .. } => SfStatus::Convergence,
            _ => SfStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(SfStatus::NullPointer, format!("{what} is null"))
}

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> SfStatus {
    let (status, message) = match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => (SfStatus::Ok, String::new()),
        Ok(Err(Failure(s, m))) => (s, m),
        Err(payload) => {
            let m = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            (SfStatus::Panic, m)
        }
    };
    LAST_ERROR.with(|e| *e.borrow_mut() = message);
    status
}

unsafe fn out_slice<'a, T>(ptr: *mut T, len: usize, needed: usize, what: &str) -> Result<&'a mut [T], Failure> {
    if ptr.is_null() {
        return Err(null(what));
    }
    if len < needed {
        return Err(Failure(
            SfStatus::BufferTooSmall,
            format!("{what} holds {len} values, {needed} needed"),
        ));
    }
    Ok(std::slice::from_raw_parts_mut(ptr, needed))
}

unsafe fn in_slice<'a, T>(ptr: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if ptr.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(ptr, len))
}

unsafe fn write<T>(ptr: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if ptr.is_null() {
        return Err(null(what));
    }
    ptr.write(value);
    Ok(())
}

/// Copy the calling thread's last error message into `buf` (NUL-terminated,
/// truncated to `len`). Returns the length the full message needs, including
/// the terminator. `buf` may be null to query the length.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn sf_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        bytes.len() + 1
    })
}

/// Build the Gauss-Lobatto rule of order `order ≥ 2` (`order + 1` nodes).
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn sf_rule_new(order: usize, out: *mut *mut SfRule) -> SfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let rule = specfun::gauss_lobatto(order)?;
        *out = Box::into_raw(Box::new(SfRule(rule)));
        Ok(())
    })
}

/// # Safety
/// `rule` must be null or a handle from [`sf_rule_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sf_rule_free(rule: *mut SfRule) {
    if !rule.is_null() {
        drop(Box::from_raw(rule));
    }
}

/// Number of nodes, `order + 1`; 0 for a null handle.
///
/// # Safety
/// `rule` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sf_rule_len(rule: *const SfRule) -> usize {
    rule.as_ref().map_or(0, |r| r.0.nodes().len())
}

/// Ascending nodes into `out[0..order+1]`.
///
/// # Safety
/// `rule` must be a live handle; `out` valid for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn sf_rule_nodes(rule: *const SfRule, out: *mut f64, len: usize) -> SfStatus {
    guard(|| {
        let r = rule.as_ref().ok_or_else(|| null("rule"))?;
        out_slice(out, len, r.0.nodes().len(), "out")?.copy_from_slice(r.0.nodes());
        Ok(())
    })
}

/// Weights into `out[0..order+1]`.
///
/// # Safety
/// `rule` must be a live handle; `out` valid for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn sf_rule_weights(rule: *const SfRule, out: *mut f64, len: usize) -> SfStatus {
    guard(|| {
        let r = rule.as_ref().ok_or_else(|| null("rule"))?;
        out_slice(out, len, r.0.weights().len(), "out")?.copy_from_slice(r.0.weights());
        Ok(())
    })
}

/// `j_0(κ), …, j_{n_max}(κ)` for `κ > 0` into `out[0..n_max+1]`.
///
/// # Safety
/// `out` valid for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn sf_spherical_bessel_j(n_max: usize, kappa: f64, out: *mut f64, len: usize) -> SfStatus {
    guard(|| {
        let dst = out_slice(out, len, n_max + 1, "out")?;
        dst.copy_from_slice(&specfun::spherical_bessel_j(n_max, kappa)?);
        Ok(())
    })
}

/// `μ_n(κ) = ∫ P_n(x) e^{iκx} dx`, `n = 0..=n_max`, for `κ ≥ 0`.
///
/// # Safety
/// `out` valid for `len` values.
#[no_mangle]
pub unsafe extern "C" fn sf_legendre_moments(n_max: usize, kappa: f64, out: *mut SfComplex, len: usize) -> SfStatus {
    guard(|| {
        let dst = out_slice(out, len, n_max + 1, "out")?;
        let kernel = filon::legendre_moments(kappa, n_max)?;
        for (d, m) in dst.iter_mut().zip(kernel.moments()) {
            *d = (*m).into();
        }
        Ok(())
    })
}

/// Grid colatitudes `θ_0 = 0, …, θ_N = π` into `out[0..order+1]`.
///
/// # Safety
/// `out` valid for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn sf_grid_theta(order: usize, out: *mut f64, len: usize) -> SfStatus {
    guard(|| {
        let grid = SphericalGrid::new(order)?;
        out_slice(out, len, order + 1, "out")?.copy_from_slice(grid.theta());
        Ok(())
    })
}

/// Grid azimuths `kπ/N`, `k = -N+1..N`, into `out[0..2*order]`.
///
/// # Safety
/// `out` valid for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn sf_grid_phi(order: usize, out: *mut f64, len: usize) -> SfStatus {
    guard(|| {
        let grid = SphericalGrid::new(order)?;
        out_slice(out, len, 2 * order, "out")?.copy_from_slice(grid.phi());
        Ok(())
    })
}

fn sample_array(order: usize, samples: &[SfComplex]) -> Result<SampleArray, Failure> {
    Ok(SampleArray::from_values(
        order,
        samples.iter().map(|&c| c.into()).collect(),
    )?)
}

/// Interpolant from `(order+1) × 2·order` samples, row-major by latitude
/// with azimuths in the order of [`sf_grid_phi`].
///
/// # Safety
/// `samples` valid for `len` values; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn sf_interpolant_new(
    order: usize,
    samples: *const SfComplex,
    len: usize,
    out: *mut *mut SfInterpolant,
) -> SfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let data = sample_array(order, in_slice(samples, len, "samples")?)?;
        let grid = SphericalGrid::new(order)?;
        let q = SphericalInterpolant::from_samples(&grid, &data)?;
        *out = Box::into_raw(Box::new(SfInterpolant(q)));
        Ok(())
    })
}

/// # Safety
/// `interp` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sf_interpolant_free(interp: *mut SfInterpolant) {
    if !interp.is_null() {
        drop(Box::from_raw(interp));
    }
}

/// Value at `(θ, φ)`.
///
/// # Safety
/// `interp` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn sf_interpolant_eval(
    interp: *const SfInterpolant,
    theta: f64,
    phi: f64,
    out: *mut SfComplex,
) -> SfStatus {
    guard(|| {
        let q = interp.as_ref().ok_or_else(|| null("interp"))?;
        write(out, q.0.evaluate(theta, phi).into(), "out")
    })
}

/// `∂θ` and `(1/sin θ)∂φ` at an interior point.
///
/// # Safety
/// `interp` must be a live handle; outputs valid for a write.
#[no_mangle]
pub unsafe extern "C" fn sf_interpolant_gradient(
    interp: *const SfInterpolant,
    theta: f64,
    phi: f64,
    d_theta: *mut SfComplex,
    d_phi: *mut SfComplex,
) -> SfStatus {
    guard(|| {
        let q = interp.as_ref().ok_or_else(|| null("interp"))?;
        if d_theta.is_null() || d_phi.is_null() {
            return Err(null("gradient output"));
        }
        let (dt, dp) = q.0.evaluate_surface_gradient(theta, phi)?;
        write(d_theta, dt.into(), "d_theta")?;
        write(d_phi, dp.into(), "d_phi")
    })
}

fn result(r: filon::CubatureResult) -> SfCubatureResult {
    SfCubatureResult {
        value: r.value.into(),
        order: r.order,
        kappa: r.kappa,
        endpoint_residual: r.diagnostics.endpoint_residual,
        tail: r.diagnostics.tail,
    }
}

/// Cubature of `∫ F e^{iκ cos θ} dS` from grid samples laid out as for
/// [`sf_interpolant_new`].
///
/// # Safety
/// `samples` valid for `len` values; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn sf_cubature_from_samples(
    order: usize,
    samples: *const SfComplex,
    len: usize,
    kappa: f64,
    out: *mut SfCubatureResult,
) -> SfStatus {
    guard(|| {
        let data = sample_array(order, in_slice(samples, len, "samples")?)?;
        let r = filon::cubature_from_samples(&data, kappa)?;
        write(out, result(r), "out")
    })
}

struct Callback {
    f: extern "C" fn(f64, f64, *mut c_void) -> SfComplex,
    user_data: *mut c_void,
}

// The callback is only invoked from the thread that called `sf_cubature`.
unsafe impl Sync for Callback {}

impl sphere_filon::SphereFunction for Callback {
    fn value(&self, theta: f64, phi: f64) -> Complex64 {
        (self.f)(theta, phi, self.user_data).into()
    }
}

/// Cubature of `∫ F e^{iκ cos θ} dS`, calling `f` once per grid point
/// (poles once each).
///
/// # Safety
/// `f` must be safe to call with `user_data`; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn sf_cubature(
    f: SfSphereCallback,
    user_data: *mut c_void,
    order: usize,
    kappa: f64,
    out: *mut SfCubatureResult,
) -> SfStatus {
    guard(|| {
        let f = f.ok_or_else(|| null("callback"))?;
        let cb = Callback { f, user_data };
        let r = filon::cubature(&cb, order, kappa)?;
        write(out, result(r), "out")
    })
}
