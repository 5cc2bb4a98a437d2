//! C ABI over the fractel library.
//!
//! Every fallible entry point returns a `FractelStatus` and writes its result
//! through an out-pointer that is touched only on `Ok`. Arguments are
//! validated against the documented domains before any work happens, and a
//! panic that slips through is caught and reported as `Panic` rather than
//! unwinding across the boundary. Sample batches are returned as opaque
//! handles; read them through the accessors and release them with
//! `fractel_batch_free`.

use std::panic::{catch_unwind, AssertUnwindSafe};

use fractel::compose::{self, ModelParams};
use fractel::specfun::{self, MlOrder};
use fractel::stable::{self, SampleBatch, SubordinatorSpec};
use fractel::subord::{self, CompositeSpec};
use fractel::telegraph::{self, TelegraphSpec};
use fractel::Error;

/// Outcome of a call. `Ok` is zero; anything else leaves out-params untouched.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FractelStatus {
    Ok = 0,
    InvalidParam = 1,
    NonConvergence = 2,
    Quadrature = 3,
    Accuracy = 4,
    Branch = 5,
    Range = 6,
    UnsupportedOrder = 7,
    ResolutionExhausted = 8,
    Contract = 9,
    NullPointer = 10,
    Panic = 100,
}

fn status_of(e: &Error) -> FractelStatus {
    match e {
        Error::InvalidParam(_) => FractelStatus::InvalidParam,
        Error::NonConvergence { .. } => FractelStatus::NonConvergence,
        Error::Quadrature { .. } => FractelStatus::Quadrature,
        Error::Accuracy { .. } => FractelStatus::Accuracy,
        Error::Branch => FractelStatus::Branch,
        Error::Range => FractelStatus::Range,
        Error::UnsupportedOrder { .. } => FractelStatus::UnsupportedOrder,
        Error::ResolutionExhausted => FractelStatus::ResolutionExhausted,
        Error::Contract(_) => FractelStatus::Contract,
    }
}

/// Opaque sample container; `count * dim` doubles in row-major order.
pub struct FractelBatch {
    inner: SampleBatch,
}

/// Run `f` with panics converted to a status, writing the value on success.
fn guarded<F: FnOnce() -> Result<f64, FractelStatus>>(out: *mut f64, f: F) -> FractelStatus {
    if out.is_null() {
        return FractelStatus::NullPointer;
    }
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(v)) => {
            unsafe { *out = v };
            FractelStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => FractelStatus::Panic,
    }
}

fn guarded_batch<F: FnOnce() -> Result<SampleBatch, FractelStatus>>(
    out: *mut *mut FractelBatch,
    f: F,
) -> FractelStatus {
    if out.is_null() {
        return FractelStatus::NullPointer;
    }
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(inner)) => {
            let handle = Box::new(FractelBatch { inner });
            unsafe { *out = Box::into_raw(handle) };
            FractelStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => FractelStatus::Panic,
    }
}

fn check(ok: bool) -> Result<(), FractelStatus> {
    if ok {
        Ok(())
    } else {
        Err(FractelStatus::InvalidParam)
    }
}

/// Two-parameter Mittag-Leffler function `E_{nu,psi}(z)`, `nu > 0`.
#[no_mangle]
pub unsafe extern "C" fn fractel_mittag_leffler(
    nu: f64,
    psi: f64,
    z: f64,
    out: *mut f64,
) -> FractelStatus {
    guarded(out, || {
        check(nu > 0.0 && nu.is_finite() && psi.is_finite())?;
        specfun::mittag_leffler(MlOrder::new(nu, psi), z)
            .map(|r| r.value)
            .map_err(|e| status_of(&e))
    })
}

/// Airy function `Ai(x)`; total on the real line.
#[no_mangle]
pub extern "C" fn fractel_airy_ai(x: f64) -> f64 {
    specfun::airy_ai(x).value
}

/// Absolutely continuous part of the telegraph law at `x`, time `t`.
#[no_mangle]
pub unsafe extern "C" fn fractel_telegraph_pdf(
    lambda: f64,
    c: f64,
    x: f64,
    t: f64,
    out: *mut f64,
) -> FractelStatus {
    guarded(out, || {
        check(lambda > 0.0 && c > 0.0 && t > 0.0)?;
        Ok(telegraph::telegraph_pdf(TelegraphSpec::new(lambda, c), x, t))
    })
}

/// Characteristic function of the telegraph process at frequency `xi`.
#[no_mangle]
pub unsafe extern "C" fn fractel_telegraph_char(
    lambda: f64,
    c: f64,
    xi: f64,
    t: f64,
    out: *mut f64,
) -> FractelStatus {
    guarded(out, || {
        check(lambda > 0.0 && c > 0.0 && t > 0.0)?;
        Ok(telegraph::telegraph_char(TelegraphSpec::new(lambda, c), xi, t))
    })
}

/// Characteristic function of the time-changed field `W_n(t)` at the
/// frequency vector `xi` of length `n`; requires the real branch
/// `c^2 |xi|^{2 beta} < lambda^2`.
#[no_mangle]
pub unsafe extern "C" fn fractel_w_char(
    nu: f64,
    beta: f64,
    lambda: f64,
    c: f64,
    xi: *const f64,
    n: usize,
    t: f64,
    out: *mut f64,
) -> FractelStatus {
    if xi.is_null() {
        return FractelStatus::NullPointer;
    }
    let xi = unsafe { std::slice::from_raw_parts(xi, n) };
    guarded(out, || {
        check(nu > 0.0 && nu <= 0.5)?;
        check(beta > 0.0 && beta <= 1.0)?;
        check(lambda > 0.0 && c > 0.0 && t > 0.0 && n >= 1)?;
        let params = ModelParams::new(nu, beta, lambda, c, n);
        compose::w_char(&params, xi, t)
            .map(|p| p.value)
            .map_err(|e| status_of(&e))
    })
}

/// Density of the inverse time change `Lcal^nu(t)` at `x > 0`.
#[no_mangle]
pub unsafe extern "C" fn fractel_inverse_density(
    nu: f64,
    lambda: f64,
    x: f64,
    t: f64,
    out: *mut f64,
) -> FractelStatus {
    guarded(out, || {
        check(nu > 0.0 && nu <= 0.5 && lambda > 0.0 && x > 0.0 && t > 0.0)?;
        subord::inverse_density(CompositeSpec::new(nu, lambda), x, t)
            .map_err(|e| status_of(&e))
    })
}

/// Density of iterated Brownian motion `B_1(|B_2(t)|)` at `x`.
#[no_mangle]
pub unsafe extern "C" fn fractel_iterated_bm_density(
    x: f64,
    t: f64,
    out: *mut f64,
) -> FractelStatus {
    guarded(out, || {
        check(t > 0.0)?;
        compose::iterated_bm_density(x, t).map_err(|e| status_of(&e))
    })
}

/// Density of `W_1(t)` for `nu = 1/2`, `beta = 1` at `x`.
#[no_mangle]
pub unsafe extern "C" fn fractel_w_density_1d_half(
    lambda: f64,
    c: f64,
    x: f64,
    t: f64,
    out: *mut f64,
) -> FractelStatus {
    guarded(out, || {
        check(lambda > 0.0 && c > 0.0 && t > 0.0)?;
        compose::w_density_1d_half(TelegraphSpec::new(lambda, c), x, t)
            .map_err(|e| status_of(&e))
    })
}

/// Draws of the telegraph process; one column.
#[no_mangle]
pub unsafe extern "C" fn fractel_sample_telegraph(
    lambda: f64,
    c: f64,
    t: f64,
    count: usize,
    seed: u64,
    out: *mut *mut FractelBatch,
) -> FractelStatus {
    guarded_batch(out, || {
        check(lambda > 0.0 && c > 0.0 && t > 0.0 && count >= 1)?;
        Ok(telegraph::sample_telegraph(
            TelegraphSpec::new(lambda, c),
            t,
            count,
            seed,
        ))
    })
}

/// Draws of the stable subordinator `H^nu(t)`, `nu` in `(0, 1)`; one column.
#[no_mangle]
pub unsafe extern "C" fn fractel_sample_subordinator(
    nu: f64,
    t: f64,
    count: usize,
    seed: u64,
    out: *mut *mut FractelBatch,
) -> FractelStatus {
    guarded_batch(out, || {
        check(nu > 0.0 && nu < 1.0 && t > 0.0 && count >= 1)?;
        Ok(stable::sample_subordinator(
            SubordinatorSpec::new(nu, t),
            count,
            seed,
        ))
    })
}

/// Draws of the time-changed field `W_n(t)`; `n` columns per row.
#[no_mangle]
pub unsafe extern "C" fn fractel_sample_w(
    nu: f64,
    beta: f64,
    lambda: f64,
    c: f64,
    n: usize,
    t: f64,
    count: usize,
    seed: u64,
    out: *mut *mut FractelBatch,
) -> FractelStatus {
    guarded_batch(out, || {
        check(nu > 0.0 && nu <= 0.5)?;
        check(beta > 0.0 && beta <= 1.0)?;
        check(lambda > 0.0 && c > 0.0 && t > 0.0 && n >= 1 && count >= 1)?;
        let params = ModelParams::new(nu, beta, lambda, c, n);
        compose::sample_w(&params, t, count, seed).map_err(|e| status_of(&e))
    })
}

/// Draws of the telegraph process run at reflected Brownian time; one column.
#[no_mangle]
pub unsafe extern "C" fn fractel_sample_tb(
    lambda: f64,
    c: f64,
    t: f64,
    count: usize,
    seed: u64,
    out: *mut *mut FractelBatch,
) -> FractelStatus {
    guarded_batch(out, || {
        check(lambda > 0.0 && c > 0.0 && t > 0.0 && count >= 1)?;
        Ok(compose::sample_tb(
            TelegraphSpec::new(lambda, c),
            t,
            count,
            seed,
        ))
    })
}

/// Number of rows in a batch; zero for a null handle.
#[no_mangle]
pub unsafe extern "C" fn fractel_batch_len(batch: *const FractelBatch) -> usize {
    if batch.is_null() {
        return 0;
    }
    unsafe { (*batch).inner.count }
}

/// Number of columns per row; zero for a null handle.
#[no_mangle]
pub unsafe extern "C" fn fractel_batch_dim(batch: *const FractelBatch) -> usize {
    if batch.is_null() {
        return 0;
    }
    unsafe { (*batch).inner.dim }
}

/// Pointer to the row-major data, valid until `fractel_batch_free`.
#[no_mangle]
pub unsafe extern "C" fn fractel_batch_data(batch: *const FractelBatch) -> *const f64 {
    if batch.is_null() {
        return std::ptr::null();
    }
    unsafe { (*batch).inner.values.as_ptr() }
}

/// Release a batch. A null handle is a no-op.
#[no_mangle]
pub unsafe extern "C" fn fractel_batch_free(batch: *mut FractelBatch) {
    if !batch.is_null() {
        drop(unsafe { Box::from_raw(batch) });
    }
}
