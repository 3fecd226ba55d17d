//! C ABI for the power-Maxwell toolkit.
//!
//! Conventions: every fallible call returns a `pmad_status` and writes its
//! result through out-pointers; objects cross the boundary as opaque
//! handles with explicit `_free` functions; the most recent failure
//! message on the calling thread is available from
//! `pmad_last_error_message`. Panics are caught at the boundary and
//! reported as `PMAD_ERR_PANIC`.

#![allow(non_camel_case_types)]

use pmad::bayes::{elicit_hyperparams, fit_bayes_lindley};
use pmad::mle::{fit_mle, DataSet};
use pmad::{Error, Params, Sampler};
use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Result discriminant for every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum pmad_status {
    PMAD_OK = 0,
    PMAD_ERR_DOMAIN = 1,
    PMAD_ERR_DIVERGENT = 2,
    PMAD_ERR_OVERFLOW = 3,
    PMAD_ERR_NO_CONVERGENCE = 4,
    PMAD_ERR_SINGULAR = 5,
    PMAD_ERR_INVALID_DATA = 6,
    PMAD_ERR_IO = 7,
    PMAD_ERR_NULL_POINTER = 8,
    PMAD_ERR_PANIC = 9,
}

/// Opaque parameter pair handle.
pub struct pmad_params(Params);

/// Opaque dataset handle.
pub struct pmad_dataset(DataSet);

/// Opaque seeded sampler handle.
pub struct pmad_sampler(Sampler);

/// Flat maximum-likelihood fit result. Optional quantities (variances,
/// interval endpoints) are NaN when unavailable.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct pmad_fit_result {
    pub alpha_hat: f64,
    pub beta_hat: f64,
    pub loglik: f64,
    pub var_alpha: f64,
    pub var_beta: f64,
    pub ci_alpha_lo: f64,
    pub ci_alpha_hi: f64,
    pub ci_beta_lo: f64,
    pub ci_beta_hi: f64,
    pub mttf: f64,
    pub survival_at_t: f64,
    pub hazard_at_t: f64,
    pub level: f64,
    pub t_eval: f64,
    /// 1 when the optimizer converged, 0 otherwise.
    pub converged: i32,
    pub iterations: usize,
}

/// Flat Bayes result: Lindley point estimates plus the quadrature
/// posterior means they are validated against.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct pmad_bayes_result {
    pub alpha_lindley: f64,
    pub beta_lindley: f64,
    pub alpha_oracle: f64,
    pub beta_oracle: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(e: &Error) -> pmad_status {
    match e {
        Error::Domain(_) => pmad_status::PMAD_ERR_DOMAIN,
        Error::Divergent(_) => pmad_status::PMAD_ERR_DIVERGENT,
        Error::Overflow(_) => pmad_status::PMAD_ERR_OVERFLOW,
        Error::NoConvergence(_) => pmad_status::PMAD_ERR_NO_CONVERGENCE,
        Error::Singular(_) => pmad_status::PMAD_ERR_SINGULAR,
        Error::InvalidData(_) => pmad_status::PMAD_ERR_INVALID_DATA,
        Error::Io(_) => pmad_status::PMAD_ERR_IO,
    }
}

/// Run `body` with panic containment, translating errors to statuses.
fn guarded(body: impl FnOnce() -> Result<(), Error>) -> pmad_status {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => pmad_status::PMAD_OK,
        Ok(Err(e)) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic crossed the ABI boundary");
            pmad_status::PMAD_ERR_PANIC
        }
    }
}

fn null_error(name: &str) -> pmad_status {
    set_error(&format!("{name} must not be null"));
    pmad_status::PMAD_ERR_NULL_POINTER
}

/// Message for the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread. Never null.
#[no_mangle]
pub extern "C" fn pmad_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Create a parameter pair; both values must be positive and finite.
///
/// # Safety
/// `out` must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn pmad_params_new(
    alpha: f64,
    beta: f64,
    out: *mut *mut pmad_params,
) -> pmad_status {
    if out.is_null() {
        return null_error("out");
    }
    guarded(|| {
        let p = Params::new(alpha, beta)?;
        unsafe { *out = Box::into_raw(Box::new(pmad_params(p))) };
        Ok(())
    })
}

/// Destroy a parameter handle; null is a no-op.
///
/// # Safety
/// `p` must be a pointer returned by `pmad_params_new`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pmad_params_free(p: *mut pmad_params) {
    if !p.is_null() {
        drop(unsafe { Box::from_raw(p) });
    }
}

fn point_eval(
    p: *const pmad_params,
    out: *mut f64,
    eval: impl FnOnce(&Params) -> Result<f64, Error>,
) -> pmad_status {
    if p.is_null() {
        return null_error("params");
    }
    if out.is_null() {
        return null_error("out");
    }
    guarded(|| {
        let v = eval(&unsafe { &*p }.0)?;
        unsafe { *out = v };
        Ok(())
    })
}

/// Density at `x >= 0`.
///
/// # Safety
/// `p` must be a live handle from `pmad_params_new`; `out` must point
/// to writable storage for one double.
#[no_mangle]
pub unsafe extern "C" fn pmad_pdf(p: *const pmad_params, x: f64, out: *mut f64) -> pmad_status {
    point_eval(p, out, |params| params.pdf(x))
}

/// Distribution function at `x >= 0`.
///
/// # Safety
/// `p` must be a live handle from `pmad_params_new`; `out` must point
/// to writable storage for one double.
#[no_mangle]
pub unsafe extern "C" fn pmad_cdf(p: *const pmad_params, x: f64, out: *mut f64) -> pmad_status {
    point_eval(p, out, |params| params.cdf(x))
}

/// Survival function at `x >= 0`.
///
/// # Safety
/// `p` must be a live handle from `pmad_params_new`; `out` must point
/// to writable storage for one double.
#[no_mangle]
pub unsafe extern "C" fn pmad_survival(
    p: *const pmad_params,
    x: f64,
    out: *mut f64,
) -> pmad_status {
    point_eval(p, out, |params| params.survival(x))
}

/// Hazard rate at `x > 0`.
///
/// # Safety
/// `p` must be a live handle from `pmad_params_new`; `out` must point
/// to writable storage for one double.
#[no_mangle]
pub unsafe extern "C" fn pmad_hazard(p: *const pmad_params, x: f64, out: *mut f64) -> pmad_status {
    point_eval(p, out, |params| params.hazard(x))
}

/// Quantile at probability `u` in [0, 1).
///
/// # Safety
/// `p` must be a live handle from `pmad_params_new`; `out` must point
/// to writable storage for one double.
#[no_mangle]
pub unsafe extern "C" fn pmad_quantile(
    p: *const pmad_params,
    u: f64,
    out: *mut f64,
) -> pmad_status {
    point_eval(p, out, |params| params.quantile(u))
}

/// Copy `len` strictly positive, finite values into a dataset handle.
///
/// # Safety
/// `values` must point to `len` readable doubles; `out` must point to
/// writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn pmad_dataset_new(
    values: *const f64,
    len: usize,
    out: *mut *mut pmad_dataset,
) -> pmad_status {
    if values.is_null() && len > 0 {
        return null_error("values");
    }
    if out.is_null() {
        return null_error("out");
    }
    guarded(|| {
        let slice = if len == 0 {
            &[]
        } else {
            unsafe { std::slice::from_raw_parts(values, len) }
        };
        let d = DataSet::new(slice.to_vec(), "ffi")?;
        unsafe { *out = Box::into_raw(Box::new(pmad_dataset(d))) };
        Ok(())
    })
}

/// Destroy a dataset handle; null is a no-op.
///
/// # Safety
/// `d` must be a pointer returned by `pmad_dataset_new`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pmad_dataset_free(d: *mut pmad_dataset) {
    if !d.is_null() {
        drop(unsafe { Box::from_raw(d) });
    }
}

/// Maximum-likelihood fit: needs at least 3 observations, `t_eval > 0`,
/// `level` in (0, 1). Non-convergence is reported in the result struct,
/// not as a status.
///
/// # Safety
/// `d` must be a live dataset handle; `out` must point to writable
/// storage for one `pmad_fit_result`.
#[no_mangle]
pub unsafe extern "C" fn pmad_fit_mle(
    d: *const pmad_dataset,
    t_eval: f64,
    level: f64,
    out: *mut pmad_fit_result,
) -> pmad_status {
    if d.is_null() {
        return null_error("dataset");
    }
    if out.is_null() {
        return null_error("out");
    }
    guarded(|| {
        let fit = fit_mle(&unsafe { &*d }.0, t_eval, level)?;
        let nan_pair = (f64::NAN, f64::NAN);
        let ci_a = fit.ci_alpha.unwrap_or(nan_pair);
        let ci_b = fit.ci_beta.unwrap_or(nan_pair);
        unsafe {
            *out = pmad_fit_result {
                alpha_hat: fit.alpha_hat,
                beta_hat: fit.beta_hat,
                loglik: fit.loglik,
                var_alpha: fit.var_alpha.unwrap_or(f64::NAN),
                var_beta: fit.var_beta.unwrap_or(f64::NAN),
                ci_alpha_lo: ci_a.0,
                ci_alpha_hi: ci_a.1,
                ci_beta_lo: ci_b.0,
                ci_beta_hi: ci_b.1,
                mttf: fit.mttf_hat,
                survival_at_t: fit.r_hat_at_t,
                hazard_at_t: fit.h_hat_at_t,
                level: fit.level,
                t_eval: fit.t_eval,
                converged: fit.converged as i32,
                iterations: fit.iterations,
            };
        }
        Ok(())
    })
}

/// Bayes fit under gamma priors centered at (prior_mean_alpha,
/// prior_mean_beta) with the given common variance: Lindley estimates
/// plus quadrature posterior means.
///
/// # Safety
/// `d` must be a live dataset handle; `out` must point to writable
/// storage for one `pmad_bayes_result`.
#[no_mangle]
pub unsafe extern "C" fn pmad_fit_bayes(
    d: *const pmad_dataset,
    prior_mean_alpha: f64,
    prior_mean_beta: f64,
    prior_variance: f64,
    out: *mut pmad_bayes_result,
) -> pmad_status {
    if d.is_null() {
        return null_error("dataset");
    }
    if out.is_null() {
        return null_error("out");
    }
    guarded(|| {
        let prior = elicit_hyperparams(prior_mean_alpha, prior_mean_beta, prior_variance)?;
        let res = fit_bayes_lindley(&unsafe { &*d }.0, &prior)?;
        unsafe {
            *out = pmad_bayes_result {
                alpha_lindley: res.alpha_lindley,
                beta_lindley: res.beta_lindley,
                alpha_oracle: res.alpha_oracle,
                beta_oracle: res.beta_oracle,
            };
        }
        Ok(())
    })
}

/// Create a sampler on substream `stream` of `seed`. Identical
/// (params, seed, stream) triples reproduce identical draw sequences on
/// every platform.
///
/// # Safety
/// `p` must be a live params handle; `out` must point to writable
/// storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn pmad_sampler_new(
    p: *const pmad_params,
    seed: u64,
    stream: u64,
    out: *mut *mut pmad_sampler,
) -> pmad_status {
    if p.is_null() {
        return null_error("params");
    }
    if out.is_null() {
        return null_error("out");
    }
    guarded(|| {
        let s = Sampler::substream(unsafe { &*p }.0, seed, stream);
        unsafe { *out = Box::into_raw(Box::new(pmad_sampler(s))) };
        Ok(())
    })
}

/// Destroy a sampler handle; null is a no-op.
///
/// # Safety
/// `s` must be a pointer returned by `pmad_sampler_new`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pmad_sampler_free(s: *mut pmad_sampler) {
    if !s.is_null() {
        drop(unsafe { Box::from_raw(s) });
    }
}

/// Fill `buf` with `len` draws.
///
/// # Safety
/// `s` must be a live sampler handle; `buf` must point to `len`
/// writable doubles.
#[no_mangle]
pub unsafe extern "C" fn pmad_sample_fill(
    s: *mut pmad_sampler,
    buf: *mut f64,
    len: usize,
) -> pmad_status {
    if s.is_null() {
        return null_error("sampler");
    }
    if buf.is_null() && len > 0 {
        return null_error("buf");
    }
    guarded(|| {
        let sampler = &mut unsafe { &mut *s }.0;
        let target = unsafe { std::slice::from_raw_parts_mut(buf, len) };
        for slot in target {
            *slot = sampler.sample();
        }
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CStr;
    use std::ptr;

    fn last_error() -> String {
        unsafe { CStr::from_ptr(pmad_last_error_message()) }
            .to_string_lossy()
            .into_owned()
    }

    #[test]
    fn params_lifecycle_and_point_functions() {
        let mut p: *mut pmad_params = ptr::null_mut();
        assert_eq!(
            unsafe { pmad_params_new(1.0, 1.0, &mut p) },
            pmad_status::PMAD_OK
        );
        let mut v = 0.0;
        assert_eq!(unsafe { pmad_pdf(p, 1.0, &mut v) }, pmad_status::PMAD_OK);
        assert!((v - 0.8302149948411894).abs() < 1e-13);
        assert_eq!(unsafe { pmad_cdf(p, 1.0, &mut v) }, pmad_status::PMAD_OK);
        let mut s = 0.0;
        assert_eq!(
            unsafe { pmad_survival(p, 1.0, &mut s) },
            pmad_status::PMAD_OK
        );
        assert!((v + s - 1.0).abs() < 1e-14);
        let mut q = 0.0;
        assert_eq!(
            unsafe { pmad_quantile(p, 0.5, &mut q) },
            pmad_status::PMAD_OK
        );
        assert_eq!(unsafe { pmad_cdf(p, q, &mut v) }, pmad_status::PMAD_OK);
        assert!((v - 0.5).abs() < 1e-12);
        unsafe { pmad_params_free(p) };
    }

    #[test]
    fn invalid_inputs_set_messages() {
        let mut p: *mut pmad_params = ptr::null_mut();
        assert_eq!(
            unsafe { pmad_params_new(-1.0, 1.0, &mut p) },
            pmad_status::PMAD_ERR_DOMAIN
        );
        assert!(last_error().contains("-1"));
        assert_eq!(
            unsafe { pmad_params_new(1.0, 1.0, ptr::null_mut()) },
            pmad_status::PMAD_ERR_NULL_POINTER
        );
        let mut v = 0.0;
        assert_eq!(
            unsafe { pmad_pdf(ptr::null(), 1.0, &mut v) },
            pmad_status::PMAD_ERR_NULL_POINTER
        );
        assert!(!last_error().is_empty());
    }

    #[test]
    fn dataset_fit_roundtrip() {
        let mut p: *mut pmad_params = ptr::null_mut();
        unsafe { pmad_params_new(0.8, 1.2, &mut p) };
        let mut s: *mut pmad_sampler = ptr::null_mut();
        assert_eq!(
            unsafe { pmad_sampler_new(p, 7, 0, &mut s) },
            pmad_status::PMAD_OK
        );
        let mut buf = vec![0.0; 200];
        assert_eq!(
            unsafe { pmad_sample_fill(s, buf.as_mut_ptr(), buf.len()) },
            pmad_status::PMAD_OK
        );

        // identical (seed, stream) reproduces the same draws
        let mut s2: *mut pmad_sampler = ptr::null_mut();
        unsafe { pmad_sampler_new(p, 7, 0, &mut s2) };
        let mut buf2 = vec![0.0; 200];
        unsafe { pmad_sample_fill(s2, buf2.as_mut_ptr(), buf2.len()) };
        assert_eq!(buf, buf2);

        let mut d: *mut pmad_dataset = ptr::null_mut();
        assert_eq!(
            unsafe { pmad_dataset_new(buf.as_ptr(), buf.len(), &mut d) },
            pmad_status::PMAD_OK
        );
        let mut fit = std::mem::MaybeUninit::<pmad_fit_result>::uninit();
        assert_eq!(
            unsafe { pmad_fit_mle(d, 1.0, 0.95, fit.as_mut_ptr()) },
            pmad_status::PMAD_OK
        );
        let fit = unsafe { fit.assume_init() };
        assert_eq!(fit.converged, 1);
        assert!((fit.alpha_hat - 0.8).abs() < 0.3);
        assert!((fit.beta_hat - 1.2).abs() < 0.3);
        assert!(fit.ci_alpha_lo < fit.alpha_hat && fit.alpha_hat < fit.ci_alpha_hi);

        let mut bayes = std::mem::MaybeUninit::<pmad_bayes_result>::uninit();
        assert_eq!(
            unsafe { pmad_fit_bayes(d, fit.alpha_hat, fit.beta_hat, 0.5, bayes.as_mut_ptr()) },
            pmad_status::PMAD_OK
        );
        let bayes = unsafe { bayes.assume_init() };
        assert!((bayes.alpha_lindley - bayes.alpha_oracle).abs() < 0.05);

        unsafe {
            pmad_dataset_free(d);
            pmad_sampler_free(s);
            pmad_sampler_free(s2);
            pmad_params_free(p);
        }
    }

    #[test]
    fn too_small_dataset_reports_invalid_data() {
        let values = [1.0, 2.0];
        let mut d: *mut pmad_dataset = ptr::null_mut();
        unsafe { pmad_dataset_new(values.as_ptr(), values.len(), &mut d) };
        let mut fit = std::mem::MaybeUninit::<pmad_fit_result>::uninit();
        assert_eq!(
            unsafe { pmad_fit_mle(d, 1.0, 0.95, fit.as_mut_ptr()) },
            pmad_status::PMAD_ERR_INVALID_DATA
        );
        assert!(last_error().contains("3"));
        unsafe { pmad_dataset_free(d) };
    }
}
