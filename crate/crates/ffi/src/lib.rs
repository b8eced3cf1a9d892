//! C ABI over `jcm-core`.
//!
//! States and evolved joint states are opaque heap handles owned by the
//! caller and released with the matching `*_free`. Every fallible call
//! returns a [`JcmStatus`]; on failure the message is available from
//! [`jcm_last_error_message`] on the same thread until the next call.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;

use jcm_core::dynamics::{evolve_field, JointState, ModelParams};
use jcm_core::fock::FieldState;
use jcm_core::observables::{mandel_q, squeezing_factors};
use jcm_core::states::{field_state, field_state_auto, SuperpositionParams};
use jcm_core::wigner::wigner_point;
use jcm_core::JcmError;

/// Result codes. `JCM_STATUS_OK` is zero.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JcmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Truncation = 3,
    Degenerate = 4,
    Vacuum = 5,
    Numerical = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// Truncated field state `sum_m C_m |m>`.
pub struct JcmState {
    field: FieldState,
}

/// Atom-field state `|+> (x) field` evolved to a scaled time.
pub struct JcmJoint {
    joint: JointState,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &JcmError) -> JcmStatus {
    match e {
        JcmError::Truncation { .. } => JcmStatus::Truncation,
        JcmError::Degenerate { .. } => JcmStatus::Degenerate,
        JcmError::Vacuum { .. } => JcmStatus::Vacuum,
        JcmError::InvalidArgument(_) | JcmError::Config { .. } | JcmError::DimMismatch { .. } => {
            JcmStatus::InvalidArgument
        }
        _ => JcmStatus::Numerical,
    }
}

/// Runs `f`, mapping errors and panics to a status and recording the message.
fn guard<F: FnOnce() -> Result<(), (JcmStatus, String)>>(f: F) -> JcmStatus {
    set_error(String::new());
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => JcmStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            JcmStatus::Panic
        }
    }
}

fn core_err(e: JcmError) -> (JcmStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (JcmStatus, String) {
    (JcmStatus::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (JcmStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(p: *mut T, v: T, what: &str) -> Result<(), (JcmStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    p.write(v);
    Ok(())
}

/// Message for the last failed call on this thread; empty after success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn jcm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds the superposition state with parameters `alpha`, `r`, `n` and
/// `eps = eps_re + i eps_im`. `dim = 0` picks the truncation automatically
/// with headroom for evolution under absorption parameter `k`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn jcm_state_new(
    alpha: f64,
    r: f64,
    n: u32,
    eps_re: f64,
    eps_im: f64,
    dim: usize,
    k: u32,
    out: *mut *mut JcmState,
) -> JcmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        out.write(ptr::null_mut());
        if !(alpha.is_finite() && r.is_finite() && eps_re.is_finite() && eps_im.is_finite()) {
            return Err((JcmStatus::InvalidArgument, "non-finite parameter".into()));
        }
        let params = SuperpositionParams::new(alpha, r, n as usize, Complex64::new(eps_re, eps_im));
        let field = if dim == 0 {
            field_state_auto(&params, k as usize)
        } else {
            field_state(&params, dim)
        }
        .map_err(core_err)?;
        out.write(Box::into_raw(Box::new(JcmState { field })));
        Ok(())
    })
}

/// Releases a state. Null is ignored.
///
/// # Safety
/// `state` must come from [`jcm_state_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn jcm_state_free(state: *mut JcmState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Number of Fock levels held by `state`, or 0 for null.
///
/// # Safety
/// `state` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn jcm_state_dim(state: *const JcmState) -> usize {
    state.as_ref().map_or(0, |s| s.field.dim())
}

/// Copies the photon-number distribution into `buf[0..dim]`.
///
/// # Safety
/// `buf` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn jcm_state_pnd(state: *const JcmState, buf: *mut f64, len: usize) -> JcmStatus {
    guard(|| {
        let s = deref(state, "state")?;
        if buf.is_null() {
            return Err(null("buf"));
        }
        let p = s.field.probabilities();
        if len < p.len() {
            return Err((
                JcmStatus::BufferTooSmall,
                format!("buffer holds {len} values, state has {}", p.len()),
            ));
        }
        ptr::copy_nonoverlapping(p.as_ptr(), buf, p.len());
        Ok(())
    })
}

/// Evolves `|+> (x) state` under the `k`-photon model to scaled time `t`.
///
/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn jcm_evolve(state: *const JcmState, k: u32, t: f64, out: *mut *mut JcmJoint) -> JcmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        out.write(ptr::null_mut());
        let s = deref(state, "state")?;
        if !t.is_finite() {
            return Err((JcmStatus::InvalidArgument, "non-finite time".into()));
        }
        let model = ModelParams::new(k as usize).map_err(core_err)?;
        let joint = evolve_field(&s.field, model, t).map_err(core_err)?;
        out.write(Box::into_raw(Box::new(JcmJoint { joint })));
        Ok(())
    })
}

/// Releases an evolved state. Null is ignored.
///
/// # Safety
/// `joint` must come from [`jcm_evolve`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn jcm_joint_free(joint: *mut JcmJoint) {
    if !joint.is_null() {
        drop(Box::from_raw(joint));
    }
}

/// Atomic inversion `<sigma_z>`.
///
/// # Safety
/// `joint` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn jcm_inversion(joint: *const JcmJoint, out: *mut f64) -> JcmStatus {
    guard(|| write_out(out, deref(joint, "joint")?.joint.inversion(), "out"))
}

/// Purity of the reduced field state.
///
/// # Safety
/// `joint` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn jcm_purity(joint: *const JcmJoint, out: *mut f64) -> JcmStatus {
    guard(|| write_out(out, deref(joint, "joint")?.joint.purity(), "out"))
}

/// Mandel Q of the field. Fails with `JCM_STATUS_VACUUM` for an empty field.
///
/// # Safety
/// `joint` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn jcm_mandel_q(joint: *const JcmJoint, out: *mut f64) -> JcmStatus {
    guard(|| {
        let q = mandel_q(&deref(joint, "joint")?.joint).map_err(core_err)?;
        write_out(out, q, "out")
    })
}

/// Quadrature squeezing factors `F` and `S`.
///
/// # Safety
/// `joint` must be a live handle; `f` and `s` writable.
#[no_mangle]
pub unsafe extern "C" fn jcm_squeezing(joint: *const JcmJoint, f: *mut f64, s: *mut f64) -> JcmStatus {
    guard(|| {
        let q = squeezing_factors(&deref(joint, "joint")?.joint);
        write_out(f, q.f, "f")?;
        write_out(s, q.s, "s")
    })
}

/// Wigner function of the reduced field at `(x, p)`.
///
/// # Safety
/// `joint` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn jcm_wigner(joint: *const JcmJoint, x: f64, p: f64, out: *mut f64) -> JcmStatus {
    guard(|| {
        let j = deref(joint, "joint")?;
        if !(x.is_finite() && p.is_finite()) {
            return Err((JcmStatus::InvalidArgument, "non-finite phase-space point".into()));
        }
        write_out(out, wigner_point(&j.joint, x, p), "out")
    })
}
