//! C ABI over the susyspin library.
//!
//! The surface is deliberately small: build a model handle, query the
//! closed-form results (bands, zero mode, phase, decay rate, breaking
//! threshold), and pull low-lying spectra off a lattice into a caller-owned
//! buffer. Everything returns a status code; output parameters are written
//! only on `Ok`. Panics are caught at the boundary and reported as
//! `NumericFailure` rather than unwinding into C.
//!
//! All functions taking pointers are `unsafe` with the usual C contract:
//! model pointers must come from one of the constructors and not have been
//! freed, and output pointers must be valid for writes (buffers for as many
//! elements as documented).

use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use susyspin::analytic::{
    decay_rate, dispersion, susy_phase_asymptotic, susy_phase_free, zero_mode_wavevector,
    SusyPhase,
};
use susyspin::model::{validate_model, FieldConfig, ModelSpec, Sector, Superpotential};
use susyspin::solver::{bound_spectrum, ring_spectrum};
use susyspin::Error;

/// Opaque model handle: a field configuration plus a superpotential.
/// Create with `susyspin_model_new_zero` or `susyspin_model_new_tanh`,
/// release with `susyspin_model_free`.
pub struct SusyspinModel {
    field: FieldConfig,
    w: Superpotential,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SusyspinStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// The model or the requested computation is outside its domain.
    InvalidArgument = 2,
    /// The requested quantity does not exist for this model (for example
    /// the zero-mode wavevector in the broken phase).
    NoValue = 3,
    /// The computation started but did not produce a result.
    NumericFailure = 4,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SusyspinSector {
    Minus = 0,
    Plus = 1,
}

impl From<SusyspinSector> for Sector {
    fn from(s: SusyspinSector) -> Sector {
        match s {
            SusyspinSector::Minus => Sector::Minus,
            SusyspinSector::Plus => Sector::Plus,
        }
    }
}

fn status_of(err: &Error) -> SusyspinStatus {
    match err {
        Error::InvalidModel(_) | Error::Grid(_) | Error::EmptyRange(_) => {
            SusyspinStatus::InvalidArgument
        }
        _ => SusyspinStatus::NumericFailure,
    }
}

/// Run `body`, turning panics into `NumericFailure` instead of unwinding
/// across the ABI.
fn guarded(body: impl FnOnce() -> SusyspinStatus) -> SusyspinStatus {
    catch_unwind(AssertUnwindSafe(body)).unwrap_or(SusyspinStatus::NumericFailure)
}

unsafe fn new_model(
    field: FieldConfig,
    w: Superpotential,
    out: *mut *mut SusyspinModel,
) -> SusyspinStatus {
    if out.is_null() {
        return SusyspinStatus::NullPointer;
    }
    // Validation does not depend on the sector; check once with Minus.
    let check = validate_model(&ModelSpec::new(field, w.clone(), Sector::Minus));
    if !check.is_valid() {
        return SusyspinStatus::InvalidArgument;
    }
    let handle = Box::new(SusyspinModel { field, w });
    unsafe { *out = Box::into_raw(handle) };
    SusyspinStatus::Ok
}

/// Version of the library, as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn susyspin_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Free model: rotating field of strength `b0` and pitch `k`, W = 0.
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn susyspin_model_new_zero(
    b0: f64,
    k: f64,
    out: *mut *mut SusyspinModel,
) -> SusyspinStatus {
    guarded(|| unsafe { new_model(FieldConfig::new(b0, k), Superpotential::Zero, out) })
}

/// Confining model: same field plus W(z) = alpha·tanh(z), alpha > 0.
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn susyspin_model_new_tanh(
    b0: f64,
    k: f64,
    alpha: f64,
    out: *mut *mut SusyspinModel,
) -> SusyspinStatus {
    guarded(|| unsafe {
        new_model(FieldConfig::new(b0, k), Superpotential::Tanh { alpha }, out)
    })
}

/// Release a handle. Null is accepted and ignored.
///
/// # Safety
/// `model` must be null or a live handle from a constructor; it must not be
/// used afterwards.
#[no_mangle]
pub unsafe extern "C" fn susyspin_model_free(model: *mut SusyspinModel) {
    if !model.is_null() {
        drop(unsafe { Box::from_raw(model) });
    }
}

/// The two energy bands at wavevector `q`. Free models only; a confining
/// superpotential has no translation-invariant bands.
///
/// # Safety
/// `model` must be a live handle; `e1` and `e2` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn susyspin_dispersion(
    model: *const SusyspinModel,
    q: f64,
    e1: *mut f64,
    e2: *mut f64,
) -> SusyspinStatus {
    guarded(|| {
        if model.is_null() || e1.is_null() || e2.is_null() {
            return SusyspinStatus::NullPointer;
        }
        let m = unsafe { &*model };
        if !matches!(m.w, Superpotential::Zero) {
            return SusyspinStatus::InvalidArgument;
        }
        let (lo, hi) = dispersion(q, &m.field);
        unsafe {
            *e1 = lo;
            *e2 = hi;
        }
        SusyspinStatus::Ok
    })
}

/// Wavevector where the lower band touches zero. `NoValue` in the broken
/// phase; free models only.
///
/// # Safety
/// `model` must be a live handle; `q0` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn susyspin_zero_mode_wavevector(
    model: *const SusyspinModel,
    q0: *mut f64,
) -> SusyspinStatus {
    guarded(|| {
        if model.is_null() || q0.is_null() {
            return SusyspinStatus::NullPointer;
        }
        let m = unsafe { &*model };
        if !matches!(m.w, Superpotential::Zero) {
            return SusyspinStatus::InvalidArgument;
        }
        match zero_mode_wavevector(&m.field) {
            Some(q) => {
                unsafe { *q0 = q };
                SusyspinStatus::Ok
            }
            None => SusyspinStatus::NoValue,
        }
    })
}

/// Whether supersymmetry is broken: writes 1 if broken, 0 if unbroken.
///
/// # Safety
/// `model` must be a live handle; `broken` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn susyspin_phase(
    model: *const SusyspinModel,
    broken: *mut i32,
) -> SusyspinStatus {
    guarded(|| {
        if model.is_null() || broken.is_null() {
            return SusyspinStatus::NullPointer;
        }
        let m = unsafe { &*model };
        let phase = match m.w.asymptote_magnitude() {
            None => susy_phase_free(&m.field),
            Some(w0) => susy_phase_asymptotic(&m.field, w0),
        };
        unsafe { *broken = (phase == SusyPhase::Broken) as i32 };
        SusyspinStatus::Ok
    })
}

/// Spatial decay rate λ of the zero-mode candidate: real in the broken
/// field regime, imaginary below it. Both parts are written.
///
/// # Safety
/// `model` must be a live handle; `re` and `im` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn susyspin_decay_rate(
    model: *const SusyspinModel,
    re: *mut f64,
    im: *mut f64,
) -> SusyspinStatus {
    guarded(|| {
        if model.is_null() || re.is_null() || im.is_null() {
            return SusyspinStatus::NullPointer;
        }
        let m = unsafe { &*model };
        let rate = decay_rate(&m.field);
        unsafe {
            *re = rate.value.re;
            *im = rate.value.im;
        }
        SusyspinStatus::Ok
    })
}

/// Critical field strength where supersymmetry breaks for this model's
/// superpotential asymptote: sqrt(k⁴ + 4k²W∞²).
///
/// # Safety
/// `model` must be a live handle; `b0_critical` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn susyspin_breaking_threshold(
    model: *const SusyspinModel,
    b0_critical: *mut f64,
) -> SusyspinStatus {
    guarded(|| {
        if model.is_null() || b0_critical.is_null() {
            return SusyspinStatus::NullPointer;
        }
        let m = unsafe { &*model };
        let k = m.field.k;
        let w0 = m.w.asymptote_magnitude().unwrap_or(0.0);
        unsafe { *b0_critical = (k.powi(4) + 4.0 * k * k * w0 * w0).sqrt() };
        SusyspinStatus::Ok
    })
}

unsafe fn write_spectrum(
    eigenvalues: &[f64],
    out: *mut f64,
    out_len: *mut usize,
) -> SusyspinStatus {
    unsafe {
        std::ptr::copy_nonoverlapping(eigenvalues.as_ptr(), out, eigenvalues.len());
        *out_len = eigenvalues.len();
    }
    SusyspinStatus::Ok
}

/// Lowest `count` levels of the factorized Hamiltonian on a periodic ring
/// of `periods` gauge periods with `n` sites. `out` must hold `count`
/// doubles; the number written is stored in `out_len`. Free models only.
///
/// # Safety
/// `model` must be a live handle; `out` must be valid for `count` writes
/// and `out_len` for one.
#[no_mangle]
pub unsafe extern "C" fn susyspin_ring_lowest(
    model: *const SusyspinModel,
    sector: SusyspinSector,
    periods: u32,
    n: usize,
    count: usize,
    out: *mut f64,
    out_len: *mut usize,
) -> SusyspinStatus {
    guarded(|| {
        if model.is_null() || out.is_null() || out_len.is_null() {
            return SusyspinStatus::NullPointer;
        }
        let m = unsafe { &*model };
        let spec = ModelSpec::new(m.field, m.w.clone(), sector.into());
        match ring_spectrum(&spec, periods, n, count, false) {
            Ok(result) => unsafe { write_spectrum(&result.eigenvalues, out, out_len) },
            Err(e) => status_of(&e),
        }
    })
}

/// Lowest `count` levels of the confining model in a hard box of the given
/// `length` with `n` sites. Same buffer contract as `susyspin_ring_lowest`.
///
/// # Safety
/// `model` must be a live handle; `out` must be valid for `count` writes
/// and `out_len` for one.
#[no_mangle]
pub unsafe extern "C" fn susyspin_bound_lowest(
    model: *const SusyspinModel,
    sector: SusyspinSector,
    length: f64,
    n: usize,
    count: usize,
    out: *mut f64,
    out_len: *mut usize,
) -> SusyspinStatus {
    guarded(|| {
        if model.is_null() || out.is_null() || out_len.is_null() {
            return SusyspinStatus::NullPointer;
        }
        let m = unsafe { &*model };
        let spec = ModelSpec::new(m.field, m.w.clone(), sector.into());
        match bound_spectrum(&spec, length, n, count, false) {
            Ok(result) => unsafe { write_spectrum(&result.eigenvalues, out, out_len) },
            Err(e) => status_of(&e),
        }
    })
}
