//! Exercises the C entry points through their public signatures: status
//! codes, null handling, buffer contracts, and agreement with the library
//! they wrap. All pointers passed here are locally owned and live, which is
//! exactly the contract the `unsafe` signatures ask of a C caller.

use std::ffi::CStr;
use std::ptr;

use susyspin_ffi::*;

fn zero_model(b0: f64, k: f64) -> *mut SusyspinModel {
    let mut handle: *mut SusyspinModel = ptr::null_mut();
    assert_eq!(
        unsafe { susyspin_model_new_zero(b0, k, &mut handle) },
        SusyspinStatus::Ok
    );
    assert!(!handle.is_null());
    handle
}

fn tanh_model(b0: f64, k: f64, alpha: f64) -> *mut SusyspinModel {
    let mut handle: *mut SusyspinModel = ptr::null_mut();
    assert_eq!(
        unsafe { susyspin_model_new_tanh(b0, k, alpha, &mut handle) },
        SusyspinStatus::Ok
    );
    handle
}

#[test]
fn version_is_a_nul_terminated_semver_string() {
    let raw = susyspin_version();
    let text = unsafe { CStr::from_ptr(raw) }.to_str().unwrap();
    assert_eq!(text, env!("CARGO_PKG_VERSION"));
}

#[test]
fn construction_validates_the_model() {
    unsafe {
        let mut handle: *mut SusyspinModel = ptr::null_mut();
        assert_eq!(
            susyspin_model_new_zero(1.0, 0.0, &mut handle),
            SusyspinStatus::InvalidArgument
        );
        assert!(handle.is_null());
        assert_eq!(
            susyspin_model_new_tanh(1.0, 1.0, -0.5, &mut handle),
            SusyspinStatus::InvalidArgument
        );
        assert_eq!(
            susyspin_model_new_zero(1.0, 1.0, ptr::null_mut()),
            SusyspinStatus::NullPointer
        );
        // Freeing null is a no-op, not a crash.
        susyspin_model_free(ptr::null_mut());
    }
}

#[test]
fn closed_form_queries_match_the_library() {
    unsafe {
        let m = zero_model(0.5, 1.0);

        let (mut e1, mut e2) = (0.0, 0.0);
        assert_eq!(
            susyspin_dispersion(m, 0.0, &mut e1, &mut e2),
            SusyspinStatus::Ok
        );
        // E(0) = k^2/4 -/+ B0/2 + B0^2/(4 k^2) with B0 = 1/2, k = 1.
        assert!((e1 - 0.0625).abs() < 1e-14);
        assert!((e2 - 0.5625).abs() < 1e-14);

        let mut q0 = 0.0;
        assert_eq!(susyspin_zero_mode_wavevector(m, &mut q0), SusyspinStatus::Ok);
        assert!((q0 - 0.75f64.sqrt() / 2.0).abs() < 1e-14);
        assert_eq!(susyspin_dispersion(m, q0, &mut e1, &mut e2), SusyspinStatus::Ok);
        assert!(e1.abs() < 1e-14, "band must vanish at q0, got {e1}");

        let mut broken = -1;
        assert_eq!(susyspin_phase(m, &mut broken), SusyspinStatus::Ok);
        assert_eq!(broken, 0);

        // Below the breaking threshold the decay rate is purely imaginary.
        let (mut re, mut im) = (0.0, 0.0);
        assert_eq!(susyspin_decay_rate(m, &mut re, &mut im), SusyspinStatus::Ok);
        assert_eq!(re, 0.0);
        assert!((im - 0.75f64.sqrt() / 2.0).abs() < 1e-14);

        let mut critical = 0.0;
        assert_eq!(
            susyspin_breaking_threshold(m, &mut critical),
            SusyspinStatus::Ok
        );
        assert!((critical - 1.0).abs() < 1e-14);

        susyspin_model_free(m);
    }
}

#[test]
fn broken_phase_has_no_zero_mode_wavevector() {
    unsafe {
        let m = zero_model(2.0, 1.0);
        let mut q0 = f64::NAN;
        assert_eq!(
            susyspin_zero_mode_wavevector(m, &mut q0),
            SusyspinStatus::NoValue
        );
        assert!(q0.is_nan(), "NoValue must leave the output untouched");

        let mut broken = -1;
        assert_eq!(susyspin_phase(m, &mut broken), SusyspinStatus::Ok);
        assert_eq!(broken, 1);

        let (mut re, mut im) = (0.0, 0.0);
        assert_eq!(susyspin_decay_rate(m, &mut re, &mut im), SusyspinStatus::Ok);
        assert!((re - 0.75f64.sqrt()).abs() < 1e-14);
        assert_eq!(im, 0.0);
        susyspin_model_free(m);
    }
}

#[test]
fn tanh_threshold_includes_the_superpotential_asymptote() {
    unsafe {
        let m = tanh_model(2.0, 1.0, 1.5);
        let mut critical = 0.0;
        assert_eq!(
            susyspin_breaking_threshold(m, &mut critical),
            SusyspinStatus::Ok
        );
        assert!((critical - 10.0f64.sqrt()).abs() < 1e-14);

        // Bands are a free-model concept.
        let (mut e1, mut e2) = (0.0, 0.0);
        assert_eq!(
            susyspin_dispersion(m, 0.0, &mut e1, &mut e2),
            SusyspinStatus::InvalidArgument
        );
        susyspin_model_free(m);
    }
}

#[test]
fn ring_levels_agree_with_the_solver() {
    use susyspin::model::{FieldConfig, ModelSpec, Sector, Superpotential};
    use susyspin::solver::ring_spectrum;

    unsafe {
        let m = zero_model(0.5, 1.0);
        let mut out = [0.0f64; 4];
        let mut len = 0usize;
        assert_eq!(
            susyspin_ring_lowest(m, SusyspinSector::Minus, 1, 256, 4, out.as_mut_ptr(), &mut len),
            SusyspinStatus::Ok
        );
        assert_eq!(len, 4);
        assert!(out.windows(2).all(|w| w[0] <= w[1]), "levels are sorted");

        let spec = ModelSpec::new(
            FieldConfig::new(0.5, 1.0),
            Superpotential::Zero,
            Sector::Minus,
        );
        let direct = ring_spectrum(&spec, 1, 256, 4, false).unwrap();
        for (a, b) in out.iter().zip(&direct.eigenvalues) {
            assert_eq!(a, b, "the ABI must not perturb the solver's output");
        }
        susyspin_model_free(m);
    }
}

#[test]
fn spectra_respect_each_models_domain() {
    unsafe {
        let free = zero_model(0.5, 1.0);
        let confining = tanh_model(2.0, 1.0, 1.5);
        let mut out = [0.0f64; 2];
        let mut len = 0usize;

        assert_eq!(
            susyspin_bound_lowest(free, SusyspinSector::Minus, 20.0, 400, 2, out.as_mut_ptr(), &mut len),
            SusyspinStatus::InvalidArgument
        );
        assert_eq!(
            susyspin_ring_lowest(confining, SusyspinSector::Minus, 1, 256, 2, out.as_mut_ptr(), &mut len),
            SusyspinStatus::InvalidArgument
        );

        assert_eq!(
            susyspin_bound_lowest(confining, SusyspinSector::Plus, 20.0, 400, 2, out.as_mut_ptr(), &mut len),
            SusyspinStatus::Ok
        );
        assert_eq!(len, 2);
        assert!(out[0] > 0.01, "the plus sector has no zero mode: {}", out[0]);

        // Bad lattice parameters surface as InvalidArgument, not a crash.
        assert_eq!(
            susyspin_ring_lowest(free, SusyspinSector::Minus, 1, 4, 2, out.as_mut_ptr(), &mut len),
            SusyspinStatus::InvalidArgument
        );

        susyspin_model_free(free);
        susyspin_model_free(confining);
    }
}
