//! Supersymmetric quantum mechanics of a spin-½ particle on the real line.
//!
//! The model is a particle moving along z through a magnetic field of constant
//! magnitude rotating in the x–y plane (pitch `k`, strength `b0`), optionally
//! dressed with a scalar superpotential W(z). The Hamiltonian factorizes into
//! two partner sectors H∓ = A±A∓ built from first-order ladder operators, which
//! gives the whole problem an exact two-band dispersion, explicit zero-mode
//! conditions, and a sharp SUSY-breaking criterion.
//!
//! The crate provides:
//!
//! - closed forms for the dispersion, zero-mode wavevectors, decay rates,
//!   breaking thresholds, and tanh-superpotential ground states ([`analytic`]);
//! - exact-factorization lattice discretizations of the partner Hamiltonians on
//!   periodic rings and Dirichlet boxes ([`operators`]);
//! - dense and banded Hermitian eigensolvers backed by LAPACK ([`solver`]);
//! - phase classification, isospectral-pairing checks, and zero-mode census
//!   reports ([`susy`]);
//! - a CLI (`susyspin`) that emits deterministic CSV/JSON artifacts.

pub mod analytic;
pub mod grid;
pub mod model;
pub mod numfmt;
pub mod operators;
pub mod solver;
pub mod spin;
pub mod spinor;
pub mod susy;

pub use grid::{Boundary, Grid};
pub use model::{validate_model, FieldConfig, ModelSpec, Sector, Superpotential, ValidationResult};
pub use spin::Mat2;
pub use spinor::SpinorField;

use num_complex::Complex64;

/// Shorthand for the complex scalar used everywhere.
pub type C64 = Complex64;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("grid: {0}")]
    Grid(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian: max asymmetry {max_dev:.3e} exceeds {tol:.3e}")]
    NotHermitian { max_dev: f64, tol: f64 },
    #[error("LAPACK {routine} failed with info = {info}")]
    Lapack { routine: &'static str, info: i32 },
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error("matrix is nonsingular (|det| = {det_mag:.3e}); no null vector")]
    Nonsingular { det_mag: f64 },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("tail fit: {0}")]
    TailFit(String),
    #[error("empty range: {0}")]
    EmptyRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
