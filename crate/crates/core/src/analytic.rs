//! Closed-form results: the two-band dispersion, zero-mode conditions, decay
//! rates, breaking criteria, and the tanh-superpotential ground state.

use crate::grid::{Boundary, Grid};
use crate::model::{FieldConfig, Sector};
use crate::operators::{gauge_transform, GaugeDirection};
use crate::spin::Mat2;
use crate::spinor::SpinorField;
use crate::{Result, C64};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SusyPhase {
    Unbroken,
    Broken,
}

impl std::fmt::Display for SusyPhase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SusyPhase::Unbroken => write!(f, "Unbroken"),
            SusyPhase::Broken => write!(f, "Broken"),
        }
    }
}

/// Band energies over a sampled wavevector range.
#[derive(Clone, Debug)]
pub struct BandSpectrum {
    pub q_values: Vec<f64>,
    pub e1: Vec<f64>,
    pub e2: Vec<f64>,
    pub field: FieldConfig,
}

impl BandSpectrum {
    /// Sample both bands on `steps` evenly spaced wavevectors (inclusive ends;
    /// a single step lands on `q_min`).
    pub fn sample(field: &FieldConfig, q_min: f64, q_max: f64, steps: usize) -> Self {
        let mut q_values = Vec::with_capacity(steps);
        for i in 0..steps {
            let t = if steps > 1 { i as f64 / (steps - 1) as f64 } else { 0.0 };
            q_values.push(q_min + t * (q_max - q_min));
        }
        let (mut e1, mut e2) = (Vec::with_capacity(steps), Vec::with_capacity(steps));
        for &q in &q_values {
            let (a, b) = dispersion(q, field);
            e1.push(a);
            e2.push(b);
        }
        BandSpectrum { q_values, e1, e2, field: *field }
    }
}

/// The two-band dispersion
/// E∓(q) = q² + k²/4 ∓ √(q²k² + B₀²/4) + B₀²/(4k²), returned ascending.
pub fn dispersion(q: f64, field: &FieldConfig) -> (f64, f64) {
    assert!(field.k != 0.0, "k must be nonzero");
    let (k, b0) = (field.k, field.b0);
    let base = q * q + 0.25 * k * k + b0 * b0 / (4.0 * k * k);
    let radical = (q * q * k * k + 0.25 * b0 * b0).sqrt();
    (base - radical, base + radical)
}

/// The wavevector ±q₀ = ±(k/2)√(1 − B₀²/k⁴) where the lower band touches
/// zero. Returns the non-negative root; `None` once B₀² > k⁴ pushes q₀ off
/// the real axis (broken phase).
pub fn zero_mode_wavevector(field: &FieldConfig) -> Option<f64> {
    assert!(field.k != 0.0, "k must be nonzero");
    let ratio = field.b0 * field.b0 / field.k.powi(4);
    let radicand = 1.0 - ratio;
    if radicand < 0.0 {
        return None;
    }
    Some(0.5 * field.k.abs() * radicand.sqrt())
}

/// Phase of the W ≡ 0 model: unbroken exactly while B₀² ≤ k⁴ (the boundary
/// still has a zero-energy minimum, so it counts as unbroken).
pub fn susy_phase_free(field: &FieldConfig) -> SusyPhase {
    assert!(field.k != 0.0, "k must be nonzero");
    if field.b0 * field.b0 <= field.k.powi(4) {
        SusyPhase::Unbroken
    } else {
        SusyPhase::Broken
    }
}

/// The 2×2 operator annihilated by a plane-wave zero mode at wavevector q:
/// ∓iq ± ikS_z + (B₀/k)S_y (upper sign for Plus).
pub fn zero_mode_matrix(q: f64, field: &FieldConfig, sector: Sector) -> Mat2 {
    assert!(field.k != 0.0, "k must be nonzero");
    let s = sector.sign(); // +1 for Plus
    let iq = C64::new(0.0, -s * q);
    let ikz = C64::new(0.0, s * 0.5 * field.k);
    let c = field.b0 / (2.0 * field.k);
    Mat2::new(
        iq + ikz,
        C64::new(0.0, -c),
        C64::new(0.0, c),
        iq - ikz,
    )
}

/// Unit-norm spinor χ with (∓iq ± ikS_z + (B₀/k)S_y)χ = 0, phase-fixed so the
/// larger component is real and non-negative. Fails when q is not a zero-mode
/// wavevector (the matrix is then nonsingular).
pub fn zero_mode_spinor(q: f64, field: &FieldConfig, sector: Sector) -> Result<[C64; 2]> {
    let m = zero_mode_matrix(q, field, sector);
    let chi = m.null_vector()?;
    Ok(canonical_phase(chi))
}

fn canonical_phase(v: [C64; 2]) -> [C64; 2] {
    let lead = if v[0].norm() >= v[1].norm() { v[0] } else { v[1] };
    if lead.norm() == 0.0 {
        return v;
    }
    let phase = lead.conj() / lead.norm();
    [v[0] * phase, v[1] * phase]
}

/// λ = (k/2)√(B₀²/k⁴ − 1): the spatial decay rate competing with the
/// superpotential asymptote. Purely real (returned ≥ 0) in the strong-field
/// regime B₀² > k⁴, purely imaginary (positive imaginary part) below it, zero
/// exactly at the boundary. Both ±λ occur physically; this is the
/// representative branch.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecayRate {
    pub value: C64,
}

impl DecayRate {
    pub fn is_real(&self) -> bool {
        self.value.im == 0.0
    }
}

pub fn decay_rate(field: &FieldConfig) -> DecayRate {
    assert!(field.k != 0.0, "k must be nonzero");
    let radicand = field.b0 * field.b0 / field.k.powi(4) - 1.0;
    let half_k = 0.5 * field.k.abs();
    let value = if radicand >= 0.0 {
        C64::new(half_k * radicand.sqrt(), 0.0)
    } else {
        C64::new(0.0, half_k * (-radicand).sqrt())
    };
    DecayRate { value }
}

/// Both eigenpairs of the constant spin operator −ikS_z + (B₀/k)S_y whose
/// eigenvalues are ±λ. The representative branch (matching [`decay_rate`])
/// comes first.
pub fn spin_lambda_eigenpairs(field: &FieldConfig) -> [(C64, [C64; 2]); 2] {
    assert!(field.k != 0.0, "k must be nonzero");
    let c = field.b0 / (2.0 * field.k);
    let m = Mat2::new(
        C64::new(0.0, -0.5 * field.k),
        C64::new(0.0, -c),
        C64::new(0.0, c),
        C64::new(0.0, 0.5 * field.k),
    );
    let pairs = m.eig_general();
    let rep = decay_rate(field).value;
    let first_idx = if (pairs[0].0 - rep).norm() <= (pairs[1].0 - rep).norm() { 0 } else { 1 };
    let a = (pairs[first_idx].0, canonical_phase(pairs[first_idx].1));
    let b = (pairs[1 - first_idx].0, canonical_phase(pairs[1 - first_idx].1));
    [a, b]
}

/// Phase of a model whose superpotential approaches ±W₀: broken exactly when
/// the field-driven decay rate outruns the superpotential, Re λ > W₀. An
/// imaginary λ can never break it.
pub fn susy_phase_asymptotic(field: &FieldConfig, w0: f64) -> SusyPhase {
    assert!(w0 >= 0.0, "asymptote magnitude must be non-negative");
    if decay_rate(field).value.re > w0 {
        SusyPhase::Broken
    } else {
        SusyPhase::Unbroken
    }
}

/// The zero-energy ground state of the minus sector for W(z) = α tanh z,
/// sampled on a box grid, L²-normalized, in the lab frame:
/// χ₀ (cosh z)^{−α} e^{−λz} built on the representative λ branch, then gauged
/// back with e^{−ikzS_z}. Returns `None` when no normalizable state exists —
/// the plus sector never has one, and the minus sector loses its own once
/// α ≤ Re λ.
pub fn tanh_ground_state(
    alpha: f64,
    field: &FieldConfig,
    sector: Sector,
    grid: &Grid,
) -> Option<SpinorField> {
    assert!(alpha > 0.0, "alpha must be positive");
    assert!(grid.boundary() == Boundary::Box, "bound states live on a box grid");
    if sector == Sector::Plus {
        return None;
    }
    let [(lambda, chi), _] = spin_lambda_eigenpairs(field);
    if alpha <= lambda.re {
        return None;
    }
    let mut rotated = SpinorField::zeros(*grid);
    for j in 0..grid.n() {
        let z = grid.point(j);
        // exp(−α ln cosh z − λz) keeps the profile finite for any box size.
        let log_env = -alpha * z.cosh().ln();
        let envelope = (C64::new(log_env, 0.0) - lambda * z).exp();
        rotated.up[j] = chi[0] * envelope;
        rotated.down[j] = chi[1] * envelope;
    }
    let mut psi = gauge_transform(&rotated, field.k, GaugeDirection::Inverse);
    psi.normalize();
    Some(psi)
}
