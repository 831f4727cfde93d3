//! Problem definition: field parameters, superpotential variants, sector tags.

use serde::Serialize;

/// Rotating-field parameters: strength `b0` (energy units, sign allowed) and
/// pitch `k` (inverse length). Everything downstream divides by `k`, so `k = 0`
/// is rejected by [`validate_model`] and by the operator builders.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldConfig {
    pub b0: f64,
    pub k: f64,
}

impl FieldConfig {
    pub fn new(b0: f64, k: f64) -> Self {
        FieldConfig { b0, k }
    }
}

/// Scalar superpotential W(z).
#[derive(Clone, Debug, PartialEq)]
pub enum Superpotential {
    /// W ≡ 0: the pure rotating-field problem (band structure on a ring).
    Zero,
    /// W(z) = α tanh z with α > 0; asymptotes ∓α.
    Tanh { alpha: f64 },
    /// Sampled W with linear interpolation between nodes, clamped to the
    /// stated asymptotes (W(−∞), W(+∞)) outside the sampled range.
    Tabulated {
        samples: Vec<(f64, f64)>,
        asymptotes: (f64, f64),
    },
}

impl Superpotential {
    pub fn is_constant(&self) -> bool {
        matches!(self, Superpotential::Zero)
    }

    pub fn value(&self, z: f64) -> f64 {
        match self {
            Superpotential::Zero => 0.0,
            Superpotential::Tanh { alpha } => alpha * z.tanh(),
            Superpotential::Tabulated { samples, asymptotes } => {
                interp_clamped(samples, *asymptotes, z)
            }
        }
    }

    /// W′(z): analytic for the closed-form variants; for tabulated data the
    /// node derivatives are central differences on the sample grid (one-sided
    /// at the ends), interpolated linearly in between and zero outside.
    pub fn derivative(&self, z: f64) -> f64 {
        match self {
            Superpotential::Zero => 0.0,
            Superpotential::Tanh { alpha } => {
                let c = z.cosh();
                alpha / (c * c)
            }
            Superpotential::Tabulated { samples, .. } => tabulated_derivative(samples, z),
        }
    }

    /// |W(+∞)|, the asymptote that competes with the decay rate in the
    /// normalizability condition. `None` for the constant-zero variant.
    pub fn asymptote_magnitude(&self) -> Option<f64> {
        match self {
            Superpotential::Zero => None,
            Superpotential::Tanh { alpha } => Some(alpha.abs()),
            Superpotential::Tabulated { asymptotes, .. } => Some(asymptotes.1.abs()),
        }
    }
}

fn interp_clamped(samples: &[(f64, f64)], asymptotes: (f64, f64), z: f64) -> f64 {
    if samples.is_empty() {
        return 0.0;
    }
    if z <= samples[0].0 {
        return if z == samples[0].0 { samples[0].1 } else { asymptotes.0 };
    }
    if z >= samples[samples.len() - 1].0 {
        let last = samples[samples.len() - 1];
        return if z == last.0 { last.1 } else { asymptotes.1 };
    }
    let idx = samples.partition_point(|(zs, _)| *zs <= z);
    let (z0, w0) = samples[idx - 1];
    let (z1, w1) = samples[idx];
    w0 + (w1 - w0) * (z - z0) / (z1 - z0)
}

fn tabulated_derivative(samples: &[(f64, f64)], z: f64) -> f64 {
    let m = samples.len();
    if m < 2 {
        return 0.0;
    }
    if z < samples[0].0 || z > samples[m - 1].0 {
        return 0.0; // clamped to constants outside the sampled range
    }
    let node_deriv = |i: usize| -> f64 {
        if i == 0 {
            (samples[1].1 - samples[0].1) / (samples[1].0 - samples[0].0)
        } else if i == m - 1 {
            (samples[m - 1].1 - samples[m - 2].1) / (samples[m - 1].0 - samples[m - 2].0)
        } else {
            (samples[i + 1].1 - samples[i - 1].1) / (samples[i + 1].0 - samples[i - 1].0)
        }
    };
    let idx = samples.partition_point(|(zs, _)| *zs <= z).min(m - 1);
    let i0 = idx - 1;
    let (z0, z1) = (samples[i0].0, samples[idx].0);
    let (d0, d1) = (node_deriv(i0), node_deriv(idx));
    d0 + (d1 - d0) * (z - z0) / (z1 - z0)
}

/// Which partner Hamiltonian is under study.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sector {
    Minus,
    Plus,
}

impl Sector {
    /// The ± sign carried by this sector in W² ± W′ and 2W·V ± V′
    /// (upper sign = Plus).
    pub fn sign(self) -> f64 {
        match self {
            Sector::Plus => 1.0,
            Sector::Minus => -1.0,
        }
    }
}

impl std::fmt::Display for Sector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sector::Minus => write!(f, "minus"),
            Sector::Plus => write!(f, "plus"),
        }
    }
}

/// Full problem definition.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelSpec {
    pub field: FieldConfig,
    pub w: Superpotential,
    pub sector: Sector,
}

impl ModelSpec {
    pub fn new(field: FieldConfig, w: Superpotential, sector: Sector) -> Self {
        ModelSpec { field, w, sector }
    }
}

/// Outcome of [`validate_model`]: an empty violation list means the model is
/// usable by every operator builder.
#[derive(Clone, Debug, Default)]
pub struct ValidationResult {
    pub violations: Vec<String>,
}

impl ValidationResult {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_model(spec: &ModelSpec) -> ValidationResult {
    let mut violations = Vec::new();
    if spec.field.k == 0.0 {
        violations.push("k must be nonzero".to_string());
    }
    if !spec.field.k.is_finite() {
        violations.push("k must be finite".to_string());
    }
    if !spec.field.b0.is_finite() {
        violations.push("b0 must be finite".to_string());
    }
    match &spec.w {
        Superpotential::Zero => {}
        Superpotential::Tanh { alpha } => {
            if *alpha <= 0.0 || alpha.is_nan() {
                violations.push("alpha must be positive".to_string());
            }
        }
        Superpotential::Tabulated { samples, asymptotes } => {
            if samples.len() < 2 {
                violations.push("tabulated superpotential needs at least two samples".to_string());
            }
            if !samples.windows(2).all(|w| w[0].0 < w[1].0) {
                violations.push("tabulated z samples must be strictly increasing".to_string());
            }
            if !(asymptotes.0.is_finite() && asymptotes.1.is_finite()) {
                violations.push("tabulated asymptotes must be finite".to_string());
            }
        }
    }
    ValidationResult { violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valid_free_model_passes() {
        let spec = ModelSpec::new(FieldConfig::new(0.5, 1.0), Superpotential::Zero, Sector::Minus);
        assert!(validate_model(&spec).is_valid());
    }

    #[test]
    fn zero_pitch_is_rejected() {
        let spec = ModelSpec::new(FieldConfig::new(1.0, 0.0), Superpotential::Zero, Sector::Minus);
        let result = validate_model(&spec);
        assert!(result.violations.iter().any(|v| v == "k must be nonzero"));
    }

    #[test]
    fn negative_alpha_is_rejected() {
        let spec = ModelSpec::new(
            FieldConfig::new(2.0, 1.0),
            Superpotential::Tanh { alpha: -1.0 },
            Sector::Minus,
        );
        let result = validate_model(&spec);
        assert!(result.violations.iter().any(|v| v == "alpha must be positive"));
    }

    #[test]
    fn tanh_value_and_derivative() {
        let w = Superpotential::Tanh { alpha: 1.5 };
        assert!((w.value(0.0)).abs() < 1e-15);
        assert!((w.derivative(0.0) - 1.5).abs() < 1e-15);
        // Far out, W → ±α and W′ → 0.
        assert!((w.value(20.0) - 1.5).abs() < 1e-12);
        assert!(w.derivative(20.0).abs() < 1e-12);
        assert_eq!(w.asymptote_magnitude(), Some(1.5));
    }

    #[test]
    fn tabulated_interpolates_and_clamps() {
        let w = Superpotential::Tabulated {
            samples: vec![(-1.0, -0.8), (0.0, 0.0), (1.0, 0.8)],
            asymptotes: (-1.0, 1.0),
        };
        assert!((w.value(0.5) - 0.4).abs() < 1e-15);
        assert_eq!(w.value(5.0), 1.0);
        assert_eq!(w.value(-5.0), -1.0);
        assert_eq!(w.derivative(5.0), 0.0);
        // Interior slope of the sampled line is 0.8 at every node here.
        assert!((w.derivative(0.25) - 0.8).abs() < 1e-12);
    }

    #[test]
    fn tabulated_with_decreasing_samples_is_rejected() {
        let spec = ModelSpec::new(
            FieldConfig::new(1.0, 1.0),
            Superpotential::Tabulated {
                samples: vec![(0.0, 0.0), (-1.0, 1.0)],
                asymptotes: (0.0, 0.0),
            },
            Sector::Plus,
        );
        assert!(!validate_model(&spec).is_valid());
    }
}
