//! High-level diagnostics: phase classification with optional numeric
//! cross-checks, partner-spectrum pairing, a zero-mode census, and
//! breaking-threshold scans.

use crate::analytic::{
    decay_rate, susy_phase_asymptotic, susy_phase_free, zero_mode_wavevector, SusyPhase,
};
use crate::model::{validate_model, FieldConfig, ModelSpec, Sector, Superpotential};
use crate::numfmt::fmt_g12;
use crate::solver::{bound_spectrum, ring_spectrum, zero_mode_threshold, SpectrumResult};
use crate::{Error, Result};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    Analytic,
    Numeric,
    Both,
}

/// Everything [`classify`] can say about a model.
#[derive(Clone, Debug, Serialize)]
pub struct SusyReport {
    pub phase: SusyPhase,
    pub method: Method,
    /// Closed-form ground energies where known; numeric when a lattice was
    /// requested; `None` when neither source applies.
    pub ground_energy_minus: Option<f64>,
    pub ground_energy_plus: Option<f64>,
    /// Analytic convention: one entry per hosting sector (the free-model
    /// ±q₀ pair counts once). A numeric run replaces these with the census
    /// of levels below the zero-mode threshold.
    pub zero_modes_minus: usize,
    pub zero_modes_plus: usize,
    pub pairing_max_gap: Option<f64>,
    pub details: String,
}

/// Lattice on which [`classify`] cross-checks the analytic verdict.
#[derive(Clone, Copy, Debug)]
pub enum NumericSettings {
    /// Factorized ring diagonalization (free models only).
    Ring { periods: u32, n: usize },
    /// Direct box diagonalization (confining superpotentials only).
    Box { length: f64, n: usize },
}

/// How many levels per sector feed the census and pairing checks.
const CENSUS_LEVELS: usize = 24;

/// SUSY phase of a model, from the closed-form rules, optionally
/// cross-checked against a lattice diagonalization. The phase always comes
/// from the analytic rule; numeric disagreement (possible on coarse or
/// incommensurate lattices) is reported in `details`.
pub fn classify(spec: &ModelSpec, numeric: Option<NumericSettings>) -> Result<SusyReport> {
    let v = validate_model(spec);
    if !v.is_valid() {
        return Err(Error::InvalidModel(v.violations.join("; ")));
    }
    let field = spec.field;
    let mut details: Vec<String> = Vec::new();

    let free = spec.w.is_constant();
    let phase;
    let mut report = if free {
        phase = susy_phase_free(&field);
        match zero_mode_wavevector(&field) {
            Some(q0) => details.push(format!(
                "free model; lower band touches zero at q = ±{}",
                fmt_g12(q0)
            )),
            None => details.push("free model; no real zero-mode wavevector".to_string()),
        }
        let ground = match phase {
            SusyPhase::Unbroken => 0.0,
            SusyPhase::Broken => {
                let half = 0.5 * field.k.abs() - 0.5 * field.b0.abs() / field.k.abs();
                half * half
            }
        };
        let hosts = usize::from(phase == SusyPhase::Unbroken);
        SusyReport {
            phase,
            method: Method::Analytic,
            ground_energy_minus: Some(ground),
            ground_energy_plus: Some(ground),
            zero_modes_minus: hosts,
            zero_modes_plus: hosts,
            pairing_max_gap: None,
            details: String::new(),
        }
    } else {
        let w0 = spec
            .w
            .asymptote_magnitude()
            .expect("non-constant superpotentials carry asymptotes");
        phase = susy_phase_asymptotic(&field, w0);
        let lambda = decay_rate(&field).value;
        details.push(format!(
            "asymptote W0 = {}; decay rate Re(lambda) = {}",
            fmt_g12(w0),
            fmt_g12(lambda.re)
        ));
        let unbroken = phase == SusyPhase::Unbroken;
        SusyReport {
            phase,
            method: Method::Analytic,
            ground_energy_minus: unbroken.then_some(0.0),
            ground_energy_plus: None,
            zero_modes_minus: usize::from(unbroken),
            zero_modes_plus: 0,
            pairing_max_gap: None,
            details: String::new(),
        }
    };

    if let Some(settings) = numeric {
        report.method = Method::Both;
        let mut minus_spec = spec.clone();
        minus_spec.sector = Sector::Minus;
        let mut plus_spec = spec.clone();
        plus_spec.sector = Sector::Plus;
        let (minus, plus) = match settings {
            NumericSettings::Ring { periods, n } => {
                if !free {
                    return Err(Error::InvalidModel(
                        "ring cross-checks apply to W = 0 models; use a box".into(),
                    ));
                }
                (
                    ring_spectrum(&minus_spec, periods, n, CENSUS_LEVELS, false)?,
                    ring_spectrum(&plus_spec, periods, n, CENSUS_LEVELS, false)?,
                )
            }
            NumericSettings::Box { length, n } => {
                if free {
                    return Err(Error::InvalidModel(
                        "box cross-checks need a confining superpotential; use a ring".into(),
                    ));
                }
                (
                    bound_spectrum(&minus_spec, length, n, CENSUS_LEVELS, false)?,
                    bound_spectrum(&plus_spec, length, n, CENSUS_LEVELS, false)?,
                )
            }
        };
        let grid = minus.grid.expect("lattice spectra carry their grid");
        let threshold = zero_mode_threshold(&grid, field.k);
        let census =
            |r: &SpectrumResult| r.eigenvalues.iter().filter(|&&e| e < threshold).count();
        report.zero_modes_minus = census(&minus);
        report.zero_modes_plus = census(&plus);
        report.ground_energy_minus = minus.eigenvalues.first().copied();
        report.ground_energy_plus = plus.eigenvalues.first().copied();
        report.pairing_max_gap = Some(pairing_report(&minus, &plus, threshold)?.max_gap);
        details.push(format!(
            "numeric census below {}: minus {}; plus {}",
            fmt_g12(threshold),
            report.zero_modes_minus,
            report.zero_modes_plus
        ));

        if let NumericSettings::Ring { .. } = settings {
            if let Some(q0) = zero_mode_wavevector(&field) {
                let steps = q0 * grid.length() / (2.0 * std::f64::consts::PI);
                if (steps - steps.round()).abs() < 1e-9 {
                    details.push("q0 is commensurate with the ring wavevector lattice".into());
                } else {
                    details.push(
                        "q0 falls between ring wavevectors; the finite ring cannot reach E = 0 exactly"
                            .into(),
                    );
                }
            }
        }
        let numeric_unbroken = report
            .ground_energy_minus
            .iter()
            .chain(report.ground_energy_plus.iter())
            .any(|&e| e < threshold);
        if numeric_unbroken != (phase == SusyPhase::Unbroken) {
            details.push(
                "numeric ground energies disagree with the analytic phase at this resolution; the analytic rule wins"
                    .into(),
            );
        }
        if let Some(w) = minus.edge_warning.as_deref().or(plus.edge_warning.as_deref()) {
            details.push(w.to_string());
        }
    }

    report.details = details.join("; ");
    Ok(report)
}

fn require_same_grid(minus: &SpectrumResult, plus: &SpectrumResult) -> Result<()> {
    if let (Some(a), Some(b)) = (minus.grid, plus.grid) {
        if a.n() != b.n() {
            return Err(Error::SizeMismatch(format!(
                "partner spectra come from different grids ({} vs {} sites)",
                a.n(),
                b.n()
            )));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct PairingReport {
    /// Max |E⁻ᵢ − E⁺ᵢ| over the threshold-stripped, sorted lists.
    pub max_gap: f64,
    /// Levels left over when one stripped list is longer than the other.
    pub unpaired_minus: usize,
    pub unpaired_plus: usize,
}

/// Partner-isospectrality check: drop everything below `zero_threshold`
/// (zero modes are allowed to be unpaired), then compare the remainders in
/// sorted order.
pub fn pairing_report(
    minus: &SpectrumResult,
    plus: &SpectrumResult,
    zero_threshold: f64,
) -> Result<PairingReport> {
    require_same_grid(minus, plus)?;
    let strip = |r: &SpectrumResult| -> Vec<f64> {
        r.eigenvalues
            .iter()
            .copied()
            .filter(|&e| e >= zero_threshold)
            .collect()
    };
    let a = strip(minus);
    let b = strip(plus);
    let common = a.len().min(b.len());
    let mut max_gap = 0.0f64;
    for i in 0..common {
        max_gap = max_gap.max((a[i] - b[i]).abs());
    }
    Ok(PairingReport {
        max_gap,
        unpaired_minus: a.len() - common,
        unpaired_plus: b.len() - common,
    })
}

/// Zero-mode count difference between the sectors: (levels below threshold
/// in the minus spectrum) − (same in plus). Nonzero certifies unbroken SUSY.
pub fn witten_index_estimate(
    minus: &SpectrumResult,
    plus: &SpectrumResult,
    zero_threshold: f64,
) -> Result<i64> {
    require_same_grid(minus, plus)?;
    let below = |r: &SpectrumResult| {
        r.eigenvalues.iter().filter(|&&e| e < zero_threshold).count() as i64
    };
    Ok(below(minus) - below(plus))
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ScanRow {
    pub b0: f64,
    pub phase: SusyPhase,
    /// Closed-form minimum of the lower band where one exists: 0 in the
    /// unbroken phase, (k/2 − |B₀|/2k)² for a broken free model, unknown
    /// (None) for a broken confining model.
    pub e_min: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ThresholdScan {
    /// B₀* = √(k⁴ + 4k²W₀²); reduces to k² when W₀ = 0.
    pub threshold_closed_form: f64,
    /// Bisection of the phase rule over the scanned range; `None` when the
    /// range does not bracket the flip.
    pub threshold_bisection: Option<f64>,
    pub rows: Vec<ScanRow>,
}

/// Sample the SUSY phase over a B₀ range and locate the breaking threshold,
/// both in closed form and by bisecting the phase rule.
pub fn breaking_threshold_scan(
    k: f64,
    b0_range: (f64, f64, usize),
    w: &Superpotential,
) -> Result<ThresholdScan> {
    let (lo, hi, steps) = b0_range;
    if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) {
        return Err(Error::EmptyRange(format!("need lo < hi, got [{lo}, {hi}]")));
    }
    if steps < 3 {
        return Err(Error::EmptyRange("a scan needs at least 3 samples".into()));
    }
    let probe = ModelSpec::new(FieldConfig::new(lo, k), w.clone(), Sector::Minus);
    let v = validate_model(&probe);
    if !v.is_valid() {
        return Err(Error::InvalidModel(v.violations.join("; ")));
    }

    let free = w.is_constant();
    let w0 = w.asymptote_magnitude().unwrap_or(0.0);
    let threshold_closed_form = (k.powi(4) + 4.0 * k * k * w0 * w0).sqrt();
    let phase_at = |b0: f64| -> SusyPhase {
        let field = FieldConfig::new(b0, k);
        if free {
            susy_phase_free(&field)
        } else {
            susy_phase_asymptotic(&field, w0)
        }
    };

    let mut rows = Vec::with_capacity(steps);
    for i in 0..steps {
        let t = i as f64 / (steps - 1) as f64;
        let b0 = lo + t * (hi - lo);
        let phase = phase_at(b0);
        let e_min = match (phase, free) {
            (SusyPhase::Unbroken, _) => Some(0.0),
            (SusyPhase::Broken, true) => {
                let half = 0.5 * k.abs() - 0.5 * b0.abs() / k.abs();
                Some(half * half)
            }
            (SusyPhase::Broken, false) => None,
        };
        rows.push(ScanRow { b0, phase, e_min });
    }

    let threshold_bisection = if phase_at(lo) != phase_at(hi) {
        let (mut a, mut b) = (lo, hi);
        while b - a > 1e-12 {
            let mid = 0.5 * (a + b);
            if phase_at(mid) == phase_at(lo) {
                a = mid;
            } else {
                b = mid;
            }
        }
        Some(0.5 * (a + b))
    } else {
        None
    };

    Ok(ThresholdScan {
        threshold_closed_form,
        threshold_bisection,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free_spec(b0: f64, k: f64) -> ModelSpec {
        ModelSpec::new(FieldConfig::new(b0, k), Superpotential::Zero, Sector::Minus)
    }

    fn tanh_spec(alpha: f64) -> ModelSpec {
        ModelSpec::new(
            FieldConfig::new(2.0, 1.0),
            Superpotential::Tanh { alpha },
            Sector::Minus,
        )
    }

    fn bare_spectrum(eigenvalues: Vec<f64>) -> SpectrumResult {
        SpectrumResult {
            eigenvalues,
            eigenvectors: None,
            grid: None,
            sector: None,
            edge_warning: None,
        }
    }

    #[test]
    fn analytic_classification_of_the_free_model() {
        let r = classify(&free_spec(0.5, 1.0), None).unwrap();
        assert_eq!(r.phase, SusyPhase::Unbroken);
        assert_eq!(r.method, Method::Analytic);
        assert_eq!((r.zero_modes_minus, r.zero_modes_plus), (1, 1));
        assert_eq!(r.ground_energy_minus, Some(0.0));
        assert_eq!(r.ground_energy_plus, Some(0.0));
        assert!(r.details.contains("0.433012701892"));

        let r = classify(&free_spec(2.0, 1.0), None).unwrap();
        assert_eq!(r.phase, SusyPhase::Broken);
        assert_eq!((r.zero_modes_minus, r.zero_modes_plus), (0, 0));
        assert!((r.ground_energy_minus.unwrap() - 0.25).abs() < 1e-14);
    }

    #[test]
    fn analytic_classification_of_the_tanh_model() {
        let r = classify(&tanh_spec(1.5), None).unwrap();
        assert_eq!(r.phase, SusyPhase::Unbroken);
        assert_eq!((r.zero_modes_minus, r.zero_modes_plus), (1, 0));
        assert_eq!(r.ground_energy_minus, Some(0.0));
        assert_eq!(r.ground_energy_plus, None);

        let r = classify(&tanh_spec(0.5), None).unwrap();
        assert_eq!(r.phase, SusyPhase::Broken);
        assert_eq!((r.zero_modes_minus, r.zero_modes_plus), (0, 0));
    }

    #[test]
    fn classification_flips_exactly_at_the_field_threshold() {
        for k in [0.5, 1.0, 2.0, 5.0] {
            let at = k * k;
            assert_eq!(classify(&free_spec(at, k), None).unwrap().phase, SusyPhase::Unbroken);
            let above = at * (1.0 + 1e-12);
            assert_eq!(classify(&free_spec(above, k), None).unwrap().phase, SusyPhase::Broken);
        }
    }

    #[test]
    fn classify_rejects_invalid_models_and_mismatched_settings() {
        let bad = free_spec(1.0, 0.0);
        match classify(&bad, None) {
            Err(Error::InvalidModel(msg)) => assert!(msg.contains("k must be nonzero")),
            other => panic!("expected invalid model, got {other:?}"),
        }
        assert!(classify(
            &tanh_spec(1.5),
            Some(NumericSettings::Ring { periods: 1, n: 64 })
        )
        .is_err());
        assert!(classify(
            &free_spec(0.5, 1.0),
            Some(NumericSettings::Box { length: 40.0, n: 64 })
        )
        .is_err());
    }

    #[test]
    fn numeric_cross_check_on_a_box() {
        let r = classify(
            &tanh_spec(1.5),
            Some(NumericSettings::Box { length: 40.0, n: 400 }),
        )
        .unwrap();
        assert_eq!(r.phase, SusyPhase::Unbroken);
        assert_eq!(r.method, Method::Both);
        // Census view: the zero level of the minus sector is twofold
        // degenerate (both decay branches normalizable), the plus sector
        // holds none.
        assert_eq!((r.zero_modes_minus, r.zero_modes_plus), (2, 0));
        assert!(r.ground_energy_minus.unwrap().abs() < 2e-3);
        assert!(r.ground_energy_plus.unwrap() > 0.01);
        assert!(r.pairing_max_gap.is_some());
    }

    #[test]
    fn numeric_cross_check_on_an_incommensurate_ring() {
        let r = classify(
            &free_spec(0.5, 1.0),
            Some(NumericSettings::Ring { periods: 2, n: 2048 }),
        )
        .unwrap();
        assert_eq!(r.phase, SusyPhase::Unbroken);
        assert!((r.ground_energy_minus.unwrap() - 3.483044721784e-03).abs() < 1e-9);
        assert!(r.details.contains("between ring wavevectors"));
        assert!(r.details.contains("analytic rule wins"));
        assert_eq!((r.zero_modes_minus, r.zero_modes_plus), (0, 0));
    }

    #[test]
    fn pairing_handles_thresholds_and_length_mismatches() {
        let a = bare_spectrum(vec![0.0, 1.0, 2.0, 3.0]);
        let b = bare_spectrum(vec![1.0, 2.0, 3.0]);
        let r = pairing_report(&a, &b, 0.5).unwrap();
        assert_eq!(r.max_gap, 0.0);
        assert_eq!((r.unpaired_minus, r.unpaired_plus), (0, 0));

        let c = bare_spectrum(vec![1.0, 2.0]);
        let r = pairing_report(&a, &c, 0.5).unwrap();
        assert_eq!((r.unpaired_minus, r.unpaired_plus), (1, 0));

        let d = bare_spectrum(vec![1.05, 2.0, 3.1]);
        let r = pairing_report(&b, &d, 0.5).unwrap();
        assert!((r.max_gap - 0.1).abs() < 1e-15);
    }

    #[test]
    fn factorized_ring_partners_pair_to_machine_level() {
        let mut minus_spec = free_spec(0.5, 1.0);
        minus_spec.sector = Sector::Minus;
        let mut plus_spec = free_spec(0.5, 1.0);
        plus_spec.sector = Sector::Plus;
        let minus = crate::solver::ring_spectrum(&minus_spec, 1, 1024, 24, false).unwrap();
        let plus = crate::solver::ring_spectrum(&plus_spec, 1, 1024, 24, false).unwrap();
        let threshold = zero_mode_threshold(&minus.grid.unwrap(), 1.0);
        let r = pairing_report(&minus, &plus, threshold).unwrap();
        assert!(r.max_gap < 1e-9, "gap {}", r.max_gap);
    }

    #[test]
    fn pairing_rejects_different_grids() {
        let mut a = bare_spectrum(vec![1.0]);
        a.grid = Some(crate::grid::Grid::new(64, 10.0, crate::grid::Boundary::Box).unwrap());
        let mut b = bare_spectrum(vec![1.0]);
        b.grid = Some(crate::grid::Grid::new(128, 10.0, crate::grid::Boundary::Box).unwrap());
        assert!(matches!(
            pairing_report(&a, &b, 0.1),
            Err(Error::SizeMismatch(_))
        ));
    }

    #[test]
    fn witten_index_from_box_spectra() {
        let mut minus_spec = tanh_spec(1.5);
        minus_spec.sector = Sector::Minus;
        let mut plus_spec = tanh_spec(1.5);
        plus_spec.sector = Sector::Plus;
        let minus = crate::solver::bound_spectrum(&minus_spec, 40.0, 400, 8, false).unwrap();
        let plus = crate::solver::bound_spectrum(&plus_spec, 40.0, 400, 8, false).unwrap();
        let threshold = zero_mode_threshold(&minus.grid.unwrap(), 1.0);
        // Both decay branches of the zero mode are normalizable, so the
        // index counts two unpaired states, certifying unbroken SUSY.
        assert_eq!(witten_index_estimate(&minus, &plus, threshold).unwrap(), 2);
    }

    #[test]
    fn witten_index_vanishes_for_free_rings() {
        for b0 in [0.5, 2.0] {
            let mut minus_spec = free_spec(b0, 1.0);
            minus_spec.sector = Sector::Minus;
            let mut plus_spec = free_spec(b0, 1.0);
            plus_spec.sector = Sector::Plus;
            let minus = crate::solver::ring_spectrum(&minus_spec, 2, 512, 12, false).unwrap();
            let plus = crate::solver::ring_spectrum(&plus_spec, 2, 512, 12, false).unwrap();
            let threshold = zero_mode_threshold(&minus.grid.unwrap(), 1.0);
            assert_eq!(witten_index_estimate(&minus, &plus, threshold).unwrap(), 0);
        }
    }

    #[test]
    fn threshold_scan_free_model() {
        let scan = breaking_threshold_scan(1.0, (0.0, 2.0, 21), &Superpotential::Zero).unwrap();
        assert_eq!(scan.threshold_closed_form, 1.0);
        let bisect = scan.threshold_bisection.unwrap();
        assert!((bisect - 1.0).abs() < 1e-10, "bisection gave {bisect}");
        assert_eq!(scan.rows.len(), 21);
        // Phase column is monotone: a block of Unbroken then a block of Broken.
        let flip = scan.rows.iter().position(|r| r.phase == SusyPhase::Broken).unwrap();
        assert!(scan.rows[..flip].iter().all(|r| r.phase == SusyPhase::Unbroken));
        assert!(scan.rows[flip..].iter().all(|r| r.phase == SusyPhase::Broken));
        // Broken rows carry the closed-form minimum.
        let last = scan.rows.last().unwrap();
        assert!((last.e_min.unwrap() - 0.25).abs() < 1e-14);

        let scan = breaking_threshold_scan(2.0, (0.0, 8.0, 17), &Superpotential::Zero).unwrap();
        assert_eq!(scan.threshold_closed_form, 4.0);
        assert!((scan.threshold_bisection.unwrap() - 4.0).abs() < 1e-10);

        let scan = breaking_threshold_scan(0.5, (0.0, 1.0, 9), &Superpotential::Zero).unwrap();
        assert_eq!(scan.threshold_closed_form, 0.25);
        assert!((scan.threshold_bisection.unwrap() - 0.25).abs() < 1e-10);
    }

    #[test]
    fn threshold_scan_tanh_model() {
        let w = Superpotential::Tanh { alpha: 1.5 };
        let scan = breaking_threshold_scan(1.0, (0.0, 4.0, 41), &w).unwrap();
        let sqrt10 = 10.0f64.sqrt();
        assert!((scan.threshold_closed_form - sqrt10).abs() < 1e-14);
        assert!((scan.threshold_bisection.unwrap() - sqrt10).abs() < 1e-10);
        // Broken confining rows have no closed-form minimum.
        assert!(scan.rows.last().unwrap().e_min.is_none());
        assert_eq!(scan.rows.first().unwrap().e_min, Some(0.0));
    }

    #[test]
    fn threshold_scan_rejects_bad_ranges() {
        assert!(matches!(
            breaking_threshold_scan(1.0, (2.0, 2.0, 11), &Superpotential::Zero),
            Err(Error::EmptyRange(_))
        ));
        assert!(matches!(
            breaking_threshold_scan(1.0, (0.0, 1.0, 2), &Superpotential::Zero),
            Err(Error::EmptyRange(_))
        ));
        assert!(matches!(
            breaking_threshold_scan(0.0, (0.0, 1.0, 5), &Superpotential::Zero),
            Err(Error::InvalidModel(_))
        ));
    }
}
