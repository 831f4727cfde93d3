//! Spectra of the lattice Hamiltonians: a dense Hermitian eigensolver,
//! banded fast paths for rings and boxes, inverse-iteration eigenvectors,
//! norms, and exponential tail fits.

mod banded;
mod lapack;

use crate::grid::{Boundary, Grid};
use crate::model::{validate_model, ModelSpec, Sector, Superpotential};
use crate::operators::BlockTriDiag;
use crate::spinor::SpinorField;
use crate::{Error, Result, C64};
use ndarray::Array2;

/// Eigenvalues (always) and eigenvectors (on request) of one Hamiltonian.
#[derive(Clone, Debug)]
pub struct SpectrumResult {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Unit-2-norm eigenvectors as columns, interleaved (site 2j, 2j+1) when
    /// the matrix came from a lattice.
    pub eigenvectors: Option<Array2<C64>>,
    pub grid: Option<Grid>,
    pub sector: Option<Sector>,
    /// Set when a box ground state still has weight at the walls.
    pub edge_warning: Option<String>,
}

impl SpectrumResult {
    /// The idx-th stored eigenvector as an L²-normalized spinor field.
    pub fn eigenvector_field(&self, idx: usize) -> Option<SpinorField> {
        let grid = self.grid?;
        let m = self.eigenvectors.as_ref()?;
        if idx >= m.ncols() {
            return None;
        }
        let col: Vec<C64> = m.column(idx).to_vec();
        let mut f = SpinorField::from_interleaved(grid, &col).ok()?;
        f.normalize();
        Some(f)
    }
}

/// Full spectrum of a dense Hermitian matrix, ascending, with orthonormal
/// eigenvectors on request. The input is symmetrized as (H + H†)/2 after an
/// asymmetry check at the 1e-8·max|H| level.
pub fn eigen_hermitian(h: &Array2<C64>, want_vectors: bool) -> Result<SpectrumResult> {
    let (rows, cols) = h.dim();
    if rows != cols {
        return Err(Error::NotSquare { rows, cols });
    }
    let n = rows;
    let mut scale = 0.0f64;
    let mut dev = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            scale = scale.max(h[[i, j]].norm());
            dev = dev.max((h[[i, j]] - h[[j, i]].conj()).norm());
        }
    }
    let tol = 1e-8 * scale;
    if dev > tol {
        return Err(Error::NotHermitian { max_dev: dev, tol });
    }
    let mut buf: Vec<C64> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            buf.push(0.5 * (h[[i, j]] + h[[j, i]].conj()));
        }
    }
    let eigenvalues = lapack::eig_dense(&mut buf, n, want_vectors)?;
    let eigenvectors =
        want_vectors.then(|| Array2::from_shape_fn((n, n), |(r, c)| buf[c * n + r]));
    Ok(SpectrumResult {
        eigenvalues,
        eigenvectors,
        grid: None,
        sector: None,
        edge_warning: None,
    })
}

fn reject_invalid(spec: &ModelSpec) -> Result<()> {
    let v = validate_model(spec);
    if v.is_valid() {
        Ok(())
    } else {
        Err(Error::InvalidModel(v.violations.join("; ")))
    }
}

/// Lowest `count` levels of the factorized ring Hamiltonian for the sector
/// chosen in `spec`. The ring length is fixed by the field pitch,
/// L = 4π·periods/|k|.
pub fn ring_spectrum(
    spec: &ModelSpec,
    periods: u32,
    n: usize,
    count: usize,
    want_vectors: bool,
) -> Result<SpectrumResult> {
    reject_invalid(spec)?;
    if !matches!(spec.w, Superpotential::Zero) {
        return Err(Error::InvalidModel(
            "ring spectra assume W = 0; use bound_spectrum for a confining superpotential".into(),
        ));
    }
    let grid = Grid::ring_with_periods(spec.field.k, periods, n)?;
    let op = BlockTriDiag::factorized(spec, &grid, spec.sector)?;
    spectrum_from_operator(op, spec.sector, count, want_vectors, false)
}

/// Lowest `count` levels of the box Hamiltonian for a confining
/// superpotential, assembled from the potentials W² ± W′ + V²/4 and B±·S
/// directly (second-order central scheme). The ground state is always
/// computed to check how much amplitude reaches the walls.
pub fn bound_spectrum(
    spec: &ModelSpec,
    length: f64,
    n: usize,
    count: usize,
    want_vectors: bool,
) -> Result<SpectrumResult> {
    reject_invalid(spec)?;
    if spec.w.is_constant() {
        return Err(Error::InvalidModel(
            "bound spectra need a confining superpotential; ring_spectrum handles W = 0".into(),
        ));
    }
    let grid = Grid::new(n, length, Boundary::Box)?;
    let op = BlockTriDiag::direct(spec, &grid)?;
    spectrum_from_operator(op, spec.sector, count, want_vectors, true)
}

fn spectrum_from_operator(
    op: BlockTriDiag,
    sector: Sector,
    count: usize,
    want_vectors: bool,
    edge_check: bool,
) -> Result<SpectrumResult> {
    let order = banded::SiteOrder::for_operator(&op);
    let all = banded::all_eigenvalues(&op, &order)?;
    let kept: Vec<f64> = all[..count.min(all.len())].to_vec();

    let want_n = if want_vectors { kept.len() } else { 0 };
    let ground_needed = edge_check && !all.is_empty();
    let compute_n = want_n.max(usize::from(ground_needed));
    let mut vectors: Vec<Vec<C64>> = Vec::new();
    for &energy in &all[..compute_n] {
        let v = banded::inverse_iteration(&op, &order, energy, &vectors)?;
        vectors.push(v);
    }

    let mut edge_warning = None;
    if ground_needed {
        let ground = SpinorField::from_interleaved(op.grid, &vectors[0])?;
        let peak = ground.max_amplitude();
        let edge = ground.amplitude(0).max(ground.amplitude(op.grid.n() - 1));
        if edge > 1e-8 * peak {
            edge_warning = Some(format!(
                "ground-state amplitude at the box edge is {:.1e} of its peak; enlarge the box for clean bound states",
                edge / peak
            ));
        }
    }

    let eigenvectors = want_vectors.then(|| {
        Array2::from_shape_fn((2 * op.grid.n(), kept.len()), |(r, c)| vectors[c][r])
    });
    Ok(SpectrumResult {
        eigenvalues: kept,
        eigenvectors,
        grid: Some(op.grid),
        sector: Some(sector),
        edge_warning,
    })
}

/// √(h·Σ|ψ|²) — the lattice L² norm of a spinor field.
pub fn l2_norm(psi: &SpinorField) -> f64 {
    psi.norm()
}

/// Least-squares slope of log|ψ| over the trailing `window` fraction of a
/// box grid: the measured exponential decay rate of a bound-state tail.
pub fn tail_decay_fit(psi: &SpinorField, window: f64) -> Result<f64> {
    if psi.grid.boundary() != Boundary::Box {
        return Err(Error::TailFit("tail fits require a box grid".into()));
    }
    if !(window > 0.0 && window <= 1.0) {
        return Err(Error::TailFit("window fraction must lie in (0, 1]".into()));
    }
    let n = psi.grid.n();
    let m = ((window * n as f64).ceil() as usize).clamp(2, n);
    let mut zs = Vec::with_capacity(m);
    let mut ys = Vec::with_capacity(m);
    for j in (n - m)..n {
        let a = psi.amplitude(j);
        if !a.is_finite() || a <= 0.0 {
            return Err(Error::TailFit(format!(
                "fit window contains zeros of |psi| (site {j})"
            )));
        }
        zs.push(psi.grid.point(j));
        ys.push(a.ln());
    }
    let zm = zs.iter().sum::<f64>() / m as f64;
    let ym = ys.iter().sum::<f64>() / m as f64;
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..m {
        num += (zs[i] - zm) * (ys[i] - ym);
        den += (zs[i] - zm) * (zs[i] - zm);
    }
    Ok(num / den)
}

/// Energy below which a lattice eigenvalue counts as a numerical zero mode:
/// max(1e-6, 10·h²·k²), tracking the h² discretization floor.
pub fn zero_mode_threshold(grid: &Grid, k: f64) -> f64 {
    (10.0 * grid.spacing().powi(2) * k * k).max(1e-6)
}
