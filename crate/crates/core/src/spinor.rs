//! Two-component wavefunctions sampled on a grid.

use crate::grid::Grid;
use crate::{Error, Result, C64};

/// ψ(z_j) = (up_j, down_j). Norms and inner products carry the measure
/// weight h, so they approximate the continuum L² pairing.
#[derive(Clone, Debug)]
pub struct SpinorField {
    pub grid: Grid,
    pub up: Vec<C64>,
    pub down: Vec<C64>,
}

impl SpinorField {
    pub fn new(grid: Grid, up: Vec<C64>, down: Vec<C64>) -> Result<Self> {
        if up.len() != grid.n() || down.len() != grid.n() {
            return Err(Error::SizeMismatch(format!(
                "spinor components ({}, {}) do not match grid ({})",
                up.len(),
                down.len(),
                grid.n()
            )));
        }
        Ok(SpinorField { grid, up, down })
    }

    pub fn zeros(grid: Grid) -> Self {
        let n = grid.n();
        SpinorField {
            grid,
            up: vec![C64::new(0.0, 0.0); n],
            down: vec![C64::new(0.0, 0.0); n],
        }
    }

    /// Split an interleaved (up_0, down_0, up_1, down_1, …) vector.
    pub fn from_interleaved(grid: Grid, v: &[C64]) -> Result<Self> {
        if v.len() != 2 * grid.n() {
            return Err(Error::SizeMismatch(format!(
                "interleaved vector length {} does not match grid ({} sites)",
                v.len(),
                grid.n()
            )));
        }
        let up = v.iter().step_by(2).copied().collect();
        let down = v.iter().skip(1).step_by(2).copied().collect();
        Ok(SpinorField { grid, up, down })
    }

    pub fn to_interleaved(&self) -> Vec<C64> {
        let mut v = Vec::with_capacity(2 * self.grid.n());
        for j in 0..self.grid.n() {
            v.push(self.up[j]);
            v.push(self.down[j]);
        }
        v
    }

    /// √(h · Σ_j |ψ_j|²), the rectangle-rule L² norm.
    pub fn norm(&self) -> f64 {
        let sum: f64 = self
            .up
            .iter()
            .zip(&self.down)
            .map(|(u, d)| u.norm_sqr() + d.norm_sqr())
            .sum();
        (self.grid.spacing() * sum).sqrt()
    }

    /// h-weighted inner product ⟨self|other⟩ (conjugate-linear in self).
    pub fn inner(&self, other: &SpinorField) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for j in 0..self.grid.n() {
            acc += self.up[j].conj() * other.up[j] + self.down[j].conj() * other.down[j];
        }
        acc * self.grid.spacing()
    }

    /// Scale to unit L² norm. A zero field is left unchanged.
    pub fn normalize(&mut self) {
        let n = self.norm();
        if n == 0.0 {
            return;
        }
        let s = 1.0 / n;
        for v in self.up.iter_mut().chain(self.down.iter_mut()) {
            *v *= s;
        }
    }

    /// Largest pointwise amplitude √(|up_j|² + |down_j|²).
    pub fn max_amplitude(&self) -> f64 {
        self.up
            .iter()
            .zip(&self.down)
            .map(|(u, d)| (u.norm_sqr() + d.norm_sqr()).sqrt())
            .fold(0.0, f64::max)
    }

    /// Pointwise amplitude at site j.
    pub fn amplitude(&self, j: usize) -> f64 {
        (self.up[j].norm_sqr() + self.down[j].norm_sqr()).sqrt()
    }
}
