//! Uniform 1-D grids: periodic rings for band problems, Dirichlet boxes for
//! bound states.

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    /// Periodic wrap; site j sits at z = j·h with z = L identified with z = 0.
    Ring,
    /// Hard walls with zero ghost points half a step outside both ends;
    /// site j sits at the cell midpoint z = −L/2 + (j + ½)·h, which keeps the
    /// grid mirror-symmetric about z = 0.
    Box,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    n: usize,
    length: f64,
    boundary: Boundary,
}

impl Grid {
    pub fn new(n: usize, length: f64, boundary: Boundary) -> Result<Self> {
        if n < 8 {
            return Err(Error::Grid(format!("need at least 8 points, got {n}")));
        }
        if length <= 0.0 || !length.is_finite() {
            return Err(Error::Grid(format!("length must be positive, got {length}")));
        }
        Ok(Grid { n, length, boundary })
    }

    /// Ring sized for a rotating field of pitch `k`: the spin-rotation gauge
    /// factor has period 4π/k, so both frames are strictly periodic only when
    /// L = 4π·m/|k| for a whole number of periods m.
    pub fn ring_with_periods(k: f64, periods: u32, n: usize) -> Result<Self> {
        if k == 0.0 {
            return Err(Error::Grid("ring sizing needs k != 0".to_string()));
        }
        if periods == 0 {
            return Err(Error::Grid("need at least one field period".to_string()));
        }
        let length = 4.0 * std::f64::consts::PI * f64::from(periods) / k.abs();
        Grid::new(n, length, Boundary::Ring)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn spacing(&self) -> f64 {
        self.length / self.n as f64
    }

    pub fn point(&self, j: usize) -> f64 {
        let h = self.spacing();
        match self.boundary {
            Boundary::Ring => j as f64 * h,
            Boundary::Box => -0.5 * self.length + (j as f64 + 0.5) * h,
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.point(j)).collect()
    }

    /// Whether this ring satisfies L·|k|/(4π) ∈ ℤ⁺ (always true for boxes —
    /// the rule only constrains periodic wrap).
    pub fn respects_field_period(&self, k: f64) -> bool {
        match self.boundary {
            Boundary::Box => true,
            Boundary::Ring => {
                if k == 0.0 {
                    return false;
                }
                let m = self.length * k.abs() / (4.0 * std::f64::consts::PI);
                m >= 0.5 && (m - m.round()).abs() < 1e-9
            }
        }
    }
}
