//! Minimal 2×2 complex matrix algebra and the spin-½ operators.
//!
//! Everything per-site in this crate is 2×2 (one spinor block), so a tiny
//! fixed-size matrix type avoids heap traffic in the hot assembly loops and
//! keeps closed-form eigenproblems explicit.

use crate::{Error, Result, C64};
use std::ops::{Add, Mul, Sub};

/// A 2×2 complex matrix, stored row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2 {
    pub e: [[C64; 2]; 2],
}

impl Mat2 {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Mat2 { e: [[a, b], [c, d]] }
    }

    pub fn zero() -> Self {
        Mat2::from_real(0.0, 0.0, 0.0, 0.0)
    }

    pub fn identity() -> Self {
        Mat2::from_real(1.0, 0.0, 0.0, 1.0)
    }

    pub fn from_real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2::new(C64::new(a, 0.0), C64::new(b, 0.0), C64::new(c, 0.0), C64::new(d, 0.0))
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut out = *self;
        for row in &mut out.e {
            for v in row {
                *v *= s;
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        Mat2::new(
            self.e[0][0].conj(),
            self.e[1][0].conj(),
            self.e[0][1].conj(),
            self.e[1][1].conj(),
        )
    }

    pub fn trace(&self) -> C64 {
        self.e[0][0] + self.e[1][1]
    }

    pub fn det(&self) -> C64 {
        self.e[0][0] * self.e[1][1] - self.e[0][1] * self.e[1][0]
    }

    pub fn mul_vec(&self, v: [C64; 2]) -> [C64; 2] {
        [
            self.e[0][0] * v[0] + self.e[0][1] * v[1],
            self.e[1][0] * v[0] + self.e[1][1] * v[1],
        ]
    }

    pub fn max_abs(&self) -> f64 {
        self.e
            .iter()
            .flatten()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (self.e[0][0].im).abs() <= tol
            && (self.e[1][1].im).abs() <= tol
            && (self.e[0][1] - self.e[1][0].conj()).norm() <= tol
    }

    /// Eigenvalues of a Hermitian 2×2, ascending. Uses the closed form
    /// tr/2 ± √((tr/2 − a)(tr/2 − d) inverted…), i.e. mean ± radius.
    pub fn eigvals_hermitian(&self) -> [f64; 2] {
        let mean = 0.5 * (self.e[0][0].re + self.e[1][1].re);
        let half_diff = 0.5 * (self.e[0][0].re - self.e[1][1].re);
        let radius = (half_diff * half_diff + self.e[0][1].norm_sqr()).sqrt();
        [mean - radius, mean + radius]
    }

    /// Eigenpairs of a general 2×2 matrix via the quadratic formula.
    /// Returned in no particular order; eigenvectors are unit norm.
    pub fn eig_general(&self) -> [(C64, [C64; 2]); 2] {
        let half_tr = 0.5 * self.trace();
        let disc = (half_tr * half_tr - self.det()).sqrt();
        let l1 = half_tr + disc;
        let l2 = half_tr - disc;
        [(l1, self.eigvec_for(l1)), (l2, self.eigvec_for(l2))]
    }

    fn eigvec_for(&self, lambda: C64) -> [C64; 2] {
        // (M − λ) v = 0: take the larger of the two row-derived candidates.
        let c1 = [self.e[0][1], lambda - self.e[0][0]];
        let c2 = [lambda - self.e[1][1], self.e[1][0]];
        let n1 = c1[0].norm_sqr() + c1[1].norm_sqr();
        let n2 = c2[0].norm_sqr() + c2[1].norm_sqr();
        let v = if n1 >= n2 { c1 } else { c2 };
        let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        [v[0] / norm, v[1] / norm]
    }

    /// Unit-norm null vector of a (numerically) singular matrix.
    /// Fails when the determinant is too large relative to the matrix scale
    /// for a null space to exist.
    pub fn null_vector(&self) -> Result<[C64; 2]> {
        let scale = self.max_abs().max(1.0);
        let det_mag = self.det().norm();
        if det_mag > 1e-10 * scale * scale {
            return Err(Error::Nonsingular { det_mag });
        }
        // Null vector of [[a,b],[c,d]] is (−b, a) or (−d, c); pick the one
        // built from the larger row so the zero matrix is the only bad case.
        let c1 = [-self.e[0][1], self.e[0][0]];
        let c2 = [-self.e[1][1], self.e[1][0]];
        let n1 = c1[0].norm_sqr() + c1[1].norm_sqr();
        let n2 = c2[0].norm_sqr() + c2[1].norm_sqr();
        let v = if n1 >= n2 { c1 } else { c2 };
        let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        if norm == 0.0 {
            // Zero matrix: any unit vector is a null vector.
            return Ok([C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
        }
        Ok([v[0] / norm, v[1] / norm])
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let mut out = self;
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] += rhs.e[i][j];
            }
        }
        out
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        let mut out = self;
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] -= rhs.e[i][j];
            }
        }
        out
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] =
                    self.e[i][0] * rhs.e[0][j] + self.e[i][1] * rhs.e[1][j];
            }
        }
        out
    }
}

/// The spin-½ operators (S_x, S_y, S_z) = (σ_x/2, σ_y/2, σ_z/2).
pub fn make_spin_operators() -> (Mat2, Mat2, Mat2) {
    let i = C64::new(0.0, 1.0);
    let half = C64::new(0.5, 0.0);
    let zero = C64::new(0.0, 0.0);
    let sx = Mat2::new(zero, half, half, zero);
    let sy = Mat2::new(zero, -i * half, i * half, zero);
    let sz = Mat2::new(half, zero, zero, -half);
    (sx, sy, sz)
}

/// v·S for a real 3-vector v: v_x S_x + v_y S_y + v_z S_z, written out.
pub fn dot_spin(v: [f64; 3]) -> Mat2 {
    Mat2::new(
        C64::new(0.5 * v[2], 0.0),
        C64::new(0.5 * v[0], -0.5 * v[1]),
        C64::new(0.5 * v[0], 0.5 * v[1]),
        C64::new(-0.5 * v[2], 0.0),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn commutator(a: Mat2, b: Mat2) -> Mat2 {
        a * b - b * a
    }

    #[test]
    fn spin_operators_satisfy_su2_algebra() {
        let (sx, sy, sz) = make_spin_operators();
        let i = C64::new(0.0, 1.0);
        // [S_a, S_b] = i ε_abc S_c for all cyclic pairs.
        let cases = [
            (sx, sy, sz),
            (sy, sz, sx),
            (sz, sx, sy),
        ];
        for (a, b, c) in cases {
            let lhs = commutator(a, b);
            let rhs = c.scale(i);
            assert!((lhs - rhs).max_abs() < 1e-15);
        }
        // Anticyclic pairs flip sign.
        let lhs = commutator(sy, sx);
        assert!((lhs + sz.scale(i)).max_abs() < 1e-15);
    }

    #[test]
    fn spin_operators_are_traceless_hermitian_with_half_eigenvalues() {
        let (sx, sy, sz) = make_spin_operators();
        for s in [sx, sy, sz] {
            assert!(s.is_hermitian(0.0));
            assert_eq!(s.trace(), C64::new(0.0, 0.0));
            let ev = s.eigvals_hermitian();
            assert!((ev[0] + 0.5).abs() < 1e-15);
            assert!((ev[1] - 0.5).abs() < 1e-15);
        }
        assert_eq!(sz.e[0][0], C64::new(0.5, 0.0));
        assert_eq!(sz.e[1][1], C64::new(-0.5, 0.0));
    }

    #[test]
    fn casimir_is_three_quarters() {
        let (sx, sy, sz) = make_spin_operators();
        let total = sx * sx + sy * sy + sz * sz;
        let expect = Mat2::identity().scale(C64::new(0.75, 0.0));
        assert!((total - expect).max_abs() < 1e-15);
    }

    #[test]
    fn dot_spin_matches_explicit_sum() {
        let (sx, sy, sz) = make_spin_operators();
        let v = [0.3, -1.7, 2.2];
        let explicit = sx.scale(C64::new(v[0], 0.0))
            + sy.scale(C64::new(v[1], 0.0))
            + sz.scale(C64::new(v[2], 0.0));
        assert!((dot_spin(v) - explicit).max_abs() < 1e-15);
    }

    #[test]
    fn hermitian_eigenvalues_of_reflection() {
        let m = Mat2::from_real(0.0, 1.0, 1.0, 0.0);
        let ev = m.eigvals_hermitian();
        assert!((ev[0] + 1.0).abs() < 1e-15 && (ev[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn general_eigenpairs_have_small_residual() {
        let m = Mat2::new(
            C64::new(0.0, -0.5),
            C64::new(0.0, -1.0),
            C64::new(0.0, 1.0),
            C64::new(0.0, 0.5),
        );
        for (lambda, v) in m.eig_general() {
            let mv = m.mul_vec(v);
            let res = ((mv[0] - lambda * v[0]).norm_sqr()
                + (mv[1] - lambda * v[1]).norm_sqr())
            .sqrt();
            assert!(res < 1e-14, "residual {res}");
        }
    }

    #[test]
    fn null_vector_of_singular_matrix() {
        // Rank-1 Hermitian projector-like matrix.
        let m = Mat2::from_real(1.0, 2.0, 2.0, 4.0);
        let v = m.null_vector().unwrap();
        let mv = m.mul_vec(v);
        assert!((mv[0].norm_sqr() + mv[1].norm_sqr()).sqrt() < 1e-14);
    }

    #[test]
    fn null_vector_rejects_nonsingular_matrix() {
        let m = Mat2::from_real(1.0, 0.0, 0.0, 1.0);
        assert!(matches!(m.null_vector(), Err(Error::Nonsingular { .. })));
    }
}
