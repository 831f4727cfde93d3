//! Minimal safe wrappers around the four LAPACK routines this crate uses.
//!
//! `lapack-sys` only declares the symbols; build.rs links the system
//! OpenBLAS. Band matrices are assembled directly in Fortran column-major
//! layouts, so they cross the FFI boundary untouched. The dense path hands
//! LAPACK a row-major buffer, which Fortran reads as the transpose — for a
//! Hermitian matrix that is the elementwise conjugate, so the eigenvalues
//! come back exact and the eigenvectors need one conjugation.

use crate::{Error, Result, C64};
use std::os::raw::{c_char, c_int};

fn check(routine: &'static str, info: c_int) -> Result<()> {
    if info == 0 {
        Ok(())
    } else {
        Err(Error::Lapack { routine, info })
    }
}

/// Full eigendecomposition of a Hermitian matrix stored row-major in `a`
/// (zheev). Eigenvalues return ascending; with `want_vectors`, row `i` of `a`
/// is overwritten with the i-th orthonormal eigenvector.
pub(crate) fn eig_dense(a: &mut [C64], n: usize, want_vectors: bool) -> Result<Vec<f64>> {
    assert_eq!(a.len(), n * n);
    let jobz = if want_vectors { b'V' } else { b'N' } as c_char;
    let uplo = b'L' as c_char;
    let ni = n as c_int;
    let mut w = vec![0.0f64; n];
    let mut rwork = vec![0.0f64; (3 * n).max(1)];
    let mut info: c_int = 0;

    let mut size_probe = C64::new(0.0, 0.0);
    unsafe {
        lapack_sys::zheev_(
            &jobz,
            &uplo,
            &ni,
            a.as_mut_ptr().cast(),
            &ni,
            w.as_mut_ptr(),
            (&mut size_probe as *mut C64).cast(),
            &(-1 as c_int),
            rwork.as_mut_ptr(),
            &mut info,
        );
    }
    check("zheev", info)?;
    let lwork = (size_probe.re as c_int).max(2 * ni - 1).max(1);
    let mut work = vec![C64::new(0.0, 0.0); lwork as usize];
    unsafe {
        lapack_sys::zheev_(
            &jobz,
            &uplo,
            &ni,
            a.as_mut_ptr().cast(),
            &ni,
            w.as_mut_ptr(),
            work.as_mut_ptr().cast(),
            &lwork,
            rwork.as_mut_ptr(),
            &mut info,
        );
    }
    check("zheev", info)?;
    if want_vectors {
        // LAPACK diagonalized the conjugate matrix; conjugating its
        // eigenvectors yields ours. Its column i is our row i already.
        for v in a.iter_mut() {
            *v = v.conj();
        }
    }
    Ok(w)
}

/// All eigenvalues (ascending) of a Hermitian band matrix (zhbev, values
/// only). `ab` is the lower band: column j holds H[j..=j+kd][j] contiguously,
/// i.e. H[r][c] sits at `ab[(r - c) + c*(kd + 1)]`. Destroyed on return.
pub(crate) fn eigvals_banded(ab: &mut [C64], n: usize, kd: usize) -> Result<Vec<f64>> {
    assert_eq!(ab.len(), (kd + 1) * n);
    let jobz = b'N' as c_char;
    let uplo = b'L' as c_char;
    let ni = n as c_int;
    let kdi = kd as c_int;
    let ldab = (kd + 1) as c_int;
    let mut w = vec![0.0f64; n];
    let mut z = [C64::new(0.0, 0.0); 1];
    let ldz: c_int = 1;
    let mut work = vec![C64::new(0.0, 0.0); n.max(1)];
    let mut rwork = vec![0.0f64; (3 * n).max(1)];
    let mut info: c_int = 0;
    unsafe {
        lapack_sys::zhbev_(
            &jobz,
            &uplo,
            &ni,
            &kdi,
            ab.as_mut_ptr().cast(),
            &ldab,
            w.as_mut_ptr(),
            z.as_mut_ptr().cast(),
            &ldz,
            work.as_mut_ptr().cast(),
            rwork.as_mut_ptr(),
            &mut info,
        );
    }
    check("zhbev", info)?;
    Ok(w)
}

/// LU factorization of a general band matrix, for the shifted solves inside
/// inverse iteration. Storage is the zgbtrf convention: ldab = 2kl + ku + 1,
/// entry (i, j) at `ab[kl + ku + i - j + j*ldab]`, top kl rows fill-in space.
pub(crate) struct BandLu {
    ab: Vec<C64>,
    ipiv: Vec<c_int>,
    n: usize,
    kl: usize,
    ku: usize,
}

impl BandLu {
    pub(crate) fn factor(mut ab: Vec<C64>, n: usize, kl: usize, ku: usize) -> Result<Self> {
        let ldab = (2 * kl + ku + 1) as c_int;
        assert_eq!(ab.len(), (2 * kl + ku + 1) * n);
        let mut ipiv = vec![0 as c_int; n];
        let mut info: c_int = 0;
        unsafe {
            lapack_sys::zgbtrf_(
                &(n as c_int),
                &(n as c_int),
                &(kl as c_int),
                &(ku as c_int),
                ab.as_mut_ptr().cast(),
                &ldab,
                ipiv.as_mut_ptr(),
                &mut info,
            );
        }
        check("zgbtrf", info)?;
        Ok(BandLu { ab, ipiv, n, kl, ku })
    }

    /// Solve A x = b in place.
    pub(crate) fn solve(&self, b: &mut [C64]) -> Result<()> {
        assert_eq!(b.len(), self.n);
        let trans = b'N' as c_char;
        let ldab = (2 * self.kl + self.ku + 1) as c_int;
        let nrhs: c_int = 1;
        let ldb = self.n as c_int;
        let mut info: c_int = 0;
        unsafe {
            lapack_sys::zgbtrs_(
                &trans,
                &(self.n as c_int),
                &(self.kl as c_int),
                &(self.ku as c_int),
                &nrhs,
                self.ab.as_ptr().cast(),
                &ldab,
                self.ipiv.as_ptr(),
                b.as_mut_ptr().cast(),
                &ldb,
                &mut info,
            );
        }
        check("zgbtrs", info)
    }
}
