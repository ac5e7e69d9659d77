//! Density matrices and pure states on `C^n (x) C^n`, plus the pencil
//! `rho(alpha) = alpha P + (1 - alpha) I/n^2` joining a pure projector to the
//! maximally mixed state.

use crate::eig::hermitian_spectrum;
use crate::error::{Error, Result};
use crate::mat::{partial_transpose, ComplexMatrix, Side};
use crate::scalar::{r, Real, C};

/// Validated bipartite density matrix: Hermitian, PSD, unit trace, with
/// matrix dimension `n^2` for local dimension `n`.
#[derive(Debug, Clone)]
pub struct DensityMatrix<T: Real> {
    n: usize,
    mat: ComplexMatrix<T>,
}

impl<T: Real> DensityMatrix<T> {
    /// Validate all three density-matrix invariants at `tol` and wrap.
    pub fn new(mat: ComplexMatrix<T>, n: usize, tol: T) -> Result<Self> {
        validate_density(mat, n, tol)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.mat
    }

    /// Maximally mixed state `I/n^2`.
    pub fn maximally_mixed(n: usize) -> Self {
        let d = n * n;
        let mat = ComplexMatrix::identity(d).scale_re(T::one() / r::<T>(d as f64));
        Self { n, mat }
    }

    /// Partial transpose of the underlying matrix.
    pub fn partial_transpose(&self, side: Side) -> ComplexMatrix<T> {
        partial_transpose(&self.mat, self.n, side).expect("dimension validated at construction")
    }
}

/// Check the density-matrix invariants and construct a [`DensityMatrix`].
///
/// Each failure names the violated invariant and its magnitude: wrong
/// dimension, non-Hermitian, trace away from 1, or a negative eigenvalue
/// below `-tol`.
pub fn validate_density<T: Real>(
    mat: ComplexMatrix<T>,
    n: usize,
    tol: T,
) -> Result<DensityMatrix<T>> {
    if n == 0 || mat.dim() != n * n {
        return Err(Error::DimNotSquareOfLocal { dim: mat.dim(), n });
    }
    let defect = mat.hermiticity_defect();
    if defect > tol {
        return Err(Error::NotHermitian(defect.to_f64().unwrap_or(f64::NAN)));
    }
    let tr = mat.trace();
    let tr_err = (tr - C::new(T::one(), T::zero())).norm();
    if tr_err > tol {
        return Err(Error::BadTrace(tr.re.to_f64().unwrap_or(f64::NAN)));
    }
    let spectrum = hermitian_spectrum(&mat, tol)?;
    let min = spectrum[0];
    if min < -tol {
        return Err(Error::NotPsd(min.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(DensityMatrix { n, mat })
}

/// Normalized pure state on `C^n (x) C^n`; amplitude `i*n + j` belongs to
/// `|i> (x) |j>`.
#[derive(Debug, Clone)]
pub struct PureState<T: Real> {
    n: usize,
    amplitudes: Vec<C<T>>,
}

impl<T: Real> PureState<T> {
    pub fn new(n: usize, amplitudes: Vec<C<T>>, tol: T) -> Result<Self> {
        if n == 0 || amplitudes.len() != n * n {
            return Err(Error::WrongLength {
                expected: n * n,
                got: amplitudes.len(),
            });
        }
        let norm = amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .fold(T::zero(), |x, y| x + y)
            .sqrt();
        if (norm - T::one()).abs() > tol {
            return Err(Error::NotNormalized(norm.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(Self { n, amplitudes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[C<T>] {
        &self.amplitudes
    }

    /// Rank-1 projector `|psi><psi|`.
    pub fn projector(&self) -> ComplexMatrix<T> {
        ComplexMatrix::outer(&self.amplitudes)
    }

    /// Projector wrapped as a validated density matrix.
    pub fn density(&self, tol: T) -> Result<DensityMatrix<T>> {
        validate_density(self.projector(), self.n, tol)
    }

    /// The maximally entangled state `sum_i |ii> / sqrt(n)`.
    pub fn maximally_entangled(n: usize) -> Self {
        let mut amplitudes = vec![C::new(T::zero(), T::zero()); n * n];
        let w = T::one() / r::<T>(n as f64).sqrt();
        for i in 0..n {
            amplitudes[i * n + i] = C::new(w, T::zero());
        }
        Self { n, amplitudes }
    }

    /// Product basis state `|i> (x) |j>`.
    pub fn basis(n: usize, i: usize, j: usize) -> Self {
        let mut amplitudes = vec![C::new(T::zero(), T::zero()); n * n];
        amplitudes[i * n + j] = C::new(T::one(), T::zero());
        Self { n, amplitudes }
    }
}

/// `alpha P + (1 - alpha) I/n^2` for a rank-1 projector `P`.
///
/// Errors when `alpha` leaves `[0, 1]` or `p` is not rank-1 within `tol`
/// (second-largest eigenvalue above `tol`).
pub fn pencil_state<T: Real>(p: &DensityMatrix<T>, alpha: T, tol: T) -> Result<DensityMatrix<T>> {
    if alpha < T::zero() || alpha > T::one() {
        return Err(Error::AlphaOutOfRange(
            alpha.to_f64().unwrap_or(f64::NAN),
            "[0,1]",
        ));
    }
    let spec = hermitian_spectrum(p.matrix(), tol)?;
    let second = if spec.len() >= 2 {
        spec[spec.len() - 2]
    } else {
        T::zero()
    };
    if second > tol {
        return Err(Error::NotRankOne(second.to_f64().unwrap_or(f64::NAN)));
    }
    let d = p.dim();
    let mixed = ComplexMatrix::identity(d).scale_re((T::one() - alpha) / r::<T>(d as f64));
    let mat = p.matrix().scale_re(alpha).add(&mixed)?;
    validate_density(mat, p.n(), tol)
}

/// Minimum eigenvalue of the partial transpose, and whether it clears `-tol`.
///
/// The side defaults to the second factor throughout the crate; PT spectra of
/// Hermitian matrices are side-independent.
pub fn is_ppt<T: Real>(rho: &DensityMatrix<T>, tol: T) -> (bool, T) {
    let min = min_pt_eigenvalue(rho, tol);
    (min >= -tol, min)
}

/// Minimum eigenvalue of `rho^{T_B}`.
pub fn min_pt_eigenvalue<T: Real>(rho: &DensityMatrix<T>, tol: T) -> T {
    let pt = rho.partial_transpose(Side::Second);
    let spec = hermitian_spectrum(&pt, tol).expect("PT of a Hermitian matrix is Hermitian");
    spec[0]
}
