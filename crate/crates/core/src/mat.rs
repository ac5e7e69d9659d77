//! Dense complex matrices and the tensor-product operations used everywhere
//! else in the crate.
//!
//! Composite indices follow the convention `i*n + j` for `|i> (x) |j>`, fixed
//! across all modules and file formats.

use crate::error::{Error, Result};
use crate::scalar::{czero, Real, C};

/// Which tensor factor a partial transpose acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    First,
    Second,
}

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone)]
pub struct ComplexMatrix<T: Real> {
    dim: usize,
    entries: Vec<C<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![czero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C::new(T::one(), T::zero());
        }
        m
    }

    /// Build from a row-major entry list; the length must be `dim * dim`.
    pub fn from_entries(dim: usize, entries: Vec<C<T>>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::WrongLength {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        Ok(Self { dim, entries })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C<T>) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Diagonal matrix from real entries.
    pub fn diag(d: &[T]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = C::new(x, T::zero());
        }
        m
    }

    /// Projector `|v><v|` (not normalized; scales with |v|^2).
    pub fn outer(v: &[C<T>]) -> Self {
        let mut m = Self::zeros(v.len());
        for i in 0..v.len() {
            for j in 0..v.len() {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[C<T>] {
        &self.entries
    }

    pub fn trace(&self) -> C<T> {
        (0..self.dim).fold(czero(), |acc, i| acc + self[(i, i)])
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(i, j)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: C<T>) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&e| e * s).collect(),
        }
    }

    pub fn scale_re(&self, s: T) -> Self {
        self.scale(C::new(s, T::zero()))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch(self.dim, other.dim));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| a + b)
            .collect();
        Ok(Self {
            dim: self.dim,
            entries,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch(self.dim, other.dim));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| a - b)
            .collect();
        Ok(Self {
            dim: self.dim,
            entries,
        })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch(self.dim, other.dim));
        }
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self[(i, k)];
                if a.re.is_zero() && a.im.is_zero() {
                    continue;
                }
                for j in 0..d {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn matvec(&self, v: &[C<T>]) -> Result<Vec<C<T>>> {
        if v.len() != self.dim {
            return Err(Error::DimMismatch(self.dim, v.len()));
        }
        let mut out = vec![czero(); self.dim];
        for i in 0..self.dim {
            let mut acc = czero();
            for j in 0..self.dim {
                acc += self[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        Ok(out)
    }

    pub fn frobenius_norm(&self) -> T {
        self.entries
            .iter()
            .map(|e| e.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt()
    }

    /// Largest entrywise absolute difference against `other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch(self.dim, other.dim));
        }
        let mut m = T::zero();
        for (a, b) in self.entries.iter().zip(&other.entries) {
            let d = (*a - *b).norm();
            if d > m {
                m = d;
            }
        }
        Ok(m)
    }

    /// Entrywise equality within an explicit absolute tolerance.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        matches!(self.max_abs_diff(other), Ok(d) if d <= tol)
    }

    /// Deviation from Hermitian symmetry: max |a[i][j] - conj(a[j][i])|.
    pub fn hermiticity_defect(&self) -> T {
        let mut m = T::zero();
        for i in 0..self.dim {
            for j in i..self.dim {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm();
                if d > m {
                    m = d;
                }
            }
        }
        m
    }
}

impl<T: Real> std::ops::Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = C<T>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C<T> {
        &self.entries[i * self.dim + j]
    }
}

impl<T: Real> std::ops::IndexMut<(usize, usize)> for ComplexMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<T> {
        let d = self.dim;
        &mut self.entries[i * d + j]
    }
}

/// Kronecker product; block `(i, m)` of the result equals `a[i][m] * b`.
pub fn kron<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let (da, db) = (a.dim(), b.dim());
    let mut out = ComplexMatrix::zeros(da * db);
    for i in 0..da {
        for m in 0..da {
            let f = a[(i, m)];
            if f.re.is_zero() && f.im.is_zero() {
                continue;
            }
            for j in 0..db {
                for k in 0..db {
                    out[(i * db + j, m * db + k)] = f * b[(j, k)];
                }
            }
        }
    }
    out
}

/// Tensor product of two vectors under the `i*n + j` convention.
pub fn kron_vec<T: Real>(a: &[C<T>], b: &[C<T>]) -> Vec<C<T>> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(x * y);
        }
    }
    out
}

/// Partial transpose over one tensor factor of `C^n (x) C^n`.
///
/// For `side = Second`: `<ij| out |kl> = <il| rho |kj>`; for `side = First`:
/// `<ij| out |kl> = <kj| rho |il>`. Errors when `dim != n^2`.
pub fn partial_transpose<T: Real>(
    rho: &ComplexMatrix<T>,
    n: usize,
    side: Side,
) -> Result<ComplexMatrix<T>> {
    if n == 0 || rho.dim() != n * n {
        return Err(Error::DimNotSquareOfLocal { dim: rho.dim(), n });
    }
    let mut out = ComplexMatrix::zeros(n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let src = match side {
                        Side::Second => (i * n + l, k * n + j),
                        Side::First => (k * n + j, i * n + l),
                    };
                    out[(i * n + j, k * n + l)] = rho[src];
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cre;

    fn c64(re: f64, im: f64) -> C<f64> {
        C::new(re, im)
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = ComplexMatrix::<f64>::identity(2);
        let out = kron(&i2, &i2);
        assert!(out.approx_eq(&ComplexMatrix::identity(4), 0.0));
    }

    #[test]
    fn kron_of_basis_projectors() {
        let p0 = ComplexMatrix::<f64>::diag(&[1.0, 0.0]);
        let out = kron(&p0, &p0);
        assert!(out.approx_eq(&ComplexMatrix::diag(&[1.0, 0.0, 0.0, 0.0]), 0.0));
    }

    #[test]
    fn kron_index_convention() {
        // |0><0| (x) |1><1| must sit at composite index 0*2 + 1 = 1.
        let p0 = ComplexMatrix::<f64>::diag(&[1.0, 0.0]);
        let p1 = ComplexMatrix::<f64>::diag(&[0.0, 1.0]);
        let out = kron(&p0, &p1);
        for i in 0..4 {
            for j in 0..4 {
                let want = if (i, j) == (1, 1) { 1.0 } else { 0.0 };
                assert_eq!(out[(i, j)], c64(want, 0.0));
            }
        }
    }

    #[test]
    fn partial_transpose_fixes_diagonal_matrices() {
        let d = ComplexMatrix::<f64>::diag(&[0.1, 0.2, 0.3, 0.4]);
        let pt = partial_transpose(&d, 2, Side::Second).unwrap();
        assert!(pt.approx_eq(&d, 0.0));
    }

    #[test]
    fn partial_transpose_rejects_non_square_dim() {
        let m = ComplexMatrix::<f64>::zeros(3);
        assert!(matches!(
            partial_transpose(&m, 2, Side::Second),
            Err(Error::DimNotSquareOfLocal { dim: 3, n: 2 })
        ));
    }

    #[test]
    fn first_and_second_side_transposes_compose_to_full_transpose() {
        let m = ComplexMatrix::from_fn(4, |i, j| c64((i * 4 + j) as f64, (i as f64) - (j as f64)));
        let both = partial_transpose(
            &partial_transpose(&m, 2, Side::First).unwrap(),
            2,
            Side::Second,
        )
        .unwrap();
        assert!(both.approx_eq(&m.transpose(), 0.0));
    }

    #[test]
    fn matvec_matches_matmul_column() {
        let m = ComplexMatrix::from_fn(3, |i, j| c64(i as f64 + 1.0, j as f64));
        let v = vec![c64(1.0, 0.0), c64(0.0, 1.0), c64(-1.0, 0.5)];
        let mv = m.matvec(&v).unwrap();
        for i in 0..3 {
            let mut acc = cre(0.0);
            for j in 0..3 {
                acc += m[(i, j)] * v[j];
            }
            assert_eq!(mv[i], acc);
        }
    }

    #[test]
    fn f32_instantiation_works() {
        let i2 = ComplexMatrix::<f32>::identity(2);
        let out = kron(&i2, &i2);
        assert!(out.approx_eq(&ComplexMatrix::identity(4), 0.0));
        assert_eq!(out.trace(), C::new(4.0f32, 0.0));
    }
}
