//! Hermitian eigensolver: cyclic Jacobi with complex plane rotations.
//!
//! Matrices in this crate top out around 16x16 (local dimension 4), so the
//! O(d^3)-per-sweep cost is irrelevant and the payoff is bit-stable spectra
//! with no external numeric dependencies. Each pivot applies the unitary
//!
//! ```text
//!   G[p][p] = c      G[p][q] = -s*u
//!   G[q][p] = s*ub   G[q][q] = c
//! ```
//!
//! where `u = h[p][q] / |h[p][q]|` carries the phase and `(c, s)` is the
//! classical symmetric-Jacobi rotation for the absolute-value 2x2 block.

use crate::error::{Error, Result};
use crate::mat::ComplexMatrix;
use crate::scalar::{r, Real, C};

const MAX_SWEEPS: usize = 64;

/// Off-diagonal Frobenius norm.
fn off_norm<T: Real>(h: &ComplexMatrix<T>) -> T {
    let d = h.dim();
    let mut acc = T::zero();
    for i in 0..d {
        for j in 0..d {
            if i != j {
                acc += h[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Full eigendecomposition of a Hermitian matrix.
///
/// Returns eigenvalues ascending and a unitary whose columns are the matching
/// eigenvectors. `tol` bounds the accepted deviation from Hermitian symmetry.
pub fn hermitian_eigen<T: Real>(
    h: &ComplexMatrix<T>,
    tol: T,
) -> Result<(Vec<T>, ComplexMatrix<T>)> {
    let d = h.dim();
    let defect = h.hermiticity_defect();
    if defect > tol {
        return Err(Error::NotHermitian(defect.to_f64().unwrap_or(f64::NAN)));
    }

    // Symmetrize so the sweep sees an exactly Hermitian matrix; exact
    // Hermitian inputs pass through bit-unchanged.
    let mut a = ComplexMatrix::from_fn(d, |i, j| (h[(i, j)] + h[(j, i)].conj()).scale(r::<T>(0.5)));
    let mut v = ComplexMatrix::<T>::identity(d);

    if d <= 1 {
        let vals = (0..d).map(|i| a[(i, i)].re).collect();
        return Ok((vals, v));
    }

    let scale = a.frobenius_norm();
    let factor = {
        let floor = T::epsilon() * r(32.0);
        let base: T = r(1e-14);
        if base > floor {
            base
        } else {
            floor
        }
    };
    let thresh = factor * scale;
    let skip = thresh / r::<T>((d * d) as f64);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_norm(&a) <= thresh {
            converged = true;
            break;
        }
        for p in 0..d - 1 {
            for q in p + 1..d {
                let apq = a[(p, q)];
                let beta = apq.norm();
                if beta <= skip {
                    continue;
                }
                let u = apq.unscale(beta);
                let theta = (a[(q, q)].re - a[(p, p)].re) / (beta + beta);
                // Smaller-magnitude root of t^2 - 2*theta*t - 1 = 0.
                let t = if theta.is_zero() {
                    T::one()
                } else {
                    let sign = if theta < T::zero() {
                        T::one()
                    } else {
                        -T::one()
                    };
                    sign / (theta.abs() + (T::one() + theta * theta).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;
                let su = u.scale(s);
                let sub = u.conj().scale(s);

                // H <- H G
                for k in 0..d {
                    let hkp = a[(k, p)];
                    let hkq = a[(k, q)];
                    a[(k, p)] = hkp.scale(c) + hkq * sub;
                    a[(k, q)] = hkq.scale(c) - hkp * su;
                }
                // H <- G^dagger H
                for k in 0..d {
                    let hpk = a[(p, k)];
                    let hqk = a[(q, k)];
                    a[(p, k)] = hpk.scale(c) + hqk * su;
                    a[(q, k)] = hqk.scale(c) - hpk * sub;
                }
                a[(p, q)] = C::new(T::zero(), T::zero());
                a[(q, p)] = C::new(T::zero(), T::zero());
                a[(p, p)] = C::new(a[(p, p)].re, T::zero());
                a[(q, q)] = C::new(a[(q, q)].re, T::zero());

                // V <- V G
                for k in 0..d {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp.scale(c) + vkq * sub;
                    v[(k, q)] = vkq.scale(c) - vkp * su;
                }
            }
        }
    }
    if !converged && off_norm(&a) > thresh {
        return Err(Error::Internal(format!(
            "Jacobi failed to converge in {MAX_SWEEPS} sweeps (off-norm {:?})",
            off_norm(&a).to_f64()
        )));
    }

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| {
        a[(i, i)]
            .re
            .partial_cmp(&a[(j, j)].re)
            .expect("finite eigenvalues")
    });
    let vals = order.iter().map(|&i| a[(i, i)].re).collect();
    let vecs = ComplexMatrix::from_fn(d, |i, j| v[(i, order[j])]);
    Ok((vals, vecs))
}

/// Eigenvalues only, ascending.
pub fn hermitian_spectrum<T: Real>(h: &ComplexMatrix<T>, tol: T) -> Result<Vec<T>> {
    hermitian_eigen(h, tol).map(|(vals, _)| vals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::default_tol;

    fn c64(re: f64, im: f64) -> C<f64> {
        C::new(re, im)
    }

    #[test]
    fn diagonal_matrix_spectrum_is_sorted_diagonal() {
        let m = ComplexMatrix::<f64>::diag(&[3.0, 1.0, 2.0]);
        let vals = hermitian_spectrum(&m, default_tol()).unwrap();
        assert_eq!(vals, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn identity_spectrum_is_all_ones() {
        let m = ComplexMatrix::<f64>::identity(5);
        let vals = hermitian_spectrum(&m, default_tol()).unwrap();
        assert_eq!(vals, vec![1.0; 5]);
    }

    #[test]
    fn pauli_x_spectrum() {
        let mut m = ComplexMatrix::<f64>::zeros(2);
        m[(0, 1)] = c64(1.0, 0.0);
        m[(1, 0)] = c64(1.0, 0.0);
        let vals = hermitian_spectrum(&m, default_tol()).unwrap();
        assert!((vals[0] + 1.0).abs() < 1e-14);
        assert!((vals[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn non_hermitian_input_is_rejected() {
        let mut m = ComplexMatrix::<f64>::zeros(2);
        m[(0, 1)] = c64(1.0, 0.0);
        assert!(matches!(
            hermitian_spectrum(&m, 1e-12),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn complex_hermitian_reconstructs_from_eigenpairs() {
        // H = V diag(vals) V^dagger must reproduce the input.
        let m = ComplexMatrix::from_entries(
            3,
            vec![
                c64(2.0, 0.0),
                c64(0.5, 1.0),
                c64(-0.25, 0.75),
                c64(0.5, -1.0),
                c64(-1.0, 0.0),
                c64(0.0, 0.5),
                c64(-0.25, -0.75),
                c64(0.0, -0.5),
                c64(0.5, 0.0),
            ],
        )
        .unwrap();
        let (vals, vecs) = hermitian_eigen(&m, default_tol()).unwrap();
        let lambda = ComplexMatrix::diag(&vals);
        let rebuilt = vecs
            .matmul(&lambda)
            .unwrap()
            .matmul(&vecs.dagger())
            .unwrap();
        assert!(rebuilt.approx_eq(&m, 1e-13));
        // Unitarity of the eigenvector matrix.
        let vv = vecs.dagger().matmul(&vecs).unwrap();
        assert!(vv.approx_eq(&ComplexMatrix::identity(3), 1e-13));
    }

    #[test]
    fn zero_matrix_is_fine() {
        let m = ComplexMatrix::<f64>::zeros(4);
        let vals = hermitian_spectrum(&m, default_tol()).unwrap();
        assert_eq!(vals, vec![0.0; 4]);
    }

    #[test]
    fn f32_spectrum_of_pauli_x() {
        let mut m = ComplexMatrix::<f32>::zeros(2);
        m[(0, 1)] = C::new(1.0f32, 0.0);
        m[(1, 0)] = C::new(1.0f32, 0.0);
        let vals = hermitian_spectrum(&m, default_tol()).unwrap();
        assert!((vals[0] + 1.0).abs() < 1e-6);
        assert!((vals[1] - 1.0).abs() < 1e-6);
    }
}
