//! Diagonal-unitary twirl of a product seed state.
//!
//! Twirling the projector onto `(sum_i s_i sqrt(l_i) |i>) (x) (sum_j sqrt(l_j)
//! |j>)` with a difference-distinct phase schedule kills every off-diagonal
//! entry except the `|ii><mm|` block and the `|ij><ij|` diagonal, which is
//! exactly the closed form `rho_p`. All of this lives in the Schmidt basis of
//! the entangled state whose coefficients `l` are used.

use crate::error::{Error, Result};
use crate::mat::{kron_vec, ComplexMatrix};
use crate::scalar::{czero, r, Real, C};
use crate::schmidt::SchmidtDecomposition;
use crate::sidon::TwirlSchedule;
use crate::state::{validate_density, DensityMatrix};

/// Unnormalized factor pair of a product seed.
pub type SeedPair<T> = (Vec<C<T>>, Vec<C<T>>);

/// Unnormalized seed factors in Schmidt coordinates: `a_i = s_i sqrt(l_i)`,
/// `b_j = sqrt(l_j)`. `signs` must hold +-1 entries, one per basis label;
/// `None` means all plus.
pub fn seed_vectors<T: Real>(
    sd: &SchmidtDecomposition<T>,
    signs: Option<&[i8]>,
) -> Result<SeedPair<T>> {
    let n = sd.n();
    if let Some(s) = signs {
        if s.len() != n {
            return Err(Error::WrongLength {
                expected: n,
                got: s.len(),
            });
        }
        if s.iter().any(|&x| x != 1 && x != -1) {
            return Err(Error::BadCoordinates("seed signs must be +-1".into()));
        }
    }
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for (i, &l) in sd.lambdas().iter().enumerate() {
        let root = l.sqrt();
        let sign = match signs {
            Some(s) if s[i] == -1 => -T::one(),
            _ => T::one(),
        };
        a.push(C::new(sign * root, T::zero()));
        b.push(C::new(root, T::zero()));
    }
    Ok((a, b))
}

/// Projector onto the (unnormalized) product seed; entries are
/// `s_i s_m sqrt(l_i l_k l_m l_n)` and the trace is `(sum_k l_k)^2`.
pub fn product_seed_projector<T: Real>(
    sd: &SchmidtDecomposition<T>,
    signs: Option<&[i8]>,
) -> Result<ComplexMatrix<T>> {
    let (a, b) = seed_vectors(sd, signs)?;
    Ok(ComplexMatrix::outer(&kron_vec(&a, &b)))
}

/// Average of `seed` conjugated by `(U_1 (x) U_2)^t` for `t = 0..N-1`, with
/// `U_1 = diag(exp(i e_j phi))` and `U_2 = conj(U_1)`; computed by the
/// explicit N-term sum in ascending `t` order.
pub fn twirl_average<T: Real>(
    seed: &ComplexMatrix<T>,
    sched: &TwirlSchedule<T>,
) -> Result<ComplexMatrix<T>> {
    let n = sched.n();
    let d = n * n;
    if seed.dim() != d {
        return Err(Error::DimNotSquareOfLocal { dim: seed.dim(), n });
    }
    let phi = sched.phi();
    let e = sched.exponents();
    let big_n = sched.modulus();

    let mut acc = ComplexMatrix::<T>::zeros(d);
    for t in 0..big_n {
        // Composite diagonal phase of (U_1 (x) U_2)^t at |i>(x)|j>.
        let mut diag = vec![czero::<T>(); d];
        for i in 0..n {
            for j in 0..n {
                let signed = e[i] as i64 - e[j] as i64;
                let angle = r::<T>((t as i64 * signed) as f64) * phi;
                diag[i * n + j] = C::new(angle.cos(), angle.sin());
            }
        }
        for row in 0..d {
            for col in 0..d {
                acc[(row, col)] += diag[row] * seed[(row, col)] * diag[col].conj();
            }
        }
    }
    Ok(acc.scale_re(T::one() / r::<T>(big_n as f64)))
}

/// Closed form of the twirled product seed, normalized to unit trace:
/// `[sum_{i,m} l_i l_m |ii><mm| + sum_{i!=k} l_i l_k |ik><ik|] / (sum l)^2`
/// in the Schmidt basis.
pub fn rho_p_closed_form<T: Real>(
    sd: &SchmidtDecomposition<T>,
    tol: T,
) -> Result<DensityMatrix<T>> {
    let n = sd.n();
    let l = sd.lambdas();
    let sum: T = l.iter().copied().fold(T::zero(), |a, b| a + b);
    let norm = T::one() / (sum * sum);
    let mut m = ComplexMatrix::<T>::zeros(n * n);
    for i in 0..n {
        for k in 0..n {
            if i == k {
                continue;
            }
            m[(i * n + k, i * n + k)] = C::new(l[i] * l[k] * norm, T::zero());
        }
    }
    for i in 0..n {
        for k in 0..n {
            m[(i * n + i, k * n + k)] = C::new(l[i] * l[k] * norm, T::zero());
        }
    }
    validate_density(m, n, tol)
}
