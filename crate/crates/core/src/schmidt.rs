//! Schmidt analysis of bipartite pure states and the exact PPT threshold
//! along the pencil toward the maximally mixed state.

use crate::eig::hermitian_eigen;
use crate::error::{Error, Result};
use crate::mat::{partial_transpose, ComplexMatrix, Side};
use crate::scalar::{czero, r, Real, C};
use crate::state::PureState;

/// Schmidt form of a pure state: descending coefficients plus the two local
/// orthonormal bases (columns of `basis_a` / `basis_b`), so that
/// `psi = sum_k lambda_k a_k (x) b_k`.
#[derive(Debug, Clone)]
pub struct SchmidtDecomposition<T: Real> {
    n: usize,
    lambdas: Vec<T>,
    basis_a: ComplexMatrix<T>,
    basis_b: ComplexMatrix<T>,
}

impl<T: Real> SchmidtDecomposition<T> {
    /// Validate and assemble from parts: coefficients must be nonnegative,
    /// descending, with unit square sum; bases must be unitary within `tol`.
    pub fn from_parts(
        lambdas: Vec<T>,
        basis_a: ComplexMatrix<T>,
        basis_b: ComplexMatrix<T>,
        tol: T,
    ) -> Result<Self> {
        let n = lambdas.len();
        if n == 0 || basis_a.dim() != n || basis_b.dim() != n {
            return Err(Error::DimMismatch(n, basis_a.dim()));
        }
        let mut sq = T::zero();
        for k in 0..n {
            if lambdas[k] < T::zero() {
                return Err(Error::BadCoordinates(format!(
                    "Schmidt coefficient {k} is negative"
                )));
            }
            if k + 1 < n && lambdas[k + 1] > lambdas[k] {
                return Err(Error::BadCoordinates(format!(
                    "Schmidt coefficients not descending at {k}"
                )));
            }
            sq += lambdas[k] * lambdas[k];
        }
        if (sq - T::one()).abs() > tol {
            return Err(Error::NotNormalized(sq.to_f64().unwrap_or(f64::NAN)));
        }
        for basis in [&basis_a, &basis_b] {
            let gram = basis.dagger().matmul(basis)?;
            let defect = gram.max_abs_diff(&ComplexMatrix::identity(n))?;
            if defect > tol {
                return Err(Error::Internal(format!(
                    "Schmidt basis not unitary: defect {:?}",
                    defect.to_f64()
                )));
            }
        }
        Ok(Self {
            n,
            lambdas,
            basis_a,
            basis_b,
        })
    }

    /// Coefficients only, with identity local bases. Handy for driving the
    /// constructions directly from a spectrum.
    pub fn from_lambdas(lambdas: Vec<T>, tol: T) -> Result<Self> {
        let n = lambdas.len();
        Self::from_parts(
            lambdas,
            ComplexMatrix::identity(n),
            ComplexMatrix::identity(n),
            tol,
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambdas(&self) -> &[T] {
        &self.lambdas
    }

    pub fn basis_a(&self) -> &ComplexMatrix<T> {
        &self.basis_a
    }

    pub fn basis_b(&self) -> &ComplexMatrix<T> {
        &self.basis_b
    }

    /// `sum_k lambda_k a_k (x) b_k` as a composite amplitude vector.
    pub fn reconstruct(&self) -> Vec<C<T>> {
        let n = self.n;
        let mut out = vec![czero(); n * n];
        for k in 0..n {
            let w = self.lambdas[k];
            if w.is_zero() {
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    out[i * n + j] += (self.basis_a[(i, k)] * self.basis_b[(j, k)]).scale(w);
                }
            }
        }
        out
    }
}

/// Singular value, right vector, and image column of one Schmidt direction.
type SingularColumn<T> = (T, Vec<C<T>>, Vec<C<T>>);

/// Modified Gram-Schmidt of `w` against the accepted columns, two passes.
fn orthogonalize<T: Real>(w: &mut [C<T>], accepted: &[Vec<C<T>>]) {
    for _ in 0..2 {
        for u in accepted {
            let mut ip = czero();
            for (ui, wi) in u.iter().zip(w.iter()) {
                ip += ui.conj() * *wi;
            }
            for (ui, wi) in u.iter().zip(w.iter_mut()) {
                *wi -= *ui * ip;
            }
        }
    }
}

fn vec_norm<T: Real>(v: &[C<T>]) -> T {
    v.iter()
        .map(|x| x.norm_sqr())
        .fold(T::zero(), |a, b| a + b)
        .sqrt()
}

/// Schmidt decomposition via the coefficient matrix `C[i][j] = psi[i*n+j]`:
/// eigendecomposition of `C^dagger C` supplies the right basis, images under
/// `C` the left one. Singular values are re-measured as `|C v_k|` to dodge
/// the accuracy loss of the squared spectrum near zero.
pub fn schmidt_decompose<T: Real>(psi: &PureState<T>, tol: T) -> Result<SchmidtDecomposition<T>> {
    let n = psi.n();
    let amps = psi.amplitudes();
    let cmat = ComplexMatrix::from_fn(n, |i, j| amps[i * n + j]);
    let gram = cmat.dagger().matmul(&cmat)?;
    let (_, vecs) = hermitian_eigen(&gram, tol)?;

    // Descending by |C v_k|.
    let mut cols: Vec<SingularColumn<T>> = (0..n)
        .map(|k| {
            let v: Vec<C<T>> = (0..n).map(|i| vecs[(i, k)]).collect();
            let image = cmat.matvec(&v).expect("dims agree");
            (vec_norm(&image), v, image)
        })
        .collect();
    cols.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("finite singular values"));

    let cutoff = T::epsilon() * r::<T>((16 * n) as f64);
    let mut lambdas = Vec::with_capacity(n);
    let mut a_cols: Vec<Vec<C<T>>> = Vec::with_capacity(n);
    let mut b_cols: Vec<Vec<C<T>>> = Vec::with_capacity(n);
    let mut pending: Vec<usize> = Vec::new();

    for (k, (sigma, v, image)) in cols.into_iter().enumerate() {
        lambdas.push(sigma);
        b_cols.push(v.iter().map(|x| x.conj()).collect());
        if sigma > cutoff {
            let mut u: Vec<C<T>> = image.iter().map(|x| x.unscale(sigma)).collect();
            orthogonalize(&mut u, &a_cols);
            let norm = vec_norm(&u);
            if norm > r(0.5) {
                for x in &mut u {
                    *x = x.unscale(norm);
                }
                a_cols.push(u);
                continue;
            }
        }
        // Defective or zero direction: fill in later from the standard basis.
        lambdas[k] = T::zero();
        a_cols.push(Vec::new());
        pending.push(k);
    }

    for k in pending {
        let mut filled = false;
        for i in 0..n {
            let mut w = vec![czero(); n];
            w[i] = C::new(T::one(), T::zero());
            let occupied: Vec<Vec<C<T>>> =
                a_cols.iter().filter(|c| !c.is_empty()).cloned().collect();
            orthogonalize(&mut w, &occupied);
            let norm = vec_norm(&w);
            if norm > r(0.5) {
                for x in &mut w {
                    *x = x.unscale(norm);
                }
                a_cols[k] = w;
                filled = true;
                break;
            }
        }
        if !filled {
            return Err(Error::Internal("could not complete Schmidt basis".into()));
        }
    }

    // Deterministic phases: largest-magnitude entry of each a-column made
    // real positive, with the counter-phase pushed onto the b-column so the
    // product a_k (x) b_k is untouched.
    for k in 0..n {
        let a = &mut a_cols[k];
        let mut best = 0usize;
        for i in 1..n {
            if a[i].norm() > a[best].norm() {
                best = i;
            }
        }
        let mag = a[best].norm();
        if mag > T::zero() {
            let phase = a[best].unscale(mag);
            let inv = phase.conj();
            for x in a.iter_mut() {
                *x *= inv;
            }
            for x in b_cols[k].iter_mut() {
                *x *= phase;
            }
        }
    }

    // Renormalize the coefficient vector; the raw norms carry eigensolver
    // rounding at the 1e-15 level.
    let sq: T = lambdas.iter().map(|&l| l * l).fold(T::zero(), |a, b| a + b);
    let scale = sq.sqrt();
    if (scale - T::one()).abs() > tol {
        return Err(Error::NotNormalized(scale.to_f64().unwrap_or(f64::NAN)));
    }
    for l in &mut lambdas {
        *l /= scale;
    }

    let basis_a = ComplexMatrix::from_fn(n, |i, k| a_cols[k][i]);
    let basis_b = ComplexMatrix::from_fn(n, |i, k| b_cols[k][i]);
    SchmidtDecomposition::from_parts(lambdas, basis_a, basis_b, tol)
}

/// `M = lambda_1 * lambda_2` (the two largest coefficients) and the PPT
/// threshold `alpha_M = 1 / (1 + n^2 M)` of the pencil.
///
/// The maximum of `lambda_k lambda_r` is taken over distinct pairs: the PT
/// eigenvalues that can go negative are `(1-alpha)/n^2 - alpha lambda_k
/// lambda_r` with `k != r`, and only this choice reproduces the maximally
/// entangled benchmark `1/(n+1)`. A product state gives `alpha_M = 1`.
pub fn ppt_threshold<T: Real>(sd: &SchmidtDecomposition<T>) -> (T, T) {
    let l = sd.lambdas();
    let m = if l.len() >= 2 { l[0] * l[1] } else { T::zero() };
    let n2 = r::<T>((sd.n() * sd.n()) as f64);
    (m, T::one() / (T::one() + n2 * m))
}

/// Result of the brute-force pencil scan.
#[derive(Debug, Clone, Copy)]
pub struct BoundaryScan<T> {
    /// Location of the PT sign change, or 1 when the whole pencil is PPT.
    pub alpha_star: T,
    /// Set when no sign change exists on `[0, 1]` (product-state case).
    pub fully_ppt: bool,
}

/// Bisection oracle for the PPT boundary on the pencil of `psi`.
///
/// Evaluates the minimum PT eigenvalue of `alpha P + (1-alpha) I/n^2` by
/// explicit eigensolves, checks monotonicity on a coarse grid, and bisects
/// the sign change with 60 fixed iterations.
pub fn ppt_boundary_scan<T: Real>(psi: &PureState<T>, tol: T) -> Result<BoundaryScan<T>> {
    let p = psi.density(tol)?;
    let n = psi.n();
    let d = n * n;
    let inv_d = T::one() / r::<T>(d as f64);

    let min_pt = |alpha: T| -> Result<T> {
        let mixed = ComplexMatrix::identity(d).scale_re((T::one() - alpha) * inv_d);
        let rho = p.matrix().scale_re(alpha).add(&mixed)?;
        let pt = partial_transpose(&rho, n, Side::Second)?;
        Ok(crate::eig::hermitian_spectrum(&pt, tol)?[0])
    };

    // The minimum PT eigenvalue is a minimum of linear functions of alpha;
    // it must be non-increasing along this pencil. Assert that on a grid.
    let grid = 8usize;
    let slack = r::<T>(64.0) * T::epsilon();
    let mut prev = T::infinity();
    let mut f_end = T::zero();
    for k in 0..=grid {
        let alpha = r::<T>(k as f64) / r::<T>(grid as f64);
        let f = min_pt(alpha)?;
        if f > prev + slack {
            return Err(Error::Internal(format!(
                "min PT eigenvalue not monotone on pencil grid at alpha={:?}",
                alpha.to_f64()
            )));
        }
        prev = f;
        if k == grid {
            f_end = f;
        }
    }

    if f_end >= -tol {
        return Ok(BoundaryScan {
            alpha_star: T::one(),
            fully_ppt: true,
        });
    }

    let mut lo = T::zero();
    let mut hi = T::one();
    let half = r::<T>(0.5);
    for _ in 0..60 {
        let mid = (lo + hi) * half;
        if min_pt(mid)? >= T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(BoundaryScan {
        alpha_star: (lo + hi) * half,
        fully_ppt: false,
    })
}
