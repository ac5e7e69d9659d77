//! Commutative simplices: `n^2` mutually orthogonal rank-1 projectors
//! resolving the identity, and barycentric coordinates of states that are
//! diagonal in that common basis.

use crate::eig::{hermitian_eigen, hermitian_spectrum};
use crate::error::{Error, Result};
use crate::mat::ComplexMatrix;
use crate::scalar::{czero, r, Real, C};
use crate::state::{validate_density, DensityMatrix, PureState};

/// Convex hull of an orthogonal ray resolution of the identity.
#[derive(Debug, Clone)]
pub struct Simplex<T: Real> {
    n: usize,
    projectors: Vec<DensityMatrix<T>>,
}

impl<T: Real> Simplex<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Ambient matrix dimension `n^2`, also the number of projectors.
    pub fn dim(&self) -> usize {
        self.n * self.n
    }

    pub fn projectors(&self) -> &[DensityMatrix<T>] {
        &self.projectors
    }

    /// Unit ray of projector `m` (its principal eigenvector).
    pub fn ray(&self, m: usize, tol: T) -> Result<PureState<T>> {
        let p = &self.projectors[m];
        let d = p.dim();
        let (_, vecs) = hermitian_eigen(p.matrix(), tol)?;
        let amps: Vec<C<T>> = (0..d).map(|i| vecs[(i, d - 1)]).collect();
        PureState::new(self.n, amps, tol)
    }

    /// `sum_m beta_m P_m` for barycentric coordinates `beta`.
    pub fn reconstruct(&self, beta: &[T], tol: T) -> Result<DensityMatrix<T>> {
        let d = self.dim();
        if beta.len() != d {
            return Err(Error::WrongLength {
                expected: d,
                got: beta.len(),
            });
        }
        let mut acc = ComplexMatrix::<T>::zeros(d);
        for (b, p) in beta.iter().zip(&self.projectors) {
            acc = acc.add(&p.matrix().scale_re(*b))?;
        }
        validate_density(acc, self.n, tol)
    }

    /// The product computational basis `{|i> (x) |j>}`.
    pub fn computational(n: usize, tol: T) -> Result<Self> {
        let mut ps = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                ps.push(PureState::basis(n, i, j).projector());
            }
        }
        simplex_from_projectors(ps, n, tol)
    }

    /// The maximally entangled (Weyl shift-and-phase) basis
    /// `|F_{s,t}> = n^{-1/2} sum_j w^{jt} |j> (x) |j+s mod n>` with
    /// `w = exp(2 pi i / n)`. For `n = 2` this is the Bell basis.
    pub fn bell(n: usize, tol: T) -> Result<Self> {
        let root = T::one() / r::<T>(n as f64).sqrt();
        let step = T::PI() * r::<T>(2.0) / r::<T>(n as f64);
        let mut ps = Vec::with_capacity(n * n);
        for s in 0..n {
            for t in 0..n {
                let mut amps = vec![czero::<T>(); n * n];
                for j in 0..n {
                    let angle = step * r::<T>((j * t) as f64);
                    amps[j * n + (j + s) % n] = C::new(angle.cos(), angle.sin()).scale(root);
                }
                ps.push(ComplexMatrix::outer(&amps));
            }
        }
        simplex_from_projectors(ps, n, tol)
    }
}

/// Validate a projector family as a commutative simplex: `n^2` rank-1
/// densities, pairwise orthogonal, resolving the identity.
///
/// A short family fails the completeness check; the count error is reserved
/// for families too large to be orthogonal in the first place.
pub fn simplex_from_projectors<T: Real>(
    ps: Vec<ComplexMatrix<T>>,
    n: usize,
    tol: T,
) -> Result<Simplex<T>> {
    let d = n * n;
    if ps.len() > d {
        return Err(Error::WrongProjectorCount {
            expected: d,
            got: ps.len(),
        });
    }
    for (m, a) in ps.iter().enumerate() {
        for (k, b) in ps.iter().enumerate().skip(m + 1) {
            let norm = a.matmul(b)?.frobenius_norm();
            if norm > tol {
                return Err(Error::NotOrthogonal {
                    m,
                    k,
                    norm: norm.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
    }
    let mut sum = ComplexMatrix::<T>::zeros(d);
    for p in &ps {
        sum = sum.add(p)?;
    }
    let defect = sum.sub(&ComplexMatrix::identity(d))?.frobenius_norm();
    if defect > tol {
        return Err(Error::Incomplete(defect.to_f64().unwrap_or(f64::NAN)));
    }
    if ps.len() != d {
        return Err(Error::WrongProjectorCount {
            expected: d,
            got: ps.len(),
        });
    }
    let mut projectors = Vec::with_capacity(d);
    for p in ps {
        let density = validate_density(p, n, tol)?;
        let spec = hermitian_spectrum(density.matrix(), tol)?;
        let second = if spec.len() >= 2 {
            spec[spec.len() - 2]
        } else {
            T::zero()
        };
        if second > tol {
            return Err(Error::NotRankOne(second.to_f64().unwrap_or(f64::NAN)));
        }
        projectors.push(density);
    }
    Ok(Simplex { n, projectors })
}

/// Barycentric coordinates `beta_m = tr(P_m rho)` of a state diagonal in the
/// simplex basis. Errors when `rho` fails to commute with some projector
/// within `tol` (naming the largest commutator norm).
pub fn barycentric<T: Real>(rho: &DensityMatrix<T>, s: &Simplex<T>, tol: T) -> Result<Vec<T>> {
    if rho.n() != s.n() {
        return Err(Error::DimMismatch(rho.n(), s.n()));
    }
    let mut max_comm = T::zero();
    for p in s.projectors() {
        let rp = rho.matrix().matmul(p.matrix())?;
        let pr = p.matrix().matmul(rho.matrix())?;
        let norm = rp.sub(&pr)?.frobenius_norm();
        if norm > max_comm {
            max_comm = norm;
        }
    }
    if max_comm > tol {
        return Err(Error::NotCommuting(max_comm.to_f64().unwrap_or(f64::NAN)));
    }
    let d = s.dim();
    let mut beta = Vec::with_capacity(d);
    for p in s.projectors() {
        // tr(P rho) = sum_ij P[i][j] rho[j][i]
        let mut acc = czero::<T>();
        for i in 0..d {
            for j in 0..d {
                acc += p.matrix()[(i, j)] * rho.matrix()[(j, i)];
            }
        }
        beta.push(acc.re);
    }
    let sum: T = beta.iter().copied().fold(T::zero(), |a, b| a + b);
    if (sum - T::one()).abs() > tol || beta.iter().any(|&b| b < -tol) {
        return Err(Error::BadCoordinates(format!(
            "coordinates sum to {:?} with min {:?}",
            sum.to_f64(),
            beta.iter()
                .cloned()
                .fold(f64::INFINITY, |a, b| a.min(b.to_f64().unwrap_or(f64::NAN)))
        )));
    }
    Ok(beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::pencil_state;

    const TOL: f64 = 1e-9;

    #[test]
    fn computational_basis_is_a_simplex() {
        for n in [2usize, 3] {
            let s = Simplex::<f64>::computational(n, TOL).unwrap();
            assert_eq!(s.projectors().len(), n * n);
        }
    }

    #[test]
    fn bell_basis_is_a_simplex_for_n_2_and_3() {
        for n in [2usize, 3] {
            let s = Simplex::<f64>::bell(n, TOL).unwrap();
            assert_eq!(s.projectors().len(), n * n);
            // Every ray is maximally entangled: uniform Schmidt spectrum.
            for m in 0..n * n {
                let psi = s.ray(m, TOL).unwrap();
                let sd = crate::schmidt::schmidt_decompose(&psi, TOL).unwrap();
                for l in sd.lambdas() {
                    assert!((l - 1.0 / (n as f64).sqrt()).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn missing_projector_is_incomplete() {
        let n = 2usize;
        let mut ps: Vec<ComplexMatrix<f64>> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                ps.push(PureState::<f64>::basis(n, i, j).projector());
            }
        }
        ps[3] = ps[2].clone();
        assert!(matches!(
            simplex_from_projectors(ps.clone(), n, TOL),
            Err(Error::NotOrthogonal { .. })
        ));

        let mut short = Vec::new();
        for i in 0..3 {
            short.push(PureState::<f64>::basis(n, i / n, i % n).projector());
        }
        assert!(matches!(
            simplex_from_projectors(short, n, TOL),
            Err(Error::Incomplete(_))
        ));

        let mut long = ps.clone();
        long.push(PureState::<f64>::basis(n, 0, 0).projector());
        long.push(PureState::<f64>::basis(n, 0, 1).projector());
        assert!(matches!(
            simplex_from_projectors(long, n, TOL),
            Err(Error::WrongProjectorCount {
                expected: 4,
                got: 6
            })
        ));
    }

    #[test]
    fn barycentric_of_center_and_vertex() {
        let s = Simplex::<f64>::bell(2, TOL).unwrap();
        let rho0 = DensityMatrix::maximally_mixed(2);
        let beta = barycentric(&rho0, &s, TOL).unwrap();
        for b in &beta {
            assert!((b - 0.25).abs() < 1e-13);
        }
        let p0 = s.projectors()[0].clone();
        let beta = barycentric(&p0, &s, TOL).unwrap();
        assert!((beta[0] - 1.0).abs() < 1e-12);
        for b in &beta[1..] {
            assert!(b.abs() < 1e-12);
        }
    }

    #[test]
    fn non_commuting_state_is_rejected() {
        let s = Simplex::<f64>::bell(2, TOL).unwrap();
        // A computational product projector does not commute with the Bell
        // projectors.
        let rho = PureState::<f64>::basis(2, 0, 0).density(TOL).unwrap();
        assert!(matches!(
            barycentric(&rho, &s, TOL),
            Err(Error::NotCommuting(_))
        ));
    }

    #[test]
    fn reconstruct_inverts_barycentric() {
        let s = Simplex::<f64>::bell(2, TOL).unwrap();
        let p0 = s.projectors()[0].clone();
        let rho = pencil_state(&p0, 0.3, TOL).unwrap();
        let beta = barycentric(&rho, &s, TOL).unwrap();
        let back = s.reconstruct(&beta, TOL).unwrap();
        assert!(back.matrix().approx_eq(rho.matrix(), 1e-12));
    }

    #[test]
    fn rays_regenerate_projectors() {
        let s = Simplex::<f64>::bell(3, TOL).unwrap();
        for m in 0..9 {
            let psi = s.ray(m, TOL).unwrap();
            assert!(psi.projector().approx_eq(s.projectors()[m].matrix(), 1e-12));
        }
    }
}
