//! The separable approximation set: for each simplex vertex `P_m`, the scaled
//! pencil point `alpha_m P_m + (1 - alpha_m) rho_0` and the opposite-face
//! barycenter `(I - P_m)/(n^2 - 1)`. Its convex hull, in barycentric
//! coordinates, is the object whose membership and volume the rest of the
//! geometry module measures.

use crate::error::{Error, Result};
use crate::lp::{convex_membership, rationalize, Feasibility};
use crate::scalar::{r, Real};
use crate::schmidt::{ppt_threshold, schmidt_decompose};
use crate::simplex::Simplex;
use crate::state::DensityMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// How the per-vertex pencil scales are chosen.
#[derive(Debug, Clone)]
pub enum AlphaSpec<T> {
    /// PPT threshold of each vertex ray, from its Schmidt spectrum.
    Auto,
    /// One value for every vertex.
    Uniform(T),
    /// Explicit per-vertex list.
    PerVertex(Vec<T>),
}

/// Arithmetic mode for hull membership.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MemberMode {
    Float,
    ExactRational,
}

/// Membership verdict plus its certificate.
#[derive(Debug, Clone)]
pub struct Membership<T> {
    pub inside: bool,
    pub certificate: Certificate<T>,
}

/// Hull weights when inside; a separating functional on the sum-augmented
/// coordinates when outside.
#[derive(Debug, Clone)]
pub enum Certificate<T> {
    Weights(Vec<T>),
    Separator(Vec<T>),
}

/// The `2 n^2` vertices of the approximation set over a simplex, stored as
/// barycentric coordinate vectors.
#[derive(Debug, Clone)]
pub struct ApproxSet<T: Real> {
    simplex: Simplex<T>,
    alphas: Vec<T>,
    vertices: Vec<Vec<T>>,
}

impl<T: Real> ApproxSet<T> {
    pub fn simplex(&self) -> &Simplex<T> {
        &self.simplex
    }

    pub fn n(&self) -> usize {
        self.simplex.n()
    }

    /// Coordinate dimension `n^2`.
    pub fn dim(&self) -> usize {
        self.simplex.dim()
    }

    pub fn alphas(&self) -> &[T] {
        &self.alphas
    }

    pub fn alpha_min(&self) -> T {
        self.alphas
            .iter()
            .copied()
            .fold(T::infinity(), |a, b| if b < a { b } else { a })
    }

    /// All `2 n^2` vertices; index `m < n^2` is the scaled pencil point of
    /// projector `m`, index `n^2 + m` the barycenter of the face opposite it.
    pub fn vertices(&self) -> &[Vec<T>] {
        &self.vertices
    }

    /// Reconstruct vertex `idx` as a density matrix.
    pub fn vertex_density(&self, idx: usize, tol: T) -> Result<DensityMatrix<T>> {
        self.simplex.reconstruct(&self.vertices[idx], tol)
    }
}

/// Build the approximation set; alphas must lie in `(0, 1]`.
pub fn approx_set<T: Real>(
    simplex: Simplex<T>,
    spec: AlphaSpec<T>,
    tol: T,
) -> Result<ApproxSet<T>> {
    let d = simplex.dim();
    let alphas: Vec<T> = match spec {
        AlphaSpec::Uniform(a) => vec![a; d],
        AlphaSpec::PerVertex(list) => {
            if list.len() != d {
                return Err(Error::WrongLength {
                    expected: d,
                    got: list.len(),
                });
            }
            list
        }
        AlphaSpec::Auto => {
            let mut out = Vec::with_capacity(d);
            for m in 0..d {
                let psi = simplex.ray(m, tol)?;
                let sd = schmidt_decompose(&psi, tol)?;
                out.push(ppt_threshold(&sd).1);
            }
            out
        }
    };
    for &a in &alphas {
        if a <= T::zero() || a > T::one() {
            return Err(Error::AlphaOutOfRange(
                a.to_f64().unwrap_or(f64::NAN),
                "(0,1]",
            ));
        }
    }

    let inv_d = T::one() / r::<T>(d as f64);
    let face = T::one() / r::<T>((d - 1) as f64);
    let mut vertices = Vec::with_capacity(2 * d);
    for m in 0..d {
        let a = alphas[m];
        let off = (T::one() - a) * inv_d;
        let mut v = vec![off; d];
        v[m] = a + off;
        vertices.push(v);
    }
    for m in 0..d {
        let mut v = vec![face; d];
        v[m] = T::zero();
        vertices.push(v);
    }

    // Every vertex is itself barycentric: nonnegative, summing to one.
    let gate = {
        let eps = T::epsilon() * r(64.0);
        if eps > r(1e-12) {
            eps
        } else {
            r(1e-12)
        }
    };
    for v in &vertices {
        let sum: T = v.iter().copied().fold(T::zero(), |x, y| x + y);
        if (sum - T::one()).abs() > gate || v.iter().any(|&x| x < T::zero()) {
            return Err(Error::Internal(
                "approximation-set vertex not barycentric".into(),
            ));
        }
    }

    Ok(ApproxSet {
        simplex,
        alphas,
        vertices,
    })
}

/// Decide whether barycentric `beta` lies in the hull of the set's vertices.
///
/// Float mode runs the phase-1 simplex on the working scalar at `tol`; exact
/// mode rationalizes all inputs at `1e-12` and decides with tolerance zero.
pub fn hull_membership<T: Real>(
    beta: &[T],
    aset: &ApproxSet<T>,
    mode: MemberMode,
    tol: T,
) -> Result<Membership<T>> {
    let d = aset.dim();
    if beta.len() != d {
        return Err(Error::WrongLength {
            expected: d,
            got: beta.len(),
        });
    }
    let sum: T = beta.iter().copied().fold(T::zero(), |a, b| a + b);
    if (sum - T::one()).abs() > tol || beta.iter().any(|&b| b < -tol) {
        return Err(Error::BadCoordinates(format!(
            "input is not barycentric: sum {:?}",
            sum.to_f64()
        )));
    }

    match mode {
        MemberMode::Float => match convex_membership(aset.vertices(), beta, &tol)? {
            Feasibility::Feasible { weights } => Ok(Membership {
                inside: true,
                certificate: Certificate::Weights(weights),
            }),
            Feasibility::Infeasible { farkas } => Ok(Membership {
                inside: false,
                certificate: Certificate::Separator(farkas),
            }),
        },
        MemberMode::ExactRational => {
            // Rationalize, then rescale to an exact unit sum: the hull lives
            // in the sum-one hyperplane, and exact arithmetic would otherwise
            // see the 1e-12 rounding slack as strict infeasibility.
            let to_q = |v: &[T]| -> Vec<BigRational> {
                let q: Vec<BigRational> = v
                    .iter()
                    .map(|&x| rationalize(x.to_f64().expect("finite"), 1e-12))
                    .collect();
                let sum: BigRational = q.iter().cloned().sum();
                q.into_iter().map(|x| x / sum.clone()).collect()
            };
            let vm: Vec<Vec<BigRational>> = aset.vertices().iter().map(|v| to_q(v)).collect();
            let bq: Vec<BigRational> = to_q(beta);
            let zero = BigRational::from_integer(BigInt::from(0));
            let back = |q: Vec<BigRational>| -> Vec<T> {
                q.into_iter()
                    .map(|x| r::<T>(x.to_f64().unwrap_or(f64::NAN)))
                    .collect()
            };
            match convex_membership(&vm, &bq, &zero)? {
                Feasibility::Feasible { weights } => Ok(Membership {
                    inside: true,
                    certificate: Certificate::Weights(back(weights)),
                }),
                Feasibility::Infeasible { farkas } => Ok(Membership {
                    inside: false,
                    certificate: Certificate::Separator(back(farkas)),
                }),
            }
        }
    }
}
