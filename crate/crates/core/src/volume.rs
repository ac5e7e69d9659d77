//! Volumes of the approximation set in the edge-sqrt(2) Euclidean embedding.
//!
//! Barycentric coordinate vectors are embedded as-is in `R^{n^2}`; the
//! Hilbert-Schmidt distance between commuting states is then the plain
//! Euclidean one and orthogonal pure states sit sqrt(2) apart. The set is
//! triangulated into one central simplex (the scaled pencil points) plus
//! `n^2` corner pyramids, each a `(n^2-1)`-simplex with a facet of the
//! central simplex as base and the opposite-face barycenter as apex, so every
//! piece volume is one Gram determinant. The closed-form lower bound is
//! evaluated in log space to survive the `(n^2-1)!` denominator.

use crate::approx_set::ApproxSet;
use crate::error::{Error, Result};
use crate::mc::McEstimate;
use crate::scalar::{r, Real};

/// Plain real matrix with just enough operations for the piece geometry.
#[derive(Debug, Clone)]
pub(crate) struct RealMat<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Real> RealMat<T> {
    pub(crate) fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![T::zero(); dim * dim],
        }
    }

    #[inline]
    pub(crate) fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, x: T) {
        self.data[i * self.dim + j] = x;
    }

    /// Gauss-Jordan inverse with partial pivoting; `None` when singular.
    pub(crate) fn inverse(&self) -> Option<Self> {
        let d = self.dim;
        let mut a = self.clone();
        let mut inv = Self::zeros(d);
        for i in 0..d {
            inv.set(i, i, T::one());
        }
        for col in 0..d {
            let mut pivot = col;
            for row in col + 1..d {
                if a.get(row, col).abs() > a.get(pivot, col).abs() {
                    pivot = row;
                }
            }
            let p = a.get(pivot, col);
            if p.abs() <= T::epsilon() * r(64.0) {
                return None;
            }
            if pivot != col {
                for j in 0..d {
                    let (x, y) = (a.get(col, j), a.get(pivot, j));
                    a.set(col, j, y);
                    a.set(pivot, j, x);
                    let (x, y) = (inv.get(col, j), inv.get(pivot, j));
                    inv.set(col, j, y);
                    inv.set(pivot, j, x);
                }
            }
            let p = a.get(col, col);
            for j in 0..d {
                a.set(col, j, a.get(col, j) / p);
                inv.set(col, j, inv.get(col, j) / p);
            }
            for row in 0..d {
                if row == col {
                    continue;
                }
                let f = a.get(row, col);
                if f.is_zero() {
                    continue;
                }
                for j in 0..d {
                    a.set(row, j, a.get(row, j) - f * a.get(col, j));
                    inv.set(row, j, inv.get(row, j) - f * inv.get(col, j));
                }
            }
        }
        Some(inv)
    }

    pub(crate) fn matvec(&self, v: &[T]) -> Vec<T> {
        let d = self.dim;
        (0..d)
            .map(|i| (0..d).fold(T::zero(), |acc, j| acc + self.get(i, j) * v[j]))
            .collect()
    }
}

/// Measure of the simplex spanned by `k+1` vertices in `R^dim`:
/// `sqrt(det(E^T E)) / k!` over the edge matrix from the first vertex,
/// evaluated by Cholesky. Degenerate simplices give 0.
pub fn gram_simplex_volume<T: Real>(vertices: &[Vec<T>]) -> T {
    let k = vertices.len() - 1;
    if k == 0 {
        return T::one();
    }
    let dim = vertices[0].len();
    let edges: Vec<Vec<T>> = vertices[1..]
        .iter()
        .map(|v| (0..dim).map(|c| v[c] - vertices[0][c]).collect())
        .collect();
    let mut g = RealMat::<T>::zeros(k);
    for i in 0..k {
        for j in i..k {
            let dot = (0..dim).fold(T::zero(), |acc, c| acc + edges[i][c] * edges[j][c]);
            g.set(i, j, dot);
            g.set(j, i, dot);
        }
    }
    // In-place Cholesky; the volume is the pivot product with the factorial
    // folded in as we go. Pivots below the Gram-entry rounding scale are
    // indistinguishable from flat.
    let scale = (0..k).fold(T::zero(), |acc, i| acc + g.get(i, i));
    let floor = T::epsilon() * scale * r(16.0);
    let mut vol = T::one();
    let mut l = RealMat::<T>::zeros(k);
    for i in 0..k {
        let mut diag = g.get(i, i);
        for j in 0..i {
            diag -= l.get(i, j) * l.get(i, j);
        }
        if diag <= floor {
            return T::zero();
        }
        let root = diag.sqrt();
        l.set(i, i, root);
        vol = vol * root / r::<T>((i + 1) as f64);
        for row in i + 1..k {
            let mut x = g.get(row, i);
            for j in 0..i {
                x -= l.get(row, j) * l.get(i, j);
            }
            l.set(row, i, x / root);
        }
    }
    vol
}

/// The triangulation of the approximation set at one uniform scale.
#[derive(Debug, Clone)]
pub struct Triangulation<T: Real> {
    n: usize,
    alpha: T,
    /// Vertex lists: index 0 the central simplex, then one pyramid per facet.
    pieces: Vec<Vec<Vec<T>>>,
    /// Barycentric solvers for the pyramids (`None` when degenerate).
    pyramid_inverses: Vec<Option<RealMat<T>>>,
    degenerate: bool,
}

impl<T: Real> Triangulation<T> {
    /// Build the central simplex and the `n^2` pyramids at uniform `alpha`.
    pub fn new(n: usize, alpha: T) -> Result<Self> {
        if alpha < T::zero() || alpha > T::one() {
            return Err(Error::AlphaOutOfRange(
                alpha.to_f64().unwrap_or(f64::NAN),
                "[0,1]",
            ));
        }
        let d = n * n;
        let inv_d = T::one() / r::<T>(d as f64);
        let face = T::one() / r::<T>((d - 1) as f64);
        let degenerate = alpha <= T::zero();

        let first: Vec<Vec<T>> = (0..d)
            .map(|m| {
                let off = (T::one() - alpha) * inv_d;
                let mut v = vec![off; d];
                v[m] = alpha + off;
                v
            })
            .collect();
        let apexes: Vec<Vec<T>> = (0..d)
            .map(|m| {
                let mut v = vec![face; d];
                v[m] = T::zero();
                v
            })
            .collect();

        let mut pieces = Vec::with_capacity(1 + d);
        pieces.push(first.clone());
        for (m, apex) in apexes.iter().enumerate() {
            let mut vs: Vec<Vec<T>> = (0..d)
                .filter(|&j| j != m)
                .map(|j| first[j].clone())
                .collect();
            vs.push(apex.clone());
            pieces.push(vs);
        }

        let mut pyramid_inverses = Vec::with_capacity(d);
        for m in 0..d {
            let mut mat = RealMat::<T>::zeros(d);
            for (col, v) in pieces[1 + m].iter().enumerate() {
                for (row, &coord) in v.iter().enumerate() {
                    // Last coordinate row is replaced by the weight-sum row.
                    let x = if row + 1 == d { T::one() } else { coord };
                    mat.set(row, col, x);
                }
            }
            pyramid_inverses.push(mat.inverse());
        }

        Ok(Self {
            n,
            alpha,
            pieces,
            pyramid_inverses,
            degenerate,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn piece_count(&self) -> usize {
        self.pieces.len()
    }

    /// Vertices of piece `idx` (0 = central simplex).
    pub fn piece_vertices(&self, idx: usize) -> &[Vec<T>] {
        &self.pieces[idx]
    }

    /// Barycentric membership test for a single piece.
    pub fn piece_contains(&self, idx: usize, beta: &[T]) -> bool {
        let gate = -r::<T>(1e-12);
        if idx == 0 {
            if self.alpha <= T::zero() {
                return false;
            }
            let d = self.n * self.n;
            let off = (T::one() - self.alpha) / r::<T>(d as f64);
            return beta.iter().all(|&b| (b - off) / self.alpha >= gate);
        }
        match &self.pyramid_inverses[idx - 1] {
            None => false,
            Some(inv) => {
                let d = self.n * self.n;
                let mut rhs: Vec<T> = beta.to_vec();
                rhs[d - 1] = T::one();
                inv.matvec(&rhs).iter().all(|&w| w >= gate)
            }
        }
    }

    /// Number of pieces containing the point.
    pub fn pieces_containing(&self, beta: &[T]) -> usize {
        (0..self.pieces.len())
            .filter(|&i| self.piece_contains(i, beta))
            .count()
    }

    /// Gram-determinant volume of every piece, central simplex first.
    pub fn piece_volumes(&self) -> Vec<T> {
        if self.degenerate {
            return vec![T::zero(); self.pieces.len()];
        }
        self.pieces
            .iter()
            .map(|vs| gram_simplex_volume(vs))
            .collect()
    }
}

/// Triangulation volume at uniform `alpha`: total, the per-piece list
/// (central first), and a degeneracy flag for `alpha = 0`.
#[derive(Debug, Clone)]
pub struct TriangulationVolume<T> {
    pub total: T,
    pub pieces: Vec<T>,
    pub degenerate: bool,
}

/// Volume of the triangulated set at uniform `alpha`.
pub fn triangulation_volume<T: Real>(n: usize, alpha: T) -> Result<TriangulationVolume<T>> {
    let tri = Triangulation::new(n, alpha)?;
    let pieces = tri.piece_volumes();
    let total = pieces.iter().copied().fold(T::zero(), |a, b| a + b);
    Ok(TriangulationVolume {
        total,
        pieces,
        degenerate: tri.degenerate,
    })
}

/// Volume of the set attached to `aset`; non-uniform alphas are floored to
/// their minimum first (the outer pyramids share the scaled central simplex).
pub fn set_volume_exact<T: Real>(aset: &ApproxSet<T>) -> Result<TriangulationVolume<T>> {
    triangulation_volume(aset.n(), aset.alpha_min())
}

/// The closed-form lower bound for the separable volume at uniform scale:
///
/// ```text
/// alpha^(n^2-2) sqrt(n^2-1)/(n^2-1)!
///   * ( alpha sqrt(n^2/(n^2-1)) + n^2 (1-alpha)/sqrt(n^2 (n^2-1)) )
/// ```
///
/// Evaluated in log space so the factorial cannot overflow; `alpha` must lie
/// in `[0, 1]`.
pub fn paper_volume_bound<T: Real>(n: usize, alpha_min: T) -> Result<T> {
    if alpha_min < T::zero() || alpha_min > T::one() {
        return Err(Error::AlphaOutOfRange(
            alpha_min.to_f64().unwrap_or(f64::NAN),
            "[0,1]",
        ));
    }
    if alpha_min.is_zero() {
        return Ok(T::zero());
    }
    let d = (n * n) as f64;
    let dm1 = d - 1.0;
    let bracket = alpha_min * r::<T>((d / dm1).sqrt())
        + r::<T>(d) * (T::one() - alpha_min) / r::<T>((d * dm1).sqrt());
    let mut ln_v = r::<T>(d - 2.0) * alpha_min.ln() + r::<T>(0.5 * dm1.ln()) + bracket.ln();
    for k in 2..(n * n) {
        ln_v -= r::<T>((k as f64).ln());
    }
    Ok(ln_v.exp())
}

/// Measure of the whole commutative simplex in the same embedding:
/// `sqrt(n^2)/(n^2-1)!`.
pub fn big_simplex_volume<T: Real>(n: usize) -> T {
    let d = n * n;
    let mut v = r::<T>((d as f64).sqrt());
    for k in 2..d {
        v /= r::<T>(k as f64);
    }
    v
}

/// Everything the `volume` front end reports.
#[derive(Debug, Clone)]
pub struct VolumeReport<T: Real> {
    pub n: usize,
    pub alphas: Vec<T>,
    pub alpha_min: T,
    pub triangulation_volume: T,
    pub pieces: Vec<T>,
    pub paper_bound: T,
    pub simplex_volume: T,
    pub triangulation_fraction: T,
    pub bound_fraction: T,
    pub degenerate: bool,
    pub mc: Option<McEstimate<T>>,
}

/// Assemble the volume report for uniform-or-floored `alphas`.
pub fn volume_report<T: Real>(
    n: usize,
    alphas: &[T],
    mc: Option<McEstimate<T>>,
) -> Result<VolumeReport<T>> {
    if alphas.is_empty() {
        return Err(Error::WrongLength {
            expected: n * n,
            got: 0,
        });
    }
    let alpha_min = alphas
        .iter()
        .copied()
        .fold(T::infinity(), |a, b| if b < a { b } else { a });
    let tri = triangulation_volume(n, alpha_min)?;
    let bound = paper_volume_bound(n, alpha_min)?;
    let big = big_simplex_volume::<T>(n);
    let report = VolumeReport {
        n,
        alphas: alphas.to_vec(),
        alpha_min,
        triangulation_volume: tri.total,
        pieces: tri.pieces,
        paper_bound: bound,
        simplex_volume: big,
        triangulation_fraction: tri.total / big,
        bound_fraction: bound / big,
        degenerate: tri.degenerate,
        mc,
    };
    let unit = |x: T| x >= -T::epsilon() && x <= T::one() + r::<T>(1e-12);
    if !unit(report.triangulation_fraction) || !unit(report.bound_fraction) {
        return Err(Error::Internal("volume fraction outside [0, 1]".into()));
    }
    if let Some(est) = &report.mc {
        if est.stderr < T::zero() {
            return Err(Error::Internal("negative Monte Carlo stderr".into()));
        }
    }
    Ok(report)
}
