//! Explicit separable decompositions: the threshold state `rho(alpha_M)` as a
//! twirl-plus-diagonal mixture, the 2x2-supported `A_[kr]` blocks, and the
//! complementary-face barycenter `(I - P)/(n^2 - 1)`.
//!
//! Everything here works in the Schmidt basis of the entangled state;
//! [`SeparableDecomposition::rotated`] maps a certificate back to the
//! original basis when the caller has one.

use crate::error::{Error, Result};
use crate::mat::{kron, kron_vec, ComplexMatrix};
use crate::scalar::{czero, r, Real, C};
use crate::schmidt::{ppt_threshold, schmidt_decompose, SchmidtDecomposition};
use crate::sidon::sidon_exponents;
use crate::state::{pencil_state, validate_density, DensityMatrix, PureState};

/// Weighted product projector `w |a><a| (x) |b><b|` with unit-norm factors.
#[derive(Debug, Clone)]
pub struct ProductTerm<T: Real> {
    pub weight: T,
    pub a: Vec<C<T>>,
    pub b: Vec<C<T>>,
}

/// Tolerance floors; the `f64` values are the contract, the epsilon terms
/// keep the `f32` instantiation meaningful.
fn residual_gate<T: Real>() -> T {
    let eps = T::epsilon() * r(512.0);
    if eps > r(1e-10) {
        eps
    } else {
        r(1e-10)
    }
}

fn weight_gate<T: Real>() -> T {
    let eps = T::epsilon() * r(64.0);
    if eps > r(1e-12) {
        eps
    } else {
        r(1e-12)
    }
}

fn sum_gate<T: Real>() -> T {
    let eps = T::epsilon() * r(256.0);
    if eps > r(1e-10) {
        eps
    } else {
        r(1e-10)
    }
}

/// A separability certificate: a convex mixture of product projectors that
/// reassembles `target` entrywise.
#[derive(Debug, Clone)]
pub struct SeparableDecomposition<T: Real> {
    n: usize,
    terms: Vec<ProductTerm<T>>,
    target: DensityMatrix<T>,
}

impl<T: Real> SeparableDecomposition<T> {
    /// Validate the certificate invariants: weights above `-1e-12`, unit
    /// weight sum within `1e-10`, and entrywise reassembly within `1e-10`.
    pub fn new(n: usize, terms: Vec<ProductTerm<T>>, target: DensityMatrix<T>) -> Result<Self> {
        if target.n() != n {
            return Err(Error::DimMismatch(target.n(), n));
        }
        let dec = Self { n, terms, target };
        let min_w = dec
            .terms
            .iter()
            .map(|t| t.weight)
            .fold(T::infinity(), |a, b| if b < a { b } else { a });
        if min_w < -weight_gate::<T>() {
            return Err(Error::BadCoordinates(format!(
                "negative weight {:?}",
                min_w.to_f64()
            )));
        }
        let sum: T = dec
            .terms
            .iter()
            .map(|t| t.weight)
            .fold(T::zero(), |a, b| a + b);
        if (sum - T::one()).abs() > sum_gate::<T>() {
            return Err(Error::BadCoordinates(format!(
                "weights sum to {:?}",
                sum.to_f64()
            )));
        }
        let res = dec.residual()?;
        if res > residual_gate::<T>() {
            return Err(Error::ReassemblyFailed(res.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(dec)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[ProductTerm<T>] {
        &self.terms
    }

    pub fn target(&self) -> &DensityMatrix<T> {
        &self.target
    }

    /// `sum_t w_t (a_t a_t^dagger) (x) (b_t b_t^dagger)`.
    pub fn reassemble(&self) -> ComplexMatrix<T> {
        reassemble_terms(self.n, &self.terms)
    }

    /// Largest entrywise deviation of the reassembly from the target.
    pub fn residual(&self) -> Result<T> {
        self.reassemble().max_abs_diff(self.target.matrix())
    }

    /// Conjugate the certificate by local unitaries `a (x) b`; used to move a
    /// Schmidt-basis construction back to the caller's basis.
    pub fn rotated(&self, a: &ComplexMatrix<T>, b: &ComplexMatrix<T>, tol: T) -> Result<Self> {
        if a.dim() != self.n || b.dim() != self.n {
            return Err(Error::DimMismatch(a.dim(), self.n));
        }
        let terms = self
            .terms
            .iter()
            .map(|t| {
                Ok(ProductTerm {
                    weight: t.weight,
                    a: a.matvec(&t.a)?,
                    b: b.matvec(&t.b)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let u = kron(a, b);
        let mat = u.matmul(self.target.matrix())?.matmul(&u.dagger())?;
        let target = validate_density(mat, self.n, tol)?;
        Self::new(self.n, terms, target)
    }
}

fn reassemble_terms<T: Real>(n: usize, terms: &[ProductTerm<T>]) -> ComplexMatrix<T> {
    let d = n * n;
    let mut acc = ComplexMatrix::<T>::zeros(d);
    for t in terms {
        let v = kron_vec(&t.a, &t.b);
        for i in 0..d {
            let vi = v[i].scale(t.weight);
            for j in 0..d {
                acc[(i, j)] += vi * v[j].conj();
            }
        }
    }
    acc
}

fn basis_vec<T: Real>(n: usize, k: usize) -> Vec<C<T>> {
    let mut v = vec![czero(); n];
    v[k] = C::new(T::one(), T::zero());
    v
}

/// Projector onto `sum_k l_k |kk>` in Schmidt coordinates, as a density.
fn schmidt_projector<T: Real>(sd: &SchmidtDecomposition<T>, tol: T) -> Result<DensityMatrix<T>> {
    let n = sd.n();
    let mut amps = vec![czero(); n * n];
    for (k, &l) in sd.lambdas().iter().enumerate() {
        amps[k * n + k] = C::new(l, T::zero());
    }
    validate_density(ComplexMatrix::outer(&amps), n, tol)
}

/// The first PPT state on the pencil, `rho(alpha_M)`, as an explicit mixture:
/// N twirl terms of weight `(sum l)^2 / (N (1 + n^2 M))` plus one basis
/// product `|k> (x) |r>` per ordered pair, weighted
/// `(M - [k != r] l_k l_r) / (1 + n^2 M)`. Exact zero weights are dropped,
/// and a rank-one spectrum collapses to the single term `|00><00|`.
pub fn threshold_decomposition<T: Real>(
    sd: &SchmidtDecomposition<T>,
    tol: T,
) -> Result<SeparableDecomposition<T>> {
    let n = sd.n();
    let l = sd.lambdas();
    let (m_val, alpha_m) = ppt_threshold(sd);
    let target = pencil_state(&schmidt_projector(sd, tol)?, alpha_m, tol)?;

    let degenerate = n < 2 || l[1] <= T::epsilon() * r(32.0);
    if degenerate {
        let terms = vec![ProductTerm {
            weight: T::one(),
            a: basis_vec(n, 0),
            b: basis_vec(n, 0),
        }];
        return SeparableDecomposition::new(n, terms, target);
    }

    let sched = sidon_exponents::<T>(n)?;
    let phi = sched.phi();
    let exps = sched.exponents();
    let big_n = sched.modulus();

    let sum_l: T = l.iter().copied().fold(T::zero(), |a, b| a + b);
    let denom = T::one() + r::<T>((n * n) as f64) * m_val;
    let twirl_weight = sum_l * sum_l / (r::<T>(big_n as f64) * denom);
    let root_sum = sum_l.sqrt();

    let mut terms: Vec<ProductTerm<T>> = Vec::new();
    for t in 0..big_n {
        let mut a = Vec::with_capacity(n);
        let mut b = Vec::with_capacity(n);
        for j in 0..n {
            let amp = l[j].sqrt() / root_sum;
            let angle = r::<T>((t * exps[j]) as f64) * phi;
            a.push(C::new(angle.cos(), angle.sin()).scale(amp));
            b.push(C::new(angle.cos(), -angle.sin()).scale(amp));
        }
        terms.push(ProductTerm {
            weight: twirl_weight,
            a,
            b,
        });
    }
    for k in 0..n {
        for rr in 0..n {
            let cross = if k == rr { T::zero() } else { l[k] * l[rr] };
            let w = (m_val - cross) / denom;
            if w > T::zero() {
                terms.push(ProductTerm {
                    weight: w,
                    a: basis_vec(n, k),
                    b: basis_vec(n, rr),
                });
            }
        }
    }
    SeparableDecomposition::new(n, terms, target)
}

/// The separable block supported on `{|kk>, |kr>, |rk>, |rr>}`:
///
/// ```text
/// (l_r^2 |kk><kk| + l_k^2 |rr><rr| - l_k l_r (|kk><rr| + |rr><kk|)
///  + l_k l_r (|kr><kr| + |rk><rk|)) / (l_k + l_r)^2
/// ```
///
/// The negative entry couples `|kk>` and `|rr>`, matching the off-diagonal
/// support of the entangled projector it must cancel. Trace 1, PSD, and PPT
/// on its 2x2 support, where PPT certifies separability.
pub fn a_block<T: Real>(
    sd: &SchmidtDecomposition<T>,
    k: usize,
    rr: usize,
) -> Result<ComplexMatrix<T>> {
    let n = sd.n();
    if !(k < rr && rr < n) {
        return Err(Error::BadBlockIndices { k, r: rr, n });
    }
    let l = sd.lambdas();
    let (lk, lr) = (l[k], l[rr]);
    let denom = lk + lr;
    if denom <= T::zero() {
        return Err(Error::ZeroBlockWeight { k, r: rr });
    }
    let s = T::one() / (denom * denom);
    let mut m = ComplexMatrix::<T>::zeros(n * n);
    let (kk, kr, rk, rrx) = (k * n + k, k * n + rr, rr * n + k, rr * n + rr);
    m[(kk, kk)] = C::new(lr * lr * s, T::zero());
    m[(rrx, rrx)] = C::new(lk * lk * s, T::zero());
    m[(kk, rrx)] = C::new(-lk * lr * s, T::zero());
    m[(rrx, kk)] = C::new(-lk * lr * s, T::zero());
    m[(kr, kr)] = C::new(lk * lr * s, T::zero());
    m[(rk, rk)] = C::new(lk * lr * s, T::zero());
    Ok(m)
}

/// The complementary-face barycenter `(I - P)/(n^2 - 1)` as an explicit
/// mixture: each `A_[kr]` contributes its three twirl product terms with
/// prefactor `(l_k + l_r)^2 / (n^2 - 1)`, recognizing the block as the 2x2
/// twirl state of `(l_r |kk> - l_k |rr>) / sqrt(l_k^2 + l_r^2)`; each ordered
/// pair `k != r` adds `|k> (x) |r>` with weight `(1 - l_k l_r)/(n^2 - 1)`.
pub fn complement_decomposition<T: Real>(
    sd: &SchmidtDecomposition<T>,
    tol: T,
) -> Result<SeparableDecomposition<T>> {
    let n = sd.n();
    if n < 2 {
        return Err(Error::LocalDimTooSmall(n));
    }
    let l = sd.lambdas();
    let d = n * n;
    let faces = r::<T>((d - 1) as f64);

    let p = schmidt_projector(sd, tol)?;
    let mat = ComplexMatrix::identity(d)
        .sub(p.matrix())?
        .scale_re(T::one() / faces);
    let target = validate_density(mat, n, tol)?;

    let sched2 = sidon_exponents::<T>(2)?;
    let phi = sched2.phi();
    let third = T::one() / r::<T>(sched2.modulus() as f64);

    let mut terms: Vec<ProductTerm<T>> = Vec::new();
    for k in 0..n {
        for rr in k + 1..n {
            let (lk, lr) = (l[k], l[rr]);
            let pair = lk + lr;
            if pair <= T::zero() {
                continue;
            }
            let h = (lk * lk + lr * lr).sqrt();
            let mu1 = lr / h;
            let mu2 = lk / h;
            let norm = (mu1 + mu2).sqrt();
            let (r1, r2) = (mu1.sqrt() / norm, mu2.sqrt() / norm);
            let w = pair * pair / faces * third;
            for t in 0..sched2.modulus() {
                let angle = r::<T>(t as f64) * phi;
                let rot = C::new(angle.cos(), angle.sin());
                let mut a = vec![czero(); n];
                let mut b = vec![czero(); n];
                a[k] = C::new(r1, T::zero());
                a[rr] = rot.scale(-r2);
                b[k] = C::new(r1, T::zero());
                b[rr] = rot.conj().scale(r2);
                terms.push(ProductTerm { weight: w, a, b });
            }
        }
    }
    for k in 0..n {
        for rr in 0..n {
            if k == rr {
                continue;
            }
            let w = (T::one() - l[k] * l[rr]) / faces;
            if w > T::zero() {
                terms.push(ProductTerm {
                    weight: w,
                    a: basis_vec(n, k),
                    b: basis_vec(n, rr),
                });
            }
        }
    }
    SeparableDecomposition::new(n, terms, target)
}

/// Verification report for a (possibly untrusted) decomposition.
#[derive(Debug, Clone)]
pub struct VerifyReport<T> {
    pub max_residual: T,
    pub min_weight: T,
    pub weight_sum: T,
    /// Largest second Schmidt coefficient over the term vectors; zero by
    /// construction for genuine product terms.
    pub max_product_leakage: T,
    pub pass: bool,
    pub violations: Vec<String>,
}

/// Check raw decomposition data against the certificate invariants.
///
/// `tol` gates the reassembly residual; the weight floor (`-1e-12`), weight
/// sum window (`1e-10`) and product-purity gate (`1e-12`) are fixed.
/// Failures are reported, never raised.
pub fn verify_decomposition<T: Real>(
    n: usize,
    terms: &[ProductTerm<T>],
    target: &ComplexMatrix<T>,
    tol: T,
) -> VerifyReport<T> {
    let mut violations = Vec::new();

    let max_residual = match reassemble_terms(n, terms).max_abs_diff(target) {
        Ok(rr) => rr,
        Err(_) => {
            violations.push(format!(
                "target dimension {} does not match n^2 = {}",
                target.dim(),
                n * n
            ));
            T::infinity()
        }
    };
    if max_residual > tol {
        violations.push(format!(
            "reassembly residual {:?} exceeds {:?}",
            max_residual.to_f64(),
            tol.to_f64()
        ));
    }

    let min_weight = terms
        .iter()
        .map(|t| t.weight)
        .fold(T::infinity(), |a, b| if b < a { b } else { a });
    if min_weight < -weight_gate::<T>() {
        violations.push(format!("negative weight {:?}", min_weight.to_f64()));
    }
    let weight_sum: T = terms.iter().map(|t| t.weight).fold(T::zero(), |a, b| a + b);
    if (weight_sum - T::one()).abs() > sum_gate::<T>() {
        violations.push(format!(
            "weight sum {:?} differs from 1",
            weight_sum.to_f64()
        ));
    }

    let mut max_leak = T::zero();
    for (idx, term) in terms.iter().enumerate() {
        if term.a.len() != n || term.b.len() != n {
            violations.push(format!("term {idx} has factor length != {n}"));
            continue;
        }
        let v = kron_vec(&term.a, &term.b);
        let norm = v
            .iter()
            .map(|x| x.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt();
        if (norm - T::one()).abs() > tol {
            violations.push(format!(
                "term {idx} factors are not unit norm: |a||b| = {:?}",
                norm.to_f64()
            ));
            continue;
        }
        let leak = PureState::new(n, v, tol)
            .and_then(|psi| schmidt_decompose(&psi, tol))
            .map(|sch| if n >= 2 { sch.lambdas()[1] } else { T::zero() });
        match leak {
            Ok(second) => {
                if second > max_leak {
                    max_leak = second;
                }
            }
            Err(e) => violations.push(format!("term {idx} rejected by Schmidt analysis: {e}")),
        }
    }
    if max_leak > weight_gate::<T>() {
        violations.push(format!(
            "term leaks Schmidt rank 2: second coefficient {:?}",
            max_leak.to_f64()
        ));
    }

    VerifyReport {
        max_residual,
        min_weight,
        weight_sum,
        max_product_leakage: max_leak,
        pass: violations.is_empty(),
        violations,
    }
}

impl<T: Real> SeparableDecomposition<T> {
    /// Run [`verify_decomposition`] against this certificate.
    pub fn verify(&self, tol: T) -> VerifyReport<T> {
        verify_decomposition(self.n, &self.terms, self.target.matrix(), tol)
    }

    /// Assemble from raw parts without validation; used by the file-format
    /// layer so that untrusted data can be inspected by `verify`.
    pub fn from_raw_parts(n: usize, terms: Vec<ProductTerm<T>>, target: DensityMatrix<T>) -> Self {
        Self { n, terms, target }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eig::hermitian_spectrum;
    use crate::mat::{partial_transpose, Side};
    use crate::state::is_ppt;
    use crate::testutil::{random_pure, random_spectrum};
    use rand::{rngs::StdRng, SeedableRng};

    const TOL: f64 = 1e-9;

    fn bell_sd() -> SchmidtDecomposition<f64> {
        let w = 0.5f64.sqrt();
        SchmidtDecomposition::from_lambdas(vec![w, w], TOL).unwrap()
    }

    #[test]
    fn bell_threshold_weights() {
        let dec = threshold_decomposition(&bell_sd(), TOL).unwrap();
        // 3 twirl terms at 2/9 plus the (0,0) and (1,1) diagonals at 1/6.
        assert_eq!(dec.terms().len(), 5);
        let mut twirl = 0usize;
        let mut diag = 0usize;
        for t in dec.terms() {
            if (t.weight - 2.0 / 9.0).abs() < 1e-14 {
                twirl += 1;
            } else if (t.weight - 1.0 / 6.0).abs() < 1e-14 {
                diag += 1;
            } else {
                panic!("unexpected weight {}", t.weight);
            }
        }
        assert_eq!((twirl, diag), (3, 2));
        let sum: f64 = dec.terms().iter().map(|t| t.weight).sum();
        assert!((sum - 1.0).abs() < 1e-14);

        // Target is rho(1/3) of the Schmidt-basis Bell projector.
        let p = schmidt_projector(&bell_sd(), TOL).unwrap();
        let expect = pencil_state(&p, 1.0 / 3.0, TOL).unwrap();
        assert!(dec.target().matrix().approx_eq(expect.matrix(), 1e-12));
        assert!(dec.residual().unwrap() <= 1e-10);
    }

    #[test]
    fn threshold_target_sits_on_ppt_boundary() {
        let mut rng = StdRng::seed_from_u64(17);
        for n in [2usize, 3] {
            for _ in 0..5 {
                let sd =
                    SchmidtDecomposition::from_lambdas(random_spectrum(n, &mut rng), TOL).unwrap();
                let dec = threshold_decomposition(&sd, TOL).unwrap();
                let (ppt, min) = is_ppt(dec.target(), 1e-10);
                assert!(ppt, "threshold state must be PPT, min {min}");
                assert!(
                    min <= 1e-8,
                    "threshold state should touch the boundary, min {min}"
                );
            }
        }
    }

    #[test]
    fn product_spectrum_collapses_to_single_term() {
        let sd = SchmidtDecomposition::from_lambdas(vec![1.0, 0.0], TOL).unwrap();
        let dec = threshold_decomposition(&sd, TOL).unwrap();
        assert_eq!(dec.terms().len(), 1);
        assert_eq!(dec.terms()[0].weight, 1.0);
        let (_, alpha) = ppt_threshold(&sd);
        assert_eq!(alpha, 1.0);
    }

    #[test]
    fn weight_sum_identity_is_exact_in_spirit() {
        // (sum l)^2 + n^2 M - sum_{k!=r} l_k l_r = 1 + n^2 M given sum l^2 = 1.
        let mut rng = StdRng::seed_from_u64(19);
        for n in [2usize, 3, 4] {
            let l = random_spectrum(n, &mut rng);
            let sum: f64 = l.iter().sum();
            let m = l[0] * l[1];
            let cross: f64 = (0..n)
                .flat_map(|k| (0..n).map(move |q| (k, q)))
                .filter(|(k, q)| k != q)
                .map(|(k, q)| l[k] * l[q])
                .sum();
            let lhs = sum * sum + (n * n) as f64 * m - cross;
            let rhs = 1.0 + (n * n) as f64 * m;
            assert!((lhs - rhs).abs() < 1e-12);
        }
    }

    #[test]
    fn bell_a_block_matrix() {
        let block = a_block(&bell_sd(), 0, 1).unwrap();
        let quarter = 0.25;
        assert!((block[(0, 0)].re - quarter).abs() < 1e-15);
        assert!((block[(3, 3)].re - quarter).abs() < 1e-15);
        assert!((block[(0, 3)].re + quarter).abs() < 1e-15);
        assert!((block[(3, 0)].re + quarter).abs() < 1e-15);
        assert!((block[(1, 1)].re - quarter).abs() < 1e-15);
        assert!((block[(2, 2)].re - quarter).abs() < 1e-15);
        assert!((block.trace().re - 1.0).abs() < 1e-14);

        // Spectrum and PT spectrum both nonnegative: separable on the 2x2
        // support by the PPT criterion.
        let spec = hermitian_spectrum(&block, TOL).unwrap();
        assert!(spec[0] >= -1e-12 && spec[0].abs() < 1e-12);
        let pt = partial_transpose(&block, 2, Side::Second).unwrap();
        let pt_spec = hermitian_spectrum(&pt, TOL).unwrap();
        assert!(pt_spec[0] >= -1e-12 && pt_spec[0].abs() < 1e-12);
    }

    #[test]
    fn a_block_trace_one_and_degenerate_limit() {
        let mut rng = StdRng::seed_from_u64(29);
        for n in [2usize, 3, 4] {
            let sd = SchmidtDecomposition::from_lambdas(random_spectrum(n, &mut rng), TOL).unwrap();
            for k in 0..n {
                for q in k + 1..n {
                    let block = a_block(&sd, k, q).unwrap();
                    assert!((block.trace().re - 1.0).abs() < 1e-13);
                }
            }
        }
        // Vanishing smaller coefficient keeps only the surviving pure
        // product: (k,r) = (0,1) with lambda_1 = 0 leaves |rr><rr| = |11><11|.
        let sd = SchmidtDecomposition::from_lambdas(vec![1.0, 0.0], TOL).unwrap();
        let block = a_block(&sd, 0, 1).unwrap();
        let mut expect = ComplexMatrix::<f64>::zeros(4);
        expect[(3, 3)] = C::new(1.0, 0.0);
        assert!(block.approx_eq(&expect, 1e-15));
    }

    #[test]
    fn a_block_rejects_bad_indices() {
        let sd = bell_sd();
        assert!(matches!(
            a_block(&sd, 1, 0),
            Err(Error::BadBlockIndices { .. })
        ));
        assert!(matches!(
            a_block(&sd, 0, 2),
            Err(Error::BadBlockIndices { .. })
        ));
        let degenerate = SchmidtDecomposition::from_lambdas(vec![1.0, 0.0, 0.0], TOL).unwrap();
        assert!(matches!(
            a_block(&degenerate, 1, 2),
            Err(Error::ZeroBlockWeight { .. })
        ));
    }

    #[test]
    fn complement_weights_sum_identity() {
        let mut rng = StdRng::seed_from_u64(31);
        for n in [2usize, 3, 4] {
            let l = random_spectrum(n, &mut rng);
            let pair_part: f64 = (0..n)
                .flat_map(|k| (k + 1..n).map(move |q| (k, q)))
                .map(|(k, q)| (l[k] + l[q]).powi(2))
                .sum();
            let diag_part: f64 = (0..n)
                .flat_map(|k| (0..n).map(move |q| (k, q)))
                .filter(|(k, q)| k != q)
                .map(|(k, q)| 1.0 - l[k] * l[q])
                .sum();
            assert!((pair_part + diag_part - ((n * n - 1) as f64)).abs() < 1e-12);
        }
    }

    #[test]
    fn bell_complement_reassembles_face_barycenter() {
        let dec = complement_decomposition(&bell_sd(), TOL).unwrap();
        let p = schmidt_projector(&bell_sd(), TOL).unwrap();
        let expect = ComplexMatrix::identity(4)
            .sub(p.matrix())
            .unwrap()
            .scale_re(1.0 / 3.0);
        assert!(dec.target().matrix().approx_eq(&expect, 1e-14));
        assert!(dec.residual().unwrap() <= 1e-10);
    }

    #[test]
    fn complement_on_random_spectra() {
        let mut rng = StdRng::seed_from_u64(43);
        for n in [2usize, 3] {
            for _ in 0..5 {
                let sd =
                    SchmidtDecomposition::from_lambdas(random_spectrum(n, &mut rng), TOL).unwrap();
                let dec = complement_decomposition(&sd, TOL).unwrap();
                assert!(dec.residual().unwrap() <= 1e-10);
                assert!(dec.terms().iter().all(|t| t.weight >= 0.0));
            }
        }
        assert!(matches!(
            complement_decomposition(
                &SchmidtDecomposition::from_lambdas(vec![1.0], TOL).unwrap(),
                TOL
            ),
            Err(Error::LocalDimTooSmall(1))
        ));
    }

    #[test]
    fn trivial_local_dimension_does_not_panic() {
        let sd = SchmidtDecomposition::from_lambdas(vec![1.0], TOL).unwrap();
        let dec = threshold_decomposition(&sd, TOL).unwrap();
        assert_eq!(dec.terms().len(), 1);
        assert_eq!(dec.target().dim(), 1);
    }

    #[test]
    fn verify_passes_good_certificates() {
        let dec = threshold_decomposition(&bell_sd(), TOL).unwrap();
        let report = dec.verify(1e-10);
        assert!(report.pass, "violations: {:?}", report.violations);
        assert!(report.max_product_leakage <= 1e-12);
    }

    #[test]
    fn verify_names_negative_weight() {
        let dec = threshold_decomposition(&bell_sd(), TOL).unwrap();
        let mut terms = dec.terms().to_vec();
        terms[0].weight = -0.1;
        let report = verify_decomposition(2, &terms, dec.target().matrix(), 1.0);
        assert!(!report.pass);
        assert!(report
            .violations
            .iter()
            .any(|v| v.contains("negative weight")));
        assert!((report.min_weight + 0.1).abs() < 1e-15);
    }

    #[test]
    fn verify_reports_perturbed_target_residual() {
        let dec = threshold_decomposition(&bell_sd(), TOL).unwrap();
        let mut target = dec.target().matrix().clone();
        target[(1, 1)] += C::new(1e-3, 0.0);
        let report = verify_decomposition(2, dec.terms(), &target, 1e-10);
        assert!(!report.pass);
        assert!((report.max_residual - 1e-3).abs() < 1e-6);
    }

    #[test]
    fn rotation_carries_certificate_to_original_basis() {
        // Decompose a random state, build the certificate in the Schmidt
        // basis, rotate back, and check the rotated target is the pencil of
        // the original projector.
        let mut rng = StdRng::seed_from_u64(47);
        let n = 3usize;
        let psi = random_pure(n, &mut rng);
        let sd = schmidt_decompose(&psi, TOL).unwrap();
        let dec = threshold_decomposition(&sd, TOL).unwrap();
        let rotated = dec.rotated(sd.basis_a(), sd.basis_b(), TOL).unwrap();
        let (_, alpha_m) = ppt_threshold(&sd);
        let expect = pencil_state(&psi.density(TOL).unwrap(), alpha_m, TOL).unwrap();
        assert!(rotated.target().matrix().approx_eq(expect.matrix(), 1e-10));
        assert!(rotated.residual().unwrap() <= 1e-9);
    }
}
