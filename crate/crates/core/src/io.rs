//! JSON file formats. All schemas are concrete at `f64`; complex numbers are
//! `[re, im]` pairs and reals round-trip bit-exactly through the decimal
//! text.

use crate::approx_set::{approx_set, AlphaSpec, ApproxSet, Certificate, Membership};
use crate::decompose::{ProductTerm, SeparableDecomposition, VerifyReport};
use crate::error::{Error, Result};
use crate::mat::ComplexMatrix;
use crate::scalar::C;
use crate::schmidt::SchmidtDecomposition;
use crate::simplex::{simplex_from_projectors, Simplex};
use crate::state::{validate_density, DensityMatrix, PureState};
use crate::volume::VolumeReport;
use serde::{Deserialize, Serialize};

/// `{"dim": d, "entries": [[[re,im], ...] x d]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &ComplexMatrix<f64>) -> Self {
        let d = m.dim();
        let entries = (0..d)
            .map(|i| (0..d).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
            .collect();
        Self { dim: d, entries }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix<f64>> {
        if self.entries.len() != self.dim || self.entries.iter().any(|r| r.len() != self.dim) {
            return Err(Error::WrongLength {
                expected: self.dim * self.dim,
                got: self.entries.iter().map(|r| r.len()).sum(),
            });
        }
        let mut flat = Vec::with_capacity(self.dim * self.dim);
        for row in &self.entries {
            for &[re, im] in row {
                flat.push(C::new(re, im));
            }
        }
        ComplexMatrix::from_entries(self.dim, flat)
    }
}

/// `{"n": n, "amplitudes": [[re,im] x n^2]}` with index `i*n + j`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VectorJson {
    pub n: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

impl VectorJson {
    pub fn from_state(psi: &PureState<f64>) -> Self {
        Self {
            n: psi.n(),
            amplitudes: psi.amplitudes().iter().map(|a| [a.re, a.im]).collect(),
        }
    }

    pub fn to_state(&self, tol: f64) -> Result<PureState<f64>> {
        let amps = self
            .amplitudes
            .iter()
            .map(|&[re, im]| C::new(re, im))
            .collect();
        PureState::new(self.n, amps, tol)
    }
}

/// Output of a Schmidt analysis.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SchmidtJson {
    pub n: usize,
    pub lambdas: Vec<f64>,
    pub basis_a: MatrixJson,
    pub basis_b: MatrixJson,
}

impl SchmidtJson {
    pub fn from_schmidt(sd: &SchmidtDecomposition<f64>) -> Self {
        Self {
            n: sd.n(),
            lambdas: sd.lambdas().to_vec(),
            basis_a: MatrixJson::from_matrix(sd.basis_a()),
            basis_b: MatrixJson::from_matrix(sd.basis_b()),
        }
    }

    pub fn to_schmidt(&self, tol: f64) -> Result<SchmidtDecomposition<f64>> {
        SchmidtDecomposition::from_parts(
            self.lambdas.clone(),
            self.basis_a.to_matrix()?,
            self.basis_b.to_matrix()?,
            tol,
        )
    }
}

/// One product term `{"w": real, "a": [[re,im] x n], "b": [[re,im] x n]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub w: f64,
    pub a: Vec<[f64; 2]>,
    pub b: Vec<[f64; 2]>,
}

/// `{"n": n, "target": matrix, "terms": [...]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub n: usize,
    pub target: MatrixJson,
    pub terms: Vec<TermJson>,
}

impl DecompositionJson {
    pub fn from_decomposition(dec: &SeparableDecomposition<f64>) -> Self {
        Self {
            n: dec.n(),
            target: MatrixJson::from_matrix(dec.target().matrix()),
            terms: dec
                .terms()
                .iter()
                .map(|t| TermJson {
                    w: t.weight,
                    a: t.a.iter().map(|x| [x.re, x.im]).collect(),
                    b: t.b.iter().map(|x| [x.re, x.im]).collect(),
                })
                .collect(),
        }
    }

    /// Raw pieces for verification; no invariant is enforced here.
    pub fn to_raw_parts(&self) -> Result<(usize, Vec<ProductTerm<f64>>, ComplexMatrix<f64>)> {
        let target = self.target.to_matrix()?;
        let terms = self
            .terms
            .iter()
            .map(|t| ProductTerm {
                weight: t.w,
                a: t.a.iter().map(|&[re, im]| C::new(re, im)).collect(),
                b: t.b.iter().map(|&[re, im]| C::new(re, im)).collect(),
            })
            .collect();
        Ok((self.n, terms, target))
    }
}

/// Simplex input: rays (projectors derived) or explicit projectors.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SimplexJson {
    Rays {
        n: usize,
        basis_vectors: Vec<Vec<[f64; 2]>>,
    },
    Projectors {
        n: usize,
        projectors: Vec<MatrixJson>,
    },
}

impl SimplexJson {
    pub fn from_simplex(s: &Simplex<f64>) -> Self {
        Self::Projectors {
            n: s.n(),
            projectors: s
                .projectors()
                .iter()
                .map(|p| MatrixJson::from_matrix(p.matrix()))
                .collect(),
        }
    }

    pub fn to_simplex(&self, tol: f64) -> Result<Simplex<f64>> {
        match self {
            Self::Rays { n, basis_vectors } => {
                let ps = basis_vectors
                    .iter()
                    .map(|v| {
                        let amps: Vec<C<f64>> = v.iter().map(|&[re, im]| C::new(re, im)).collect();
                        ComplexMatrix::outer(&amps)
                    })
                    .collect();
                simplex_from_projectors(ps, *n, tol)
            }
            Self::Projectors { n, projectors } => {
                let ps = projectors
                    .iter()
                    .map(|m| m.to_matrix())
                    .collect::<Result<Vec<_>>>()?;
                simplex_from_projectors(ps, *n, tol)
            }
        }
    }
}

/// The vertex set, with the simplex it sits over.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ApproxSetJson {
    pub n: usize,
    pub alphas: Vec<f64>,
    pub vertices: Vec<Vec<f64>>,
    pub simplex: SimplexJson,
}

impl ApproxSetJson {
    pub fn from_set(set: &ApproxSet<f64>) -> Self {
        Self {
            n: set.n(),
            alphas: set.alphas().to_vec(),
            vertices: set.vertices().to_vec(),
            simplex: SimplexJson::from_simplex(set.simplex()),
        }
    }

    /// Rebuild and cross-check the stored vertices against the ones implied
    /// by the alphas.
    pub fn to_set(&self, tol: f64) -> Result<ApproxSet<f64>> {
        let simplex = self.simplex.to_simplex(tol)?;
        let set = approx_set(simplex, AlphaSpec::PerVertex(self.alphas.clone()), tol)?;
        if self.vertices.len() != set.vertices().len() {
            return Err(Error::WrongLength {
                expected: set.vertices().len(),
                got: self.vertices.len(),
            });
        }
        for (stored, built) in self.vertices.iter().zip(set.vertices()) {
            for (s, b) in stored.iter().zip(built) {
                if (s - b).abs() > 1e-12 {
                    return Err(Error::BadCoordinates(
                        "stored vertices disagree with alphas".into(),
                    ));
                }
            }
        }
        Ok(set)
    }
}

/// Verification outcome in report form.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReportJson {
    pub max_residual: f64,
    pub min_weight: f64,
    pub weight_sum: f64,
    pub max_product_leakage: f64,
    pub pass: bool,
    pub violations: Vec<String>,
}

impl VerifyReportJson {
    pub fn from_report(report: &VerifyReport<f64>) -> Self {
        Self {
            max_residual: report.max_residual,
            min_weight: report.min_weight,
            weight_sum: report.weight_sum,
            max_product_leakage: report.max_product_leakage,
            pass: report.pass,
            violations: report.violations.clone(),
        }
    }
}

/// Hull-membership outcome.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MemberReportJson {
    pub inside: bool,
    pub mode: String,
    pub certificate_kind: String,
    pub certificate: Vec<f64>,
}

impl MemberReportJson {
    pub fn from_membership(m: &Membership<f64>, mode: &str) -> Self {
        let (kind, values) = match &m.certificate {
            Certificate::Weights(w) => ("weights", w.clone()),
            Certificate::Separator(y) => ("separator", y.clone()),
        };
        Self {
            inside: m.inside,
            mode: mode.into(),
            certificate_kind: kind.into(),
            certificate: values,
        }
    }
}

/// Volume report, flattened for the file format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VolumeReportJson {
    pub n: usize,
    pub alphas: Vec<f64>,
    pub alpha_min: f64,
    pub triangulation_volume: f64,
    pub pieces: Vec<f64>,
    pub paper_bound: f64,
    pub simplex_volume: f64,
    pub triangulation_fraction: f64,
    pub bound_fraction: f64,
    pub degenerate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mc_fraction: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mc_stderr: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mc_samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mc_overlap_fraction: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mc_overlap_stderr: Option<f64>,
}

impl VolumeReportJson {
    pub fn from_report(report: &VolumeReport<f64>) -> Self {
        Self {
            n: report.n,
            alphas: report.alphas.clone(),
            alpha_min: report.alpha_min,
            triangulation_volume: report.triangulation_volume,
            pieces: report.pieces.clone(),
            paper_bound: report.paper_bound,
            simplex_volume: report.simplex_volume,
            triangulation_fraction: report.triangulation_fraction,
            bound_fraction: report.bound_fraction,
            degenerate: report.degenerate,
            mc_fraction: report.mc.as_ref().map(|m| m.fraction),
            mc_stderr: report.mc.as_ref().map(|m| m.stderr),
            mc_samples: report.mc.as_ref().map(|m| m.samples),
            mc_overlap_fraction: report.mc.as_ref().and_then(|m| m.overlap_fraction),
            mc_overlap_stderr: report.mc.as_ref().and_then(|m| m.overlap_stderr),
        }
    }
}

/// Parse a density matrix file (matrix JSON plus local dimension).
pub fn density_from_json(doc: &MatrixJson, n: usize, tol: f64) -> Result<DensityMatrix<f64>> {
    validate_density(doc.to_matrix()?, n, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::threshold_decomposition;
    use crate::schmidt::schmidt_decompose;

    const TOL: f64 = 1e-9;

    #[test]
    fn matrix_roundtrip_is_bit_exact() {
        let m = ComplexMatrix::from_fn(3, |i, j| {
            C::new(
                1.0 / (1.0 + (i + 2 * j) as f64),
                (i as f64 - j as f64) / 7.0,
            )
        });
        let text = serde_json::to_string(&MatrixJson::from_matrix(&m)).unwrap();
        let back: MatrixJson = serde_json::from_str(&text).unwrap();
        let m2 = back.to_matrix().unwrap();
        assert!(m.approx_eq(&m2, 0.0));
    }

    #[test]
    fn vector_roundtrip_preserves_state() {
        let psi = PureState::<f64>::maximally_entangled(3);
        let text = serde_json::to_string(&VectorJson::from_state(&psi)).unwrap();
        let back: VectorJson = serde_json::from_str(&text).unwrap();
        let psi2 = back.to_state(TOL).unwrap();
        assert_eq!(psi.amplitudes(), psi2.amplitudes());
    }

    #[test]
    fn decomposition_roundtrip_keeps_verification_verdict() {
        let w = 0.5f64.sqrt();
        let sd = SchmidtDecomposition::from_lambdas(vec![w, w], TOL).unwrap();
        let dec = threshold_decomposition(&sd, TOL).unwrap();
        let doc = DecompositionJson::from_decomposition(&dec);
        let text = serde_json::to_string_pretty(&doc).unwrap();
        let back: DecompositionJson = serde_json::from_str(&text).unwrap();
        let (n, terms, target) = back.to_raw_parts().unwrap();
        let report = crate::decompose::verify_decomposition(n, &terms, &target, 1e-10);
        assert!(report.pass, "{:?}", report.violations);
    }

    #[test]
    fn simplex_accepts_rays_or_projectors() {
        let s = Simplex::<f64>::bell(2, TOL).unwrap();
        let doc = SimplexJson::from_simplex(&s);
        let text = serde_json::to_string(&doc).unwrap();
        let back: SimplexJson = serde_json::from_str(&text).unwrap();
        assert!(back.to_simplex(TOL).is_ok());

        // Rays form for the computational basis.
        let mut rays = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                let psi = PureState::<f64>::basis(2, i, j);
                rays.push(psi.amplitudes().iter().map(|a| [a.re, a.im]).collect());
            }
        }
        let doc = SimplexJson::Rays {
            n: 2,
            basis_vectors: rays,
        };
        let text = serde_json::to_string(&doc).unwrap();
        let back: SimplexJson = serde_json::from_str(&text).unwrap();
        assert!(back.to_simplex(TOL).is_ok());
    }

    #[test]
    fn approx_set_roundtrip_checks_vertices() {
        let s = Simplex::<f64>::bell(2, TOL).unwrap();
        let set = approx_set(s, AlphaSpec::Uniform(0.4), TOL).unwrap();
        let doc = ApproxSetJson::from_set(&set);
        let text = serde_json::to_string(&doc).unwrap();
        let mut back: ApproxSetJson = serde_json::from_str(&text).unwrap();
        assert!(back.to_set(TOL).is_ok());
        back.vertices[0][0] += 1e-3;
        assert!(back.to_set(TOL).is_err());
    }

    #[test]
    fn schmidt_json_roundtrip() {
        let psi = crate::testutil::random_pure(3, &mut rand::SeedableRng::seed_from_u64(5));
        let sd = schmidt_decompose(&psi, TOL).unwrap();
        let doc = SchmidtJson::from_schmidt(&sd);
        let text = serde_json::to_string(&doc).unwrap();
        let back: SchmidtJson = serde_json::from_str(&text).unwrap();
        let sd2 = back.to_schmidt(TOL).unwrap();
        assert_eq!(sd.lambdas(), sd2.lambdas());
    }
}
