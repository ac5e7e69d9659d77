//! Separable-state geometry in commutative simplices of bipartite states.
//!
//! The pieces, bottom up:
//!
//! - [`mat`], [`eig`], [`state`]: dense complex matrices on `C^n (x) C^n`,
//!   partial transposes, an in-house Hermitian Jacobi eigensolver, density
//!   matrix validation, and the pencil `alpha P + (1 - alpha) I/n^2`.
//! - [`schmidt`]: Schmidt decompositions and the exact PPT threshold
//!   `alpha_M = 1/(1 + n^2 lambda_1 lambda_2)` along the pencil, with a
//!   bisection scan as an independent cross-check.
//! - [`sidon`], [`twirl`], [`decompose`]: difference-distinct phase
//!   schedules, the diagonal-unitary twirl of a product seed, and explicit
//!   separable decompositions of the threshold state, the `A_[kr]` blocks,
//!   and the complementary-face barycenter `(I - P)/(n^2 - 1)`.
//! - [`simplex`], [`approx_set`], [`lp`], [`volume`], [`mc`]: commutative
//!   simplices, the `2 n^2`-vertex separable approximation set, LP hull
//!   membership (float or exact rational), Gram-determinant triangulation
//!   volumes with the closed-form lower bound, and Monte Carlo measurement.
//! - [`io`]: the JSON file formats used by the CLI.
//!
//! Numeric code is generic over [`scalar::Real`] (`f32`/`f64`); the hull
//! membership LP additionally runs over `BigRational` for exact verdicts.
//! The aliases below fix the `f64` instantiation that the CLI and file
//! formats use.

pub mod approx_set;
pub mod decompose;
pub mod eig;
pub mod error;
pub mod io;
pub mod lp;
pub mod mat;
pub mod mc;
pub mod scalar;
pub mod schmidt;
pub mod sidon;
pub mod simplex;
pub mod state;
pub mod twirl;
pub mod volume;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use scalar::Real;

/// `f64` complex matrix.
pub type Matrix64 = mat::ComplexMatrix<f64>;
/// `f64` density matrix.
pub type Density64 = state::DensityMatrix<f64>;
/// `f64` pure state.
pub type Pure64 = state::PureState<f64>;
/// `f64` Schmidt decomposition.
pub type Schmidt64 = schmidt::SchmidtDecomposition<f64>;
/// `f64` twirl schedule.
pub type Schedule64 = sidon::TwirlSchedule<f64>;
/// `f64` separability certificate.
pub type Decomposition64 = decompose::SeparableDecomposition<f64>;
/// `f64` commutative simplex.
pub type Simplex64 = simplex::Simplex<f64>;
/// `f64` approximation set.
pub type ApproxSet64 = approx_set::ApproxSet<f64>;

/// Default absolute tolerance of the `f64` instantiation.
pub const DEFAULT_TOL: f64 = 1e-9;
