//! Monte Carlo estimates over the big simplex.
//!
//! Points are drawn uniformly by the exponential-spacings method, in fixed
//! chunks of 4096 with one counter-based RNG stream per chunk derived from
//! `(seed, chunk index)`. Given `(seed, samples)` the outcome is bit-stable
//! no matter how the chunks would be scheduled.

use crate::approx_set::{hull_membership, ApproxSet, MemberMode};
use crate::error::{Error, Result};
use crate::scalar::{r, Real};
use crate::state::is_ppt;
use crate::volume::Triangulation;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CHUNK: u64 = 4096;

/// What each sampled point is tested against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum McTarget {
    /// Membership in the vertex hull (phase-1 LP per point).
    Hull,
    /// Membership in the central-simplex-or-pyramid triangulation at the
    /// floored uniform scale.
    Pieces,
    /// PPT of the reconstructed density matrix.
    Ppt,
}

/// Binomial estimate with its standard error.
#[derive(Debug, Clone)]
pub struct McEstimate<T> {
    pub fraction: T,
    pub stderr: T,
    pub samples: u64,
    pub hits: u64,
    /// Fraction of points claimed by two or more triangulation pieces
    /// (`Pieces` target only).
    pub overlap_fraction: Option<T>,
    pub overlap_stderr: Option<T>,
}

fn binomial_stderr<T: Real>(hits: u64, samples: u64) -> (T, T) {
    let p = r::<T>(hits as f64) / r::<T>(samples as f64);
    let var = p * (T::one() - p) / r::<T>(samples as f64);
    (p, var.sqrt())
}

/// Estimate the fraction of the big simplex that hits `target`.
pub fn mc_fraction<T: Real>(
    aset: &ApproxSet<T>,
    samples: u64,
    seed: u64,
    target: McTarget,
    tol: T,
) -> Result<McEstimate<T>> {
    if samples == 0 {
        return Err(Error::NoSamples);
    }
    let d = aset.dim();
    let tri = match target {
        McTarget::Pieces => Some(Triangulation::new(aset.n(), aset.alpha_min())?),
        _ => None,
    };

    let mut hits = 0u64;
    let mut overlaps = 0u64;
    let chunks = samples.div_ceil(CHUNK);
    let mut beta = vec![T::zero(); d];
    for chunk in 0..chunks {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(chunk);
        let in_chunk = CHUNK.min(samples - chunk * CHUNK);
        for _ in 0..in_chunk {
            let mut sum = T::zero();
            for b in beta.iter_mut() {
                let u: f64 = rng.gen();
                let e = -r::<T>(1.0 - u).ln();
                *b = e;
                sum += e;
            }
            for b in beta.iter_mut() {
                *b /= sum;
            }
            match (&target, &tri) {
                (McTarget::Hull, _) => {
                    if hull_membership(&beta, aset, MemberMode::Float, tol)?.inside {
                        hits += 1;
                    }
                }
                (McTarget::Pieces, Some(t)) => {
                    let count = t.pieces_containing(&beta);
                    if count >= 1 {
                        hits += 1;
                    }
                    if count >= 2 {
                        overlaps += 1;
                    }
                }
                (McTarget::Ppt, _) => {
                    let rho = aset.simplex().reconstruct(&beta, tol)?;
                    if is_ppt(&rho, tol).0 {
                        hits += 1;
                    }
                }
                _ => unreachable!(),
            }
        }
    }

    let (fraction, stderr) = binomial_stderr::<T>(hits, samples);
    let (overlap_fraction, overlap_stderr) = if matches!(target, McTarget::Pieces) {
        let (f, s) = binomial_stderr::<T>(overlaps, samples);
        (Some(f), Some(s))
    } else {
        (None, None)
    };
    Ok(McEstimate {
        fraction,
        stderr,
        samples,
        hits,
        overlap_fraction,
        overlap_stderr,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx_set::{approx_set, AlphaSpec};
    use crate::simplex::Simplex;
    use crate::volume::{big_simplex_volume, set_volume_exact};

    const TOL: f64 = 1e-9;

    fn bell_set(alpha: f64) -> ApproxSet<f64> {
        let s = Simplex::<f64>::bell(2, TOL).unwrap();
        approx_set(s, AlphaSpec::Uniform(alpha), TOL).unwrap()
    }

    #[test]
    fn full_scale_hull_fraction_is_one() {
        let set = bell_set(1.0);
        let est = mc_fraction(&set, 2000, 1, McTarget::Hull, TOL).unwrap();
        assert_eq!(est.hits, 2000);
        assert_eq!(est.fraction, 1.0);
    }

    #[test]
    fn same_seed_is_bit_identical() {
        let set = bell_set(1.0 / 3.0);
        let a = mc_fraction(&set, 5000, 42, McTarget::Pieces, TOL).unwrap();
        let b = mc_fraction(&set, 5000, 42, McTarget::Pieces, TOL).unwrap();
        assert_eq!(a.hits, b.hits);
        assert_eq!(a.fraction.to_bits(), b.fraction.to_bits());
        let c = mc_fraction(&set, 5000, 43, McTarget::Pieces, TOL).unwrap();
        assert_ne!(a.hits, c.hits);
    }

    #[test]
    fn pieces_estimate_matches_gram_volume() {
        // Triangulation fraction at n=2, alpha=1/3 is exactly 1/9.
        let set = bell_set(1.0 / 3.0);
        let est = mc_fraction(&set, 1_000_000, 7, McTarget::Pieces, TOL).unwrap();
        let vol = set_volume_exact(&set).unwrap();
        let frac = vol.total / big_simplex_volume::<f64>(2);
        assert!((frac - 1.0 / 9.0).abs() < 1e-12);
        assert!(
            (est.fraction - frac).abs() <= 3.0 * est.stderr,
            "MC {} vs exact {} (3 sigma = {})",
            est.fraction,
            frac,
            3.0 * est.stderr
        );
        // Pieces have measure-zero overlaps.
        assert_eq!(est.overlap_fraction.unwrap(), 0.0);
    }

    #[test]
    fn hull_contains_pieces_and_agrees_at_this_scale() {
        let set = bell_set(1.0 / 3.0);
        let hull = mc_fraction(&set, 20_000, 11, McTarget::Hull, TOL).unwrap();
        let pieces = mc_fraction(&set, 20_000, 11, McTarget::Pieces, TOL).unwrap();
        assert!(pieces.fraction <= hull.fraction + 1e-12);
        assert!((hull.fraction - pieces.fraction).abs() <= 3.0 * (hull.stderr + pieces.stderr));
    }

    #[test]
    fn ppt_fraction_dominates_hull_fraction() {
        // The separable approximation sits inside the PPT region.
        let set = bell_set(1.0 / 3.0);
        let hull = mc_fraction(&set, 4000, 13, McTarget::Hull, TOL).unwrap();
        let ppt = mc_fraction(&set, 4000, 13, McTarget::Ppt, TOL).unwrap();
        assert!(ppt.fraction >= hull.fraction);
    }

    #[test]
    fn sampled_piece_points_pass_hull_membership() {
        use rand::{rngs::StdRng, Rng, SeedableRng};
        let set = bell_set(1.0 / 3.0);
        let tri = Triangulation::new(2, 1.0 / 3.0).unwrap();
        let mut rng = StdRng::seed_from_u64(83);
        for idx in 0..tri.piece_count() {
            let vs = tri.piece_vertices(idx);
            for _ in 0..25 {
                let mut w: Vec<f64> = (0..vs.len()).map(|_| rng.gen::<f64>() + 1e-3).collect();
                let sum: f64 = w.iter().sum();
                for x in &mut w {
                    *x /= sum;
                }
                let mut beta = vec![0.0; 4];
                for (wi, v) in w.iter().zip(vs) {
                    for (b, c) in beta.iter_mut().zip(v) {
                        *b += wi * c;
                    }
                }
                assert!(tri.piece_contains(idx, &beta));
                let m = hull_membership(&beta, &set, MemberMode::Float, TOL).unwrap();
                assert!(m.inside, "piece {idx} point escaped the hull");
            }
        }
    }

    #[test]
    fn zero_samples_is_an_error() {
        let set = bell_set(0.5);
        assert!(matches!(
            mc_fraction(&set, 0, 0, McTarget::Hull, TOL),
            Err(Error::NoSamples)
        ));
    }
}
