//! Phase-1 simplex feasibility for convex-hull membership.
//!
//! Solves "does `point` lie in the convex hull of `vertices`": find `w >= 0`
//! with `sum w = 1` and `sum_j w_j V_j = point`. One artificial variable per
//! row, Bland's rule throughout, so the method terminates without cycling.
//! Generic over the scalar: `f64` with a tolerance, or `BigRational` with
//! tolerance zero for exact decisions.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed};
use std::fmt::Debug;

/// Scalar for the LP tableau: an ordered field with exact or float semantics.
pub trait LpScalar: Clone + Num + Signed + PartialOrd + Debug {}
impl<S: Clone + Num + Signed + PartialOrd + Debug> LpScalar for S {}

/// Outcome of the feasibility solve.
#[derive(Debug, Clone)]
pub enum Feasibility<S> {
    /// Hull weights: nonnegative, summing to one, reproducing the point.
    Feasible { weights: Vec<S> },
    /// Farkas separator `y` on the sum-augmented coordinates: `<y, (V_j, 1)>
    /// <= 0` for every vertex while `<y, (point, 1)> > 0`.
    Infeasible { farkas: Vec<S> },
}

/// Phase-1 feasibility with Bland's rule.
///
/// `tol` is the pivot/feasibility tolerance (zero for exact scalars);
/// feasibility is declared when the phase-1 objective falls to
/// `tol * (1 + |point|_1)`.
#[allow(clippy::needless_range_loop)] // tableau rows are cross-indexed during pivots
pub fn convex_membership<S: LpScalar>(
    vertices: &[Vec<S>],
    point: &[S],
    tol: &S,
) -> Result<Feasibility<S>> {
    let d = point.len();
    let nv = vertices.len();
    let rows = d + 1;
    let cols = nv + rows;
    if vertices.iter().any(|v| v.len() != d) {
        return Err(Error::WrongLength {
            expected: d,
            got: 0,
        });
    }

    // Tableau rows: the d coordinate equations plus the weight-sum row, each
    // with rhs at index `cols`. Row signs flipped so rhs >= 0; `flips`
    // remembers them for the Farkas certificate.
    let mut tab: Vec<Vec<S>> = vec![vec![S::zero(); cols + 1]; rows];
    let mut flips: Vec<bool> = vec![false; rows];
    for i in 0..rows {
        let rhs = if i < d { point[i].clone() } else { S::one() };
        let flip = rhs < S::zero();
        flips[i] = flip;
        for (j, v) in vertices.iter().enumerate() {
            let a = if i < d { v[i].clone() } else { S::one() };
            tab[i][j] = if flip { -a } else { a };
        }
        tab[i][nv + i] = S::one();
        tab[i][cols] = if flip { -rhs } else { rhs };
    }

    // Reduced costs for basis = artificials, and the objective value.
    let mut obj: Vec<S> = vec![S::zero(); cols];
    let mut value = S::zero();
    for i in 0..rows {
        for j in 0..nv {
            obj[j] = obj[j].clone() - tab[i][j].clone();
        }
        value = value + tab[i][cols].clone();
    }
    let mut basis: Vec<usize> = (0..rows).map(|i| nv + i).collect();

    let cap = 10 * (rows + cols) * cols;
    let mut iterations = 0usize;
    loop {
        // Bland: smallest improving column index.
        let entering = (0..cols).find(|&j| obj[j] < -tol.clone());
        let Some(j) = entering else { break };

        // Ratio test; ties resolved toward the smallest basis variable.
        let mut leave: Option<(usize, S)> = None;
        for i in 0..rows {
            if tab[i][j] > tol.clone() {
                let ratio = tab[i][cols].clone() / tab[i][j].clone();
                match &leave {
                    None => leave = Some((i, ratio)),
                    Some((best_i, best)) => {
                        if ratio < *best || (ratio == *best && basis[i] < basis[*best_i]) {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
        }
        let Some((i, _)) = leave else {
            return Err(Error::Internal(
                "phase-1 objective unbounded below; inconsistent tableau".into(),
            ));
        };

        // Pivot on (i, j).
        let pivot = tab[i][j].clone();
        for x in tab[i].iter_mut() {
            *x = x.clone() / pivot.clone();
        }
        for k in 0..rows {
            if k == i {
                continue;
            }
            let factor = tab[k][j].clone();
            if factor.is_zero() {
                continue;
            }
            for c in 0..=cols {
                let delta = factor.clone() * tab[i][c].clone();
                tab[k][c] = tab[k][c].clone() - delta;
            }
        }
        let rj = obj[j].clone();
        for c in 0..cols {
            let delta = rj.clone() * tab[i][c].clone();
            obj[c] = obj[c].clone() - delta;
        }
        value = value + rj * tab[i][cols].clone();
        basis[i] = j;

        iterations += 1;
        if iterations > cap {
            return Err(Error::LpIterationCap(cap));
        }
    }

    let norm1 = point.iter().fold(S::zero(), |acc, x| acc + x.abs());
    let gate = tol.clone() * (S::one() + norm1);
    if value <= gate {
        let mut weights = vec![S::zero(); nv];
        for i in 0..rows {
            if basis[i] < nv {
                weights[basis[i]] = tab[i][cols].clone();
            }
        }
        Ok(Feasibility::Feasible { weights })
    } else {
        // Simplex multipliers: y_i = 1 - (reduced cost of artificial i),
        // un-flipping the rows that were negated.
        let farkas: Vec<S> = (0..rows)
            .map(|i| {
                let y = S::one() - obj[nv + i].clone();
                if flips[i] {
                    -y
                } else {
                    y
                }
            })
            .collect();
        Ok(Feasibility::Infeasible { farkas })
    }
}

/// Best rational approximation of `x` within `eps`, by continued fractions.
/// Falls back to the exact binary value when the expansion misbehaves.
pub fn rationalize(x: f64, eps: f64) -> BigRational {
    if !x.is_finite() {
        panic!("cannot rationalize non-finite value");
    }
    let sign = if x < 0.0 { -1 } else { 1 };
    let a = x.abs();
    if a <= eps {
        return BigRational::from_integer(BigInt::from(0));
    }
    let (mut h0, mut h1) = (1i128, a.floor() as i128);
    let (mut k0, mut k1) = (0i128, 1i128);
    let mut frac = a - a.floor();
    for _ in 0..64 {
        let approx = h1 as f64 / k1 as f64;
        if (approx - a).abs() <= eps {
            let num = BigInt::from(sign * h1);
            return BigRational::new(num, BigInt::from(k1));
        }
        if frac.abs() < f64::MIN_POSITIVE {
            break;
        }
        let inv = 1.0 / frac;
        let digit = inv.floor();
        if digit >= 1e17 || digit.is_nan() || digit < 0.0 {
            break;
        }
        let d = digit as i128;
        let h2 = d.checked_mul(h1).and_then(|v| v.checked_add(h0));
        let k2 = d.checked_mul(k1).and_then(|v| v.checked_add(k0));
        match (h2, k2) {
            (Some(h2), Some(k2)) => {
                h0 = h1;
                h1 = h2;
                k0 = k1;
                k1 = k2;
                frac = inv - digit;
            }
            _ => break,
        }
    }
    BigRational::from_f64(x).expect("finite f64 is rational")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> Vec<Vec<f64>> {
        vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![1.0, 1.0],
        ]
    }

    #[test]
    fn interior_point_is_feasible_with_valid_weights() {
        let vs = unit_square();
        let p = vec![0.25, 0.5];
        match convex_membership(&vs, &p, &1e-9).unwrap() {
            Feasibility::Feasible { weights } => {
                let sum: f64 = weights.iter().sum();
                assert!((sum - 1.0).abs() < 1e-9);
                assert!(weights.iter().all(|&w| w >= -1e-12));
                for c in 0..2 {
                    let got: f64 = weights.iter().zip(&vs).map(|(w, v)| w * v[c]).sum();
                    assert!((got - p[c]).abs() < 1e-9);
                }
            }
            other => panic!("expected feasible, got {other:?}"),
        }
    }

    #[test]
    fn outside_point_yields_separator() {
        let vs = unit_square();
        let p = vec![1.5, 0.5];
        match convex_membership(&vs, &p, &1e-9).unwrap() {
            Feasibility::Infeasible { farkas } => {
                // <y, (v, 1)> <= 0 for vertices, > 0 at the point.
                let at = |q: &[f64]| -> f64 { farkas[0] * q[0] + farkas[1] * q[1] + farkas[2] };
                for v in &vs {
                    assert!(at(v) <= 1e-9);
                }
                assert!(at(&p) > 1e-9);
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn exact_mode_decides_boundary_points() {
        let vs: Vec<Vec<BigRational>> = unit_square()
            .into_iter()
            .map(|v| v.into_iter().map(|x| rationalize(x, 1e-12)).collect())
            .collect();
        let on_edge = vec![rationalize(0.5, 1e-12), rationalize(0.0, 1e-12)];
        let zero = BigRational::from_integer(BigInt::from(0));
        assert!(matches!(
            convex_membership(&vs, &on_edge, &zero).unwrap(),
            Feasibility::Feasible { .. }
        ));
        let outside = vec![rationalize(0.5, 1e-12), rationalize(-1e-9, 1e-15)];
        assert!(matches!(
            convex_membership(&vs, &outside, &zero).unwrap(),
            Feasibility::Infeasible { .. }
        ));
    }

    #[test]
    fn rationalize_recovers_simple_fractions() {
        let third = rationalize(1.0 / 3.0, 1e-12);
        assert_eq!(third, BigRational::new(BigInt::from(1), BigInt::from(3)));
        let sixth = rationalize(1.0 / 6.0, 1e-12);
        assert_eq!(sixth, BigRational::new(BigInt::from(1), BigInt::from(6)));
        assert_eq!(
            rationalize(0.0, 1e-12),
            BigRational::from_integer(BigInt::from(0))
        );
        let neg = rationalize(-0.25, 1e-12);
        assert_eq!(neg, BigRational::new(BigInt::from(-1), BigInt::from(4)));
    }

    #[test]
    fn degenerate_vertex_sets_do_not_cycle() {
        // Many duplicate vertices force degenerate pivots; Bland must cope.
        let mut vs = unit_square();
        for _ in 0..4 {
            vs.extend(unit_square());
        }
        let p = vec![0.0, 0.0];
        assert!(matches!(
            convex_membership(&vs, &p, &1e-9).unwrap(),
            Feasibility::Feasible { .. }
        ));
    }
}
