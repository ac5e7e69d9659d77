//! Shared helpers for unit tests.

use crate::mat::ComplexMatrix;
use crate::scalar::C;
use crate::state::PureState;
use rand::{rngs::StdRng, Rng};

pub fn random_pure(n: usize, rng: &mut StdRng) -> PureState<f64> {
    let mut amps: Vec<C<f64>> = (0..n * n)
        .map(|_| C::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
        .collect();
    let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amps {
        *a = a.unscale(norm);
    }
    PureState::new(n, amps, 1e-9).unwrap()
}

/// Random descending Schmidt spectrum with unit square sum, bounded away
/// from zero.
pub fn random_spectrum(n: usize, rng: &mut StdRng) -> Vec<f64> {
    let mut l: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() + 0.05).collect();
    let norm: f64 = l.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in &mut l {
        *x /= norm;
    }
    l.sort_by(|a, b| b.partial_cmp(a).unwrap());
    l
}

/// Random unitary via Gram-Schmidt of a random complex matrix.
pub fn random_unitary(n: usize, rng: &mut StdRng) -> ComplexMatrix<f64> {
    let mut cols: Vec<Vec<C<f64>>> = Vec::new();
    while cols.len() < n {
        let mut w: Vec<C<f64>> = (0..n)
            .map(|_| C::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        for _ in 0..2 {
            for u in &cols {
                let ip: C<f64> = u.iter().zip(w.iter()).map(|(ui, wi)| ui.conj() * wi).sum();
                for (ui, wi) in u.iter().zip(w.iter_mut()) {
                    *wi -= ui * ip;
                }
            }
        }
        let norm: f64 = w.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.1 {
            for x in &mut w {
                *x = x.unscale(norm);
            }
            cols.push(w);
        }
    }
    ComplexMatrix::from_fn(n, |i, k| cols[k][i])
}
