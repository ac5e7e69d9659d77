//! Difference-distinct phase schedules for the diagonal-unitary twirl.
//!
//! The twirl erases exactly the unwanted matrix entries when the phase
//! exponents form a B2 (Sidon) set modulo the cycle length: all pairwise
//! differences distinct. We take the greedy B2 sequence 0, 1, 3, 7, 12, 20,
//! 30, 44, ... and the smallest prime exceeding twice its largest term, which
//! keeps every difference inside `(-N/2, N/2)` and therefore distinct mod N.
//! The property is still verified exhaustively before a schedule is returned.

use crate::error::{Error, Result};
use crate::scalar::{r, Real};
use std::collections::HashSet;

/// Phase data for one twirl: `U_1 = diag(exp(i * exponents[j] * phi))` and
/// `U_2 = conj(U_1)`, cycled `modulus` times with `phi = 2 pi / modulus`.
#[derive(Debug, Clone)]
pub struct TwirlSchedule<T: Real> {
    n: usize,
    exponents: Vec<u64>,
    modulus: u64,
    phi: T,
}

impl<T: Real> TwirlSchedule<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `2 pi / modulus` in radians.
    pub fn phi(&self) -> T {
        self.phi
    }
}

/// First `n` terms of the greedy B2 sequence starting at 0.
pub fn mian_chowla(n: usize) -> Vec<u64> {
    let mut seq: Vec<u64> = Vec::with_capacity(n);
    let mut sums: HashSet<u64> = HashSet::new();
    let mut candidate = 0u64;
    while seq.len() < n {
        // Pairwise sums distinct <=> pairwise differences distinct.
        let ok = seq.iter().all(|&a| !sums.contains(&(a + candidate)))
            && !sums.contains(&(candidate + candidate));
        if ok {
            for &a in &seq {
                sums.insert(a + candidate);
            }
            sums.insert(candidate + candidate);
            seq.push(candidate);
        }
        candidate += 1;
    }
    seq
}

fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= x {
        if x.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn smallest_prime_above(x: u64) -> u64 {
    let mut p = x + 1;
    while !is_prime(p) {
        p += 1;
    }
    p
}

/// Build the length-`n` twirl schedule and verify the difference-distinctness
/// invariant exhaustively. The verification failure path exists for safety
/// and should never fire.
pub fn sidon_exponents<T: Real>(n: usize) -> Result<TwirlSchedule<T>> {
    assert!(n >= 1, "schedule needs at least one exponent");
    let exponents = mian_chowla(n);
    let max = *exponents.last().expect("non-empty");
    let modulus = smallest_prime_above(2 * max);

    let mut seen: HashSet<u64> = HashSet::new();
    for (i, &a) in exponents.iter().enumerate() {
        for (j, &b) in exponents.iter().enumerate() {
            if i == j {
                continue;
            }
            let diff = (a + modulus - b) % modulus;
            if !seen.insert(diff) {
                return Err(Error::SidonCheckFailed { n, modulus });
            }
        }
    }

    let phi = T::PI() * r::<T>(2.0) / r::<T>(modulus as f64);
    Ok(TwirlSchedule {
        n,
        exponents,
        modulus,
        phi,
    })
}
