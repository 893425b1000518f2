//! Seeded random sampling of coordinate points and test polynomials.
//! Every randomized check draws from a ChaCha stream so runs are
//! reproducible from the recorded seed.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ncalgebra::{Gen, NCPoly, Signature};
use crate::rational::{q, Q};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_gen(sig: Signature, rng: &mut SeededRng) -> Gen {
    Gen::new(rng.gen_range(1..=sig.sites()), rng.gen_range(1..=sig.rank()), rng.gen_range(1..=sig.rank()))
}

/// Nonzero integer in `[-bound, bound]`.
fn nonzero(rng: &mut SeededRng, bound: i64) -> i64 {
    loop {
        let c = rng.gen_range(-bound..=bound);
        if c != 0 {
            return c;
        }
    }
}

/// Sum of `terms` random words of length `0..=max_degree` with small
/// nonzero integer coefficients, brought to normal form.
pub fn random_poly(sig: Signature, rng: &mut SeededRng, max_degree: usize, terms: usize) -> NCPoly {
    let mut p = NCPoly::zero(sig);
    for _ in 0..terms {
        let len = rng.gen_range(0..=max_degree);
        let word: Vec<Gen> = (0..len).map(|_| random_gen(sig, rng)).collect();
        let w = NCPoly::word(sig, &word).expect("generators are in range");
        p = &p + &w.scale(&q(nonzero(rng, 3)));
    }
    p
}

/// Random polynomial of exact degree `degree` with at least one
/// top-degree term.
pub fn random_homogeneous_top(sig: Signature, rng: &mut SeededRng, degree: usize, terms: usize) -> NCPoly {
    loop {
        let p = random_poly(sig, rng, degree, terms);
        if p.degree() == Some(degree) {
            return p;
        }
    }
}

/// Integer point of `gl(r)^N` with coordinates in `[-bound, bound]`.
pub fn random_point(sig: Signature, rng: &mut SeededRng, bound: i64) -> BTreeMap<Gen, Q> {
    sig.generators().into_iter().map(|g| (g, q(rng.gen_range(-bound..=bound)))).collect()
}

/// Random integer matrix, row-major.
pub fn random_matrix(rng: &mut SeededRng, n: usize, bound: i64) -> Vec<Q> {
    (0..n * n).map(|_| q(rng.gen_range(-bound..=bound))).collect()
}
