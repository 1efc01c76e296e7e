//! Seeded generators for test instances.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64`, and draws happen in a fixed documented order, so an
//! instance is a pure function of its seed.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::Matrix;
use crate::poly::{frac, int, Monomial, Polynomial, Ring, Scalar, Var};

pub type Rng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero `p/q` with `|p| <= 5`, `1 <= q <= 3`.
pub fn random_scalar(rng: &mut Rng) -> Scalar {
    let mut p = rng.gen_range(1..=5i64);
    if rng.gen_bool(0.5) {
        p = -p;
    }
    frac(p, rng.gen_range(1..=3i64))
}

/// Integer in `[-bound, bound]`.
pub fn random_int(rng: &mut Rng, bound: i64) -> Scalar {
    int(rng.gen_range(-bound..=bound))
}

/// Monomial in `vars` of total degree exactly `degree`.
pub fn random_monomial(rng: &mut Rng, vars: &[Var], degree: u32) -> Monomial {
    if vars.is_empty() {
        return Monomial::one();
    }
    Monomial::from_exponents((0..degree).map(|_| (*vars.choose(rng).unwrap(), 1)))
}

/// Sum of `terms` random terms in `vars`, each of degree at most
/// `max_degree` (terms may cancel or coincide).
pub fn random_polynomial(rng: &mut Rng, ring: &Arc<Ring>, vars: &[Var], max_degree: u32, terms: usize) -> Polynomial {
    let mut p = Polynomial::zero(ring);
    for _ in 0..terms {
        let d = rng.gen_range(0..=max_degree);
        let m = random_monomial(rng, vars, d);
        p.add_term(m, random_scalar(rng));
    }
    p
}

/// Like [`random_polynomial`] with a random term count in `1..=max_terms`.
pub fn random_sparse(rng: &mut Rng, ring: &Arc<Ring>, vars: &[Var], max_degree: u32, max_terms: usize) -> Polynomial {
    if max_terms == 0 {
        return Polynomial::zero(ring);
    }
    let t = rng.gen_range(1..=max_terms);
    random_polynomial(rng, ring, vars, max_degree, t)
}

/// Coefficient maps `b_0, ..., b_level`, each with `dim` entries over all
/// variables of `ring`.
pub fn random_coefficients(
    rng: &mut Rng,
    ring: &Arc<Ring>,
    dim: usize,
    level: usize,
    max_degree: u32,
    max_terms: usize,
) -> Vec<Vec<Polynomial>> {
    let vars: Vec<Var> = (0..ring.nvars()).map(Var).collect();
    (0..=level)
        .map(|_| (0..dim).map(|_| random_sparse(rng, ring, &vars, max_degree, max_terms)).collect())
        .collect()
}

/// Invertible integer matrix with entries in `[-3, 3]`.
pub fn random_invertible(rng: &mut Rng, n: usize) -> Matrix {
    loop {
        let rows = (0..n).map(|_| (0..n).map(|_| random_int(rng, 3)).collect()).collect();
        let m = Matrix::from_rows(rows).expect("square");
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// Point with small integer coordinates.
pub fn random_point(rng: &mut Rng, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| random_int(rng, 4)).collect()
}
