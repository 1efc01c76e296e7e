//! Oracles shared by the integration tests. They recompute quantities by
//! routes that avoid the library code under test.

#![allow(dead_code)]

use std::sync::Arc;

use num_traits::{One, Zero};

use takiff::lie::LieAlgebra;
use takiff::matrix::Matrix;
use takiff::poly::{Monomial, Polynomial, Ring, Scalar, Var, VariableBlock};

/// Row-reduces `[a | b]` and returns one solution (free unknowns zero), or
/// `None` when the system is inconsistent.
pub fn gauss_solve(mut a: Vec<Vec<Scalar>>, mut b: Vec<Scalar>) -> Option<Vec<Scalar>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        b.swap(r, p);
        let inv = Scalar::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        b[r] *= &inv;
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in 0..cols {
                    let t = &f * &a[r][k];
                    a[i][k] -= t;
                }
                let t = &f * &b[r];
                b[i] -= t;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if b[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut x = vec![Scalar::zero(); cols];
    for (i, c) in pivots.iter().enumerate() {
        x[*c] = b[i].clone();
    }
    Some(x)
}

/// All exponent vectors in `n` variables of total degree `d`.
pub fn exponent_vectors(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in exponent_vectors(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn monomial_of(vars: &[Var], exps: &[u32]) -> Monomial {
    Monomial::from_exponents(vars.iter().copied().zip(exps.iter().copied()))
}

/// Exhaustive antisymmetry and Jacobi check straight from the nested
/// constants. Jacobi is alternating once antisymmetry holds, so triples
/// `i < j < k` cover everything.
pub fn lie_axioms_hold(g: &LieAlgebra) -> bool {
    let d = g.dim();
    let c = g.constants();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                if c[i][j][k] != -c[j][i][k].clone() {
                    return false;
                }
            }
        }
    }
    let sparse: Vec<Vec<Vec<(usize, Scalar)>>> = c
        .iter()
        .map(|row| {
            row.iter()
                .map(|col| col.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (k, x.clone())).collect())
                .collect()
        })
        .collect();
    let mut acc = vec![Scalar::zero(); d];
    for i in 0..d {
        for j in i + 1..d {
            for k in j + 1..d {
                acc.iter_mut().for_each(Scalar::set_zero);
                for (a, b, e) in [(i, j, k), (j, k, i), (k, i, j)] {
                    // [x_a, [x_b, x_e]]
                    for (l, x) in &sparse[b][e] {
                        for (n, y) in &sparse[a][*l] {
                            acc[*n] += x * y;
                        }
                    }
                }
                if acc.iter().any(|x| !x.is_zero()) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    out[(i * b.rows() + k, j * b.cols() + l)] = &a[(i, j)] * &b[(k, l)];
                }
            }
        }
    }
    out
}

/// Nilpotent shift `N` of size `m + 1`: `N^r` realizes `T^r` in
/// `K[T]/(T^{m+1})`.
pub fn shift(m: usize) -> Matrix {
    let mut n = Matrix::zeros(m + 1, m + 1);
    for i in 0..m {
        n[(i + 1, i)] = Scalar::one();
    }
    n
}

pub fn matrix_pow(a: &Matrix, e: usize) -> Matrix {
    (0..e).fold(Matrix::identity(a.rows()), |acc, _| acc.mul(a))
}

/// Checks that `[X_a, X_b] = sum_c k[a][b][c] X_c` for a list of matrices.
pub fn brackets_match(mats: &[Matrix], g: &LieAlgebra) -> bool {
    let d = g.dim();
    (0..d).all(|a| {
        (0..d).all(|b| {
            let lhs = mats[a].mul(&mats[b]).sub(&mats[b].mul(&mats[a]));
            let mut rhs = Matrix::zeros(lhs.rows(), lhs.cols());
            for (c, m) in mats.iter().enumerate() {
                rhs.add_scaled(g.constant(a, b, c), m);
            }
            lhs == rhs
        })
    })
}

/// `phi(f_0 + t f_1 + ... + t^m f_m)` expanded with a real variable `t`;
/// returns the `t^k` coefficients for `k <= m` over `target` (the same
/// blocks without `t`).
pub fn literal_curve_coefficients(phi: &Polynomial, target: &Arc<Ring>, m: usize) -> Vec<Polynomial> {
    let n = phi.ring().nvars();
    let mut blocks = target.blocks().to_vec();
    blocks.push(VariableBlock::state("t", 1));
    let with_t = Ring::new(blocks).unwrap();
    let t = Polynomial::var(&with_t, with_t.var("t", 0).unwrap());
    let images: Vec<Polynomial> = (0..n)
        .map(|i| {
            let mut s = Polynomial::zero(&with_t);
            for k in 0..=m {
                let f = Polynomial::var(&with_t, with_t.var(&format!("f{k}"), i).unwrap());
                s = &s + &(&t.pow(k as u32) * &f);
            }
            s
        })
        .collect();
    let full = phi.substitute(&with_t, &images).unwrap();
    let comps = full.homogeneous_components("t").unwrap();
    (0..=m)
        .map(|k| match comps.get(&(k as u32)) {
            Some(c) => {
                // divide out t^k, then drop the t block
                let tv = with_t.var("t", 0).unwrap();
                let mut p = Polynomial::zero(target);
                for (mono, coeff) in c.terms() {
                    let rest = Monomial::from_exponents(mono.iter().filter(|(v, _)| *v != tv));
                    let rest = Polynomial::monomial(&with_t, rest, coeff.clone());
                    p = &p + &rest.embed(target).unwrap();
                }
                p
            }
            None => Polynomial::zero(target),
        })
        .collect()
}

/// `sum_{r <= j} (sum_k b_r[k] M_k) f_{j-r}` computed entrywise.
pub fn reconstruct(mats: &[Matrix], b: &[Vec<Polynomial>], ring: &Arc<Ring>) -> Vec<Polynomial> {
    let n = mats.first().map_or_else(|| ring.block("f0").unwrap().size, Matrix::rows);
    let m = b.len() - 1;
    let f = |j: usize, c: usize| Polynomial::var(ring, ring.var(&format!("f{j}"), c).unwrap());
    let mut out = Vec::new();
    for j in 0..=m {
        for a in 0..n {
            let mut s = Polynomial::zero(ring);
            for r in 0..=j {
                for (k, mk) in mats.iter().enumerate() {
                    for c in 0..n {
                        if !mk[(a, c)].is_zero() {
                            let term = b[r][k].scale(&mk[(a, c)]);
                            s = &s + &(&term * &f(j - r, c));
                        }
                    }
                }
            }
            out.push(s);
        }
    }
    out
}

/// `sum_v a_v dphi/dv` over the state variables, computed term by term.
pub fn field_derivative(phi: &Polynomial, field: &[Polynomial]) -> Polynomial {
    let ring = field[0].ring();
    let phi = phi.embed(ring).unwrap();
    let mut s = Polynomial::zero(ring);
    for (v, a) in ring.state_vars().into_iter().zip(field) {
        s = &s + &(a * &phi.derivative(v));
    }
    s
}
