//! Exact multivariate polynomial arithmetic over the rationals.
//!
//! Variables live in named blocks (see [`Ring`]); a polynomial always knows
//! its ring and binary operations refuse operands from different rings.

mod polynomial;
mod ring;
mod scalar;

use std::sync::Arc;

pub use polynomial::{ArithOp, Monomial, Polynomial};
pub use ring::{Ring, Role, Var, VariableBlock};
pub use scalar::{format_scalar, frac, int, parse_scalar, Scalar};

use crate::error::{Error, Result};

/// Coefficients of `phi(f_0 + t f_1 + ... + t^m f_m)` in `t^0, ..., t^m`.
///
/// `phi` must live in a ring with a single block of size `n`; every name in
/// `curve_blocks` must be a block of `target` with size `n`. The curve
/// variable is never materialized: each coordinate is carried as a power
/// series truncated after `t^m`.
pub fn substitute_curve(
    phi: &Polynomial,
    target: &Arc<Ring>,
    curve_blocks: &[&str],
) -> Result<Vec<Polynomial>> {
    let src = phi.ring();
    if src.blocks().len() != 1 {
        return Err(Error::Shape(format!("curve substitution expects a single-block ring, got {src}")));
    }
    let n = src.blocks()[0].size;
    if curve_blocks.is_empty() {
        return Err(Error::Shape("curve needs at least one block".into()));
    }
    let order = curve_blocks.len();
    // series[i][r] = coordinate i of f_r
    let mut series: Vec<Vec<Polynomial>> = vec![Vec::with_capacity(order); n];
    for name in curve_blocks {
        let vars = target.block_vars(name)?;
        if vars.len() != n {
            return Err(Error::Shape(format!(
                "block {name} has size {}, expected {n}",
                vars.len()
            )));
        }
        for (i, v) in vars.into_iter().enumerate() {
            series[i].push(Polynomial::var(target, v));
        }
    }

    let mut powers: std::collections::BTreeMap<(usize, u32), Vec<Polynomial>> = Default::default();
    let mut out = vec![Polynomial::zero(target); order];
    for (m, c) in phi.terms() {
        let mut acc = series_one(target, order);
        for (v, e) in m.iter() {
            let pw = powers
                .entry((v.0, e))
                .or_insert_with(|| series_pow(&series[v.0], e, target));
            acc = series_mul(&acc, pw);
        }
        for (slot, coeff) in out.iter_mut().zip(&acc) {
            slot.add_scaled(c, coeff);
        }
    }
    Ok(out)
}

fn series_one(ring: &Arc<Ring>, order: usize) -> Vec<Polynomial> {
    let mut s = vec![Polynomial::zero(ring); order];
    s[0] = Polynomial::one(ring);
    s
}

fn series_mul(a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
    let order = a.len();
    let ring = a[0].ring();
    (0..order)
        .map(|k| {
            let mut acc = Polynomial::zero(ring);
            for r in 0..=k {
                if !a[r].is_zero() && !b[k - r].is_zero() {
                    acc = &acc + &(&a[r] * &b[k - r]);
                }
            }
            acc
        })
        .collect()
}

fn series_pow(s: &[Polynomial], e: u32, ring: &Arc<Ring>) -> Vec<Polynomial> {
    let mut acc = series_one(ring, s.len());
    for _ in 0..e {
        acc = series_mul(&acc, s);
    }
    acc
}

/// A polynomial map into a product of named coordinate blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMap {
    ring: Arc<Ring>,
    components: Vec<Polynomial>,
    codomain: Vec<(String, usize)>,
}

impl PolyMap {
    pub fn new(
        ring: &Arc<Ring>,
        components: Vec<Polynomial>,
        codomain: Vec<(String, usize)>,
    ) -> Result<Self> {
        let dim: usize = codomain.iter().map(|(_, s)| s).sum();
        if dim != components.len() {
            return Err(Error::Shape(format!(
                "codomain has dimension {dim} but {} components were given",
                components.len()
            )));
        }
        for c in &components {
            if **c.ring() != **ring {
                return Err(Error::RingMismatch { left: c.ring().to_string(), right: ring.to_string() });
            }
        }
        Ok(PolyMap { ring: ring.clone(), components, codomain })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn codomain(&self) -> &[(String, usize)] {
        &self.codomain
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    /// Components belonging to the `idx`-th codomain block.
    pub fn block(&self, idx: usize) -> &[Polynomial] {
        let start: usize = self.codomain[..idx].iter().map(|(_, s)| s).sum();
        &self.components[start..start + self.codomain[idx].1]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    pub fn into_components(self) -> Vec<Polynomial> {
        self.components
    }
}
