//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::ring::{Ring, Var};
use super::scalar::{int, Scalar};
use crate::error::{Error, Result};

/// Product of variable powers, stored as `(variable, exponent)` pairs sorted
/// by variable with every exponent positive.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(usize, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v.0, 1)])
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs.
    pub fn from_exponents(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut m: BTreeMap<usize, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *m.entry(v.0).or_default() += e;
        }
        Monomial(m.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0.iter().map(|&(v, e)| (Var(v), e))
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .binary_search_by_key(&v.0, |&(w, _)| w)
            .map_or(0, |i| self.0[i].1)
    }

    /// Sum of the exponents of the variables in `vars`.
    pub fn degree_in(&self, vars: &[Var]) -> u32 {
        self.0
            .iter()
            .filter(|(w, _)| vars.iter().any(|v| v.0 == *w))
            .map(|&(_, e)| e)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Lowers the exponent of `v` by one; returns the old exponent, or `None`
    /// when `v` does not occur.
    fn lower(&self, v: Var) -> Option<(u32, Monomial)> {
        let i = self.0.binary_search_by_key(&v.0, |&(w, _)| w).ok()?;
        let e = self.0[i].1;
        let mut rest = self.0.clone();
        if e == 1 {
            rest.remove(i);
        } else {
            rest[i].1 -= 1;
        }
        Some((e, Monomial(rest)))
    }

    /// Splits into the part on `vars` and the rest.
    fn split(&self, vars: &[Var]) -> (Monomial, Monomial) {
        let (inside, outside) = self.0.iter().partition(|(w, _)| vars.iter().any(|v| v.0 == *w));
        (Monomial(inside), Monomial(outside))
    }
}

/// Element of the polynomial ring `Q[ring variables]`, in canonical form: a
/// sorted term map with no zero coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, Scalar>,
}

/// The binary operations exposed through [`Polynomial::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: Scalar) -> Self {
        Self::monomial(ring, Monomial::one(), c)
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, Scalar::one())
    }

    pub fn var(ring: &Arc<Ring>, v: Var) -> Self {
        Self::monomial(ring, Monomial::var(v), Scalar::one())
    }

    /// The variable `(block, index)`.
    pub fn named_var(ring: &Arc<Ring>, block: &str, index: usize) -> Result<Self> {
        Ok(Self::var(ring, ring.var(block, index)?))
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero(ring);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Highest degree in the variables `vars`; `None` for zero.
    pub fn degree_in(&self, vars: &[Var]) -> Option<u32> {
        self.terms.keys().map(|m| m.degree_in(vars)).max()
    }

    pub fn depends_on(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    /// Adds `c * m` in place, keeping the canonical form.
    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn same_ring(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch { left: self.ring.to_string(), right: other.ring.to_string() })
        }
    }

    pub fn arith(&self, other: &Polynomial, op: ArithOp) -> Result<Polynomial> {
        self.same_ring(other)?;
        Ok(match op {
            ArithOp::Add => {
                let mut out = self.clone();
                out.add_assign_unchecked(other, &Scalar::one());
                out
            }
            ArithOp::Sub => {
                let mut out = self.clone();
                out.add_assign_unchecked(other, &-Scalar::one());
                out
            }
            ArithOp::Mul => self.mul_unchecked(other),
        })
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.arith(other, ArithOp::Add)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.arith(other, ArithOp::Sub)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.arith(other, ArithOp::Mul)
    }

    /// `self += c * other`. Panics on ring mismatch.
    pub fn add_scaled(&mut self, c: &Scalar, other: &Polynomial) {
        self.same_ring(other).expect("add_scaled");
        self.add_assign_unchecked(other, c);
    }

    fn add_assign_unchecked(&mut self, other: &Polynomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Formal partial derivative with respect to `v`.
    pub fn derivative(&self, v: Var) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            if let Some((e, rest)) = m.lower(v) {
                out.add_term(rest, c * int(e as i64));
            }
        }
        out
    }

    /// Partial derivative with respect to the variable `(block, index)`.
    pub fn partial_derivative(&self, block: &str, index: usize) -> Result<Polynomial> {
        Ok(self.derivative(self.ring.var(block, index)?))
    }

    /// Decomposition `p = sum_d p_d` where `p_d` is homogeneous of degree `d`
    /// in `vars`; other variables count as constants. The zero polynomial
    /// yields an empty map.
    pub fn homogeneous_components_in(&self, vars: &[Var]) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree_in(vars))
                .or_insert_with(|| Polynomial::zero(&self.ring))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Grading by the degree in the named block.
    pub fn homogeneous_components(&self, block: &str) -> Result<BTreeMap<u32, Polynomial>> {
        let vars = self.ring.block_vars(block)?;
        Ok(self.homogeneous_components_in(&vars))
    }

    /// Writes `p = sum_m m(vars) * coeff_m` with `coeff_m` free of `vars`.
    pub fn coefficients_in(&self, vars: &[Var]) -> BTreeMap<Monomial, Polynomial> {
        let mut out: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (inside, outside) = m.split(vars);
            out.entry(inside)
                .or_insert_with(|| Polynomial::zero(&self.ring))
                .add_term(outside, c.clone());
        }
        out
    }

    /// Moves the polynomial to `target`, matching variables by block name and
    /// index. Fails if a used variable has no counterpart.
    pub fn embed(&self, target: &Arc<Ring>) -> Result<Polynomial> {
        if Arc::ptr_eq(&self.ring, target) {
            return Ok(self.clone());
        }
        let mut map: BTreeMap<usize, Var> = BTreeMap::new();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut pairs = Vec::with_capacity(m.0.len());
            for (v, e) in m.iter() {
                let w = match map.get(&v.0) {
                    Some(w) => *w,
                    None => {
                        let (b, i) = self.ring.locate(v);
                        let w = target
                            .var(&b.name, i)
                            .map_err(|_| Error::RingMismatch {
                                left: self.ring.to_string(),
                                right: target.to_string(),
                            })?;
                        map.insert(v.0, w);
                        w
                    }
                };
                pairs.push((w, e));
            }
            out.add_term(Monomial::from_exponents(pairs), c.clone());
        }
        Ok(out)
    }

    /// Replaces every variable `v` of the ring by `images[v]`, all of which
    /// live in `target`.
    pub fn substitute(&self, target: &Arc<Ring>, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::Shape(format!(
                "substitution needs {} images, got {}",
                self.ring.nvars(),
                images.len()
            )));
        }
        for img in images {
            if *img.ring != **target {
                return Err(Error::RingMismatch {
                    left: img.ring.to_string(),
                    right: target.to_string(),
                });
            }
        }
        let mut powers: BTreeMap<(usize, u32), Polynomial> = BTreeMap::new();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for &(v, e) in &m.0 {
                let pw = powers.entry((v, e)).or_insert_with(|| images[v].pow(e));
                term = term.mul_unchecked(pw);
            }
            out.add_assign_unchecked(&term, &Scalar::one());
        }
        Ok(out)
    }

    /// Replaces the listed variables by rational values; the ring is kept.
    pub fn specialize(&self, vars: &[Var], values: &[Scalar]) -> Polynomial {
        assert_eq!(vars.len(), values.len());
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::new();
            for (v, e) in m.iter() {
                match vars.iter().position(|w| *w == v) {
                    Some(i) => coeff *= num_traits::pow(values[i].clone(), e as usize),
                    None => rest.push((v, e)),
                }
            }
            out.add_term(Monomial::from_exponents(rest), coeff);
        }
        out
    }

    /// Value at a point given for every ring variable.
    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.ring.nvars(), "evaluation point has wrong length");
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.iter() {
                t *= num_traits::pow(point[v.0].clone(), e as usize);
            }
            acc += t;
        }
        acc
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c < &Scalar::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (v, e) in m.iter() {
                let name = self.ring.var_name(v);
                factors.push(if e == 1 { name } else { format!("{name}^{e}") });
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $op:expr) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics when the rings differ; use [`Polynomial::arith`] for a
            /// checked variant.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.arith(rhs, $op).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, ArithOp::Add);
binop!(Sub, sub, ArithOp::Sub);
binop!(Mul, mul, ArithOp::Mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Scalar::one())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ring::VariableBlock;
    use crate::poly::scalar::frac;

    fn xy() -> (Arc<Ring>, Polynomial, Polynomial) {
        let r = Ring::new(vec![VariableBlock::state("v", 2)]).unwrap();
        let x = Polynomial::named_var(&r, "v", 0).unwrap();
        let y = Polynomial::named_var(&r, "v", 1).unwrap();
        (r, x, y)
    }

    #[test]
    fn cancellation_and_difference_of_squares() {
        let (r, x, y) = xy();
        let one = Polynomial::one(&r);
        assert_eq!(&(&x + &one) + &(&x - &one), x.scale(&int(2)));
        assert_eq!(&(&x + &y) * &(&x - &y), &x.pow(2) - &y.pow(2));
        let p = &(&x * &y) + &one;
        assert!((&Polynomial::zero(&r) * &p).is_zero());
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let (_, x, _) = xy();
        let r2 = Ring::new(vec![VariableBlock::state("w", 2)]).unwrap();
        let z = Polynomial::named_var(&r2, "w", 0).unwrap();
        let err = x.checked_add(&z).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("v:2:state") && msg.contains("w:2:state"), "{msg}");
    }

    #[test]
    fn derivatives() {
        let (r, x, y) = xy();
        let p = &x.pow(2) * &y;
        assert_eq!(p.partial_derivative("v", 0).unwrap(), (&x * &y).scale(&int(2)));
        assert!(Polynomial::constant(&r, int(5)).partial_derivative("v", 0).unwrap().is_zero());
        let q = (&x.pow(2) + &y.pow(2)).scale(&frac(1, 2));
        assert_eq!(q.partial_derivative("v", 0).unwrap(), x);
        assert!(p.partial_derivative("v", 2).is_err());
        assert!(p.partial_derivative("u", 0).is_err());
    }

    #[test]
    fn homogeneous_split_by_block() {
        let r = Ring::new(vec![VariableBlock::state("x", 1), VariableBlock::parameter("w", 1)])
            .unwrap();
        let x = Polynomial::named_var(&r, "x", 0).unwrap();
        let w = Polynomial::named_var(&r, "w", 0).unwrap();
        let one = Polynomial::one(&r);
        let p = &(&x.pow(2) + &(&w * &x)) + &one;
        let comps = p.homogeneous_components("x").unwrap();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[&2], x.pow(2));
        assert_eq!(comps[&1], &w * &x);
        assert_eq!(comps[&0], one);
        assert_eq!(x.pow(3).homogeneous_components("x").unwrap().len(), 1);
    }

    #[test]
    fn embed_and_substitute() {
        let (_, x, y) = xy();
        let big = Ring::new(vec![VariableBlock::parameter("w", 1), VariableBlock::state("v", 2)])
            .unwrap();
        let p = &x * &y;
        let q = p.embed(&big).unwrap();
        assert_eq!(q.to_string(), "v.0*v.1");
        assert!(q.embed(x.ring()).is_ok());
        let w = Polynomial::named_var(&big, "w", 0).unwrap();
        assert!(w.embed(x.ring()).is_err());

        // x -> x + y, y -> x - y
        let xb = Polynomial::named_var(&big, "v", 0).unwrap();
        let yb = Polynomial::named_var(&big, "v", 1).unwrap();
        let s = p.substitute(&big, &[&xb + &yb, &xb - &yb]).unwrap();
        assert_eq!(s, &xb.pow(2) - &yb.pow(2));
    }

    #[test]
    fn evaluate_and_specialize() {
        let (_, x, y) = xy();
        let p = &(&x.pow(2) * &y) + &x.scale(&frac(1, 3));
        assert_eq!(p.evaluate(&[int(3), int(2)]), int(19));
        let v0 = x.ring().var("v", 0).unwrap();
        assert_eq!(p.specialize(&[v0], &[int(3)]), &y.scale(&int(9)) + &Polynomial::one(x.ring()));
    }

    #[test]
    fn display_is_readable() {
        let (_, x, y) = xy();
        let p = &x.scale(&frac(-1, 2)) + &(&x * &y).scale(&int(3));
        assert_eq!(p.to_string(), "-1/2*v.0 + 3*v.0*v.1");
    }
}
