//! Killing fields acting on polynomials, invariance tests, and the lifts
//! `Phi_0, ..., Phi_m` of a `g`-invariant polynomial to `V_m`.
//!
//! Polynomials on a representation space use the state variables of their
//! ring, in ring order, as coordinates; parameter blocks ride along as
//! constants. The lifts are computed twice, by truncated curve substitution
//! ([`lift_invariant`]) and by the multinomial sum over partitions of `k`
//! ([`faa_di_bruno_lift`]), so that each can be checked against the other.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::Representation;
use crate::matrix::Matrix;
use crate::poly::{
    format_scalar, frac, int, substitute_curve, PolyMap, Polynomial, Ring, Scalar, Var,
    VariableBlock,
};
use crate::takiff::{block_names, build_takiff, lift_representation, LiftedRepresentation};

/// Ring `Q[v.0, ..., v.{n-1}]` used for polynomials on `V`.
pub fn base_ring(n: usize) -> Arc<Ring> {
    Ring::new(vec![VariableBlock::state("v", n)]).expect("base ring")
}

/// `1/2 v^T G v` on [`base_ring`].
pub fn quadratic_invariant(gram: &Matrix) -> Polynomial {
    let n = gram.rows();
    let ring = base_ring(n);
    let vars: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(&ring, Var(i))).collect();
    let mut q = Polynomial::zero(&ring);
    let half = frac(1, 2);
    for i in 0..n {
        for j in 0..n {
            if !gram[(i, j)].is_zero() {
                q.add_scaled(&(&gram[(i, j)] * &half), &(&vars[i] * &vars[j]));
            }
        }
    }
    q
}

/// `sum_a u_a * dphi/dvars_a`.
pub fn directional_derivative(phi: &Polynomial, vars: &[Var], u: &[Polynomial]) -> Polynomial {
    assert_eq!(vars.len(), u.len());
    let mut out = Polynomial::zero(phi.ring());
    for (v, ua) in vars.iter().zip(u) {
        if ua.is_zero() {
            continue;
        }
        let d = phi.derivative(*v);
        if !d.is_zero() {
            out = &out + &(ua * &d);
        }
    }
    out
}

/// Coordinates of `M v` with `v` the state variables of `ring`.
pub fn linear_field(m: &Matrix, ring: &Arc<Ring>, state: &[Var]) -> Vec<Polynomial> {
    (0..m.rows())
        .map(|a| {
            let mut p = Polynomial::zero(ring);
            for (b, v) in state.iter().enumerate() {
                p.add_scaled(&m[(a, b)], &Polynomial::var(ring, *v));
            }
            p
        })
        .collect()
}

fn checked_state(rep: &Representation, ring: &Arc<Ring>) -> Result<Vec<Var>> {
    let state = ring.state_vars();
    if state.len() != rep.space_dim() {
        return Err(Error::Shape(format!(
            "ring {ring} has {} state variables, representation acts on dimension {}",
            state.len(),
            rep.space_dim()
        )));
    }
    Ok(state)
}

/// Killing field `v -> rho(x) v` of an element `x` whose coordinates may be
/// polynomials (in parameters and state alike).
#[derive(Debug, Clone)]
pub struct KillingField<'a> {
    rep: &'a Representation,
    element: Vec<Polynomial>,
}

impl<'a> KillingField<'a> {
    pub fn new(rep: &'a Representation, element: Vec<Polynomial>) -> Result<Self> {
        if element.len() != rep.algebra().dim() {
            return Err(Error::Shape("element has wrong number of coordinates".into()));
        }
        if let Some(w) = element.windows(2).find(|w| **w[0].ring() != **w[1].ring()) {
            return Err(Error::RingMismatch { left: w[0].ring().to_string(), right: w[1].ring().to_string() });
        }
        Ok(KillingField { rep, element })
    }

    /// The constant element `x_i` over `ring`.
    pub fn basis(rep: &'a Representation, index: usize, ring: &Arc<Ring>) -> Self {
        let element = (0..rep.algebra().dim())
            .map(|k| if k == index { Polynomial::one(ring) } else { Polynomial::zero(ring) })
            .collect();
        KillingField { rep, element }
    }

    /// Components `rho(x) v` over the element's ring.
    pub fn components(&self) -> Result<Vec<Polynomial>> {
        let ring = self.element[0].ring();
        let state = checked_state(self.rep, ring)?;
        let mut out = vec![Polynomial::zero(ring); self.rep.space_dim()];
        for (c, m) in self.element.iter().zip(self.rep.matrices()) {
            if c.is_zero() {
                continue;
            }
            for (slot, lin) in out.iter_mut().zip(linear_field(m, ring, &state)) {
                if !lin.is_zero() {
                    *slot = &*slot + &(c * &lin);
                }
            }
        }
        Ok(out)
    }

    /// `L_x phi = <dphi, rho(x) v>`.
    pub fn apply(&self, phi: &Polynomial) -> Result<Polynomial> {
        let state = checked_state(self.rep, phi.ring())?;
        let comps = self.components()?;
        Ok(directional_derivative(phi, &state, &comps))
    }
}

/// `L_{x_i} phi = sum_a (rho(x_i) v)_a dphi/dv_a`.
pub fn apply_killing(rep: &Representation, index: usize, phi: &Polynomial) -> Result<Polynomial> {
    if index >= rep.algebra().dim() {
        return Err(Error::Shape(format!("basis index {index} out of range")));
    }
    let state = checked_state(rep, phi.ring())?;
    let comps = linear_field(rep.matrix(index), phi.ring(), &state);
    Ok(directional_derivative(phi, &state, &comps))
}

/// First basis Killing field that does not annihilate `phi`, with its
/// residual.
pub fn invariance_witness(rep: &Representation, phi: &Polynomial) -> Result<Option<(usize, Polynomial)>> {
    for i in 0..rep.algebra().dim() {
        let r = apply_killing(rep, i, phi)?;
        if !r.is_zero() {
            return Ok(Some((i, r)));
        }
    }
    Ok(None)
}

pub fn is_invariant(rep: &Representation, phi: &Polynomial) -> Result<bool> {
    Ok(invariance_witness(rep, phi)?.is_none())
}

/// Generators of (part of) the invariant algebra of a representation.
///
/// Each generator is checked at construction. Since every `L_x` is a
/// derivation, invariance of the generators gives invariance of everything
/// they generate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantFamily {
    label: String,
    generators: Vec<Polynomial>,
}

impl InvariantFamily {
    pub fn new(rep: &Representation, label: impl Into<String>, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            check_base_polynomial(g, rep.space_dim())?;
            if let Some((index, residual)) = invariance_witness(rep, g)? {
                return Err(Error::NotInvariant { index, residual });
            }
        }
        Ok(InvariantFamily { label: label.into(), generators })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }
}

fn check_base_polynomial(phi: &Polynomial, n: usize) -> Result<()> {
    let r = phi.ring();
    if r.blocks().len() != 1 || r.blocks()[0].size != n {
        return Err(Error::Shape(format!(
            "expected a polynomial over a single block of size {n}, got ring {r}"
        )));
    }
    Ok(())
}

/// `[Phi_0, ..., Phi_m]`, the coefficients of `t^k` in
/// `phi(f_0 + t f_1 + ... + t^m f_m)`, over the ring `f0, ..., fm`.
///
/// Refuses a non-invariant `phi` unless `allow_noninvariant` is set.
pub fn lift_invariant(
    lifted: &LiftedRepresentation,
    phi: &Polynomial,
    allow_noninvariant: bool,
) -> Result<Vec<Polynomial>> {
    let base = lifted.base_rep();
    check_base_polynomial(phi, base.space_dim())?;
    if !allow_noninvariant {
        if let Some((index, residual)) = invariance_witness(base, phi)? {
            return Err(Error::NotInvariant { index, residual });
        }
    }
    let ring = lifted.ring(&[])?;
    let names = block_names(lifted.level());
    let blocks: Vec<&str> = names.iter().map(String::as_str).collect();
    substitute_curve(phi, &ring, &blocks)
}

/// Same values as [`lift_invariant`], computed as
/// `Phi_k = sum 1/(q_1! ... q_k!) d^q phi(f_0)(f_1^[q_1], ..., f_k^[q_k])`
/// over `q_1 + 2 q_2 + ... + k q_k = k`, with the symmetric multidifferential
/// evaluated by iterated directional derivatives.
pub fn faa_di_bruno_lift(phi: &Polynomial, level: usize) -> Result<Vec<Polynomial>> {
    let src = phi.ring();
    if src.blocks().len() != 1 {
        return Err(Error::Shape(format!("expected a single-block ring, got {src}")));
    }
    let n = src.blocks()[0].size;
    let names = block_names(level);

    let mut work_blocks = vec![VariableBlock::state("x", n)];
    work_blocks.extend(names.iter().map(|b| VariableBlock::state(b.clone(), n)));
    let work = Ring::new(work_blocks)?;
    let out_ring = crate::takiff::lifted_ring(level, n, &[])?;

    let xs = work.block_vars("x")?;
    let phi_x = phi.substitute(&work, &xs.iter().map(|v| Polynomial::var(&work, *v)).collect::<Vec<_>>())?;
    let dirs: Vec<Vec<Polynomial>> = names
        .iter()
        .map(|b| {
            work.block_vars(b)
                .map(|vs| vs.into_iter().map(|v| Polynomial::var(&work, v)).collect())
        })
        .collect::<Result<_>>()?;

    // x -> f0, f_r -> f_r
    let mut images: Vec<Polynomial> = out_ring
        .block_vars("f0")?
        .into_iter()
        .map(|v| Polynomial::var(&out_ring, v))
        .collect();
    for b in &names {
        images.extend(out_ring.block_vars(b)?.into_iter().map(|v| Polynomial::var(&out_ring, v)));
    }

    (0..=level)
        .map(|k| {
            let mut acc = Polynomial::zero(&work);
            for q in partitions(k) {
                let mut term = phi_x.clone();
                let mut denom = Scalar::one();
                for (j, &mult) in q.iter().enumerate() {
                    for _ in 0..mult {
                        term = directional_derivative(&term, &xs, &dirs[j + 1]);
                    }
                    denom *= factorial(mult);
                }
                acc.add_scaled(&denom.recip(), &term);
            }
            acc.substitute(&out_ring, &images)
        })
        .collect()
}

/// All `(q_1, ..., q_k)` with `sum_j j q_j = k`; `k = 0` gives the empty tuple.
pub fn partitions(k: usize) -> Vec<Vec<usize>> {
    fn rec(part: usize, remaining: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if part > k {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for q in 0..=remaining / part {
            cur.push(q);
            rec(part + 1, remaining - q * part, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, k, k, &mut Vec::new(), &mut out);
    out
}

fn factorial(n: usize) -> Scalar {
    (1..=n as i64).fold(Scalar::one(), |acc, i| acc * int(i))
}

/// Splits `Phi_k` into its part linear in block `f{k}` and the `f{k}`-free
/// remainder `psi_k`. Terms of higher degree in `f{k}` are an error.
pub fn extract_linear_part(phi_k: &Polynomial, k: usize) -> Result<(Polynomial, Polynomial)> {
    let block = format!("f{k}");
    let mut comps = phi_k.homogeneous_components(&block)?;
    if let Some((&d, _)) = comps.iter().find(|(&d, _)| d >= 2) {
        return Err(Error::Internal(format!("Phi_{k} has a term of degree {d} in {block}")));
    }
    let ring = phi_k.ring();
    let linear = comps.remove(&1).unwrap_or_else(|| Polynomial::zero(ring));
    let psi = comps.remove(&0).unwrap_or_else(|| Polynomial::zero(ring));
    Ok((linear, psi))
}

/// `<dphi(f_0), u>` where `phi` lives on `V` and `u` in `target`, which must
/// have a block `f0`.
pub fn differential_pairing(phi: &Polynomial, target: &Arc<Ring>, u: &[Polynomial]) -> Result<Polynomial> {
    let n = u.len();
    check_base_polynomial(phi, n)?;
    let f0: Vec<Polynomial> = target
        .block_vars("f0")?
        .into_iter()
        .map(|v| Polynomial::var(target, v))
        .collect();
    if f0.len() != n {
        return Err(Error::Shape("block f0 has the wrong size".into()));
    }
    let mut out = Polynomial::zero(target);
    for (i, ui) in u.iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        let d = phi.derivative(Var(i)).substitute(target, &f0)?;
        out = &out + &(&d * ui);
    }
    Ok(out)
}

/// For `theta` on `f0..f{m-1}`: whether it is `g_m`-invariant as a function
/// on `V_m`, and whether it is `g_{m-1}`-invariant on `V_{m-1}`.
pub fn cylindrical_invariance_check(lifted: &LiftedRepresentation, theta: &Polynomial) -> Result<(bool, bool)> {
    let m = lifted.level();
    if m == 0 {
        return Err(Error::Validation("cylindrical check needs level >= 1".into()));
    }
    let upper_ring = lifted.ring(&[])?;
    let upper = is_invariant(lifted.rep(), &theta.embed(&upper_ring)?)?;

    let ctx = build_takiff(lifted.context().base(), m - 1)?;
    let lower = lift_representation(&ctx, lifted.base_rep())?;
    let lower_ring = lower.ring(&[])?;
    let lower_inv = is_invariant(lower.rep(), &theta.embed(&lower_ring)?)?;
    Ok((upper, lower_inv))
}

/// A sample point for [`tangency_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplePoint {
    pub state: Vec<Scalar>,
    pub params: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointVerdict {
    pub member: bool,
    /// Coefficients `c` with `a(w, v) = sum_i c_i rho(x_i) v`, when they exist.
    #[serde(serialize_with = "ser_opt_scalars")]
    pub witness: Option<Vec<Scalar>>,
}

fn ser_opt_scalars<S: serde::Serializer>(w: &Option<Vec<Scalar>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Option<Vec<String>> = w.as_ref().map(|v| v.iter().map(format_scalar).collect());
    serde::Serialize::serialize(&v, s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TangencyReport {
    pub points: Vec<PointVerdict>,
    pub all_tangent: bool,
}

/// Pointwise test of `a(w, v) ∈ rho(g) v` by an exact linear solve.
pub fn tangency_check(rep: &Representation, field: &PolyMap, points: &[SamplePoint]) -> Result<TangencyReport> {
    let ring = field.ring();
    let state = checked_state(rep, ring)?;
    let params = ring.parameter_vars();
    if field.dim() != rep.space_dim() {
        return Err(Error::Shape("field dimension differs from the representation space".into()));
    }
    let mut verdicts = Vec::with_capacity(points.len());
    for pt in points {
        if pt.state.len() != state.len() || pt.params.len() != params.len() {
            return Err(Error::Shape("sample point has the wrong number of coordinates".into()));
        }
        let mut full = vec![Scalar::zero(); ring.nvars()];
        for (v, x) in state.iter().zip(&pt.state) {
            full[v.0] = x.clone();
        }
        for (v, x) in params.iter().zip(&pt.params) {
            full[v.0] = x.clone();
        }
        let target: Vec<Scalar> = field.components().iter().map(|c| c.evaluate(&full)).collect();
        let d = rep.algebra().dim();
        let mut span = Matrix::zeros(rep.space_dim(), d);
        for i in 0..d {
            for (a, x) in rep.matrix(i).apply(&pt.state).into_iter().enumerate() {
                span[(a, i)] = x;
            }
        }
        let witness = span.solve(&target);
        verdicts.push(PointVerdict { member: witness.is_some(), witness });
    }
    let all_tangent = verdicts.iter().all(|v| v.member);
    Ok(TangencyReport { points: verdicts, all_tangent })
}
