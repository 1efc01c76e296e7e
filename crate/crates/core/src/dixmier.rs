//! Decomposition of invariant-annihilating vector fields on `V_m` into
//! combinations of Killing fields of `rho_m` with polynomial coefficients.
//!
//! The level-`m` problem is reduced to level `m - 1` by treating the top
//! block `f_m` as a parameter. The leftover top component
//! `a_m - sum_{r<m} rho(b_r) f_{m-r}` then annihilates every base invariant
//! evaluated at `f_0`, and a [`BaseSolver`] for `(g, rho, V)` writes it as
//! `rho(b_m) f_0` with `f_1, ..., f_m` as extra parameters.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{
    differential_pairing, directional_derivative, lift_invariant, linear_field, quadratic_invariant,
    InvariantFamily,
};
use crate::lie::{invariant_symmetric_forms, BilinearForm, Representation};
use crate::matrix::Matrix;
use crate::poly::{frac, PolyMap, Polynomial, Ring, Role, Scalar, Var};
use crate::takiff::{block_names, LiftedRepresentation};

/// Polynomial vector field on the state space of its ring. Parameter blocks
/// play the role of `W`; the components follow the state variables in ring
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorField {
    map: PolyMap,
}

impl VectorField {
    pub fn new(ring: &Arc<Ring>, components: Vec<Polynomial>) -> Result<Self> {
        let codomain = ring.state_blocks().map(|b| (b.name.clone(), b.size)).collect();
        Ok(VectorField { map: PolyMap::new(ring, components, codomain)? })
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        let n = ring.state_vars().len();
        Self::new(ring, vec![Polynomial::zero(ring); n]).expect("zero field")
    }

    pub fn from_polymap(map: PolyMap) -> Result<Self> {
        Self::new(&map.ring().clone(), map.into_components())
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.map.ring()
    }

    pub fn components(&self) -> &[Polynomial] {
        self.map.components()
    }

    pub fn as_polymap(&self) -> &PolyMap {
        &self.map
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_zero()
    }

    /// Same components moved to another ring (matching blocks by name).
    pub fn embed(&self, ring: &Arc<Ring>) -> Result<Self> {
        let comps = self.components().iter().map(|c| c.embed(ring)).collect::<Result<_>>()?;
        Self::new(ring, comps)
    }

    /// Derivative of `phi` along the field.
    pub fn apply(&self, phi: &Polynomial) -> Result<Polynomial> {
        let phi = phi.embed(self.ring())?;
        Ok(directional_derivative(&phi, &self.ring().state_vars(), self.components()))
    }
}

/// Coefficients `b_0, ..., b_m`, each a `dim(g)`-vector of polynomials: the
/// map `b : W x V_m -> g_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    ring: Arc<Ring>,
    coefficients: Vec<Vec<Polynomial>>,
}

impl Decomposition {
    pub fn new(ring: &Arc<Ring>, coefficients: Vec<Vec<Polynomial>>) -> Result<Self> {
        for p in coefficients.iter().flatten() {
            if **p.ring() != **ring {
                return Err(Error::RingMismatch { left: p.ring().to_string(), right: ring.to_string() });
            }
        }
        Ok(Decomposition { ring: ring.clone(), coefficients })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn level(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn coefficients(&self) -> &[Vec<Polynomial>] {
        &self.coefficients
    }

    pub fn coefficients_mut(&mut self) -> &mut [Vec<Polynomial>] {
        &mut self.coefficients
    }
}

/// `rho(b) u = sum_k b_k rho(x_k) u` for polynomial `b` and `u`.
pub fn act(rho: &Representation, b: &[Polynomial], u: &[Polynomial]) -> Vec<Polynomial> {
    let ring = u[0].ring();
    let n = rho.space_dim();
    let mut out = vec![Polynomial::zero(ring); n];
    for (bk, m) in b.iter().zip(rho.matrices()) {
        if bk.is_zero() {
            continue;
        }
        for (a, slot) in out.iter_mut().enumerate() {
            let mut lin = Polynomial::zero(ring);
            for (c, uc) in u.iter().enumerate() {
                if !m[(a, c)].is_zero() {
                    lin.add_scaled(&m[(a, c)], uc);
                }
            }
            if !lin.is_zero() {
                *slot = &*slot + &(bk * &lin);
            }
        }
    }
    out
}

fn block_polys(ring: &Arc<Ring>, block: &str) -> Result<Vec<Polynomial>> {
    Ok(ring.block_vars(block)?.into_iter().map(|v| Polynomial::var(ring, v)).collect())
}

/// Checks that the state blocks of `ring` are exactly `f0, ..., f{level}`,
/// each of size `n`.
fn check_lifted_ring(ring: &Ring, level: usize, n: usize) -> Result<()> {
    let names = block_names(level);
    let state: Vec<_> = ring.state_blocks().collect();
    let ok = state.len() == level + 1
        && state.iter().zip(&names).all(|(b, name)| b.name == *name && b.size == n);
    if ok {
        Ok(())
    } else {
        Err(Error::Shape(format!(
            "ring {ring} must have state blocks f0..f{level} of size {n}"
        )))
    }
}

/// `rho_m(b) F` over `ring`: component block `j` is
/// `sum_{r <= j} rho(b_r) f_{j-r}`.
pub fn lifted_field(rho: &Representation, b: &[Vec<Polynomial>], ring: &Arc<Ring>) -> Result<VectorField> {
    let level = b.len().checked_sub(1).ok_or_else(|| Error::Shape("empty coefficient list".into()))?;
    check_lifted_ring(ring, level, rho.space_dim())?;
    let f: Vec<Vec<Polynomial>> = block_names(level)
        .iter()
        .map(|name| block_polys(ring, name))
        .collect::<Result<_>>()?;
    let mut comps = Vec::with_capacity(rho.space_dim() * (level + 1));
    for j in 0..=level {
        let mut h = vec![Polynomial::zero(ring); rho.space_dim()];
        for r in 0..=j {
            let br: Vec<Polynomial> = b[r].iter().map(|p| p.embed(ring)).collect::<Result<_>>()?;
            for (slot, x) in h.iter_mut().zip(act(rho, &br, &f[j - r])) {
                *slot = &*slot + &x;
            }
        }
        comps.extend(h);
    }
    VectorField::new(ring, comps)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Annihilation {
    pub holds: bool,
    /// Index of the first lifted generator with a nonzero derivative, and
    /// that derivative.
    pub witness: Option<(usize, Polynomial)>,
}

/// Whether the field kills every polynomial in `lifted_generators`.
pub fn annihilates_invariants(field: &VectorField, lifted_generators: &[Polynomial]) -> Result<Annihilation> {
    for (i, phi) in lifted_generators.iter().enumerate() {
        let r = field.apply(phi)?;
        if !r.is_zero() {
            return Ok(Annihilation { holds: false, witness: Some((i, r)) });
        }
    }
    Ok(Annihilation { holds: true, witness: None })
}

/// Output of the quadratic division: `a = matrix * v` with
/// `antisymmetric = G * matrix`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticDivision {
    pub antisymmetric: Vec<Vec<Polynomial>>,
    pub matrix: Vec<Vec<Polynomial>>,
}

/// Writes a field `a` with `B(a, v) = 0` as `a = M v` with `M` in `so(B)`.
///
/// With `c = G a`, each part `c^(d)` homogeneous of degree `d` in the state
/// variables satisfies `sum_j c_j^(d) x_j = 0`, and
/// `b_ij = sum_d (d_j c_i^(d) - d_i c_j^(d)) / (d + 1)` is antisymmetric with
/// `b x = c` by the Euler identity. Then `M = G^{-1} b`.
pub fn quadratic_base_solve(form: &BilinearForm, field: &VectorField) -> Result<QuadraticDivision> {
    let ring = field.ring();
    let n = form.dim();
    let x = ring.state_vars();
    if x.len() != n || field.components().len() != n {
        return Err(Error::Shape(format!(
            "form has dimension {n}, field lives on {} state variables",
            x.len()
        )));
    }
    let g = form.gram();
    let g_inv = g
        .inverse()
        .ok_or_else(|| Error::Validation("quadratic solver needs a nondegenerate form".into()))?;
    let a = field.components();
    let xs: Vec<Polynomial> = x.iter().map(|v| Polynomial::var(ring, *v)).collect();

    let c: Vec<Polynomial> = (0..n).map(|i| combine(g.row(i), a, ring)).collect();
    let pairing = c
        .iter()
        .zip(&xs)
        .fold(Polynomial::zero(ring), |acc, (ci, xi)| &acc + &(ci * xi));
    if !pairing.is_zero() {
        return Err(Error::Refused {
            reason: "field does not annihilate the quadratic invariant".into(),
            witness: pairing,
        });
    }

    let graded: Vec<BTreeMap<u32, Polynomial>> = c.iter().map(|ci| ci.homogeneous_components_in(&x)).collect();
    if graded.iter().any(|gr| gr.contains_key(&0)) {
        return Err(Error::Internal("nonzero constant part in a quadratic syzygy".into()));
    }
    let zero = Polynomial::zero(ring);
    let mut b = vec![vec![zero.clone(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let degrees: std::collections::BTreeSet<u32> =
                graded[i].keys().chain(graded[j].keys()).copied().collect();
            let mut bij = zero.clone();
            for d in degrees {
                let ci = graded[i].get(&d).unwrap_or(&zero);
                let cj = graded[j].get(&d).unwrap_or(&zero);
                let num = &ci.derivative(x[j]) - &cj.derivative(x[i]);
                bij.add_scaled(&frac(1, d as i64 + 1), &num);
            }
            b[j][i] = -&bij;
            b[i][j] = bij;
        }
    }
    let matrix: Vec<Vec<Polynomial>> = (0..n)
        .map(|i| (0..n).map(|j| combine_col(g_inv.row(i), &b, j, ring)).collect())
        .collect();
    Ok(QuadraticDivision { antisymmetric: b, matrix })
}

fn combine(row: &[Scalar], ps: &[Polynomial], ring: &Arc<Ring>) -> Polynomial {
    let mut out = Polynomial::zero(ring);
    for (c, p) in row.iter().zip(ps) {
        out.add_scaled(c, p);
    }
    out
}

fn combine_col(row: &[Scalar], b: &[Vec<Polynomial>], col: usize, ring: &Arc<Ring>) -> Polynomial {
    let mut out = Polynomial::zero(ring);
    for (c, brow) in row.iter().zip(b) {
        out.add_scaled(c, &brow[col]);
    }
    out
}

/// A decomposition procedure for a base representation `(g, rho, V)`.
///
/// `solve` receives a field on the state variables of its ring (any other
/// blocks are parameters) that annihilates [`BaseSolver::family`], and
/// returns `b` with `a = rho(b) v`.
pub trait BaseSolver: Send + Sync {
    fn name(&self) -> &str;
    fn representation(&self) -> &Representation;
    fn family(&self) -> &InvariantFamily;
    fn solve(&self, field: &VectorField) -> Result<Vec<Polynomial>>;
}

/// Solver for representations whose image is the full orthogonal algebra of
/// a nondegenerate invariant form, with invariants generated by the
/// quadratic form.
#[derive(Debug, Clone)]
pub struct QuadraticSolver {
    rep: Representation,
    form: BilinearForm,
    family: InvariantFamily,
    /// Left inverse of `x -> vec(rho(x))`.
    coordinates: Matrix,
}

impl QuadraticSolver {
    pub fn new(rep: &Representation, form: BilinearForm) -> Result<Self> {
        let n = rep.space_dim();
        let d = rep.algebra().dim();
        if form.dim() != n || !form.is_nondegenerate() {
            return Err(Error::Validation("quadratic solver needs a nondegenerate form on V".into()));
        }
        if !form.is_invariant_under(rep) {
            return Err(Error::Validation("form is not invariant under the representation".into()));
        }
        if d != n * (n - 1) / 2 {
            return Err(Error::Validation(format!(
                "rho(g) has dimension at most {d}, so(B) has dimension {}",
                n * (n - 1) / 2
            )));
        }
        let mut vecs = Matrix::zeros(n * n, d);
        for (k, m) in rep.matrices().iter().enumerate() {
            for (e, v) in m.entries().iter().enumerate() {
                vecs[(e, k)] = v.clone();
            }
        }
        let gram = vecs.transpose().mul(&vecs);
        let gram_inv = gram
            .inverse()
            .ok_or_else(|| Error::Validation("representation is not faithful".into()))?;
        let coordinates = gram_inv.mul(&vecs.transpose());
        let family = InvariantFamily::new(rep, "quadratic", vec![quadratic_invariant(form.gram())])?;
        Ok(QuadraticSolver { rep: rep.clone(), form, family, coordinates })
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }
}

impl BaseSolver for QuadraticSolver {
    fn name(&self) -> &str {
        "quadratic"
    }

    fn representation(&self) -> &Representation {
        &self.rep
    }

    fn family(&self) -> &InvariantFamily {
        &self.family
    }

    fn solve(&self, field: &VectorField) -> Result<Vec<Polynomial>> {
        let div = quadratic_base_solve(&self.form, field)?;
        let ring = field.ring();
        let flat: Vec<Polynomial> = div.matrix.into_iter().flatten().collect();
        Ok((0..self.rep.algebra().dim())
            .map(|k| combine(self.coordinates.row(k), &flat, ring))
            .collect())
    }
}

/// Solver for the zero algebra: its coordinate functions are invariant, so
/// only the zero field qualifies.
#[derive(Debug, Clone)]
pub struct TrivialSolver {
    rep: Representation,
    family: InvariantFamily,
}

impl TrivialSolver {
    pub fn new(rep: &Representation) -> Result<Self> {
        if rep.algebra().dim() != 0 {
            return Err(Error::Validation("trivial solver only applies to the zero algebra".into()));
        }
        let ring = crate::invariants::base_ring(rep.space_dim());
        let coords = ring.state_vars().into_iter().map(|v| Polynomial::var(&ring, v)).collect();
        let family = InvariantFamily::new(rep, "coordinates", coords)?;
        Ok(TrivialSolver { rep: rep.clone(), family })
    }
}

impl BaseSolver for TrivialSolver {
    fn name(&self) -> &str {
        "trivial"
    }

    fn representation(&self) -> &Representation {
        &self.rep
    }

    fn family(&self) -> &InvariantFamily {
        &self.family
    }

    fn solve(&self, field: &VectorField) -> Result<Vec<Polynomial>> {
        match field.components().iter().find(|c| !c.is_zero()) {
            Some(c) => Err(Error::Refused {
                reason: "only the zero field annihilates the coordinate functions".into(),
                witness: c.clone(),
            }),
            None => Ok(Vec::new()),
        }
    }
}

/// Built-in solver for `rep`, if one applies: the trivial solver for the zero
/// algebra, or the quadratic solver when the invariant symmetric forms are a
/// single nondegenerate line and `rho(g) = so(B)`.
pub fn builtin_solver(rep: &Representation) -> Result<Box<dyn BaseSolver>> {
    if rep.algebra().dim() == 0 {
        return Ok(Box::new(TrivialSolver::new(rep)?));
    }
    let forms = invariant_symmetric_forms(rep);
    if forms.len() != 1 {
        return Err(Error::Validation(format!(
            "no built-in solver: {} independent invariant symmetric forms",
            forms.len()
        )));
    }
    let form = BilinearForm::nondegenerate(forms.into_iter().next().unwrap())?;
    Ok(Box::new(QuadraticSolver::new(rep, form)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SolverHandle(pub usize);

/// Base solvers keyed by representation and invariant family.
#[derive(Default)]
pub struct SolverRegistry {
    solvers: Vec<Box<dyn BaseSolver>>,
}

impl SolverRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, solver: Box<dyn BaseSolver>) -> Result<SolverHandle> {
        let dup = self.solvers.iter().any(|s| {
            s.representation() == solver.representation() && s.family().label() == solver.family().label()
        });
        if dup {
            return Err(Error::DuplicateSolver(format!(
                "{} / {}",
                solver.name(),
                solver.family().label()
            )));
        }
        self.solvers.push(solver);
        Ok(SolverHandle(self.solvers.len() - 1))
    }

    /// Registers [`builtin_solver`] for `rep`.
    pub fn register_builtin(&mut self, rep: &Representation) -> Result<SolverHandle> {
        self.register(builtin_solver(rep)?)
    }

    pub fn get(&self, handle: SolverHandle) -> Option<&dyn BaseSolver> {
        self.solvers.get(handle.0).map(|s| s.as_ref())
    }

    pub fn find(&self, rep: &Representation) -> Option<&dyn BaseSolver> {
        self.solvers.iter().find(|s| s.representation() == rep).map(|s| s.as_ref())
    }

    pub fn len(&self) -> usize {
        self.solvers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solvers.is_empty()
    }
}

/// Lifts `Phi_k` of every generator of the solver's family, flattened in
/// generator-major order.
pub fn lifted_generators(lifted: &LiftedRepresentation, family: &InvariantFamily) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    for phi in family.generators() {
        out.extend(lift_invariant(lifted, phi, false)?);
    }
    Ok(out)
}

/// Writes `field = rho_m(b) F`.
///
/// The field's ring must have state blocks `f0, ..., fm` of size `dim V`;
/// any other blocks are parameters. A field that fails to annihilate the
/// lifted generators is refused with the offending derivative as witness.
pub fn takiff_decompose(
    lifted: &LiftedRepresentation,
    solver: &dyn BaseSolver,
    field: &VectorField,
) -> Result<Decomposition> {
    let rho = lifted.base_rep();
    if solver.representation() != rho {
        return Err(Error::Shape("solver is registered for a different representation".into()));
    }
    let m = lifted.level();
    let n = rho.space_dim();
    check_lifted_ring(field.ring(), m, n)?;

    let lifts = lifted_generators(lifted, solver.family())?;
    let ann = annihilates_invariants(field, &lifts)?;
    if let Some((i, witness)) = ann.witness {
        let per = m + 1;
        return Err(Error::Refused {
            reason: format!(
                "field does not annihilate Phi_{} of generator {}",
                i % per,
                i / per
            ),
            witness,
        });
    }

    let coefficients = decompose_level(m, rho, solver, field)?;
    let dec = Decomposition::new(field.ring(), coefficients)?;
    let report = verify_decomposition(lifted, field, &dec)?;
    if !report.ok {
        return Err(Error::Internal("reconstruction identity fails".into()));
    }
    Ok(dec)
}

fn decompose_level(
    level: usize,
    rho: &Representation,
    solver: &dyn BaseSolver,
    field: &VectorField,
) -> Result<Vec<Vec<Polynomial>>> {
    if level == 0 {
        return Ok(vec![with_level_context(solver.solve(field), 0)?]);
    }
    let n = rho.space_dim();
    let ring = field.ring();
    let top = format!("f{level}");

    // lower components with f_m as a parameter
    let lower_ring = ring.retag(&[top.as_str()], Role::Parameter)?;
    let lower_comps = field.components()[..level * n]
        .iter()
        .map(|c| c.embed(&lower_ring))
        .collect::<Result<_>>()?;
    let lower = VectorField::new(&lower_ring, lower_comps)?;
    let mut b: Vec<Vec<Polynomial>> = decompose_level(level - 1, rho, solver, &lower)?
        .into_iter()
        .map(|br| br.iter().map(|p| p.embed(ring)).collect::<Result<_>>())
        .collect::<Result<_>>()?;

    // c_m = sum_{r < m} rho(b_r) f_{m-r}
    let mut residual: Vec<Polynomial> = field.components()[level * n..].to_vec();
    for (r, br) in b.iter().enumerate() {
        let f = block_polys(ring, &format!("f{}", level - r))?;
        for (slot, x) in residual.iter_mut().zip(act(rho, br, &f)) {
            *slot = &*slot - &x;
        }
    }

    for (i, phi) in solver.family().generators().iter().enumerate() {
        let pairing = differential_pairing(phi, ring, &residual)?;
        if !pairing.is_zero() {
            return Err(Error::Internal(format!(
                "<dphi(f0), a_m - c_m> != 0 for generator {i} at level {level}: {pairing}"
            )));
        }
    }

    let others: Vec<String> = (1..=level).map(|r| format!("f{r}")).collect();
    let names: Vec<&str> = others.iter().map(String::as_str).collect();
    let top_ring = ring.retag(&names, Role::Parameter)?;
    let residual_field = VectorField::new(
        &top_ring,
        residual.iter().map(|p| p.embed(&top_ring)).collect::<Result<_>>()?,
    )?;
    let bm = with_level_context(solver.solve(&residual_field), level)?;
    b.push(bm.iter().map(|p| p.embed(ring)).collect::<Result<_>>()?);
    Ok(b)
}

fn with_level_context<T>(r: Result<T>, level: usize) -> Result<T> {
    r.map_err(|e| match e {
        Error::Refused { reason, witness } => Error::Refused {
            reason: format!("base solver refused at level {level}: {reason}"),
            witness,
        },
        other => other,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub ok: bool,
    /// `a_j - (rho_m(b) F)_j` per block, as display strings.
    pub residuals: Vec<Vec<String>>,
}

/// Recomputes `rho_m(b) F` and compares with the field block by block.
pub fn verify_decomposition(
    lifted: &LiftedRepresentation,
    field: &VectorField,
    dec: &Decomposition,
) -> Result<VerifyReport> {
    let rho = lifted.base_rep();
    let m = lifted.level();
    if dec.coefficients().len() != m + 1 || dec.coefficients().iter().any(|b| b.len() != rho.algebra().dim()) {
        return Err(Error::Shape("decomposition does not match the lifted representation".into()));
    }
    let rebuilt = lifted_field(rho, dec.coefficients(), field.ring())?;
    let n = rho.space_dim();
    let residuals: Vec<Vec<Polynomial>> = (0..=m)
        .map(|j| {
            (0..n)
                .map(|c| &field.components()[j * n + c] - &rebuilt.components()[j * n + c])
                .collect()
        })
        .collect();
    let ok = residuals.iter().flatten().all(Polynomial::is_zero);
    Ok(VerifyReport {
        ok,
        residuals: residuals
            .iter()
            .map(|blk| blk.iter().map(ToString::to_string).collect())
            .collect(),
    })
}

/// Applies `theta` to every state block of size `dim theta`, and composes
/// with `theta^{-1}` on the inside: `a'(v') = theta a(theta^{-1} v')`.
pub fn transport_field(field: &VectorField, theta: &Matrix) -> Result<VectorField> {
    let ring = field.ring();
    let images = inverse_images(ring, theta)?;
    let n = theta.rows();
    let inner: Vec<Polynomial> = field
        .components()
        .iter()
        .map(|c| c.substitute(ring, &images))
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(inner.len());
    for chunk in inner.chunks(n) {
        out.extend((0..n).map(|a| combine(theta.row(a), chunk, ring)));
    }
    VectorField::new(ring, out)
}

/// `b'(v') = b(theta^{-1} v')`, the coefficients matching
/// [`transport_field`] under `tau = theta rho theta^{-1}`.
pub fn transport_decomposition(dec: &Decomposition, theta: &Matrix) -> Result<Decomposition> {
    let ring = dec.ring();
    let images = inverse_images(ring, theta)?;
    let coefficients = dec
        .coefficients()
        .iter()
        .map(|b| b.iter().map(|p| p.substitute(ring, &images)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    Decomposition::new(ring, coefficients)
}

/// Variable images for `v -> theta^{-1} v` on each state block.
fn inverse_images(ring: &Arc<Ring>, theta: &Matrix) -> Result<Vec<Polynomial>> {
    let inv = theta
        .inverse()
        .ok_or_else(|| Error::Validation("transport matrix is singular".into()))?;
    let n = theta.rows();
    let mut images: Vec<Polynomial> = (0..ring.nvars()).map(|v| Polynomial::var(ring, Var(v))).collect();
    for b in ring.state_blocks() {
        if b.size != n {
            return Err(Error::Shape(format!("block {} has size {}, transport matrix {n}", b.name, b.size)));
        }
        let vars = ring.block_vars(&b.name)?;
        for (a, lin) in linear_field(&inv, ring, &vars).into_iter().enumerate() {
            images[vars[a].0] = lin;
        }
    }
    Ok(images)
}

/// Evaluates parameters at rational values throughout a field.
pub fn specialize_field(field: &VectorField, vars: &[Var], values: &[Scalar]) -> Result<VectorField> {
    VectorField::new(
        field.ring(),
        field.components().iter().map(|c| c.specialize(vars, values)).collect(),
    )
}

/// Antisymmetry check used by tests and reports.
pub fn is_antisymmetric(b: &[Vec<Polynomial>]) -> bool {
    let n = b.len();
    (0..n).all(|i| (0..n).all(|j| b[i][j] == -&b[j][i]))
}
