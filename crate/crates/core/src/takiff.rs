//! Generalized Takiff algebras `g_m = g ⊗ K[T]/(T^{m+1})` and lifted
//! representations on `V_m = V^{m+1}`.
//!
//! Basis order is level-major: index `r * dim(g) + i` stands for `x_i T^r`.
//! Likewise coordinate `s * dim(V) + c` of `V_m` is coordinate `c` of `f_s`.

use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{adjoint_rep, coadjoint_rep, BilinearForm, LieAlgebra, Representation};
use crate::matrix::Matrix;
use crate::poly::{Ring, Scalar, VariableBlock};

/// The pair `(g, m)` together with the structure constants of `g_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TakiffContext {
    base: LieAlgebra,
    level: usize,
    algebra: LieAlgebra,
}

/// Builds `g_m` with bracket `[x T^r, y T^s] = [x, y] T^{r+s}`, dropped when
/// `r + s > m`. The result goes through the same exact Jacobi validation as
/// any other algebra.
pub fn build_takiff(base: &LieAlgebra, level: usize) -> Result<TakiffContext> {
    let d = base.dim();
    let big = d * (level + 1);
    let mut constants = vec![Scalar::zero(); big * big * big];
    for r in 0..=level {
        for s in 0..=level - r {
            for i in 0..d {
                for j in 0..d {
                    let a = r * d + i;
                    let b = s * d + j;
                    for (k, c) in base.bracket_basis(i, j) {
                        constants[(a * big + b) * big + (r + s) * d + k] = c.clone();
                    }
                }
            }
        }
    }
    let names = (0..=level)
        .flat_map(|r| base.names().iter().map(move |n| format!("{n}_T{r}")))
        .collect();
    let algebra = LieAlgebra::from_flat(names, constants)?;
    Ok(TakiffContext { base: base.clone(), level, algebra })
}

impl TakiffContext {
    pub fn base(&self) -> &LieAlgebra {
        &self.base
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    /// Index of `x_i T^r` in the basis of `g_m`.
    pub fn index(&self, r: usize, i: usize) -> usize {
        r * self.base.dim() + i
    }

    /// Inverse of [`TakiffContext::index`].
    pub fn level_of(&self, idx: usize) -> (usize, usize) {
        (idx / self.base.dim(), idx % self.base.dim())
    }
}

/// Names `f0, ..., fm` of the coordinate blocks of `V_m`.
pub fn block_names(level: usize) -> Vec<String> {
    (0..=level).map(|r| format!("f{r}")).collect()
}

/// Ring with the given parameter blocks followed by state blocks
/// `f0, ..., fm`, each of size `n`.
pub fn lifted_ring(level: usize, n: usize, params: &[VariableBlock]) -> Result<Arc<Ring>> {
    let mut blocks: Vec<VariableBlock> = params.to_vec();
    blocks.extend(block_names(level).into_iter().map(|b| VariableBlock::state(b, n)));
    Ring::new(blocks)
}

/// `rho_m` on `V_m`, together with the data it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedRepresentation {
    context: TakiffContext,
    base_rep: Representation,
    rep: Representation,
}

/// `rho_m(x T^r)` sends block `f_s` to block `f_{r+s}` through `rho(x)`, and
/// to zero when `r + s > m`.
pub fn lift_representation(ctx: &TakiffContext, rho: &Representation) -> Result<LiftedRepresentation> {
    if *rho.algebra() != ctx.base {
        return Err(Error::Shape("representation is not over the base algebra of the context".into()));
    }
    let d = ctx.base.dim();
    let n = rho.space_dim();
    let m = ctx.level;
    let big_n = n * (m + 1);
    let mut matrices = Vec::with_capacity(d * (m + 1));
    for r in 0..=m {
        for i in 0..d {
            let mut big = Matrix::zeros(big_n, big_n);
            let small = rho.matrix(i);
            for s in 0..=m - r {
                for a in 0..n {
                    for b in 0..n {
                        big[((r + s) * n + a, s * n + b)] = small[(a, b)].clone();
                    }
                }
            }
            matrices.push(big);
        }
    }
    let rep = Representation::new(ctx.algebra.clone(), big_n, matrices)?;
    Ok(LiftedRepresentation { context: ctx.clone(), base_rep: rho.clone(), rep })
}

impl LiftedRepresentation {
    pub fn context(&self) -> &TakiffContext {
        &self.context
    }

    pub fn base_rep(&self) -> &Representation {
        &self.base_rep
    }

    /// `rho_m` as a plain representation of `g_m`.
    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn level(&self) -> usize {
        self.context.level
    }

    /// Dimension of `V`.
    pub fn base_dim(&self) -> usize {
        self.base_rep.space_dim()
    }

    /// `rho_m(X) F` in components: `h_j = sum_{r <= j} rho(x_r) f_{j-r}`.
    pub fn act(&self, x: &[Vec<Scalar>], f: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
        let m = self.level();
        assert!(x.len() == m + 1 && f.len() == m + 1);
        (0..=m)
            .map(|j| {
                let mut h = vec![Scalar::zero(); self.base_dim()];
                for r in 0..=j {
                    let v = self.base_rep.element_matrix(&x[r]).apply(&f[j - r]);
                    h.iter_mut().zip(v).for_each(|(a, b)| *a += b);
                }
                h
            })
            .collect()
    }

    /// Ring `params + f0..fm` sized for this representation.
    pub fn ring(&self, params: &[VariableBlock]) -> Result<Arc<Ring>> {
        lifted_ring(self.level(), self.base_dim(), params)
    }
}

/// Block reversal `(f_0, ..., f_m) -> (f_m, ..., f_0)` on `V^{m+1}`.
pub fn flip_involution(level: usize, block_dim: usize) -> Matrix {
    let big = block_dim * (level + 1);
    let mut theta = Matrix::zeros(big, big);
    for s in 0..=level {
        for c in 0..block_dim {
            theta[((level - s) * block_dim + c, s * block_dim + c)] = Scalar::from_integer(1.into());
        }
    }
    theta
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlipReport {
    pub level: usize,
    pub checked: usize,
    pub passed: bool,
    /// Basis index of `g_m` where the identity first fails.
    pub first_failure: Option<usize>,
}

/// Compares the lifted coadjoint representation `rho = (ad*)_m` with the
/// coadjoint representation `tau = (ad_m)*` of `g_m`, checking
/// `tau(X) = theta rho(X) theta` for every basis element, with `theta` the
/// block flip.
pub fn verify_flip_identity(g: &LieAlgebra, level: usize) -> FlipReport {
    let ctx = build_takiff(g, level).expect("Takiff algebra of a valid algebra");
    let rho = lift_representation(&ctx, &coadjoint_rep(g)).expect("lift of coadjoint");
    let tau = coadjoint_rep(ctx.algebra());
    let theta = flip_involution(level, g.dim());
    let first_failure = (0..ctx.algebra().dim())
        .find(|&k| *tau.matrix(k) != theta.mul(rho.rep().matrix(k)).mul(&theta));
    FlipReport { level, checked: ctx.algebra().dim(), passed: first_failure.is_none(), first_failure }
}

/// `B_m(sum x_r T^r, sum y_s T^s) = sum_{r+s=m} B(x_r, y_s)`.
///
/// The input must be an ad-invariant nondegenerate form on the base; the
/// output is checked to be symmetric, nondegenerate and ad-invariant on
/// `g_m` before it is returned.
pub fn lift_bilinear_form(ctx: &TakiffContext, b: &BilinearForm) -> Result<BilinearForm> {
    let d = ctx.base.dim();
    if b.dim() != d {
        return Err(Error::Shape(format!("form has dimension {}, algebra {d}", b.dim())));
    }
    if !b.is_ad_invariant(&ctx.base) {
        return Err(Error::Validation("bilinear form is not invariant".into()));
    }
    if !b.is_nondegenerate() {
        return Err(Error::Validation("bilinear form is degenerate".into()));
    }
    let m = ctx.level;
    let big = d * (m + 1);
    let mut gram = Matrix::zeros(big, big);
    for r in 0..=m {
        let s = m - r;
        for i in 0..d {
            for j in 0..d {
                gram[(r * d + i, s * d + j)] = b.gram()[(i, j)].clone();
            }
        }
    }
    let lifted = BilinearForm::new(gram)?;
    if !lifted.is_nondegenerate() {
        return Err(Error::Internal("lifted form is degenerate".into()));
    }
    if !lifted.is_invariant_under(&adjoint_rep(&ctx.algebra)) {
        return Err(Error::Internal("lifted form is not ad-invariant".into()));
    }
    Ok(lifted)
}
