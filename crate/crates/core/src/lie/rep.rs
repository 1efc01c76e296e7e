use num_traits::Zero;

use super::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::Scalar;

/// A matrix representation `rho : g -> gl(V)`, one matrix per basis element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    algebra: LieAlgebra,
    space_dim: usize,
    matrices: Vec<Matrix>,
}

impl Representation {
    /// Validates shapes and `rho([x_i, x_j]) = [rho(x_i), rho(x_j)]` for every
    /// basis pair.
    pub fn new(algebra: LieAlgebra, space_dim: usize, matrices: Vec<Matrix>) -> Result<Self> {
        if matrices.len() != algebra.dim() {
            return Err(Error::Shape(format!(
                "algebra has dimension {} but {} matrices were given",
                algebra.dim(),
                matrices.len()
            )));
        }
        if let Some(m) = matrices.iter().find(|m| m.rows() != space_dim || m.cols() != space_dim) {
            return Err(Error::Shape(format!(
                "matrix of shape {}x{} in a representation on dimension {space_dim}",
                m.rows(),
                m.cols()
            )));
        }
        let rep = Representation { algebra, space_dim, matrices };
        if let Some((i, j)) = rep.homomorphism_failure() {
            return Err(Error::Homomorphism { i, j });
        }
        Ok(rep)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn space_dim(&self) -> usize {
        self.space_dim
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn matrix(&self, i: usize) -> &Matrix {
        &self.matrices[i]
    }

    /// `rho(sum_i coeffs[i] x_i)`.
    pub fn element_matrix(&self, coeffs: &[Scalar]) -> Matrix {
        assert_eq!(coeffs.len(), self.algebra.dim());
        let mut m = Matrix::zeros(self.space_dim, self.space_dim);
        for (c, a) in coeffs.iter().zip(&self.matrices) {
            m.add_scaled(c, a);
        }
        m
    }

    /// First basis pair `(i, j)`, `i < j`, where the homomorphism identity
    /// fails.
    pub fn homomorphism_failure(&self) -> Option<(usize, usize)> {
        let d = self.algebra.dim();
        for i in 0..d {
            for j in i + 1..d {
                let mut lhs = Matrix::zeros(self.space_dim, self.space_dim);
                for (k, c) in self.algebra.bracket_basis(i, j) {
                    lhs.add_scaled(c, &self.matrices[*k]);
                }
                if lhs != self.matrices[i].commutator(&self.matrices[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// `ad(x_i)` has columns `[x_i, x_j]`.
pub fn adjoint_rep(g: &LieAlgebra) -> Representation {
    let d = g.dim();
    let matrices = (0..d)
        .map(|i| {
            let mut m = Matrix::zeros(d, d);
            for j in 0..d {
                for (k, c) in g.bracket_basis(i, j) {
                    m[(*k, j)] = c.clone();
                }
            }
            m
        })
        .collect();
    Representation::new(g.clone(), d, matrices).expect("adjoint representation of a Lie algebra")
}

/// `ad*(x) = -ad(x)^T` on the dual basis.
pub fn coadjoint_rep(g: &LieAlgebra) -> Representation {
    let ad = adjoint_rep(g);
    let minus_one = -Scalar::from_integer(1.into());
    let matrices = ad.matrices.iter().map(|m| m.transpose().scale(&minus_one)).collect();
    Representation::new(g.clone(), g.dim(), matrices).expect("coadjoint representation of a Lie algebra")
}

/// `tau(x) = theta rho(x) theta^{-1}`.
pub fn conjugate_representation(rho: &Representation, theta: &Matrix) -> Result<Representation> {
    if theta.rows() != rho.space_dim || theta.cols() != rho.space_dim {
        return Err(Error::Shape(format!(
            "conjugating matrix is {}x{}, representation space has dimension {}",
            theta.rows(),
            theta.cols(),
            rho.space_dim
        )));
    }
    let inv = theta
        .inverse()
        .ok_or_else(|| Error::Validation("conjugating matrix is singular".into()))?;
    let matrices = rho.matrices.iter().map(|m| theta.mul(m).mul(&inv)).collect();
    Representation::new(rho.algebra.clone(), rho.space_dim, matrices)
}

/// Symmetric bilinear form given by its Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearForm {
    gram: Matrix,
}

impl BilinearForm {
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::Validation("Gram matrix is not symmetric".into()));
        }
        Ok(BilinearForm { gram })
    }

    /// Like [`BilinearForm::new`], also requiring a nonzero determinant.
    pub fn nondegenerate(gram: Matrix) -> Result<Self> {
        let b = Self::new(gram)?;
        if !b.is_nondegenerate() {
            return Err(Error::Validation("bilinear form is degenerate".into()));
        }
        Ok(b)
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.gram.determinant().is_zero()
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        x.iter().zip(self.gram.apply(y)).fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
    }

    /// `B(rho(z) u, v) + B(u, rho(z) v) = 0` for every basis `z`.
    pub fn is_invariant_under(&self, rep: &Representation) -> bool {
        rep.space_dim == self.dim()
            && rep
                .matrices
                .iter()
                .all(|m| m.transpose().mul(&self.gram).add(&self.gram.mul(m)).is_zero())
    }

    /// Invariance of a form on `g` itself under the adjoint action.
    pub fn is_ad_invariant(&self, g: &LieAlgebra) -> bool {
        self.is_invariant_under(&adjoint_rep(g))
    }

    /// The form `B'(u, v) = B(theta^{-1} u, theta^{-1} v)`.
    pub fn transport(&self, theta: &Matrix) -> Result<Self> {
        let inv = theta
            .inverse()
            .ok_or_else(|| Error::Validation("transport matrix is singular".into()))?;
        Self::new(inv.transpose().mul(&self.gram).mul(&inv))
    }
}

/// `K(x, y) = tr(ad x ad y)`.
pub fn killing_form(g: &LieAlgebra) -> BilinearForm {
    let ad = adjoint_rep(g);
    let d = g.dim();
    let mut gram = Matrix::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let t = ad.matrix(i).mul(ad.matrix(j)).trace();
            gram[(i, j)] = t.clone();
            gram[(j, i)] = t;
        }
    }
    BilinearForm::new(gram).expect("trace form is symmetric")
}

/// Basis of the space of symmetric Gram matrices `G` with
/// `rho(x)^T G + G rho(x) = 0` for all `x`.
pub fn invariant_symmetric_forms(rep: &Representation) -> Vec<Matrix> {
    let n = rep.space_dim;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let idx = |a: usize, b: usize| pairs.iter().position(|&p| p == (a.min(b), a.max(b))).unwrap();
    let mut rows = Vec::new();
    for m in &rep.matrices {
        // (M^T G + G M)_{ab} = sum_c M_{ca} G_{cb} + G_{ac} M_{cb}
        for &(a, b) in &pairs {
            let mut row = vec![Scalar::zero(); pairs.len()];
            for c in 0..n {
                row[idx(c, b)] += &m[(c, a)];
                row[idx(a, c)] += &m[(c, b)];
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        rows.push(vec![Scalar::zero(); pairs.len()]);
    }
    let system = Matrix::from_rows(rows).expect("rectangular system");
    system
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut g = Matrix::zeros(n, n);
            for (k, &(a, b)) in pairs.iter().enumerate() {
                g[(a, b)] = v[k].clone();
                g[(b, a)] = v[k].clone();
            }
            g
        })
        .collect()
}
