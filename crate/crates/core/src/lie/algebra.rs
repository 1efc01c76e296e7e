use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Scalar;

/// Finite-dimensional Lie algebra over Q given by structure constants
/// `[x_i, x_j] = sum_k c[i][j][k] x_k`.
///
/// Antisymmetry and the Jacobi identity are checked exactly when the value
/// is built, so every `LieAlgebra` in circulation is a genuine Lie algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    names: Vec<String>,
    constants: Vec<Scalar>,
    /// Nonzero entries of `[x_i, x_j]`, indexed by `i * dim + j`.
    brackets: Vec<Vec<(usize, Scalar)>>,
}

impl LieAlgebra {
    pub fn new(names: Vec<String>, constants: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        let dim = names.len();
        if constants.len() != dim
            || constants.iter().any(|row| {
                row.len() != dim || row.iter().any(|col| col.len() != dim)
            })
        {
            return Err(Error::Shape(format!("structure constants must be {dim}x{dim}x{dim}")));
        }
        let flat: Vec<Scalar> = constants.into_iter().flatten().flatten().collect();
        Self::from_flat(names, flat)
    }

    /// Constants laid out as `c[(i * dim + j) * dim + k]`.
    pub fn from_flat(names: Vec<String>, constants: Vec<Scalar>) -> Result<Self> {
        let dim = names.len();
        if constants.len() != dim * dim * dim {
            return Err(Error::Shape(format!(
                "expected {} structure constants, got {}",
                dim * dim * dim,
                constants.len()
            )));
        }
        let brackets = (0..dim * dim)
            .map(|ij| {
                (0..dim)
                    .filter_map(|k| {
                        let c = &constants[ij * dim + k];
                        (!c.is_zero()).then(|| (k, c.clone()))
                    })
                    .collect()
            })
            .collect();
        let g = LieAlgebra { names, constants, brackets };
        g.check_antisymmetry()?;
        g.check_jacobi()?;
        Ok(g)
    }

    /// The abelian algebra of dimension `dim` (possibly zero).
    pub fn abelian(dim: usize) -> Self {
        let names = (0..dim).map(|i| format!("a{i}")).collect();
        Self::from_flat(names, vec![Scalar::zero(); dim * dim * dim]).expect("abelian algebra")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        let d = self.dim();
        &self.constants[(i * d + j) * d + k]
    }

    /// Nested `c[i][j][k]`.
    pub fn constants(&self) -> Vec<Vec<Vec<Scalar>>> {
        let d = self.dim();
        (0..d)
            .map(|i| (0..d).map(|j| (0..d).map(|k| self.constant(i, j, k).clone()).collect()).collect())
            .collect()
    }

    /// Nonzero coordinates of `[x_i, x_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.brackets[i * self.dim() + j]
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        assert!(x.len() == d && y.len() == d);
        let mut out = vec![Scalar::zero(); d];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in self.bracket_basis(i, j) {
                    out[*k] += &ab * c;
                }
            }
        }
        out
    }

    fn check_antisymmetry(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            for j in i..d {
                for k in 0..d {
                    if !(self.constant(i, j, k) + self.constant(j, i, k)).is_zero() {
                        return Err(Error::Antisymmetry { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    /// `[x_i, [x_j, x_k]]` accumulated into `out` with factor one.
    fn accumulate_nested(&self, i: usize, j: usize, k: usize, out: &mut [Scalar]) {
        for (l, c) in self.bracket_basis(j, k) {
            for (n, e) in self.bracket_basis(i, *l) {
                out[*n] += c * e;
            }
        }
    }

    /// Jacobi on all triples `i < j < k`; repeated indices follow from
    /// antisymmetry.
    fn check_jacobi(&self) -> Result<()> {
        let d = self.dim();
        let mut acc = vec![Scalar::zero(); d];
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    acc.iter_mut().for_each(|a| a.set_zero());
                    self.accumulate_nested(i, j, k, &mut acc);
                    self.accumulate_nested(j, k, i, &mut acc);
                    self.accumulate_nested(k, i, j, &mut acc);
                    if acc.iter().any(|a| !a.is_zero()) {
                        return Err(Error::Jacobi { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }
}
