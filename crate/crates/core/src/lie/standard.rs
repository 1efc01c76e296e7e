//! Standard matrix Lie algebras with their defining representations.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use super::algebra::LieAlgebra;
use super::rep::{adjoint_rep, Representation};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{int, Scalar};

/// Lie algebra spanned by linearly independent matrices closed under
/// commutators, together with its tautological representation. Structure
/// constants are read off by solving for each commutator in the basis.
pub fn algebra_from_matrices(
    names: Vec<String>,
    space_dim: usize,
    matrices: Vec<Matrix>,
) -> Result<(LieAlgebra, Representation)> {
    let d = matrices.len();
    if names.len() != d {
        return Err(Error::Shape(format!("{} names for {d} matrices", names.len())));
    }
    if d == 0 {
        let g = LieAlgebra::abelian(0);
        let rep = Representation::new(g.clone(), space_dim, Vec::new())?;
        return Ok((g, rep));
    }
    let nn = space_dim * space_dim;
    let mut basis = Matrix::zeros(nn, d);
    for (k, m) in matrices.iter().enumerate() {
        if m.rows() != space_dim || m.cols() != space_dim {
            return Err(Error::Shape("matrix of wrong size".into()));
        }
        for (e, v) in m.entries().iter().enumerate() {
            basis[(e, k)] = v.clone();
        }
    }
    if basis.rank() != d {
        return Err(Error::Validation("basis matrices are linearly dependent".into()));
    }
    let mut constants = vec![Scalar::zero(); d * d * d];
    for i in 0..d {
        for j in i + 1..d {
            let comm = matrices[i].commutator(&matrices[j]);
            let x = basis.solve(comm.entries()).ok_or_else(|| {
                Error::Validation(format!("commutator of basis elements {i}, {j} leaves the span"))
            })?;
            for (k, c) in x.into_iter().enumerate() {
                constants[(j * d + i) * d + k] = -c.clone();
                constants[(i * d + j) * d + k] = c;
            }
        }
    }
    let g = LieAlgebra::from_flat(names, constants)?;
    let rep = Representation::new(g.clone(), space_dim, matrices)?;
    Ok((g, rep))
}

/// `so(n)` on `K^n` with basis `J_ij` (`i < j`, lexicographic), where `J_ij`
/// sends `e_i` to `e_j` and `e_j` to `-e_i`. For `n = 2` this is the matrix
/// `[[0, -1], [1, 0]]`.
pub fn so_n(n: usize) -> Result<(LieAlgebra, Representation)> {
    if n < 2 {
        return Err(Error::Validation(format!("so(n) needs n >= 2, got {n}")));
    }
    so_pq(n, 0)
}

/// `so(p, q)`: matrices preserving `diag(1, ..., 1, -1, ..., -1)`. The basis
/// element for `i < j` has entry `g_i` at `(j, i)` and `-g_j` at `(i, j)`.
pub fn so_pq(p: usize, q: usize) -> Result<(LieAlgebra, Representation)> {
    let n = p + q;
    if n < 2 {
        return Err(Error::Validation(format!("so(p, q) needs p + q >= 2, got {n}")));
    }
    let sign = |i: usize| if i < p { int(1) } else { int(-1) };
    let mut names = Vec::new();
    let mut mats = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut m = Matrix::zeros(n, n);
            m[(j, i)] = sign(i);
            m[(i, j)] = -sign(j);
            names.push(format!("J{}_{}", i + 1, j + 1));
            mats.push(m);
        }
    }
    algebra_from_matrices(names, n, mats)
}

/// The Gram matrix `diag(1, ..., 1, -1, ..., -1)` preserved by [`so_pq`].
pub fn so_pq_gram(p: usize, q: usize) -> Matrix {
    let d: Vec<Scalar> = (0..p + q).map(|i| if i < p { int(1) } else { int(-1) }).collect();
    Matrix::diagonal(&d)
}

/// `sl(2)` with basis `(e, h, f)` acting on `K^2`.
pub fn sl2() -> (LieAlgebra, Representation) {
    let e = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
    let h = Matrix::from_ints(&[&[1, 0], &[0, -1]]);
    let f = Matrix::from_ints(&[&[0, 0], &[1, 0]]);
    algebra_from_matrices(["e", "h", "f"].map(String::from).to_vec(), 2, vec![e, h, f])
        .expect("sl(2) matrices")
}

/// `gl(n)` with basis `E_ij` in lexicographic order.
pub fn gl_n(n: usize) -> Result<(LieAlgebra, Representation)> {
    if n == 0 {
        return Err(Error::Validation("gl(0) is not supported".into()));
    }
    let mut names = Vec::new();
    let mut mats = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut m = Matrix::zeros(n, n);
            m[(i, j)] = int(1);
            names.push(format!("E{}_{}", i + 1, j + 1));
            mats.push(m);
        }
    }
    algebra_from_matrices(names, n, mats)
}

/// Abelian algebra acting through the given pairwise commuting matrices.
pub fn abelian(space_dim: usize, matrices: Vec<Matrix>) -> Result<(LieAlgebra, Representation)> {
    for (i, a) in matrices.iter().enumerate() {
        for (j, b) in matrices.iter().enumerate().skip(i + 1) {
            if a.rows() == b.rows() && !a.commutator(b).is_zero() {
                return Err(Error::Validation(format!("matrices {i} and {j} do not commute")));
            }
        }
    }
    let g = LieAlgebra::abelian(matrices.len());
    let rep = Representation::new(g.clone(), space_dim, matrices)?;
    Ok((g, rep))
}

/// Constructors selectable by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StandardKind {
    SoN(usize),
    SoPQ(usize, usize),
    Sl2,
    /// Adjoint representation of `sl(2)`.
    Sl2Adjoint,
    GlN(usize),
    /// Zero action of an abelian algebra of the given dimension on `K^n`.
    Abelian { dim: usize, space_dim: usize },
}

pub fn standard(kind: &StandardKind) -> Result<(LieAlgebra, Representation)> {
    match *kind {
        StandardKind::SoN(n) => so_n(n),
        StandardKind::SoPQ(p, q) => so_pq(p, q),
        StandardKind::Sl2 => Ok(sl2()),
        StandardKind::Sl2Adjoint => {
            let (g, _) = sl2();
            let ad = adjoint_rep(&g);
            Ok((g, ad))
        }
        StandardKind::GlN(n) => gl_n(n),
        StandardKind::Abelian { dim, space_dim } => {
            abelian(space_dim, vec![Matrix::zeros(space_dim, space_dim); dim])
        }
    }
}

/// Syntax: `so:N`, `so:P,Q`, `sl2`, `sl2-adjoint`, `gl:N`, `abelian:D,N`.
impl FromStr for StandardKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown representation kind {s:?}"));
        let nums = |args: &str| -> Result<Vec<usize>> {
            args.split(',').map(|a| a.trim().parse::<usize>().map_err(|_| bad())).collect()
        };
        let (head, args) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        match (head, args.map(nums).transpose()?.as_deref()) {
            ("so", Some([n])) => Ok(StandardKind::SoN(*n)),
            ("so", Some([p, q])) => Ok(StandardKind::SoPQ(*p, *q)),
            ("sl2", None) => Ok(StandardKind::Sl2),
            ("sl2-adjoint", None) => Ok(StandardKind::Sl2Adjoint),
            ("gl", Some([n])) => Ok(StandardKind::GlN(*n)),
            ("abelian", Some([dim, space_dim])) => Ok(StandardKind::Abelian { dim: *dim, space_dim: *space_dim }),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for StandardKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StandardKind::SoN(n) => write!(f, "so:{n}"),
            StandardKind::SoPQ(p, q) => write!(f, "so:{p},{q}"),
            StandardKind::Sl2 => write!(f, "sl2"),
            StandardKind::Sl2Adjoint => write!(f, "sl2-adjoint"),
            StandardKind::GlN(n) => write!(f, "gl:{n}"),
            StandardKind::Abelian { dim, space_dim } => write!(f, "abelian:{dim},{space_dim}"),
        }
    }
}
