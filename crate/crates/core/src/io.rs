//! JSON interchange formats.
//!
//! Scalars travel as strings `"p/q"` (integers as `"p"`), monomials as maps
//! from variable names `"block.index"` to exponents. Emission order follows
//! the canonical term order, so equal values always serialize identically.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::dixmier::{Decomposition, VectorField};
use crate::error::{Error, Result};
use crate::invariants::SamplePoint;
use crate::lie::{LieAlgebra, Representation};
use crate::matrix::Matrix;
use crate::poly::{format_scalar, parse_scalar, Monomial, Polynomial, Ring, Scalar, VariableBlock};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exps: BTreeMap<String, u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub ring: Vec<VariableBlock>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dim: usize,
    pub names: Vec<String>,
    pub c: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationJson {
    pub algebra: AlgebraJson,
    pub space_dim: usize,
    pub matrices: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub ring: Vec<VariableBlock>,
    pub components: Vec<Vec<TermJson>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub level: usize,
    pub ring: Vec<VariableBlock>,
    /// `coefficients[r][i]`: coordinate `i` of `b_r`.
    pub coefficients: Vec<Vec<Vec<TermJson>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    pub state: Vec<String>,
    #[serde(default)]
    pub params: Vec<String>,
}

fn scalars_out(xs: &[Scalar]) -> Vec<String> {
    xs.iter().map(format_scalar).collect()
}

fn scalars_in(xs: &[String]) -> Result<Vec<Scalar>> {
    xs.iter().map(|s| parse_scalar(s)).collect()
}

pub fn matrix_to_json(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| scalars_out(r)).collect()
}

pub fn matrix_from_json(rows: &[Vec<String>]) -> Result<Matrix> {
    Matrix::from_rows(rows.iter().map(|r| scalars_in(r)).collect::<Result<_>>()?)
}

fn terms_out(p: &Polynomial) -> Vec<TermJson> {
    let ring = p.ring();
    p.terms()
        .map(|(m, c)| TermJson {
            coeff: format_scalar(c),
            exps: m.iter().map(|(v, e)| (ring.var_name(v), e)).collect(),
        })
        .collect()
}

fn terms_in(ring: &Arc<Ring>, terms: &[TermJson]) -> Result<Polynomial> {
    let mut p = Polynomial::zero(ring);
    for t in terms {
        let exps = t
            .exps
            .iter()
            .map(|(name, e)| Ok((ring.parse_var(name)?, *e)))
            .collect::<Result<Vec<_>>>()?;
        p.add_term(Monomial::from_exponents(exps), parse_scalar(&t.coeff)?);
    }
    Ok(p)
}

fn ring_in(blocks: &[VariableBlock]) -> Result<Arc<Ring>> {
    Ring::new(blocks.to_vec())
}

impl From<&Polynomial> for PolynomialJson {
    fn from(p: &Polynomial) -> Self {
        PolynomialJson { ring: p.ring().blocks().to_vec(), terms: terms_out(p) }
    }
}

impl PolynomialJson {
    pub fn to_polynomial(&self) -> Result<Polynomial> {
        terms_in(&ring_in(&self.ring)?, &self.terms)
    }
}

impl From<&LieAlgebra> for AlgebraJson {
    fn from(g: &LieAlgebra) -> Self {
        AlgebraJson {
            dim: g.dim(),
            names: g.names().to_vec(),
            c: g.constants().iter().map(|m| m.iter().map(|r| scalars_out(r)).collect()).collect(),
        }
    }
}

impl AlgebraJson {
    pub fn to_algebra(&self) -> Result<LieAlgebra> {
        if self.names.len() != self.dim {
            return Err(Error::Parse(format!("dim {} but {} names", self.dim, self.names.len())));
        }
        let c = self
            .c
            .iter()
            .map(|m| m.iter().map(|r| scalars_in(r)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        LieAlgebra::new(self.names.clone(), c)
    }
}

impl From<&Representation> for RepresentationJson {
    fn from(rep: &Representation) -> Self {
        RepresentationJson {
            algebra: rep.algebra().into(),
            space_dim: rep.space_dim(),
            matrices: rep.matrices().iter().map(matrix_to_json).collect(),
        }
    }
}

impl RepresentationJson {
    pub fn to_representation(&self) -> Result<Representation> {
        let mats = self.matrices.iter().map(|m| matrix_from_json(m)).collect::<Result<_>>()?;
        Representation::new(self.algebra.to_algebra()?, self.space_dim, mats)
    }
}

impl From<&VectorField> for FieldJson {
    fn from(f: &VectorField) -> Self {
        FieldJson { ring: f.ring().blocks().to_vec(), components: f.components().iter().map(terms_out).collect() }
    }
}

impl FieldJson {
    pub fn to_field(&self) -> Result<VectorField> {
        let ring = ring_in(&self.ring)?;
        let comps = self.components.iter().map(|t| terms_in(&ring, t)).collect::<Result<_>>()?;
        VectorField::new(&ring, comps)
    }
}

impl From<&Decomposition> for DecompositionJson {
    fn from(d: &Decomposition) -> Self {
        DecompositionJson {
            level: d.level(),
            ring: d.ring().blocks().to_vec(),
            coefficients: d
                .coefficients()
                .iter()
                .map(|b| b.iter().map(terms_out).collect())
                .collect(),
        }
    }
}

impl DecompositionJson {
    pub fn to_decomposition(&self) -> Result<Decomposition> {
        if self.coefficients.len() != self.level + 1 {
            return Err(Error::Parse(format!(
                "level {} needs {} coefficient blocks, got {}",
                self.level,
                self.level + 1,
                self.coefficients.len()
            )));
        }
        let ring = ring_in(&self.ring)?;
        let coeffs = self
            .coefficients
            .iter()
            .map(|b| b.iter().map(|t| terms_in(&ring, t)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Decomposition::new(&ring, coeffs)
    }
}

impl From<&SamplePoint> for PointJson {
    fn from(p: &SamplePoint) -> Self {
        PointJson { state: scalars_out(&p.state), params: scalars_out(&p.params) }
    }
}

impl PointJson {
    pub fn to_point(&self) -> Result<SamplePoint> {
        Ok(SamplePoint { state: scalars_in(&self.state)?, params: scalars_in(&self.params)? })
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn polynomial_to_string(p: &Polynomial) -> Result<String> {
    to_json_string(&PolynomialJson::from(p))
}

pub fn polynomial_from_str(s: &str) -> Result<Polynomial> {
    serde_json::from_str::<PolynomialJson>(s)?.to_polynomial()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::sl2;
    use crate::poly::{frac, Var};

    #[test]
    fn polynomial_format() {
        let ring = Ring::new(vec![VariableBlock::state("f0", 2)]).unwrap();
        let p = Polynomial::var(&ring, Var(0)).pow(2).scale(&frac(1, 2));
        let json = serde_json::to_value(PolynomialJson::from(&p)).unwrap();
        let expected = serde_json::json!({
            "ring": [{"name": "f0", "size": 2, "role": "state"}],
            "terms": [{"coeff": "1/2", "exps": {"f0.0": 2}}]
        });
        assert_eq!(json, expected);
        assert_eq!(polynomial_from_str(&json.to_string()).unwrap(), p);
    }

    #[test]
    fn parse_errors() {
        let bad_var = r#"{"ring":[{"name":"v","size":1,"role":"state"}],"terms":[{"coeff":"1","exps":{"v.3":1}}]}"#;
        assert!(polynomial_from_str(bad_var).is_err());
        let bad_coeff = r#"{"ring":[{"name":"v","size":1,"role":"state"}],"terms":[{"coeff":"1/0","exps":{}}]}"#;
        assert!(polynomial_from_str(bad_coeff).is_err());
    }

    #[test]
    fn representation_roundtrip() {
        let (_, rho) = sl2();
        let json = RepresentationJson::from(&rho);
        assert_eq!(json.matrices[0], vec![vec!["0", "1"], vec!["0", "0"]]);
        assert_eq!(json.to_representation().unwrap(), rho);
        let mut broken = json.clone();
        broken.algebra.c[0][1][0] = "5".into();
        assert!(broken.to_representation().is_err());
    }
}
