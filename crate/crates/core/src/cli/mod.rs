//! Run configuration, seeded instance generation and property-suite reports
//! behind the `takiff` binary.

pub mod random;
mod suites;

use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::dixmier::{lifted_field, Decomposition, VectorField};
use crate::error::{Error, Result};
use crate::io::{AlgebraJson, DecompositionJson, FieldJson, PolynomialJson, RepresentationJson};
use crate::lie::{standard, LieAlgebra, Representation, StandardKind};
use crate::poly::{Polynomial, VariableBlock};
use crate::takiff::lifted_ring;

pub use suites::{run_suite, run_suites, SUITES};

/// Environment variable that replaces the configured seed.
pub const SEED_ENV: &str = "TAKIFF_SEED";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub max_degree: u32,
    pub level: usize,
    #[serde(with = "kind_string")]
    pub kind: StandardKind,
    /// Number of parameter variables (one block `w`).
    pub params: usize,
    /// Maximum number of terms per random coefficient; zero gives `b = 0`.
    pub terms: usize,
    /// Random cases per grid point in the suites.
    pub cases: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            max_degree: 2,
            level: 1,
            kind: StandardKind::SoN(3),
            params: 1,
            terms: 3,
            cases: 5,
        }
    }
}

impl RunConfig {
    /// Applies [`SEED_ENV`] when it is set.
    pub fn with_env_seed(mut self) -> Result<Self> {
        if let Ok(s) = std::env::var(SEED_ENV) {
            self.seed = s
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{SEED_ENV}={s:?} is not a 64-bit unsigned integer")))?;
        }
        Ok(self)
    }
}

mod kind_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::lie::StandardKind;

    pub fn serialize<S: Serializer>(k: &StandardKind, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(k)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<StandardKind, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// The parameter block `w` of size `k`, or nothing for `k = 0`.
pub fn param_blocks(k: usize) -> Vec<VariableBlock> {
    if k == 0 {
        Vec::new()
    } else {
        vec![VariableBlock::parameter("w", k)]
    }
}

/// A field manufactured as `rho_m(b) F`.
#[derive(Debug, Clone)]
pub struct Instance {
    pub config: RunConfig,
    pub algebra: LieAlgebra,
    pub rep: Representation,
    pub coefficients: Decomposition,
    pub field: VectorField,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceJson {
    pub config: RunConfig,
    pub algebra: AlgebraJson,
    pub rep: RepresentationJson,
    pub coefficients: DecompositionJson,
    pub field: FieldJson,
}

impl From<&Instance> for InstanceJson {
    fn from(i: &Instance) -> Self {
        InstanceJson {
            config: i.config.clone(),
            algebra: (&i.algebra).into(),
            rep: (&i.rep).into(),
            coefficients: (&i.coefficients).into(),
            field: (&i.field).into(),
        }
    }
}

/// Draws `b` over `W x V_m` and returns the field `rho_m(b) F`.
pub fn generate_instance(config: &RunConfig) -> Result<Instance> {
    let (algebra, rep) = standard(&config.kind)?;
    let ring = lifted_ring(config.level, rep.space_dim(), &param_blocks(config.params))?;
    let mut rng = random::rng_from_seed(config.seed);
    let b = random::random_coefficients(
        &mut rng,
        &ring,
        algebra.dim(),
        config.level,
        config.max_degree,
        config.terms,
    );
    let field = lifted_field(&rep, &b, &ring)?;
    Ok(Instance {
        config: config.clone(),
        algebra,
        rep,
        coefficients: Decomposition::new(&ring, b)?,
        field,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub case: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<PolynomialJson>,
}

/// Outcome of one property suite. Timing is kept out of the JSON form so
/// reports stay byte-identical across runs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub operation: String,
    pub passed: bool,
    pub checked: usize,
    pub witnesses: Vec<Witness>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Report {
    pub fn new(operation: impl Into<String>) -> Self {
        Report {
            operation: operation.into(),
            passed: true,
            checked: 0,
            witnesses: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn pass(&mut self) {
        self.checked += 1;
    }

    pub fn fail(&mut self, case: impl Into<String>, message: impl Into<String>) -> &mut Witness {
        self.checked += 1;
        self.passed = false;
        self.witnesses.push(Witness {
            case: case.into(),
            message: message.into(),
            index: None,
            polynomial: None,
        });
        self.witnesses.last_mut().unwrap()
    }

    /// Records `ok`, building the failure message lazily.
    pub fn check(&mut self, ok: bool, case: impl FnOnce() -> String) {
        if ok {
            self.pass();
        } else {
            self.fail(case(), "check failed");
        }
    }

    pub fn record<T>(&mut self, case: impl FnOnce() -> String, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                let w = self.fail(case(), e.to_string());
                if let Error::Refused { witness, .. } | Error::NotInvariant { residual: witness, .. } = &e {
                    w.polynomial = Some(PolynomialJson::from(witness));
                }
                None
            }
        }
    }
}

pub fn polynomial_witness(p: &Polynomial) -> PolynomialJson {
    PolynomialJson::from(p)
}

/// One line per report, then witnesses indented below failures.
pub fn format_reports_human(reports: &[Report]) -> String {
    let mut out = String::new();
    for r in reports {
        let status = if r.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "{status} {:<14} {:>6} checks  {:.2}s",
            r.operation,
            r.checked,
            r.elapsed.as_secs_f64()
        );
        for w in &r.witnesses {
            let _ = writeln!(out, "    {}: {}", w.case, w.message);
        }
    }
    out
}
