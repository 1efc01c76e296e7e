//! `takiff`: JSON front end to the library.
//!
//! Exit codes: 0 success, 1 usage/IO/validation error or failed check,
//! 2 field refused (witness printed), 3 internal-consistency failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use takiff::cli::{format_reports_human, generate_instance, random, run_suites, InstanceJson, RunConfig};
use takiff::dixmier::{builtin_solver, takiff_decompose, verify_decomposition};
use takiff::invariants::{faa_di_bruno_lift, invariance_witness, lift_invariant, tangency_check, SamplePoint};
use takiff::io::{
    read_json, to_json_string, AlgebraJson, DecompositionJson, FieldJson, PointJson, PolynomialJson,
    RepresentationJson,
};
use takiff::lie::{standard, LieAlgebra, Representation, StandardKind};
use takiff::poly::format_scalar;
use takiff::takiff::{build_takiff, lift_representation, verify_flip_identity};
use takiff::Error;

#[derive(Parser)]
#[command(name = "takiff", version, about = "Exact computations with Takiff algebras, lifted invariants and Killing-field decompositions")]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    human: bool,
    /// Write output to a file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct AlgebraSource {
    /// Algebra JSON file.
    #[arg(long, conflicts_with = "kind", required_unless_present = "kind")]
    algebra: Option<PathBuf>,
    /// Built-in kind: so:N, so:P,Q, sl2, sl2-adjoint, gl:N, abelian:D,N.
    #[arg(long)]
    kind: Option<StandardKind>,
}

#[derive(Args)]
struct RepSource {
    /// Representation JSON file.
    #[arg(long, conflicts_with = "kind", required_unless_present = "kind")]
    rep: Option<PathBuf>,
    /// Built-in kind: so:N, so:P,Q, sl2, sl2-adjoint, gl:N, abelian:D,N.
    #[arg(long)]
    kind: Option<StandardKind>,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the Takiff algebra g_m.
    Build {
        #[command(flatten)]
        source: AlgebraSource,
        #[arg(long)]
        level: usize,
    },
    /// Emit the lifted representation rho_m (with g_m embedded).
    LiftRep {
        #[command(flatten)]
        source: RepSource,
        #[arg(long)]
        level: usize,
    },
    /// Emit Phi_0, ..., Phi_m for an invariant polynomial.
    LiftInvariant {
        #[command(flatten)]
        source: RepSource,
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        level: usize,
        /// Lift even when phi is not invariant.
        #[arg(long)]
        allow_noninvariant: bool,
        /// Use the partition formula instead of curve expansion.
        #[arg(long)]
        faa_di_bruno: bool,
    },
    /// Test a polynomial for invariance (under rho_m when --level is given).
    CheckInvariant {
        #[command(flatten)]
        source: RepSource,
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        level: Option<usize>,
    },
    /// Pointwise orbit-tangency test of a field.
    Tangency {
        #[command(flatten)]
        source: RepSource,
        #[arg(long)]
        field: PathBuf,
        /// Points file; sampled from the seed when absent.
        #[arg(long)]
        points: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        level: Option<usize>,
    },
    /// Decompose a field on V_m into Killing fields of rho_m.
    Decompose {
        #[command(flatten)]
        source: RepSource,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        field: PathBuf,
        /// Expected number of parameter variables in the field's ring.
        #[arg(long)]
        params: Option<usize>,
    },
    /// Check a decomposition against a field.
    Verify {
        #[command(flatten)]
        source: RepSource,
        #[arg(long)]
        field: PathBuf,
        #[arg(long)]
        dec: PathBuf,
    },
    /// Check the flip identity between coadjoint representations.
    VerifyFlip {
        #[command(flatten)]
        source: AlgebraSource,
        #[arg(long)]
        level: usize,
    },
    /// Run property suites ("all" for every suite).
    Suite {
        #[arg(default_value = "all")]
        names: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random cases per grid point.
        #[arg(long, default_value_t = 5)]
        cases: usize,
    },
    /// Manufacture a decomposable field rho_m(b) F from a seed.
    Generate {
        #[arg(long, default_value = "so:3")]
        kind: StandardKind,
        #[arg(long, default_value_t = 1)]
        level: usize,
        #[arg(long, default_value_t = 2)]
        degree: u32,
        #[arg(long, default_value_t = 1)]
        params: usize,
        /// Maximum terms per coefficient; 0 gives b = 0.
        #[arg(long, default_value_t = 3)]
        terms: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Rendered result plus the exit code it calls for.
struct Output {
    json: String,
    human: String,
    code: u8,
}

impl Output {
    fn new<T: Serialize>(value: &T, human: String) -> anyhow::Result<Self> {
        Ok(Output { json: to_json_string(value)?, human, code: 0 })
    }

    fn with_code(mut self, code: u8) -> Self {
        self.code = code;
        self
    }
}

fn load_algebra(src: &AlgebraSource) -> anyhow::Result<LieAlgebra> {
    match (&src.algebra, &src.kind) {
        (Some(path), _) => Ok(read_json::<AlgebraJson>(path)
            .with_context(|| format!("reading {}", path.display()))?
            .to_algebra()?),
        (None, Some(kind)) => Ok(standard(kind)?.0),
        (None, None) => bail!("one of --algebra or --kind is required"),
    }
}

fn load_rep(src: &RepSource) -> anyhow::Result<Representation> {
    match (&src.rep, &src.kind) {
        (Some(path), _) => Ok(read_json::<RepresentationJson>(path)
            .with_context(|| format!("reading {}", path.display()))?
            .to_representation()?),
        (None, Some(kind)) => Ok(standard(kind)?.1),
        (None, None) => bail!("one of --rep or --kind is required"),
    }
}

fn read<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    read_json(path).with_context(|| format!("reading {}", path.display()))
}

fn lifted(rep: &Representation, level: usize) -> anyhow::Result<takiff::takiff::LiftedRepresentation> {
    let ctx = build_takiff(rep.algebra(), level)?;
    Ok(lift_representation(&ctx, rep)?)
}

fn run(command: Command) -> anyhow::Result<Output> {
    match command {
        Command::Build { source, level } => {
            let g = load_algebra(&source)?;
            let ctx = build_takiff(&g, level)?;
            let human = format!("g_{level}: dimension {}, basis {}\n", ctx.algebra().dim(), ctx.algebra().names().join(" "));
            Output::new(&AlgebraJson::from(ctx.algebra()), human)
        }
        Command::LiftRep { source, level } => {
            let rep = load_rep(&source)?;
            let l = lifted(&rep, level)?;
            let human = format!(
                "rho_{level}: g_{level} of dimension {} acting on K^{}\n",
                l.rep().algebra().dim(),
                l.rep().space_dim()
            );
            Output::new(&RepresentationJson::from(l.rep()), human)
        }
        Command::LiftInvariant { source, phi, level, allow_noninvariant, faa_di_bruno } => {
            let rep = load_rep(&source)?;
            let phi = read::<PolynomialJson>(&phi)?.to_polynomial()?;
            let lifts = if faa_di_bruno {
                if !allow_noninvariant {
                    if let Some((index, residual)) = invariance_witness(&rep, &phi)? {
                        return Err(Error::NotInvariant { index, residual }.into());
                    }
                }
                faa_di_bruno_lift(&phi, level)?
            } else {
                lift_invariant(&lifted(&rep, level)?, &phi, allow_noninvariant)?
            };
            let mut human = String::new();
            for (k, p) in lifts.iter().enumerate() {
                let _ = writeln!(human, "Phi_{k} = {p}");
            }
            let json: Vec<PolynomialJson> = lifts.iter().map(PolynomialJson::from).collect();
            Output::new(&json, human)
        }
        Command::CheckInvariant { source, phi, level } => {
            let base = load_rep(&source)?;
            let rep = match level {
                Some(m) => lifted(&base, m)?.rep().clone(),
                None => base,
            };
            let phi = read::<PolynomialJson>(&phi)?.to_polynomial()?;
            let witness = invariance_witness(&rep, &phi)?;
            let human = match &witness {
                None => "invariant\n".to_string(),
                Some((i, r)) => format!("not invariant: Killing field {i} gives {r}\n"),
            };
            let json = json!({
                "invariant": witness.is_none(),
                "index": witness.as_ref().map(|w| w.0),
                "residual": witness.as_ref().map(|w| PolynomialJson::from(&w.1)),
            });
            Output::new(&json, human)
        }
        Command::Tangency { source, field, points, samples, seed, level } => {
            let base = load_rep(&source)?;
            let rep = match level {
                Some(m) => lifted(&base, m)?.rep().clone(),
                None => base,
            };
            let field = read::<FieldJson>(&field)?.to_field()?;
            let pts: Vec<SamplePoint> = match points {
                Some(p) => read::<Vec<PointJson>>(&p)?.iter().map(PointJson::to_point).collect::<Result<_, _>>()?,
                None => {
                    let cfg = RunConfig { seed, ..RunConfig::default() }.with_env_seed()?;
                    let mut rng = random::rng_from_seed(cfg.seed);
                    let np = field.ring().parameter_vars().len();
                    (0..samples)
                        .map(|_| SamplePoint {
                            state: random::random_point(&mut rng, rep.space_dim()),
                            params: random::random_point(&mut rng, np),
                        })
                        .collect()
                }
            };
            let report = tangency_check(&rep, field.as_polymap(), &pts)?;
            let mut human = String::new();
            for (p, v) in pts.iter().zip(&report.points) {
                let coords: Vec<String> = p.state.iter().map(format_scalar).collect();
                let _ = writeln!(human, "({}): {}", coords.join(", "), if v.member { "tangent" } else { "not tangent" });
            }
            let json = json!({
                "points": pts.iter().map(PointJson::from).collect::<Vec<_>>(),
                "report": report,
            });
            Output::new(&json, human)
        }
        Command::Decompose { source, level, field, params } => {
            let rep = load_rep(&source)?;
            let field = read::<FieldJson>(&field)?.to_field()?;
            if let Some(k) = params {
                let got = field.ring().parameter_vars().len();
                if got != k {
                    bail!("--params {k} given but the field has {got} parameter variables");
                }
            }
            let l = lifted(&rep, level)?;
            let solver = builtin_solver(&rep)?;
            let dec = takiff_decompose(&l, solver.as_ref(), &field)?;
            let report = verify_decomposition(&l, &field, &dec)?;
            let mut human = String::new();
            for (r, b) in dec.coefficients().iter().enumerate() {
                for (i, p) in b.iter().enumerate() {
                    let _ = writeln!(human, "b_{r}[{i}] = {p}");
                }
            }
            let _ = writeln!(human, "verified: {}", report.ok);
            let code = if report.ok { 0 } else { 3 };
            let json = json!({ "decomposition": DecompositionJson::from(&dec), "verification": report });
            Ok(Output::new(&json, human)?.with_code(code))
        }
        Command::Verify { source, field, dec } => {
            let rep = load_rep(&source)?;
            let field = read::<FieldJson>(&field)?.to_field()?;
            let dec = read::<DecompositionJson>(&dec)?.to_decomposition()?;
            let l = lifted(&rep, dec.level())?;
            let report = verify_decomposition(&l, &field, &dec)?;
            let mut human = format!("verified: {}\n", report.ok);
            for (j, blk) in report.residuals.iter().enumerate() {
                for (c, res) in blk.iter().enumerate().filter(|(_, r)| *r != "0") {
                    let _ = writeln!(human, "residual block {j} component {c}: {res}");
                }
            }
            let code = if report.ok { 0 } else { 1 };
            Ok(Output::new(&report, human)?.with_code(code))
        }
        Command::VerifyFlip { source, level } => {
            let g = load_algebra(&source)?;
            let report = verify_flip_identity(&g, level);
            let human = format!(
                "flip identity at level {level}: {} ({} basis elements)\n",
                if report.passed { "holds" } else { "fails" },
                report.checked
            );
            let code = if report.passed { 0 } else { 1 };
            Ok(Output::new(&report, human)?.with_code(code))
        }
        Command::Suite { names, seed, cases } => {
            let cfg = RunConfig { seed, cases, ..RunConfig::default() }.with_env_seed()?;
            let reports = run_suites(&names, &cfg)?;
            let code = if reports.iter().all(|r| r.passed) { 0 } else { 1 };
            Ok(Output::new(&reports, format_reports_human(&reports))?.with_code(code))
        }
        Command::Generate { kind, level, degree, params, terms, seed } => {
            let cfg = RunConfig { seed, max_degree: degree, level, kind, params, terms, ..RunConfig::default() }
                .with_env_seed()?;
            let inst = generate_instance(&cfg)?;
            let mut human = format!("{} level {level} seed {}\n", cfg.kind, cfg.seed);
            for (i, c) in inst.field.components().iter().enumerate() {
                let _ = writeln!(human, "a[{}] = {c}", inst.field.ring().var_name(inst.field.ring().state_vars()[i]));
            }
            Output::new(&InstanceJson::from(&inst), human)
        }
    }
}

fn emit(text: &str, path: Option<&Path>) -> anyhow::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let args = Cli::parse();
    let human = args.human;
    let output = args.output.clone();
    let result = run(args.command).and_then(|out| {
        emit(if human { &out.human } else { &out.json }, output.as_deref())?;
        Ok(out.code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => match err.downcast_ref::<Error>() {
            Some(Error::Refused { reason, witness }) => {
                let text = if human {
                    format!("refused: {reason}\nwitness: {witness}\n")
                } else {
                    let body = json!({ "status": "refused", "reason": reason, "witness": PolynomialJson::from(witness) });
                    to_json_string(&body).unwrap_or_default()
                };
                if let Err(e) = emit(&text, output.as_deref()) {
                    eprintln!("error: {e:#}");
                }
                ExitCode::from(2)
            }
            Some(Error::Internal(msg)) => {
                eprintln!("internal consistency failure: {msg}");
                ExitCode::from(3)
            }
            _ => {
                eprintln!("error: {err:#}");
                ExitCode::from(1)
            }
        },
    }
}
