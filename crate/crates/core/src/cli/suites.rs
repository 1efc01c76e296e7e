//! Named property suites. Each returns one [`Report`]; failures carry the
//! case and, where there is one, the offending polynomial.

use std::time::Instant;

use rand::Rng as _;

use super::random::{self, rng_from_seed, Rng};
use super::{param_blocks, Report, RunConfig};
use crate::dixmier::{
    annihilates_invariants, builtin_solver, lifted_field, lifted_generators, quadratic_base_solve,
    takiff_decompose, transport_decomposition, transport_field, verify_decomposition, Decomposition,
    VectorField,
};
use crate::error::{Error, Result};
use crate::invariants::{
    apply_killing, base_ring, cylindrical_invariance_check, differential_pairing, extract_linear_part,
    faa_di_bruno_lift, lift_invariant, quadratic_invariant,
};
use crate::io::PolynomialJson;
use crate::lie::{
    conjugate_representation, killing_form, standard, BilinearForm, LieAlgebra, Representation, StandardKind,
};
use crate::matrix::Matrix;
use crate::poly::{Polynomial, Ring, VariableBlock};
use crate::takiff::{build_takiff, lift_bilinear_form, lift_representation, lifted_ring, verify_flip_identity};

type SuiteFn = fn(&RunConfig) -> Report;

/// Suite names in report order.
pub const SUITES: &[(&str, SuiteFn)] = &[
    ("base-solver", base_solver),
    ("bilinear", bilinear),
    ("cylindrical", cylindrical),
    ("faa-di-bruno", faa_di_bruno),
    ("flip", flip),
    ("homomorphism", homomorphism),
    ("invariants", invariants),
    ("jacobi", jacobi),
    ("lift-structure", lift_structure),
    ("refusal", refusal),
    ("roundtrip", roundtrip),
    ("transport", transport),
];

pub fn run_suite(name: &str, config: &RunConfig) -> Result<Report> {
    let (_, f) = SUITES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Parse(format!("unknown suite {name:?}")))?;
    let start = Instant::now();
    let mut report = f(config);
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Runs the named suites (`"all"` selects every suite) on separate threads
/// and returns the reports sorted by name.
pub fn run_suites(names: &[String], config: &RunConfig) -> Result<Vec<Report>> {
    let mut selected: Vec<&str> = if names.iter().any(|n| n == "all") {
        SUITES.iter().map(|(n, _)| *n).collect()
    } else {
        names.iter().map(String::as_str).collect()
    };
    selected.sort_unstable();
    selected.dedup();
    for n in &selected {
        if !SUITES.iter().any(|(s, _)| s == n) {
            return Err(Error::Parse(format!("unknown suite {n:?}")));
        }
    }
    let mut reports = std::thread::scope(|scope| {
        let handles: Vec<_> = selected
            .iter()
            .map(|n| scope.spawn(move || run_suite(n, config)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect::<Result<Vec<_>>>()
    })?;
    reports.sort_by(|a, b| a.operation.cmp(&b.operation));
    Ok(reports)
}

fn algebras() -> Vec<(&'static str, LieAlgebra)> {
    vec![
        ("sl2", crate::lie::sl2().0),
        ("so3", crate::lie::so_n(3).unwrap().0),
        ("so4", crate::lie::so_n(4).unwrap().0),
        ("abelian2", LieAlgebra::abelian(2)),
    ]
}

fn kind(s: &str) -> StandardKind {
    s.parse().expect("built-in kind")
}

fn rep_of(s: &str) -> Representation {
    standard(&kind(s)).expect("built-in representation").1
}

/// Quadratic invariants used across suites: `Q` for `so(n)` and the
/// Killing quadratic for the adjoint of `sl(2)`.
fn quadratic_families() -> Vec<(&'static str, Representation, Polynomial)> {
    let mut out = Vec::new();
    for (name, n) in [("so:2", 2), ("so:3", 3), ("so:4", 4)] {
        out.push((name, rep_of(name), quadratic_invariant(&Matrix::identity(n))));
    }
    let (g, _) = crate::lie::sl2();
    out.push(("sl2-adjoint", rep_of("sl2-adjoint"), quadratic_invariant(killing_form(&g).gram())));
    out
}

fn case_rng(config: &RunConfig, salt: u64) -> Rng {
    rng_from_seed(config.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn jacobi(_: &RunConfig) -> Report {
    let mut r = Report::new("jacobi");
    for (name, g) in algebras() {
        for m in 0..=3 {
            if r.record(|| format!("{name} m={m}"), build_takiff(&g, m)).is_some() {
                r.pass();
            }
        }
    }
    r
}

fn homomorphism(_: &RunConfig) -> Report {
    let mut r = Report::new("homomorphism");
    for name in ["sl2", "sl2-adjoint", "so:3", "so:4", "abelian:2,2"] {
        let (g, rho) = standard(&kind(name)).unwrap();
        for m in 0..=3 {
            let lifted = build_takiff(&g, m).and_then(|ctx| lift_representation(&ctx, &rho));
            if let Some(l) = r.record(|| format!("{name} m={m}"), lifted) {
                r.check(l.rep().homomorphism_failure().is_none(), || format!("{name} m={m}"));
            }
        }
    }
    r
}

fn invariants(_: &RunConfig) -> Report {
    let mut r = Report::new("invariants");
    for (name, rho, phi) in quadratic_families() {
        for m in 0..=3 {
            let case = || format!("{name} m={m}");
            let Some(lifted) = r.record(case, build_takiff(rho.algebra(), m).and_then(|c| lift_representation(&c, &rho)))
            else {
                continue;
            };
            let Some(lifts) = r.record(case, lift_invariant(&lifted, &phi, false)) else { continue };
            for (k, big) in lifts.iter().enumerate() {
                for i in 0..lifted.rep().algebra().dim() {
                    match apply_killing(lifted.rep(), i, big) {
                        Ok(res) if res.is_zero() => r.pass(),
                        Ok(res) => {
                            let w = r.fail(format!("{name} m={m} Phi_{k}"), "Killing field leaves a residual");
                            w.index = Some(i);
                            w.polynomial = Some(PolynomialJson::from(&res));
                        }
                        Err(e) => {
                            r.fail(case(), e.to_string());
                        }
                    }
                }
            }
        }
    }
    r
}

fn lift_structure(_: &RunConfig) -> Report {
    let mut r = Report::new("lift-structure");
    for (name, rho, phi) in quadratic_families() {
        let n = rho.space_dim();
        for m in 0..=3 {
            let ring = lifted_ring(m, n, &[]).unwrap();
            let ctx = build_takiff(rho.algebra(), m).unwrap();
            let lifted = lift_representation(&ctx, &rho).unwrap();
            let Some(lifts) = r.record(|| format!("{name} m={m}"), lift_invariant(&lifted, &phi, false)) else {
                continue;
            };
            for (k, big) in lifts.iter().enumerate() {
                let case = || format!("{name} m={m} Phi_{k}");
                for j in k + 1..=m {
                    let free = ring.block_vars(&format!("f{j}")).unwrap().iter().all(|v| !big.depends_on(*v));
                    r.check(free, || format!("{name} m={m} Phi_{k} depends on f{j}"));
                }
                if k == 0 {
                    continue;
                }
                let Some((linear, psi)) = r.record(case, extract_linear_part(big, k)) else { continue };
                let fk_vars = ring.block_vars(&format!("f{k}")).unwrap();
                let fk: Vec<Polynomial> = fk_vars.iter().map(|v| Polynomial::var(&ring, *v)).collect();
                let expected = differential_pairing(&phi, &ring, &fk).unwrap();
                r.check(linear == expected, case);
                r.check(fk_vars.iter().all(|v| !psi.depends_on(*v)), case);
            }
        }
    }
    r
}

fn faa_di_bruno(config: &RunConfig) -> Report {
    let mut r = Report::new("faa-di-bruno");
    let mut rng = case_rng(config, 5);
    for case in 0..config.cases.max(1) * 10 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(0..=3);
        let ring = base_ring(n);
        let phi = random::random_sparse(&mut rng, &ring, &ring.state_vars(), 4, 5);
        let g = LieAlgebra::abelian(0);
        let rho = Representation::new(g.clone(), n, vec![]).unwrap();
        let lifted = lift_representation(&build_takiff(&g, m).unwrap(), &rho).unwrap();
        let a = lift_invariant(&lifted, &phi, true);
        let b = faa_di_bruno_lift(&phi, m);
        match (a, b) {
            (Ok(a), Ok(b)) => r.check(a == b, || format!("case {case}: n={n} m={m} phi={phi}")),
            (Err(e), _) | (_, Err(e)) => {
                r.fail(format!("case {case}"), e.to_string());
            }
        }
    }
    r
}

/// Random cylindrical `theta`: a combination of lifted invariants of level
/// `m - 1` for even cases, a random polynomial on `f0..f{m-1}` otherwise.
pub(crate) fn random_cylindrical(
    rng: &mut Rng,
    lifted_lower: &[Polynomial],
    ring: &std::sync::Arc<Ring>,
    m: usize,
    invariant: bool,
) -> Result<Polynomial> {
    if invariant {
        let mut theta = Polynomial::zero(ring);
        for _ in 0..rng.gen_range(1..=3) {
            let a = lifted_lower[rng.gen_range(0..lifted_lower.len())].embed(ring)?;
            let b = lifted_lower[rng.gen_range(0..lifted_lower.len())].embed(ring)?;
            let term = if rng.gen_bool(0.5) { &a * &b } else { a };
            theta.add_scaled(&random::random_scalar(rng), &term);
        }
        Ok(theta)
    } else {
        let mut vars = Vec::new();
        for j in 0..m {
            vars.extend(ring.block_vars(&format!("f{j}"))?);
        }
        Ok(random::random_sparse(rng, ring, &vars, 3, 4))
    }
}

fn cylindrical(config: &RunConfig) -> Report {
    let mut r = Report::new("cylindrical");
    let mut rng = case_rng(config, 6);
    let families = quadratic_families();
    for case in 0..config.cases.max(1) * 10 {
        let (name, rho, phi) = &families[case % families.len()];
        let m = rng.gen_range(1..=3);
        let ctx = build_takiff(rho.algebra(), m).unwrap();
        let lifted = lift_representation(&ctx, rho).unwrap();
        let ring = lifted.ring(&[]).unwrap();
        let lower = lift_representation(&build_takiff(rho.algebra(), m - 1).unwrap(), rho).unwrap();
        let lower_lifts = lift_invariant(&lower, phi, false).unwrap();
        let theta = random_cylindrical(&mut rng, &lower_lifts, &ring, m, case % 2 == 0).unwrap();
        if let Some((upper, low)) = r.record(|| format!("case {case}"), cylindrical_invariance_check(&lifted, &theta)) {
            r.check(upper == low, || format!("case {case}: {name} m={m} theta={theta}"));
        }
    }
    r
}

fn flip(_: &RunConfig) -> Report {
    let mut r = Report::new("flip");
    for (name, g) in [("sl2", crate::lie::sl2().0), ("so3", crate::lie::so_n(3).unwrap().0)] {
        for m in 0..=2 {
            let rep = verify_flip_identity(&g, m);
            if rep.passed {
                r.pass();
            } else {
                let w = r.fail(format!("{name} m={m}"), "flip identity fails");
                w.index = rep.first_failure;
            }
        }
    }
    r
}

fn bilinear(_: &RunConfig) -> Report {
    let mut r = Report::new("bilinear");
    for (name, g) in [("sl2", crate::lie::sl2().0), ("so3", crate::lie::so_n(3).unwrap().0)] {
        let k = killing_form(&g);
        for m in 0..=2 {
            let ctx = build_takiff(&g, m).unwrap();
            if let Some(b) = r.record(|| format!("{name} m={m}"), lift_bilinear_form(&ctx, &k)) {
                r.check(
                    b.gram().is_symmetric() && b.is_nondegenerate() && b.is_ad_invariant(ctx.algebra()),
                    || format!("{name} m={m}"),
                );
            }
        }
    }
    r
}

/// Random antisymmetric polynomial matrix over `ring`.
pub(crate) fn random_antisymmetric(rng: &mut Rng, ring: &std::sync::Arc<Ring>, n: usize, max_degree: u32) -> Vec<Vec<Polynomial>> {
    let vars: Vec<_> = (0..ring.nvars()).map(crate::poly::Var).collect();
    let mut b = vec![vec![Polynomial::zero(ring); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let p = random::random_sparse(rng, ring, &vars, max_degree, 3);
            b[j][i] = -&p;
            b[i][j] = p;
        }
    }
    b
}

fn base_solver(config: &RunConfig) -> Report {
    let mut r = Report::new("base-solver");
    let mut rng = case_rng(config, 7);
    for case in 0..config.cases.max(1) * 10 {
        let n = 2 + case % 3;
        let k = rng.gen_range(0..=2);
        let mut blocks = param_blocks(k);
        blocks.push(VariableBlock::state("v", n));
        let ring = Ring::new(blocks).unwrap();
        let b = random_antisymmetric(&mut rng, &ring, n, 3);
        let x: Vec<Polynomial> = ring.state_vars().into_iter().map(|v| Polynomial::var(&ring, v)).collect();
        let a: Vec<Polynomial> = (0..n)
            .map(|i| (0..n).fold(Polynomial::zero(&ring), |acc, j| &acc + &(&b[i][j] * &x[j])))
            .collect();
        let field = VectorField::new(&ring, a.clone()).unwrap();
        let form = BilinearForm::nondegenerate(Matrix::identity(n)).unwrap();
        if let Some(div) = r.record(|| format!("case {case}"), quadratic_base_solve(&form, &field)) {
            let rebuilt: Vec<Polynomial> = (0..n)
                .map(|i| (0..n).fold(Polynomial::zero(&ring), |acc, j| &acc + &(&div.matrix[i][j] * &x[j])))
                .collect();
            r.check(rebuilt == a && crate::dixmier::is_antisymmetric(&div.antisymmetric), || {
                format!("case {case}: n={n}")
            });
        }
    }
    r
}

fn roundtrip(config: &RunConfig) -> Report {
    let mut r = Report::new("roundtrip");
    for (ki, name) in ["so:2", "so:3", "sl2-adjoint"].iter().enumerate() {
        let (g, rho) = standard(&kind(name)).unwrap();
        let solver = builtin_solver(&rho).unwrap();
        for m in 0..=3 {
            let lifted = lift_representation(&build_takiff(&g, m).unwrap(), &rho).unwrap();
            let ring = lifted.ring(&param_blocks(1)).unwrap();
            let mut rng = case_rng(config, 100 + 10 * ki as u64 + m as u64);
            for case in 0..config.cases.max(1) {
                let b = random::random_coefficients(&mut rng, &ring, g.dim(), m, 2, 3);
                let label = || format!("{name} m={m} case {case}");
                let Some(field) = r.record(label, lifted_field(&rho, &b, &ring)) else { continue };
                let Some(dec) = r.record(label, takiff_decompose(&lifted, solver.as_ref(), &field)) else {
                    continue;
                };
                if let Some(v) = r.record(label, verify_decomposition(&lifted, &field, &dec)) {
                    r.check(v.ok, label);
                }
            }
        }
    }
    r
}

fn refusal(config: &RunConfig) -> Report {
    let mut r = Report::new("refusal");
    let expect_refusal = |r: &mut Report, case: String, res: Result<Decomposition>| match res {
        Err(Error::Refused { witness, .. }) if !witness.is_zero() => r.pass(),
        Err(e) => {
            r.fail(case, format!("unexpected error {e}"));
        }
        Ok(_) => {
            r.fail(case, "field was decomposed");
        }
    };
    for n in 2..=4 {
        let name = format!("so:{n}");
        let rho = rep_of(&name);
        let solver = builtin_solver(&rho).unwrap();
        for m in 0..=2 {
            let lifted = lift_representation(&build_takiff(rho.algebra(), m).unwrap(), &rho).unwrap();
            let ring = lifted.ring(&[]).unwrap();
            let radial = VectorField::new(
                &ring,
                ring.state_vars().into_iter().map(|v| Polynomial::var(&ring, v)).collect(),
            )
            .unwrap();
            expect_refusal(&mut r, format!("radial {name} m={m}"), takiff_decompose(&lifted, solver.as_ref(), &radial));
        }
    }
    let mut rng = case_rng(config, 9);
    let families = ["so:2", "so:3", "sl2-adjoint"];
    let mut case = 0;
    while case < 20 {
        let name = families[case % families.len()];
        let rho = rep_of(name);
        let solver = builtin_solver(&rho).unwrap();
        let m = rng.gen_range(0..=2);
        let lifted = lift_representation(&build_takiff(rho.algebra(), m).unwrap(), &rho).unwrap();
        let ring = lifted.ring(&[]).unwrap();
        let vars = ring.state_vars();
        let comps = vars.iter().map(|_| random::random_sparse(&mut rng, &ring, &vars, 2, 2)).collect();
        let field = VectorField::new(&ring, comps).unwrap();
        let gens = lifted_generators(&lifted, solver.family()).unwrap();
        if annihilates_invariants(&field, &gens).unwrap().holds {
            continue;
        }
        expect_refusal(&mut r, format!("random {name} m={m} case {case}"), takiff_decompose(&lifted, solver.as_ref(), &field));
        case += 1;
    }
    r
}

fn transport(config: &RunConfig) -> Report {
    let mut r = Report::new("transport");
    let mut rng = case_rng(config, 11);
    let rho = rep_of("so:2");
    for case in 0..10 {
        let theta = random::random_invertible(&mut rng, 2);
        let m = rng.gen_range(0..=2);
        let ring = lifted_ring(m, 2, &param_blocks(1)).unwrap();
        let b = random::random_coefficients(&mut rng, &ring, 1, m, 2, 3);
        let label = || format!("case {case} m={m}");
        let outcome = (|| -> Result<bool> {
            let field = lifted_field(&rho, &b, &ring)?;
            let tau = conjugate_representation(&rho, &theta)?;
            let lifted = lift_representation(&build_takiff(tau.algebra(), m)?, &tau)?;
            let moved = transport_field(&field, &theta)?;
            let expected = transport_decomposition(&Decomposition::new(&ring, b.clone())?, &theta)?;
            let solver = builtin_solver(&tau)?;
            let dec = takiff_decompose(&lifted, solver.as_ref(), &moved)?;
            Ok(verify_decomposition(&lifted, &moved, &dec)?.ok && verify_decomposition(&lifted, &moved, &expected)?.ok)
        })();
        if let Some(ok) = r.record(label, outcome) {
            r.check(ok, label);
        }
    }
    r
}
