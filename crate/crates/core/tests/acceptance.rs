//! Acceptance suite: twelve exact criteria, each with its own time budget.
//! Runs without the libtest harness and prints one PASS/FAIL line per
//! criterion; the process fails if any criterion does.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::Rng as _;

use common::*;
use takiff::cli::random::{self, rng_from_seed, Rng};
use takiff::dixmier::{
    builtin_solver, lifted_generators, quadratic_base_solve, takiff_decompose, verify_decomposition, VectorField,
};
use takiff::invariants::{base_ring, cylindrical_invariance_check, faa_di_bruno_lift, lift_invariant, quadratic_invariant};
use takiff::lie::{
    coadjoint_rep, conjugate_representation, killing_form, sl2, so_n, standard, BilinearForm, LieAlgebra,
    Representation, StandardKind,
};
use takiff::matrix::Matrix;
use takiff::poly::{int, Polynomial, Ring, Scalar, Var, VariableBlock};
use takiff::takiff::{build_takiff, lift_bilinear_form, lift_representation, lifted_ring, verify_flip_identity};
use takiff::Error;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn kind(s: &str) -> StandardKind {
    s.parse().unwrap()
}

/// Algebras of the Takiff grid with a faithful matrix realization where
/// one exists.
fn takiff_grid() -> Vec<(&'static str, LieAlgebra, Option<Representation>)> {
    let (s, sr) = sl2();
    let (o3, o3r) = so_n(3).unwrap();
    let (o4, o4r) = so_n(4).unwrap();
    vec![
        ("sl2", s, Some(sr)),
        ("so3", o3, Some(o3r)),
        ("so4", o4, Some(o4r)),
        ("abelian2", LieAlgebra::abelian(2), None),
    ]
}

/// Representations for the homomorphism grid; the abelian algebra acts
/// diagonally on K^2.
fn rep_grid() -> Vec<(&'static str, Representation)> {
    let diag = |a, b| Matrix::diagonal(&[int(a), int(b)]);
    let ab = Representation::new(LieAlgebra::abelian(2), 2, vec![diag(1, 0), diag(0, 1)]).unwrap();
    vec![
        ("sl2", sl2().1),
        ("so3", so_n(3).unwrap().1),
        ("so4", so_n(4).unwrap().1),
        ("abelian2", ab),
    ]
}

/// Expected matrix of `x_i T^r` acting on `V_m`.
fn lifted_matrix(rho: &Representation, m: usize, r: usize, i: usize) -> Matrix {
    kron(&matrix_pow(&shift(m), r), rho.matrix(i))
}

fn quadratic_grid() -> Vec<(&'static str, Representation, Polynomial)> {
    let mut out = Vec::new();
    for n in 2..=4 {
        out.push(("so", so_n(n).unwrap().1, quadratic_invariant(&Matrix::identity(n))));
    }
    let (g, _) = sl2();
    out.push(("sl2-adjoint", standard(&kind("sl2-adjoint")).unwrap().1, quadratic_invariant(killing_form(&g).gram())));
    out
}

fn linear_components(m: &Matrix, ring: &Arc<Ring>) -> Vec<Polynomial> {
    let state = ring.state_vars();
    (0..m.rows())
        .map(|a| {
            let mut p = Polynomial::zero(ring);
            for (b, v) in state.iter().enumerate() {
                if !m[(a, b)].is_zero() {
                    p = &p + &Polynomial::var(ring, *v).scale(&m[(a, b)]);
                }
            }
            p
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let mut checked = 0;
    for (name, g, rep) in takiff_grid() {
        for m in 0..=3 {
            let ctx = build_takiff(&g, m).map_err(|e| format!("{name} m={m}: {e}"))?;
            ensure(lie_axioms_hold(ctx.algebra()), || format!("{name} m={m}: axioms fail"))?;
            if let Some(rho) = &rep {
                // x_i T^r realized as N^r (x) X_i
                let mats: Vec<Matrix> = (0..=m)
                    .flat_map(|r| (0..g.dim()).map(move |i| (r, i)))
                    .map(|(r, i)| kron(&matrix_pow(&shift(m), r), rho.matrix(i)))
                    .collect();
                ensure(brackets_match(&mats, ctx.algebra()), || format!("{name} m={m}: constants differ from realization"))?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} Takiff algebras"))
}

fn criterion_2() -> Outcome {
    let mut pairs = 0;
    for (name, rho) in rep_grid() {
        for m in 0..=3 {
            let ctx = build_takiff(rho.algebra(), m).unwrap();
            let lifted = lift_representation(&ctx, &rho).map_err(|e| format!("{name} m={m}: {e}"))?;
            let d = rho.algebra().dim();
            for r in 0..=m {
                for i in 0..d {
                    ensure(*lifted.rep().matrix(r * d + i) == lifted_matrix(&rho, m, r, i), || {
                        format!("{name} m={m}: rho_m(x_{i} T^{r}) has the wrong blocks")
                    })?;
                }
            }
            ensure(brackets_match(lifted.rep().matrices(), ctx.algebra()), || format!("{name} m={m}: not a homomorphism"))?;
            pairs += ctx.algebra().dim().pow(2);
        }
    }
    Ok(format!("{pairs} basis pairs"))
}

fn criterion_3() -> Outcome {
    let mut checks = 0;
    for (name, rho, phi) in quadratic_grid() {
        let d = rho.algebra().dim();
        for m in 0..=3 {
            let ctx = build_takiff(rho.algebra(), m).unwrap();
            let lifted = lift_representation(&ctx, &rho).unwrap();
            let lifts = lift_invariant(&lifted, &phi, false).map_err(|e| e.to_string())?;
            let ring = lifted.ring(&[]).unwrap();
            for r in 0..=m {
                for i in 0..d {
                    let field = linear_components(&lifted_matrix(&rho, m, r, i), &ring);
                    for (k, big) in lifts.iter().enumerate() {
                        let res = field_derivative(big, &field);
                        ensure(res.is_zero(), || format!("{name} m={m}: x_{i} T^{r} on Phi_{k} gives {res}"))?;
                        checks += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checks} Killing-field applications"))
}

fn criterion_4() -> Outcome {
    let mut checks = 0;
    for (name, rho, phi) in quadratic_grid() {
        let n = rho.space_dim();
        for m in 0..=3 {
            let ctx = build_takiff(rho.algebra(), m).unwrap();
            let lifted = lift_representation(&ctx, &rho).unwrap();
            let lifts = lift_invariant(&lifted, &phi, false).unwrap();
            let ring = lifted.ring(&[]).unwrap();
            let block = |j: usize| ring.block_vars(&format!("f{j}")).unwrap();
            let f0: Vec<Polynomial> = block(0).into_iter().map(|v| Polynomial::var(&ring, v)).collect();
            ensure(lifts[0] == phi.substitute(&ring, &f0).unwrap(), || format!("{name} m={m}: Phi_0 != phi(f0)"))?;
            for (k, big) in lifts.iter().enumerate() {
                for j in k + 1..=m {
                    for v in block(j) {
                        ensure(big.derivative(v).is_zero(), || format!("{name} m={m}: Phi_{k} depends on f{j}"))?;
                    }
                }
                if k == 0 {
                    continue;
                }
                let fk = block(k);
                let mut linear = Polynomial::zero(&ring);
                let mut psi = Polynomial::zero(&ring);
                for (mono, c) in big.terms() {
                    let deg: u32 = fk.iter().map(|v| mono.exponent(*v)).sum();
                    ensure(deg <= 1, || format!("{name} m={m}: Phi_{k} has f{k}-degree {deg}"))?;
                    let t = Polynomial::monomial(&ring, mono.clone(), c.clone());
                    if deg == 1 {
                        linear = &linear + &t;
                    } else {
                        psi = &psi + &t;
                    }
                }
                let mut expected = Polynomial::zero(&ring);
                for (i, v) in fk.iter().enumerate().take(n) {
                    let di = phi.derivative(Var(i)).substitute(&ring, &f0).unwrap();
                    expected = &expected + &(&di * &Polynomial::var(&ring, *v));
                }
                ensure(linear == expected, || format!("{name} m={m}: linear part of Phi_{k} is {linear}"))?;
                ensure(fk.iter().all(|v| psi.derivative(*v).is_zero()), || format!("{name} m={m}: psi_{k} depends on f{k}"))?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} lifted invariants split"))
}

fn criterion_5() -> Outcome {
    let mut rng = rng_from_seed(5);
    for case in 0..50 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(0..=3);
        let ring = base_ring(n);
        let phi = random::random_sparse(&mut rng, &ring, &ring.state_vars(), 4, 6);
        let zero = Representation::new(LieAlgebra::abelian(0), n, vec![]).unwrap();
        let lifted = lift_representation(&build_takiff(zero.algebra(), m).unwrap(), &zero).unwrap();
        let series = lift_invariant(&lifted, &phi, true).map_err(|e| e.to_string())?;
        let fdb = faa_di_bruno_lift(&phi, m).map_err(|e| e.to_string())?;
        let literal = literal_curve_coefficients(&phi, &lifted_ring(m, n, &[]).unwrap(), m);
        ensure(series == fdb, || format!("case {case}: routes differ for {phi} at m={m}"))?;
        ensure(series == literal, || format!("case {case}: series differs from literal expansion"))?;
    }
    Ok("50 random polynomials".into())
}

fn criterion_6() -> Outcome {
    let mut rng = rng_from_seed(6);
    let grid = quadratic_grid();
    let (mut inv, mut non, mut stray) = (0, 0, 0);
    for case in 0..50 {
        let (name, rho, phi) = &grid[case % grid.len()];
        let m = rng.gen_range(1..=3);
        let lifted = lift_representation(&build_takiff(rho.algebra(), m).unwrap(), rho).unwrap();
        let ring = lifted.ring(&[]).unwrap();
        let lower = lift_representation(&build_takiff(rho.algebra(), m - 1).unwrap(), rho).unwrap();
        let lower_lifts = lift_invariant(&lower, phi, false).unwrap();
        let invariant = case % 2 == 0;
        let theta = if invariant {
            let mut t = Polynomial::zero(&ring);
            for _ in 0..rng.gen_range(1..=3) {
                let a = lower_lifts[rng.gen_range(0..lower_lifts.len())].embed(&ring).unwrap();
                let b = lower_lifts[rng.gen_range(0..lower_lifts.len())].embed(&ring).unwrap();
                t.add_scaled(&random::random_scalar(&mut rng), &(&a * &b));
            }
            t
        } else {
            let vars: Vec<Var> = (0..m).flat_map(|j| ring.block_vars(&format!("f{j}")).unwrap()).collect();
            random::random_sparse(&mut rng, &ring, &vars, 3, 4)
        };
        let (upper, low) = cylindrical_invariance_check(&lifted, &theta).map_err(|e| e.to_string())?;
        ensure(upper == low, || format!("case {case}: {name} m={m}: {upper} vs {low} for {theta}"))?;
        if invariant {
            ensure(upper, || format!("case {case}: constructed invariant reported non-invariant"))?;
            inv += 1;
        } else if upper {
            stray += 1;
        } else {
            non += 1;
        }
    }
    ensure(non > 0, || "no non-invariant instance was exercised".into())?;
    Ok(format!("50 cylindrical functions ({inv} built invariant, {non} non-invariant, {stray} random but invariant)"))
}

fn antisymmetric(rng: &mut Rng, ring: &Arc<Ring>, n: usize, deg: u32, vars: &[Var]) -> Vec<Vec<Polynomial>> {
    let mut b = vec![vec![Polynomial::zero(ring); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let p = random::random_sparse(rng, ring, vars, deg, 3);
            b[j][i] = -&p;
            b[i][j] = p;
        }
    }
    b
}

fn mat_vec(b: &[Vec<Polynomial>], x: &[Polynomial]) -> Vec<Polynomial> {
    b.iter()
        .map(|row| row.iter().zip(x).fold(Polynomial::zero(x[0].ring()), |acc, (p, q)| &acc + &(p * q)))
        .collect()
}

/// Linear system for antisymmetric `b` of x-degree `d - 1` with `b x = a`,
/// `a` homogeneous of degree `d` in `n` variables without parameters.
fn koszul_system(n: usize, d: u32, ring: &Arc<Ring>, a: &[Polynomial]) -> (Vec<Vec<Scalar>>, Vec<Scalar>, Vec<(usize, usize, Vec<u32>)>) {
    let x = ring.state_vars();
    let unknowns: Vec<(usize, usize, Vec<u32>)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .flat_map(|(i, j)| exponent_vectors(n, d - 1).into_iter().map(move |e| (i, j, e)))
        .collect();
    let targets = exponent_vectors(n, d);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..n {
        for t in &targets {
            let mut row = vec![Scalar::zero(); unknowns.len()];
            for (u, (p, q, e)) in unknowns.iter().enumerate() {
                // b_pq x_q contributes to row p, b_qp = -b_pq x_p to row q
                let (sign, var) = if *p == i {
                    (int(1), *q)
                } else if *q == i {
                    (int(-1), *p)
                } else {
                    continue;
                };
                let mut shifted = e.clone();
                shifted[var] += 1;
                if &shifted == t {
                    row[u] += sign;
                }
            }
            rows.push(row);
            rhs.push(a[i].coefficient(&monomial_of(&x, t)));
        }
    }
    (rows, rhs, unknowns)
}

fn criterion_7() -> Outcome {
    let mut rng = rng_from_seed(7);
    for n in 2..=4 {
        let form = BilinearForm::nondegenerate(Matrix::identity(n)).unwrap();
        for case in 0..100 {
            let k = case % 3;
            let mut blocks = Vec::new();
            if k > 0 {
                blocks.push(VariableBlock::parameter("w", k));
            }
            blocks.push(VariableBlock::state("v", n));
            let ring = Ring::new(blocks).unwrap();
            let vars: Vec<Var> = (0..ring.nvars()).map(Var).collect();
            let b = antisymmetric(&mut rng, &ring, n, 3, &vars);
            let x: Vec<Polynomial> = ring.state_vars().into_iter().map(|v| Polynomial::var(&ring, v)).collect();
            let a = mat_vec(&b, &x);
            let field = VectorField::new(&ring, a.clone()).unwrap();
            let div = quadratic_base_solve(&form, &field).map_err(|e| format!("n={n} case {case}: {e}"))?;
            let bh = &div.antisymmetric;
            ensure((0..n).all(|i| (0..n).all(|j| bh[i][j] == -&bh[j][i])), || format!("n={n} case {case}: not antisymmetric"))?;
            ensure(mat_vec(bh, &x) == a, || format!("n={n} case {case}: b x != a"))?;
        }
    }
    // per-degree oracle: solvable iff the homotopy succeeds, and the
    // homotopy output solves the system
    let mut oracle_cases = 0;
    for n in 2..=3 {
        let ring = base_ring(n);
        let x: Vec<Polynomial> = ring.state_vars().into_iter().map(|v| Polynomial::var(&ring, v)).collect();
        let form = BilinearForm::nondegenerate(Matrix::identity(n)).unwrap();
        for d in 1..=2u32 {
            for case in 0..20 {
                let a: Vec<Polynomial> = if case % 2 == 0 {
                    let mut b = vec![vec![Polynomial::zero(&ring); n]; n];
                    for i in 0..n {
                        for j in i + 1..n {
                            let e = exponent_vectors(n, d - 1);
                            let mut p = Polynomial::zero(&ring);
                            for ex in &e {
                                if rng.gen_bool(0.6) {
                                    p.add_term(monomial_of(&ring.state_vars(), ex), random::random_scalar(&mut rng));
                                }
                            }
                            b[j][i] = -&p;
                            b[i][j] = p;
                        }
                    }
                    mat_vec(&b, &x)
                } else {
                    (0..n)
                        .map(|_| {
                            let mut p = Polynomial::zero(&ring);
                            for ex in exponent_vectors(n, d) {
                                if rng.gen_bool(0.5) {
                                    p.add_term(monomial_of(&ring.state_vars(), &ex), random::random_scalar(&mut rng));
                                }
                            }
                            p
                        })
                        .collect()
                };
                let (rows, rhs, unknowns) = koszul_system(n, d, &ring, &a);
                let solvable = gauss_solve(rows.clone(), rhs.clone()).is_some();
                let field = VectorField::new(&ring, a.clone()).unwrap();
                let hom = quadratic_base_solve(&form, &field);
                ensure(solvable == hom.is_ok(), || format!("oracle n={n} d={d} case {case}: solvable={solvable}, homotopy {:?}", hom.as_ref().err()))?;
                if let Ok(div) = hom {
                    let u: Vec<Scalar> = unknowns
                        .iter()
                        .map(|(i, j, e)| div.antisymmetric[*i][*j].coefficient(&monomial_of(&ring.state_vars(), e)))
                        .collect();
                    for (row, r) in rows.iter().zip(&rhs) {
                        let lhs: Scalar = row.iter().zip(&u).map(|(p, q)| p * q).sum();
                        ensure(&lhs == r, || format!("oracle n={n} d={d} case {case}: homotopy violates the system"))?;
                    }
                }
                oracle_cases += 1;
            }
        }
    }
    Ok(format!("300 manufactured syzygies, {oracle_cases} oracle comparisons"))
}

fn criterion_8() -> Outcome {
    let mut total = 0;
    for (ki, name) in ["so:2", "so:3", "sl2-adjoint"].into_iter().enumerate() {
        let (g, rho) = standard(&kind(name)).unwrap();
        let solver = builtin_solver(&rho).map_err(|e| e.to_string())?;
        let phi = &solver.family().generators()[0];
        for m in 0..=3 {
            let lifted = lift_representation(&build_takiff(&g, m).unwrap(), &rho).unwrap();
            let ring = lifted.ring(&[VariableBlock::parameter("w", 1)]).unwrap();
            let oracle_lifts = literal_curve_coefficients(phi, &lifted_ring(m, rho.space_dim(), &[]).unwrap(), m);
            let mut rng = rng_from_seed(800 + 10 * ki as u64 + m as u64);
            for case in 0..50 {
                let b = random::random_coefficients(&mut rng, &ring, g.dim(), m, 2, 3);
                let a = reconstruct(rho.matrices(), &b, &ring);
                for (k, big) in oracle_lifts.iter().enumerate() {
                    ensure(field_derivative(big, &a).is_zero(), || format!("{name} m={m} case {case}: field moves Phi_{k}"))?;
                }
                let field = VectorField::new(&ring, a.clone()).unwrap();
                let dec = match takiff_decompose(&lifted, solver.as_ref(), &field) {
                    Ok(d) => d,
                    Err(Error::Internal(msg)) => return Err(format!("{name} m={m} case {case}: residual assertion fired: {msg}")),
                    Err(e) => return Err(format!("{name} m={m} case {case}: {e}")),
                };
                ensure(verify_decomposition(&lifted, &field, &dec).unwrap().ok, || format!("{name} m={m} case {case}: verify"))?;
                ensure(reconstruct(rho.matrices(), dec.coefficients(), &ring) == a, || {
                    format!("{name} m={m} case {case}: independent reconstruction differs")
                })?;
                total += 1;
            }
        }
    }
    Ok(format!("{total} fields decomposed"))
}

fn criterion_9() -> Outcome {
    let mut refused = 0;
    for n in 2..=4 {
        let rho = so_n(n).unwrap().1;
        let solver = builtin_solver(&rho).unwrap();
        for m in 0..=2 {
            let lifted = lift_representation(&build_takiff(rho.algebra(), m).unwrap(), &rho).unwrap();
            let ring = lifted.ring(&[]).unwrap();
            let radial: Vec<Polynomial> = ring.state_vars().into_iter().map(|v| Polynomial::var(&ring, v)).collect();
            let field = VectorField::new(&ring, radial.clone()).unwrap();
            match takiff_decompose(&lifted, solver.as_ref(), &field) {
                Err(Error::Refused { witness, .. }) => {
                    ensure(!witness.is_zero(), || format!("radial n={n} m={m}: zero witness"))?;
                    if m == 0 {
                        let sq = radial.iter().fold(Polynomial::zero(&ring), |acc, x| &acc + &x.pow(2));
                        ensure(witness == sq, || format!("radial n={n}: witness {witness}"))?;
                    }
                }
                other => return Err(format!("radial n={n} m={m}: not refused ({:?})", other.map(|_| ()))),
            }
            refused += 1;
        }
    }
    let mut rng = rng_from_seed(9);
    let kinds = ["so:2", "so:3", "sl2-adjoint"];
    let mut random_refused = 0;
    while random_refused < 20 {
        let name = kinds[random_refused % 3];
        let rho = standard(&kind(name)).unwrap().1;
        let solver = builtin_solver(&rho).unwrap();
        let m = rng.gen_range(0..=2);
        let lifted = lift_representation(&build_takiff(rho.algebra(), m).unwrap(), &rho).unwrap();
        let ring = lifted.ring(&[]).unwrap();
        let vars = ring.state_vars();
        let comps: Vec<Polynomial> = vars.iter().map(|_| random::random_sparse(&mut rng, &ring, &vars, 2, 2)).collect();
        let lifts = lifted_generators(&lifted, solver.family()).unwrap();
        if lifts.iter().all(|p| field_derivative(p, &comps).is_zero()) {
            continue;
        }
        let field = VectorField::new(&ring, comps).unwrap();
        match takiff_decompose(&lifted, solver.as_ref(), &field) {
            Err(Error::Refused { witness, .. }) if !witness.is_zero() => random_refused += 1,
            other => return Err(format!("random {name} m={m}: not refused ({:?})", other.map(|_| ()))),
        }
    }
    Ok(format!("{refused} radial and {random_refused} random fields refused"))
}

fn criterion_10() -> Outcome {
    for (name, g) in [("sl2", sl2().0), ("so3", so_n(3).unwrap().0)] {
        let d = g.dim();
        let co = coadjoint_rep(&g);
        for m in 0..=2 {
            let report = verify_flip_identity(&g, m);
            ensure(report.passed && report.checked == d * (m + 1), || format!("{name} m={m}: {report:?}"))?;
            // recompute both sides from structure constants
            let ctx = build_takiff(&g, m).unwrap();
            let big = ctx.algebra();
            let dm = big.dim();
            let mut theta = Matrix::zeros(dm, dm);
            for r in 0..=m {
                for i in 0..d {
                    theta[((m - r) * d + i, r * d + i)] = int(1);
                }
            }
            for r in 0..=m {
                for i in 0..d {
                    let k = r * d + i;
                    let mut tau = Matrix::zeros(dm, dm);
                    for j in 0..dm {
                        for l in 0..dm {
                            tau[(j, l)] = -big.constant(k, j, l).clone();
                        }
                    }
                    let rho = kron(&matrix_pow(&shift(m), r), co.matrix(i));
                    ensure(tau == theta.mul(&rho).mul(&theta), || format!("{name} m={m}: basis element {k}"))?;
                }
            }
        }
    }
    Ok("sl2 and so3 up to level 2".into())
}

fn criterion_11() -> Outcome {
    for (name, g) in [("sl2", sl2().0), ("so3", so_n(3).unwrap().0)] {
        let k = killing_form(&g);
        let d = g.dim();
        for m in 0..=2 {
            let ctx = build_takiff(&g, m).unwrap();
            let b = lift_bilinear_form(&ctx, &k).map_err(|e| format!("{name} m={m}: {e}"))?;
            let gram = b.gram();
            let big = ctx.algebra();
            let dm = big.dim();
            ensure((0..dm).all(|i| (0..dm).all(|j| gram[(i, j)] == gram[(j, i)])), || format!("{name} m={m}: not symmetric"))?;
            for r in 0..=m {
                for s in 0..=m {
                    for i in 0..d {
                        for j in 0..d {
                            let want = if r + s == m { k.gram()[(i, j)].clone() } else { Scalar::zero() };
                            ensure(gram[(r * d + i, s * d + j)] == want, || format!("{name} m={m}: block ({r},{s})"))?;
                        }
                    }
                }
            }
            let zero = vec![Scalar::zero(); dm];
            let nondegenerate = (0..dm).all(|c| {
                let mut e = zero.clone();
                e[c] = int(1);
                gauss_solve(gram.to_rows(), e).is_some()
            });
            ensure(nondegenerate, || format!("{name} m={m}: degenerate"))?;
            for z in 0..dm {
                for x in 0..dm {
                    for y in 0..dm {
                        let mut s = Scalar::zero();
                        for l in 0..dm {
                            s += big.constant(z, x, l) * &gram[(l, y)];
                            s += big.constant(z, y, l) * &gram[(x, l)];
                        }
                        ensure(s.is_zero(), || format!("{name} m={m}: not invariant at ({z},{x},{y})"))?;
                    }
                }
            }
        }
    }
    Ok("Killing forms of sl2 and so3 up to level 2".into())
}

fn criterion_12() -> Outcome {
    let mut rng = rng_from_seed(12);
    let rho = so_n(2).unwrap().1;
    for case in 0..10 {
        let theta = random::random_invertible(&mut rng, 2);
        let inv = theta.inverse().unwrap();
        let m = case % 3;
        let ring = lifted_ring(m, 2, &[VariableBlock::parameter("w", 1)]).unwrap();
        let b = random::random_coefficients(&mut rng, &ring, 1, m, 2, 3);
        let a = reconstruct(rho.matrices(), &b, &ring);
        // a'(v') = theta a(theta^{-1} v') blockwise
        let mut images: Vec<Polynomial> = (0..ring.nvars()).map(|v| Polynomial::var(&ring, Var(v))).collect();
        for j in 0..=m {
            let vars = ring.block_vars(&format!("f{j}")).unwrap();
            for r in 0..2 {
                let mut p = Polynomial::zero(&ring);
                for c in 0..2 {
                    p = &p + &Polynomial::var(&ring, vars[c]).scale(&inv[(r, c)]);
                }
                images[vars[r].0] = p;
            }
        }
        let inner: Vec<Polynomial> = a.iter().map(|p| p.substitute(&ring, &images).unwrap()).collect();
        let mut moved = Vec::new();
        for chunk in inner.chunks(2) {
            for r in 0..2 {
                moved.push(&chunk[0].scale(&theta[(r, 0)]) + &chunk[1].scale(&theta[(r, 1)]));
            }
        }
        let tau = conjugate_representation(&rho, &theta).unwrap();
        let expected_tau = theta.mul(rho.matrix(0)).mul(&inv);
        ensure(*tau.matrix(0) == expected_tau, || format!("case {case}: tau"))?;
        let lifted = lift_representation(&build_takiff(tau.algebra(), m).unwrap(), &tau).unwrap();
        let solver = builtin_solver(&tau).map_err(|e| format!("case {case}: {e}"))?;
        let field = VectorField::new(&ring, moved.clone()).unwrap();
        let dec = takiff_decompose(&lifted, solver.as_ref(), &field).map_err(|e| format!("case {case}: {e}"))?;
        ensure(reconstruct(tau.matrices(), dec.coefficients(), &ring) == moved, || format!("case {case}: reconstruction"))?;
        // the transported coefficients b(theta^{-1} v') decompose it as well
        let bt: Vec<Vec<Polynomial>> =
            b.iter().map(|br| br.iter().map(|p| p.substitute(&ring, &images).unwrap()).collect()).collect();
        ensure(reconstruct(tau.matrices(), &bt, &ring) == moved, || format!("case {case}: transported coefficients"))?;
    }
    Ok("10 conjugations".into())
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome, Option<u64>); 12] = [
        (1, "Takiff validity", criterion_1, Some(10)),
        (2, "lifted homomorphism", criterion_2, Some(20)),
        (3, "lifted invariants are invariant", criterion_3, Some(30)),
        (4, "lifted invariant structure", criterion_4, None),
        (5, "partition formula cross-check", criterion_5, Some(60)),
        (6, "cylindrical invariance", criterion_6, None),
        (7, "quadratic base solver", criterion_7, Some(60)),
        (8, "decomposition roundtrip", criterion_8, Some(120)),
        (9, "refusal with witness", criterion_9, None),
        (10, "flip identity", criterion_10, None),
        (11, "quadratic lift of forms", criterion_11, None),
        (12, "transport by conjugation", criterion_12, None),
    ];
    let mut failed = 0;
    for (n, name, f, limit) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(secs)) if elapsed > Duration::from_secs(secs) => {
                Err(format!("took {:.2}s, limit {secs}s", elapsed.as_secs_f64()))
            }
            (o, _) => o,
        };
        let budget = limit.map_or(String::new(), |s| format!(" / {s}s"));
        match outcome {
            Ok(detail) => println!("criterion {n:>2} PASS  {name}: {detail} ({:.2}s{budget})", elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name}: {why} ({:.2}s{budget})", elapsed.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
