//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use supercircle::cli::{cmd_verify, RunConfig};
use supercircle::grassmann::{GeneratorSet, GrassmannElement};
use supercircle::harmonic::{expand, matrix_coefficients, Section, ETA, THETA, THETA_ETA};
use supercircle::json::to_pretty;
use supercircle::liealg::{find_even_intertwiners, AlgebraTag, LieSuperAlgebra, Representation};
use supercircle::matrix::Matrix;
use supercircle::reps::{decompose, make_pi_m, scramble, Sign};
use supercircle::scalars::{Branch, Scalar, ScalarMode};
use supercircle::supergroup::{
    defactorize, factorize, generic_factor_data, generic_s11_point, generic_sl11_point, membership, rho_s11, sigma_su,
    su11_factorization_closed_form, GL11Point, GenericUnitaryRing, GroupKind,
};
use supercircle::verify::{
    cmd_verify as run_verify, observed_labels, random_even_invertible_point, random_trial, VerifyConfig,
};

const EXACT: ScalarMode = ScalarMode::Exact;
const N: i64 = 10;

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);
/// Monomial count, zero-residual count and the nonzero residuals.
type Expansions = (usize, usize, Vec<(i64, u8, Section)>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn s(re: i64, im: i64) -> Scalar {
    Scalar::gaussian(re, im)
}

fn nonzero_weights() -> impl Iterator<Item = i64> {
    (-N..=N).filter(|&m| m != 0)
}

fn structure_constants() -> Outcome {
    let alg = LieSuperAlgebra::builtin(AlgebraTag::Su11);
    ensure(alg.names() == ["C", "U", "S"], || format!("basis {:?}", alg.names()))?;
    let mut expected = BTreeMap::new();
    expected.insert((1, 1), vec![s(-2, 0), s(0, 0), s(0, 0)]);
    expected.insert((2, 2), vec![s(-2, 0), s(0, 0), s(0, 0)]);
    for i in 0..3 {
        for j in 0..3 {
            let want = expected.get(&(i, j)).cloned().unwrap_or_else(|| vec![s(0, 0); 3]);
            ensure(alg.bracket(i, j) == want.as_slice(), || format!("[{i},{j}] = {:?}", alg.bracket(i, j)))?;
        }
    }
    let mats = alg.defining_matrices().ok_or("no defining matrices")?;
    for i in 0..3 {
        for j in 0..3 {
            let lhs = mats[i].supercommutator(&mats[j]).map_err(e)?;
            let mut rhs = mats[0].scale(&Scalar::zero());
            for (k, c) in alg.bracket(i, j).iter().enumerate() {
                rhs = rhs.try_add(&mats[k].scale(c)).map_err(e)?;
            }
            ensure(lhs == rhs, || format!("defining matrices violate [{i},{j}]"))?;
        }
    }
    Ok("[U,U] = [S,S] = -2C, all others 0; realized by the defining matrices".into())
}

fn complex_mul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn principal_sqrt(z: (f64, f64)) -> (f64, f64) {
    let r = z.0.hypot(z.1).sqrt();
    let phi = z.1.atan2(z.0) / 2.0;
    (r * phi.cos(), r * phi.sin())
}

fn representation_identities() -> Outcome {
    let mut count = 0;
    for m in nonzero_weights() {
        for sign in [Sign::Plus, Sign::Minus] {
            let rep = make_pi_m(m, sign, EXACT).map_err(e)?;
            let u = rep.generator("U").ok_or("no U")?;
            let sg = rep.generator("S").ok_or("no S")?;
            let id = Matrix::<Scalar>::identity(2);
            let uu = u.try_mul(u).map_err(e)?;
            let ss = sg.try_mul(sg).map_err(e)?;
            let us = u.try_mul(sg).map_err(e)?;
            let usus = us.try_mul(&us).map_err(e)?;
            let neg_im = id.scale_left(&s(0, -m));
            ensure(uu == neg_im, || format!("rho(U)^2 != -im I for m={m} {sign:?}"))?;
            ensure(ss == neg_im, || format!("rho(S)^2 != -im I for m={m} {sign:?}"))?;
            ensure(usus == id.scale_left(&s(m * m, 0)), || format!("(rho(U)rho(S))^2 != m^2 I for m={m} {sign:?}"))?;

            // Floating-point evaluation of U = s[[0,1],[1,0]], S = ±(m/s)[[0,-1],[1,0]], s = sqrt(-im).
            let root = principal_sqrt((0.0, -(m as f64)));
            let norm = root.0 * root.0 + root.1 * root.1;
            let m_over_s = complex_mul((m as f64, 0.0), (root.0 / norm, -root.1 / norm));
            let sg_sign = if sign == Sign::Plus { 1.0 } else { -1.0 };
            let want_u = [[(0.0, 0.0), root], [root, (0.0, 0.0)]];
            let want_s = [
                [(0.0, 0.0), (-sg_sign * m_over_s.0, -sg_sign * m_over_s.1)],
                [(sg_sign * m_over_s.0, sg_sign * m_over_s.1), (0.0, 0.0)],
            ];
            for i in 0..2 {
                for j in 0..2 {
                    for (got, want) in [(u.get(i, j), want_u[i][j]), (sg.get(i, j), want_s[i][j])] {
                        let g = got.to_complex();
                        ensure((g.0 - want.0).abs() < 1e-12 && (g.1 - want.1).abs() < 1e-12, || {
                            format!("entry ({i},{j}) of pi_{m} is {g:?}, formula gives {want:?}")
                        })?;
                    }
                }
            }
            count += 1;
        }
    }
    Ok(format!("{count} representations satisfy the relations exactly and match the closed form"))
}

/// Dimension of even maps `T = diag(a, b)` with `T ρ1(X) = ρ2(X) T` for the odd
/// generators of two `(1|1)`-dimensional representations.
fn even_intertwiner_dim(r1: &Representation, r2: &Representation) -> usize {
    let mut rows: Vec<[Scalar; 2]> = Vec::new();
    for name in ["U", "S"] {
        let x1 = r1.generator(name).unwrap();
        let x2 = r2.generator(name).unwrap();
        // (0,1): a·x1[0,1] - x2[0,1]·b ; (1,0): b·x1[1,0] - x2[1,0]·a
        rows.push([x1.get(0, 1).clone(), -x2.get(0, 1).clone()]);
        rows.push([-x2.get(1, 0).clone(), x1.get(1, 0).clone()]);
    }
    if rows.iter().all(|r| r[0].is_zero() && r[1].is_zero()) {
        return 2;
    }
    for p in &rows {
        for q in &rows {
            let det = p[0].try_mul(&q[1]).unwrap().try_sub(&p[1].try_mul(&q[0]).unwrap()).unwrap();
            if !det.is_zero() {
                return 0;
            }
        }
    }
    1
}

fn inequivalence() -> Outcome {
    for m in nonzero_weights() {
        let plus = make_pi_m(m, Sign::Plus, EXACT).map_err(e)?;
        let minus = make_pi_m(m, Sign::Minus, EXACT).map_err(e)?;
        let cross = even_intertwiner_dim(&plus, &minus);
        let endo = even_intertwiner_dim(&plus, &plus);
        ensure(cross == 0 && endo == 1, || format!("m={m}: oracle gives dims {cross}, {endo}"))?;
        let lib_cross = find_even_intertwiners(&plus, &minus).map_err(e)?.len();
        let lib_endo = find_even_intertwiners(&plus, &plus).map_err(e)?.len();
        ensure(lib_cross == 0 && lib_endo == 1, || format!("m={m}: solver gives dims {lib_cross}, {lib_endo}"))?;
    }
    Ok("Hom(pi+, pi-) = 0 and End(pi+) = 1-dimensional for 0 < |m| <= 10".into())
}

fn decomposition_trials() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut matched = 0;
    let trials = 100;
    for trial in 0..trials {
        let algebra = if trial % 2 == 0 { AlgebraTag::Su11 } else { AlgebraTag::S11 };
        let t = random_trial(&mut rng, algebra, N, 8, EXACT).map_err(e)?;
        let rep = scramble(&t.rep, &mut rng, true).map_err(e)?;
        let report = decompose(&rep).map_err(e)?;
        let labels = observed_labels(&report);
        ensure(labels == t.expected, || format!("trial {trial}: expected {:?}, got {labels:?}", t.expected))?;
        let model = report.model().map_err(e)?;
        let b = &report.basis_change;
        let n = rep.dim();
        for i in 0..n {
            for j in 0..n {
                if !b.get(i, j).is_zero() {
                    ensure(rep.parities[i] == model.parities[j] && rep.weights[i] == model.weights[j], || {
                        format!("trial {trial}: change of basis mixes parity or weight at ({i},{j})")
                    })?;
                }
            }
        }
        for m in model.weight_set() {
            let cols: Vec<usize> = (0..n).filter(|&j| model.weights[j] == m).collect();
            let rows = rep.weight_indices(m);
            b.submatrix(&rows, &cols).inverse().map_err(|err| format!("trial {trial}: block {m} singular: {err}"))?;
        }
        for (x, y) in rep.generators.iter().zip(&model.generators) {
            let lhs = x.try_mul(b).map_err(e)?;
            let rhs = b.try_mul(y).map_err(e)?;
            ensure(lhs == rhs, || format!("trial {trial}: X B != B X_model"))?;
        }
        matched += 1;
    }
    Ok(format!("{matched}/{trials} label sets match; X B = B X_model entrywise in every trial"))
}

/// A verify report with a single decomposition trial, for reading the
/// entries that do not depend on the trial count.
fn quick_report() -> serde_json::Value {
    run_verify(&VerifyConfig { weights: 2, trials: 1, ..VerifyConfig::default() }).to_json()
}

fn factorization() -> Outcome {
    let ring = GenericUnitaryRing::new(GroupKind::Su11, 2).map_err(e)?;
    for g in &ring.points {
        let f = factorize(g, GroupKind::Su11).map_err(e)?;
        ensure(defactorize(&f.t, &f.theta, &f.eta).map_err(e)? == *g, || "point -> triple -> point".into())?;
        ensure(su11_factorization_closed_form(g).map_err(e)? == f, || "closed form disagrees with solver".into())?;
    }
    let data = generic_factor_data().map_err(e)?;
    let g = defactorize(&data.t, &data.theta, &data.eta).map_err(e)?;
    ensure(membership(&g, GroupKind::Su11).is_member(), || "defactorized point is not in SU(1|1)".into())?;
    ensure(factorize(&g, GroupKind::Su11).map_err(e)? == data, || "triple -> point -> triple".into())?;

    let report = quick_report();
    let iso = &report["isomer_resolution"];
    ensure(iso["adopted"]["group"] == "su11", || format!("isomer resolution missing: {iso}"))?;
    let literal = iso["literal_formulas"].as_array().ok_or("no literal formula record")?;
    ensure(literal.len() == 2 && literal.iter().all(|c| c["round_trip"] == false), || {
        format!("unexpected literal-formula record {literal:?}")
    })?;
    Ok("both round trips are exact; report records the su11 resolution".into())
}

fn involutions() -> Outcome {
    let (w, eta) = generic_s11_point().map_err(e)?;
    let (w1, e1) = rho_s11(&w, &eta).map_err(e)?;
    ensure((w1.clone(), e1.clone()) != (w.clone(), eta.clone()), || "rho acts trivially".into())?;
    ensure(rho_s11(&w1, &e1).map_err(e)? == (w, eta), || "rho is not involutive".into())?;

    let g = generic_sl11_point().map_err(e)?;
    let sg = sigma_su(&g).map_err(e)?;
    ensure(sg != g, || "sigma acts trivially".into())?;
    ensure(sigma_su(&sg).map_err(e)? == g, || "sigma is not involutive".into())?;

    let data = generic_factor_data().map_err(e)?;
    let mut fixed = vec![defactorize(&data.t, &data.theta, &data.eta).map_err(e)?];
    fixed.extend(GenericUnitaryRing::new(GroupKind::Su11, 2).map_err(e)?.points);
    for p in &fixed {
        ensure(sigma_su(p).map_err(e)? == *p, || "point is not sigma-fixed".into())?;
        let mem = membership(p, GroupKind::Su11);
        ensure(mem.is_member(), || format!("sigma-fixed point violates {:?}", mem.violations))?;
    }
    Ok(format!("rho and sigma involutive; {} sigma-fixed points lie in SU(1|1)", fixed.len()))
}

/// The `(i, j)` coefficient computed from first principles:
/// `t^m (δ_ij + θ U_ij + η S_ij + θη (US)_ij)`, or `t^m (δ_ij + θ Z_ij)`.
fn coefficient_oracle(rep: &Representation, i: usize, j: usize) -> Section {
    let m = rep.weights[i];
    let mut f = Section::zero(rep.algebra);
    if i == j {
        f.add_term(m, 0, Scalar::one()).unwrap();
    }
    let g = &rep.generators;
    f.add_term(m, THETA, g[0].get(i, j).clone()).unwrap();
    if rep.algebra == AlgebraTag::Su11 {
        f.add_term(m, ETA, g[1].get(i, j).clone()).unwrap();
        let us = g[0].try_mul(&g[1]).unwrap();
        f.add_term(m, THETA_ETA, us.get(i, j).clone()).unwrap();
    }
    f
}

/// Expands every monomial of weight `|m| <= N` and rebuilds it from the
/// reported coefficients with independently computed matrix coefficients.
fn peter_weyl(group: AlgebraTag) -> Result<Expansions, String> {
    let monos: &[u8] = match group {
        AlgebraTag::S11 => &[0, THETA],
        AlgebraTag::Su11 => &[0, THETA, ETA, THETA_ETA],
    };
    let mut total = 0;
    let mut zero = 0;
    let mut nonzero = Vec::new();
    for m in -N..=N {
        for &mono in monos {
            total += 1;
            let f = Section::monomial(group, m, mono, Scalar::one()).map_err(e)?;
            let r = expand(&f).map_err(e)?;
            let mut rebuilt = r.residual.clone();
            for ((label, (i, j)), c) in &r.coefficients {
                let rep = label.build(group, EXACT, Branch::Principal).map_err(e)?;
                let oracle = coefficient_oracle(&rep, *i, *j);
                let lib = &matrix_coefficients(&rep).map_err(e)?[*i][*j];
                ensure(oracle == *lib, || format!("coefficient {label} ({i},{j}) disagrees with the oracle"))?;
                rebuilt = rebuilt.try_add(&oracle.scale(c).map_err(e)?).map_err(e)?;
            }
            ensure(rebuilt == f, || format!("m={m} mono={mono}: coefficients do not rebuild the monomial"))?;
            if r.residual.is_zero() {
                zero += 1;
            } else {
                nonzero.push((m, mono, r.residual));
            }
        }
    }
    Ok((total, zero, nonzero))
}

fn s11_peter_weyl() -> Outcome {
    let (total, zero, nonzero) = peter_weyl(AlgebraTag::S11)?;
    ensure(total == 42 && zero == 42 && nonzero.is_empty(), || format!("{zero}/{total} residuals vanish"))?;
    Ok(format!("{zero}/{total} monomials have residual 0"))
}

fn su11_peter_weyl() -> Outcome {
    let (total, zero, nonzero) = peter_weyl(AlgebraTag::Su11)?;
    ensure(total == 84 && zero == 83, || format!("{zero}/{total} residuals vanish"))?;
    ensure(nonzero.len() == 1 && nonzero[0].0 == 0 && nonzero[0].1 == THETA_ETA, || {
        format!("unexpected nonzero residuals at {:?}", nonzero.iter().map(|x| (x.0, x.1)).collect::<Vec<_>>())
    })?;
    let whole = Section::monomial(AlgebraTag::Su11, 0, THETA_ETA, Scalar::one()).map_err(e)?;
    ensure(nonzero[0].2 == whole, || "weight-0 theta*eta residual is not the whole monomial".into())?;
    let report = quick_report();
    let check = report["checks"]
        .as_array()
        .and_then(|c| c.iter().find(|c| c["name"] == "su11-weight0-theta-eta"))
        .ok_or("verify report lacks the theta*eta entry")?;
    ensure(check["status"] == "expected-discrepancy", || format!("theta*eta reported as {}", check["status"]))?;
    Ok("83/83 monomials have residual 0; weight-0 theta*eta residual reported as expected discrepancy".into())
}

/// `Ber = (a - β d⁻¹ γ) d⁻¹`.
fn ber_oracle(g: &GL11Point) -> Result<GrassmannElement, String> {
    let d_inv = g.d.invert().map_err(e)?;
    let schur = g.a.try_sub(&g.beta.try_mul(&d_inv).map_err(e)?.try_mul(&g.gamma).map_err(e)?).map_err(e)?;
    schur.try_mul(&d_inv).map_err(e)
}

fn berezinian() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let trials = 200;
    for trial in 0..trials {
        let k = rng.gen_range(1..=4);
        let gens = std::sync::Arc::new(GeneratorSet::new((0..k).map(|j| format!("x{j}"))).map_err(e)?);
        let a = random_even_invertible_point(&mut rng, &gens).map_err(e)?;
        let b = random_even_invertible_point(&mut rng, &gens).map_err(e)?;
        let ab = a.try_mul(&b).map_err(e)?;
        let (ba, bb, bab) = (ber_oracle(&a)?, ber_oracle(&b)?, ber_oracle(&ab)?);
        ensure(a.berezinian().map_err(e)? == ba, || format!("trial {trial}: Ber(A) differs from the oracle"))?;
        ensure(bab == ba.try_mul(&bb).map_err(e)?, || format!("trial {trial}: Ber(AB) != Ber(A)Ber(B)"))?;
    }
    let ring = GenericUnitaryRing::new(GroupKind::Su11, 1).map_err(e)?;
    ensure(ber_oracle(&ring.points[0])?.is_one(), || "Ber of the generic SU(1|1) point is not 1".into())?;
    Ok(format!("{trials}/{trials} products multiplicative; generic SU(1|1) point has Ber 1"))
}

fn determinism() -> Outcome {
    let cfg = RunConfig { seed: 17, ..RunConfig::default() };
    let first = to_pretty(&cmd_verify(&cfg).output);
    let second = to_pretty(&cmd_verify(&cfg).output);
    ensure(first == second, || "reports differ".into())?;
    Ok(format!("two runs produce identical {}-byte reports", first.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("su(1|1) structure constants", 1, structure_constants),
        ("pi_m^± identities", 1, representation_identities),
        ("pi_m^+ and pi_m^- inequivalent", 5, inequivalence),
        ("randomized decomposition", 60, decomposition_trials),
        ("factorization round trips", 5, factorization),
        ("involutions and fixed points", 5, involutions),
        ("S^{1|1} Peter-Weyl", 5, s11_peter_weyl),
        ("SU(1|1) Peter-Weyl", 10, su11_peter_weyl),
        ("Berezinian multiplicativity", 10, berezinian),
        ("verify determinism", 120, determinism),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*limit);
        let (status, detail) = match (&result, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over the {limit} s limit")),
            (Err(d), _) => ("FAIL", d.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} {:>2} {name} ({:.3} s / {limit} s): {detail}", k + 1, elapsed.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
