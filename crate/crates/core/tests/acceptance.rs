//! Acceptance criteria 1-11, all exact over the rationals. Runs without the
//! libtest harness so each criterion's PASS/FAIL line is always printed; the
//! process exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{degree_scaling, diag_conjugation, fixture, naive_axiom_violations, q, run_cli};
use superlie::builders::{
    build_gl, build_gl_zgraded, build_osp, matrix_realization, verify_loop_isomorphism, LoopModel,
};
use superlie::covering::{
    build_projection, check_homomorphism, check_partial_homomorphism, lift_between_coverings, lift_universal,
    tower_support, verify_covering, CoveringCertificate, CoveringKind, GradedMorphism, Normalization,
};
use superlie::functors::{
    f_prime_n, gr_prime_of, grassmann_oracle_check, map_through, pi_prime, takiff, truncation_map, FunctorOutput,
};
use superlie::io::{load, parse_algebra_any, parse_input, serialize_algebra, write_bundle, Format, Input};
use superlie::linalg::Matrix;
use superlie::{verify_axioms, GradedLieSuperalgebra, Parity, Scalar};

type Outcome = Result<String, String>;
type Criterion = (usize, &'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn suite() -> Vec<GradedLieSuperalgebra> {
    vec![
        build_gl(1, 1).unwrap(),
        build_gl(2, 1).unwrap(),
        build_gl(2, 2).unwrap(),
        build_gl_zgraded(&[1, 1], true).unwrap(),
        build_osp(1, 2).unwrap(),
    ]
}

fn scaled(v: &[(usize, Scalar)], c: &Scalar) -> Vec<(usize, Scalar)> {
    v.iter()
        .map(|(i, x)| {
            let mut y = x.clone();
            y *= c;
            (*i, y)
        })
        .collect()
}

fn sorted(mut v: Vec<(usize, Scalar)>) -> Vec<(usize, Scalar)> {
    v.sort_by_key(|(i, _)| *i);
    v
}

fn criterion_1() -> Outcome {
    let mut checked = 0;
    for g in suite() {
        let r = verify_axioms(&g);
        ensure(r.passed(), || format!("{}: {}", g.name(), r.describe(&g, 3)))?;
        checked += 1;
        for n in 2..=4 {
            let f = f_prime_n(&g, n).map_err(|e| format!("F'_{n}({}): {e}", g.name()))?;
            let r = verify_axioms(&f.algebra);
            ensure(r.passed(), || format!("{}: {}", f.algebra.name(), r.describe(&f.algebra, 3)))?;
            checked += 1;
        }
    }
    // The dense brute-force oracle agrees on the small cases.
    let g = build_gl(1, 1).unwrap();
    ensure(naive_axiom_violations(&g) == 0, || "dense oracle rejects gl(1|1)".into())?;
    let f = f_prime_n(&g, 2).unwrap();
    ensure(naive_axiom_violations(&f.algebra) == 0, || "dense oracle rejects F'_2(gl(1|1))".into())?;
    Ok(format!("{checked} algebras pass all axioms"))
}

fn criterion_2() -> Outcome {
    for (m, n) in [(1, 1), (2, 1)] {
        let g = build_gl(m, n).unwrap();
        for k in 1..=3 {
            ensure(grassmann_oracle_check(&g, k), || {
                format!("takiff({}, {k}) differs from the Grassmann model", g.name())
            })?;
        }
        // k = 1 directly from the single-differential rule:
        // [X, dY] = (-1)^{|X|} d[X, Y], [dX, dY] = 0.
        let t = takiff(&g, 1).unwrap();
        for x in 0..g.dim() {
            for y in 0..g.dim() {
                let sgn = Scalar::sign(g.parity(x) == Parity::Odd);
                let want = sorted(
                    scaled(g.bracket_basis(x, y), &sgn)
                        .into_iter()
                        .map(|(z, c)| (t.index_of_multi(&[1], z).unwrap(), c))
                        .collect(),
                );
                let xi = t.index_of_multi(&[], x).unwrap();
                let dy = t.index_of_multi(&[1], y).unwrap();
                let dx = t.index_of_multi(&[1], x).unwrap();
                ensure(t.algebra.bracket_basis(xi, dy) == want.as_slice(), || {
                    format!("[X, dY] rule fails for {x},{y}")
                })?;
                ensure(t.algebra.bracket_basis(dx, dy).is_empty(), || format!("[dX, dY] != 0 for {x},{y}"))?;
            }
        }
    }
    Ok("takiff matches the Grassmann model for gl(1|1), gl(2|1), k <= 3".into())
}

fn criterion_3() -> Outcome {
    let g = build_gl(1, 1).unwrap();
    let a = gr_prime_of(&takiff(&g, 1).unwrap()).unwrap();
    let plain = |x| a.index_of_multi(&[], x).unwrap();
    let d = |x| a.index_of_multi(&[1], x).unwrap();
    let mut pairs = 0;
    for x in 0..g.dim() {
        for y in 0..g.dim() {
            let (ox, oy) = (g.parity(x) == Parity::Odd, g.parity(y) == Parity::Odd);
            ensure(a.algebra.bracket_basis(d(x), d(y)).is_empty(), || format!("[dX, dY] != 0 at {x},{y}"))?;
            pairs += 1;
            if ox && oy {
                ensure(a.algebra.bracket_basis(plain(x), plain(y)).is_empty(), || "[g1, g1] != 0".into())?;
                let want = sorted(
                    scaled(g.bracket_basis(x, y), &Scalar::from_int(-1)).into_iter().map(|(z, c)| (d(z), c)).collect(),
                );
                ensure(a.algebra.bracket_basis(plain(x), d(y)) == want.as_slice(), || {
                    format!("[Y1, dY2] != -d[Y1, Y2] at {x},{y}")
                })?;
                pairs += 2;
            }
            if ox && !oy {
                ensure(a.algebra.bracket_basis(plain(x), d(y)).is_empty(), || "[g1, d g0] != 0".into())?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} basis relations hold in gr'T'(gl(1|1))"))
}

fn criterion_4() -> Outcome {
    let g = build_gl(1, 1).unwrap();
    let a = gr_prime_of(&takiff(&g, 1).unwrap()).unwrap();
    let h = pi_prime(&a, 1).unwrap();
    let odd = g.odd_indices();
    let mut nonzero = 0;
    for &y1 in &odd {
        for &y2 in &odd {
            let diag = |o: &FunctorOutput, y: usize| {
                o.algebra
                    .element([
                        (o.index_of_multi(&[], y).unwrap(), Scalar::one()),
                        (o.index_of_multi(&[1], y).unwrap(), Scalar::one()),
                    ])
                    .unwrap()
            };
            let without = a.algebra.bracket(&diag(&a, y1), &diag(&a, y2)).unwrap();
            ensure(without.is_zero(), || format!("without pi' the bracket of {y1},{y2} is nonzero"))?;
            let with = h.algebra.bracket(&diag(&h, y1), &diag(&h, y2)).unwrap();
            let want = sorted(
                scaled(g.bracket_basis(y1, y2), &Scalar::from_int(2))
                    .into_iter()
                    .map(|(z, c)| (h.index_of_multi(&[1], z).unwrap(), c))
                    .collect(),
            );
            ensure(with.terms() == want.as_slice(), || format!("with pi' the bracket of {y1},{y2} is not 2d[Y1,Y2]"))?;
            if !want.is_empty() {
                nonzero += 1;
            }
        }
    }
    ensure(nonzero > 0, || "no nonzero odd bracket was exercised".into())?;
    Ok(format!("0 without pi', 2d[Y1,Y2] with it ({nonzero} nonzero pairs)"))
}

fn criterion_5() -> Outcome {
    let g = build_gl(1, 1).unwrap();
    let mut checked = 0;
    for n in 2..=5usize {
        let f = f_prime_n(&g, n).unwrap();
        for i in 0..=n {
            for j in 0..=n - i {
                for x in 0..g.dim() {
                    for y in 0..g.dim() {
                        let (Some(xi), Some(yj)) = (f.index_of_diagonal(i, x), f.index_of_diagonal(j, y)) else {
                            continue;
                        };
                        let c = Scalar::binomial((i + j) as u32, i as u32);
                        let want = sorted(
                            scaled(g.bracket_basis(x, y), &c)
                                .into_iter()
                                .map(|(z, c)| (f.index_of_diagonal(i + j, z).expect("parity matches"), c))
                                .collect(),
                        );
                        ensure(f.algebra.bracket_basis(xi, yj) == want.as_slice(), || {
                            format!(
                                "n={n}: [{}'_{i}, {}'_{j}] breaks the binomial law",
                                g.basis_element(x).name,
                                g.basis_element(y).name
                            )
                        })?;
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checked} diagonal pairs obey the binomial law"))
}

fn certificate(f: &FunctorOutput, g: &GradedLieSuperalgebra, n: usize) -> CoveringCertificate {
    let p = build_projection(f, Normalization::InverseFactorial).unwrap();
    verify_covering(p, tower_support(g, n), CoveringKind::Semicovering)
}

fn criterion_6() -> Outcome {
    let mut passed = 0;
    for g in suite() {
        for n in 2..=4 {
            let f = f_prime_n(&g, n).unwrap();
            let cert = certificate(&f, &g, n);
            ensure(cert.passed(), || format!("F'_{n}({}) covering fails: {:?}", g.name(), cert.checks))?;
            passed += 1;
            let unit = build_projection(&f, Normalization::Unit).unwrap();
            let v = check_partial_homomorphism(&unit, &tower_support(&g, n));
            let witness =
                v.failures.iter().any(|x| x.weights.0.components()[0] == 1 && x.weights.1.components()[0] == 1);
            ensure(!v.passed() && witness, || {
                format!("unit normalization on F'_{n}({}) has no (1,1) failure", g.name())
            })?;
        }
    }
    Ok(format!("{passed} coverings pass; unit normalization fails at (1,1) each time"))
}

fn random_nonzero(rng: &mut ChaCha8Rng) -> Scalar {
    let num = loop {
        let v: i64 = rng.gen_range(-7..=7);
        if v != 0 {
            break v;
        }
    };
    q(num, rng.gen_range(1..=5))
}

fn criterion_7() -> Outcome {
    let g = Arc::new(build_gl(1, 1).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut trials = 0;
    for n in 2..=4 {
        let f = f_prime_n(&g, n).unwrap();
        let cert = certificate(&f, &g, n);
        let proj = cert.projection.clone();
        let id = lift_universal(&proj, &cert).map_err(|e| e.to_string())?;
        ensure(id.same_map(&GradedMorphism::identity(f.algebra.clone())), || {
            format!("lift of P is not the identity (n={n})")
        })?;

        for _ in 0..8 {
            let t = [random_nonzero(&mut rng), random_nonzero(&mut rng)];
            let s = random_nonzero(&mut rng);
            let conj = diag_conjugation(&g, 2, &t);
            let scale = degree_scaling(&f, &s);
            let psi = conj.compose(&proj).unwrap().compose(&scale).unwrap();
            ensure(check_partial_homomorphism(&psi, &cert.support_c).passed(), || {
                "psi is not a homomorphism on C".into()
            })?;
            let lifted = lift_universal(&psi, &cert).map_err(|e| e.to_string())?;
            ensure(proj.compose(&lifted).unwrap().same_map(&psi), || "P o Psi != psi".into())?;
            let expected = map_through(&conj, &f, &f).unwrap().compose(&scale).unwrap();
            ensure(lifted.same_map(&expected), || "lift differs from the induced map".into())?;

            let between = lift_between_coverings(&conj, &cert, &cert).map_err(|e| e.to_string())?;
            let induced = map_through(&conj, &f, &f).unwrap();
            ensure(between.blocks() == induced.blocks() && between.same_map(&induced), || {
                "lift_between_coverings differs from map_through".into()
            })?;
            trials += 1;
        }
    }
    Ok(format!("identity lift and {trials} randomized lifts agree exactly"))
}

fn criterion_8() -> Outcome {
    let mut checked = 0;
    for (m, n) in [(1, 1), (2, 1)] {
        let g = build_gl(m, n).unwrap();
        for top in 2..=4 {
            let f = f_prime_n(&g, top).unwrap();
            let lm = LoopModel::new(&g, top).unwrap();
            let yes = verify_loop_isomorphism(&f, &lm, true).unwrap();
            ensure(yes.passed, || format!("{} N={top}: rescaled map fails at {:?}", g.name(), yes.first_failure))?;
            let no = verify_loop_isomorphism(&f, &lm, false).unwrap();
            ensure(!no.passed, || format!("{} N={top}: map without rescaling passes", g.name()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} loop isomorphisms; all fail without 1/i!"))
}

fn flatten(m: &Matrix) -> Vec<Scalar> {
    m.entries().to_vec()
}

fn criterion_9() -> Outcome {
    let mut checked = 0;
    for (m, n) in [(1, 1), (2, 1)] {
        for d in 2..=3 {
            let r = matrix_realization(m, n, d).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("gl({m}|{n}) d={d}: realization fails"))?;
            // Independent closure and injectivity check on the raw matrices.
            let gens: Vec<Vec<Scalar>> = r.generators.iter().map(|x| flatten(&x.matrix.entries)).collect();
            let len = gens[0].len();
            let cols: Vec<Scalar> = (0..len).flat_map(|e| gens.iter().map(move |v| v[e].clone())).collect();
            let span = Matrix::from_vec(len, gens.len(), cols);
            ensure(span.rank() == gens.len(), || format!("gl({m}|{n}) d={d}: generators are dependent"))?;
            for a in &r.generators {
                for b in &r.generators {
                    let c = a.matrix.supercommutator(&b.matrix).unwrap();
                    ensure(span.solve(&flatten(&c.entries)).is_some(), || {
                        format!("[{}, {}] leaves the span", a.name, b.name)
                    })?;
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} realizations are closed, injective and match the loop model"))
}

fn criterion_10() -> Outcome {
    let mut checked = 0;
    for (m, n) in [(1, 1), (2, 1)] {
        let g = build_gl(m, n).unwrap();
        for k in 2..=4 {
            let upper = f_prime_n(&g, k + 1).unwrap();
            let lower = f_prime_n(&g, k).unwrap();
            let t = truncation_map(&upper, &lower).map_err(|e| e.to_string())?;
            let v = check_homomorphism(&t);
            ensure(v.passed(), || format!("F'_{}({}) -> F'_{k} is not a homomorphism", k + 1, g.name()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} truncation maps are homomorphisms"))
}

fn strip_header(s: &str) -> String {
    s.lines().skip_while(|l| l.starts_with('#')).map(|l| format!("{l}\n")).collect()
}

fn criterion_11() -> Outcome {
    let mut goldens = 0;
    for name in
        ["gl11.alg", "osp12.alg", "glz11.alg", "f3_gl11.alg", "gl11.json", "cover_gl11_n2.bundle", "gl11_corrupted.alg"]
    {
        let text = std::fs::read_to_string(fixture(name)).map_err(|e| e.to_string())?;
        match parse_input(&text).map_err(|e| format!("{name}: {e}"))? {
            Input::Algebra(doc) => {
                if name.ends_with(".json") {
                    let again = superlie::io::write_algebra(&doc, Format::Json);
                    ensure(again == text, || format!("{name} does not round-trip"))?;
                } else {
                    ensure(serialize_algebra(&doc) == strip_header(&text), || format!("{name} does not round-trip"))?;
                }
                let loaded = load(&doc);
                ensure(loaded.is_ok() == (name != "gl11_corrupted.alg"), || format!("{name}: unexpected load result"))?;
            }
            Input::Bundle(b) => {
                ensure(write_bundle(&b, Format::Text) == text, || format!("{name} does not round-trip"))?;
                let r = b.resolve().map_err(|e| e.to_string())?;
                ensure(r.single_covering().map(|c| c.passed()).unwrap_or(false), || format!("{name}: covering fails"))?;
            }
        }
        goldens += 1;
    }
    let gl11 = load(&parse_algebra_any(&std::fs::read_to_string(fixture("gl11.alg")).unwrap()).unwrap()).unwrap();
    ensure(gl11.same_up_to_basis_order(&build_gl(1, 1).unwrap()), || "gl11.alg differs from gl(1|1)".into())?;

    let built = run_cli(&["builtin", "gl:1,1"], None);
    let lifted = run_cli(&["functor", "-", "--op", "F", "--n", "3"], Some(&built.stdout));
    let verified = run_cli(&["verify", "-"], Some(&lifted.stdout));
    ensure(built.status.success() && lifted.status.success() && verified.status.code() == Some(0), || {
        format!("pipeline failed: {}", String::from_utf8_lossy(&verified.stderr))
    })?;

    let bad = run_cli(&["verify", fixture("gl11_corrupted.alg").to_str().unwrap()], None);
    let out = format!("{}{}", String::from_utf8_lossy(&bad.stdout), String::from_utf8_lossy(&bad.stderr));
    ensure(bad.status.code() == Some(1), || format!("corrupted fixture exits {:?}", bad.status.code()))?;
    ensure(out.contains("(E12, E21, E12)"), || format!("violating triple not named:\n{out}"))?;
    Ok(format!("{goldens} goldens round-trip; pipeline exits 0; corrupted fixture exits 1"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "axiom suite", criterion_1),
        (2, "Grassmann oracle", criterion_2),
        (3, "split Takiff relations", criterion_3),
        (4, "parity-change negative control", criterion_4),
        (5, "binomial law", criterion_5),
        (6, "covering", criterion_6),
        (7, "universal lift", criterion_7),
        (8, "loop isomorphism", criterion_8),
        (9, "matrix realization", criterion_9),
        (10, "projection tower", criterion_10),
        (11, "io", criterion_11),
    ];
    let mut failed = BTreeSet::new();
    for (id, name, run) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {id}: PASS ({name}): {detail}"),
            Err(why) => {
                println!("criterion {id}: FAIL ({name}): {why}");
                failed.insert(id);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all {} criteria pass", criteria.len());
}
