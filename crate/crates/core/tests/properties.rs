//! Invariants checked on random inputs.

#![allow(clippy::needless_range_loop)]

mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;

use common::{degree_scaling, diag_conjugation, gl_oracle, naive_axiom_violations, q};
use superlie::builders::{build_gl, build_osp};
use superlie::covering::{
    build_projection, change_basis, check_homomorphism, lift_universal, tower_support, verify_covering, CoveringKind,
    Normalization,
};
use superlie::functors::{f_prime_n, map_through};
use superlie::io::{load, parse_algebra_any, write_algebra, AlgebraDocument, Format};
use superlie::linalg::Matrix;
use superlie::{verify_axioms, Degree, GradedLieSuperalgebra, Scalar};

fn small_rational() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Scalar> {
    ((1i64..=6), 1i64..=4, any::<bool>()).prop_map(|(n, d, neg)| q(if neg { -n } else { n }, d))
}

fn invertible(size: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(small_rational(), size * size)
        .prop_map(move |v| Matrix::from_vec(size, size, v))
        .prop_filter("invertible", |m| m.inverse().is_some())
}

/// Random invertible transforms on every degree of `a`.
fn transforms(a: &GradedLieSuperalgebra) -> impl Strategy<Value = BTreeMap<Degree, Matrix>> {
    let degrees: Vec<(Degree, usize)> = a
        .degrees()
        .into_iter()
        .map(|d| {
            let n = a.component(&d).len();
            (d, n)
        })
        .collect();
    degrees
        .into_iter()
        .map(|(d, n)| invertible(n).prop_map(move |m| (d.clone(), m)))
        .collect::<Vec<_>>()
        .prop_map(|v| v.into_iter().collect())
}

fn element(a: &GradedLieSuperalgebra, coeffs: &[Scalar]) -> superlie::Element {
    a.element(coeffs.iter().cloned().enumerate()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn bracket_is_bilinear(
        x in proptest::collection::vec(small_rational(), 9),
        y in proptest::collection::vec(small_rational(), 9),
        z in proptest::collection::vec(small_rational(), 9),
        s in small_rational(),
    ) {
        let g = build_gl(2, 1).unwrap();
        let (x, y, z) = (element(&g, &x), element(&g, &y), element(&g, &z));
        let lhs = g.bracket(&x.scale(&s).add(&y).unwrap(), &z).unwrap();
        let rhs = g.bracket(&x, &z).unwrap().scale(&s).add(&g.bracket(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(lhs.terms(), rhs.terms());
        let lhs = g.bracket(&z, &x.scale(&s).add(&y).unwrap()).unwrap();
        let rhs = g.bracket(&z, &x).unwrap().scale(&s).add(&g.bracket(&z, &y).unwrap()).unwrap();
        prop_assert_eq!(lhs.terms(), rhs.terms());
    }

    #[test]
    fn change_of_basis_round_trips_through_both_formats(t in transforms(&build_osp(1, 2).unwrap())) {
        let g = Arc::new(build_osp(1, 2).unwrap());
        let (h, iso) = change_basis(&g, &t).unwrap();
        prop_assert!(verify_axioms(&h).passed());
        prop_assert!(check_homomorphism(&iso).passed());
        let doc = AlgebraDocument::from_algebra(&h);
        for format in [Format::Text, Format::Json] {
            let back = parse_algebra_any(&write_algebra(&doc, format)).unwrap();
            prop_assert_eq!(&back, &doc);
            prop_assert!(load(&back).unwrap().same_structure(&h));
        }
    }

    #[test]
    fn covering_verdict_survives_a_change_of_basis(t in transforms(&build_gl(1, 1).unwrap()), n in 2usize..=3) {
        let g = Arc::new(build_gl(1, 1).unwrap());
        let (h, iso) = change_basis(&g, &t).unwrap();
        let f = f_prime_n(&h, n).unwrap();
        let cert = verify_covering(
            build_projection(&f, Normalization::InverseFactorial).unwrap(),
            tower_support(&h, n),
            CoveringKind::Semicovering,
        );
        prop_assert!(cert.passed());
        let unit = verify_covering(
            build_projection(&f, Normalization::Unit).unwrap(),
            tower_support(&h, n),
            CoveringKind::Semicovering,
        );
        prop_assert!(!unit.passed());
        // The isomorphism lifts to the towers.
        let fg = f_prime_n(&g, n).unwrap();
        let induced = map_through(&iso, &fg, &f).unwrap();
        prop_assert!(induced.to_matrix().inverse().is_some());
    }

    #[test]
    fn lifts_are_unique(a in nonzero_rational(), b in nonzero_rational(), s in nonzero_rational()) {
        let g = Arc::new(build_gl(1, 1).unwrap());
        let f = f_prime_n(&g, 3).unwrap();
        let p = build_projection(&f, Normalization::InverseFactorial).unwrap();
        let cert = verify_covering(p.clone(), tower_support(&g, 3), CoveringKind::Semicovering);
        let conj = diag_conjugation(&g, 2, &[a, b]);
        let scale = degree_scaling(&f, &s);
        let psi = conj.compose(&p).unwrap().compose(&scale).unwrap();
        let lifted = lift_universal(&psi, &cert).unwrap();
        prop_assert!(p.compose(&lifted).unwrap().same_map(&psi));
        let expected = map_through(&conj, &f, &f).unwrap().compose(&scale).unwrap();
        prop_assert!(lifted.same_map(&expected));
    }

    #[test]
    fn axiom_checker_agrees_with_the_dense_oracle(
        i in 0usize..4, j in 0usize..4, k in 0usize..4, c in small_rational(),
    ) {
        let g = build_gl(1, 1).unwrap();
        let broken = g.with_raw_bracket(i, j, if c.is_zero() { vec![] } else { vec![(k, c)] });
        prop_assert_eq!(verify_axioms(&broken).passed(), naive_axiom_violations(&broken) == 0);
    }

    #[test]
    fn scalars_print_and_parse(n in -1000i64..1000, d in 1i64..1000) {
        let x = q(n, d);
        prop_assert_eq!(x.to_string().parse::<Scalar>().unwrap(), x);
    }
}

#[test]
fn gl_builder_matches_matrix_units() {
    for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        let g = build_gl(m, n).unwrap();
        let c = gl_oracle(m, n);
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                for k in 0..g.dim() {
                    assert_eq!(g.constant(i, j, k), Scalar::from_int(c[i][j][k]), "gl({m}|{n}) {i} {j} {k}");
                }
            }
        }
    }
}

#[test]
fn dense_oracle_accepts_the_builders() {
    for g in [build_gl(2, 1).unwrap(), build_osp(1, 2).unwrap()] {
        assert_eq!(naive_axiom_violations(&g), 0, "{}", g.name());
    }
}
