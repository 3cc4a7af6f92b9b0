//! Exhaustive verification of the Lie superalgebra axioms.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::GradedLieSuperalgebra;
use crate::scalar::Scalar;
use crate::sparse::{self, Accumulator, SparseVec};
use crate::weight::Parity;

/// `[e_first, e_second]` disagrees with the value derived from its partner.
/// Indices are zero-based; reports print them one-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkewViolation {
    pub first: usize,
    pub second: usize,
    /// `[e_first, e_second] + (-1)^{|first||second|} [e_second, e_first]`.
    pub residual: SparseVec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    /// `[x,[y,z]] - (-1)^{|x||y|}[y,[x,z]] - [[x,y],z]`.
    pub residual: SparseVec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradingViolation {
    pub pair: (usize, usize),
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ParityViolation {
    /// `c^k_{ij} != 0` with `p(k) != p(i) + p(j)`.
    Bracket { pair: (usize, usize), target: usize },
    /// Parity disagrees with `chi(weight)`.
    Chi { element: usize, declared: Parity, chi: Parity },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub skew: Vec<SkewViolation>,
    pub jacobi: Vec<JacobiViolation>,
    pub grading: Vec<GradingViolation>,
    pub parity: Vec<ParityViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.skew.is_empty() && self.jacobi.is_empty() && self.grading.is_empty() && self.parity.is_empty()
    }

    pub fn violation_count(&self) -> usize {
        self.skew.len() + self.jacobi.len() + self.grading.len() + self.parity.len()
    }

    /// Human-readable listing, naming basis elements. At most `limit` lines
    /// per category.
    pub fn describe(&self, a: &GradedLieSuperalgebra, limit: usize) -> String {
        let name = |i: usize| a.basis_element(i).name.as_str();
        let mut out = String::new();
        let mut section = |title: &str, lines: Vec<String>| {
            let status = if lines.is_empty() { "pass" } else { "FAIL" };
            out.push_str(&format!("{title}: {status}"));
            if !lines.is_empty() {
                out.push_str(&format!(" ({} violations)", lines.len()));
            }
            out.push('\n');
            for l in lines.iter().take(limit) {
                out.push_str("  ");
                out.push_str(l);
                out.push('\n');
            }
            if lines.len() > limit {
                out.push_str(&format!("  ... {} more\n", lines.len() - limit));
            }
        };
        section(
            "skew",
            self.skew
                .iter()
                .map(|v| {
                    format!(
                        "pair ({},{}) [{}, {}]: residual {}",
                        v.first + 1,
                        v.second + 1,
                        name(v.first),
                        name(v.second),
                        a.format_element(&v.residual)
                    )
                })
                .collect(),
        );
        section(
            "jacobi",
            self.jacobi
                .iter()
                .map(|v| {
                    let (x, y, z) = v.triple;
                    format!(
                        "triple ({}, {}, {}): residual {}",
                        name(x),
                        name(y),
                        name(z),
                        a.format_element(&v.residual)
                    )
                })
                .collect(),
        );
        section(
            "grading",
            self.grading
                .iter()
                .map(|v| {
                    format!(
                        "[{}, {}] has a component on {} of weight {}",
                        name(v.pair.0),
                        name(v.pair.1),
                        name(v.target),
                        a.weight(v.target)
                    )
                })
                .collect(),
        );
        section(
            "parity",
            self.parity
                .iter()
                .map(|v| match v {
                    ParityViolation::Bracket { pair, target } => format!(
                        "[{}, {}] has a component on {} of the wrong parity",
                        name(pair.0),
                        name(pair.1),
                        name(*target)
                    ),
                    ParityViolation::Chi { element, declared, chi } => {
                        format!("{} is {declared} but chi of its weight is {chi}", name(*element))
                    }
                })
                .collect(),
        );
        out
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "skew: {}, jacobi: {}, grading: {}, parity: {}",
            self.skew.len(),
            self.jacobi.len(),
            self.grading.len(),
            self.parity.len()
        )
    }
}

/// Checks skew-symmetry on all pairs, graded Jacobi on all ordered triples,
/// weight additivity and parity additivity on every stored constant, and
/// `chi`-consistency of every basis element.
pub fn verify_axioms(a: &GradedLieSuperalgebra) -> AxiomReport {
    AxiomReport { skew: check_skew(a), jacobi: check_jacobi(a), grading: check_grading(a), parity: check_parity(a) }
}

fn check_skew(a: &GradedLieSuperalgebra) -> Vec<SkewViolation> {
    let n = a.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            let sign = Scalar::sign(a.parity(i).koszul(a.parity(j)));
            let residual = sparse::add(a.bracket_basis(j, i), &sparse::scale(a.bracket_basis(i, j), &sign));
            if !residual.is_empty() {
                out.push(SkewViolation { first: j, second: i, residual });
            }
        }
    }
    out
}

fn check_jacobi(a: &GradedLieSuperalgebra) -> Vec<JacobiViolation> {
    let n = a.dim();
    (0..n)
        .into_par_iter()
        .flat_map_iter(|x| {
            let mut found = Vec::new();
            for y in 0..n {
                let xy = a.bracket_basis(x, y);
                let sign = Scalar::sign(a.parity(x).koszul(a.parity(y)));
                for z in 0..n {
                    let mut acc = Accumulator::new();
                    // [x, [y, z]]
                    for (k, c) in a.bracket_basis(y, z) {
                        acc.add_scaled(a.bracket_basis(x, *k), c);
                    }
                    // - (-1)^{|x||y|} [y, [x, z]]
                    let minus_sign = -&sign;
                    for (k, c) in a.bracket_basis(x, z) {
                        acc.add_scaled(a.bracket_basis(y, *k), &(c * &minus_sign));
                    }
                    // - [[x, y], z]
                    for (k, c) in xy {
                        acc.add_scaled(a.bracket_basis(*k, z), &(-c));
                    }
                    if !acc.is_empty() {
                        found.push(JacobiViolation { triple: (x, y, z), residual: acc.finish() });
                    }
                }
            }
            found
        })
        .collect()
}

fn check_grading(a: &GradedLieSuperalgebra) -> Vec<GradingViolation> {
    let n = a.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let expected = a.weight(i).plus(a.weight(j));
            for (k, _) in a.bracket_basis(i, j) {
                if *a.weight(*k) != expected {
                    out.push(GradingViolation { pair: (i, j), target: *k });
                }
            }
        }
    }
    out
}

fn check_parity(a: &GradedLieSuperalgebra) -> Vec<ParityViolation> {
    let n = a.dim();
    let mut out = Vec::new();
    for e in 0..n {
        if let Some(chi) = a.lattice().parity_of(a.weight(e)) {
            if chi != a.parity(e) {
                out.push(ParityViolation::Chi { element: e, declared: a.parity(e), chi });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let expected = a.parity(i) + a.parity(j);
            for (k, _) in a.bracket_basis(i, j) {
                if a.parity(*k) != expected {
                    out.push(ParityViolation::Bracket { pair: (i, j), target: *k });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BasisElement;
    use crate::weight::{Weight, WeightLattice};

    fn even(name: &str) -> BasisElement {
        BasisElement { name: name.into(), weight: Weight::default(), parity: Parity::Even }
    }

    #[test]
    fn one_sided_constant_fails_skew_on_the_reversed_pair() {
        // c^1_{12} = 1 and nothing else.
        let mut table = vec![Vec::new(); 4];
        table[1] = vec![(0, Scalar::one())];
        let a =
            GradedLieSuperalgebra::from_table("broken", WeightLattice::trivial(), vec![even("e1"), even("e2")], table)
                .unwrap();
        let report = verify_axioms(&a);
        assert!(!report.passed());
        assert_eq!(report.skew.len(), 1);
        assert_eq!((report.skew[0].first + 1, report.skew[0].second + 1), (2, 1));
        assert!(report.describe(&a, 5).contains("pair (2,1)"));
    }

    #[test]
    fn odd_square_may_be_nonzero() {
        // [y, y] = 2x with x even, y odd: the odd self-bracket is symmetric.
        let basis = vec![even("x"), BasisElement { name: "y".into(), weight: Weight::default(), parity: Parity::Odd }];
        let mut table = vec![Vec::new(); 4];
        table[3] = vec![(0, Scalar::from_int(2))];
        let a = GradedLieSuperalgebra::from_table("h", WeightLattice::trivial(), basis, table).unwrap();
        assert!(verify_axioms(&a).passed());
    }
}
