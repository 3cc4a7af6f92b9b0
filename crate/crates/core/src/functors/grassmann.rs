//! An independent model of `Lambda(xi_1..xi_k) (x) g` used to check the
//! Takiff construction constant by constant.
//!
//! Monomials are explicit lists of generator labels multiplied by
//! concatenation and sorted by adjacent transpositions, so no sign logic is
//! shared with the Takiff construction.

use std::collections::HashMap;

use serde::Serialize;

use super::{takiff, FunctorOutput, Provenance};
use crate::algebra::GradedLieSuperalgebra;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::sparse::{self, SparseVec};

/// Product of two sorted monomials: `None` if a generator repeats, else the
/// sorted monomial and whether the sort took an odd number of swaps.
fn multiply(left: &[u32], right: &[u32]) -> Option<(Vec<u32>, bool)> {
    let mut word: Vec<u32> = left.iter().chain(right).copied().collect();
    let mut swaps = 0usize;
    for end in (1..word.len()).rev() {
        for p in 0..end {
            if word[p] > word[p + 1] {
                word.swap(p, p + 1);
                swaps += 1;
            }
        }
    }
    if word.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((word, swaps % 2 == 1))
}

/// One structure constant on which the two constructions disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleMismatch {
    pub left: String,
    pub right: String,
    pub takiff: SparseVec,
    pub model: SparseVec,
}

/// Compares every bracket of a Takiff output with the Grassmann model built
/// from its base algebra and provenance.
pub fn compare_with_grassmann_model(t: &FunctorOutput) -> Result<Vec<OracleMismatch>> {
    let g: &GradedLieSuperalgebra = &t.base;
    let a = &t.algebra;
    let mut monomials = Vec::with_capacity(a.dim());
    for p in &t.provenance {
        match p {
            Provenance::MultiIndex(m) => monomials.push((m.index_set.clone(), m.base)),
            Provenance::Diagonal { .. } => {
                return Err(Error::Domain("the Grassmann model needs multi-index provenance".into()))
            }
        }
    }
    let position: HashMap<(Vec<u32>, usize), usize> =
        monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();

    let mut out = Vec::new();
    for (i, (xi_a, x)) in monomials.iter().enumerate() {
        for (j, (xi_b, y)) in monomials.iter().enumerate() {
            // [a (x) X, b (x) Y] = (-1)^{|X||b|} ab (x) [X, Y]
            let model: SparseVec = match multiply(xi_a, xi_b) {
                None => Vec::new(),
                Some((word, shuffle_odd)) => {
                    let koszul = g.parity(*x).is_odd() && xi_b.len() % 2 == 1;
                    let sign = Scalar::sign(koszul != shuffle_odd);
                    let terms = g.bracket_basis(*x, *y).iter().map(|(z, c)| {
                        let p = position[&(word.clone(), *z)];
                        (p, c * &sign)
                    });
                    sparse::normalize(terms)
                }
            };
            let stored = a.bracket_basis(i, j);
            if stored != model.as_slice() {
                out.push(OracleMismatch {
                    left: a.basis_element(i).name.clone(),
                    right: a.basis_element(j).name.clone(),
                    takiff: stored.to_vec(),
                    model,
                });
            }
        }
    }
    Ok(out)
}

/// Builds the Takiff algebra with `k` differentials and checks it against
/// the Grassmann model.
pub fn grassmann_oracle_check(g: &GradedLieSuperalgebra, k: usize) -> bool {
    match takiff(g, k) {
        Ok(t) => compare_with_grassmann_model(&t).is_ok_and(|m| m.is_empty()),
        Err(_) => false,
    }
}
