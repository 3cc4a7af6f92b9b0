//! Graded morphisms, the covering projection of the diagonal tower,
//! covering certificates and universal lifts.

mod basechange;
mod certificate;
mod lift;
mod morphism;

pub use basechange::change_basis;
pub use certificate::{verify_covering, CheckItem, CoveringCertificate, CoveringKind};
pub use lift::{lift_between_coverings, lift_universal, lift_universal_with_grading};
pub use morphism::{
    check_homomorphism, check_partial_homomorphism, GradedMorphism, GradingMap, HomomorphismFailure,
    HomomorphismVerdict,
};

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::algebra::GradedLieSuperalgebra;
use crate::error::{Error, Result};
use crate::functors::{FunctorOutput, Provenance};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::weight::{Parity, Weight};

/// How a diagonal generator of degree `i` is sent to its base element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Normalization {
    /// `X'_i -> X`.
    Unit,
    /// `X'_i -> X / i!`.
    InverseFactorial,
}

/// The projection from a diagonal tower output onto its base algebra.
///
/// Grading: the leading `deg` coordinate is dropped and the base weight kept;
/// parity is preserved because `X'_i` has the parity of `X`.
pub fn build_projection(p: &FunctorOutput, normalization: Normalization) -> Result<GradedMorphism> {
    if !p.has_diagonal_provenance() {
        return Err(Error::Domain("projection needs an output with diagonal-generator provenance".into()));
    }
    let g = p.base.clone();
    let mut full = Matrix::zeros(g.dim(), p.algebra.dim());
    for (c, prov) in p.provenance.iter().enumerate() {
        if let Provenance::Diagonal { degree, base } = prov {
            let v = match normalization {
                Normalization::Unit => Scalar::one(),
                Normalization::InverseFactorial => Scalar::inverse_factorial(*degree as u32),
            };
            full.set(*base, c, v);
        }
    }
    let grading = GradingMap::drop_leading(p.algebra.lattice().rank(), 1);
    GradedMorphism::from_matrix(p.algebra.clone(), g, grading, &full)
}

/// The support of `F'_n(g)` computed from `g` alone: `(i, w)` for
/// `0 <= i <= n` and `w` the weight of a basis element of parity `i mod 2`.
pub fn tower_support(g: &GradedLieSuperalgebra, n: usize) -> BTreeSet<Weight> {
    (0..=n)
        .flat_map(|i| {
            (0..g.dim())
                .filter(move |&b| g.parity(b) == Parity::from_int(i as i64))
                .map(move |b| g.weight(b).prepend(i as i64))
        })
        .collect()
}

/// Sets one degree block of a morphism to zero (used for negative controls).
pub fn zero_block(f: &GradedMorphism, degree: &crate::algebra::Degree) -> Result<GradedMorphism> {
    let mut blocks: BTreeMap<_, _> = f.blocks().clone();
    let b = blocks.get_mut(degree).ok_or_else(|| Error::Domain(format!("no block for degree {degree}")))?;
    *b = Matrix::zeros(b.rows(), b.cols());
    GradedMorphism::from_blocks(f.source().clone(), f.target().clone(), f.grading().clone(), blocks)
}
