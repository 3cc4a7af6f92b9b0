//! The composite tower and its truncation maps.

use std::sync::Arc;

use super::iota::iota_prime;
use super::pi::pi_prime_unchecked;
use super::{gr_prime_of, takiff, FunctorOutput, FunctorTag, Provenance};
use crate::algebra::GradedLieSuperalgebra;
use crate::covering::{GradedMorphism, GradingMap};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::sparse::SparseVec;

/// `F'_n(g)`: the diagonal subalgebra of the parity-changed split Takiff
/// algebra with `n - 1` differentials. Its support is `{0..n}` and its
/// degree-`i` component is a copy of the base part of parity `i mod 2`.
pub fn f_prime_n(g: &GradedLieSuperalgebra, n: usize) -> Result<FunctorOutput> {
    if n < 2 {
        return Err(Error::Domain(format!("F'_n needs n >= 2, got {n}")));
    }
    let k = n - 1;
    let t = takiff(g, k)?;
    let s = gr_prime_of(&t)?;
    let p = pi_prime_unchecked(&s, k)?;
    let mut out = iota_prime(&p, k)?;
    out.tag = FunctorTag::Fn;
    out.algebra = Arc::new((*out.algebra).clone().with_name(format!("F'_{n}({})", g.name())));
    Ok(out)
}

/// `F'_{n+1}(g) -> F'_n(g)`: identity on diagonal generators of degree at
/// most `n`, zero on the top degree.
pub fn truncation_map(upper: &FunctorOutput, lower: &FunctorOutput) -> Result<GradedMorphism> {
    if !upper.has_diagonal_provenance() || !lower.has_diagonal_provenance() {
        return Err(Error::Domain("truncation needs diagonal tower outputs".into()));
    }
    if !upper.base.same_structure(&lower.base) || upper.k != lower.k + 1 {
        return Err(Error::Domain("truncation needs consecutive tower outputs over one base".into()));
    }
    let index = lower.provenance_index();
    let images: Vec<SparseVec> = upper
        .provenance
        .iter()
        .map(|p| match p {
            Provenance::Diagonal { .. } => index.get(p).map(|&i| vec![(i, Scalar::one())]).unwrap_or_default(),
            Provenance::MultiIndex(_) => Vec::new(),
        })
        .collect();
    let rank = upper.algebra.lattice().rank();
    GradedMorphism::from_images(upper.algebra.clone(), lower.algebra.clone(), GradingMap::identity(rank), &images)
}
