//! Functoriality: morphisms of base algebras induce morphisms of outputs.

use std::sync::Arc;

use super::iota::iota_prime;
use super::pi::pi_prime_unchecked;
use super::{f_prime_n, gr_prime, gr_prime_of, takiff, FunctorOutput, FunctorTag, MultiIndexBasisElement, Provenance};
use crate::algebra::GradedLieSuperalgebra;
use crate::covering::{check_homomorphism, GradedMorphism};
use crate::error::{Error, Result};
use crate::sparse::{Accumulator, SparseVec};

/// A functor (or composite) applied to a base algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunctorSpec {
    Takiff {
        k: usize,
    },
    /// The split functor on a plain algebra.
    Gr,
    GrTakiff {
        k: usize,
    },
    PiGrTakiff {
        k: usize,
    },
    /// The diagonal functor after the parity change, with `k` differentials.
    IotaPiGrTakiff {
        k: usize,
    },
    /// `F'_n`.
    Fn {
        n: usize,
    },
}

pub fn apply_functor(g: &GradedLieSuperalgebra, spec: FunctorSpec) -> Result<FunctorOutput> {
    match spec {
        FunctorSpec::Takiff { k } => takiff(g, k),
        FunctorSpec::Gr => gr_prime(g),
        FunctorSpec::GrTakiff { k } => gr_prime_of(&takiff(g, k)?),
        FunctorSpec::PiGrTakiff { k } => super::pi_prime(&gr_prime_of(&takiff(g, k)?)?, k),
        FunctorSpec::IotaPiGrTakiff { k } => iota_chain(g, k),
        FunctorSpec::Fn { n } => f_prime_n(g, n),
    }
}

/// `iota' pi' gr' T'^(k)`; the parity-changed algebra is not checked on its
/// own since the diagonal functor verifies its output.
fn iota_chain(g: &GradedLieSuperalgebra, k: usize) -> Result<FunctorOutput> {
    let p = pi_prime_unchecked(&gr_prime_of(&takiff(g, k)?)?, k)?;
    iota_prime(&p, k)
}

/// The morphism `source -> target` induced by `f: g -> g2`, where `source`
/// and `target` are outputs of the same functor chain over `g` and `g2`.
///
/// `d_I X -> sum_Y f_{YX} d_I Y` and `X'_m -> sum_Y f_{YX} Y'_m`. The
/// grading map extends that of `f` by the identity on the coordinates the
/// chain added. `f` must be a homomorphism; the induced map is checked to be
/// one as well.
pub fn map_through(f: &GradedMorphism, source: &FunctorOutput, target: &FunctorOutput) -> Result<GradedMorphism> {
    let hv = check_homomorphism(f);
    if let Some(x) = hv.failures.first() {
        return Err(Error::Domain(format!("f is not a homomorphism: fails on [{}, {}]", x.names.0, x.names.1)));
    }
    if !f.source().same_structure(&source.base) || !f.target().same_structure(&target.base) {
        return Err(Error::Domain("functor outputs are not built over the source and target of f".into()));
    }
    if source.chain != target.chain || source.k != target.k {
        return Err(Error::Domain("functor outputs come from different chains".into()));
    }
    let f_images = f.images();
    let index = target.provenance_index();
    let mut images: Vec<SparseVec> = Vec::with_capacity(source.provenance.len());
    for p in &source.provenance {
        let mut acc = Accumulator::new();
        for (y, c) in &f_images[p.base()] {
            let q = match p {
                Provenance::MultiIndex(m) => {
                    Provenance::MultiIndex(MultiIndexBasisElement { index_set: m.index_set.clone(), base: *y })
                }
                Provenance::Diagonal { degree, .. } => Provenance::Diagonal { degree: *degree, base: *y },
            };
            let t = index
                .get(&q)
                .ok_or_else(|| Error::Consistency("induced map leaves the target output's basis".into()))?;
            acc.add(*t, c);
        }
        images.push(acc.finish());
    }
    let extra = source.algebra.lattice().rank() - f.source().lattice().rank();
    let grading = if source.chain.last() == Some(&FunctorTag::Iota) {
        f.grading().extend_leading(extra)
    } else {
        f.grading().extend_trailing(extra)
    };
    let induced = GradedMorphism::from_images(source.algebra.clone(), target.algebra.clone(), grading, &images)?;
    let hv = check_homomorphism(&induced);
    if let Some(x) = hv.failures.first() {
        return Err(Error::Consistency(format!(
            "induced map is not a homomorphism: fails on [{}, {}]",
            x.names.0, x.names.1
        )));
    }
    Ok(induced)
}

/// Applies `spec` to the source and target of `f` and returns both outputs
/// with the induced morphism.
pub fn map_through_spec(
    f: &GradedMorphism,
    spec: FunctorSpec,
) -> Result<(FunctorOutput, FunctorOutput, GradedMorphism)> {
    let s = apply_functor(f.source(), spec)?;
    let t = if Arc::ptr_eq(f.source(), f.target()) { s.clone() } else { apply_functor(f.target(), spec)? };
    let m = map_through(f, &s, &t)?;
    Ok((s, t, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::build_gl;

    #[test]
    fn identity_maps_to_identity() {
        let g = Arc::new(build_gl(1, 1).unwrap());
        let id = GradedMorphism::identity(g.clone());
        for spec in
            [FunctorSpec::Takiff { k: 2 }, FunctorSpec::Gr, FunctorSpec::PiGrTakiff { k: 1 }, FunctorSpec::Fn { n: 3 }]
        {
            let (s, _, m) = map_through_spec(&id, spec).unwrap();
            assert!(m.same_map(&GradedMorphism::identity(s.algebra.clone())), "{spec:?}");
        }
    }
}
