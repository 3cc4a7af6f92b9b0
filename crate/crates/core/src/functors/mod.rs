//! Takiff, split, parity-change and diagonal functors on structure-constant
//! algebras, their composite tower, and functoriality on morphisms.

mod grassmann;
mod iota;
mod map;
mod pi;
mod takiff;
mod tower;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

pub use grassmann::{compare_with_grassmann_model, grassmann_oracle_check, OracleMismatch};
pub use iota::iota_prime;
pub use map::{apply_functor, map_through, map_through_spec, FunctorSpec};
pub use pi::pi_prime;
pub use takiff::{gr_prime, gr_prime_of, takiff};
pub use tower::{f_prime_n, truncation_map};

use crate::algebra::GradedLieSuperalgebra;
use crate::error::{Error, Result};

/// `d_I(X)`: a strictly increasing set of differential labels over a base
/// basis index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MultiIndexBasisElement {
    pub index_set: Vec<u32>,
    pub base: usize,
}

impl MultiIndexBasisElement {
    pub fn cardinality(&self) -> usize {
        self.index_set.len()
    }

    pub(crate) fn mask(&self) -> u32 {
        self.index_set.iter().fold(0, |m, &i| m | (1 << (i - 1)))
    }
}

/// Where a functor-output basis element comes from.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Provenance {
    MultiIndex(MultiIndexBasisElement),
    /// The diagonal generator of the given degree built from a base element.
    Diagonal {
        degree: usize,
        base: usize,
    },
}

impl Provenance {
    pub fn base(&self) -> usize {
        match self {
            Provenance::MultiIndex(m) => m.base,
            Provenance::Diagonal { base, .. } => *base,
        }
    }

    /// Human-readable form using base-algebra names.
    pub fn describe(&self, base: &GradedLieSuperalgebra) -> String {
        match self {
            Provenance::MultiIndex(m) => {
                let name = &base.basis_element(m.base).name;
                if m.index_set.is_empty() {
                    name.clone()
                } else {
                    let ds: Vec<String> = m.index_set.iter().map(|i| format!("d{i}")).collect();
                    format!("{}({name})", ds.join(" "))
                }
            }
            Provenance::Diagonal { degree, base: b } => {
                format!("diagonal generator of degree {degree} over {}", base.basis_element(*b).name)
            }
        }
    }

    fn sort_key(&self) -> (usize, Vec<u32>) {
        match self {
            Provenance::MultiIndex(m) => (0, m.index_set.clone()),
            Provenance::Diagonal { degree, .. } => (*degree, Vec::new()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FunctorTag {
    Takiff,
    Gr,
    Pi,
    Iota,
    Fn,
}

impl fmt::Display for FunctorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FunctorTag::Takiff => "takiff",
            FunctorTag::Gr => "gr",
            FunctorTag::Pi => "pi",
            FunctorTag::Iota => "iota",
            FunctorTag::Fn => "F",
        })
    }
}

/// A functor output together with the provenance of every basis element.
#[derive(Clone, Debug)]
pub struct FunctorOutput {
    pub algebra: Arc<GradedLieSuperalgebra>,
    /// `provenance[i]` describes basis element `i` of `algebra`.
    pub provenance: Vec<Provenance>,
    /// The algebra the chain started from.
    pub base: Arc<GradedLieSuperalgebra>,
    /// Number of differentials in play.
    pub k: usize,
    pub tag: FunctorTag,
    /// Functors applied so far, innermost first.
    pub chain: Vec<FunctorTag>,
}

impl FunctorOutput {
    /// Builds an output, sorting the basis by (weight, provenance, base name).
    pub(crate) fn assemble(
        algebra: GradedLieSuperalgebra,
        provenance: Vec<Provenance>,
        base: Arc<GradedLieSuperalgebra>,
        k: usize,
        tag: FunctorTag,
        chain: Vec<FunctorTag>,
    ) -> FunctorOutput {
        let mut perm: Vec<usize> = (0..algebra.dim()).collect();
        perm.sort_by(|&a, &b| {
            let ka = (algebra.weight(a), provenance[a].sort_key(), &base.basis_element(provenance[a].base()).name);
            let kb = (algebra.weight(b), provenance[b].sort_key(), &base.basis_element(provenance[b].base()).name);
            ka.cmp(&kb)
        });
        let algebra = algebra.permuted(&perm);
        let provenance = perm.iter().map(|&o| provenance[o].clone()).collect();
        FunctorOutput { algebra: Arc::new(algebra), provenance, base, k, tag, chain }
    }

    pub fn algebra(&self) -> &GradedLieSuperalgebra {
        &self.algebra
    }

    pub fn provenance_index(&self) -> HashMap<Provenance, usize> {
        self.provenance.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect()
    }

    pub fn index_of(&self, p: &Provenance) -> Option<usize> {
        self.provenance.iter().position(|q| q == p)
    }

    /// Index of `d_I(X)`, with `index_set` given in any order.
    pub fn index_of_multi(&self, index_set: &[u32], base: usize) -> Option<usize> {
        let mut s = index_set.to_vec();
        s.sort_unstable();
        self.index_of(&Provenance::MultiIndex(MultiIndexBasisElement { index_set: s, base }))
    }

    /// Index of the diagonal generator of `degree` over `base`.
    pub fn index_of_diagonal(&self, degree: usize, base: usize) -> Option<usize> {
        self.index_of(&Provenance::Diagonal { degree, base })
    }

    pub fn has_diagonal_provenance(&self) -> bool {
        self.provenance.iter().all(|p| matches!(p, Provenance::Diagonal { .. }))
    }

    pub(crate) fn require_chain(&self, chain: &[FunctorTag], k: usize, what: &str) -> Result<()> {
        if self.chain != chain || self.k != k {
            let got: Vec<String> = self.chain.iter().map(ToString::to_string).collect();
            return Err(Error::Domain(format!(
                "{what} needs an output of [{}] with k = {k}; got [{}] with k = {}",
                chain.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
                got.join(", "),
                self.k
            )));
        }
        Ok(())
    }
}
