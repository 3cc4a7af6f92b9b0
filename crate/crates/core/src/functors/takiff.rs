//! The Takiff functor with `k` differentials and the split functor.

use std::sync::Arc;

use super::{FunctorOutput, FunctorTag, MultiIndexBasisElement, Provenance};
use crate::algebra::{BasisElement, GradedLieSuperalgebra};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::sparse;
use crate::weight::{Parity, WeightLattice};

/// Largest number of differentials accepted; the dimension grows as `2^k`.
pub const MAX_DIFFERENTIALS: usize = 12;

pub(crate) fn mask_indices(mask: u32) -> Vec<u32> {
    (0..32).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect()
}

/// Number of pairs `(i, j)` with `i` in `left`, `j` in `right`, `i > j`.
fn inversions(left: u32, right: u32) -> u32 {
    let mut count = 0;
    let mut r = right;
    while r != 0 {
        let j = r.trailing_zeros();
        count += (left >> (j + 1)).count_ones();
        r &= r - 1;
    }
    count
}

pub(crate) fn multi_name(base: &str, mask: u32) -> String {
    if mask == 0 {
        return base.to_string();
    }
    let ds: String = mask_indices(mask).iter().map(|i| format!("d{i}")).collect();
    format!("{ds}_{base}")
}

/// `T'^(k)(g)`: basis `d_I(X)` for `I` a subset of `{1..k}`, with
/// `[d_I X, d_J Y] = (-1)^{|X||J|} s(I,J) d_{I+J}[X, Y]` where `s(I,J)` sorts
/// the concatenated differentials, and zero when `I` and `J` meet.
///
/// Weights gain one coordinate per differential (`d1`, ..., `dk`).
pub fn takiff(g: &GradedLieSuperalgebra, k: usize) -> Result<FunctorOutput> {
    if k < 1 {
        return Err(Error::Domain("takiff needs k >= 1".into()));
    }
    if k > MAX_DIFFERENTIALS {
        return Err(Error::Domain(format!("takiff supports at most {MAX_DIFFERENTIALS} differentials")));
    }
    let dim = g.dim();
    let masks = 1u32 << k;
    let mut names = g.lattice().names.clone();
    names.extend((1..=k).map(|i| format!("d{i}")));
    let chi = g.lattice().chi.as_ref().map(|c| {
        let mut c = c.clone();
        c.extend(std::iter::repeat_n(Parity::Odd, k));
        c
    });
    let lattice = WeightLattice::new(names, chi);

    let mut basis = Vec::with_capacity(masks as usize * dim);
    let mut provenance = Vec::with_capacity(masks as usize * dim);
    for mask in 0..masks {
        let indicator: Vec<i64> = (0..k).map(|b| i64::from(mask >> b & 1)).collect();
        for b in 0..dim {
            let src = g.basis_element(b);
            basis.push(BasisElement {
                name: multi_name(&src.name, mask),
                weight: src.weight.concat(&indicator),
                parity: src.parity + Parity::from_int(i64::from(mask.count_ones())),
            });
            provenance.push(Provenance::MultiIndex(MultiIndexBasisElement { index_set: mask_indices(mask), base: b }));
        }
    }

    let n = basis.len();
    let mut table = vec![Vec::new(); n * n];
    for left in 0..masks {
        for right in 0..masks {
            if left & right != 0 {
                continue;
            }
            let union = (left | right) as usize;
            let right_odd = right.count_ones() % 2 == 1;
            let shuffle_odd = inversions(left, right) % 2 == 1;
            for x in 0..dim {
                let odd = (g.parity(x).is_odd() && right_odd) != shuffle_odd;
                let sign = Scalar::sign(odd);
                for y in 0..dim {
                    let br = g.bracket_basis(x, y);
                    if br.is_empty() {
                        continue;
                    }
                    let i = left as usize * dim + x;
                    let j = right as usize * dim + y;
                    table[i * n + j] = br.iter().map(|(z, c)| (union * dim + z, c * &sign)).collect();
                }
            }
        }
    }
    let algebra = GradedLieSuperalgebra::from_table(format!("T'^{k}({})", g.name()), lattice, basis, table)?;
    Ok(FunctorOutput::assemble(
        algebra,
        provenance,
        Arc::new(g.clone()),
        k,
        FunctorTag::Takiff,
        vec![FunctorTag::Takiff],
    ))
}

/// Zeroes every bracket of two odd elements and appends a `par` weight
/// coordinate equal to the parity, so the output is graded by the old
/// weights together with parity.
fn split(a: &GradedLieSuperalgebra, name: String) -> Result<GradedLieSuperalgebra> {
    let n = a.dim();
    let mut names = a.lattice().names.clone();
    names.push("par".into());
    let mut chi = vec![Parity::Even; a.lattice().rank()];
    chi.push(Parity::Odd);
    let lattice = WeightLattice::new(names, Some(chi));
    let basis = a
        .basis()
        .iter()
        .map(|b| BasisElement {
            name: b.name.clone(),
            weight: b.weight.concat(&[i64::from(b.parity.bit())]),
            parity: b.parity,
        })
        .collect();
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            if a.parity(i).is_odd() && a.parity(j).is_odd() {
                table.push(Vec::new());
            } else {
                table.push(sparse::normalize(a.bracket_basis(i, j).iter().cloned()));
            }
        }
    }
    GradedLieSuperalgebra::from_table(name, lattice, basis, table)
}

/// The split functor on a plain algebra.
pub fn gr_prime(g: &GradedLieSuperalgebra) -> Result<FunctorOutput> {
    let algebra = split(g, format!("gr'({})", g.name()))?;
    let provenance = (0..g.dim())
        .map(|b| Provenance::MultiIndex(MultiIndexBasisElement { index_set: Vec::new(), base: b }))
        .collect();
    Ok(FunctorOutput::assemble(algebra, provenance, Arc::new(g.clone()), 0, FunctorTag::Gr, vec![FunctorTag::Gr]))
}

/// The split functor on a functor output, keeping provenance.
pub fn gr_prime_of(h: &FunctorOutput) -> Result<FunctorOutput> {
    let algebra = split(&h.algebra, format!("gr'({})", h.algebra.name()))?;
    let mut chain = h.chain.clone();
    chain.push(FunctorTag::Gr);
    Ok(FunctorOutput::assemble(algebra, h.provenance.clone(), h.base.clone(), h.k, FunctorTag::Gr, chain))
}
