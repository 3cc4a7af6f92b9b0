//! Parity change on split Takiff algebras.

use super::{FunctorOutput, FunctorTag, Provenance};
use crate::algebra::{BasisElement, GradedLieSuperalgebra};
use crate::axioms::verify_axioms;
use crate::error::{Error, Result};
use crate::weight::{Parity, WeightLattice};

/// Declares every differential even and rebuilds the bracket from the base
/// algebra's constants:
///
/// * `[d_I X, d_J Y] = 0` if `I` and `J` meet;
/// * `= 0` if both `|I| + |X|` and `|J| + |Y|` are odd;
/// * `= d_{I+J}[X, Y]` otherwise, with no sign.
///
/// The new parity of `d_I X` is `|X|`. Weights are unchanged. The result is
/// checked against the superalgebra axioms.
pub fn pi_prime(h: &FunctorOutput, k: usize) -> Result<FunctorOutput> {
    let out = pi_prime_unchecked(h, k)?;
    let report = verify_axioms(&out.algebra);
    if !report.passed() {
        return Err(Error::Consistency(format!(
            "parity-changed algebra violates the axioms:\n{}",
            report.describe(&out.algebra, 5)
        )));
    }
    Ok(out)
}

pub(crate) fn pi_prime_unchecked(h: &FunctorOutput, k: usize) -> Result<FunctorOutput> {
    if k < 1 {
        return Err(Error::Domain("pi' needs k >= 1".into()));
    }
    h.require_chain(&[FunctorTag::Takiff, FunctorTag::Gr], k, "pi'")?;
    let g = &h.base;
    let src = &h.algebra;
    let n = src.dim();
    let mut parts = Vec::with_capacity(n);
    for p in &h.provenance {
        match p {
            Provenance::MultiIndex(m) => parts.push((m.mask(), m.base)),
            Provenance::Diagonal { .. } => return Err(Error::Domain("pi' input carries diagonal provenance".into())),
        }
    }
    let index = h.provenance_index();
    let lookup = |mask: u32, base: usize| {
        let p = Provenance::MultiIndex(super::MultiIndexBasisElement {
            index_set: super::takiff::mask_indices(mask),
            base,
        });
        index[&p]
    };

    // The split coordinate is the parity before the change; the base
    // coordinates keep chi even and every other coordinate is odd.
    let rank = src.lattice().rank();
    let base_rank = g.lattice().rank();
    let chi: Vec<Parity> = (0..rank).map(|c| if c < base_rank { Parity::Even } else { Parity::Odd }).collect();
    let lattice = WeightLattice::new(src.lattice().names.clone(), Some(chi));
    let basis: Vec<BasisElement> = src
        .basis()
        .iter()
        .zip(&parts)
        .map(|(b, &(_, base))| BasisElement { name: b.name.clone(), weight: b.weight.clone(), parity: g.parity(base) })
        .collect();

    let old_odd = |i: usize| src.parity(i).is_odd();
    let mut table = vec![Vec::new(); n * n];
    for i in 0..n {
        let (mi, x) = parts[i];
        for j in 0..n {
            let (mj, y) = parts[j];
            if mi & mj != 0 || (old_odd(i) && old_odd(j)) {
                continue;
            }
            let br = g.bracket_basis(x, y);
            if br.is_empty() {
                continue;
            }
            let union = mi | mj;
            let mut v: Vec<_> = br.iter().map(|(z, c)| (lookup(union, *z), c.clone())).collect();
            v.sort_by_key(|(t, _)| *t);
            table[i * n + j] = v;
        }
    }
    let algebra = GradedLieSuperalgebra::from_table(format!("pi'({})", src.name()), lattice, basis, table)?;
    let mut chain = h.chain.clone();
    chain.push(FunctorTag::Pi);
    Ok(FunctorOutput::assemble(algebra, h.provenance.clone(), h.base.clone(), k, FunctorTag::Pi, chain))
}
