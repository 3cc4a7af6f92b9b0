//! The diagonal subalgebra of a parity-changed split Takiff algebra.

use std::collections::HashMap;

use super::{FunctorOutput, FunctorTag, Provenance};
use crate::algebra::{BasisElement, GradedLieSuperalgebra};
use crate::axioms::verify_axioms;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::sparse::Accumulator;
use crate::weight::{Parity, WeightLattice};

/// Degree of the diagonal generator whose support contains `d_I Z`.
pub(crate) fn owner_degree(cardinality: usize, parity: Parity) -> usize {
    if Parity::from_int(cardinality as i64) == parity {
        cardinality
    } else {
        cardinality + 1
    }
}

/// Spans the diagonal generators
/// `X'_m = sum_{|I| = m-1} d_I X + sum_{|J| = m} d_J X` for `0 <= m <= k+1`
/// and base elements `X` of parity `m mod 2`.
///
/// Brackets are computed in the ambient algebra and re-expressed in the
/// diagonal basis; a bracket that is not a combination of diagonal
/// generators is a consistency error. The output is graded by a new `deg`
/// coordinate followed by the base weight, and is checked against the
/// superalgebra axioms.
pub fn iota_prime(h: &FunctorOutput, k: usize) -> Result<FunctorOutput> {
    let out = iota_prime_unchecked(h, k)?;
    let report = verify_axioms(&out.algebra);
    if !report.passed() {
        return Err(Error::Consistency(format!(
            "diagonal subalgebra violates the axioms:\n{}",
            report.describe(&out.algebra, 5)
        )));
    }
    Ok(out)
}

pub(crate) fn iota_prime_unchecked(h: &FunctorOutput, k: usize) -> Result<FunctorOutput> {
    h.require_chain(&[FunctorTag::Takiff, FunctorTag::Gr, FunctorTag::Pi], k, "iota'")?;
    let g = &h.base;
    let amb = &h.algebra;

    // Diagonal generators and the ambient support of each.
    let mut gens: Vec<(usize, usize)> = Vec::new();
    for m in 0..=k + 1 {
        for x in 0..g.dim() {
            if g.parity(x) == Parity::from_int(m as i64) {
                gens.push((m, x));
            }
        }
    }
    let gen_index: HashMap<(usize, usize), usize> = gens.iter().enumerate().map(|(i, &d)| (d, i)).collect();
    let mut support: Vec<Vec<usize>> = vec![Vec::new(); gens.len()];
    let mut owner: Vec<usize> = vec![usize::MAX; amb.dim()];
    for (i, p) in h.provenance.iter().enumerate() {
        let Provenance::MultiIndex(mi) = p else {
            return Err(Error::Domain("iota' input carries diagonal provenance".into()));
        };
        let m = owner_degree(mi.cardinality(), g.parity(mi.base));
        let gi = gen_index[&(m, mi.base)];
        support[gi].push(i);
        owner[i] = gi;
    }
    for (gi, s) in support.iter().enumerate() {
        if s.is_empty() {
            let (m, x) = gens[gi];
            return Err(Error::Consistency(format!(
                "diagonal generator of degree {m} over {} has empty support",
                g.basis_element(x).name
            )));
        }
    }

    let n = gens.len();
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let mut acc = Accumulator::new();
            for &i in &support[a] {
                for &j in &support[b] {
                    acc.add_scaled(amb.bracket_basis(i, j), &Scalar::one());
                }
            }
            table.push(reexpress(acc, &owner, &support, &gens, g, amb)?);
        }
    }

    let mut names = vec!["deg".to_string()];
    names.extend(g.lattice().names.iter().cloned());
    let mut chi = vec![Parity::Odd];
    chi.extend(std::iter::repeat_n(Parity::Even, g.lattice().rank()));
    let lattice = WeightLattice::new(names, Some(chi));
    let basis = gens
        .iter()
        .map(|&(m, x)| {
            let b = g.basis_element(x);
            BasisElement { name: format!("{}'{m}", b.name), weight: b.weight.prepend(m as i64), parity: b.parity }
        })
        .collect();
    let provenance = gens.iter().map(|&(degree, base)| Provenance::Diagonal { degree, base }).collect();
    let algebra = GradedLieSuperalgebra::from_table(format!("iota'({})", amb.name()), lattice, basis, table)?;
    let mut chain = h.chain.clone();
    chain.push(FunctorTag::Iota);
    Ok(FunctorOutput::assemble(algebra, provenance, h.base.clone(), k, FunctorTag::Iota, chain))
}

/// Writes an ambient vector as a combination of diagonal generators,
/// requiring a constant coefficient across each generator's support.
fn reexpress(
    acc: Accumulator,
    owner: &[usize],
    support: &[Vec<usize>],
    gens: &[(usize, usize)],
    g: &GradedLieSuperalgebra,
    amb: &GradedLieSuperalgebra,
) -> Result<Vec<(usize, Scalar)>> {
    let v = acc.finish();
    let mut coeffs: HashMap<usize, Scalar> = HashMap::new();
    for (i, c) in &v {
        coeffs.entry(owner[*i]).or_insert_with(|| c.clone());
    }
    let mut out: Vec<(usize, Scalar)> = Vec::new();
    for (gi, c) in coeffs {
        for &i in &support[gi] {
            let got = crate::sparse::coefficient(&v, i);
            if got != c {
                let (m, x) = gens[gi];
                return Err(Error::Consistency(format!(
                    "bracket is not diagonal: coefficient of {} is {got}, expected {c} as for the rest of the degree-{m} generator over {}",
                    amb.basis_element(i).name,
                    g.basis_element(x).name
                )));
            }
        }
        out.push((gi, c));
    }
    out.sort_by_key(|(i, _)| *i);
    Ok(out)
}
