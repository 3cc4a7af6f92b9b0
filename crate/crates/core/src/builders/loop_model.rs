//! Truncated non-negative loop algebra `sum_i g_{i mod 2} (x) t^i`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{BasisElement, GradedLieSuperalgebra};
use crate::covering::{check_homomorphism, GradedMorphism, GradingMap};
use crate::error::{Error, Result};
use crate::functors::{FunctorOutput, Provenance};
use crate::scalar::Scalar;
use crate::weight::{Parity, WeightLattice};

#[derive(Clone, Debug)]
pub struct LoopModel {
    pub base: Arc<GradedLieSuperalgebra>,
    pub top_degree: usize,
    pub algebra: Arc<GradedLieSuperalgebra>,
    /// `(i, b)` for basis element `X_b (x) t^i`.
    pub basis: Vec<(usize, usize)>,
}

impl LoopModel {
    /// Basis `X (x) t^i` for `0 <= i <= top_degree` and `X` of parity
    /// `i mod 2`, with `[X t^i, Y t^j] = [X, Y] t^{i+j}` and zero above the
    /// top degree. Weights are `(i, weight of X)`.
    pub fn new(g: &GradedLieSuperalgebra, top_degree: usize) -> Result<LoopModel> {
        let mut basis = Vec::new();
        for i in 0..=top_degree {
            for b in 0..g.dim() {
                if g.parity(b) == Parity::from_int(i as i64) {
                    basis.push((i, b));
                }
            }
        }
        // Same order as the diagonal tower: weight, then base name.
        basis.sort_by(|&(i, b), &(j, c)| {
            (g.weight(b).prepend(i as i64), &g.basis_element(b).name)
                .cmp(&(g.weight(c).prepend(j as i64), &g.basis_element(c).name))
        });
        let index: HashMap<(usize, usize), usize> = basis.iter().enumerate().map(|(p, &e)| (e, p)).collect();
        let n = basis.len();
        let mut table = Vec::with_capacity(n * n);
        for &(i, x) in &basis {
            for &(j, y) in &basis {
                if i + j > top_degree {
                    table.push(Vec::new());
                    continue;
                }
                let mut v: Vec<(usize, Scalar)> =
                    g.bracket_basis(x, y).iter().map(|(z, c)| (index[&(i + j, *z)], c.clone())).collect();
                v.sort_by_key(|(p, _)| *p);
                table.push(v);
            }
        }
        let mut names = vec!["deg".to_string()];
        names.extend(g.lattice().names.iter().cloned());
        let mut chi = vec![Parity::Odd];
        chi.extend(std::iter::repeat_n(Parity::Even, g.lattice().rank()));
        let elements = basis
            .iter()
            .map(|&(i, b)| {
                let e = g.basis_element(b);
                BasisElement { name: format!("{}t{i}", e.name), weight: e.weight.prepend(i as i64), parity: e.parity }
            })
            .collect();
        let algebra = GradedLieSuperalgebra::from_table(
            format!("loop({}, {top_degree})", g.name()),
            WeightLattice::new(names, Some(chi)),
            elements,
            table,
        )?;
        Ok(LoopModel { base: Arc::new(g.clone()), top_degree, algebra: Arc::new(algebra), basis })
    }

    pub fn index_of(&self, degree: usize, base: usize) -> Option<usize> {
        self.basis.iter().position(|&e| e == (degree, base))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LoopVerdict {
    pub passed: bool,
    pub rescaled: bool,
    pub pairs_checked: usize,
    /// First failing pair in order of (degree, degree), by name.
    pub first_failure: Option<(String, String)>,
    pub first_failure_degrees: Option<(usize, usize)>,
    #[serde(skip)]
    pub map: Option<GradedMorphism>,
}

/// Checks that `X'_i -> X (x) t^i / i!` (or `X (x) t^i` with
/// `rescale = false`) is a bracket isomorphism from the diagonal tower
/// output onto the loop model.
pub fn verify_loop_isomorphism(p: &FunctorOutput, lm: &LoopModel, rescale: bool) -> Result<LoopVerdict> {
    if !p.has_diagonal_provenance() {
        return Err(Error::Domain("loop comparison needs a diagonal tower output".into()));
    }
    if !p.base.same_structure(&lm.base) {
        return Err(Error::Domain("tower output and loop model have different bases".into()));
    }
    if p.k + 1 != lm.top_degree || p.algebra.dim() != lm.algebra.dim() {
        return Err(Error::Domain(format!(
            "tower output of top degree {} (dim {}) does not match loop model of top degree {} (dim {})",
            p.k + 1,
            p.algebra.dim(),
            lm.top_degree,
            lm.algebra.dim()
        )));
    }
    let mut images = Vec::with_capacity(p.provenance.len());
    let mut degree_of = Vec::with_capacity(p.provenance.len());
    for prov in &p.provenance {
        let Provenance::Diagonal { degree, base } = prov else { unreachable!() };
        let t = lm
            .index_of(*degree, *base)
            .ok_or_else(|| Error::Domain("loop model lacks a matching basis element".into()))?;
        let c = if rescale { Scalar::inverse_factorial(*degree as u32) } else { Scalar::one() };
        images.push(vec![(t, c)]);
        degree_of.push(*degree);
    }
    let rank = p.algebra.lattice().rank();
    let map = GradedMorphism::from_images(p.algebra.clone(), lm.algebra.clone(), GradingMap::identity(rank), &images)?;
    let verdict = check_homomorphism(&map);
    let bijective = map.blocks().values().all(|b| b.inverse().is_some());
    let first = verdict.failures.iter().min_by_key(|f| (degree_of[f.pair.0], degree_of[f.pair.1], f.pair));
    Ok(LoopVerdict {
        passed: verdict.passed() && bijective,
        rescaled: rescale,
        pairs_checked: verdict.pairs_checked,
        first_failure: first.map(|f| f.names.clone()),
        first_failure_degrees: first.map(|f| (degree_of[f.pair.0], degree_of[f.pair.1])),
        map: Some(map),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{build_abelian, build_gl};
    use crate::functors::f_prime_n;

    #[test]
    fn rescaled_map_is_an_isomorphism() {
        let g = build_gl(1, 1).unwrap();
        let f = f_prime_n(&g, 4).unwrap();
        let lm = LoopModel::new(&g, 4).unwrap();
        assert!(verify_loop_isomorphism(&f, &lm, true).unwrap().passed);
        let raw = verify_loop_isomorphism(&f, &lm, false).unwrap();
        assert!(!raw.passed);
        assert_eq!(raw.first_failure_degrees, Some((1, 1)));
    }

    #[test]
    fn abelian_base_passes_either_way() {
        let g = build_abelian(1, 1);
        let f = f_prime_n(&g, 3).unwrap();
        let lm = LoopModel::new(&g, 3).unwrap();
        assert!(verify_loop_isomorphism(&f, &lm, false).unwrap().passed);
        assert!(verify_loop_isomorphism(&f, &LoopModel::new(&g, 2).unwrap(), true).is_err());
    }
}
