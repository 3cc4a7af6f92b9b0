//! Re-expressing an algebra in a new degree-preserving basis.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::morphism::{GradedMorphism, GradingMap};
use crate::algebra::{Degree, GradedLieSuperalgebra};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::sparse::{self, Accumulator};

/// New basis vector `c` of degree `d` is `sum_r transforms[d][r][c] e_r`
/// over the old basis of that degree (identity where no matrix is given).
///
/// Returns the re-expressed algebra, with the same labels, and the
/// isomorphism from the old algebra to the new one.
pub fn change_basis(
    a: &Arc<GradedLieSuperalgebra>,
    transforms: &BTreeMap<Degree, Matrix>,
) -> Result<(Arc<GradedLieSuperalgebra>, GradedMorphism)> {
    let n = a.dim();
    let mut b = Matrix::identity(n);
    for (d, m) in transforms {
        let comp = a.component(d);
        if !m.is_square() || m.rows() != comp.len() {
            return Err(Error::Domain(format!("change of basis for degree {d} has the wrong size")));
        }
        for (bi, &r) in comp.iter().enumerate() {
            for (bj, &c) in comp.iter().enumerate() {
                b.set(r, c, m.get(bi, bj).clone());
            }
        }
    }
    let inv = b.inverse().ok_or_else(|| Error::Domain("change of basis is not invertible".into()))?;
    let col = |m: &Matrix, c: usize| sparse::normalize((0..n).map(|r| (r, m.get(r, c).clone())));
    let new_in_old: Vec<_> = (0..n).map(|c| col(&b, c)).collect();
    let old_in_new: Vec<_> = (0..n).map(|c| col(&inv, c)).collect();

    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let old = a.bracket_sparse(&new_in_old[i], &new_in_old[j]);
            let mut acc = Accumulator::new();
            for (r, c) in &old {
                acc.add_scaled(&old_in_new[*r], c);
            }
            table.push(acc.finish());
        }
    }
    let new = Arc::new(GradedLieSuperalgebra::from_table(
        a.name().to_string(),
        a.lattice().clone(),
        a.basis().to_vec(),
        table,
    )?);
    let iso = GradedMorphism::from_matrix(a.clone(), new.clone(), GradingMap::identity(a.lattice().rank()), &inv)?;
    Ok((new, iso))
}
