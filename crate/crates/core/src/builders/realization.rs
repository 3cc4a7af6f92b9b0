//! Block lower-triangular matrix realization of the diagonal tower over
//! gl(m|n).
//!
//! A staircase has `d + 1` diagonal blocks alternating between the even
//! (size `m`) and odd (size `n`) type. A generator `E_ab` of degree `i` is
//! realized by copies of `E_ab` on the `i`-th block subdiagonal, in every
//! column block whose type matches `b`. Starting from an even block this is
//! the staircase `A1 / C1 D1 / A2 B1 A1 / C2 D2 C1 D1 / ...`.
//!
//! One staircase alone loses the top-degree generators whose column index
//! is of the other type than its first block (there is no block `d + 1`
//! rows below it), so the realization is the block-diagonal sum of the
//! staircase starting from an even block and the one starting from an odd
//! block. Each summand is closed under the supercommutator on its own.

use std::sync::Arc;

use serde::Serialize;

use super::build_gl;
use super::loop_model::{verify_loop_isomorphism, LoopModel};
use super::supermatrix::{algebra_from_matrices, SuperMatrix};
use crate::algebra::{BasisElement, GradedLieSuperalgebra};
use crate::covering::{check_homomorphism, GradedMorphism, GradingMap, HomomorphismVerdict};
use crate::error::{Error, Result};
use crate::functors::{f_prime_n, FunctorOutput, Provenance};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::weight::Parity;

#[derive(Clone, Debug, Serialize)]
pub struct RealizedGenerator {
    pub name: String,
    pub degree: usize,
    #[serde(skip)]
    pub matrix: SuperMatrix,
}

#[derive(Clone, Debug)]
pub struct MatrixRealization {
    pub tower: FunctorOutput,
    /// Blocks of the even-first staircase followed by the odd-first one.
    pub block_sizes: Vec<(usize, Parity)>,
    /// Number of generators that vanish on the even-first staircase alone.
    pub even_first_kernel: usize,
    /// One shift matrix per tower basis element, in tower order.
    pub generators: Vec<RealizedGenerator>,
    /// The algebra spanned by the shift matrices under the supercommutator.
    pub image: Arc<GradedLieSuperalgebra>,
    /// `X'_i -> S(X, i) / i!`.
    pub morphism: GradedMorphism,
    pub homomorphism: HomomorphismVerdict,
    pub injective: bool,
    /// The loop model maps onto the image by `X t^i -> S(X, i)`, and that
    /// map after the loop isomorphism equals `morphism`.
    pub triangle_closes: bool,
}

impl MatrixRealization {
    pub fn passed(&self) -> bool {
        self.homomorphism.passed() && self.injective && self.triangle_closes
    }
}

/// Kind of a basis index of gl(m|n): 0 for the first `m`, 1 otherwise.
fn kind(m: usize, x: usize) -> usize {
    usize::from(x >= m)
}

/// `(start offset, kind, staircase)` of one block.
type Block = (usize, usize, usize);

/// Block sizes and placement for both staircases.
fn layout(m: usize, n: usize, d: usize) -> (Vec<(usize, Parity)>, Vec<Block>) {
    let mut sizes = Vec::new();
    let mut blocks = Vec::new();
    let mut offset = 0;
    for (staircase, start) in [0usize, 1].into_iter().enumerate() {
        for c in 0..=d {
            let k = (start + c) % 2;
            let (size, parity) = if k == 0 { (m, Parity::Even) } else { (n, Parity::Odd) };
            sizes.push((size, parity));
            blocks.push((offset, k, staircase));
            offset += size;
        }
    }
    (sizes, blocks)
}

fn shift_matrix(
    m: usize,
    d: usize,
    sizes: &[(usize, Parity)],
    blocks: &[Block],
    a: usize,
    b: usize,
    shift: usize,
) -> SuperMatrix {
    let local = |x: usize| if x < m { x } else { x - m };
    let mut s = SuperMatrix::zeros(sizes.to_vec());
    for staircase in 0..2 {
        let first = staircase * (d + 1);
        for c in 0..=d {
            let (col_off, k, _) = blocks[first + c];
            if k != kind(m, b) || c + shift > d {
                continue;
            }
            let (row_off, _, _) = blocks[first + c + shift];
            s.entries.set(row_off + local(a), col_off + local(b), Scalar::one());
        }
    }
    s
}

/// Realizes `F'_d(gl(m|n))` by shift matrices and checks the rescaled
/// assignment is an injective homomorphism that agrees with the loop model.
pub fn matrix_realization(m: usize, n: usize, d: usize) -> Result<MatrixRealization> {
    if d < 2 {
        return Err(Error::Domain(format!("matrix realization needs d >= 2, got {d}")));
    }
    let g = build_gl(m, n)?;
    let tower = f_prime_n(&g, d)?;
    let size = m + n;
    let (sizes, blocks) = layout(m, n, d);
    let half: usize = sizes[..=d].iter().map(|(s, _)| s).sum();
    let total: usize = sizes.iter().map(|(s, _)| s).sum();
    let degrees: Vec<i64> = (0..2).flat_map(|_| 0..=d as i64).collect();

    let mut generators = Vec::with_capacity(tower.provenance.len());
    let mut labels = Vec::with_capacity(tower.provenance.len());
    for (idx, prov) in tower.provenance.iter().enumerate() {
        let Provenance::Diagonal { degree, base } = prov else { unreachable!() };
        let (a, b) = (base / size, base % size);
        let mat = shift_matrix(m, d, &sizes, &blocks, a, b, *degree).with_degrees(degrees.clone())?;
        let parity = mat.parity()?;
        if parity != tower.algebra.parity(idx) {
            return Err(Error::Consistency(format!(
                "shift matrix for {} has parity {parity}",
                tower.algebra.basis_element(idx).name
            )));
        }
        let name = format!("S{degree}_{}", g.basis_element(*base).name);
        labels.push(BasisElement { name: name.clone(), weight: tower.algebra.weight(idx).clone(), parity });
        generators.push(RealizedGenerator { name, degree: *degree, matrix: mat });
    }

    let mats: Vec<SuperMatrix> = generators.iter().map(|r| r.matrix.clone()).collect();
    let image = Arc::new(algebra_from_matrices(
        &format!("staircase(gl({m}|{n}), {d})"),
        tower.algebra.lattice().clone(),
        labels,
        &mats,
    )?);

    let even_first_kernel =
        mats.iter().filter(|s| (0..half).all(|r| (0..half).all(|c| s.entries.get(r, c).is_zero()))).count();
    let mut stacked = Matrix::zeros(total * total, mats.len());
    for (c, s) in mats.iter().enumerate() {
        for (r, v) in s.entries.entries().iter().enumerate() {
            stacked.set(r, c, v.clone());
        }
    }
    let injective = stacked.rank() == tower.algebra.dim();

    let rank = tower.algebra.lattice().rank();
    let images: Vec<_> =
        generators.iter().enumerate().map(|(i, r)| vec![(i, Scalar::inverse_factorial(r.degree as u32))]).collect();
    let morphism =
        GradedMorphism::from_images(tower.algebra.clone(), image.clone(), GradingMap::identity(rank), &images)?;
    let homomorphism = check_homomorphism(&morphism);

    let lm = LoopModel::new(&g, d)?;
    let iso = verify_loop_isomorphism(&tower, &lm, true)?;
    let loop_images: Vec<_> = lm
        .basis
        .iter()
        .map(|&(i, b)| {
            let t = tower.index_of_diagonal(i, b).expect("loop and tower bases match");
            vec![(t, Scalar::one())]
        })
        .collect();
    let loop_map =
        GradedMorphism::from_images(lm.algebra.clone(), image.clone(), GradingMap::identity(rank), &loop_images)?;
    let triangle_closes = iso.passed
        && check_homomorphism(&loop_map).passed()
        && iso.map.as_ref().is_some_and(|m| loop_map.compose(m).is_ok_and(|c| c.to_matrix() == morphism.to_matrix()));

    Ok(MatrixRealization {
        tower,
        block_sizes: sizes,
        even_first_kernel,
        generators,
        image,
        morphism,
        homomorphism,
        injective,
        triangle_closes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl11_degree_two_uses_two_three_block_staircases() {
        let r = matrix_realization(1, 1, 2).unwrap();
        assert!(r.passed());
        assert!(r.generators.iter().all(|g| g.matrix.size() == 6));
        // The even-first staircase alone misses E22 in degree 2.
        assert_eq!(r.even_first_kernel, 1);
    }

    #[test]
    fn degree_zero_is_block_diagonal() {
        let r = matrix_realization(1, 1, 3).unwrap();
        let blocks = r.generators[0].matrix.index_blocks();
        for g in r.generators.iter().filter(|g| g.degree == 0) {
            let e = &g.matrix.entries;
            for i in 0..e.rows() {
                for j in 0..e.cols() {
                    if !e.get(i, j).is_zero() {
                        assert_eq!(blocks[i], blocks[j]);
                    }
                }
            }
        }
    }

    #[test]
    fn degree_one_brackets_land_in_degree_two() {
        let r = matrix_realization(1, 1, 3).unwrap();
        let ones: Vec<&RealizedGenerator> = r.generators.iter().filter(|g| g.degree == 1).collect();
        let br = ones[0].matrix.supercommutator(&ones[1].matrix).unwrap();
        let blocks = br.index_blocks();
        for i in 0..br.size() {
            for j in 0..br.size() {
                if !br.entries.get(i, j).is_zero() {
                    assert_eq!(blocks[i], blocks[j] + 2);
                }
            }
        }
        assert!(!br.entries.is_zero());
    }
}
