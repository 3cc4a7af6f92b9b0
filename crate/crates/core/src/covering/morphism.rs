//! Graded linear maps between algebras and homomorphism checks.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Degree, GradedLieSuperalgebra};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::sparse::{self, Accumulator, SparseVec};
use crate::weight::Weight;

/// Integer-linear map of weight lattices, stored as a
/// `target rank x source rank` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradingMap {
    pub source_rank: usize,
    pub target_rank: usize,
    /// Row-major, `target_rank * source_rank` entries.
    pub entries: Vec<i64>,
}

impl GradingMap {
    pub fn new(target_rank: usize, source_rank: usize, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != target_rank * source_rank {
            return Err(Error::Domain(format!(
                "grading map needs {} entries, got {}",
                target_rank * source_rank,
                entries.len()
            )));
        }
        Ok(GradingMap { source_rank, target_rank, entries })
    }

    pub fn identity(rank: usize) -> Self {
        let mut entries = vec![0; rank * rank];
        for i in 0..rank {
            entries[i * rank + i] = 1;
        }
        GradingMap { source_rank: rank, target_rank: rank, entries }
    }

    /// Drops the first `dropped` coordinates.
    pub fn drop_leading(source_rank: usize, dropped: usize) -> Self {
        let target_rank = source_rank - dropped;
        let mut entries = vec![0; target_rank * source_rank];
        for i in 0..target_rank {
            entries[i * source_rank + i + dropped] = 1;
        }
        GradingMap { source_rank, target_rank, entries }
    }

    /// Block-diagonal sum: `self` on the leading coordinates and the
    /// identity on `extra` trailing ones.
    pub fn extend_trailing(&self, extra: usize) -> Self {
        let (r, c) = (self.target_rank + extra, self.source_rank + extra);
        let mut entries = vec![0; r * c];
        for i in 0..self.target_rank {
            for j in 0..self.source_rank {
                entries[i * c + j] = self.entries[i * self.source_rank + j];
            }
        }
        for e in 0..extra {
            entries[(self.target_rank + e) * c + self.source_rank + e] = 1;
        }
        GradingMap { source_rank: c, target_rank: r, entries }
    }

    /// Block-diagonal sum: the identity on `extra` leading coordinates,
    /// then `self`.
    pub fn extend_leading(&self, extra: usize) -> Self {
        let (r, c) = (self.target_rank + extra, self.source_rank + extra);
        let mut entries = vec![0; r * c];
        for e in 0..extra {
            entries[e * c + e] = 1;
        }
        for i in 0..self.target_rank {
            for j in 0..self.source_rank {
                entries[(extra + i) * c + extra + j] = self.entries[i * self.source_rank + j];
            }
        }
        GradingMap { source_rank: c, target_rank: r, entries }
    }

    pub fn apply(&self, w: &Weight) -> Weight {
        assert_eq!(w.rank(), self.source_rank, "grading map applied to a weight of the wrong rank");
        Weight(
            (0..self.target_rank)
                .map(|i| (0..self.source_rank).map(|j| self.entries[i * self.source_rank + j] * w.0[j]).sum())
                .collect(),
        )
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &GradingMap) -> Result<GradingMap> {
        if self.source_rank != other.target_rank {
            return Err(Error::Domain("grading maps do not compose".into()));
        }
        let mut entries = vec![0; self.target_rank * other.source_rank];
        for i in 0..self.target_rank {
            for j in 0..other.source_rank {
                entries[i * other.source_rank + j] = (0..self.source_rank)
                    .map(|m| self.entries[i * self.source_rank + m] * other.entries[m * other.source_rank + j])
                    .sum();
            }
        }
        Ok(GradingMap { source_rank: other.source_rank, target_rank: self.target_rank, entries })
    }
}

/// A linear map between algebras that sends each degree `(w, p)` of the
/// source into degree `(phi(w), p)` of the target, stored as one block per
/// source degree.
#[derive(Clone, Debug)]
pub struct GradedMorphism {
    source: Arc<GradedLieSuperalgebra>,
    target: Arc<GradedLieSuperalgebra>,
    grading: GradingMap,
    /// Keyed by source degree; shape `dim target_{phi(d)} x dim source_d`.
    blocks: BTreeMap<Degree, Matrix>,
}

impl GradedMorphism {
    fn image_degree(grading: &GradingMap, d: &Degree) -> Degree {
        Degree { weight: grading.apply(&d.weight), parity: d.parity }
    }

    fn check_ranks(source: &GradedLieSuperalgebra, target: &GradedLieSuperalgebra, grading: &GradingMap) -> Result<()> {
        if grading.source_rank != source.lattice().rank() || grading.target_rank != target.lattice().rank() {
            return Err(Error::Domain(format!(
                "grading map is {}x{} but the lattices have ranks {} and {}",
                grading.target_rank,
                grading.source_rank,
                target.lattice().rank(),
                source.lattice().rank()
            )));
        }
        Ok(())
    }

    /// From a full `target.dim() x source.dim()` matrix. Entries that do not
    /// respect the grading are a domain error.
    pub fn from_matrix(
        source: Arc<GradedLieSuperalgebra>,
        target: Arc<GradedLieSuperalgebra>,
        grading: GradingMap,
        full: &Matrix,
    ) -> Result<Self> {
        Self::check_ranks(&source, &target, &grading)?;
        if full.rows() != target.dim() || full.cols() != source.dim() {
            return Err(Error::Domain("morphism matrix has the wrong shape".into()));
        }
        for c in 0..source.dim() {
            let want = Self::image_degree(&grading, &source.degree(c));
            for r in 0..target.dim() {
                if !full.get(r, c).is_zero() && target.degree(r) != want {
                    return Err(Error::Domain(format!(
                        "map is not graded: {} of degree {} has a component on {} of degree {}",
                        source.basis_element(c).name,
                        source.degree(c),
                        target.basis_element(r).name,
                        target.degree(r)
                    )));
                }
            }
        }
        let mut blocks = BTreeMap::new();
        for d in source.degrees() {
            let cols = source.component(&d);
            let rows = target.component(&Self::image_degree(&grading, &d));
            let mut b = Matrix::zeros(rows.len(), cols.len());
            for (bi, &r) in rows.iter().enumerate() {
                for (bj, &c) in cols.iter().enumerate() {
                    b.set(bi, bj, full.get(r, c).clone());
                }
            }
            blocks.insert(d, b);
        }
        Ok(GradedMorphism { source, target, grading, blocks })
    }

    /// From explicit blocks; missing degrees are zero.
    pub fn from_blocks(
        source: Arc<GradedLieSuperalgebra>,
        target: Arc<GradedLieSuperalgebra>,
        grading: GradingMap,
        mut blocks: BTreeMap<Degree, Matrix>,
    ) -> Result<Self> {
        Self::check_ranks(&source, &target, &grading)?;
        let degrees = source.degrees();
        for d in blocks.keys() {
            if !degrees.contains(d) {
                return Err(Error::Domain(format!("block for degree {d}, which the source does not carry")));
            }
        }
        for d in &degrees {
            let rows = target.component(&Self::image_degree(&grading, d)).len();
            let cols = source.component(d).len();
            let b = blocks.entry(d.clone()).or_insert_with(|| Matrix::zeros(rows, cols));
            if b.rows() != rows || b.cols() != cols {
                return Err(Error::Domain(format!(
                    "block for degree {d} is {}x{}, expected {rows}x{cols}",
                    b.rows(),
                    b.cols()
                )));
            }
        }
        Ok(GradedMorphism { source, target, grading, blocks })
    }

    /// Sends basis element `i` to `images[i]`, given in target coordinates.
    pub fn from_images(
        source: Arc<GradedLieSuperalgebra>,
        target: Arc<GradedLieSuperalgebra>,
        grading: GradingMap,
        images: &[SparseVec],
    ) -> Result<Self> {
        let mut full = Matrix::zeros(target.dim(), source.dim());
        for (c, img) in images.iter().enumerate() {
            for (r, v) in img {
                full.set(*r, c, v.clone());
            }
        }
        Self::from_matrix(source, target, grading, &full)
    }

    pub fn identity(a: Arc<GradedLieSuperalgebra>) -> Self {
        let n = a.dim();
        let rank = a.lattice().rank();
        Self::from_matrix(a.clone(), a, GradingMap::identity(rank), &Matrix::identity(n)).expect("identity is graded")
    }

    pub fn zero(
        source: Arc<GradedLieSuperalgebra>,
        target: Arc<GradedLieSuperalgebra>,
        grading: GradingMap,
    ) -> Result<Self> {
        Self::from_blocks(source, target, grading, BTreeMap::new())
    }

    pub fn source(&self) -> &Arc<GradedLieSuperalgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedLieSuperalgebra> {
        &self.target
    }

    pub fn grading(&self) -> &GradingMap {
        &self.grading
    }

    pub fn blocks(&self) -> &BTreeMap<Degree, Matrix> {
        &self.blocks
    }

    pub fn block(&self, d: &Degree) -> Option<&Matrix> {
        self.blocks.get(d)
    }

    pub fn target_degree(&self, d: &Degree) -> Degree {
        Self::image_degree(&self.grading, d)
    }

    /// Full `target.dim() x source.dim()` matrix.
    pub fn to_matrix(&self) -> Matrix {
        let mut full = Matrix::zeros(self.target.dim(), self.source.dim());
        for (d, b) in &self.blocks {
            let cols = self.source.component(d);
            let rows = self.target.component(&self.target_degree(d));
            for (bi, &r) in rows.iter().enumerate() {
                for (bj, &c) in cols.iter().enumerate() {
                    full.set(r, c, b.get(bi, bj).clone());
                }
            }
        }
        full
    }

    /// Image of every source basis element, in target coordinates.
    pub fn images(&self) -> Vec<SparseVec> {
        let full = self.to_matrix();
        (0..self.source.dim())
            .map(|c| sparse::normalize((0..self.target.dim()).map(|r| (r, full.get(r, c).clone()))))
            .collect()
    }

    pub fn apply_sparse(&self, images: &[SparseVec], x: &[(usize, Scalar)]) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, c) in x {
            acc.add_scaled(&images[*i], c);
        }
        acc.finish()
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &GradedMorphism) -> Result<GradedMorphism> {
        if !other.target.same_structure(&self.source) {
            return Err(Error::Domain("morphisms do not compose: target and source differ".into()));
        }
        let grading = self.grading.compose(&other.grading)?;
        let full = self.to_matrix().mul(&other.to_matrix());
        GradedMorphism::from_matrix(other.source.clone(), self.target.clone(), grading, &full)
    }

    /// Same source, target, grading and blocks.
    pub fn same_map(&self, other: &GradedMorphism) -> bool {
        self.source.same_structure(&other.source)
            && self.target.same_structure(&other.target)
            && self.grading == other.grading
            && self.to_matrix() == other.to_matrix()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(Matrix::is_zero)
    }
}

/// A basis pair on which `f([x, y]) = [f x, f y]` fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomomorphismFailure {
    pub pair: (usize, usize),
    pub names: (String, String),
    pub weights: (Weight, Weight),
    /// `f([x, y])` and `[f x, f y]` in target coordinates.
    pub image_of_bracket: SparseVec,
    pub bracket_of_images: SparseVec,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HomomorphismVerdict {
    pub pairs_checked: usize,
    pub failures: Vec<HomomorphismFailure>,
}

impl HomomorphismVerdict {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn check_pairs(f: &GradedMorphism, keep: impl Fn(&Weight, &Weight) -> bool) -> HomomorphismVerdict {
    let s = &f.source;
    let t = &f.target;
    let images = f.images();
    let mut verdict = HomomorphismVerdict::default();
    for i in 0..s.dim() {
        for j in 0..s.dim() {
            if !keep(s.weight(i), s.weight(j)) {
                continue;
            }
            verdict.pairs_checked += 1;
            let lhs = f.apply_sparse(&images, s.bracket_basis(i, j));
            let rhs = t.bracket_sparse(&images[i], &images[j]);
            if lhs != rhs {
                verdict.failures.push(HomomorphismFailure {
                    pair: (i, j),
                    names: (s.basis_element(i).name.clone(), s.basis_element(j).name.clone()),
                    weights: (s.weight(i).clone(), s.weight(j).clone()),
                    image_of_bracket: lhs,
                    bracket_of_images: rhs,
                });
            }
        }
    }
    verdict
}

/// `f([e_i, e_j]) = [f e_i, f e_j]` on every basis pair.
pub fn check_homomorphism(f: &GradedMorphism) -> HomomorphismVerdict {
    check_pairs(f, |_, _| true)
}

/// The homomorphism law on pairs whose weights and weight sum lie in `c`.
pub fn check_partial_homomorphism(f: &GradedMorphism, c: &BTreeSet<Weight>) -> HomomorphismVerdict {
    check_pairs(f, |a, b| c.contains(a) && c.contains(b) && c.contains(&a.plus(b)))
}
