//! Square matrices with a block-parity pattern and the supercommutator.

use crate::algebra::{BasisElement, GradedLieSuperalgebra};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Span};
use crate::sparse;
use crate::weight::{Parity, WeightLattice};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperMatrix {
    pub entries: Matrix,
    /// Diagonal blocks in order, each with its size and parity.
    pub block_sizes: Vec<(usize, Parity)>,
    /// Optional integer degree attached to each diagonal block.
    pub degree_pattern: Option<Vec<i64>>,
}

impl SuperMatrix {
    pub fn new(entries: Matrix, block_sizes: Vec<(usize, Parity)>) -> Result<Self> {
        let total: usize = block_sizes.iter().map(|(s, _)| s).sum();
        if !entries.is_square() || entries.rows() != total {
            return Err(Error::Domain(format!(
                "a {}x{} matrix does not fit blocks of total size {total}",
                entries.rows(),
                entries.cols()
            )));
        }
        Ok(SuperMatrix { entries, block_sizes, degree_pattern: None })
    }

    pub fn zeros(block_sizes: Vec<(usize, Parity)>) -> Self {
        let total = block_sizes.iter().map(|(s, _)| s).sum();
        SuperMatrix { entries: Matrix::zeros(total, total), block_sizes, degree_pattern: None }
    }

    pub fn with_degrees(mut self, degrees: Vec<i64>) -> Result<Self> {
        if degrees.len() != self.block_sizes.len() {
            return Err(Error::Domain("degree pattern must cover every block".into()));
        }
        self.degree_pattern = Some(degrees);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.entries.rows()
    }

    /// Parity of each row/column index.
    pub fn index_parities(&self) -> Vec<Parity> {
        self.block_sizes.iter().flat_map(|&(s, p)| std::iter::repeat_n(p, s)).collect()
    }

    /// Block number of each row/column index.
    pub fn index_blocks(&self) -> Vec<usize> {
        self.block_sizes.iter().enumerate().flat_map(|(b, &(s, _))| std::iter::repeat_n(b, s)).collect()
    }

    /// Parity of a homogeneous matrix. The zero matrix counts as even;
    /// a matrix with entries of both parities is rejected.
    pub fn parity(&self) -> Result<Parity> {
        let ps = self.index_parities();
        let mut seen: Option<Parity> = None;
        for r in 0..self.size() {
            for c in 0..self.size() {
                if self.entries.get(r, c).is_zero() {
                    continue;
                }
                let p = ps[r] + ps[c];
                match seen {
                    None => seen = Some(p),
                    Some(q) if q != p => return Err(Error::Domain("matrix mixes even and odd blocks".into())),
                    _ => {}
                }
            }
        }
        Ok(seen.unwrap_or(Parity::Even))
    }

    /// `XY - (-1)^{|X||Y|} YX`.
    pub fn supercommutator(&self, other: &SuperMatrix) -> Result<SuperMatrix> {
        if self.block_sizes != other.block_sizes {
            return Err(Error::Domain("block patterns differ".into()));
        }
        let odd = self.parity()?.koszul(other.parity()?);
        let xy = self.entries.mul(&other.entries);
        let yx = other.entries.mul(&self.entries);
        let entries = if odd { xy.add(&yx) } else { xy.sub(&yx) };
        Ok(SuperMatrix { entries, block_sizes: self.block_sizes.clone(), degree_pattern: self.degree_pattern.clone() })
    }
}

/// Builds the algebra spanned by `mats` under the supercommutator.
///
/// `basis[i]` labels `mats[i]`. Each supercommutator is re-expressed in the
/// span; failure to close is a consistency error.
pub fn algebra_from_matrices(
    name: &str,
    lattice: WeightLattice,
    basis: Vec<BasisElement>,
    mats: &[SuperMatrix],
) -> Result<GradedLieSuperalgebra> {
    assert_eq!(basis.len(), mats.len(), "one label per matrix");
    let n = mats.len();
    for (b, m) in basis.iter().zip(mats) {
        if m.parity()? != b.parity && !m.entries.is_zero() {
            return Err(Error::Consistency(format!("matrix for `{}` is not {}", b.name, b.parity)));
        }
    }
    let size = mats.first().map_or(0, |m| m.size());
    let mut columns = Matrix::zeros(size * size, n);
    for (c, m) in mats.iter().enumerate() {
        for (r, v) in m.entries.entries().iter().enumerate() {
            columns.set(r, c, v.clone());
        }
    }
    let span = Span::new(columns)
        .ok_or_else(|| Error::Consistency(format!("matrices spanning `{name}` are linearly dependent")))?;
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let br = mats[i].supercommutator(&mats[j])?;
            let x = span.coordinates(br.entries.entries()).ok_or_else(|| {
                Error::Consistency(format!("[{}, {}] leaves the span of `{name}`", basis[i].name, basis[j].name))
            })?;
            table.push(sparse::normalize(x.into_iter().enumerate()));
        }
    }
    GradedLieSuperalgebra::from_table(name, lattice, basis, table)
}
