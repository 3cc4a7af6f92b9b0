//! Sparse coefficient vectors: sorted `(index, coefficient)` pairs with no
//! stored zeros.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

pub type SparseVec = Vec<(usize, Scalar)>;

/// Accumulates `index -> coefficient` contributions and drops cancellations.
#[derive(Default, Debug, Clone)]
pub struct Accumulator {
    terms: BTreeMap<usize, Scalar>,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, index: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&index) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&index);
                }
            }
            None => {
                self.terms.insert(index, c.clone());
            }
        }
    }

    /// Adds `factor * v`.
    pub fn add_scaled(&mut self, v: &[(usize, Scalar)], factor: &Scalar) {
        if factor.is_zero() {
            return;
        }
        if factor.is_one() {
            for (i, c) in v {
                self.add(*i, c);
            }
        } else {
            for (i, c) in v {
                self.add(*i, &(c * factor));
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn finish(self) -> SparseVec {
        self.terms.into_iter().collect()
    }
}

/// Normalizes arbitrary `(index, coeff)` pairs: sorts, merges duplicates,
/// removes zeros.
pub fn normalize(terms: impl IntoIterator<Item = (usize, Scalar)>) -> SparseVec {
    let mut acc = Accumulator::new();
    for (i, c) in terms {
        acc.add(i, &c);
    }
    acc.finish()
}

pub fn scale(v: &[(usize, Scalar)], factor: &Scalar) -> SparseVec {
    if factor.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, c)| (*i, c * factor)).collect()
}

pub fn negate(v: &[(usize, Scalar)]) -> SparseVec {
    v.iter().map(|(i, c)| (*i, -c)).collect()
}

pub fn add(a: &[(usize, Scalar)], b: &[(usize, Scalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut p, mut q) = (0, 0);
    while p < a.len() || q < b.len() {
        if q == b.len() || (p < a.len() && a[p].0 < b[q].0) {
            out.push(a[p].clone());
            p += 1;
        } else if p == a.len() || b[q].0 < a[p].0 {
            out.push(b[q].clone());
            q += 1;
        } else {
            let s = &a[p].1 + &b[q].1;
            if !s.is_zero() {
                out.push((a[p].0, s));
            }
            p += 1;
            q += 1;
        }
    }
    out
}

pub fn sub(a: &[(usize, Scalar)], b: &[(usize, Scalar)]) -> SparseVec {
    add(a, &negate(b))
}

pub fn coefficient(v: &[(usize, Scalar)], index: usize) -> Scalar {
    match v.binary_search_by_key(&index, |(i, _)| *i) {
        Ok(p) => v[p].1.clone(),
        Err(_) => Scalar::zero(),
    }
}
