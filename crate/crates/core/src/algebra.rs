//! Graded Lie superalgebras given by exact structure constants.
//!
//! An algebra is a finite ordered basis, each element labelled with a weight
//! and a parity, together with the full bracket table
//! `[e_i, e_j] = sum_k c^k_{ij} e_k`. Every ingestion path that accepts
//! user-supplied constants ([`AlgebraBuilder`], the document loader) takes
//! one ordered pair per unordered pair and derives its partner from the
//! super skew rule, so a builder output is skew-symmetric by construction.
//! [`GradedLieSuperalgebra::from_table`] stores an arbitrary table as given;
//! it exists so that verification can be exercised on broken inputs.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::sparse::{self, Accumulator, SparseVec};
use crate::weight::{Parity, Weight, WeightLattice};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

fn fresh_id() -> u64 {
    NEXT_ID.fetch_add(1, Ordering::Relaxed)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub name: String,
    pub weight: Weight,
    pub parity: Parity,
}

/// A homogeneous degree: weight together with parity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Degree {
    pub weight: Weight,
    pub parity: Parity,
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.weight, self.parity)
    }
}

/// A vector in a specific algebra. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    parent: u64,
    terms: SparseVec,
}

impl Element {
    pub fn terms(&self) -> &[(usize, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, index: usize) -> Scalar {
        sparse::coefficient(&self.terms, index)
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.same_parent(other)?;
        Ok(Element { parent: self.parent, terms: sparse::add(&self.terms, &other.terms) })
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.same_parent(other)?;
        Ok(Element { parent: self.parent, terms: sparse::sub(&self.terms, &other.terms) })
    }

    pub fn scale(&self, factor: &Scalar) -> Element {
        Element { parent: self.parent, terms: sparse::scale(&self.terms, factor) }
    }

    fn same_parent(&self, other: &Element) -> Result<()> {
        if self.parent != other.parent {
            return Err(Error::Domain("elements belong to different algebras".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct GradedLieSuperalgebra {
    id: u64,
    name: String,
    lattice: WeightLattice,
    basis: Vec<BasisElement>,
    index: HashMap<String, usize>,
    /// Row-major `dim x dim` table of brackets of basis elements.
    table: Vec<SparseVec>,
}

impl GradedLieSuperalgebra {
    /// Stores `table` verbatim (row-major, `table[i * dim + j] = [e_i, e_j]`).
    ///
    /// Only shape and index ranges are validated; axioms are not.
    pub fn from_table(
        name: impl Into<String>,
        lattice: WeightLattice,
        basis: Vec<BasisElement>,
        table: Vec<SparseVec>,
    ) -> Result<Self> {
        let dim = basis.len();
        if table.len() != dim * dim {
            return Err(Error::Domain(format!("bracket table has {} entries, expected {}", table.len(), dim * dim)));
        }
        let mut index = HashMap::with_capacity(dim);
        for (i, b) in basis.iter().enumerate() {
            lattice.check_rank(&b.weight)?;
            if index.insert(b.name.clone(), i).is_some() {
                return Err(Error::Domain(format!("duplicate basis name `{}`", b.name)));
            }
        }
        let table = table
            .into_iter()
            .map(|v| {
                if v.iter().any(|(k, _)| *k >= dim) {
                    return Err(Error::Domain("bracket refers to a basis index out of range".into()));
                }
                Ok(sparse::normalize(v))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GradedLieSuperalgebra { id: fresh_id(), name: name.into(), lattice, basis, index, table })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn lattice(&self) -> &WeightLattice {
        &self.lattice
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn basis_element(&self, i: usize) -> &BasisElement {
        &self.basis[i]
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.basis[i].parity
    }

    pub fn weight(&self, i: usize) -> &Weight {
        &self.basis[i].weight
    }

    pub fn degree(&self, i: usize) -> Degree {
        Degree { weight: self.basis[i].weight.clone(), parity: self.basis[i].parity }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// `[e_i, e_j]` as stored.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim() + j]
    }

    /// Structure constant `c^k_{ij}`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        sparse::coefficient(self.bracket_basis(i, j), k)
    }

    pub fn table(&self) -> &[SparseVec] {
        &self.table
    }

    pub fn zero(&self) -> Element {
        Element { parent: self.id, terms: Vec::new() }
    }

    pub fn basis_vector(&self, i: usize) -> Element {
        assert!(i < self.dim(), "basis index out of range");
        Element { parent: self.id, terms: vec![(i, Scalar::one())] }
    }

    pub fn element(&self, terms: impl IntoIterator<Item = (usize, Scalar)>) -> Result<Element> {
        let terms = sparse::normalize(terms);
        if terms.iter().any(|(i, _)| *i >= self.dim()) {
            return Err(Error::Domain("element refers to a basis index out of range".into()));
        }
        Ok(Element { parent: self.id, terms })
    }

    pub fn owns(&self, x: &Element) -> bool {
        x.parent == self.id
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element> {
        if !self.owns(x) || !self.owns(y) {
            return Err(Error::Domain(format!("bracket arguments do not belong to algebra `{}`", self.name)));
        }
        Ok(Element { parent: self.id, terms: self.bracket_sparse(&x.terms, &y.terms) })
    }

    pub(crate) fn bracket_sparse(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, a) in x {
            for (j, b) in y {
                let e = self.bracket_basis(*i, *j);
                if !e.is_empty() {
                    acc.add_scaled(e, &(a * b));
                }
            }
        }
        acc.finish()
    }

    /// Weights carried by at least one basis element.
    pub fn support(&self) -> BTreeSet<Weight> {
        self.basis.iter().map(|b| b.weight.clone()).collect()
    }

    /// Homogeneous degrees (weight, parity) carried by at least one basis element.
    pub fn degrees(&self) -> BTreeSet<Degree> {
        (0..self.dim()).map(|i| self.degree(i)).collect()
    }

    /// Indices of the basis elements of weight `w`, in basis order.
    pub fn homogeneous_component(&self, w: &Weight) -> Result<Vec<usize>> {
        self.lattice.check_rank(w)?;
        Ok((0..self.dim()).filter(|&i| &self.basis[i].weight == w).collect())
    }

    /// Like [`Self::homogeneous_component`], also matching the generator names.
    pub fn homogeneous_component_named(&self, names: &[&str], w: &Weight) -> Result<Vec<usize>> {
        if names.len() != self.lattice.names.len() || names.iter().zip(&self.lattice.names).any(|(a, b)| a != b) {
            return Err(Error::Domain(format!(
                "weight generators [{}] do not match [{}]",
                names.join(", "),
                self.lattice.names.join(", ")
            )));
        }
        self.homogeneous_component(w)
    }

    /// Indices of the basis elements of the given degree, in basis order.
    pub fn component(&self, d: &Degree) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].weight == d.weight && self.basis[i].parity == d.parity).collect()
    }

    pub fn even_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.parity(i).is_odd()).collect()
    }

    pub fn odd_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parity(i).is_odd()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|v| v.is_empty())
    }

    /// Equality of everything except the name and identity: lattice, basis
    /// labels, and every structure constant.
    pub fn same_structure(&self, other: &GradedLieSuperalgebra) -> bool {
        self.lattice == other.lattice && self.basis == other.basis && self.table == other.table
    }

    /// Same bracket table and parities, ignoring names and weights.
    pub fn same_brackets(&self, other: &GradedLieSuperalgebra) -> bool {
        self.dim() == other.dim()
            && (0..self.dim()).all(|i| self.parity(i) == other.parity(i))
            && self.table == other.table
    }

    /// Equality after matching basis elements by name: same lattice, same
    /// labels, and the same constants in the matched bases.
    pub fn same_up_to_basis_order(&self, other: &GradedLieSuperalgebra) -> bool {
        if self.lattice != other.lattice || self.dim() != other.dim() {
            return false;
        }
        let Some(map): Option<Vec<usize>> = self.basis.iter().map(|b| other.index_of(&b.name)).collect() else {
            return false;
        };
        if self.basis.iter().zip(&map).any(|(b, &j)| other.basis[j] != *b) {
            return false;
        }
        (0..self.dim()).all(|i| {
            (0..self.dim()).all(|j| {
                let mine = sparse::normalize(self.bracket_basis(i, j).iter().map(|(k, c)| (map[*k], c.clone())));
                mine == other.bracket_basis(map[i], map[j])
            })
        })
    }

    /// Replaces a single table entry without touching its skew partner.
    pub fn with_raw_bracket(&self, i: usize, j: usize, value: SparseVec) -> Self {
        let mut out = self.clone();
        out.id = fresh_id();
        let n = out.dim();
        out.table[i * n + j] = sparse::normalize(value);
        out
    }

    /// Reorders the basis: new basis element `p` is old element `perm[p]`.
    pub(crate) fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.dim();
        let mut inverse = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        let basis = perm.iter().map(|&o| self.basis[o].clone()).collect();
        let mut table = Vec::with_capacity(n * n);
        for &oi in perm {
            for &oj in perm {
                let v = self.bracket_basis(oi, oj).iter().map(|(k, c)| (inverse[*k], c.clone()));
                table.push(sparse::normalize(v));
            }
        }
        GradedLieSuperalgebra::from_table(self.name.clone(), self.lattice.clone(), basis, table)
            .expect("permutation preserves validity")
    }

    pub fn format_element(&self, x: &[(usize, Scalar)]) -> String {
        if x.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (p, (i, c)) in x.iter().enumerate() {
            let name = &self.basis[*i].name;
            let mag = c.abs();
            if p == 0 {
                if c.is_negative() {
                    s.push('-');
                }
            } else {
                s.push_str(if c.is_negative() { " - " } else { " + " });
            }
            if mag.is_one() {
                s.push_str(name);
            } else {
                s.push_str(&format!("{mag}*{name}"));
            }
        }
        s
    }
}

/// Incremental, checked construction of an algebra.
#[derive(Debug, Clone)]
pub struct AlgebraBuilder {
    name: String,
    lattice: WeightLattice,
    basis: Vec<BasisElement>,
    index: HashMap<String, usize>,
    canonical: HashMap<(usize, usize), SparseVec>,
}

impl AlgebraBuilder {
    pub fn new(name: impl Into<String>, lattice: WeightLattice) -> Self {
        AlgebraBuilder {
            name: name.into(),
            lattice,
            basis: Vec::new(),
            index: HashMap::new(),
            canonical: HashMap::new(),
        }
    }

    /// Adds a basis element. Parity may be explicit, derived from `chi`, or
    /// both; if both are given they must agree.
    pub fn add_basis(&mut self, name: impl Into<String>, weight: Weight, parity: Option<Parity>) -> Result<usize> {
        let name = name.into();
        self.lattice.check_rank(&weight)?;
        if self.index.contains_key(&name) {
            return Err(Error::Semantic(format!("duplicate basis name `{name}`")));
        }
        let derived = self.lattice.parity_of(&weight);
        let parity = match (parity, derived) {
            (Some(p), Some(q)) if p != q => {
                return Err(Error::Semantic(format!(
                    "basis element `{name}` declared {p} but chi of weight {weight} is {q}"
                )))
            }
            (Some(p), _) => p,
            (None, Some(q)) => q,
            (None, None) => {
                return Err(Error::Semantic(format!("basis element `{name}` has no parity and no chi is attached")))
            }
        };
        let i = self.basis.len();
        self.index.insert(name.clone(), i);
        self.basis.push(BasisElement { name, weight, parity });
        Ok(i)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Sets `[e_i, e_j]`. The partner `[e_j, e_i]` is derived by the skew
    /// rule; setting both is allowed only if they are consistent.
    pub fn set_bracket(&mut self, i: usize, j: usize, value: SparseVec) -> Result<()> {
        let n = self.basis.len();
        if i >= n || j >= n || value.iter().any(|(k, _)| *k >= n) {
            return Err(Error::Domain("bracket index out of range".into()));
        }
        let value = sparse::normalize(value);
        let (key, canonical) = if i <= j {
            ((i, j), value)
        } else {
            let odd = self.basis[i].parity.koszul(self.basis[j].parity);
            // [e_j, e_i] = -(-1)^{|i||j|} [e_i, e_j]
            ((j, i), sparse::scale(&value, &(-Scalar::sign(odd))))
        };
        if let Some(prev) = self.canonical.get(&key) {
            if *prev != canonical {
                let (a, b) = key;
                return Err(Error::Semantic(format!(
                    "brackets [{}, {}] and [{}, {}] are not skew-consistent",
                    self.basis[a].name, self.basis[b].name, self.basis[b].name, self.basis[a].name
                )));
            }
        }
        self.canonical.insert(key, canonical);
        Ok(())
    }

    pub fn set_bracket_by_name(&mut self, left: &str, right: &str, value: &[(&str, Scalar)]) -> Result<()> {
        let look = |n: &str| self.index_of(n).ok_or_else(|| Error::Semantic(format!("undeclared basis element `{n}`")));
        let i = look(left)?;
        let j = look(right)?;
        let v = value.iter().map(|(n, c)| Ok((look(n)?, c.clone()))).collect::<Result<Vec<_>>>()?;
        self.set_bracket(i, j, v)
    }

    pub fn build(self) -> Result<GradedLieSuperalgebra> {
        let n = self.basis.len();
        let mut table = vec![Vec::new(); n * n];
        for ((i, j), v) in self.canonical {
            let odd = self.basis[i].parity.koszul(self.basis[j].parity);
            if i != j {
                table[j * n + i] = sparse::scale(&v, &(-Scalar::sign(odd)));
            }
            table[i * n + j] = v;
        }
        GradedLieSuperalgebra::from_table(self.name, self.lattice, self.basis, table)
    }
}
