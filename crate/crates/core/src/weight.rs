//! Weights, parities and weight systems.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Element of `Z/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_int(n: i64) -> Self {
        if n.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn bit(self) -> u8 {
        self as u8
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    /// `(-1)^{|self||other|}` is negative.
    pub fn koszul(self, other: Parity) -> bool {
        self.is_odd() && other.is_odd()
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Integer weight vector, interpreted against the weight lattice of the
/// algebra that carries it.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn components(&self) -> &[i64] {
        &self.0
    }

    /// Componentwise sum. Panics on rank mismatch.
    pub fn plus(&self, other: &Weight) -> Weight {
        assert_eq!(self.rank(), other.rank(), "weight rank mismatch");
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn concat(&self, tail: &[i64]) -> Weight {
        let mut v = self.0.clone();
        v.extend_from_slice(tail);
        Weight(v)
    }

    pub fn prepend(&self, head: i64) -> Weight {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(head);
        v.extend_from_slice(&self.0);
        Weight(v)
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Named weight generators and an optional parity homomorphism `chi`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightLattice {
    pub names: Vec<String>,
    pub chi: Option<Vec<Parity>>,
}

impl WeightLattice {
    /// The rank-0 lattice: every basis element has weight `()`.
    pub fn trivial() -> Self {
        WeightLattice::default()
    }

    pub fn new(names: Vec<String>, chi: Option<Vec<Parity>>) -> Self {
        if let Some(c) = &chi {
            assert_eq!(c.len(), names.len(), "chi must cover every generator");
        }
        WeightLattice { names, chi }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    /// `chi(w)`, extended additively; `None` when no `chi` is attached.
    pub fn parity_of(&self, w: &Weight) -> Option<Parity> {
        let chi = self.chi.as_ref()?;
        let odd = chi.iter().zip(w.components()).filter(|(p, _)| p.is_odd()).map(|(_, c)| *c).sum::<i64>();
        Some(Parity::from_int(odd))
    }

    pub fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank() {
            return Err(Error::Domain(format!(
                "weight {w} has {} components but the lattice has generators [{}]",
                w.rank(),
                self.names.join(", ")
            )));
        }
        Ok(())
    }
}

/// A weight system `(delta, chi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    pub lattice: WeightLattice,
    pub delta: BTreeSet<Weight>,
}

impl WeightSystem {
    /// Validates `0 ∈ delta` and that every generator lies in `delta`.
    /// With `nonnegative` set, also requires all components `>= 0`.
    pub fn new(lattice: WeightLattice, delta: BTreeSet<Weight>, nonnegative: bool) -> Result<Self> {
        let r = lattice.rank();
        for w in &delta {
            lattice.check_rank(w)?;
            if nonnegative && w.0.iter().any(|&c| c < 0) {
                return Err(Error::Domain(format!("weight {w} has a negative component")));
            }
        }
        if !delta.contains(&Weight::zero(r)) {
            return Err(Error::Domain("weight system must contain 0".into()));
        }
        for i in 0..r {
            let mut g = Weight::zero(r);
            g.0[i] = 1;
            if !delta.contains(&g) {
                return Err(Error::Domain(format!("weight system must contain generator {}", lattice.names[i])));
            }
        }
        Ok(WeightSystem { lattice, delta })
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.delta.iter().all(|w| w.0.iter().all(|&c| c == 0 || c == 1))
    }

    /// Splits `delta` into its even and odd parts under `chi`.
    pub fn split_by_parity(&self) -> Option<(BTreeSet<Weight>, BTreeSet<Weight>)> {
        let mut even = BTreeSet::new();
        let mut odd = BTreeSet::new();
        for w in &self.delta {
            match self.lattice.parity_of(w)? {
                Parity::Even => even.insert(w.clone()),
                Parity::Odd => odd.insert(w.clone()),
            };
        }
        Some((even, odd))
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.delta.contains(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice2() -> WeightLattice {
        WeightLattice::new(vec!["a".into(), "b".into()], Some(vec![Parity::Odd, Parity::Even]))
    }

    #[test]
    fn chi_extends_additively() {
        let l = lattice2();
        assert_eq!(l.parity_of(&Weight(vec![1, 1])), Some(Parity::Odd));
        assert_eq!(l.parity_of(&Weight(vec![2, 5])), Some(Parity::Even));
        assert_eq!(l.parity_of(&Weight(vec![-1, 0])), Some(Parity::Odd));
    }

    #[test]
    fn weight_system_requires_zero_and_generators() {
        let l = lattice2();
        let full: BTreeSet<Weight> = [vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]].into_iter().map(Weight).collect();
        let ws = WeightSystem::new(l.clone(), full.clone(), true).unwrap();
        assert!(ws.is_multiplicity_free());
        let (even, odd) = ws.split_by_parity().unwrap();
        assert_eq!(even.len(), 2);
        assert_eq!(odd.len(), 2);

        let mut no_zero = full.clone();
        no_zero.remove(&Weight(vec![0, 0]));
        assert!(WeightSystem::new(l.clone(), no_zero, true).is_err());

        let mut negative = full.clone();
        negative.insert(Weight(vec![-1, 0]));
        assert!(WeightSystem::new(l.clone(), negative.clone(), true).is_err());
        let relaxed = WeightSystem::new(l, negative, false).unwrap();
        assert!(!relaxed.is_multiplicity_free());
    }
}
