//! Graded Lie superalgebras over exact rationals: structure-constant
//! algebras with full axiom checking, the Takiff / split / parity-change /
//! diagonal functor tower, graded coverings with universal lifts, concrete
//! builders, and a line-oriented text format.

pub mod algebra;
pub mod axioms;
pub mod builders;
pub mod covering;
pub mod error;
pub mod functors;
pub mod io;
pub mod linalg;
pub mod scalar;
pub mod sparse;
pub mod weight;

pub use algebra::{AlgebraBuilder, BasisElement, Degree, Element, GradedLieSuperalgebra};
pub use axioms::{verify_axioms, AxiomReport};
pub use error::{Error, Result};
pub use scalar::Scalar;
pub use weight::{Parity, Weight, WeightLattice, WeightSystem};
