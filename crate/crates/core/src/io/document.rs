//! Algebra documents: the serializable form of an algebra.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraBuilder, GradedLieSuperalgebra};
use crate::axioms::{verify_axioms, AxiomReport};
use crate::error::{Error, Result};
use crate::functors::FunctorOutput;
use crate::scalar::Scalar;
use crate::sparse::Accumulator;
use crate::weight::{Parity, Weight, WeightLattice};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDoc {
    pub name: String,
    /// `chi` of the generator; either every generator has one or none does.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<Parity>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisDoc {
    pub name: String,
    pub weight: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<Parity>,
    /// Free-form annotation; functor outputs record provenance here.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub basis: String,
    /// Exact rational `p/q`, or `p` when `q = 1`.
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketDoc {
    pub left: String,
    pub right: String,
    pub result: Vec<TermDoc>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDocument {
    pub name: String,
    #[serde(default)]
    pub generators: Vec<GeneratorDoc>,
    #[serde(default)]
    pub basis: Vec<BasisDoc>,
    #[serde(default)]
    pub brackets: Vec<BracketDoc>,
}

impl AlgebraDocument {
    /// One bracket line per unordered pair `i <= j` with a nonzero value;
    /// parities are always written out.
    pub fn from_algebra(a: &GradedLieSuperalgebra) -> Self {
        let lattice = a.lattice();
        let generators = lattice
            .names
            .iter()
            .enumerate()
            .map(|(i, n)| GeneratorDoc { name: n.clone(), parity: lattice.chi.as_ref().map(|c| c[i]) })
            .collect();
        let basis = a
            .basis()
            .iter()
            .map(|b| BasisDoc { name: b.name.clone(), weight: b.weight.0.clone(), parity: Some(b.parity), note: None })
            .collect();
        let mut brackets = Vec::new();
        for i in 0..a.dim() {
            for j in i..a.dim() {
                let v = a.bracket_basis(i, j);
                if v.is_empty() {
                    continue;
                }
                brackets.push(BracketDoc {
                    left: a.basis_element(i).name.clone(),
                    right: a.basis_element(j).name.clone(),
                    result: v
                        .iter()
                        .map(|(k, c)| TermDoc { basis: a.basis_element(*k).name.clone(), coeff: c.to_string() })
                        .collect(),
                });
            }
        }
        AlgebraDocument { name: a.name().to_string(), generators, basis, brackets }
    }

    /// Like [`AlgebraDocument::from_algebra`], with each basis element
    /// annotated by where it came from.
    pub fn from_functor_output(out: &FunctorOutput) -> Self {
        let mut doc = Self::from_algebra(&out.algebra);
        for (b, p) in doc.basis.iter_mut().zip(&out.provenance) {
            b.note = Some(p.describe(&out.base));
        }
        doc
    }

    fn lattice(&self) -> Result<WeightLattice> {
        let names: Vec<String> = self.generators.iter().map(|g| g.name.clone()).collect();
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n) {
                return Err(Error::Semantic(format!("duplicate weight generator `{n}`")));
            }
        }
        let with = self.generators.iter().filter(|g| g.parity.is_some()).count();
        let chi = if with == 0 {
            None
        } else if with == names.len() {
            Some(self.generators.iter().map(|g| g.parity.expect("checked")).collect())
        } else {
            return Err(Error::Semantic("either every weight generator has a parity or none does".into()));
        };
        Ok(WeightLattice::new(names, chi))
    }
}

/// Builds the algebra without checking the axioms. Each listed bracket
/// also fixes its skew partner; listing both with inconsistent values is a
/// semantic error naming the pair.
pub fn load_unchecked(doc: &AlgebraDocument) -> Result<GradedLieSuperalgebra> {
    let mut b = AlgebraBuilder::new(doc.name.clone(), doc.lattice()?);
    for e in &doc.basis {
        b.add_basis(e.name.clone(), Weight(e.weight.clone()), e.parity).map_err(|err| match err {
            Error::Domain(m) => Error::Semantic(format!("basis element `{}`: {m}", e.name)),
            other => other,
        })?;
    }
    let index: HashMap<&str, usize> = doc.basis.iter().enumerate().map(|(i, e)| (e.name.as_str(), i)).collect();
    let look =
        |n: &str| index.get(n).copied().ok_or_else(|| Error::Semantic(format!("undeclared basis element `{n}`")));
    let mut seen = HashSet::new();
    for br in &doc.brackets {
        let i = look(&br.left)?;
        let j = look(&br.right)?;
        if !seen.insert((i, j)) {
            return Err(Error::Semantic(format!("bracket [{}, {}] is given twice", br.left, br.right)));
        }
        let mut acc = Accumulator::new();
        for t in &br.result {
            let c: Scalar =
                t.coeff.parse().map_err(|e| Error::Semantic(format!("bracket [{}, {}]: {e}", br.left, br.right)))?;
            acc.add(look(&t.basis)?, &c);
        }
        b.set_bracket(i, j, acc.finish())?;
    }
    b.build()
}

/// Builds the algebra and rejects it unless every axiom holds.
pub fn load(doc: &AlgebraDocument) -> Result<GradedLieSuperalgebra> {
    let (a, report) = load_with_report(doc)?;
    if report.passed() {
        Ok(a)
    } else {
        Err(Error::AxiomViolation(report.describe(&a, 10)))
    }
}

/// Builds the algebra and returns it with its axiom report.
pub fn load_with_report(doc: &AlgebraDocument) -> Result<(GradedLieSuperalgebra, AxiomReport)> {
    let a = load_unchecked(doc)?;
    let report = verify_axioms(&a);
    Ok((a, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{build_gl, build_osp};

    fn term(basis: &str, coeff: &str) -> TermDoc {
        TermDoc { basis: basis.into(), coeff: coeff.into() }
    }

    fn odd_pair() -> AlgebraDocument {
        AlgebraDocument {
            name: "pair".into(),
            generators: vec![],
            basis: vec![
                BasisDoc { name: "h".into(), weight: vec![], parity: Some(Parity::Even), note: None },
                BasisDoc { name: "y".into(), weight: vec![], parity: Some(Parity::Odd), note: None },
            ],
            brackets: vec![BracketDoc { left: "y".into(), right: "y".into(), result: vec![term("h", "2")] }],
        }
    }

    #[test]
    fn document_round_trip_through_algebra() {
        for g in [build_gl(2, 1).unwrap(), build_osp(1, 2).unwrap()] {
            let doc = AlgebraDocument::from_algebra(&g);
            let back = load(&doc).unwrap();
            assert!(back.same_structure(&g));
            assert_eq!(AlgebraDocument::from_algebra(&back), doc);
        }
    }

    #[test]
    fn skew_partner_is_derived() {
        let mut doc = odd_pair();
        doc.basis[0].parity = Some(Parity::Even);
        let a = load(&doc).unwrap();
        let y = a.index_of("y").unwrap();
        assert_eq!(a.bracket_basis(y, y), &[(0, Scalar::from_int(2))]);
    }

    #[test]
    fn inconsistent_partner_names_the_pair() {
        let g = build_gl(1, 1).unwrap();
        let mut doc = AlgebraDocument::from_algebra(&g);
        doc.brackets.push(BracketDoc { left: "E12".into(), right: "E11".into(), result: vec![term("E12", "1")] });
        let err = load(&doc).unwrap_err().to_string();
        assert!(err.contains("E11") && err.contains("E12"), "{err}");
    }

    #[test]
    fn semantic_errors() {
        let mut doc = odd_pair();
        doc.brackets[0].result[0].basis = "z".into();
        assert!(matches!(load(&doc), Err(Error::Semantic(m)) if m.contains("`z`")));

        let mut doc = odd_pair();
        doc.brackets[0].result[0].coeff = "1/0".into();
        assert!(matches!(load(&doc), Err(Error::Semantic(_))));

        let mut doc = odd_pair();
        doc.generators = vec![
            GeneratorDoc { name: "a".into(), parity: Some(Parity::Odd) },
            GeneratorDoc { name: "b".into(), parity: None },
        ];
        assert!(matches!(load(&doc), Err(Error::Semantic(_))));

        let mut doc = odd_pair();
        doc.generators = vec![GeneratorDoc { name: "q".into(), parity: Some(Parity::Odd) }];
        doc.basis[0].weight = vec![0];
        doc.basis[1].weight = vec![2];
        assert!(matches!(load(&doc), Err(Error::Semantic(m)) if m.contains("chi")));
    }

    #[test]
    fn axiom_failure_is_rejected() {
        let g = build_gl(1, 1).unwrap();
        let mut doc = AlgebraDocument::from_algebra(&g);
        let br = doc.brackets.iter_mut().find(|b| b.left == "E12" && b.right == "E21").unwrap();
        br.result = vec![term("E11", "1")];
        assert!(matches!(load(&doc), Err(Error::AxiomViolation(_))));
        assert!(load_unchecked(&doc).is_ok());
    }

    #[test]
    fn empty_document_is_the_zero_algebra() {
        let a = load(&AlgebraDocument::default()).unwrap();
        assert_eq!(a.dim(), 0);
    }
}
