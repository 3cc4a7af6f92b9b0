//! Bundles: several labelled algebras, morphisms between them, and
//! coverings, in one file.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::document::{load, AlgebraDocument};
use crate::algebra::{Degree, GradedLieSuperalgebra};
use crate::covering::{verify_covering, CoveringCertificate, CoveringKind, GradedMorphism, GradingMap};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::weight::{Parity, Weight};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledAlgebra {
    pub label: String,
    pub algebra: AlgebraDocument,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingDoc {
    pub target_rank: usize,
    pub source_rank: usize,
    /// Row-major, `target_rank x source_rank`.
    pub entries: Vec<i64>,
}

/// The block of a morphism on one source degree, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDoc {
    pub weight: Vec<i64>,
    pub parity: Parity,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismDocument {
    pub label: String,
    pub source: String,
    pub target: String,
    pub grading: GradingDoc,
    pub blocks: Vec<BlockDoc>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindDoc {
    Full,
    Truncated,
    Semicovering,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringDocument {
    pub label: String,
    /// Label of the projection morphism.
    pub projection: String,
    pub kind: KindDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    pub support: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bundle {
    #[serde(default)]
    pub algebras: Vec<LabeledAlgebra>,
    #[serde(default)]
    pub morphisms: Vec<MorphismDocument>,
    #[serde(default)]
    pub coverings: Vec<CoveringDocument>,
}

/// A bundle with every algebra loaded, every morphism built and every
/// covering re-verified.
#[derive(Clone, Debug, Default)]
pub struct ResolvedBundle {
    pub algebras: BTreeMap<String, Arc<GradedLieSuperalgebra>>,
    pub morphisms: BTreeMap<String, GradedMorphism>,
    pub coverings: BTreeMap<String, CoveringCertificate>,
}

impl ResolvedBundle {
    pub fn algebra(&self, label: &str) -> Result<&Arc<GradedLieSuperalgebra>> {
        self.algebras.get(label).ok_or_else(|| Error::Semantic(format!("bundle has no algebra `{label}`")))
    }

    pub fn morphism(&self, label: &str) -> Result<&GradedMorphism> {
        self.morphisms.get(label).ok_or_else(|| Error::Semantic(format!("bundle has no morphism `{label}`")))
    }

    /// The only morphism of the bundle.
    pub fn single_morphism(&self) -> Result<&GradedMorphism> {
        match self.morphisms.len() {
            1 => Ok(self.morphisms.values().next().expect("one entry")),
            n => Err(Error::Semantic(format!("expected exactly one morphism in the bundle, found {n}"))),
        }
    }

    /// The only covering of the bundle.
    pub fn single_covering(&self) -> Result<&CoveringCertificate> {
        match self.coverings.len() {
            1 => Ok(self.coverings.values().next().expect("one entry")),
            n => Err(Error::Semantic(format!("expected exactly one covering in the bundle, found {n}"))),
        }
    }
}

fn label_error(kind: &str, label: &str) -> Error {
    Error::Semantic(format!("duplicate {kind} label `{label}`"))
}

impl Bundle {
    /// Adds an algebra under `label` unless an identical one is already
    /// present under that label.
    pub fn add_algebra(&mut self, label: &str, a: &GradedLieSuperalgebra) -> Result<()> {
        let doc = AlgebraDocument::from_algebra(a);
        if let Some(prev) = self.algebras.iter().find(|x| x.label == label) {
            return if prev.algebra == doc { Ok(()) } else { Err(label_error("algebra", label)) };
        }
        self.algebras.push(LabeledAlgebra { label: label.into(), algebra: doc });
        Ok(())
    }

    /// Adds a morphism together with its source and target algebras.
    pub fn add_morphism(&mut self, label: &str, f: &GradedMorphism, source: &str, target: &str) -> Result<()> {
        if self.morphisms.iter().any(|m| m.label == label) {
            return Err(label_error("morphism", label));
        }
        self.add_algebra(source, f.source())?;
        self.add_algebra(target, f.target())?;
        let g = f.grading();
        let blocks = f
            .blocks()
            .iter()
            .map(|(d, m)| BlockDoc {
                weight: d.weight.0.clone(),
                parity: d.parity,
                rows: m.rows(),
                cols: m.cols(),
                entries: m.entries().iter().map(ToString::to_string).collect(),
            })
            .collect();
        self.morphisms.push(MorphismDocument {
            label: label.into(),
            source: source.into(),
            target: target.into(),
            grading: GradingDoc { target_rank: g.target_rank, source_rank: g.source_rank, entries: g.entries.clone() },
            blocks,
        });
        Ok(())
    }

    /// Adds a covering, its projection (labelled `projection`) and both
    /// algebras.
    pub fn add_covering(
        &mut self,
        label: &str,
        cert: &CoveringCertificate,
        projection: &str,
        source: &str,
        target: &str,
    ) -> Result<()> {
        if self.coverings.iter().any(|c| c.label == label) {
            return Err(label_error("covering", label));
        }
        self.add_morphism(projection, &cert.projection, source, target)?;
        let (kind, truncation) = match cert.kind {
            CoveringKind::Full { truncation: None } => (KindDoc::Full, None),
            CoveringKind::Full { truncation: Some(t) } => (KindDoc::Truncated, Some(t)),
            CoveringKind::Semicovering => (KindDoc::Semicovering, None),
        };
        self.coverings.push(CoveringDocument {
            label: label.into(),
            projection: projection.into(),
            kind,
            truncation,
            support: cert.support_c.iter().map(|w| w.0.clone()).collect(),
        });
        Ok(())
    }

    /// Loads every algebra (with axiom checks), builds every morphism, and
    /// re-runs the covering checks. A covering that does not pass is kept
    /// with its failing checks; callers decide what to do with it.
    pub fn resolve(&self) -> Result<ResolvedBundle> {
        let mut out = ResolvedBundle::default();
        for la in &self.algebras {
            let a = load(&la.algebra).map_err(|e| Error::Semantic(format!("algebra `{}`: {e}", la.label)))?;
            if out.algebras.insert(la.label.clone(), Arc::new(a)).is_some() {
                return Err(label_error("algebra", &la.label));
            }
        }
        for md in &self.morphisms {
            let f = resolve_morphism(md, &out)?;
            if out.morphisms.insert(md.label.clone(), f).is_some() {
                return Err(label_error("morphism", &md.label));
            }
        }
        for cd in &self.coverings {
            let p = out.morphism(&cd.projection)?.clone();
            let kind = match (cd.kind, cd.truncation) {
                (KindDoc::Full, None) => CoveringKind::Full { truncation: None },
                (KindDoc::Truncated, Some(t)) => CoveringKind::Full { truncation: Some(t) },
                (KindDoc::Semicovering, None) => CoveringKind::Semicovering,
                _ => {
                    return Err(Error::Semantic(format!(
                        "covering `{}`: a truncation is required for, and only for, kind truncated",
                        cd.label
                    )))
                }
            };
            let support: BTreeSet<Weight> = cd.support.iter().map(|w| Weight(w.clone())).collect();
            let cert = verify_covering(p, support, kind);
            if out.coverings.insert(cd.label.clone(), cert).is_some() {
                return Err(label_error("covering", &cd.label));
            }
        }
        Ok(out)
    }
}

fn resolve_morphism(md: &MorphismDocument, r: &ResolvedBundle) -> Result<GradedMorphism> {
    let ctx = |m: String| Error::Semantic(format!("morphism `{}`: {m}", md.label));
    let source = r.algebra(&md.source)?.clone();
    let target = r.algebra(&md.target)?.clone();
    let g = &md.grading;
    let grading = GradingMap::new(g.target_rank, g.source_rank, g.entries.clone()).map_err(|e| ctx(e.to_string()))?;
    let mut blocks = BTreeMap::new();
    for b in &md.blocks {
        if b.entries.len() != b.rows * b.cols {
            return Err(ctx(format!(
                "block at {} has {} entries, expected {}",
                Weight(b.weight.clone()),
                b.entries.len(),
                b.rows * b.cols
            )));
        }
        let data = b
            .entries
            .iter()
            .map(|s| s.parse::<Scalar>().map_err(|e| ctx(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let d = Degree { weight: Weight(b.weight.clone()), parity: b.parity };
        if blocks.insert(d.clone(), Matrix::from_vec(b.rows, b.cols, data)).is_some() {
            return Err(ctx(format!("degree {d} is given twice")));
        }
    }
    GradedMorphism::from_blocks(source, target, grading, blocks).map_err(|e| ctx(e.to_string()))
}
