//! Verification of coverings and semicoverings.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::morphism::{
    check_homomorphism, check_partial_homomorphism, GradedMorphism, GradingMap, HomomorphismVerdict,
};
use crate::axioms::verify_axioms;
use crate::weight::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CoveringKind {
    /// A covering. With `truncation = Some(t)` the source is the part of an
    /// infinite covering in degrees `<= t`, and the homomorphism law is
    /// checked on the pairs that stay inside that window.
    Full { truncation: Option<usize> },
    /// A semicovering with support `C`: the homomorphism law is required only
    /// when both weights and their sum lie in `C`.
    Semicovering,
}

impl fmt::Display for CoveringKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoveringKind::Full { truncation: None } => f.write_str("full"),
            CoveringKind::Full { truncation: Some(t) } => write!(f, "full (truncated at degree {t})"),
            CoveringKind::Semicovering => f.write_str("semicovering"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct CoveringCertificate {
    pub projection: GradedMorphism,
    pub phi: GradingMap,
    pub support_c: BTreeSet<Weight>,
    pub kind: CoveringKind,
    pub checks: Vec<CheckItem>,
}

impl CoveringCertificate {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckItem> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn homomorphism_detail(v: &HomomorphismVerdict) -> String {
    match v.failures.first() {
        None => format!("{} pairs checked", v.pairs_checked),
        Some(f) => format!(
            "{} of {} pairs fail, first [{}, {}] at weights {} and {}",
            v.failures.len(),
            v.pairs_checked,
            f.names.0,
            f.names.1,
            f.weights.0,
            f.weights.1
        ),
    }
}

/// Runs the five itemized checks:
///
/// 1. the source satisfies the axioms;
/// 2. the projection is a homomorphism (partial on `C` for semicoverings and
///    truncated coverings);
/// 3. every degree block is square and invertible;
/// 4. `phi(C)` covers every nonzero degree of the target;
/// 5. the source support equals `C`.
pub fn verify_covering(
    projection: GradedMorphism,
    support_c: BTreeSet<Weight>,
    kind: CoveringKind,
) -> CoveringCertificate {
    let src = projection.source().clone();
    let tgt = projection.target().clone();
    let mut checks = Vec::new();

    let report = verify_axioms(&src);
    checks.push(CheckItem { name: "axioms", passed: report.passed(), detail: report.to_string() });

    let verdict = match kind {
        CoveringKind::Full { truncation: None } => check_homomorphism(&projection),
        _ => check_partial_homomorphism(&projection, &support_c),
    };
    checks.push(CheckItem { name: "homomorphism", passed: verdict.passed(), detail: homomorphism_detail(&verdict) });

    let mut bad = Vec::new();
    for d in src.degrees() {
        let b = projection.block(&d).expect("every source degree has a block");
        if !b.is_square() || b.inverse().is_none() {
            bad.push(format!("{d} ({}x{})", b.rows(), b.cols()));
        }
    }
    checks.push(CheckItem {
        name: "bijective blocks",
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            "all blocks invertible".into()
        } else {
            format!("not invertible: {}", bad.join(", "))
        },
    });

    let covered: BTreeSet<_> = src
        .degrees()
        .into_iter()
        .filter(|d| support_c.contains(&d.weight))
        .map(|d| projection.target_degree(&d))
        .collect();
    let missing: Vec<String> =
        tgt.degrees().into_iter().filter(|d| !covered.contains(d)).map(|d| d.to_string()).collect();
    checks.push(CheckItem {
        name: "covers target",
        passed: missing.is_empty(),
        detail: if missing.is_empty() {
            "every target degree is hit".into()
        } else {
            format!("missed: {}", missing.join(", "))
        },
    });

    let support = src.support();
    let fmt_set = |s: &BTreeSet<Weight>| s.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    checks.push(CheckItem {
        name: "support",
        passed: support == support_c,
        detail: format!("supp = {{{}}}, C = {{{}}}", fmt_set(&support), fmt_set(&support_c)),
    });

    let phi = projection.grading().clone();
    CoveringCertificate { projection, phi, support_c, kind, checks }
}
