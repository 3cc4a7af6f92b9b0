//! Lifts of graded homomorphisms through coverings.

use std::collections::{BTreeMap, BTreeSet};

use super::certificate::CoveringCertificate;
use super::morphism::{check_homomorphism, check_partial_homomorphism, GradedMorphism, GradingMap};
use crate::algebra::Degree;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::weight::Weight;

/// Lifts `psi: a -> g` through the covering `P: p -> g` of `cert`, for an
/// `a` graded by the same lattice as `p`. See [`lift_universal_with_grading`].
pub fn lift_universal(psi: &GradedMorphism, cert: &CoveringCertificate) -> Result<GradedMorphism> {
    let a = psi.source();
    let p = cert.projection.source();
    if a.lattice().names != p.lattice().names {
        return Err(Error::Domain(format!(
            "source is graded by [{}] but the covering by [{}]; pass an explicit grading map",
            a.lattice().names.join(", "),
            p.lattice().names.join(", ")
        )));
    }
    lift_universal_with_grading(psi, cert, GradingMap::identity(a.lattice().rank()))
}

/// The unique graded `Psi: a -> p` with `P o Psi = psi`, where `theta`
/// maps weights of `a` to weights of `p`.
///
/// Degree by degree `Psi_s = (P_s)^{-1} o psi_s`. Requirements:
/// * `cert` passed;
/// * `psi` is a partial homomorphism on `supp(a)`;
/// * `phi(theta(s))` is the image of `s` under the grading of `psi`;
/// * `psi_s = 0` whenever `theta(s)` lies outside the covering support.
///
/// The result is checked to satisfy `P o Psi = psi` exactly and to be a
/// partial homomorphism on the weights of `a` that land in the support.
pub fn lift_universal_with_grading(
    psi: &GradedMorphism,
    cert: &CoveringCertificate,
    theta: GradingMap,
) -> Result<GradedMorphism> {
    if !cert.passed() {
        return Err(Error::Domain("covering certificate did not pass".into()));
    }
    let proj = &cert.projection;
    let a = psi.source().clone();
    let p = proj.source().clone();
    if !psi.target().same_structure(proj.target()) {
        return Err(Error::Domain("psi and the covering have different targets".into()));
    }
    if theta.source_rank != a.lattice().rank() || theta.target_rank != p.lattice().rank() {
        return Err(Error::Domain("grading map for the lift has the wrong shape".into()));
    }
    let supp_a = a.support();
    let pre = check_partial_homomorphism(psi, &supp_a);
    if let Some(f) = pre.failures.first() {
        return Err(Error::Domain(format!("psi is not a homomorphism: fails on [{}, {}]", f.names.0, f.names.1)));
    }

    let mut blocks = BTreeMap::new();
    for d in a.degrees() {
        let s = theta.apply(&d.weight);
        let e = Degree { weight: s.clone(), parity: d.parity };
        let psi_block = psi.block(&d).expect("every source degree has a block");
        if proj.grading().apply(&s) != psi.grading().apply(&d.weight) {
            return Err(Error::Domain(format!(
                "psi is not graded compatibly with the covering at weight {}",
                d.weight
            )));
        }
        let rows = p.component(&e).len();
        if !cert.support_c.contains(&s) || rows == 0 {
            if !psi_block.is_zero() {
                return Err(Error::Domain(format!(
                    "psi is nonzero in degree {d}, where the covering has no component"
                )));
            }
            blocks.insert(d, Matrix::zeros(rows, psi_block.cols()));
            continue;
        }
        let inv = proj
            .block(&e)
            .and_then(Matrix::inverse)
            .ok_or_else(|| Error::Domain(format!("covering block at {e} is not invertible")))?;
        blocks.insert(d, inv.mul(psi_block));
    }
    let lift = GradedMorphism::from_blocks(a.clone(), p, theta.clone(), blocks)?;

    let back = proj.compose(&lift)?;
    if back.to_matrix() != psi.to_matrix() {
        return Err(Error::Consistency("lift does not reproduce psi after projection".into()));
    }
    let inside: BTreeSet<Weight> =
        supp_a.iter().filter(|w| cert.support_c.contains(&theta.apply(w))).cloned().collect();
    let post = check_partial_homomorphism(&lift, &inside);
    if let Some(f) = post.failures.first() {
        return Err(Error::Consistency(format!("lift is not a homomorphism on [{}, {}]", f.names.0, f.names.1)));
    }
    Ok(lift)
}

/// The morphism `F: p -> p~` of coverings over `f: g -> g~`, obtained by
/// lifting `f o P` through `P~`.
///
/// Both coverings must project by dropping the same number of leading
/// weight coordinates; the grading of `F` is the identity on those and the
/// grading of `f` on the rest.
pub fn lift_between_coverings(
    f: &GradedMorphism,
    cert: &CoveringCertificate,
    cert_t: &CoveringCertificate,
) -> Result<GradedMorphism> {
    let hv = check_homomorphism(f);
    if let Some(x) = hv.failures.first() {
        return Err(Error::Domain(format!("f is not a homomorphism: fails on [{}, {}]", x.names.0, x.names.1)));
    }
    if !cert.passed() || !cert_t.passed() {
        return Err(Error::Domain("both covering certificates must pass".into()));
    }
    if !f.source().same_structure(cert.projection.target()) || !f.target().same_structure(cert_t.projection.target()) {
        return Err(Error::Domain("f does not connect the bases of the two coverings".into()));
    }
    let lead = |c: &CoveringCertificate| {
        let g = c.projection.grading();
        let extra = g.source_rank.checked_sub(g.target_rank)?;
        (*g == GradingMap::drop_leading(g.source_rank, extra)).then_some(extra)
    };
    let (Some(e1), Some(e2)) = (lead(cert), lead(cert_t)) else {
        return Err(Error::Domain("coverings must project by dropping leading weight coordinates".into()));
    };
    if e1 != e2 {
        return Err(Error::Domain("coverings drop different numbers of weight coordinates".into()));
    }
    let psi = f.compose(&cert.projection)?;
    let theta = f.grading().extend_leading(e1);
    lift_universal_with_grading(&psi, cert_t, theta)
}
