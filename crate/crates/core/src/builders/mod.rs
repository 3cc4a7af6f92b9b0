//! Concrete algebras: gl(m|n), Z-graded gl(V), osp(p|2q), abelian, and the
//! loop and block-matrix models of the covering tower.

mod loop_model;
mod realization;
mod supermatrix;

pub use loop_model::{verify_loop_isomorphism, LoopModel, LoopVerdict};
pub use realization::{matrix_realization, MatrixRealization, RealizedGenerator};
pub use supermatrix::{algebra_from_matrices, SuperMatrix};

use crate::algebra::{BasisElement, GradedLieSuperalgebra};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::weight::{Parity, Weight, WeightLattice};

fn unit_name(a: usize, b: usize, size: usize) -> String {
    if size < 10 {
        format!("E{a}{b}")
    } else {
        format!("E{a}_{b}")
    }
}

fn elementary(blocks: &[(usize, Parity)], a: usize, b: usize) -> SuperMatrix {
    let mut m = SuperMatrix::zeros(blocks.to_vec());
    m.entries.set(a, b, Scalar::one());
    m
}

/// gl(m|n) with basis `E_ab` in row-major order and the rank-0 grading.
pub fn build_gl(m: usize, n: usize) -> Result<GradedLieSuperalgebra> {
    let size = m + n;
    if size == 0 {
        return Err(Error::Domain("gl(m|n) needs m + n >= 1".into()));
    }
    let blocks = vec![(m, Parity::Even), (n, Parity::Odd)];
    let parity = |a: usize| if a < m { Parity::Even } else { Parity::Odd };
    let mut basis = Vec::new();
    let mut mats = Vec::new();
    for a in 0..size {
        for b in 0..size {
            basis.push(BasisElement {
                name: unit_name(a + 1, b + 1, size),
                weight: Weight::default(),
                parity: parity(a) + parity(b),
            });
            mats.push(elementary(&blocks, a, b));
        }
    }
    algebra_from_matrices(&format!("gl({m}|{n})"), WeightLattice::trivial(), basis, &mats)
}

/// End(V) for `V = V_0 + V_1 + ...` with `dims[q] = dim V_q`.
///
/// `E_ab` has weight `deg(a) - deg(b)`. In the super reading a vector of
/// degree `q` has parity `q mod 2`, so every parity equals the weight mod 2;
/// otherwise everything is even.
pub fn build_gl_zgraded(dims: &[usize], super_reading: bool) -> Result<GradedLieSuperalgebra> {
    if dims.iter().all(|&d| d == 0) {
        return Err(Error::Domain("Z-graded gl needs at least one positive dimension".into()));
    }
    let degree: Vec<i64> = dims.iter().enumerate().flat_map(|(q, &d)| std::iter::repeat_n(q as i64, d)).collect();
    let size = degree.len();
    let chi = if super_reading { Parity::Odd } else { Parity::Even };
    let lattice = WeightLattice::new(vec!["q".into()], Some(vec![chi]));
    let vector_parity = |a: usize| if super_reading { Parity::from_int(degree[a]) } else { Parity::Even };
    let blocks: Vec<(usize, Parity)> = (0..size).map(|a| (1, vector_parity(a))).collect();
    let mut basis = Vec::new();
    let mut mats = Vec::new();
    for a in 0..size {
        for b in 0..size {
            basis.push(BasisElement {
                name: unit_name(a + 1, b + 1, size),
                weight: Weight(vec![degree[a] - degree[b]]),
                parity: vector_parity(a) + vector_parity(b),
            });
            mats.push(elementary(&blocks, a, b));
        }
    }
    let dims_s: Vec<String> = dims.iter().map(ToString::to_string).collect();
    let name = if super_reading { "glz" } else { "glzeven" };
    algebra_from_matrices(&format!("{name}({})", dims_s.join(",")), lattice, basis, &mats)
}

fn degree_name(w: i64) -> String {
    if w < 0 {
        format!("m{}", -w)
    } else {
        w.to_string()
    }
}

/// osp(p|2q) preserving the form that is the identity on the even part and
/// pairs `L` (degree 1) with `L'` (degree -1) by `Q(l'_i, l_j) = -Q(l_i, l'_j) = delta_ij`.
///
/// The basis is read off degree by degree from the null space of the
/// invariance condition; basis elements are named `g<degree>_<k>` with
/// negative degrees written `m1`, `m2`.
pub fn build_osp(p: usize, two_q: usize) -> Result<GradedLieSuperalgebra> {
    if !two_q.is_multiple_of(2) {
        return Err(Error::Domain(format!("osp(p|2q) needs an even second argument, got {two_q}")));
    }
    let q = two_q / 2;
    if q == 0 {
        return Err(Error::Domain("osp(p|2q) needs q >= 1".into()));
    }
    let size = p + 2 * q;
    let vparity: Vec<Parity> = (0..size).map(|a| if a < p { Parity::Even } else { Parity::Odd }).collect();
    let vdegree: Vec<i64> = (0..size)
        .map(|a| {
            if a < p {
                0
            } else if a < p + q {
                1
            } else {
                -1
            }
        })
        .collect();
    let mut gram = Matrix::zeros(size, size);
    for i in 0..p {
        gram.set(i, i, Scalar::one());
    }
    for i in 0..q {
        gram.set(p + i, p + q + i, Scalar::from_int(-1));
        gram.set(p + q + i, p + i, Scalar::one());
    }
    let blocks: Vec<(usize, Parity)> = vparity.iter().map(|&pa| (1, pa)).collect();
    let lattice = WeightLattice::new(vec!["q".into()], Some(vec![Parity::Odd]));
    let mut basis = Vec::new();
    let mut mats = Vec::new();
    for w in -2..=2i64 {
        let unknowns: Vec<(usize, usize)> = (0..size)
            .flat_map(|a| (0..size).map(move |b| (a, b)))
            .filter(|&(a, b)| vdegree[a] - vdegree[b] == w)
            .collect();
        if unknowns.is_empty() {
            continue;
        }
        let tparity = Parity::from_int(w);
        // Rows: one equation per (x, y) for Q(Tx, y) + (-1)^{|T||x|} Q(x, Ty) = 0.
        let mut eqs = Matrix::zeros(size * size, unknowns.len());
        for (u, &(a, b)) in unknowns.iter().enumerate() {
            // T = E_ab: T e_x = delta_{bx} e_a.
            for (x, &px) in vparity.iter().enumerate() {
                for y in 0..size {
                    let mut v = Scalar::zero();
                    if x == b {
                        v += gram.get(a, y);
                    }
                    if y == b {
                        v += Scalar::sign(tparity.koszul(px)) * gram.get(x, a);
                    }
                    if !v.is_zero() {
                        eqs.set(x * size + y, u, v);
                    }
                }
            }
        }
        for (k, sol) in eqs.nullspace().into_iter().enumerate() {
            let mut m = SuperMatrix::zeros(blocks.clone());
            for (u, c) in sol.into_iter().enumerate() {
                let (a, b) = unknowns[u];
                m.entries.set(a, b, c);
            }
            basis.push(BasisElement {
                name: format!("g{}_{}", degree_name(w), k + 1),
                weight: Weight(vec![w]),
                parity: tparity,
            });
            mats.push(m);
        }
    }
    algebra_from_matrices(&format!("osp({p}|{two_q})"), lattice, basis, &mats)
}

/// The abelian algebra with `even` even and `odd` odd basis elements.
pub fn build_abelian(even: usize, odd: usize) -> GradedLieSuperalgebra {
    let basis: Vec<BasisElement> = (0..even)
        .map(|i| BasisElement { name: format!("x{}", i + 1), weight: Weight::default(), parity: Parity::Even })
        .chain((0..odd).map(|i| BasisElement {
            name: format!("y{}", i + 1),
            weight: Weight::default(),
            parity: Parity::Odd,
        }))
        .collect();
    let n = basis.len();
    GradedLieSuperalgebra::from_table(
        format!("abelian({even}|{odd})"),
        WeightLattice::trivial(),
        basis,
        vec![Vec::new(); n * n],
    )
    .expect("abelian algebra is well formed")
}

fn spec_numbers(spec: &str, args: &str) -> Result<Vec<usize>> {
    if args.trim().is_empty() {
        return Err(Error::Domain(format!("builtin `{spec}` needs arguments")));
    }
    args.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Domain(format!("bad number `{t}` in builtin `{spec}`"))))
        .collect()
}

/// Builds an algebra from a spec: `gl:M,N`, `glz:d0,d1,...`,
/// `glzeven:d0,d1,...`, `osp:P,2Q` or `abelian:E,O`.
pub fn builtin(spec: &str) -> Result<GradedLieSuperalgebra> {
    let (kind, args) =
        spec.split_once(':').ok_or_else(|| Error::Domain(format!("builtin spec `{spec}` has no `:`")))?;
    let nums = spec_numbers(spec, args)?;
    let pair = || match nums[..] {
        [a, b] => Ok((a, b)),
        _ => Err(Error::Domain(format!("builtin `{spec}` needs exactly two numbers"))),
    };
    match kind {
        "gl" => pair().and_then(|(m, n)| build_gl(m, n)),
        "glz" => build_gl_zgraded(&nums, true),
        "glzeven" => build_gl_zgraded(&nums, false),
        "osp" => pair().and_then(|(p, q2)| build_osp(p, q2)),
        "abelian" => pair().map(|(e, o)| build_abelian(e, o)),
        _ => Err(Error::Domain(format!("unknown builtin `{kind}`; expected gl, glz, glzeven, osp or abelian"))),
    }
}
