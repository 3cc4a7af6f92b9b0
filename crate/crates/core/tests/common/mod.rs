//! Helpers shared by the integration tests: dense brute-force oracles that
//! do not go through the library's sparse code paths, a few morphism
//! constructors, and a runner for the command-line binary.

#![allow(dead_code, clippy::needless_range_loop)]

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};
use std::sync::Arc;

use superlie::covering::{GradedMorphism, GradingMap};
use superlie::functors::{FunctorOutput, Provenance};
use superlie::{GradedLieSuperalgebra, Parity, Scalar};

pub fn mul(a: &Scalar, b: &Scalar) -> Scalar {
    let mut x = a.clone();
    x *= b;
    x
}

pub fn q(n: i64, d: i64) -> Scalar {
    Scalar::new(n, d)
}

/// Dense structure constants `c[i][j][k]`.
pub fn dense(a: &GradedLieSuperalgebra) -> Vec<Vec<Vec<Scalar>>> {
    let n = a.dim();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a.constant(i, j, k)).collect()).collect()).collect()
}

fn sign(odd: bool) -> Scalar {
    if odd {
        Scalar::from_int(-1)
    } else {
        Scalar::one()
    }
}

/// Brute-force axiom check over every pair and triple, from the dense
/// cube: skew symmetry, graded Jacobi in the Leibniz form
/// `[x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]`, parity and weight
/// additivity. Returns the number of violated equations.
pub fn naive_axiom_violations(a: &GradedLieSuperalgebra) -> usize {
    let n = a.dim();
    let c = dense(a);
    let p: Vec<bool> = (0..n).map(|i| a.parity(i) == Parity::Odd).collect();
    let mut bad = 0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut s = c[i][j][k].clone();
                s += mul(&sign(p[i] && p[j]), &c[j][i][k]);
                if !s.is_zero() {
                    bad += 1;
                }
                if !c[i][j][k].is_zero() {
                    if p[k] != (p[i] ^ p[j]) {
                        bad += 1;
                    }
                    if *a.weight(k) != a.weight(i).plus(a.weight(j)) {
                        bad += 1;
                    }
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for m in 0..n {
                    let mut lhs = Scalar::zero();
                    let mut rhs = Scalar::zero();
                    for l in 0..n {
                        lhs += mul(&c[y][z][l], &c[x][l][m]);
                        rhs += mul(&c[x][y][l], &c[l][z][m]);
                        rhs += mul(&sign(p[x] && p[y]), &mul(&c[x][z][l], &c[y][l][m]));
                    }
                    if lhs != rhs {
                        bad += 1;
                    }
                }
            }
        }
    }
    bad
}

/// gl(m|n) built from integer matrix units and the supercommutator,
/// as dense constants indexed like `E_ab` in row-major order.
pub fn gl_oracle(m: usize, n: usize) -> Vec<Vec<Vec<i64>>> {
    let s = m + n;
    let par = |x: usize| usize::from(x >= m);
    let unit = |a: usize, b: usize| {
        let mut u = vec![vec![0i64; s]; s];
        u[a][b] = 1;
        u
    };
    let prod = |x: &Vec<Vec<i64>>, y: &Vec<Vec<i64>>| {
        let mut r = vec![vec![0i64; s]; s];
        for i in 0..s {
            for k in 0..s {
                for j in 0..s {
                    r[i][j] += x[i][k] * y[k][j];
                }
            }
        }
        r
    };
    let dim = s * s;
    let mut c = vec![vec![vec![0i64; dim]; dim]; dim];
    for i in 0..dim {
        let (a, b) = (i / s, i % s);
        for j in 0..dim {
            let (cc, d) = (j / s, j % s);
            let pi = (par(a) + par(b)) % 2;
            let pj = (par(cc) + par(d)) % 2;
            let sg = if pi * pj == 1 { -1 } else { 1 };
            let (x, y) = (unit(a, b), unit(cc, d));
            let xy = prod(&x, &y);
            let yx = prod(&y, &x);
            for k in 0..dim {
                let (e, f) = (k / s, k % s);
                c[i][j][k] = xy[e][f] - sg * yx[e][f];
            }
        }
    }
    c
}

/// Conjugation by `diag(t_1, ..., t_s)` on gl(m|n): `E_ab -> (t_a / t_b) E_ab`.
pub fn diag_conjugation(g: &Arc<GradedLieSuperalgebra>, size: usize, t: &[Scalar]) -> GradedMorphism {
    let images: Vec<Vec<(usize, Scalar)>> = (0..g.dim())
        .map(|i| {
            let (a, b) = (i / size, i % size);
            let mut c = t[a].clone();
            c *= &t[b].recip().expect("nonzero");
            vec![(i, c)]
        })
        .collect();
    GradedMorphism::from_images(g.clone(), g.clone(), GradingMap::identity(g.lattice().rank()), &images).unwrap()
}

/// `X'_i -> s^i X'_i` on a diagonal tower output.
pub fn degree_scaling(p: &FunctorOutput, s: &Scalar) -> GradedMorphism {
    let images: Vec<Vec<(usize, Scalar)>> = p
        .provenance
        .iter()
        .enumerate()
        .map(|(i, prov)| {
            let Provenance::Diagonal { degree, .. } = prov else { panic!("diagonal output expected") };
            let mut c = Scalar::one();
            for _ in 0..*degree {
                c *= s;
            }
            vec![(i, c)]
        })
        .collect();
    let a = p.algebra.clone();
    GradedMorphism::from_images(a.clone(), a.clone(), GradingMap::identity(a.lattice().rank()), &images).unwrap()
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn run_cli(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_superlie"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    {
        let mut pipe = child.stdin.take().expect("stdin");
        if let Some(bytes) = stdin {
            pipe.write_all(bytes).expect("write stdin");
        }
    }
    child.wait_with_output().expect("binary exits")
}
