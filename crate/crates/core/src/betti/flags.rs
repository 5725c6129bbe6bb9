//! Full flags in F_q^n as cosets `gB`, their canonical representatives and
//! relative positions.

use crate::arith::{FiniteField, FqElem};
use crate::rootsys::{RootSystem, WeylElement};

use super::matrix::{self, FqMatrix};

/// Column-reduced echelon representative of `gB` together with its pivot
/// permutation: column `j` has a `1` in row `pivot[j]`, zeros below it and
/// zeros in the pivot rows of earlier columns.
pub fn canonical_flag(f: &FiniteField, g: &FqMatrix) -> (FqMatrix, Vec<usize>) {
    let n = g.len();
    let mut cols: Vec<Vec<FqElem>> = (0..n).map(|j| (0..n).map(|i| g[i][j]).collect()).collect();
    let mut pivots: Vec<usize> = Vec::with_capacity(n);
    for j in 0..n {
        for i in 0..j {
            let c = cols[j][pivots[i]];
            if c != 0 {
                for r in 0..n {
                    cols[j][r] = f.s(cols[j][r], f.m(c, cols[i][r]));
                }
            }
        }
        let p = (0..n).rev().find(|&r| cols[j][r] != 0).expect("invertible matrix");
        let inv = f.i(cols[j][p]);
        for x in cols[j].iter_mut() {
            *x = f.m(*x, inv);
        }
        pivots.push(p);
    }
    let rep = (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect();
    (rep, pivots)
}

/// A representative of the same flag with determinant one (last column
/// rescaled).
pub fn to_sl(f: &FiniteField, g: &FqMatrix) -> FqMatrix {
    let d = matrix::det(f, g);
    let s = f.i(d);
    let n = g.len();
    let mut h = g.clone();
    for row in h.iter_mut() {
        row[n - 1] = f.m(row[n - 1], s);
    }
    h
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// All canonical flag representatives, grouped by Schubert cell.
pub fn all_flags(f: &FiniteField, n: usize) -> Vec<FqMatrix> {
    let elems: Vec<FqElem> = f.elements().collect();
    let mut out = Vec::new();
    for perm in permutations(n) {
        let mut free: Vec<(usize, usize)> = Vec::new();
        for j in 0..n {
            for r in 0..perm[j] {
                if !perm[..j].contains(&r) {
                    free.push((r, j));
                }
            }
        }
        let mut reps = vec![matrix::permutation_matrix(&perm)];
        for &(r, j) in &free {
            reps = reps
                .into_iter()
                .flat_map(|m| {
                    elems.iter().map(move |&v| {
                        let mut m2 = m.clone();
                        m2[r][j] = v;
                        m2
                    })
                })
                .collect();
        }
        out.extend(reps);
    }
    out
}

/// Reduced word (0-based letters) of a permutation, `s_i = (i, i+1)`.
pub fn perm_word(perm: &[usize]) -> Vec<usize> {
    let mut p = perm.to_vec();
    let mut word = Vec::new();
    while let Some(i) = (0..p.len().saturating_sub(1)).find(|&i| p[i] > p[i + 1]) {
        p.swap(i, i + 1);
        word.push(i);
    }
    word.reverse();
    word
}

/// The Weyl element of type `A_{n−1}` with the given permutation.
pub fn perm_to_weyl(rs: &RootSystem, perm: &[usize]) -> WeylElement {
    rs.from_word(&perm_word(perm))
}

/// Permutation `w` with `w(j)` the image of `j`, for `w` in type `A_{n−1}`.
pub fn weyl_to_perm(rs: &RootSystem, w: &WeylElement) -> Vec<usize> {
    let n = rs.rank() + 1;
    let mut p: Vec<usize> = (0..n).collect();
    for &i in rs.reduced_word(w).iter().rev() {
        // left multiplication by s_i relabels values i and i+1
        for v in p.iter_mut() {
            if *v == i {
                *v = i + 1;
            } else if *v == i + 1 {
                *v = i;
            }
        }
    }
    p
}

/// Relative position of the flags `g1 B` and `g2 B`, as the pivot
/// permutation of `g1⁻¹ g2`.
pub fn relative_position_perm(f: &FiniteField, g1: &FqMatrix, g2: &FqMatrix) -> Vec<usize> {
    let inv = matrix::inverse(f, g1).expect("invertible flag representative");
    canonical_flag(f, &matrix::mul(f, &inv, g2)).1
}
