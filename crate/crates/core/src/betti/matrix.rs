//! Small dense matrices over F_q.

use crate::arith::{FiniteField, FqElem};

pub type FqMatrix = Vec<Vec<FqElem>>;

pub fn identity(n: usize) -> FqMatrix {
    (0..n).map(|i| (0..n).map(|j| FqElem::from(i == j)).collect()).collect()
}

pub fn mul(f: &FiniteField, a: &FqMatrix, b: &FqMatrix) -> FqMatrix {
    let n = a.len();
    let k = b.len();
    let m = b[0].len();
    let mut c = vec![vec![0; m]; n];
    for i in 0..n {
        for l in 0..k {
            let ail = a[i][l];
            if ail == 0 {
                continue;
            }
            for j in 0..m {
                c[i][j] = f.a(c[i][j], f.m(ail, b[l][j]));
            }
        }
    }
    c
}

pub fn det(f: &FiniteField, a: &FqMatrix) -> FqElem {
    match a.len() {
        1 => a[0][0],
        2 => f.s(f.m(a[0][0], a[1][1]), f.m(a[0][1], a[1][0])),
        3 => {
            let minor = |i: usize, j: usize, k: usize, l: usize| {
                f.s(f.m(a[i][k], a[j][l]), f.m(a[i][l], a[j][k]))
            };
            let t0 = f.m(a[0][0], minor(1, 2, 1, 2));
            let t1 = f.m(a[0][1], minor(1, 2, 0, 2));
            let t2 = f.m(a[0][2], minor(1, 2, 0, 1));
            f.a(f.s(t0, t1), t2)
        }
        _ => {
            let mut m = a.clone();
            let n = m.len();
            let mut d: FqElem = 1;
            for k in 0..n {
                let Some(p) = (k..n).find(|&i| m[i][k] != 0) else { return 0 };
                if p != k {
                    m.swap(p, k);
                    d = f.n(d);
                }
                d = f.m(d, m[k][k]);
                let inv = f.i(m[k][k]);
                for i in k + 1..n {
                    let c = f.m(m[i][k], inv);
                    for j in k..n {
                        m[i][j] = f.s(m[i][j], f.m(c, m[k][j]));
                    }
                }
            }
            d
        }
    }
}

/// Inverse by Gauss–Jordan; `None` if singular.
pub fn inverse(f: &FiniteField, a: &FqMatrix) -> Option<FqMatrix> {
    let n = a.len();
    let mut m: Vec<Vec<FqElem>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| FqElem::from(i == j)));
            row
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| m[i][k] != 0)?;
        m.swap(p, k);
        let inv = f.i(m[k][k]);
        for x in m[k].iter_mut() {
            *x = f.m(*x, inv);
        }
        for i in 0..n {
            if i != k && m[i][k] != 0 {
                let c = m[i][k];
                for j in 0..2 * n {
                    m[i][j] = f.s(m[i][j], f.m(c, m[k][j]));
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn is_upper_triangular(a: &FqMatrix) -> bool {
    (0..a.len()).all(|i| (0..i).all(|j| a[i][j] == 0))
}

pub fn diagonal(a: &FqMatrix) -> Vec<FqElem> {
    (0..a.len()).map(|i| a[i][i]).collect()
}

pub fn from_diagonal(d: &[FqElem]) -> FqMatrix {
    let n = d.len();
    (0..n).map(|i| (0..n).map(|j| if i == j { d[i] } else { 0 }).collect()).collect()
}

/// `(g − 1)^n = 0`.
pub fn is_unipotent(f: &FiniteField, g: &FqMatrix) -> bool {
    let n = g.len();
    let mut x = g.clone();
    for i in 0..n {
        x[i][i] = f.s(x[i][i], 1);
    }
    let mut p = x.clone();
    for _ in 1..n {
        p = mul(f, &p, &x);
    }
    p.iter().all(|r| r.iter().all(|&v| v == 0))
}

/// Root subgroup element `1 + a E_{j,j+1}` (0-based `j`).
pub fn root_element(n: usize, j: usize, a: FqElem) -> FqMatrix {
    let mut m = identity(n);
    m[j][j + 1] = a;
    m
}

/// Lift of the simple reflection `s_j` (0-based) to `SL_n`: the permutation
/// matrix of the transposition `(j, j+1)` with the entry in row `j` negated.
pub fn simple_lift(f: &FiniteField, n: usize, j: usize) -> FqMatrix {
    let mut m = identity(n);
    m[j][j] = 0;
    m[j + 1][j + 1] = 0;
    m[j][j + 1] = f.n(1);
    m[j + 1][j] = 1;
    m
}

/// Permutation matrix `P` with `P e_j = e_{perm[j]}`.
pub fn permutation_matrix(perm: &[usize]) -> FqMatrix {
    let n = perm.len();
    let mut m = vec![vec![0; n]; n];
    for (j, &i) in perm.iter().enumerate() {
        m[i][j] = 1;
    }
    m
}

/// Upper-triangular matrices of determinant one.
pub fn borel_sl(f: &FiniteField, n: usize) -> Vec<FqMatrix> {
    let units: Vec<FqElem> = f.units().collect();
    let elems: Vec<FqElem> = f.elements().collect();
    let mut diags: Vec<Vec<FqElem>> = vec![vec![]];
    for _ in 0..n - 1 {
        diags = diags
            .into_iter()
            .flat_map(|d| units.iter().map(move |&u| [d.clone(), vec![u]].concat()))
            .collect();
    }
    let above: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for d in diags {
        let prod = d.iter().fold(1, |acc, &x| f.m(acc, x));
        let mut full = d.clone();
        full.push(f.i(prod));
        let base = from_diagonal(&full);
        let mut fills: Vec<FqMatrix> = vec![base];
        for &(i, j) in &above {
            fills = fills
                .into_iter()
                .flat_map(|m| {
                    elems.iter().map(move |&v| {
                        let mut m2 = m.clone();
                        m2[i][j] = v;
                        m2
                    })
                })
                .collect();
        }
        out.extend(fills);
    }
    out
}

/// Diagonal matrices of determinant one, as diagonals.
pub fn torus_sl(f: &FiniteField, n: usize) -> Vec<Vec<FqElem>> {
    borel_sl(f, n).into_iter().filter(|b| b == &from_diagonal(&diagonal(b))).map(|b| diagonal(&b)).collect()
}

/// `|SL_n(F_q)| = q^{n(n−1)/2} Π_{i=2}^n (q^i − 1)`.
pub fn sl_order(n: usize, q: u128) -> u128 {
    let mut o = q.pow((n * (n - 1) / 2) as u32);
    for i in 2..=n {
        o *= q.pow(i as u32) - 1;
    }
    o
}
