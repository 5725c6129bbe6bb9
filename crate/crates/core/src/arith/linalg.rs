//! Dense Gaussian elimination over any [`Field`].

use super::Field;

/// Row-major dense matrix as nested vectors.
pub type Matrix<E> = Vec<Vec<E>>;

/// Result of reducing a matrix to reduced row echelon form.
#[derive(Debug, Clone)]
pub struct Rref<E> {
    pub rows: Matrix<E>,
    /// Column index of the leading entry of each nonzero row.
    pub pivots: Vec<usize>,
}

/// Reduced row echelon form. `ncols` is needed for empty matrices.
pub fn rref<F: Field>(f: &F, mat: &Matrix<F::Elem>, ncols: usize) -> Rref<F::Elem> {
    let mut rows: Matrix<F::Elem> = mat.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(&rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        for i in 0..rows.len() {
            if i != r && !f.is_zero(&rows[i][c]) {
                let factor = rows[i][c].clone();
                for j in 0..ncols {
                    let t = f.mul(&factor, &rows[r][j]);
                    rows[i][j] = f.sub(&rows[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    Rref { rows, pivots }
}

pub fn rank<F: Field>(f: &F, mat: &Matrix<F::Elem>, ncols: usize) -> usize {
    rref(f, mat, ncols).pivots.len()
}

/// Basis of the right kernel `{x : mat · x = 0}`.
pub fn kernel<F: Field>(f: &F, mat: &Matrix<F::Elem>, ncols: usize) -> Vec<Vec<F::Elem>> {
    let red = rref(f, mat, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !red.pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); ncols];
            v[fc] = f.one();
            for (row, &pc) in red.rows.iter().zip(&red.pivots) {
                v[pc] = f.neg(&row[fc]);
            }
            v
        })
        .collect()
}

/// Some solution of `mat · x = rhs`, or `None` when the system is
/// inconsistent. Free variables are set to zero.
pub fn solve<F: Field>(
    f: &F,
    mat: &Matrix<F::Elem>,
    rhs: &[F::Elem],
    ncols: usize,
) -> Option<Vec<F::Elem>> {
    let aug: Matrix<F::Elem> = mat
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let red = rref(f, &aug, ncols + 1);
    if red.pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![f.zero(); ncols];
    for (row, &pc) in red.rows.iter().zip(&red.pivots) {
        x[pc] = row[ncols].clone();
    }
    Some(x)
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse<F: Field>(f: &F, mat: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    let n = mat.len();
    let aug: Matrix<F::Elem> = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
            r
        })
        .collect();
    let red = rref(f, &aug, 2 * n);
    if red.pivots.len() < n || red.pivots[n - 1] != n - 1 {
        return None;
    }
    Some(red.rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    (0..k).fold(f.zero(), |acc, l| f.add(&acc, &f.mul(&a[i][l], &b[l][j])))
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec<F: Field>(f: &F, a: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y))))
        .collect()
}
