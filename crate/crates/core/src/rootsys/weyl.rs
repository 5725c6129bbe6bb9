use std::hash::{Hash, Hasher};

/// An element of a Weyl group, stored as its integer matrix on the root
/// lattice in the basis of simple roots (column `j` holds `w(α_j)`), together
/// with the matrix of its inverse.
///
/// The action on the Cartan subalgebra in fundamental-coweight coordinates is
/// the inverse transpose, see [`WeylElement::coweight_matrix`].
#[derive(Debug, Clone)]
pub struct WeylElement {
    rank: usize,
    mat: Vec<i64>,
    inv: Vec<i64>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.mat.hash(state);
    }
}

fn mat_mul(n: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut c = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                c[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    c
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let mut mat = vec![0; rank * rank];
        for i in 0..rank {
            mat[i * rank + i] = 1;
        }
        WeylElement { rank, inv: mat.clone(), mat }
    }

    /// Builds an element from a root-lattice matrix and its inverse. The
    /// caller is responsible for the pair being mutually inverse.
    pub(crate) fn from_parts(rank: usize, mat: Vec<i64>, inv: Vec<i64>) -> Self {
        debug_assert_eq!(mat_mul(rank, &mat, &inv), WeylElement::identity(rank).mat);
        WeylElement { rank, mat, inv }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_identity(&self) -> bool {
        *self == WeylElement::identity(self.rank)
    }

    /// Product `self · other` (apply `other` first).
    pub fn mul(&self, other: &WeylElement) -> WeylElement {
        assert_eq!(self.rank, other.rank);
        WeylElement {
            rank: self.rank,
            mat: mat_mul(self.rank, &self.mat, &other.mat),
            inv: mat_mul(self.rank, &other.inv, &self.inv),
        }
    }

    pub fn inverse(&self) -> WeylElement {
        WeylElement { rank: self.rank, mat: self.inv.clone(), inv: self.mat.clone() }
    }

    pub fn pow(&self, k: u64) -> WeylElement {
        let mut acc = WeylElement::identity(self.rank);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `u · self · u⁻¹`.
    pub fn conjugate_by(&self, u: &WeylElement) -> WeylElement {
        u.mul(self).mul(&u.inverse())
    }

    /// Image of a root (or any lattice vector) given in simple-root
    /// coordinates.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let n = self.rank;
        (0..n).map(|i| (0..n).map(|j| self.mat[i * n + j] * v[j]).sum()).collect()
    }

    pub fn apply_inverse(&self, v: &[i64]) -> Vec<i64> {
        let n = self.rank;
        (0..n).map(|i| (0..n).map(|j| self.inv[i * n + j] * v[j]).sum()).collect()
    }

    /// Root-lattice matrix, row-major nested.
    pub fn root_matrix(&self) -> Vec<Vec<i64>> {
        self.mat.chunks(self.rank).map(|r| r.to_vec()).collect()
    }

    /// Matrix of the action on the Cartan in fundamental-coweight
    /// coordinates `x_j = α_j(x)`: `(w·x)_j = (w⁻¹α_j)(x)`.
    pub fn coweight_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        (0..n).map(|i| (0..n).map(|j| self.inv[j * n + i]).collect()).collect()
    }

    /// Action on a real point in coweight coordinates.
    pub fn act_on_point(&self, p: &[f64]) -> Vec<f64> {
        let c = self.coweight_matrix();
        c.iter().map(|row| row.iter().zip(p).map(|(&a, &x)| a as f64 * x).sum()).collect()
    }

    pub fn determinant(&self) -> i64 {
        // ±1 for a reflection group element; computed by fraction-free
        // elimination to stay exact.
        let n = self.rank;
        let mut a: Vec<Vec<i128>> =
            self.mat.chunks(n).map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
                a[i][k] = 0;
            }
            prev = a[k][k];
        }
        (sign * a[n - 1][n - 1]) as i64
    }
}
