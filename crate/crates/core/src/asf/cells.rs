//! Torus-fixed points of `Fl_ψ` and the affine cells attracted to them.
//!
//! The fixed chains are the monomial ones, indexed by affine permutations
//! `f` (window notation `f(0), …, f(n−1)`, `f(i + n) = f(i) + n`,
//! `Σ f(i) = Σ i`) through `Λ_i = span{s^{f(j)} : j ≥ i}`. The cell of a
//! fixed chain is the set of chains with the same valuation sets.

use serde::Serialize;

use crate::arith::{linalg, Field, FiniteField, Rationals};

use super::lattice::monomial;
use super::{AsfError, HomogeneousElement};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AffinePermutation {
    window: Vec<i64>,
}

impl AffinePermutation {
    pub fn new(window: Vec<i64>) -> Result<Self, AsfError> {
        let n = window.len() as i64;
        if n == 0 {
            return Err(AsfError::InvalidInput("empty affine permutation".into()));
        }
        let mut residues: Vec<i64> = window.iter().map(|v| v.rem_euclid(n)).collect();
        residues.sort();
        residues.dedup();
        if residues.len() != window.len() || window.iter().sum::<i64>() != (0..n).sum::<i64>() {
            return Err(AsfError::InvalidInput(format!("{window:?} is not an affine permutation")));
        }
        Ok(AffinePermutation { window })
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn eval(&self, i: i64) -> i64 {
        let n = self.n() as i64;
        self.window[i.rem_euclid(n) as usize] + n * i.div_euclid(n)
    }

    /// Coxeter length `Σ_{i<j} |⌊(f(j) − f(i))/n⌋|`.
    pub fn length(&self) -> usize {
        let n = self.n() as i64;
        let mut l = 0;
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                l += (self.window[j] - self.window[i]).div_euclid(n).unsigned_abs() as usize;
            }
        }
        l
    }

    /// Valuations of `Λ_i` below `s^{hi}`.
    fn valuations(&self, i: usize, hi: i64) -> Vec<i64> {
        let n = self.n() as i64;
        let mut out = Vec::new();
        for j in i as i64..i as i64 + n {
            let mut v = self.eval(j);
            while v < hi {
                out.push(v);
                v += n;
            }
        }
        out.sort();
        out
    }
}

/// A fixed chain with the dimension of its attracting cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedPoint {
    pub perm: AffinePermutation,
    /// Valuation sets of `Λ_0, …, Λ_{n−1}` inside the window.
    pub valuations: Vec<Vec<i64>>,
    pub cell_dim: usize,
}

fn is_stable(psi: &HomogeneousElement, vals: &[i64], hi: i64) -> bool {
    vals.iter()
        .all(|&v| [psi.n(), psi.d()].iter().all(|&a| v + a as i64 >= hi || vals.binary_search(&(v + a as i64)).is_ok()))
}

/// `#{h ∈ L_P/(L_P ∩ ʷI_0) : Ad(h⁻¹)ψ ∈ ʷLie I_0}` for the coset of `w`.
/// The Levi is the torus here, so this is 1 when the monomial chain of
/// `w` is ψ-stable and 0 otherwise.
pub fn hessenberg_points(psi: &HomogeneousElement, w: &AffinePermutation, _f: &FiniteField) -> u128 {
    let n = psi.n();
    if w.n() != n {
        return 0;
    }
    let bound = w.window.iter().map(|v| v.abs()).max().unwrap_or(0) + (n * psi.d()) as i64 + n as i64;
    (0..n).all(|i| is_stable(psi, &w.valuations(i, bound), bound)) as u128
}

/// Tangent dimension at the fixed chain of the stratum of chains with its
/// valuation sets: unknown coefficients of each echelon vector, cut out by
/// the linearized stability and containment conditions.
fn cell_dimension(n: usize, d: usize, vals: &[Vec<i64>], hi: i64) -> usize {
    let contains = |i: usize, v: i64| v >= hi || vals[i].binary_search(&v).is_ok();
    let mut index = std::collections::HashMap::new();
    for (i, s) in vals.iter().enumerate() {
        for &v in s {
            for k in v + 1..hi {
                if !contains(i, k) {
                    let next = index.len();
                    index.insert((i, v, k), next);
                }
            }
        }
    }
    let nvars = index.len();
    let mut conditions: Vec<(usize, usize, usize)> = Vec::new();
    for i in 0..n {
        conditions.push((i, n, i));
        conditions.push((i, d, i));
    }
    for i in 0..n - 1 {
        conditions.push((i + 1, 0, i));
    }
    conditions.push((0, n, n - 1));
    let q = Rationals;
    let mut rows = Vec::new();
    for (src, a, dst) in conditions {
        let a = a as i64;
        for &v in &vals[src] {
            let w = v + a;
            if w >= hi {
                continue;
            }
            for p in w + 1..hi {
                if contains(dst, p) {
                    continue;
                }
                let mut row = vec![q.zero(); nvars];
                let mut nonzero = false;
                if let Some(&j) = index.get(&(src, v, p - a)) {
                    row[j] = q.add(&row[j], &q.one());
                    nonzero = true;
                }
                if let Some(&j) = index.get(&(dst, w, p)) {
                    row[j] = q.sub(&row[j], &q.one());
                    nonzero = true;
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
    }
    nvars - linalg::rank(&q, &rows, nvars)
}

/// All ψ-fixed monomial chains whose lattices lie in the window, with
/// their cell dimensions.
pub fn fixed_points(psi: &HomogeneousElement, window: u32) -> Result<Vec<FixedPoint>, AsfError> {
    psi.check_window(window)?;
    let n = psi.n();
    let hi = (n as i64) * window as i64;
    let mut out = Vec::new();
    let mut partial: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..n {
        partial = partial
            .into_iter()
            .flat_map(|w| (-hi..hi).map(move |v| [w.clone(), vec![v]].concat()))
            .collect();
    }
    for w in partial {
        let Ok(perm) = AffinePermutation::new(w) else { continue };
        let valuations: Vec<Vec<i64>> = (0..n).map(|i| perm.valuations(i, hi)).collect();
        if !valuations.iter().all(|s| is_stable(psi, s, hi)) {
            continue;
        }
        if valuations.iter().any(|s| monomial(n, window, s).touches_boundary()) {
            return Err(AsfError::WindowTooSmall { window });
        }
        let cell_dim = cell_dimension(n, psi.d(), &valuations, hi);
        out.push(FixedPoint { perm, valuations, cell_dim });
    }
    Ok(out)
}

/// `Σ q^{cell_dim}` over the fixed points.
pub fn count_from_cells(points: &[FixedPoint], f: &FiniteField) -> u128 {
    points.iter().map(|p| (f.q() as u128).pow(p.cell_dim as u32)).sum()
}
