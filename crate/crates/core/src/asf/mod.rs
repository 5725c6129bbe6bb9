//! Homogeneous affine Springer fibers of `SL_n` at slope `d/n` as chains of
//! ψ-stable lattices, counted over `F_q` inside a truncation window.

mod cells;
mod lattice;

pub use cells::{count_from_cells, fixed_points, hessenberg_points, AffinePermutation, FixedPoint};
pub use lattice::{enumerate_fixed_lattices, stable_lattices, Lattice};

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::finite_field::FieldError;
use crate::arith::FiniteField;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum AsfError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("window A = {window} is too small: a stable lattice reaches its boundary; retry with a larger window")]
    WindowTooSmall { window: u32 },
}

/// `ψ = C^d` with `C` the companion matrix having 1's on the superdiagonal
/// and `t` in the lower-left corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HomogeneousElement {
    n: usize,
    d: usize,
}

impl HomogeneousElement {
    pub fn new(n: usize, d: usize) -> Result<Self, AsfError> {
        if n == 0 || d == 0 {
            return Err(AsfError::InvalidInput("n and d must be positive".into()));
        }
        if n.gcd(&d) != 1 {
            return Err(AsfError::InvalidInput(format!("gcd({n}, {d}) ≠ 1: the fiber is not of finite type")));
        }
        Ok(HomogeneousElement { n, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Smallest admissible window.
    pub fn default_window(&self) -> u32 {
        self.d as u32 + 1
    }

    fn check_window(&self, window: u32) -> Result<(), AsfError> {
        if (window as usize) < self.d {
            return Err(AsfError::InvalidInput(format!("window {window} is smaller than d = {}", self.d)));
        }
        Ok(())
    }

    /// Entries of `C^d`: `Some(k)` for `t^k`, `None` for zero.
    pub fn matrix(&self) -> Vec<Vec<Option<u32>>> {
        let n = self.n;
        let mut m = vec![vec![None; n]; n];
        for j in 0..n {
            let e = n - 1 - j + self.d;
            m[n - 1 - e % n][j] = Some((e / n) as u32);
        }
        m
    }
}

/// Chains `Λ_0 ⊋ Λ_1 ⊋ … ⊋ Λ_{n−1} ⊋ tΛ_0` of ψ-stable lattices with
/// `vol Λ_i = −i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeChain {
    pub lattices: Vec<Lattice>,
}

struct Levels {
    levels: Vec<Vec<Lattice>>,
    children: Vec<Vec<Vec<usize>>>,
}

fn levels(psi: &HomogeneousElement, f: &FiniteField, window: u32) -> Result<Levels, AsfError> {
    psi.check_window(window)?;
    let n = psi.n();
    let all = stable_lattices(psi, f, window, -(n as i64 - 1), 0);
    if all.iter().any(Lattice::touches_boundary) {
        return Err(AsfError::WindowTooSmall { window });
    }
    let mut levels: Vec<Vec<Lattice>> = vec![Vec::new(); n];
    for l in all {
        levels[(-l.volume()) as usize].push(l);
    }
    let children = (0..n.saturating_sub(1))
        .map(|i| {
            levels[i]
                .par_iter()
                .map(|a| (0..levels[i + 1].len()).filter(|&b| a.contains(f, &levels[i + 1][b])).collect())
                .collect()
        })
        .collect();
    Ok(Levels { levels, children })
}

impl Levels {
    fn walk(&self, f: &FiniteField, start: usize, visit: &mut dyn FnMut(&[usize])) {
        let mut path = vec![start];
        self.walk_rec(f, &mut path, visit);
    }

    fn walk_rec(&self, f: &FiniteField, path: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        let i = path.len() - 1;
        if i + 1 == self.levels.len() {
            let first = &self.levels[0][path[0]];
            let n = self.levels.len();
            if self.levels[i][path[i]].contains_shifted(f, first, n) {
                visit(path);
            }
            return;
        }
        for &b in &self.children[i][path[i]] {
            path.push(b);
            self.walk_rec(f, path, visit);
            path.pop();
        }
    }
}

/// `|Fl_ψ(F_q)|` computed inside the window `A`.
pub fn count_asf_chains(psi: &HomogeneousElement, f: &FiniteField, window: u32) -> Result<u128, AsfError> {
    let lv = levels(psi, f, window)?;
    Ok((0..lv.levels[0].len())
        .into_par_iter()
        .map(|a| {
            let mut c = 0u128;
            lv.walk(f, a, &mut |_| c += 1);
            c
        })
        .sum())
}

/// The chains themselves, for small cases.
pub fn asf_chains(psi: &HomogeneousElement, f: &FiniteField, window: u32) -> Result<Vec<LatticeChain>, AsfError> {
    let lv = levels(psi, f, window)?;
    let mut out = Vec::new();
    for a in 0..lv.levels[0].len() {
        lv.walk(f, a, &mut |path| {
            out.push(LatticeChain {
                lattices: path.iter().enumerate().map(|(i, &k)| lv.levels[i][k].clone()).collect(),
            })
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AsfReport {
    pub count: u128,
    pub window: u32,
    /// The count is unchanged in the window `A + 1`.
    pub stable: bool,
}

/// Counts in windows `A` and `A + 1`.
pub fn count_asf(psi: &HomogeneousElement, f: &FiniteField, window: u32) -> Result<AsfReport, AsfError> {
    let count = count_asf_chains(psi, f, window)?;
    let next = count_asf_chains(psi, f, window + 1)?;
    Ok(AsfReport { count, window, stable: count == next })
}
