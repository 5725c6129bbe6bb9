//! The Moy–Prasad grading of `g[t, t⁻¹]` at `x_m = ρ∨/m` and the dimension
//! formulas attached to a slope.
//!
//! An affine root `α + n` has grade `α(x_m) + n = ht(α)/m + n`, so the piece
//! of grade `i/m` picks, for every root with `ht(α) ≡ i (mod m)`, exactly one
//! power of `t`, plus the Cartan in grade `0`.

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::arith::rational::{q, q_frac, Q};
use crate::rootsys::{RootSystem, RootSystemError, SlopeData};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GradingError {
    #[error(transparent)]
    Root(#[from] RootSystemError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// How the eigenvalues `ζ^{d_j−1}` of `w` on the Cartan are matched with the
/// graded pieces of the centralizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CenterConvention {
    /// `dim c_{i/m} = #{j : d_j − 1 ≡ i}`.
    Plus,
    /// `dim c_{i/m} = #{j : d_j − 1 ≡ −i}`.
    Minus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MPGrading {
    pub m: u64,
    /// `x_m` in fundamental-coweight coordinates, i.e. `α_j(x_m)`.
    #[serde(skip)]
    pub x_m: Vec<Q>,
    /// `dim g_{i/m}` for `i = 0, …, m−1`.
    pub g_dims: Vec<usize>,
    /// `dim c_{i/m}` for `i = 0, …, m−1`.
    pub c_dims: Vec<usize>,
    pub convention: CenterConvention,
}

/// `dim g_{i/m}` by counting roots by height modulo `m`.
pub fn graded_dims(rs: &RootSystem, m: u64) -> Vec<usize> {
    let m = m as i64;
    let mut g = vec![0usize; m as usize];
    g[0] = rs.rank();
    for a in rs.roots() {
        g[RootSystem::height(&a).rem_euclid(m) as usize] += 1;
    }
    g
}

fn center_dims(rs: &RootSystem, m: u64, conv: CenterConvention) -> Vec<usize> {
    let mut c = vec![0usize; m as usize];
    for e in rs.exponents() {
        let i = match conv {
            CenterConvention::Plus => e % m,
            CenterConvention::Minus => (m - e % m) % m,
        };
        c[i as usize] += 1;
    }
    c
}

pub fn build_grading(sd: &SlopeData) -> Result<MPGrading, GradingError> {
    let rs = sd.root_system();
    let m = sd.m();
    let phi = rs.num_roots();
    if phi as u64 % m != 0 {
        return Err(GradingError::Internal(format!("|Φ| = {phi} is not divisible by m = {m}")));
    }
    let per = phi / m as usize;
    let g = graded_dims(rs, m);
    if g.iter().sum::<usize>() != rs.lie_algebra_dim() {
        return Err(GradingError::Internal("graded pieces do not add up to dim g".into()));
    }
    let fits = |c: &Vec<usize>| g.iter().zip(c).all(|(gi, ci)| gi.checked_sub(*ci) == Some(per));
    let (convention, c) = [CenterConvention::Plus, CenterConvention::Minus]
        .into_iter()
        .map(|conv| (conv, center_dims(rs, m, conv)))
        .find(|(_, c)| fits(c))
        .ok_or_else(|| {
            GradingError::Internal(format!(
                "{} m = {m}: no matching of w-eigenvalues with graded pieces gives \
                 dim g_i/m - dim c_i/m = {per}",
                rs.cartan_type()
            ))
        })?;
    if c[0] != sd.fixed_space_dim() || c.iter().sum::<usize>() != rs.rank() {
        return Err(GradingError::Internal(format!(
            "dim c_0 = {} but dim t^w = {}",
            c[0],
            sd.fixed_space_dim()
        )));
    }
    Ok(MPGrading {
        m,
        x_m: vec![q_frac(1, m as i64); rs.rank()],
        g_dims: g,
        c_dims: c,
        convention,
    })
}

#[allow(non_snake_case)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ModuliDims {
    pub dim_M: i64,
    pub dim_A: i64,
    pub dim_M_flat: i64,
    pub dim_t_w: i64,
}

/// `dim M = (d/m)|Φ| − r + dim t^w`, `dim A = Σ ⌊d(d_i − 1)/m⌋` and
/// `dim M♭ = dim M − 2 dim t^w`, with `dim M = 2 dim A` checked.
#[allow(non_snake_case)]
pub fn moduli_dims(sd: &SlopeData) -> Result<ModuliDims, GradingError> {
    let rs = sd.root_system();
    let (d, m) = (sd.d() as i64, sd.m() as i64);
    let r = rs.rank() as i64;
    let tw = sd.fixed_space_dim() as i64;
    let dm = q_frac(d * rs.num_roots() as i64, m) - q(r) + q(tw);
    if !dm.is_integer() {
        return Err(GradingError::Internal(format!("dim M = {dm} is not an integer")));
    }
    let dim_M = dm.to_integer().try_into().map_err(|_| GradingError::Internal("overflow".into()))?;
    let dim_A: i64 = rs.exponents().iter().map(|&e| d * e as i64 / m).sum();
    let out = ModuliDims { dim_M, dim_A, dim_M_flat: dim_M - 2 * tw, dim_t_w: tw };
    if out.dim_M != 2 * out.dim_A {
        return Err(GradingError::Internal(format!(
            "dim M = {} but dim A = {}",
            out.dim_M, out.dim_A
        )));
    }
    Ok(out)
}

/// `(Σ_i frac((d_i − 1)/m), (r − dim t^w)/2)`.
pub fn fractional_identity_check(sd: &SlopeData) -> (Q, Q) {
    let m = sd.m() as i64;
    let rs = sd.root_system();
    let lhs = rs.exponents().iter().fold(Q::zero(), |acc, &e| acc + q_frac(e as i64 % m, m));
    let rhs = q_frac(rs.rank() as i64 - sd.fixed_space_dim() as i64, 2);
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sd(t: &str, d: u64, m: u64) -> SlopeData {
        SlopeData::new(&RootSystem::new(t.parse().unwrap()).unwrap(), d, m, 0).unwrap()
    }

    #[test]
    fn a2_m3_table() {
        let g = build_grading(&sd("A2", 1, 3)).unwrap();
        assert_eq!(g.g_dims, vec![2, 3, 3]);
        assert_eq!(g.c_dims, vec![0, 1, 1]);
    }

    #[test]
    fn a1_m2_table() {
        let g = build_grading(&sd("A1", 1, 2)).unwrap();
        assert_eq!(g.g_dims, vec![1, 2]);
        assert_eq!(g.c_dims, vec![0, 1]);
    }

    #[test]
    fn trivial_grading() {
        let g = build_grading(&sd("B3", 2, 1)).unwrap();
        assert_eq!(g.g_dims, vec![21]);
        assert_eq!(g.c_dims, vec![3]);
    }

    #[test]
    fn worked_dimensions() {
        let a = moduli_dims(&sd("A1", 3, 2)).unwrap();
        assert_eq!((a.dim_M, a.dim_A), (2, 1));
        let a = moduli_dims(&sd("A1", 1, 2)).unwrap();
        assert_eq!((a.dim_M, a.dim_A), (0, 0));
        let g = moduli_dims(&sd("G2", 1, 6)).unwrap();
        assert_eq!(g.dim_M, 0);
        assert_eq!(g.dim_t_w, 0);
    }

    #[test]
    fn fractional_examples() {
        assert_eq!(fractional_identity_check(&sd("A2", 1, 3)), (q(1), q(1)));
        assert_eq!(fractional_identity_check(&sd("B2", 1, 4)), (q(1), q(1)));
        assert_eq!(fractional_identity_check(&sd("F4", 1, 1)), (q(0), q(0)));
    }
}
