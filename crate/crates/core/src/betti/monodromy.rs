//! Conjugacy classes of the monodromy and the formal monodromy in the torus.

use std::fmt;

use crate::arith::{FiniteField, FqElem};

use super::flags::{canonical_flag, perm_word, relative_position_perm};
use super::matrix::{self, FqMatrix};
use super::{BettiError, BettiPoint};

type Poly = Vec<FqElem>;

fn trim(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn poly_sub(f: &FiniteField, a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| f.s(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0))).collect())
}

fn poly_add(f: &FiniteField, a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| f.a(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0))).collect())
}

fn poly_mul(f: &FiniteField, a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = f.a(c[i + j], f.m(x, y));
        }
    }
    trim(c)
}

fn poly_divrem(f: &FiniteField, a: &Poly, b: &Poly) -> (Poly, Poly) {
    let db = b.len() - 1;
    let lead_inv = f.i(b[db]);
    let mut r = a.clone();
    let mut quo = vec![0; a.len().saturating_sub(db).max(1)];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = f.m(*r.last().unwrap(), lead_inv);
        quo[k] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] = f.s(r[k + j], f.m(c, bj));
        }
        r = trim(r);
    }
    (trim(quo), r)
}

fn monic(f: &FiniteField, p: &Poly) -> Poly {
    let inv = f.i(*p.last().unwrap());
    p.iter().map(|&c| f.m(c, inv)).collect()
}

/// Conjugacy class of a matrix in `GL_n(F_q)`, recorded by its invariant
/// factors (monic, each dividing the next; the last is the minimal
/// polynomial).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConjugacyClass {
    pub invariant_factors: Vec<Vec<FqElem>>,
}

impl fmt::Display for ConjugacyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.invariant_factors.iter().map(|p| poly_string(p)).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

fn poly_string(p: &[FqElem]) -> String {
    let mut terms = Vec::new();
    for (k, &c) in p.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coeff = if c == 1 && k > 0 { String::new() } else { c.to_string() };
        terms.push(match k {
            0 => coeff,
            1 => format!("{coeff}x"),
            _ => format!("{coeff}x^{k}"),
        });
    }
    terms.join(" + ")
}

/// Invariant factors of `g` from the Smith normal form of `xI − g` over
/// `F_q[x]`.
pub fn rational_canonical_class(f: &FiniteField, g: &FqMatrix) -> ConjugacyClass {
    let n = g.len();
    let mut a: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { trim(vec![f.n(g[i][j]), 1]) } else { trim(vec![f.n(g[i][j])]) })
                .collect()
        })
        .collect();
    for k in 0..n {
        loop {
            let Some((pi, pj)) = (k..n)
                .flat_map(|i| (k..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_empty())
                .min_by_key(|&(i, j)| a[i][j].len())
            else {
                break;
            };
            a.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            let piv = a[k][k].clone();
            let mut dirty = false;
            for i in k + 1..n {
                let (qt, r) = poly_divrem(f, &a[i][k], &piv);
                for j in k..n {
                    let t = poly_mul(f, &qt, &a[k][j]);
                    a[i][j] = poly_sub(f, &a[i][j], &t);
                }
                dirty |= !r.is_empty();
            }
            for j in k + 1..n {
                let (qt, r) = poly_divrem(f, &a[k][j], &piv);
                for i in k..n {
                    let t = poly_mul(f, &qt, &a[i][k]);
                    a[i][j] = poly_sub(f, &a[i][j], &t);
                }
                dirty |= !r.is_empty();
            }
            if dirty {
                continue;
            }
            let bad = (k + 1..n)
                .flat_map(|i| (k + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !poly_divrem(f, &a[i][j], &piv).1.is_empty());
            match bad {
                Some((i, _)) => {
                    for j in k..n {
                        a[k][j] = poly_add(f, &a[k][j], &a[i][j]);
                    }
                }
                None => break,
            }
        }
    }
    let invariant_factors = (0..n)
        .map(|k| monic(f, &a[k][k]))
        .filter(|p| p.len() > 1)
        .collect();
    ConjugacyClass { invariant_factors }
}

/// Conjugacy class of the monodromy `g` of a point.
pub fn monodromy(f: &FiniteField, p: &BettiPoint) -> ConjugacyClass {
    rational_canonical_class(f, &p.g)
}

/// Lift to `SL_n` of a permutation: the product of the fixed simple lifts
/// along its reduced word.
pub fn permutation_lift(f: &FiniteField, perm: &[usize]) -> FqMatrix {
    let n = perm.len();
    perm_word(perm)
        .iter()
        .fold(matrix::identity(n), |acc, &j| matrix::mul(f, &acc, &matrix::simple_lift(f, n, j)))
}

/// Torus component `t` of `x = u t ẇ u'` (`u, u'` upper unitriangular),
/// together with `w` as a permutation.
pub fn bruhat_torus_part(
    f: &FiniteField,
    x: &FqMatrix,
) -> Result<(Vec<FqElem>, Vec<usize>), BettiError> {
    let (c, perm) = canonical_flag(f, x);
    let wdot = permutation_lift(f, &perm);
    let wdot_inv = matrix::inverse(f, &wdot).expect("permutation lift is invertible");
    let beta = matrix::mul(f, &matrix::inverse(f, &c).expect("canonical rep invertible"), x);
    if !matrix::is_upper_triangular(&beta) {
        return Err(BettiError::Internal("Bruhat factorization left a non-triangular part".into()));
    }
    let pw = matrix::permutation_matrix(&perm);
    let dw = matrix::diagonal(&matrix::mul(f, &wdot_inv, &pw));
    let delta: Vec<FqElem> = dw.iter().zip(matrix::diagonal(&beta)).map(|(&a, b)| f.m(a, b)).collect();
    let t = matrix::mul(f, &matrix::mul(f, &wdot, &matrix::from_diagonal(&delta)), &wdot_inv);
    Ok((matrix::diagonal(&t), perm))
}

/// `ẇ⁻¹ t ẇ` for a diagonal `t`.
fn twist(f: &FiniteField, wdot: &FqMatrix, t: &[FqElem]) -> Vec<FqElem> {
    let inv = matrix::inverse(f, wdot).expect("invertible");
    matrix::diagonal(&matrix::mul(f, &matrix::mul(f, &inv, &matrix::from_diagonal(t)), wdot))
}

fn inv_diag(f: &FiniteField, t: &[FqElem]) -> Vec<FqElem> {
    t.iter().map(|&x| f.i(x)).collect()
}

fn mul_diag(f: &FiniteField, a: &[FqElem], b: &[FqElem]) -> Vec<FqElem> {
    a.iter().zip(b).map(|(&x, &y)| f.m(x, y)).collect()
}

/// The formal monodromy of a point before canonicalization, and the lift
/// `W = ẇ_1 ⋯ ẇ_n` of the total relative position.
///
/// Torus frames are carried letter by letter: `d_0 = 1`,
/// `d_k = ẇ_k⁻¹ t_k⁻¹ d_{k−1} ẇ_k` with `t_k` the torus part of
/// `h_{k−1}⁻¹ h_k`, and the result is `d_n⁻¹ · diag(h_n⁻¹ g h_0)`.
pub fn formal_monodromy_raw(
    f: &FiniteField,
    p: &BettiPoint,
) -> Result<(Vec<FqElem>, FqMatrix), BettiError> {
    let n = p.g.len();
    let mut d = vec![1 as FqElem; n];
    let mut total = matrix::identity(n);
    for k in 1..p.flags.len() {
        let x = matrix::mul(
            f,
            &matrix::inverse(f, &p.flags[k - 1]).ok_or_else(|| singular(k - 1))?,
            &p.flags[k],
        );
        let (t, perm) = bruhat_torus_part(f, &x)?;
        let wdot = permutation_lift(f, &perm);
        d = twist(f, &wdot, &mul_diag(f, &inv_diag(f, &t), &d));
        total = matrix::mul(f, &total, &wdot);
    }
    let last = p.flags.last().expect("at least one flag");
    let y = matrix::mul(
        f,
        &matrix::mul(f, &matrix::inverse(f, last).ok_or_else(|| singular(p.flags.len() - 1))?, &p.g),
        &p.flags[0],
    );
    if !matrix::is_upper_triangular(&y) {
        return Err(BettiError::InvalidPoint("g does not carry the first flag to the last".into()));
    }
    Ok((mul_diag(f, &inv_diag(f, &d), &matrix::diagonal(&y)), total))
}

fn singular(k: usize) -> BettiError {
    BettiError::InvalidPoint(format!("flag representative {k} is singular"))
}

/// Canonical representative of `τ` modulo `τ ↦ τ · a · W⁻¹a⁻¹W` for `a` in
/// the diagonal torus of `SL_n(F_q)`: the lexicographically smallest
/// diagonal in the orbit.
pub fn canonical_twisted_class(
    f: &FiniteField,
    tau: &[FqElem],
    total: &FqMatrix,
    torus: &[Vec<FqElem>],
) -> Vec<FqElem> {
    torus
        .iter()
        .map(|a| mul_diag(f, &mul_diag(f, tau, a), &twist(f, total, &inv_diag(f, a))))
        .min()
        .expect("torus is nonempty")
}

/// Formal monodromy of a point, canonicalized modulo twisted conjugation.
pub fn formal_monodromy(f: &FiniteField, p: &BettiPoint) -> Result<Vec<FqElem>, BettiError> {
    let (tau, total) = formal_monodromy_raw(f, p)?;
    let torus = matrix::torus_sl(f, p.g.len());
    Ok(canonical_twisted_class(f, &tau, &total, &torus))
}

/// Relative positions of consecutive flags, as permutations.
pub fn relative_positions(f: &FiniteField, p: &BettiPoint) -> Vec<Vec<usize>> {
    p.flags.windows(2).map(|w| relative_position_perm(f, &w[0], &w[1])).collect()
}
