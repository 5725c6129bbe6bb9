//! Graded gauge normalization in the loop algebra of `sl_n`: given `ψ = C^d`
//! and `ψ′` with the same characteristic polynomial agreeing with `ψ` in
//! grades `≥ d/n`, find `γ = exp(Y_1) exp(Y_2) ⋯` with `Ad(γ)ψ = ψ′` on
//! all grades down to a chosen depth.
//!
//! Grades are integers in units of `1/n`. The loop variable is `t` and the
//! induction runs towards negative grades; the same construction at
//! `τ = t⁻¹` is obtained by negating all grades.

mod loop_matrix;

pub use loop_matrix::{monomial_grade, TruncatedLoopMatrix};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{linalg, Field, Rationals, Q};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum GaugeError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("step {step}: invariant tr(ψ^{power} X) of the grade {grade}/n component is nonzero; ψ′ and ψ have different characteristic polynomials")]
    InvariantMismatch { step: usize, power: usize, grade: i64 },
    #[error("[Y, ψ] = X has no solution at grade {grade}/n")]
    Inconsistent { grade: i64 },
}

/// Homogeneous pieces of `sl_n((t))` of a given grade: the monomials
/// `E_{ab} t^k` of that grade, diagonal ones only when the grade is a
/// multiple of `n`.
fn graded_basis(n: usize, grade: i64) -> Vec<(usize, usize, i64)> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let r = grade - (b as i64 - a as i64);
            if r.rem_euclid(n as i64) == 0 {
                out.push((a, b, r / n as i64));
            }
        }
    }
    out
}

/// `dim sl_n((t))_{grade/n}`.
pub fn graded_dimension(n: usize, grade: i64) -> usize {
    let basis = graded_basis(n, grade);
    basis.len() - usize::from(grade.rem_euclid(n as i64) == 0)
}

/// `tr(ψ^{i−1} X) = 0` for `i = 1, …, n`, as Laurent polynomials; returns
/// the first failing power.
fn first_nonzero_invariant(psi: &TruncatedLoopMatrix, x: &TruncatedLoopMatrix) -> Option<usize> {
    let n = psi.n();
    let mut p = TruncatedLoopMatrix::identity(n);
    for i in 0..n {
        if !p.mul(x).trace().is_empty() {
            return Some(i);
        }
        p = p.mul(psi);
    }
    None
}

/// Solves `[Y, ψ] = X` for traceless `Y` of grade `grade(X) − grade(ψ)`,
/// returning the solution of least Euclidean norm of its coefficient
/// vector.
pub fn solve_bracket(psi: &TruncatedLoopMatrix, x: &TruncatedLoopMatrix) -> Result<TruncatedLoopMatrix, GaugeError> {
    let n = psi.n();
    let d = psi
        .homogeneous_grade()
        .ok_or_else(|| GaugeError::InvalidInput("ψ must be nonzero and homogeneous".into()))?;
    if x.is_zero() {
        return Ok(TruncatedLoopMatrix::zero(n));
    }
    let j = x
        .homogeneous_grade()
        .ok_or_else(|| GaugeError::InvalidInput("X must be homogeneous".into()))?;
    if let Some(power) = first_nonzero_invariant(psi, x) {
        return Err(GaugeError::InvariantMismatch { step: 0, power, grade: j });
    }
    solve_unchecked(psi, x, j, d)
}

fn solve_unchecked(
    psi: &TruncatedLoopMatrix,
    x: &TruncatedLoopMatrix,
    j: i64,
    d: i64,
) -> Result<TruncatedLoopMatrix, GaugeError> {
    let n = psi.n();
    let unknowns = graded_basis(n, j - d);
    let rows_idx = graded_basis(n, j);
    let f = Rationals;
    let images: Vec<TruncatedLoopMatrix> = unknowns
        .iter()
        .map(|&(a, b, k)| TruncatedLoopMatrix::monomial(n, a, b, k, Q::one()).bracket(psi))
        .collect();
    let mut mat: Vec<Vec<Q>> = rows_idx
        .iter()
        .map(|&(a, b, k)| images.iter().map(|im| im.coefficient(a, b, k)).collect())
        .collect();
    let mut rhs: Vec<Q> = rows_idx.iter().map(|&(a, b, k)| x.coefficient(a, b, k)).collect();
    // tracelessness
    mat.push(unknowns.iter().map(|&(a, b, _)| if a == b { Q::one() } else { Q::zero() }).collect());
    rhs.push(Q::zero());
    let nv = unknowns.len();
    let mut y = linalg::solve(&f, &mat, &rhs, nv).ok_or(GaugeError::Inconsistent { grade: j })?;
    // Gram–Schmidt on the kernel, then remove the kernel component
    let mut ortho: Vec<Vec<Q>> = Vec::new();
    for mut v in linalg::kernel(&f, &mat, nv) {
        for u in &ortho {
            let c = dot(&v, u) / dot(u, u);
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= &c * ui;
            }
        }
        ortho.push(v);
    }
    for u in &ortho {
        let c = dot(&y, u) / dot(u, u);
        for (yi, ui) in y.iter_mut().zip(u) {
            *yi -= &c * ui;
        }
    }
    let mut out = TruncatedLoopMatrix::zero(n);
    for (&(a, b, k), c) in unknowns.iter().zip(y) {
        if !f.is_zero(&c) {
            out.add_term(a, b, k, c);
        }
    }
    Ok(out)
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// One factor `exp(Y)` with `Y` homogeneous of the recorded grade.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeFactor {
    pub grade: i64,
    pub y: TruncatedLoopMatrix,
}

/// `γ = exp(Y_1) exp(Y_2) ⋯ exp(Y_k)`, grades of the `Y_i` strictly
/// decreasing, evaluated down to `floor`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProUnipotentElement {
    n: usize,
    floor: i64,
    factors: Vec<GaugeFactor>,
}

impl ProUnipotentElement {
    pub fn identity(n: usize, floor: i64) -> Self {
        ProUnipotentElement { n, floor, factors: Vec::new() }
    }

    pub fn from_factors(n: usize, floor: i64, factors: Vec<GaugeFactor>) -> Result<Self, GaugeError> {
        for w in factors.windows(2) {
            if w[1].grade >= w[0].grade {
                return Err(GaugeError::InvalidInput("factor grades must strictly decrease".into()));
            }
        }
        for fa in &factors {
            if fa.grade >= 0 || (!fa.y.is_zero() && fa.y.homogeneous_grade() != Some(fa.grade)) {
                return Err(GaugeError::InvalidInput(format!("factor is not homogeneous of negative grade {}", fa.grade)));
            }
        }
        Ok(ProUnipotentElement { n, floor, factors })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn floor(&self) -> i64 {
        self.floor
    }

    pub fn factors(&self) -> &[GaugeFactor] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.factors.iter().all(|f| f.y.is_zero())
    }

    fn push(&mut self, grade: i64, y: TruncatedLoopMatrix) {
        self.factors.push(GaugeFactor { grade, y });
    }

    /// `γ`, exact at grades `≥ floor`.
    pub fn evaluate(&self) -> TruncatedLoopMatrix {
        self.factors
            .iter()
            .fold(TruncatedLoopMatrix::identity(self.n).truncate(self.floor), |acc, fa| {
                acc.mul(&fa.y.exp(self.floor)).truncate(self.floor)
            })
    }

    /// `γ⁻¹ = ⋯ exp(−Y_2) exp(−Y_1)`, exact at grades `≥ floor`.
    pub fn evaluate_inverse(&self) -> TruncatedLoopMatrix {
        self.factors
            .iter()
            .rev()
            .fold(TruncatedLoopMatrix::identity(self.n).truncate(self.floor), |acc, fa| {
                acc.mul(&fa.y.neg().exp(self.floor)).truncate(self.floor)
            })
    }

    /// `Ad(γ)m = γ m γ⁻¹`, exact at grades `≥ floor + top grade of m`.
    pub fn act(&self, m: &TruncatedLoopMatrix) -> TruncatedLoopMatrix {
        self.evaluate().mul(m).mul(&self.evaluate_inverse())
    }
}

/// Finds `γ` with `Ad(γ)ψ ≡ ψ′` on all grades `≥ −depth`.
///
/// Starting from the top grade `j` of `ψ′ − ψ`, each step checks that the
/// grade-`j` part `X` of `ψ′ − Ad(γ)ψ` pairs to zero with `ψ^0, …, ψ^{n−1}`,
/// solves `[Y, ψ] = X` and replaces `γ` by `γ exp(Y)`.
pub fn gauge_to(
    psi: &TruncatedLoopMatrix,
    psi_prime: &TruncatedLoopMatrix,
    depth: i64,
) -> Result<ProUnipotentElement, GaugeError> {
    let n = psi.n();
    if psi_prime.n() != n {
        return Err(GaugeError::InvalidInput("ψ and ψ′ have different sizes".into()));
    }
    let d = psi
        .homogeneous_grade()
        .ok_or_else(|| GaugeError::InvalidInput("ψ must be nonzero and homogeneous".into()))?;
    if depth < 0 {
        return Err(GaugeError::InvalidInput("depth must be nonnegative".into()));
    }
    if psi_prime.floor().is_some_and(|f| f > -depth) {
        return Err(GaugeError::InvalidInput(format!("ψ′ is only known down to grade {:?}", psi_prime.floor())));
    }
    let target = psi_prime.truncate(-depth);
    let floor = -depth - d;
    let mut gamma = ProUnipotentElement::identity(n, floor);
    let diff = target.sub(psi);
    let Some(top) = diff.top_grade() else { return Ok(gamma) };
    if top >= d {
        return Err(GaugeError::InvalidInput(format!(
            "ψ′ − ψ has a component of grade {top}/n, not below the grade {d}/n of ψ"
        )));
    }
    for (step, j) in (-depth..=top).rev().enumerate() {
        let residual = target.sub(&gamma.act(psi));
        let x = residual.graded_component(j);
        if x.is_zero() {
            continue;
        }
        if let Some(power) = first_nonzero_invariant(psi, &x) {
            return Err(GaugeError::InvariantMismatch { step: step + 1, power, grade: j });
        }
        let y = solve_unchecked(psi, &x, j, d)?;
        gamma.push(j - d, y);
    }
    Ok(gamma)
}

/// `Ad(γ)ψ − ψ′` on grades `≥ −depth`.
pub fn residual(
    psi: &TruncatedLoopMatrix,
    psi_prime: &TruncatedLoopMatrix,
    gamma: &ProUnipotentElement,
    depth: i64,
) -> TruncatedLoopMatrix {
    gamma.act(psi).sub(psi_prime).truncate(-depth)
}

/// A random `exp(Z_1) ⋯ exp(Z_k)` with `Z_g ∈ sl_n((t))` homogeneous of
/// grade `−g` and integer coefficients in `[−2, 2]`.
pub fn random_pro_unipotent(n: usize, max_depth: i64, floor: i64, seed: u64) -> ProUnipotentElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = ProUnipotentElement::identity(n, floor);
    for g in 1..=max_depth {
        let mut z = TruncatedLoopMatrix::zero(n);
        for (a, b, k) in graded_basis(n, -g) {
            let c = Q::from_integer(rng.gen_range(-2i64..=2).into());
            if a != b {
                z.add_term(a, b, k, c);
            } else if a + 1 < n {
                z.add_term(a, a, k, c.clone());
                z.add_term(a + 1, a + 1, k, -c);
            }
        }
        if !z.is_zero() {
            out.push(-g, z);
        }
    }
    out
}

/// Coefficient list `(a, b, k, c)` of a matrix, for reports.
pub fn terms_of(m: &TruncatedLoopMatrix) -> Vec<(usize, usize, i64, String)> {
    m.terms().map(|(&(a, b, k), c)| (a, b, k, c.to_string())).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorReport {
    pub grade: i64,
    pub terms: Vec<(usize, usize, i64, String)>,
}

/// Serializable form of the factors.
pub fn factor_report(g: &ProUnipotentElement) -> Vec<FactorReport> {
    g.factors().iter().map(|f| FactorReport { grade: f.grade, terms: terms_of(&f.y) }).collect()
}
