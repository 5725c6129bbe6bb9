//! Sparse `n × n` matrices over `Q[t, t⁻¹]` with the Moy–Prasad grading of
//! the standard alcove barycenter.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::arith::Q;

/// Grade of `E_{ab} t^k` in units of `1/n`: `b − a + kn`.
pub fn monomial_grade(n: usize, a: usize, b: usize, k: i64) -> i64 {
    b as i64 - a as i64 + k * n as i64
}

/// A matrix of Laurent polynomials, exact at grades `≥ floor` (all grades
/// when `floor` is `None`); terms below the floor are discarded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedLoopMatrix {
    n: usize,
    floor: Option<i64>,
    terms: BTreeMap<(usize, usize, i64), Q>,
}

impl TruncatedLoopMatrix {
    pub fn zero(n: usize) -> Self {
        TruncatedLoopMatrix { n, floor: None, terms: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for a in 0..n {
            m.add_term(a, a, 0, Q::one());
        }
        m
    }

    pub fn monomial(n: usize, a: usize, b: usize, k: i64, c: Q) -> Self {
        let mut m = Self::zero(n);
        m.add_term(a, b, k, c);
        m
    }

    /// `C = Σ E_{a,a+1} + t E_{n−1,0}`.
    pub fn companion(n: usize) -> Self {
        let mut m = Self::zero(n);
        for a in 0..n - 1 {
            m.add_term(a, a + 1, 0, Q::one());
        }
        m.add_term(n - 1, 0, 1, Q::one());
        m
    }

    /// `C^d`, homogeneous of grade `d`.
    pub fn psi(n: usize, d: usize) -> Self {
        let c = Self::companion(n);
        (0..d).fold(Self::identity(n), |acc, _| acc.mul(&c))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn floor(&self) -> Option<i64> {
        self.floor
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms `((a, b, k), c)` for `c E_{ab} t^k`.
    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize, i64), &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, a: usize, b: usize, k: i64) -> Q {
        self.terms.get(&(a, b, k)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, a: usize, b: usize, k: i64, c: Q) {
        if self.floor.is_some_and(|f| monomial_grade(self.n, a, b, k) < f) {
            return;
        }
        let e = self.terms.entry((a, b, k)).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(a, b, k));
        }
    }

    fn grade_of(&self, key: &(usize, usize, i64)) -> i64 {
        monomial_grade(self.n, key.0, key.1, key.2)
    }

    pub fn grades(&self) -> BTreeSet<i64> {
        self.terms.keys().map(|k| self.grade_of(k)).collect()
    }

    pub fn top_grade(&self) -> Option<i64> {
        self.terms.keys().map(|k| self.grade_of(k)).max()
    }

    /// The single grade of a nonzero homogeneous matrix.
    pub fn homogeneous_grade(&self) -> Option<i64> {
        let g = self.grades();
        (g.len() == 1).then(|| *g.iter().next().unwrap())
    }

    /// Projection onto grade `grade / n`.
    pub fn graded_component(&self, grade: i64) -> Self {
        TruncatedLoopMatrix {
            n: self.n,
            floor: None,
            terms: self.terms.iter().filter(|(k, _)| self.grade_of(k) == grade).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }

    /// Drops everything below `floor`.
    pub fn truncate(&self, floor: i64) -> Self {
        let floor = self.floor.map_or(floor, |f| f.max(floor));
        TruncatedLoopMatrix {
            n: self.n,
            floor: Some(floor),
            terms: self.terms.iter().filter(|(k, _)| self.grade_of(k) >= floor).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }

    fn combine_floor(a: Option<i64>, b: Option<i64>) -> Option<i64> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.max(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.floor = Self::combine_floor(self.floor, other.floor);
        for (&(a, b, k), c) in &other.terms {
            out.add_term(a, b, k, c.clone());
        }
        out.truncate_to_floor()
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self { n: self.n, floor: self.floor, terms: BTreeMap::new() };
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(k, v)| (*k, v * c)).collect();
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn truncate_to_floor(self) -> Self {
        match self.floor {
            Some(f) => self.truncate(f),
            None => self,
        }
    }

    /// Product, exact above the floor implied by the operands' floors and
    /// top grades.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        // missing terms below one operand's floor only reach grades below
        // that floor plus the other operand's top grade
        let floor = Self::combine_floor(
            self.floor.map(|f| f + other.top_grade().unwrap_or(0)),
            other.floor.map(|f| f + self.top_grade().unwrap_or(0)),
        );
        let mut out = TruncatedLoopMatrix { n, floor, terms: BTreeMap::new() };
        let mut by_row: BTreeMap<usize, Vec<(usize, i64, &Q)>> = BTreeMap::new();
        for ((a, b, k), c) in &other.terms {
            by_row.entry(*a).or_default().push((*b, *k, c));
        }
        for ((a, b, k), c) in &self.terms {
            if let Some(row) = by_row.get(b) {
                for &(j, l, c2) in row {
                    out.add_term(*a, j, k + l, c * c2);
                }
            }
        }
        out
    }

    /// `[self, other]`.
    pub fn bracket(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Trace as a Laurent polynomial `k ↦ coefficient of t^k`.
    pub fn trace(&self) -> BTreeMap<i64, Q> {
        let mut out: BTreeMap<i64, Q> = BTreeMap::new();
        for ((a, b, k), c) in &self.terms {
            if a == b {
                *out.entry(*k).or_insert_with(Q::zero) += c;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::identity(self.n), |acc, _| acc.mul(self))
    }

    /// `exp(self)` for `self` of negative top grade, kept down to `floor`.
    pub fn exp(&self, floor: i64) -> Self {
        let mut out = Self::identity(self.n).truncate(floor);
        let Some(top) = self.top_grade() else { return out };
        assert!(top < 0, "exp needs a negative top grade");
        let y = self.truncate(floor);
        let mut term = Self::identity(self.n).truncate(floor);
        let mut k = 1i64;
        loop {
            term = term.mul(&y).scale(&Q::new(1.into(), k.into())).truncate(floor);
            if term.is_zero() {
                break;
            }
            out = out.add(&term);
            k += 1;
        }
        out
    }
}

impl fmt::Display for TruncatedLoopMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|((a, b, k), c)| format!("({c}) E{a}{b} t^{k}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
