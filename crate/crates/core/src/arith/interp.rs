//! Polynomial interpolation of point counts in q.

use num_traits::Zero;

use super::linalg;
use super::rational::{q, Rationals, Q};

/// Univariate polynomial over Q, coefficients lowest degree first, with no
/// trailing zeros (the zero polynomial has no coefficients).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPoly(pub Vec<Q>);

impl QPoly {
    fn trimmed(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        QPoly(c)
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, x: i64) -> Q {
        let xq = q(x);
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * &xq + c)
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.0.iter().all(|c| *c >= Q::zero())
    }

    /// Coefficients rendered as strings, lowest degree first.
    pub fn coefficient_strings(&self) -> Vec<String> {
        self.0.iter().map(|c| c.to_string()).collect()
    }
}

/// The unique polynomial of degree `< points.len()` through the given
/// `(x, y)` pairs (distinct x).
pub fn interpolate(points: &[(i64, Q)]) -> QPoly {
    let n = points.len();
    if n == 0 {
        return QPoly(vec![]);
    }
    let vander: Vec<Vec<Q>> = points
        .iter()
        .map(|(x, _)| (0..n).map(|k| q(x.pow(k as u32))).collect())
        .collect();
    let rhs: Vec<Q> = points.iter().map(|(_, y)| y.clone()).collect();
    let c = linalg::solve(&Rationals, &vander, &rhs, n).expect("distinct nodes");
    QPoly::trimmed(c)
}

/// Outcome of a polynomiality check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialFit {
    pub poly: QPoly,
    /// Every supplied point, including the held-out ones, lies on `poly`.
    pub consistent: bool,
}

/// Fits a polynomial of degree `<= max_degree` through the first
/// `max_degree + 1` points and checks it against the remaining ones.
pub fn fit_and_check(points: &[(i64, Q)], max_degree: usize) -> PolynomialFit {
    let k = (max_degree + 1).min(points.len());
    let poly = interpolate(&points[..k]);
    let consistent = points[k..].iter().all(|(x, y)| poly.eval(*x) == *y);
    PolynomialFit { poly, consistent }
}
