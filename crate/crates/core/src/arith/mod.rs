//! Exact arithmetic used throughout the crate: a small [`Field`] abstraction
//! with three instances (the rationals, cyclotomic fields and small finite
//! fields), dense linear algebra over any of them, and univariate polynomial
//! interpolation for point-count polynomiality checks.

pub mod ball;
pub mod cyclotomic;
pub mod finite_field;
pub mod interp;
pub mod linalg;
pub mod rational;

pub use ball::Ball;
pub use cyclotomic::CyclotomicField;
pub use finite_field::{FiniteField, FqElem};
pub use rational::{Rationals, Q};

use std::fmt::Debug;

/// A field whose elements are plain values and whose operations live on a
/// (usually cheap) context object.
///
/// Elements do not carry a pointer back to their field; the same context must
/// be used for every operation on a given element.
pub trait Field {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
}

/// Greatest common divisor on plain integers.
pub fn gcd(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

/// Sorted positive divisors of `n > 0`.
pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}
