use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Field;

pub type Q = BigRational;

/// The field of rational numbers with arbitrary precision.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Q;

    fn zero(&self) -> Q {
        Q::zero()
    }
    fn one(&self) -> Q {
        Q::one()
    }
    fn is_zero(&self, a: &Q) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn neg(&self, a: &Q) -> Q {
        -a
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn inv(&self, a: &Q) -> Q {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn from_i64(&self, n: i64) -> Q {
        Q::from_integer(BigInt::from(n))
    }
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn q_to_f64(x: &Q) -> f64 {
    // numer/denom can be huge; fall back to a quotient of truncated floats
    match (x.numer().to_f64(), x.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            let sign = if x.is_negative() { -1.0 } else { 1.0 };
            let bits = x.numer().bits().max(x.denom().bits()) as i64 - 60;
            let shift = bits.max(0) as u32;
            let n = (x.numer().abs() >> shift).to_f64().unwrap_or(f64::MAX);
            let d = (x.denom() >> shift).to_f64().unwrap_or(f64::MAX);
            sign * n / d
        }
    }
}

/// Integer value of a rational known to be integral.
pub fn q_to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}
