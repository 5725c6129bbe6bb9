//! Midpoint-radius real intervals for sign-reliable float comparisons.

use std::cmp::Ordering;

/// A real number known to lie in `[mid - rad, mid + rad]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ball {
    pub mid: f64,
    pub rad: f64,
}

const ULP: f64 = f64::EPSILON;

impl Ball {
    pub fn new(mid: f64, rad: f64) -> Self {
        Ball { mid, rad: rad.abs() }
    }

    /// A float computed with a few roundings: radius of a handful of ulps.
    pub fn approx(mid: f64) -> Self {
        Ball::new(mid, 8.0 * ULP * mid.abs().max(1.0))
    }

    pub fn add(self, o: Ball) -> Ball {
        let mid = self.mid + o.mid;
        Ball::new(mid, self.rad + o.rad + ULP * mid.abs())
    }

    pub fn sub(self, o: Ball) -> Ball {
        self.add(Ball::new(-o.mid, o.rad))
    }

    pub fn scale(self, c: f64) -> Ball {
        let mid = self.mid * c;
        Ball::new(mid, self.rad * c.abs() + ULP * mid.abs())
    }

    pub fn lo(self) -> f64 {
        self.mid - self.rad
    }

    pub fn hi(self) -> f64 {
        self.mid + self.rad
    }

    /// Certain ordering, or `None` when the intervals overlap.
    pub fn cmp_certain(self, o: Ball) -> Option<Ordering> {
        if self.hi() < o.lo() {
            Some(Ordering::Less)
        } else if self.lo() > o.hi() {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    /// Sign of the number if the interval excludes zero.
    pub fn sign(self) -> Option<Ordering> {
        self.cmp_certain(Ball::new(0.0, 0.0))
    }
}
