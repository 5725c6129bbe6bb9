//! Small finite fields F_q, q = p^k ≤ 256, with precomputed tables.

use thiserror::Error;

use super::Field;

/// An element of F_q, encoded as the integer whose base-p digits are the
/// coefficients of its polynomial representative. 0 is zero and 1 is one.
pub type FqElem = u16;

pub const MAX_Q: u32 = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u32),
    #[error("q = {0} exceeds the supported maximum {MAX_Q}")]
    TooLarge(u32),
}

#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    add: Vec<FqElem>,
    mul: Vec<FqElem>,
    neg: Vec<FqElem>,
    inv: Vec<FqElem>,
}

/// Splits `q` as `p^k`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut r = q;
    let mut k = 0;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

fn digits(x: u32, p: u32, k: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(k as usize);
    let mut x = x;
    for _ in 0..k {
        v.push(x % p);
        x /= p;
    }
    v
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of a polynomial over F_p modulo a monic polynomial.
fn poly_rem(mut a: Vec<u32>, m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    while a.len() > dm {
        let c = a.pop().unwrap();
        if c != 0 {
            let off = a.len() - dm;
            for j in 0..dm {
                a[off + j] = (a[off + j] + p * p - c * m[j] % p) % p;
            }
        }
    }
    a
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    // trial division by every monic polynomial of degree 1..=deg/2
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d as u32) {
            let mut f = digits(code, p, d as u32);
            f.push(1);
            if poly_rem(poly.to_vec(), &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    pub fn new(q: u32) -> Result<Self, FieldError> {
        if q > MAX_Q {
            return Err(FieldError::TooLarge(q));
        }
        let (p, k) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        let modulus: Vec<u32> = if k == 1 {
            vec![0, 1]
        } else {
            (0..p.pow(k))
                .map(|code| {
                    let mut f = digits(code, p, k);
                    f.push(1);
                    f
                })
                .find(|f| is_irreducible(f, p))
                .expect("an irreducible polynomial exists in every degree")
        };
        let qs = q as usize;
        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for a in 0..q {
            let da = digits(a, p, k);
            for b in 0..q {
                let db = digits(b, p, k);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&s, p) as FqElem;
                let mut prod = vec![0u32; 2 * k as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let r = if k == 1 { vec![prod[0]] } else { poly_rem(prod, &modulus, p) };
                mul[(a * q + b) as usize] = undigits(&r, p) as FqElem;
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[(a * q + b) as usize] == 0).unwrap() as FqElem)
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[(a * q + b) as usize] == 1).unwrap() as FqElem
                }
            })
            .collect();
        Ok(FiniteField { p, k, q, add, mul, neg, inv })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.k
    }

    /// All elements, zero first.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q).map(|x| x as FqElem)
    }

    /// Nonzero elements.
    pub fn units(&self) -> impl Iterator<Item = FqElem> {
        (1..self.q).map(|x| x as FqElem)
    }

    #[inline]
    pub fn a(&self, x: FqElem, y: FqElem) -> FqElem {
        self.add[x as usize * self.q as usize + y as usize]
    }

    #[inline]
    pub fn m(&self, x: FqElem, y: FqElem) -> FqElem {
        self.mul[x as usize * self.q as usize + y as usize]
    }

    #[inline]
    pub fn n(&self, x: FqElem) -> FqElem {
        self.neg[x as usize]
    }

    #[inline]
    pub fn s(&self, x: FqElem, y: FqElem) -> FqElem {
        self.a(x, self.n(y))
    }

    #[inline]
    pub fn i(&self, x: FqElem) -> FqElem {
        assert!(x != 0, "inverse of zero in F_{}", self.q);
        self.inv[x as usize]
    }

    pub fn pow(&self, x: FqElem, e: u64) -> FqElem {
        let mut r = 1;
        for _ in 0..e {
            r = self.m(r, x);
        }
        r
    }
}

impl Field for FiniteField {
    type Elem = FqElem;

    fn zero(&self) -> FqElem {
        0
    }
    fn one(&self) -> FqElem {
        1
    }
    fn is_zero(&self, a: &FqElem) -> bool {
        *a == 0
    }
    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.a(*a, *b)
    }
    fn neg(&self, a: &FqElem) -> FqElem {
        self.n(*a)
    }
    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.m(*a, *b)
    }
    fn inv(&self, a: &FqElem) -> FqElem {
        self.i(*a)
    }
    fn from_i64(&self, n: i64) -> FqElem {
        let r = n.rem_euclid(self.p as i64) as FqElem;
        r
    }
}
