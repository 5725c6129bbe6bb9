//! The cyclotomic field Q(ζ_m), ζ_m = exp(2πi/m), as Q[x]/Φ_m(x).

use num_traits::{One, Zero};

use super::linalg;
use super::rational::{q, q_to_f64, Rationals, Q};
use super::Field;

/// Q(ζ_m). Elements are coefficient vectors in the power basis
/// `1, ζ, …, ζ^{φ(m)-1}`.
#[derive(Debug, Clone)]
pub struct CyclotomicField {
    m: u32,
    /// Monic Φ_m, lowest degree first, length φ(m)+1.
    phi: Vec<i64>,
}

/// Integer polynomial exact division `num / den` (den monic). Panics if the
/// division leaves a remainder.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return vec![0];
    }
    let mut quo = vec![0i64; rem.len() - dd];
    for k in (0..quo.len()).rev() {
        let c = rem[k + dd];
        quo[k] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "non-exact cyclotomic division");
    quo
}

/// Coefficients of the m-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    assert!(m >= 1);
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

impl CyclotomicField {
    pub fn new(m: u32) -> Self {
        CyclotomicField { m, phi: cyclotomic_polynomial(m) }
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    /// Degree φ(m) of the field over Q.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    fn reduce(&self, mut c: Vec<Q>) -> Vec<Q> {
        let n = self.degree();
        while c.len() > n {
            let top = c.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let k = c.len() - n;
            for j in 0..n {
                c[k + j] -= &top * q(self.phi[j]);
            }
        }
        c.resize(n, Q::zero());
        c
    }

    /// ζ^k for any integer k.
    pub fn zeta_pow(&self, k: i64) -> Vec<Q> {
        let e = k.rem_euclid(self.m as i64) as usize;
        let mut c = vec![Q::zero(); e + 1];
        c[e] = Q::one();
        self.reduce(c)
    }

    pub fn from_rational(&self, x: Q) -> Vec<Q> {
        let mut c = vec![Q::zero(); self.degree()];
        c[0] = x;
        c
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self, a: &[Q]) -> Vec<Q> {
        let mut c = vec![Q::zero(); self.m as usize];
        for (k, ak) in a.iter().enumerate() {
            let e = (self.m as usize - k) % self.m as usize;
            c[e] += ak;
        }
        self.reduce(c)
    }

    pub fn is_real(&self, a: &[Q]) -> bool {
        self.conj(a) == a
    }

    /// Numerical value under the embedding ζ ↦ exp(2πi/m).
    pub fn to_complex(&self, a: &[Q]) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, ak) in a.iter().enumerate() {
            if ak.is_zero() {
                continue;
            }
            let t = 2.0 * std::f64::consts::PI * k as f64 / self.m as f64;
            let v = q_to_f64(ak);
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }

    fn mul_matrix(&self, a: &[Q]) -> Vec<Vec<Q>> {
        // column j = a * ζ^j
        let n = self.degree();
        let cols: Vec<Vec<Q>> = (0..n).map(|j| self.mul(&a.to_vec(), &self.zeta_pow(j as i64))).collect();
        (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
    }
}

impl Field for CyclotomicField {
    type Elem = Vec<Q>;

    fn zero(&self) -> Vec<Q> {
        vec![Q::zero(); self.degree()]
    }
    fn one(&self) -> Vec<Q> {
        self.from_rational(Q::one())
    }
    fn is_zero(&self, a: &Vec<Q>) -> bool {
        a.iter().all(|c| c.is_zero())
    }
    fn add(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn neg(&self, a: &Vec<Q>) -> Vec<Q> {
        a.iter().map(|x| -x).collect()
    }
    fn mul(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        let mut c = vec![Q::zero(); a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] += x * y;
                }
            }
        }
        self.reduce(c)
    }
    fn inv(&self, a: &Vec<Q>) -> Vec<Q> {
        assert!(!self.is_zero(a), "inverse of zero");
        let m = self.mul_matrix(a);
        let one = self.one();
        linalg::solve(&Rationals, &m, &one, self.degree()).expect("field element is invertible")
    }
    fn from_i64(&self, n: i64) -> Vec<Q> {
        self.from_rational(q(n))
    }
}
