use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::rational::{q, Q};
use crate::arith::{linalg, CyclotomicField, Field};

use super::system::RootSystem;
use super::weyl::WeylElement;
use super::RootSystemError;

/// Random words tried before giving up on a regular element.
const SEARCH_ATTEMPTS: usize = 20_000;
/// Coefficient draws tried for a regular vector inside an eigenspace.
const EIGVEC_ATTEMPTS: usize = 256;

/// `#{i : m | d_i} = #{i : m | d_i − 2}`.
pub fn is_regular_number(rs: &RootSystem, m: u64) -> bool {
    m >= 1 && degree_count(rs, m) == codegree_count(rs, m)
}

fn degree_count(rs: &RootSystem, m: u64) -> usize {
    rs.degrees().iter().filter(|&&d| d % m == 0).count()
}

fn codegree_count(rs: &RootSystem, m: u64) -> usize {
    rs.degrees().iter().filter(|&&d| (d - 2) % m == 0).count()
}

/// All regular numbers, ascending. Every regular number divides a degree,
/// so the search stops at the Coxeter number.
pub fn regular_numbers(rs: &RootSystem) -> Vec<u64> {
    (1..=rs.coxeter_number()).filter(|&m| is_regular_number(rs, m)).collect()
}

/// A regular element of order `m` with a regular `ζ_m`-eigenvector.
#[derive(Debug, Clone)]
pub struct RegularElement {
    pub w: WeylElement,
    /// Eigenvector in fundamental-coweight coordinates `x_j = α_j(x)`,
    /// entries in `Q(ζ_m)`.
    pub eigvec: Vec<Vec<Q>>,
    pub field: CyclotomicField,
}

/// Basis of the `ζ_m`-eigenspace of `w` on the Cartan (coweight coordinates).
fn eigenspace(field: &CyclotomicField, w: &WeylElement) -> Vec<Vec<Vec<Q>>> {
    let c = w.coweight_matrix();
    let zeta = field.zeta_pow(1);
    let r = c.len();
    let a: Vec<Vec<Vec<Q>>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let e = field.from_rational(q(c[i][j]));
                    if i == j {
                        field.sub(&e, &zeta)
                    } else {
                        e
                    }
                })
                .collect()
        })
        .collect();
    linalg::kernel(field, &a, r)
}

fn root_value(field: &CyclotomicField, root: &[i64], x: &[Vec<Q>]) -> Vec<Q> {
    root.iter().zip(x).fold(field.zero(), |acc, (&a, xj)| {
        if a == 0 {
            acc
        } else {
            field.add(&acc, &field.mul(&field.from_rational(q(a)), xj))
        }
    })
}

/// A regular eigenvector of `w` for `ζ_m`, or `None` when some root vanishes
/// on the whole eigenspace.
fn regular_eigenvector(
    rs: &RootSystem,
    field: &CyclotomicField,
    w: &WeylElement,
    rng: &mut ChaCha8Rng,
) -> Option<Vec<Vec<Q>>> {
    let basis = eigenspace(field, w);
    if basis.is_empty() {
        return None;
    }
    let roots = rs.positive_roots();
    // root values on each basis vector; a root vanishing on all of them
    // vanishes on the eigenspace
    let vals: Vec<Vec<Vec<Q>>> =
        basis.iter().map(|v| roots.iter().map(|a| root_value(field, a, v)).collect()).collect();
    if (0..roots.len()).any(|k| vals.iter().all(|vb| field.is_zero(&vb[k]))) {
        return None;
    }
    let r = rs.rank();
    for attempt in 0..EIGVEC_ATTEMPTS {
        let coeffs: Vec<i64> = if attempt == 0 {
            vec![1; basis.len()]
        } else {
            (0..basis.len()).map(|_| rng.gen_range(-4..=4)).collect()
        };
        let ok = (0..roots.len()).all(|k| {
            let v = coeffs.iter().zip(&vals).fold(field.zero(), |acc, (&c, vb)| {
                field.add(&acc, &field.mul(&field.from_rational(q(c)), &vb[k]))
            });
            !field.is_zero(&v)
        });
        if ok {
            let x = (0..r)
                .map(|j| {
                    coeffs.iter().zip(&basis).fold(field.zero(), |acc, (&c, v)| {
                        field.add(&acc, &field.mul(&field.from_rational(q(c)), &v[j]))
                    })
                })
                .collect();
            return Some(x);
        }
    }
    None
}

fn random_element(rs: &RootSystem, rng: &mut ChaCha8Rng) -> WeylElement {
    let base = 2 * rs.positive_roots().len() + 4;
    let len = rng.gen_range(base..2 * base);
    let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..rs.rank())).collect();
    rs.from_word(&word)
}

/// Finds a regular element of order `m` and a regular `ζ_m`-eigenvector,
/// deterministically from `seed`.
///
/// For `m | h` the element is a power of the Coxeter element (conjugated by a
/// seeded random element unless `seed == 0`); otherwise it is a suitable
/// power of a random element.
pub fn find_regular_element(
    rs: &RootSystem,
    m: u64,
    seed: u64,
) -> Result<RegularElement, RootSystemError> {
    if m == 0 {
        return Err(RootSystemError::NotRegular { m, criterion: "m must be positive".into() });
    }
    if !is_regular_number(rs, m) {
        return Err(RootSystemError::NotRegular {
            m,
            criterion: format!(
                "#{{i : m | d_i}} = {} but #{{i : m | d_i - 2}} = {} for degrees {:?}",
                degree_count(rs, m),
                codegree_count(rs, m),
                rs.degrees()
            ),
        });
    }
    let field = CyclotomicField::new(m as u32);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = rs.coxeter_number();

    let mut candidates: Vec<WeylElement> = Vec::new();
    if h % m == 0 {
        let units: Vec<u64> = (1..=m).filter(|j| j.gcd(&m) == 1).collect();
        let j = if seed == 0 { 1 } else { units[rng.gen_range(0..units.len())] };
        let w = rs.coxeter_element().pow(j * h / m);
        let w = if seed == 0 { w } else { w.conjugate_by(&random_element(rs, &mut rng)) };
        candidates.push(w);
    }
    for _ in 0..SEARCH_ATTEMPTS {
        let w = match candidates.pop() {
            Some(w) => w,
            None => {
                let g = random_element(rs, &mut rng);
                let k = rs.order(&g);
                if k % m != 0 {
                    continue;
                }
                g.pow(k / m)
            }
        };
        if let Some(eigvec) = regular_eigenvector(rs, &field, &w, &mut rng) {
            if rs.order(&w) != m {
                return Err(RootSystemError::Internal(format!(
                    "regular eigenvector for an element of order {} at m = {m}",
                    rs.order(&w)
                )));
            }
            return Ok(RegularElement { w, eigvec, field });
        }
    }
    Err(RootSystemError::Internal(format!(
        "no regular element of order {m} found in {SEARCH_ATTEMPTS} attempts"
    )))
}

/// A validated slope `ν = d/m` together with a regular element of order `m`
/// and a regular eigenvector.
#[derive(Debug, Clone)]
pub struct SlopeData {
    rs: RootSystem,
    d: u64,
    m: u64,
    reg: RegularElement,
    seed: u64,
}

impl SlopeData {
    pub fn new(rs: &RootSystem, d: u64, m: u64, seed: u64) -> Result<Self, RootSystemError> {
        if d == 0 || m == 0 {
            return Err(RootSystemError::InvalidSlope(format!("{d}/{m}: d and m must be positive")));
        }
        if d.gcd(&m) != 1 {
            return Err(RootSystemError::InvalidSlope(format!("{d}/{m}: d and m must be coprime")));
        }
        let reg = find_regular_element(rs, m, seed)?;
        Ok(SlopeData { rs: rs.clone(), d, m, reg, seed })
    }

    /// Parses `"d/m"` (or a bare integer `d`, meaning `m = 1`).
    pub fn parse(rs: &RootSystem, slope: &str, seed: u64) -> Result<Self, RootSystemError> {
        let (d, m) = parse_slope(slope)?;
        SlopeData::new(rs, d, m, seed)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn nu(&self) -> Q {
        Q::new((self.d as i64).into(), (self.m as i64).into())
    }

    pub fn w(&self) -> &WeylElement {
        &self.reg.w
    }

    pub fn eigvec(&self) -> &[Vec<Q>] {
        &self.reg.eigvec
    }

    pub fn field(&self) -> &CyclotomicField {
        &self.reg.field
    }

    /// `α(x)` as an element of `Q(ζ_m)`.
    pub fn root_value(&self, root: &[i64]) -> Vec<Q> {
        root_value(&self.reg.field, root, &self.reg.eigvec)
    }

    /// `#{i : m | d_i − 1}`, the dimension of the fixed space of `w`.
    pub fn fixed_space_dim(&self) -> usize {
        self.rs.degrees().iter().filter(|&&d| (d - 1) % self.m == 0).count()
    }

    /// Checks `w·x = ζ_m x` exactly.
    pub fn check_eigen_equation(&self) -> bool {
        let f = &self.reg.field;
        let c = self.reg.w.coweight_matrix();
        let zeta = f.zeta_pow(1);
        let x = &self.reg.eigvec;
        (0..c.len()).all(|i| {
            let lhs = (0..c.len()).fold(f.zero(), |acc, j| {
                f.add(&acc, &f.mul(&f.from_rational(q(c[i][j])), &x[j]))
            });
            lhs == f.mul(&zeta, &x[i])
        }) && x.iter().any(|v| !v.iter().all(Zero::is_zero))
    }
}

/// Splits `"d/m"` into positive integers.
pub fn parse_slope(s: &str) -> Result<(u64, u64), RootSystemError> {
    let bad = || RootSystemError::InvalidSlope(format!("`{s}` is not of the form d/m"));
    let (d, m) = match s.trim().split_once('/') {
        Some((d, m)) => (d.trim().parse().map_err(|_| bad())?, m.trim().parse().map_err(|_| bad())?),
        None => (s.trim().parse().map_err(|_| bad())?, 1),
    };
    Ok((d, m))
}
