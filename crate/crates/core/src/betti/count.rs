//! Point counts of braid varieties over F_q by walking Schubert cells.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::arith::{FiniteField, FqElem, Q};
use crate::braid::BraidWord;
use crate::rootsys::{CartanType, Family, RootSystem, WeylElement};

use super::flags::{self, all_flags, perm_to_weyl, relative_position_perm, to_sl};
use super::matrix::{self, FqMatrix};
use super::monodromy::{canonical_twisted_class, formal_monodromy_raw};
use super::{BettiError, BettiPoint};

/// Default cap on the number of enumerated tuples.
pub const DEFAULT_BUDGET: u128 = 2_000_000_000;

/// `SL_n` over `F_q` with its flag variety, realizing type `A_{n−1}`.
#[derive(Debug, Clone)]
pub struct SlRealization {
    n: usize,
    field: FiniteField,
    rs: RootSystem,
    flags: Vec<FqMatrix>,
    borel: Vec<FqMatrix>,
    torus: Vec<Vec<FqElem>>,
}

impl SlRealization {
    pub fn new(n: usize, q: u32) -> Result<Self, BettiError> {
        if !(2..=3).contains(&n) {
            return Err(BettiError::UnsupportedRank(n));
        }
        let field = FiniteField::new(q)?;
        let rs = RootSystem::new(CartanType::new(Family::A, n - 1)?)?;
        let flags = all_flags(&field, n).iter().map(|h| to_sl(&field, h)).collect();
        let borel = matrix::borel_sl(&field, n);
        let torus = matrix::torus_sl(&field, n);
        Ok(SlRealization { n, field, rs, flags, borel, torus })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    /// Flag representatives of determinant one, one per flag.
    pub fn flags(&self) -> &[FqMatrix] {
        &self.flags
    }

    /// Upper-triangular elements of `SL_n(F_q)`.
    pub fn borel(&self) -> &[FqMatrix] {
        &self.borel
    }

    /// Diagonal elements of `SL_n(F_q)`.
    pub fn torus(&self) -> &[Vec<FqElem>] {
        &self.torus
    }

    pub fn group_order(&self) -> u128 {
        matrix::sl_order(self.n, self.q() as u128)
    }

    /// Relative position of two flags given by representatives.
    pub fn relative_position(&self, g1: &FqMatrix, g2: &FqMatrix) -> WeylElement {
        perm_to_weyl(&self.rs, &relative_position_perm(&self.field, g1, g2))
    }

    fn check_word(&self, b: &BraidWord) -> Result<Vec<usize>, BettiError> {
        if b.cartan_type() != self.rs.cartan_type() {
            return Err(BettiError::TypeMismatch {
                braid: b.cartan_type().to_string(),
                group: self.rs.cartan_type().to_string(),
            });
        }
        Ok(b.letters().iter().map(|l| l - 1).collect())
    }

    /// Calls `visit` with `h_0, …, h_n` for every chain starting at `h0`
    /// whose consecutive relative positions are the letters.
    fn walk(&self, h0: &FqMatrix, letters: &[usize], visit: &mut dyn FnMut(&[FqMatrix])) {
        let mut chain = vec![h0.clone()];
        self.walk_rec(letters, &mut chain, visit);
    }

    fn walk_rec(&self, letters: &[usize], chain: &mut Vec<FqMatrix>, visit: &mut dyn FnMut(&[FqMatrix])) {
        let Some((&j, rest)) = letters.split_first() else {
            visit(chain);
            return;
        };
        let sdot = matrix::simple_lift(&self.field, self.n, j);
        for a in self.field.elements() {
            let step = matrix::mul(&self.field, &matrix::root_element(self.n, j, a), &sdot);
            let next = matrix::mul(&self.field, chain.last().unwrap(), &step);
            chain.push(next);
            self.walk_rec(rest, chain, visit);
            chain.pop();
        }
    }

    /// Number of tuples the enumeration visits.
    pub fn estimate(&self, b: &BraidWord, constraint: Constraint) -> u128 {
        let per = self.flags.len() as u128
            * (self.q() as u128).pow(b.len() as u32)
            * self.borel.len() as u128;
        match constraint {
            Constraint::None => per,
            Constraint::Unipotent => per * self.flags.len() as u128,
        }
    }

    fn check_budget(&self, b: &BraidWord, constraint: Constraint, budget: u128) -> Result<(), BettiError> {
        let estimated = self.estimate(b, constraint);
        if estimated > budget {
            return Err(BettiError::Budget { estimated, budget });
        }
        Ok(())
    }

    /// Number of flags fixed by `g`.
    fn fixed_flags(&self, g: &FqMatrix) -> u128 {
        let f = &self.field;
        self.flags
            .iter()
            .filter(|h| {
                let hi = matrix::inverse(f, h).expect("invertible");
                matrix::is_upper_triangular(&matrix::mul(f, &matrix::mul(f, &hi, g), h))
            })
            .count() as u128
    }

    /// Enumerates all points `(h_0, …, h_n, g)` with multiplicity (the
    /// number of admissible auxiliary flags) and folds them per worker.
    fn enumerate<A: Send + Default>(
        &self,
        b: &BraidWord,
        constraint: Constraint,
        budget: u128,
        visit: impl Fn(&mut A, &[FqMatrix], &FqMatrix, &FqMatrix, u128) + Sync,
        merge: impl Fn(A, A) -> A + Sync + Send,
    ) -> Result<A, BettiError> {
        let letters = self.check_word(b)?;
        self.check_budget(b, constraint, budget)?;
        let f = &self.field;
        Ok(self
            .flags
            .par_iter()
            .map(|h0| {
                let mut acc = A::default();
                let h0_inv = matrix::inverse(f, h0).expect("invertible");
                self.walk(h0, &letters, &mut |chain| {
                    let hn = chain.last().unwrap();
                    for bel in &self.borel {
                        let g = matrix::mul(f, &matrix::mul(f, hn, bel), &h0_inv);
                        let weight = match constraint {
                            Constraint::None => 1,
                            Constraint::Unipotent => {
                                if !matrix::is_unipotent(f, &g) {
                                    continue;
                                }
                                self.fixed_flags(&g)
                            }
                        };
                        visit(&mut acc, chain, &g, bel, weight);
                    }
                });
                acc
            })
            .reduce(A::default, merge))
    }
}

/// Extra conditions on the monodromy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constraint {
    /// The whole braid variety with free monodromy.
    None,
    /// `g` unipotent, weighted by the number of flags `B′` containing `g`.
    Unipotent,
}

impl Constraint {
    pub fn tag(&self) -> &'static str {
        match self {
            Constraint::None => "none",
            Constraint::Unipotent => "unipotent_with_borel",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub raw: u128,
    pub group_order: u128,
    pub constraint: Constraint,
}

impl CountReport {
    /// `raw / |SL_n(F_q)|`.
    pub fn stacky(&self) -> Q {
        Q::new((self.raw as i128).into(), (self.group_order as i128).into())
    }
}

/// Points of the braid variety with free monodromy.
pub fn count_msh(real: &SlRealization, b: &BraidWord, budget: u128) -> Result<CountReport, BettiError> {
    count(real, b, Constraint::None, budget)
}

/// Points with unipotent monodromy contained in an auxiliary Borel.
pub fn count_m0bet(real: &SlRealization, b: &BraidWord, budget: u128) -> Result<CountReport, BettiError> {
    count(real, b, Constraint::Unipotent, budget)
}

pub fn count(
    real: &SlRealization,
    b: &BraidWord,
    constraint: Constraint,
    budget: u128,
) -> Result<CountReport, BettiError> {
    let raw = real.enumerate(
        b,
        constraint,
        budget,
        |acc: &mut u128, _chain, _g, _b, w| *acc += w,
        |a, b| a + b,
    )?;
    Ok(CountReport { raw, group_order: real.group_order(), constraint })
}

/// Counts split by the canonical formal-monodromy class.
pub fn fiber_count_by_kappa(
    real: &SlRealization,
    b: &BraidWord,
    constraint: Constraint,
    budget: u128,
) -> Result<BTreeMap<Vec<FqElem>, u128>, BettiError> {
    let f = &real.field;
    let failure = std::sync::Mutex::new(None);
    let map = real.enumerate(
        b,
        constraint,
        budget,
        |acc: &mut BTreeMap<Vec<FqElem>, u128>, chain, g, _b, w| {
            let p = BettiPoint { flags: chain.to_vec(), g: g.clone(), aux: None };
            match formal_monodromy_raw(f, &p) {
                Ok((tau, total)) => {
                    *acc.entry(canonical_twisted_class(f, &tau, &total, &real.torus)).or_default() += w;
                }
                Err(e) => {
                    failure.lock().unwrap().get_or_insert(e);
                }
            }
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        },
    )?;
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    Ok(map)
}

/// All canonical twisted classes for a braid (including empty fibers), so
/// that reports can list classes with count zero.
pub fn twisted_classes(real: &SlRealization, b: &BraidWord) -> Result<Vec<Vec<FqElem>>, BettiError> {
    let letters = real.check_word(b)?;
    let f = &real.field;
    let total = letters
        .iter()
        .fold(matrix::identity(real.n), |acc, &j| matrix::mul(f, &acc, &matrix::simple_lift(f, real.n, j)));
    let mut out: Vec<Vec<FqElem>> =
        real.torus.iter().map(|t| canonical_twisted_class(f, t, &total, &real.torus)).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// The points of the braid variety, for small cases (tests, examples).
pub fn points(
    real: &SlRealization,
    b: &BraidWord,
    constraint: Constraint,
    budget: u128,
) -> Result<Vec<BettiPoint>, BettiError> {
    real.enumerate(
        b,
        constraint,
        budget,
        |acc: &mut Vec<BettiPoint>, chain, g, _b, _w| {
            acc.push(BettiPoint { flags: chain.to_vec(), g: g.clone(), aux: None })
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    )
}

/// Checks the defining conditions of a point against a braid word.
pub fn is_point_of(real: &SlRealization, b: &BraidWord, p: &BettiPoint) -> bool {
    let f = &real.field;
    let Ok(letters) = real.check_word(b) else { return false };
    if p.flags.len() != letters.len() + 1 || matrix::det(f, &p.g) != 1 {
        return false;
    }
    let positions_ok = p.flags.windows(2).zip(&letters).all(|(w, &j)| {
        let perm = relative_position_perm(f, &w[0], &w[1]);
        flags::perm_word(&perm) == vec![j]
    });
    let gi = matrix::mul(f, &p.g, &p.flags[0]);
    let closes = matrix::is_upper_triangular(&matrix::mul(
        f,
        &matrix::inverse(f, p.flags.last().unwrap()).expect("invertible"),
        &gi,
    ));
    let aux_ok = match &p.aux {
        None => true,
        Some(h) => {
            let hi = matrix::inverse(f, h).expect("invertible");
            matrix::is_unipotent(f, &p.g)
                && matrix::is_upper_triangular(&matrix::mul(f, &matrix::mul(f, &hi, &p.g), h))
        }
    };
    positions_ok && closes && aux_ok
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(real: &SlRealization, s: &str) -> BraidWord {
        BraidWord::parse(real.root_system(), s).unwrap()
    }

    #[test]
    fn sl2_examples() {
        let real = SlRealization::new(2, 2).unwrap();
        let r = count_msh(&real, &word(&real, "1"), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.raw, 12);
        assert_eq!(r.stacky(), Q::from_integer(2.into()));
        let real3 = SlRealization::new(2, 3).unwrap();
        let r = count_msh(&real3, &word(&real3, ""), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.stacky(), Q::from_integer(1.into()));
    }

    #[test]
    fn slope_half_is_a_point() {
        for q in [2, 3, 5] {
            let real = SlRealization::new(2, q).unwrap();
            let r = count_m0bet(&real, &word(&real, "1"), DEFAULT_BUDGET).unwrap();
            assert_eq!(r.stacky(), Q::from_integer(1.into()), "q={q}");
        }
    }

    #[test]
    fn budget_is_enforced() {
        let real = SlRealization::new(3, 2).unwrap();
        let err = count_msh(&real, &word(&real, "1,2,1"), 10).unwrap_err();
        assert!(matches!(err, BettiError::Budget { estimated, budget: 10 } if estimated > 10));
    }

    #[test]
    fn kappa_partition_sums_to_raw() {
        let real = SlRealization::new(2, 2).unwrap();
        let b = word(&real, "1");
        let by = fiber_count_by_kappa(&real, &b, Constraint::None, DEFAULT_BUDGET).unwrap();
        assert_eq!(by.values().sum::<u128>(), count_msh(&real, &b, DEFAULT_BUDGET).unwrap().raw);
    }
}
