use std::collections::{HashSet, VecDeque};

use crate::rootsys::{RootSystem, WeylElement};

use super::{BraidError, BraidWord};

/// Largest number of distinct braids visited by [`cyclic_shift_class_equal`].
pub const MAX_CYCLIC_STATES: usize = 200_000;

/// Left normal form `Δ^k · f_1 ⋯ f_l` of a positive braid: every `f_i` is a
/// simple element other than `1` and `Δ`, and every adjacent pair is
/// left-weighted (`L(f_{i+1}) ⊆ R(f_i)`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GarsideNF {
    pub delta_power: usize,
    pub factors: Vec<WeylElement>,
}

impl GarsideNF {
    /// Total number of letters.
    pub fn length(&self, rs: &RootSystem) -> usize {
        self.delta_power * rs.positive_roots().len()
            + self.factors.iter().map(|f| rs.length(f)).sum::<usize>()
    }

    /// A word representing this normal form.
    pub fn recompose(&self, rs: &RootSystem) -> BraidWord {
        let delta = lift(rs, &rs.longest_element());
        let mut w = delta.pow(self.delta_power);
        for f in &self.factors {
            w = w.concat(&lift(rs, f));
        }
        w
    }

    /// Reduced words (1-based) of the non-Δ factors.
    pub fn factor_words(&self, rs: &RootSystem) -> Vec<Vec<usize>> {
        self.factors.iter().map(|f| lift(rs, f).letters().to_vec()).collect()
    }
}

/// Canonical positive lift of `w`: the reduced word from the left-descent
/// algorithm.
pub fn lift(rs: &RootSystem, w: &WeylElement) -> BraidWord {
    let letters = rs.reduced_word(w).into_iter().map(|i| i + 1).collect();
    BraidWord::new(rs, letters).expect("reduced word letters are in range")
}

/// Moves simple reflections from the left of `b` to the right of `a` while
/// that keeps both reduced. Returns whether anything moved.
fn slide(rs: &RootSystem, a: &mut WeylElement, b: &mut WeylElement) -> bool {
    let mut moved = false;
    while let Some(s) = (0..rs.rank())
        .find(|&s| rs.is_left_descent(b, s) && !rs.is_right_descent(a, s))
    {
        *a = a.mul(rs.s(s));
        *b = rs.s(s).mul(b);
        moved = true;
    }
    moved
}

/// Left-weighted factorization of a list of simple factors, in place.
fn left_weight(rs: &RootSystem, factors: &mut Vec<WeylElement>) {
    loop {
        let mut changed = false;
        for i in (0..factors.len().saturating_sub(1)).rev() {
            let (l, r) = factors.split_at_mut(i + 1);
            changed |= slide(rs, &mut l[i], &mut r[0]);
        }
        if !changed {
            break;
        }
    }
    factors.retain(|f| !f.is_identity());
}

pub fn normal_form(rs: &RootSystem, b: &BraidWord) -> GarsideNF {
    normal_form_of_letters(rs, b.letters().iter().map(|l| l - 1))
}

fn normal_form_of_letters(rs: &RootSystem, letters: impl Iterator<Item = usize>) -> GarsideNF {
    let mut factors: Vec<WeylElement> = Vec::new();
    for s in letters {
        factors.push(rs.s(s).clone());
        left_weight(rs, &mut factors);
    }
    let w0 = rs.longest_element();
    let delta_power = factors.iter().take_while(|f| **f == w0).count();
    factors.drain(..delta_power);
    GarsideNF { delta_power, factors }
}

/// Letters `s` (0-based) that left-divide the braid.
fn left_letters(rs: &RootSystem, nf: &GarsideNF) -> Vec<usize> {
    if nf.delta_power > 0 {
        (0..rs.rank()).collect()
    } else if let Some(f) = nf.factors.first() {
        rs.left_descents(f)
    } else {
        Vec::new()
    }
}

/// `s⁻¹ · β · s` for a letter `s` that left-divides `β`.
fn cycle_letter(rs: &RootSystem, nf: &GarsideNF, s: usize) -> GarsideNF {
    let w0 = rs.longest_element();
    let mut letters: Vec<usize> = Vec::with_capacity(nf.length(rs) + 1);
    let (first, rest_delta) = if nf.delta_power > 0 {
        (w0.clone(), nf.delta_power - 1)
    } else {
        (nf.factors[0].clone(), 0)
    };
    letters.extend(rs.reduced_word(&rs.s(s).mul(&first)));
    for _ in 0..rest_delta {
        letters.extend(rs.reduced_word(&w0));
    }
    let skip = usize::from(nf.delta_power == 0);
    for f in &nf.factors[skip..] {
        letters.extend(rs.reduced_word(f));
    }
    letters.push(s);
    normal_form_of_letters(rs, letters.into_iter())
}

/// Whether `b2` is reachable from `b1` by repeatedly moving a letter from
/// the front of some positive word for the braid to its back.
///
/// This contains every rotation of the letters of `b1`; rotations are tried
/// first, then the full closure is searched breadth-first.
pub fn cyclic_shift_class_equal(
    rs: &RootSystem,
    b1: &BraidWord,
    b2: &BraidWord,
) -> Result<bool, BraidError> {
    if b1.len() != b2.len() {
        return Ok(false);
    }
    let target = normal_form(rs, b2);
    for k in 0..b1.len().max(1) {
        if normal_form(rs, &b1.rotate(k)) == target {
            return Ok(true);
        }
    }
    let start = normal_form(rs, b1);
    let mut seen: HashSet<GarsideNF> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(nf) = queue.pop_front() {
        for s in left_letters(rs, &nf) {
            let next = cycle_letter(rs, &nf, s);
            if next == target {
                return Ok(true);
            }
            if seen.insert(next.clone()) {
                if seen.len() > MAX_CYCLIC_STATES {
                    return Err(BraidError::SearchBudget(MAX_CYCLIC_STATES));
                }
                queue.push_back(next);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> RootSystem {
        RootSystem::new("A2".parse().unwrap()).unwrap()
    }

    fn word(rs: &RootSystem, s: &str) -> BraidWord {
        BraidWord::parse(rs, s).unwrap()
    }

    #[test]
    fn braid_relation() {
        let rs = a2();
        assert_eq!(normal_form(&rs, &word(&rs, "1,2,1")), normal_form(&rs, &word(&rs, "2,1,2")));
        assert_ne!(normal_form(&rs, &word(&rs, "1,2")), normal_form(&rs, &word(&rs, "2,1")));
    }

    #[test]
    fn empty_and_delta_squared() {
        let rs = a2();
        let nf = normal_form(&rs, &BraidWord::empty(&rs));
        assert_eq!((nf.delta_power, nf.factors.len()), (0, 0));
        let nf = normal_form(&rs, &word(&rs, "1,2,1,1,2,1"));
        assert_eq!((nf.delta_power, nf.factors.len()), (2, 0));
        assert_eq!(nf.recompose(&rs).len(), 6);
    }

    #[test]
    fn lifts() {
        let rs = a2();
        assert!(lift(&rs, &rs.identity()).is_empty());
        assert_eq!(lift(&rs, &rs.longest_element()).len(), 3);
        assert_eq!(lift(&rs, rs.s(0)).letters(), &[1]);
    }

    #[test]
    fn cyclic_shifts() {
        let rs = a2();
        assert!(cyclic_shift_class_equal(&rs, &word(&rs, "1,2"), &word(&rs, "2,1")).unwrap());
        assert!(!cyclic_shift_class_equal(&rs, &word(&rs, "1"), &word(&rs, "2")).unwrap());
    }

    #[test]
    fn cycling_beyond_rotations() {
        // s2 s1 s3 and s1 s2 s3 are not rotations of each other up to
        // commutation, but cycling s2 and then s3 connects them
        let rs = RootSystem::new("A3".parse().unwrap()).unwrap();
        let a = word(&rs, "2,1,3");
        let b = word(&rs, "1,2,3");
        assert!((0..3).all(|k| normal_form(&rs, &a.rotate(k)) != normal_form(&rs, &b)));
        assert!(cyclic_shift_class_equal(&rs, &a, &b).unwrap());
    }
}
