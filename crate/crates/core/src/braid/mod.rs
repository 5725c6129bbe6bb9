//! Positive braids over a Weyl group: words, Garside normal form, and the
//! braid swept out by a homogeneous slope.

mod garside;
mod slope;

pub use garside::{cyclic_shift_class_equal, lift, normal_form, GarsideNF, MAX_CYCLIC_STATES};
pub use slope::{crossing_events, default_theta0, slope_braid, CrossingEvent};

use std::fmt;

use thiserror::Error;

use crate::rootsys::{CartanType, RootSystem, RootSystemError, WeylElement};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum BraidError {
    #[error("letter {letter} is outside 1..={rank}")]
    LetterOutOfRange { letter: usize, rank: usize },
    #[error("cannot parse braid word `{0}`: expected comma-separated positive integers")]
    Parse(String),
    #[error("non-generic data: {0}; re-randomize the eigenvector (seed) or move theta0")]
    NonGeneric(String),
    #[error("cyclic-shift search exceeded {0} braids")]
    SearchBudget(usize),
    #[error(transparent)]
    Root(#[from] RootSystemError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// A positive braid word; letters are 1-based simple-reflection indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    cartan: CartanType,
    letters: Vec<usize>,
}

impl BraidWord {
    pub fn new(rs: &RootSystem, letters: Vec<usize>) -> Result<Self, BraidError> {
        let rank = rs.rank();
        if let Some(&letter) = letters.iter().find(|&&l| l == 0 || l > rank) {
            return Err(BraidError::LetterOutOfRange { letter, rank });
        }
        Ok(BraidWord { cartan: rs.cartan_type(), letters })
    }

    pub fn empty(rs: &RootSystem) -> Self {
        BraidWord { cartan: rs.cartan_type(), letters: Vec::new() }
    }

    /// Parses `"1,2,1"`; the empty string is the empty word.
    pub fn parse(rs: &RootSystem, s: &str) -> Result<Self, BraidError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(BraidWord::empty(rs));
        }
        let letters = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| BraidError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        BraidWord::new(rs, letters)
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Image in the Weyl group.
    pub fn image(&self, rs: &RootSystem) -> WeylElement {
        self.letters.iter().fold(rs.identity(), |acc, &l| acc.mul(rs.s(l - 1)))
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { cartan: self.cartan, letters }
    }

    pub fn pow(&self, k: usize) -> BraidWord {
        BraidWord { cartan: self.cartan, letters: self.letters.repeat(k) }
    }

    /// The word rotated left by `k` letters.
    pub fn rotate(&self, k: usize) -> BraidWord {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = k % letters.len();
            letters.rotate_left(k);
        }
        BraidWord { cartan: self.cartan, letters }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}
