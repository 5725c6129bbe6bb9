//! Braid varieties of `SL_n` (`n ≤ 3`) over finite fields: flag chains in
//! prescribed relative positions closed up by a monodromy `g`, their point
//! counts, and the monodromy and formal-monodromy classes of points.

mod count;
pub mod flags;
pub mod matrix;
mod monodromy;

pub use count::{
    count, count_m0bet, count_msh, fiber_count_by_kappa, is_point_of, points, twisted_classes,
    Constraint, CountReport, SlRealization, DEFAULT_BUDGET,
};
pub use matrix::FqMatrix;
pub use monodromy::{
    bruhat_torus_part, canonical_twisted_class, formal_monodromy, formal_monodromy_raw, monodromy,
    permutation_lift, rational_canonical_class, relative_positions, ConjugacyClass,
};

use thiserror::Error;

use crate::arith::finite_field::FieldError;
use crate::rootsys::RootSystemError;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum BettiError {
    #[error("SL_{0} is not realized; n must be 2 or 3")]
    UnsupportedRank(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Root(#[from] RootSystemError),
    #[error("braid of type {braid} cannot be realized in the group of type {group}")]
    TypeMismatch { braid: String, group: String },
    #[error("enumeration would visit about {estimated} tuples, over the budget of {budget}")]
    Budget { estimated: u128, budget: u128 },
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// A point `(B_0, …, B_n, g [, B′])`: flags given by representatives
/// `h_i` (so `B_i = h_i B h_i⁻¹`), the monodromy `g`, and optionally an
/// auxiliary flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiPoint {
    pub flags: Vec<FqMatrix>,
    pub g: FqMatrix,
    pub aux: Option<FqMatrix>,
}
