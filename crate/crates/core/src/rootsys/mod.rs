//! Root systems and Weyl groups of the irreducible crystallographic types,
//! regular numbers and regular elements, and chamber location.

mod cartan;
mod chamber;
mod regular;
mod system;
mod weyl;

pub use cartan::{CartanType, Family, MAX_CLASSICAL_RANK};
pub use chamber::chamber_of;
pub use regular::{find_regular_element, is_regular_number, regular_numbers, RegularElement, SlopeData};
pub use system::{is_negative, is_positive, RootSystem};
pub use weyl::WeylElement;

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("unknown Cartan family or type `{0}`")]
    UnknownFamily(String),
    #[error("rank {rank} is not admissible for type {family}")]
    InvalidRank { family: Family, rank: usize },
    #[error("rank {rank} for type {family} exceeds the supported maximum {MAX_CLASSICAL_RANK}")]
    RankTooLarge { family: Family, rank: usize },
    #[error("Weyl group of order {order} is larger than the enumeration limit {limit}")]
    GroupTooLarge { order: u128, limit: usize },
    #[error("m = {m} is not a regular number: {criterion}")]
    NotRegular { m: u64, criterion: String },
    #[error("invalid slope: {0}")]
    InvalidSlope(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
