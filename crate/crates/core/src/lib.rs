//! Exact computations around homogeneous affine Springer fibers: root data
//! and regular elements, Moy–Prasad gradings, slope braids and their Garside
//! normal forms, point counts of braid varieties and of lattice-chain models
//! over finite fields, and graded gauge normalization in loop algebras.

pub mod arith;
pub mod rootsys;
pub mod mpgrading;
pub mod braid;
pub mod betti;
pub mod asf;
pub mod gauge;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/roots.md")]
    mod roots {}
    #[doc = include_str!("../../../book/src/grading.md")]
    mod grading {}
    #[doc = include_str!("../../../book/src/braids.md")]
    mod braids {}
    #[doc = include_str!("../../../book/src/betti.md")]
    mod betti {}
    #[doc = include_str!("../../../book/src/asf.md")]
    mod asf {}
    #[doc = include_str!("../../../book/src/gauge.md")]
    mod gauge {}
}
