//! Exact invariants of m-primary monomial ideals in a power series ring.
//!
//! Everything here is integer lattice combinatorics: monomial ideals are
//! staircases, lengths are lattice point counts, integral closures are
//! Newton polyhedra. The crate computes Hilbert functions and their
//! coefficients, reduction data, graded lengths of Sally modules, and a
//! classification of the resulting numerical profiles, plus a seeded
//! randomized search harness that hunts for violations of the asserted
//! inequalities.

pub mod closure;
pub mod hilbert;
pub mod ideal;
pub mod idealspec;
pub mod monomial;
pub mod report;
pub mod sally;
pub mod search;

pub mod fixtures;

pub use ideal::MonomialIdeal;
pub use monomial::Monomial;

/// Errors shared by the algebra and analysis layers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("mixed ambient dimensions: expected {expected}, found {found}")]
    MixedDimension { expected: usize, found: usize },
    #[error("ideal is not m-primary: no pure power of variable {var}")]
    NotMPrimary { var: usize },
    #[error("colon by the zero ideal")]
    ZeroDivisorIdeal,
    #[error("operation on the zero ideal requires a nonzero ideal")]
    ZeroIdeal,
    #[error("denominator ideal is not contained in the numerator ideal")]
    NotContained,
    #[error("budget of {budget} exceeded while {what}")]
    BudgetExceeded { budget: usize, what: &'static str },
    #[error("the given parameter ideal is not a reduction")]
    NotAReduction,
    #[error("expected a parameter ideal generated by pure variable powers")]
    NotParameterIdeal,
    #[error("negative Sally-module rank {rank}: e1 - e0 + len(A/I) must be nonnegative")]
    NegativeRank { rank: i128 },
    #[error("range violation: {what}")]
    RangeViolation { what: String },
    #[error("classification requires I^3 = Q I^2 and m I^2 in Q I")]
    HypothesisViolated,
    #[error("Hilbert window too small: need at least {needed} entries, have {have}")]
    InsufficientWindow { needed: usize, have: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
