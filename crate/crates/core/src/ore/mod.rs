//! Iterated Ore extensions with PBW normal forms, possibly localized at
//! some generators.

mod element;
mod hom;
mod ops;
mod presentation;
mod rewrite;

use std::collections::BTreeMap;

use smallvec::SmallVec;
use thiserror::Error;

use crate::coeff::{CoeffError, RatFunc};

pub use element::{format_monomial, format_terms, OreElement};
pub use hom::Substitution;
pub use ops::{
    apply_delta, apply_sigma, apply_sigma_inv, check_sigma_delta_commutation, diamond_check, local_nilpotency_check,
    DiamondResidual,
};
pub use presentation::{Letter, OrePresentation, PresentationBuilder, Word, DEFAULT_BUDGET};
pub use rewrite::{MonomialOrder, Strategy};

/// Exponent vector of a PBW monomial.
pub type Exps = SmallVec<[i32; 8]>;
/// Normal-form terms keyed by exponent vector.
pub type Terms = BTreeMap<Exps, RatFunc>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OreError {
    #[error("generator index {index} out of range 1..={n}")]
    InvalidGenerator { index: usize, n: usize },
    #[error("negative power of non-invertible generator {generator}")]
    NegativeExponent { generator: String },
    #[error("operands belong to different algebras")]
    PresentationMismatch,
    #[error("rewrite budget of {budget} steps exceeded")]
    BudgetExceeded { budget: usize },
    #[error("cannot commute inverses of X{j} and X{i}: their relation has a derivation term")]
    UnsupportedLocalization { j: usize, i: usize },
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("delta for {generator} not nilpotent within {bound} steps")]
    NotNilpotent { generator: String, bound: usize },
    #[error("argument of sigma/delta {j} involves {generator}")]
    SupportTooHigh { j: usize, generator: String },
    #[error("element is not a unit")]
    NotInvertible,
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

#[cfg(test)]
mod tests;
