//! Exact symbolic computation in the positive part of the two-parameter
//! quantum group of type G2.
pub mod cauchon;
pub mod checks;
pub mod coeff;
pub mod data;
pub mod deriv;
pub mod expr;
pub mod g2;
pub mod ore;
pub mod qtorus;

#[cfg(test)]
mod properties;

/// Environment variable overriding the rewrite step budget.
pub const BUDGET_ENV: &str = "G2_REWRITE_BUDGET";
