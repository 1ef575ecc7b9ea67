//! Exact arithmetic in the field `Q(r, s)` of rational functions in the two
//! quantum parameters.

mod bipoly;
mod gcd;
mod qint;
mod ratfunc;

pub use bipoly::{BiPoly, Exp2};
pub use gcd::gcd;
pub use qint::{q_factorial, q_int};
pub use ratfunc::{arith, ArithOp, RatFunc};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at r = {r}, s = {s}")]
    VanishingDenominator { r: String, s: String },
    #[error("q-integer [n] is only defined for n >= 1")]
    ZeroQInteger,
}

/// The constant `r^2 - s^2 + r s`.
pub fn xi() -> RatFunc {
    let r = RatFunc::r();
    let s = RatFunc::s();
    &(&(&r * &r) - &(&s * &s)) + &(&r * &s)
}

/// The constant `r^2 - s^2 - r s`.
pub fn eta() -> RatFunc {
    let r = RatFunc::r();
    let s = RatFunc::s();
    &(&(&r * &r) - &(&s * &s)) - &(&r * &s)
}

/// The constant `(r^3 - s^3) / (r + s)`.
pub fn zeta() -> RatFunc {
    let r = RatFunc::r();
    let s = RatFunc::s();
    let num = &(&(&r * &r) * &r) - &(&(&s * &s) * &s);
    num.checked_div(&(&r + &s)).expect("r + s is nonzero")
}
