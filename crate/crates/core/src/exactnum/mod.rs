//! Exact arithmetic in the real quadratic field Q(√3).
//!
//! Every coordinate that shows up in the three exactly solvable rotation
//! angles (π/2, 2π/3, π/3) is of the form `a + b·√3` with rational `a` and
//! `b`. Keeping the two rational parts in canonical form makes equality
//! structural, which is what period detection relies on: an orbit closes
//! exactly when the current point compares equal to the starting point.

mod parse;
mod qs3;

pub use parse::{parse_rat, ParseError};
pub use qs3::Qs3;

use num::{BigInt, BigRational, One, Signed, Zero};

/// Arbitrary precision rational, always held in lowest terms with a
/// positive denominator.
pub type Rat = BigRational;

/// Builds `numer / denom` from machine integers.
///
/// Panics when `denom` is zero.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// -1, 0 or +1.
pub(crate) fn rat_sign(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub(crate) fn rat_is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}
