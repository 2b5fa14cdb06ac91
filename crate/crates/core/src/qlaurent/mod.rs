//! Exact arithmetic in Z[q, q^{-1}] ⊂ Q(q): Laurent polynomials, canonical
//! rational functions, q-analogs, and evaluation at roots of unity.

mod cyclo;
pub(crate) mod dense;
mod laurent;
mod parse;
mod qnumbers;
mod ratfunc;

pub use cyclo::{
    cyclotomic, cyclotomic_factors, euler_phi, eval_at_root_of_unity, is_regular_at,
    CycloElement,
};
pub use laurent::LaurentPoly;
pub use parse::parse_ratfunc;
pub use qnumbers::{paren_q, q_binom, q_diff, q_factorial, q_int};
pub use ratfunc::RatFunc;

use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("q-binomial [{m} choose {n}] requires n <= m")]
    BinomialRange { m: u32, n: u32 },
    #[error("pole at q = 1: denominator {denominator} has the factor (q - 1)^{multiplicity}")]
    PoleAtOne { denominator: String, multiplicity: u32 },
    #[error("pole at a primitive {order}-th root of unity: Φ_{order} divides {denominator}")]
    PoleAtRootOfUnity { order: u64, denominator: String },
    #[error("root of unity order must be positive")]
    BadOrder,
    #[error("cannot parse {input:?} at position {position}: {message}")]
    Parse {
        input: String,
        position: usize,
        message: String,
    },
}

/// `f(1)` for a rational function without a pole at 1.
pub fn specialize_q1(f: &RatFunc) -> Result<BigRational, QError> {
    f.specialize_q1()
}
