//! Exact arithmetic in Q(u, v), the coefficient ring of every computation.

mod gcd;
pub mod modp;
mod motclass;
mod poly;

pub use gcd::gcd2;
pub use motclass::{gl_class, make_class, nilcone_class, ClassRepr, MotClass, TermRepr};
pub use poly::{Monomial, Poly, MAX_VARS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactRingError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed class: {0}")]
    Parse(String),
}
