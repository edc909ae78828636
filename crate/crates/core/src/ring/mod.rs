//! Exact polynomial arithmetic over Q.

pub mod calculus;
pub mod linalg;
mod monomial;
mod order;
pub mod parse;
mod poly;
pub mod quasi;
#[allow(clippy::module_inception)]
mod ring;

pub use monomial::ExpVec;
pub use order::MonomialOrder;
pub use poly::{int, rat, Poly};
pub use ring::Ring;

pub type Rational = num_rational::BigRational;
