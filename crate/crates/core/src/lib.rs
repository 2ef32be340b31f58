//! Exact and numeric machinery for the Sheffer sequences `p_n`, `q_n` and the
//! Bernoulli, Euler and zeta-value identities built on them.
//!
//! The exact half works over big rationals; the numeric half uses MPFR
//! floats at a configurable number of decimal digits.

pub mod bernoulli_euler;
pub mod biseries;
pub mod combinatorics;
pub mod error;
pub mod identities;
pub mod moment;
pub mod poly;
pub mod quadrature;
pub mod rational;
pub mod sheffer;

pub use error::{Error, Result};
pub use poly::{IntPoly, RatPoly};
pub use rational::Rational;
