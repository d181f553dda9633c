//! Exact arithmetic over the rational function field k(z), with k = Q or F_p.
//!
//! The crate covers degrees and valuations of rational functions, effective
//! divisors on P^1, the elliptic surface `y^2 = x^3 + z*x + 1` (group law,
//! heights, Kodaira fibers, Shioda-Tate rank), a computable transcendental
//! entire function with rational values on Q, and brute-force witnesses for
//! Diophantine definability over polynomial rings.

pub mod analytic;
pub mod cli;
pub mod divisor;
pub mod elliptic;
pub mod error;
pub mod field;
pub mod lab;
pub mod parse;
pub mod poly;
pub mod ratfun;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use parse::{parse_poly, parse_ratfun};
pub use poly::Poly;
pub use ratfun::{ArithOp, Point, RatFun, SquareSemantics, SquareTest};
