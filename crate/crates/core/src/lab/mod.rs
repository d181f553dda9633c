//! Computable witnesses around definability: bounded slices of polynomial
//! systems, zero sets, the derivative test, square witnesses and the
//! characteristic-p split.

mod frobenius;
mod hermite;
mod slice;

pub use frobenius::{frobenius_decompose, FrobeniusSplit};
pub use hermite::{
    hermite_reduce, integrate_poly, is_derivative, DerivativeCheck, HermiteReduction,
};
pub use slice::{
    enumerate_slice, polys_up_to, slice_union, zero_set, DioSystem, SliceResult, SliceUnion, Term,
    DEFAULT_MAX_CANDIDATES,
};

use crate::error::Result;
use crate::ratfun::{RatFun, SquareSemantics};

/// Membership data for the set of functions that are constant or such that
/// neither `f` nor `f + 4` is a square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonsquareReport {
    pub is_constant: bool,
    pub f_square: bool,
    pub f_plus_4_square: bool,
    pub member: bool,
}

/// Squares are taken over an algebraically closed constant field.
pub fn nonsquare_pair_check(f: &RatFun) -> Result<NonsquareReport> {
    let shifted = f + &RatFun::from_i64(f.field(), 4);
    let is_constant = f.is_constant();
    let f_square = f.is_square(SquareSemantics::Geometric)?.is_square;
    let f_plus_4_square = shifted.is_square(SquareSemantics::Geometric)?.is_square;
    Ok(NonsquareReport {
        is_constant,
        f_square,
        f_plus_4_square,
        member: is_constant || (!f_square && !f_plus_4_square),
    })
}
