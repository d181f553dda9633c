//! Effective divisors on P^1 and the membership predicates built on them.
//!
//! A finite place is stored as a monic squarefree "block" polynomial that
//! stands for all of its roots over the algebraic closure at once; distinct
//! blocks are kept pairwise coprime. Every predicate below only needs
//! multiplicities and geometric point counts, so nothing is ever factored.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::parse::parse_poly;
use crate::poly::Poly;
use crate::ratfun::{Point, RatFun};

/// Finite blocks sort before infinity, blocks by degree then coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    FiniteBlock(Poly),
    Infinity,
}

impl Place {
    pub fn block(poly: Poly) -> Result<Place> {
        if poly.is_constant() {
            return Err(Error::Invalid(format!("block {poly} has degree < 1")));
        }
        if !poly.is_monic() {
            return Err(Error::Invalid(format!("block {poly} is not monic")));
        }
        if !poly.gcd(&poly.derivative())?.is_one() {
            return Err(Error::Invalid(format!("block {poly} is not squarefree")));
        }
        Ok(Place::FiniteBlock(poly))
    }

    /// Number of geometric points the place stands for.
    pub fn point_count(&self) -> u64 {
        match self {
            Place::FiniteBlock(b) => b.deg0() as u64,
            Place::Infinity => 1,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::FiniteBlock(b) => write!(f, "{b}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Divisor {
    entries: BTreeMap<Place, u64>,
}

/// One entry of the JSON form of a divisor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorEntry {
    pub place: String,
    pub mult: u64,
}

impl Divisor {
    pub fn empty() -> Divisor {
        Divisor::default()
    }

    pub fn infinity(mult: u64) -> Divisor {
        let mut d = Divisor::empty();
        if mult > 0 {
            d.entries.insert(Place::Infinity, mult);
        }
        d
    }

    /// `mult * (z - a)`.
    pub fn point(field: Field, a: &Scalar, mult: u64) -> Divisor {
        Divisor::from_parts(vec![(Poly::linear_root(field, a), mult)], 0)
            .expect("linear blocks are valid")
    }

    /// Builds a divisor from arbitrary (not necessarily coprime) monic
    /// squarefree blocks; overlapping blocks are split along their gcds.
    pub fn from_parts(blocks: Vec<(Poly, u64)>, inf_mult: u64) -> Result<Divisor> {
        for (b, _) in &blocks {
            Place::block(b.clone())?;
        }
        let mut d = Divisor::infinity(inf_mult);
        for (b, m) in refine(blocks) {
            d.entries.insert(Place::FiniteBlock(b), m);
        }
        Ok(d)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Place, u64)> {
        self.entries.iter().map(|(p, m)| (p, *m))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut blocks = Vec::new();
        let mut inf = 0;
        for (p, m) in self.entries().chain(other.entries()) {
            match p {
                Place::FiniteBlock(b) => blocks.push((b.clone(), m)),
                Place::Infinity => inf += m,
            }
        }
        let mut d = Divisor::infinity(inf);
        for (b, m) in refine(blocks) {
            d.entries.insert(Place::FiniteBlock(b), m);
        }
        d
    }

    /// `k * E`.
    pub fn scale(&self, k: u64) -> Divisor {
        if k == 0 {
            return Divisor::empty();
        }
        Divisor {
            entries: self
                .entries
                .iter()
                .map(|(p, m)| (p.clone(), m * k))
                .collect(),
        }
    }

    /// Sum of multiplicities weighted by block degree.
    pub fn geometric_degree(&self) -> u64 {
        self.entries().map(|(p, m)| m * p.point_count()).sum()
    }

    /// Number of distinct geometric points in the support.
    pub fn support_point_count(&self) -> u64 {
        self.entries().map(|(p, _)| p.point_count()).sum()
    }

    pub fn mult_at(&self, point: &Point) -> u64 {
        match point {
            Point::Infinity => self.entries.get(&Place::Infinity).copied().unwrap_or(0),
            Point::Finite(a) => self.finite_block_containing(a).map_or(0, |(_, m)| m),
        }
    }

    fn finite_block_containing(&self, a: &Scalar) -> Option<(&Poly, u64)> {
        self.entries.iter().find_map(|(p, m)| match p {
            Place::FiniteBlock(b) => {
                let a = b.field().element(a.clone()).ok()?;
                b.eval(&a).is_zero().then_some((b, *m))
            }
            Place::Infinity => None,
        })
    }

    /// Removes one base-field point (with its full multiplicity).
    pub fn remove_point(&self, point: &Point) -> Divisor {
        let mut out = self.clone();
        match point {
            Point::Infinity => {
                out.entries.remove(&Place::Infinity);
            }
            Point::Finite(a) => {
                if let Some((b, m)) = self.finite_block_containing(a) {
                    let b = b.clone();
                    out.entries.remove(&Place::FiniteBlock(b.clone()));
                    let a = b
                        .field()
                        .element(a.clone())
                        .expect("root of b lies in its field");
                    let rest = b.exact_div(&Poly::linear_root(b.field(), &a));
                    if !rest.is_constant() {
                        out.entries.insert(Place::FiniteBlock(rest), m);
                    }
                }
            }
        }
        out
    }

    pub fn to_entries(&self) -> Vec<DivisorEntry> {
        self.entries()
            .map(|(p, m)| DivisorEntry {
                place: p.to_string(),
                mult: m,
            })
            .collect()
    }

    pub fn from_entries(entries: &[DivisorEntry], field: Field) -> Result<Divisor> {
        let mut blocks = Vec::new();
        let mut inf = 0;
        for e in entries {
            if e.mult == 0 {
                return Err(Error::Invalid(
                    "divisor multiplicities must be positive".into(),
                ));
            }
            if e.place.trim() == "inf" {
                inf += e.mult;
            } else {
                blocks.push((parse_poly(&e.place, field)?, e.mult));
            }
        }
        Divisor::from_parts(blocks, inf)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .entries()
            .map(|(p, m)| match p {
                Place::Infinity => format!("{m}*[inf]"),
                Place::FiniteBlock(b) => format!("{m}*[{b}]"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

// Splits overlapping blocks into a pairwise coprime family.
fn refine(mut pending: Vec<(Poly, u64)>) -> Vec<(Poly, u64)> {
    let mut done: Vec<(Poly, u64)> = Vec::new();
    'next: while let Some((b, m)) = pending.pop() {
        if b.is_constant() || m == 0 {
            continue;
        }
        for idx in 0..done.len() {
            let g = done[idx].0.gcd(&b).expect("blocks share a field");
            if g.is_one() {
                continue;
            }
            let (e, n) = done.swap_remove(idx);
            let e_rest = e.exact_div(&g);
            if !e_rest.is_constant() {
                done.push((e_rest, n));
            }
            pending.push((b.exact_div(&g), m));
            done.push((g, n + m));
            continue 'next;
        }
        done.push((b, m));
    }
    done
}

fn squarefree_blocks(p: &Poly) -> Result<Vec<(Poly, u64)>> {
    Ok(p.squarefree_decomposition()?
        .into_iter()
        .map(|(s, i)| (s, i as u64))
        .collect())
}

/// Divisor of poles of a nonzero rational function.
pub fn pole_divisor(f: &RatFun) -> Result<Divisor> {
    if f.is_zero() {
        return Err(Error::domain("pole divisor of the zero function"));
    }
    let inf = f.num().deg0().saturating_sub(f.den().deg0()) as u64;
    Divisor::from_parts(squarefree_blocks(f.den())?, inf)
}

/// Divisor of zeros of a nonzero rational function.
pub fn zero_divisor(f: &RatFun) -> Result<Divisor> {
    if f.is_zero() {
        return Err(Error::domain("zero divisor of the zero function"));
    }
    let inf = f.den().deg0().saturating_sub(f.num().deg0()) as u64;
    Divisor::from_parts(squarefree_blocks(f.num())?, inf)
}

/// At most `n` distinct geometric poles.
pub fn pn_member(f: &RatFun, n: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    Ok(pole_divisor(f)?.support_point_count() <= n)
}

/// `deg q <= (1 - eps) * deg p` for `f = p/q`, with `0 < eps <= 1`.
pub fn veps_member(f: &RatFun, eps: &BigRational) -> Result<bool> {
    if !(eps > &BigRational::zero() && eps <= &BigRational::one()) {
        return Err(Error::Invalid(format!("epsilon {eps} outside (0, 1]")));
    }
    if f.is_zero() {
        return Err(Error::domain("V_eps consists of nonzero functions"));
    }
    let dp = BigInt::from(f.num().deg0());
    let dq = BigInt::from(f.den().deg0());
    Ok(dq * eps.denom() <= (eps.denom() - eps.numer()) * dp)
}

/// A pole-order threshold: a positive integer or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ell {
    Finite(u64),
    Infinite,
}

impl std::str::FromStr for Ell {
    type Err = Error;
    fn from_str(s: &str) -> Result<Ell> {
        match s.trim() {
            "inf" | "infinity" => Ok(Ell::Infinite),
            t => match t.parse::<u64>() {
                Ok(l) if l >= 1 => Ok(Ell::Finite(l)),
                _ => Err(Error::Invalid(format!(
                    "l must be a positive integer or inf, got {t:?}"
                ))),
            },
        }
    }
}

/// Every pole outside `exceptions` has order at least `ell`.
///
/// Exceptional points must be base-field points or infinity.
pub fn campana_member(f: &RatFun, exceptions: &[Point], ell: Ell) -> Result<bool> {
    if ell == Ell::Finite(0) {
        return Err(Error::Invalid("l must be at least 1".into()));
    }
    let mut poles = pole_divisor(f)?;
    for p in exceptions {
        poles = poles.remove_point(p);
    }
    Ok(match ell {
        Ell::Infinite => poles.is_empty(),
        Ell::Finite(l) => poles.entries().all(|(_, m)| m >= l),
    })
}

/// Membership in `{E >= 0 : deg E = ell, #supp E <= n}`.
pub fn y_set_member(e: &Divisor, n: u64, ell: u64) -> bool {
    e.geometric_degree() == ell && e.support_point_count() <= n
}

/// Membership in `{E >= 0 : deg E = ell, mult_inf(E) >= eps * ell}`.
pub fn z_set_member(e: &Divisor, eps: &BigRational, ell: u64) -> bool {
    let mult = BigInt::from(e.mult_at(&Point::Infinity));
    e.geometric_degree() == ell && mult * eps.denom() >= eps.numer() * BigInt::from(ell)
}
