//! An entire function `f = sum_n P_n(z) / ((2n)! A_n)` with
//! `P_n(z) = (q_1 - z^2) ... (q_n - z^2)`, where `q_1, q_2, ...` lists every
//! rational square exactly once.
//!
//! The squares are `q_1 = 0` followed by the squares of the Calkin-Wilf
//! sequence `1, 1/2, 2, 1/3, 3/2, ...`. Because `q_m = a^2` for some `m`,
//! every term past `m - 1` vanishes at `a` and `f(a)` is a finite rational sum.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::format_rational;

/// Largest number of terms [`eval_exact`] will sum.
pub const DEFAULT_TERM_LIMIT: u64 = 512;

/// Terms beyond `N/2` included by [`series_of_g`].
pub const SERIES_EXTRA_TERMS: usize = 4;

/// The `i`-th positive rational of the Calkin-Wilf sequence, `i >= 1`.
///
/// The binary digits of `i` after the leading one trace a path from the root
/// `1/1`: a zero goes to `a/(a+b)`, a one to `(a+b)/b`.
pub fn calkin_wilf(i: &BigUint) -> Result<BigRational> {
    if i.is_zero() {
        return Err(Error::domain("Calkin-Wilf index starts at 1"));
    }
    let (mut a, mut b) = (BigInt::one(), BigInt::one());
    for bit in (0..i.bits() - 1).rev() {
        if i.bit(bit) {
            a += &b;
        } else {
            b += &a;
        }
    }
    Ok(BigRational::new(a, b))
}

/// Position of a positive rational in the Calkin-Wilf sequence.
pub fn calkin_wilf_index(r: &BigRational) -> Result<BigUint> {
    if !r.is_positive() {
        return Err(Error::domain("Calkin-Wilf index needs a positive rational"));
    }
    let (mut a, mut b) = (r.numer().clone(), r.denom().clone());
    let mut index = BigUint::zero();
    let mut depth = 0u64;
    // climb to the root one run of equal steps at a time
    while a != b {
        if a > b {
            let run = (&a - 1u32) / &b;
            a -= &run * &b;
            let k = run.to_u64().expect("run length fits u64");
            index += ((BigUint::one() << k) - 1u32) << depth;
            depth += k;
        } else {
            let run = (&b - 1u32) / &a;
            b -= &run * &a;
            depth += run.to_u64().expect("run length fits u64");
        }
    }
    Ok(index + (BigUint::one() << depth))
}

/// `q_n`: `0` for `n = 1`, else the square of the `(n-1)`-th Calkin-Wilf
/// rational.
pub fn q_n(n: &BigUint) -> Result<BigRational> {
    if n.is_zero() {
        return Err(Error::domain("square enumeration starts at n = 1"));
    }
    if n.is_one() {
        return Ok(BigRational::zero());
    }
    let r = calkin_wilf(&(n - 1u32))?;
    Ok(&r * &r)
}

/// The unique `m` with `q_m = a^2`.
pub fn square_index(a: &BigRational) -> BigUint {
    if a.is_zero() {
        return BigUint::one();
    }
    calkin_wilf_index(&a.abs()).expect("nonzero") + 1u32
}

/// Walks `n = 1, 2, ...` yielding `q_n`, `A_n` and `(2n)!` incrementally.
#[derive(Clone, Debug)]
pub struct Coefficients {
    n: u64,
    next_root: BigRational,
    product: BigRational,
    factorial: BigInt,
}

/// One step of [`Coefficients`].
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientRow {
    pub n: u64,
    pub q: BigRational,
    pub a_bound: BigInt,
    pub factorial: BigInt,
}

impl Coefficients {
    pub fn new() -> Coefficients {
        Coefficients {
            n: 0,
            next_root: BigRational::one(),
            product: BigRational::one(),
            factorial: BigInt::one(),
        }
    }
}

impl Default for Coefficients {
    fn default() -> Self {
        Coefficients::new()
    }
}

impl Iterator for Coefficients {
    type Item = CoefficientRow;

    fn next(&mut self) -> Option<CoefficientRow> {
        self.n += 1;
        let n = self.n;
        let q = if n == 1 {
            BigRational::zero()
        } else {
            let r = self.next_root.clone();
            // Calkin-Wilf successor: 1 / (2 floor(x) - x + 1)
            let two_floor = BigRational::from_integer(r.floor().to_integer() * 2);
            self.next_root = (two_floor - &r + BigRational::one()).recip();
            &r * &r
        };
        self.product *= &q + BigRational::one();
        self.factorial *= BigInt::from(2 * n - 1) * BigInt::from(2 * n);
        Some(CoefficientRow {
            n,
            a_bound: ceil(&self.product) + 1,
            q,
            factorial: self.factorial.clone(),
        })
    }
}

fn ceil(r: &BigRational) -> BigInt {
    r.ceil().to_integer()
}

/// `A_n = 1 + ceil(prod_{i <= n} (q_i + 1))`.
pub fn a_bound(n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::domain("A_n is defined for n >= 1"));
    }
    Ok(Coefficients::new()
        .nth((n - 1) as usize)
        .expect("unbounded")
        .a_bound)
}

/// `P_n(a) = prod_{i <= n} (q_i - a^2)` for `n = 1..=count`.
pub fn product_values(a: &BigRational, count: u64) -> Vec<BigRational> {
    let sq = a * a;
    let mut p = BigRational::one();
    Coefficients::new()
        .take(count as usize)
        .map(|row| {
            p *= row.q - &sq;
            p.clone()
        })
        .collect()
}

/// Checks `|P_n(w)|^2 < (A_n (|w|^{2n} + 1))^2` exactly for `w = x + iy`
/// and every `n <= n_max`.
pub fn bound_certificate_holds(x: &BigRational, y: &BigRational, n_max: u64) -> bool {
    // w^2 = (x^2 - y^2) + 2xy i; |q - w^2|^2 multiplies across factors
    let re = x * x - y * y;
    let im = BigRational::from_integer(BigInt::from(2)) * x * y;
    let modulus2 = x * x + y * y;
    let mut lhs = BigRational::one();
    let mut power = BigRational::one();
    for row in Coefficients::new().take(n_max as usize) {
        let d = &row.q - &re;
        lhs *= &d * &d + &im * &im;
        power *= &modulus2;
        let rhs = BigRational::from_integer(row.a_bound) * (&power + BigRational::one());
        if lhs >= &rhs * &rhs {
            return false;
        }
    }
    true
}

/// `f(a)` exactly, refusing sums longer than [`DEFAULT_TERM_LIMIT`].
pub fn eval_exact(a: &BigRational) -> Result<BigRational> {
    eval_exact_with_limit(a, DEFAULT_TERM_LIMIT)
}

pub fn eval_exact_with_limit(a: &BigRational, limit: u64) -> Result<BigRational> {
    let terms = square_index(a) - 1u32;
    let count = match terms.to_u64() {
        Some(c) if c <= limit => c,
        _ => {
            return Err(Error::Budget {
                required: terms.to_string(),
                unit: "terms",
                limit,
            })
        }
    };
    let sq = a * a;
    let mut p = BigRational::one();
    let terms = Coefficients::new()
        .take(count as usize)
        .map(|row| {
            p *= row.q - &sq;
            &p / BigRational::from_integer(row.factorial * row.a_bound)
        })
        .collect();
    Ok(pairwise_sum(terms))
}

/// Sums in a balanced tree so that only the last additions see full-size
/// operands.
fn pairwise_sum(mut terms: Vec<BigRational>) -> BigRational {
    if terms.is_empty() {
        return BigRational::zero();
    }
    while terms.len() > 1 {
        let mut next = Vec::with_capacity(terms.len().div_ceil(2));
        let mut it = terms.into_iter();
        while let Some(x) = it.next() {
            next.push(match it.next() {
                Some(y) => x + y,
                None => x,
            });
        }
        terms = next;
    }
    terms.pop().unwrap()
}

/// Closed rational interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    #[serde(serialize_with = "crate::field::ser_rational")]
    pub lo: BigRational,
    #[serde(serialize_with = "crate::field::ser_rational")]
    pub hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Interval> {
        if lo > hi {
            return Err(Error::domain("interval with lo > hi"));
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(x: BigRational) -> Interval {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    fn mul(&self, other: &Interval) -> Interval {
        let c = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        Interval {
            lo: c.iter().min().unwrap().clone(),
            hi: c.iter().max().unwrap().clone(),
        }
    }

    fn square(&self) -> Interval {
        let (l2, h2) = (&self.lo * &self.lo, &self.hi * &self.hi);
        if !self.lo.is_positive() && !self.hi.is_negative() {
            Interval {
                lo: BigRational::zero(),
                hi: l2.max(h2),
            }
        } else {
            Interval {
                lo: l2.clone().min(h2.clone()),
                hi: l2.max(h2),
            }
        }
    }

    pub fn magnitude(&self) -> BigRational {
        self.lo.abs().max(self.hi.abs())
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}, {}]",
            format_rational(&self.lo),
            format_rational(&self.hi)
        )
    }
}

/// Rational upper bound for `sum_{n > cutoff} (m^{2n} + 1) / (2n)!`.
///
/// Each term is at most `u_n = 2 M^{2n} / (2n)!` with `M = max(m, 1)`; the
/// ratio `u_{n+1}/u_n = M^2 / ((2n+1)(2n+2))` is decreasing, so once it is at
/// most 1/2 the rest is bounded by twice the current term.
pub fn tail_bound(m: &BigRational, cutoff: u64) -> BigRational {
    let big_m = m.abs().max(BigRational::one());
    let m2 = &big_m * &big_m;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut n = cutoff + 1;
    let mut term = BigRational::from_integer(BigInt::from(2)) * pow(&m2, n)
        / BigRational::from_integer(factorial(2 * n));
    let mut sum = BigRational::zero();
    loop {
        let ratio = &m2 / BigRational::from_integer(BigInt::from((2 * n + 1) * (2 * n + 2)));
        if ratio <= half {
            return sum + term * BigRational::from_integer(BigInt::from(2));
        }
        sum += &term;
        term *= ratio;
        n += 1;
    }
}

fn pow(r: &BigRational, e: u64) -> BigRational {
    num_traits::pow(r.clone(), e as usize)
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Enclosure of `f` on `x` from the first `cutoff` terms plus [`tail_bound`].
pub fn eval_interval(x: &Interval, cutoff: u64) -> Result<Interval> {
    if cutoff == 0 {
        return Err(Error::domain("interval evaluation needs at least one term"));
    }
    let sq = x.square();
    let mut p = Interval::point(BigRational::one());
    let mut sum = Interval::point(BigRational::zero());
    for row in Coefficients::new().take(cutoff as usize) {
        let factor = Interval {
            lo: &row.q - &sq.hi,
            hi: &row.q - &sq.lo,
        };
        p = p.mul(&factor);
        let scale = BigRational::from_integer(row.factorial * row.a_bound);
        sum.lo += &p.lo / &scale;
        sum.hi += &p.hi / &scale;
    }
    let tail = tail_bound(&x.magnitude(), cutoff);
    Ok(Interval {
        lo: sum.lo - &tail,
        hi: sum.hi + tail,
    })
}

/// Coefficients `c_0..=c_cutoff` of a truncated power series in `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn cutoff(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// Series of `g(t) = f(i t)` up to `t^cutoff`, summing the terms
/// `n <= cutoff/2 + SERIES_EXTRA_TERMS`.
///
/// Every contribution is nonnegative, so each coefficient is a lower bound for
/// the coefficient of the full series.
pub fn series_of_g(cutoff: usize) -> Result<TruncatedSeries> {
    series_of_g_with(cutoff, SERIES_EXTRA_TERMS)
}

pub fn series_of_g_with(cutoff: usize, extra_terms: usize) -> Result<TruncatedSeries> {
    if cutoff < 2 || cutoff.is_odd() {
        return Err(Error::domain("series cutoff must be even and at least 2"));
    }
    let half = cutoff / 2;
    // product prod (q_i + s) in s = t^2, truncated at s^half
    let mut prod = vec![BigRational::one()];
    let mut even = vec![BigRational::zero(); half + 1];
    for row in Coefficients::new().take(half + extra_terms) {
        let mut next = vec![BigRational::zero(); (prod.len() + 1).min(half + 1)];
        for (k, c) in prod.iter().enumerate() {
            next[k] += &row.q * c;
            if k < half {
                next[k + 1] += c;
            }
        }
        prod = next;
        let scale = BigRational::from_integer(row.factorial * row.a_bound);
        for (k, c) in prod.iter().enumerate() {
            even[k] += c / &scale;
        }
    }
    let mut coeffs = vec![BigRational::zero(); cutoff + 1];
    for (k, c) in even.into_iter().enumerate() {
        coeffs[2 * k] = c;
    }
    Ok(TruncatedSeries { coeffs })
}

/// The rationals `0, 1, -1, 1/2, -1/2, 2, -2, ...`: zero, then each
/// Calkin-Wilf rational followed by its negative.
pub fn rational_enumeration() -> impl Iterator<Item = BigRational> {
    let mut x = BigRational::one();
    let mut pending: Option<BigRational> = None;
    let mut started = false;
    std::iter::from_fn(move || {
        if !started {
            started = true;
            return Some(BigRational::zero());
        }
        if let Some(neg) = pending.take() {
            return Some(neg);
        }
        let r = x.clone();
        let two_floor = BigRational::from_integer(r.floor().to_integer() * 2);
        x = (two_floor - &r + BigRational::one()).recip();
        pending = Some(-r.clone());
        Some(r)
    })
}

/// The first `count` enumerated rationals paired with their `f`-values.
pub fn graph_points(count: usize) -> Result<Vec<(BigRational, BigRational)>> {
    rational_enumeration()
        .take(count)
        .map(|a| eval_exact(&a).map(|v| (a, v)))
        .collect()
}
