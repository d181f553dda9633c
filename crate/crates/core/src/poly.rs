//! Dense univariate polynomials in z over a [`Field`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// Coefficients are stored by ascending degree; the zero polynomial has no
/// coefficients and the last stored coefficient is never zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Poly {
    /// Builds a polynomial from arbitrary rationals, mapping each into `field`.
    pub fn new(field: Field, coeffs: Vec<BigRational>) -> Result<Poly> {
        let coeffs = coeffs
            .into_iter()
            .map(|c| field.element(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_reduced(field, coeffs))
    }

    pub fn from_i64s(field: Field, coeffs: &[i64]) -> Poly {
        Poly::from_reduced(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    /// Coefficients must already be field elements.
    pub(crate) fn from_reduced(field: Field, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: Field) -> Poly {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Poly {
        Poly::constant(field, Scalar::one())
    }

    pub fn constant(field: Field, c: Scalar) -> Poly {
        Poly::from_reduced(field, vec![c])
    }

    /// The polynomial `z`.
    pub fn z(field: Field) -> Poly {
        Poly::monomial(field, Scalar::one(), 1)
    }

    pub fn monomial(field: Field, c: Scalar, k: usize) -> Poly {
        let mut coeffs = vec![Scalar::zero(); k + 1];
        coeffs[k] = c;
        Poly::from_reduced(field, coeffs)
    }

    /// `z - a`.
    pub fn linear_root(field: Field, a: &Scalar) -> Poly {
        Poly::from_reduced(field, vec![field.neg(a), Scalar::one()])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let f = self.field;
        Poly::from_reduced(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self
            .field
            .inv(&self.lc())
            .expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    /// Euclidean division. Panics when `d` is zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert_eq!(self.field, d.field, "field mismatch in division");
        let dd = d.degree().expect("polynomial division by zero");
        let f = self.field;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(f), self.clone());
        }
        let inv = f.inv(&d.lc()).expect("nonzero leading coefficient");
        let mut quot = vec![Scalar::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = f.mul(&rem[k + dd], &inv);
            if c.is_zero() {
                continue;
            }
            for (i, di) in d.coeffs.iter().enumerate() {
                rem[k + i] = f.sub(&rem[k + i], &f.mul(&c, di));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::from_reduced(f, quot), Poly::from_reduced(f, rem))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Quotient of a division known to be exact.
    pub fn exact_div(&self, d: &Poly) -> Poly {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    pub fn divides(&self, other: &Poly) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.field.ensure_same(other.field)?;
        Ok(gcd(self, other))
    }

    pub fn derivative(&self) -> Poly {
        let f = self.field;
        Poly::from_reduced(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| f.multiple(c, k))
                .collect(),
        )
    }

    /// Horner evaluation. `a` must be an element of the polynomial's field.
    pub fn eval(&self, a: &Scalar) -> Scalar {
        let f = self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| f.add(&f.mul(&acc, a), c))
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `p(z^k)`.
    pub fn inflate(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Scalar::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Poly::from_reduced(self.field, coeffs)
    }

    /// Number of times `z - a` divides the polynomial. Panics on zero.
    pub fn root_multiplicity(&self, a: &Scalar) -> usize {
        assert!(!self.is_zero(), "root multiplicity of the zero polynomial");
        let f = self.field;
        let mut cur = self.coeffs.clone();
        let mut m = 0;
        while cur.len() > 1 {
            // synthetic division by (z - a)
            let mut q = vec![Scalar::zero(); cur.len() - 1];
            let mut carry = Scalar::zero();
            for k in (0..cur.len()).rev() {
                carry = f.add(&cur[k], &f.mul(&carry, a));
                if k > 0 {
                    q[k - 1] = carry.clone();
                }
            }
            if !carry.is_zero() {
                break;
            }
            cur = q;
            m += 1;
        }
        m
    }

    /// `a = lc(a) * prod s_i^i` with each `s_i` monic, squarefree and pairwise
    /// coprime. Only factors with `i >= 1` and positive degree are returned,
    /// sorted by exponent.
    ///
    /// Uses the gcd-with-derivative cascade. In characteristic p a leftover
    /// factor with zero derivative is reported as [`Error::Inseparable`].
    pub fn squarefree_decomposition(&self) -> Result<Vec<(Poly, usize)>> {
        if self.is_zero() {
            return Err(Error::domain(
                "squarefree decomposition of the zero polynomial",
            ));
        }
        let a = self.monic();
        if a.is_constant() {
            return Ok(Vec::new());
        }
        let mut c = gcd(&a, &a.derivative());
        let mut w = a.exact_div(&c);
        let mut out = Vec::new();
        let mut i = 1;
        while !w.is_constant() {
            let y = gcd(&w, &c);
            let s = w.exact_div(&y);
            if !s.is_constant() {
                out.push((s, i));
            }
            c = c.exact_div(&y);
            w = y;
            i += 1;
        }
        if !c.is_constant() {
            return Err(Error::Inseparable {
                separable: out,
                inseparable: c,
            });
        }
        Ok(out)
    }

    /// Product of the distinct monic irreducible factors (the radical).
    pub fn squarefree_part(&self) -> Result<Poly> {
        Ok(self
            .squarefree_decomposition()?
            .into_iter()
            .fold(Poly::one(self.field), |acc, (s, _)| &acc * &s))
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g` and `g` the monic gcd.
    pub fn ext_gcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let f = a.field;
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s2 = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(&r0.lc()).expect("nonzero");
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Solves `s*a + t*b = c` with `deg s < deg b`, assuming `gcd(a, b) | c`.
    pub fn diophantine(a: &Poly, b: &Poly, c: &Poly) -> Result<(Poly, Poly)> {
        let (g, s0, _) = Poly::ext_gcd(a, b);
        let (cg, r) = c.div_rem(&g);
        if !r.is_zero() {
            return Err(Error::domain("right-hand side not divisible by gcd"));
        }
        let s = (&s0 * &cg).rem(b);
        let t = (c - &(&s * a)).exact_div(b);
        Ok((s, t))
    }

    /// Evaluates at another polynomial (composition `self(g)`).
    pub fn compose(&self, g: &Poly) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(self.field), |acc, c| {
                &(&acc * g) + &Poly::constant(self.field, c.clone())
            })
    }
}

fn gcd(a: &Poly, b: &Poly) -> Poly {
    assert_eq!(a.field, b.field, "field mismatch in gcd");
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    match a.field {
        Field::Rational => gcd_rational(a, b),
        Field::Prime(_) => {
            let (mut x, mut y) = (a.clone(), b.clone());
            while !y.is_zero() {
                let r = x.rem(&y);
                x = std::mem::replace(&mut y, r);
            }
            x.monic()
        }
    }
}

// Subresultant remainder sequence over Z: exact divisions keep coefficients
// at resultant size without a content gcd per step.
fn gcd_rational(a: &Poly, b: &Poly) -> Poly {
    let mut x = primitive_integer(a);
    let mut y = primitive_integer(b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    while y.len() > 1 {
        let delta = (x.len() - y.len()) as u32;
        let r = pseudo_rem(&x, &y);
        if r.is_empty() {
            break;
        }
        let divisor = &g * num_traits::pow(h.clone(), delta as usize);
        x = std::mem::replace(&mut y, r.into_iter().map(|c| c / &divisor).collect());
        g = x.last().cloned().expect("nonzero remainder");
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta as usize) / num_traits::pow(h, delta as usize - 1)
        };
    }
    let last = if y.len() == 1 {
        vec![BigInt::one()]
    } else {
        primitive(y)
    };
    let g = Poly::from_reduced(
        Field::Rational,
        last.into_iter().map(BigRational::from_integer).collect(),
    );
    g.monic()
}

fn primitive_integer(p: &Poly) -> Vec<BigInt> {
    let l = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    primitive(p.coeffs.iter().map(|c| (c * &l).to_integer()).collect())
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    // smallest coefficients first so the running gcd hits 1 early
    let mut order: Vec<&BigInt> = v.iter().filter(|c| !c.is_zero()).collect();
    order.sort_by_key(|c| c.bits());
    let mut g = BigInt::zero();
    for c in order {
        g = g.gcd(c);
        if g.is_one() {
            return v;
        }
    }
    if g.is_zero() {
        return v;
    }
    v.into_iter().map(|c| c / &g).collect()
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`, exactly.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut steps = (a.len() - db) as u32;
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let lr = r.last().cloned().unwrap();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= &lr * bi;
        }
        r.pop();
        steps -= 1;
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    if steps > 0 && !r.is_empty() {
        let f = num_traits::pow(lb.clone(), steps as usize);
        for c in r.iter_mut() {
            *c *= &f;
        }
    }
    r
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.field, rhs.field, "field mismatch in addition");
        let f = self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::from_reduced(f, coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = self.field;
        Poly::from_reduced(f, self.coeffs.iter().map(|c| f.neg(c)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.field, rhs.field, "field mismatch in multiplication");
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.field);
        }
        let f = self.field;
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        match f {
            Field::Rational => {
                for (i, a) in self.coeffs.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in rhs.coeffs.iter().enumerate() {
                        out[i + j] += a * b;
                    }
                }
            }
            Field::Prime(_) => {
                for (i, a) in self.coeffs.iter().enumerate() {
                    for (j, b) in rhs.coeffs.iter().enumerate() {
                        out[i + j] = f.add(&out[i + j], &f.mul(a, b));
                    }
                }
            }
        }
        Poly::from_reduced(f, out)
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by degree, then coefficients from the leading term down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
            .then_with(|| self.field.cmp(&other.field))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let n = c.numer().abs();
            let d = c.denom();
            if k == 0 {
                write!(f, "{n}")?;
            } else {
                if !n.is_one() {
                    write!(f, "{n}*")?;
                }
                if k == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{k}")?;
                }
            }
            if !d.is_one() {
                write!(f, "/{d}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{frac, int};

    fn qp(c: &[i64]) -> Poly {
        Poly::from_i64s(Field::Rational, c)
    }

    #[test]
    fn gcd_examples() {
        // (z^2 - 1, z - 1) -> z - 1
        assert_eq!(qp(&[-1, 0, 1]).gcd(&qp(&[-1, 1])).unwrap(), qp(&[-1, 1]));
        // (a, 0) -> a made monic
        assert_eq!(
            qp(&[2, 4]).gcd(&Poly::zero(Field::Rational)).unwrap(),
            Poly::new(Field::Rational, vec![frac(1, 2), int(1)]).unwrap()
        );
        // (4z^3 + 27, 12z^2) -> 1
        assert!(qp(&[27, 0, 0, 4]).gcd(&qp(&[0, 0, 12])).unwrap().is_one());
        let z = Poly::zero(Field::Rational);
        assert!(z.gcd(&z).unwrap().is_zero());
    }

    #[test]
    fn gcd_rejects_mixed_fields() {
        let a = qp(&[1, 1]);
        let b = Poly::from_i64s(Field::Prime(3), &[1, 1]);
        assert_eq!(
            a.gcd(&b),
            Err(Error::FieldMismatch(Field::Rational, Field::Prime(3)))
        );
    }

    #[test]
    fn squarefree_examples() {
        // (z - 1)^2 (z + 2)
        let a = &qp(&[-1, 1]).pow(2) * &qp(&[2, 1]);
        assert_eq!(
            a.squarefree_decomposition().unwrap(),
            vec![(qp(&[2, 1]), 1), (qp(&[-1, 1]), 2)]
        );
        assert_eq!(
            qp(&[-5, 1]).squarefree_decomposition().unwrap(),
            vec![(qp(&[-5, 1]), 1)]
        );
        // (z^2 + 1)^3 (z - 3)
        let b = &qp(&[1, 0, 1]).pow(3) * &qp(&[-3, 1]);
        assert_eq!(
            b.squarefree_decomposition().unwrap(),
            vec![(qp(&[-3, 1]), 1), (qp(&[1, 0, 1]), 3)]
        );
        assert!(Poly::zero(Field::Rational)
            .squarefree_decomposition()
            .is_err());
    }

    #[test]
    fn squarefree_in_characteristic_p() {
        let f3 = Field::Prime(3);
        // z^4 = z^(p+1): multiplicity not divisible by p, fully separable path
        let a = Poly::z(f3).pow(4);
        assert_eq!(
            a.squarefree_decomposition().unwrap(),
            vec![(Poly::z(f3), 4)]
        );
        // (z + 1)^3 (z + 2) leaves the inseparable part (z + 1)^3 = z^3 + 1
        let b = &Poly::from_i64s(f3, &[1, 1]).pow(3) * &Poly::from_i64s(f3, &[2, 1]);
        match b.squarefree_decomposition() {
            Err(Error::Inseparable {
                separable,
                inseparable,
            }) => {
                assert_eq!(separable, vec![(Poly::from_i64s(f3, &[2, 1]), 1)]);
                assert_eq!(inseparable, Poly::from_i64s(f3, &[1, 0, 0, 1]));
            }
            other => panic!("expected inseparable report, got {other:?}"),
        }
    }

    #[test]
    fn eval_examples() {
        assert_eq!(qp(&[1, 0, 1]).eval(&int(2)), int(5));
        assert_eq!(Poly::zero(Field::Rational).eval(&int(7)), int(0));
        let f2 = Field::Prime(2);
        assert_eq!(Poly::from_i64s(f2, &[1, 1, 1]).eval(&int(1)), int(1));
    }

    #[test]
    fn root_multiplicity_counts() {
        let a = &qp(&[-1, 1]).pow(3) * &qp(&[0, 1]);
        assert_eq!(a.root_multiplicity(&int(1)), 3);
        assert_eq!(a.root_multiplicity(&int(0)), 1);
        assert_eq!(a.root_multiplicity(&int(2)), 0);
    }

    #[test]
    fn diophantine_solution_has_small_degree() {
        let a = qp(&[1, 0, 1]);
        let b = qp(&[-2, 1]);
        let c = qp(&[3, 1, 4]);
        let (s, t) = Poly::diophantine(&a, &b, &c).unwrap();
        assert!(s.deg0() < 1);
        assert_eq!(&(&s * &a) + &(&t * &b), c);
    }

    #[test]
    fn display() {
        let p = Poly::new(Field::Rational, vec![int(1), int(-1), frac(3, 4)]).unwrap();
        assert_eq!(p.to_string(), "3*z^2/4 - z + 1");
        let q = Poly::new(Field::Rational, vec![int(-1), int(0), int(0), frac(-1, 8)]).unwrap();
        assert_eq!(q.to_string(), "-z^3/8 - 1");
        assert_eq!(
            Poly::from_i64s(Field::Prime(5), &[-1, 0, 1]).to_string(),
            "z^2 + 4"
        );
    }
}
