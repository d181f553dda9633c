//! Elliptic curves `y^2 = x^3 + A x + B` over k(z).
//!
//! The reference instance is `y^2 = x^3 + z x + 1` over Q(z) with the section
//! `P1 = (0, 1)`. Points are exact pairs of rational functions; the group law
//! is the usual chord-tangent construction.

mod fibers;

pub use fibers::{
    bad_fibers, invariants, kodaira_classify, mordell_weil_lattice, shioda_tate_rank, FiberPlace,
    FiberReport, FiberSurvey, Invariants, KodairaType, LatticeInfo, Valuation,
};

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ratfun::RatFun;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    a: RatFun,
    b: RatFun,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ECPoint {
    Identity,
    Affine { x: RatFun, y: RatFun },
}

impl ECPoint {
    pub fn affine(x: RatFun, y: RatFun) -> ECPoint {
        ECPoint::Affine { x, y }
    }

    pub fn x(&self) -> Option<&RatFun> {
        match self {
            ECPoint::Identity => None,
            ECPoint::Affine { x, .. } => Some(x),
        }
    }

    pub fn y(&self) -> Option<&RatFun> {
        match self {
            ECPoint::Identity => None,
            ECPoint::Affine { y, .. } => Some(y),
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, ECPoint::Identity)
    }

    pub fn neg(&self) -> ECPoint {
        match self {
            ECPoint::Identity => ECPoint::Identity,
            ECPoint::Affine { x, y } => ECPoint::Affine {
                x: x.clone(),
                y: -y,
            },
        }
    }
}

impl fmt::Display for ECPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ECPoint::Identity => write!(f, "O"),
            ECPoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

/// One row of [`Curve::degree_growth`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthRow {
    pub n: u64,
    pub degree: u64,
    /// `deg(x_n) / (n^2 / 2)`, exact.
    #[serde(serialize_with = "crate::field::ser_rational")]
    pub ratio: BigRational,
}

impl Curve {
    pub fn new(a: RatFun, b: RatFun) -> Result<Curve> {
        a.field().ensure_same(b.field())?;
        let c = a.field().characteristic();
        if c == 2 || c == 3 {
            return Err(Error::domain(
                "short Weierstrass form needs characteristic other than 2 and 3",
            ));
        }
        let curve = Curve { a, b };
        if curve.discriminant().is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(curve)
    }

    /// `y^2 = x^3 + z x + 1` over Q(z).
    pub fn default_curve() -> Curve {
        let q = Field::Rational;
        Curve::new(RatFun::z(q), RatFun::one(q)).expect("nonsingular")
    }

    /// The section `P1 = (0, 1)` of the default curve.
    pub fn default_point() -> ECPoint {
        let q = Field::Rational;
        ECPoint::affine(RatFun::zero(q), RatFun::one(q))
    }

    pub fn a(&self) -> &RatFun {
        &self.a
    }

    pub fn b(&self) -> &RatFun {
        &self.b
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    /// `-16 (4 A^3 + 27 B^2)`.
    pub fn discriminant(&self) -> RatFun {
        fibers::invariants(self).delta
    }

    pub fn on_curve(&self, p: &ECPoint) -> bool {
        match p {
            ECPoint::Identity => true,
            ECPoint::Affine { x, y } => {
                if x.field() != self.field() || y.field() != self.field() {
                    return false;
                }
                let rhs = &(&(&(x * x) * x) + &(&self.a * x)) + &self.b;
                y * y == rhs
            }
        }
    }

    fn ensure_on_curve(&self, p: &ECPoint) -> Result<()> {
        if self.on_curve(p) {
            Ok(())
        } else {
            Err(Error::OffCurve)
        }
    }

    pub fn add(&self, p: &ECPoint, q: &ECPoint) -> Result<ECPoint> {
        self.ensure_on_curve(p)?;
        self.ensure_on_curve(q)?;
        Ok(self.add_unchecked(p, q))
    }

    pub(crate) fn add_unchecked(&self, p: &ECPoint, q: &ECPoint) -> ECPoint {
        let (x1, y1, x2, y2) = match (p, q) {
            (ECPoint::Identity, _) => return q.clone(),
            (_, ECPoint::Identity) => return p.clone(),
            (ECPoint::Affine { x: x1, y: y1 }, ECPoint::Affine { x: x2, y: y2 }) => {
                (x1, y1, x2, y2)
            }
        };
        let f = self.field();
        let lambda = if x1 == x2 {
            if (y1 + y2).is_zero() {
                return ECPoint::Identity;
            }
            // tangent: (3 x^2 + A) / (2 y)
            let num = &(x1 * x1).scale(&f.from_i64(3)) + &self.a;
            num.checked_div(&y1.scale(&f.from_i64(2)))
                .expect("y is nonzero off the 2-torsion")
        } else {
            (y2 - y1).checked_div(&(x2 - x1)).expect("distinct x")
        };
        let x3 = &(&(&lambda * &lambda) - x1) - x2;
        let y3 = &(&lambda * &(x1 - &x3)) - y1;
        ECPoint::Affine { x: x3, y: y3 }
    }

    pub fn double(&self, p: &ECPoint) -> Result<ECPoint> {
        self.add(p, p)
    }

    /// `n * P` by double-and-add; negative `n` negates first.
    pub fn multiply(&self, n: i64, p: &ECPoint) -> Result<ECPoint> {
        self.ensure_on_curve(p)?;
        Ok(self.multiply_unchecked(n, p))
    }

    fn multiply_unchecked(&self, n: i64, p: &ECPoint) -> ECPoint {
        let base = if n < 0 { p.neg() } else { p.clone() };
        let k = n.unsigned_abs();
        let mut acc = ECPoint::Identity;
        for bit in (0..64 - k.leading_zeros()).rev() {
            acc = self.add_unchecked(&acc, &acc);
            if (k >> bit) & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
        }
        acc
    }

    /// `h(P) = deg x(P)` as a map degree.
    pub fn naive_height(&self, p: &ECPoint) -> Result<u64> {
        match p {
            ECPoint::Identity => Err(Error::domain("naive height of the identity")),
            ECPoint::Affine { x, .. } => Ok(x.map_degree() as u64),
        }
    }

    /// `h(2^k P) / 4^k`, the k-th term of the limit defining the canonical
    /// height.
    pub fn canonical_height_estimate(&self, p: &ECPoint, k: u32) -> Result<BigRational> {
        if k == 0 {
            return Err(Error::Invalid("doubling count must be at least 1".into()));
        }
        if p.is_identity() {
            return Err(Error::Torsion(1));
        }
        self.ensure_on_curve(p)?;
        let mut q = p.clone();
        for i in 1..=k {
            q = self.add_unchecked(&q, &q);
            if q.is_identity() {
                return Err(Error::Torsion(1u64 << i));
            }
        }
        let h = self.naive_height(&q)?;
        Ok(BigRational::new(BigInt::from(h), BigInt::from(4u32).pow(k)))
    }

    /// `deg(x_n)` and `deg(x_n) / (n^2/2)` for `n = 1..=n_max`.
    pub fn degree_growth(&self, p: &ECPoint, n_max: u64) -> Result<Vec<GrowthRow>> {
        self.ensure_on_curve(p)?;
        let mut rows = Vec::with_capacity(n_max as usize);
        let mut q = ECPoint::Identity;
        for n in 1..=n_max {
            q = self.add_unchecked(&q, p);
            let degree = match &q {
                ECPoint::Identity => return Err(Error::Torsion(n)),
                ECPoint::Affine { x, .. } => x.map_degree() as u64,
            };
            rows.push(GrowthRow {
                n,
                degree,
                ratio: BigRational::new(BigInt::from(2 * degree), BigInt::from(n * n)),
            });
        }
        Ok(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{frac, int};
    use crate::parse::parse_ratfun;

    fn r(s: &str) -> RatFun {
        parse_ratfun(s, Field::Rational).unwrap()
    }

    fn two_p1() -> ECPoint {
        // tangent slope at (0, 1) is (3*0 + z) / 2 = z/2
        ECPoint::affine(r("z^2/4"), r("-z^3/8 - 1"))
    }

    #[test]
    fn on_curve_examples() {
        let c = Curve::default_curve();
        assert!(c.on_curve(&Curve::default_point()));
        assert!(!c.on_curve(&ECPoint::affine(r("0"), r("0"))));
        assert!(c.on_curve(&ECPoint::Identity));
        assert!(c.on_curve(&two_p1()));
    }

    #[test]
    fn group_law_examples() {
        let c = Curve::default_curve();
        let p = Curve::default_point();
        assert_eq!(c.add(&p, &ECPoint::Identity).unwrap(), p);
        assert_eq!(c.add(&p, &p.neg()).unwrap(), ECPoint::Identity);
        assert_eq!(c.add(&p, &p).unwrap(), two_p1());
        let bad = ECPoint::affine(r("0"), r("0"));
        assert_eq!(c.add(&p, &bad), Err(Error::OffCurve));
    }

    #[test]
    fn multiply_examples() {
        let c = Curve::default_curve();
        let p = Curve::default_point();
        assert_eq!(c.multiply(0, &p).unwrap(), ECPoint::Identity);
        assert_eq!(c.multiply(2, &p).unwrap(), two_p1());
        assert_eq!(
            c.multiply(-1, &p).unwrap(),
            ECPoint::affine(r("0"), r("-1"))
        );
        let three = c.add(&two_p1(), &p).unwrap();
        assert_eq!(c.multiply(3, &p).unwrap(), three);
        assert_eq!(c.multiply(-3, &p).unwrap(), three.neg());
    }

    #[test]
    fn heights() {
        let c = Curve::default_curve();
        let p = Curve::default_point();
        assert_eq!(c.naive_height(&p).unwrap(), 0);
        assert_eq!(c.naive_height(&two_p1()).unwrap(), 2);
        assert_eq!(c.naive_height(&p.neg()).unwrap(), 0);
        assert!(c.naive_height(&ECPoint::Identity).is_err());
        assert_eq!(c.canonical_height_estimate(&p, 1).unwrap(), frac(1, 2));
        assert!(c.canonical_height_estimate(&p, 0).is_err());
        assert_eq!(
            c.canonical_height_estimate(&ECPoint::Identity, 1),
            Err(Error::Torsion(1))
        );
    }

    #[test]
    fn torsion_is_reported() {
        // y^2 = x^3 + 1 has the 2-torsion point (-1, 0)
        let c = Curve::new(RatFun::zero(Field::Rational), RatFun::one(Field::Rational)).unwrap();
        let t = ECPoint::affine(r("-1"), r("0"));
        assert!(c.on_curve(&t));
        assert_eq!(c.canonical_height_estimate(&t, 2), Err(Error::Torsion(2)));
        assert_eq!(c.degree_growth(&t, 3), Err(Error::Torsion(2)));
    }

    #[test]
    fn growth_starts_as_expected() {
        let c = Curve::default_curve();
        let rows = c.degree_growth(&Curve::default_point(), 2).unwrap();
        assert_eq!(rows[0].degree, 0);
        assert_eq!((rows[1].degree, rows[1].ratio.clone()), (2, int(1)));
    }

    #[test]
    fn singular_and_bad_characteristic_rejected() {
        let q = Field::Rational;
        assert_eq!(
            Curve::new(RatFun::zero(q), RatFun::zero(q)),
            Err(Error::SingularCurve)
        );
        let f3 = Field::Prime(3);
        assert!(Curve::new(RatFun::z(f3), RatFun::one(f3)).is_err());
    }
}
