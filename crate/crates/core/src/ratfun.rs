//! Rational functions p/q in canonical form: coprime, monic denominator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

/// A place of P^1 defined over the base field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Finite(Scalar),
    Infinity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SquareSemantics {
    /// Square in K(z) for the base field K.
    BaseField,
    /// Square over the algebraic closure of the constants.
    Geometric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareTest {
    pub is_square: bool,
    /// `g` with `g^2 = f`; only produced under base-field semantics.
    pub witness: Option<RatFun>,
}

impl RatFun {
    /// Normalizes `num/den` to canonical form. Fails when `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Result<RatFun> {
        num.field().ensure_same(den.field())?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let field = num.field();
        if num.is_zero() {
            return Ok(RatFun::zero(field));
        }
        let g = num.gcd(&den)?;
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        let inv = field.inv(&den.lc())?;
        Ok(RatFun {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn from_poly(p: Poly) -> RatFun {
        let den = Poly::one(p.field());
        RatFun { num: p, den }
    }

    pub fn zero(field: Field) -> RatFun {
        RatFun::from_poly(Poly::zero(field))
    }

    pub fn one(field: Field) -> RatFun {
        RatFun::from_poly(Poly::one(field))
    }

    pub fn constant(field: Field, c: Scalar) -> RatFun {
        RatFun::from_poly(Poly::constant(field, c))
    }

    pub fn from_i64(field: Field, c: i64) -> RatFun {
        RatFun::constant(field, field.from_i64(c))
    }

    pub fn z(field: Field) -> RatFun {
        RatFun::from_poly(Poly::z(field))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn field(&self) -> Field {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Re-runs canonicalization; a no-op on any value built through this API.
    pub fn normalized(&self) -> RatFun {
        RatFun::new(self.num.clone(), self.den.clone()).expect("denominator is nonzero")
    }

    pub fn recip(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFun) -> Result<RatFun> {
        self.field().ensure_same(rhs.field())?;
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFun::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    /// Field-checked arithmetic.
    pub fn arith(op: ArithOp, f: &RatFun, g: &RatFun) -> Result<RatFun> {
        f.field().ensure_same(g.field())?;
        Ok(match op {
            ArithOp::Add => f + g,
            ArithOp::Sub => f - g,
            ArithOp::Mul => f * g,
            ArithOp::Div => return f.checked_div(g),
        })
    }

    pub fn pow(&self, e: i32) -> Result<RatFun> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RatFun {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    pub fn scale(&self, c: &Scalar) -> RatFun {
        if c.is_zero() {
            return RatFun::zero(self.field());
        }
        RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Quotient rule `(p'q - pq') / q^2`.
    pub fn derivative(&self) -> RatFun {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFun::new(n, &self.den * &self.den).expect("nonzero denominator")
    }

    /// Degree of the induced map P^1 -> P^1; constants (including 0) give 0.
    pub fn map_degree(&self) -> usize {
        self.num.deg0().max(self.den.deg0())
    }

    /// `deg num - deg den`, i.e. `-v_inf(f)`.
    pub fn deg_star(&self) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::domain(
                "deg* of the zero function (v_inf(0) is infinite)",
            ));
        }
        Ok(self.num.deg0() as i64 - self.den.deg0() as i64)
    }

    pub fn valuation_at(&self, point: &Point) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::domain("valuation of the zero function"));
        }
        match point {
            Point::Infinity => Ok(self.den.deg0() as i64 - self.num.deg0() as i64),
            Point::Finite(a) => {
                let a = self.field().element(a.clone())?;
                Ok(self.num.root_multiplicity(&a) as i64 - self.den.root_multiplicity(&a) as i64)
            }
        }
    }

    /// Value at a finite point; `None` at a pole.
    pub fn eval(&self, a: &Scalar) -> Option<Scalar> {
        let d = self.den.eval(a);
        if d.is_zero() {
            return None;
        }
        self.field().div(&self.num.eval(a), &d).ok()
    }

    pub fn is_square(&self, semantics: SquareSemantics) -> Result<SquareTest> {
        let field = self.field();
        if field.characteristic() == 2 {
            return Err(Error::domain(
                "square test requires characteristic other than 2",
            ));
        }
        if self.is_zero() {
            return Ok(SquareTest {
                is_square: true,
                witness: (semantics == SquareSemantics::BaseField).then(|| self.clone()),
            });
        }
        let (num_ok, num_root) = even_root(&self.num)?;
        let (den_ok, den_root) = even_root(&self.den)?;
        if !(num_ok && den_ok) {
            return Ok(SquareTest {
                is_square: false,
                witness: None,
            });
        }
        match semantics {
            SquareSemantics::Geometric => Ok(SquareTest {
                is_square: true,
                witness: None,
            }),
            SquareSemantics::BaseField => match field.sqrt(&self.num.lc()) {
                Some(c) => Ok(SquareTest {
                    is_square: true,
                    witness: Some(RatFun::new(num_root.scale(&c), den_root)?),
                }),
                None => Ok(SquareTest {
                    is_square: false,
                    witness: None,
                }),
            },
        }
    }
}

/// Whether every squarefree exponent is even, with the monic root.
fn even_root(p: &Poly) -> Result<(bool, Poly)> {
    let mut root = Poly::one(p.field());
    for (s, i) in p.squarefree_decomposition()? {
        if i % 2 == 1 {
            return Ok((false, root));
        }
        root = &root * &s.pow((i / 2) as u32);
    }
    Ok((true, root))
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.den == rhs.den {
            return RatFun::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        RatFun::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero")
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        assert_eq!(
            self.field(),
            rhs.field(),
            "field mismatch in multiplication"
        );
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero(self.field());
        }
        // cross-cancel first so the products stay small
        let g1 = self.num.gcd(&rhs.den).expect("same field");
        let g2 = rhs.num.gcd(&self.den).expect("same field");
        let n = &self.num.exact_div(&g1) * &rhs.num.exact_div(&g2);
        let d = &self.den.exact_div(&g2) * &rhs.den.exact_div(&g1);
        RatFun::new(n, d).expect("nonzero")
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
