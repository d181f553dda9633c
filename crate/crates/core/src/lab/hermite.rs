//! Hermite reduction and the derivative test over characteristic 0.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;
use crate::ratfun::RatFun;

/// `g = h' + polynomial + proper`, where `proper` has a squarefree
/// denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteReduction {
    pub h: RatFun,
    pub polynomial: Poly,
    pub proper: RatFun,
}

impl HermiteReduction {
    /// `polynomial + proper`.
    pub fn remainder(&self) -> RatFun {
        &RatFun::from_poly(self.polynomial.clone()) + &self.proper
    }
}

fn ensure_char_zero(f: Field) -> Result<()> {
    if f.is_finite() {
        return Err(Error::domain("Hermite reduction is implemented over Q"));
    }
    Ok(())
}

pub fn hermite_reduce(g: &RatFun) -> Result<HermiteReduction> {
    let field = g.field();
    ensure_char_zero(field)?;
    let (polynomial, mut a) = g.num().div_rem(g.den());
    let d = g.den();
    let mut h = RatFun::zero(field);
    let mut d_minus = d.gcd(&d.derivative())?;
    let d_star = d.exact_div(&d_minus);
    while !d_minus.is_constant() {
        let d_minus2 = d_minus.gcd(&d_minus.derivative())?;
        let d_minus_star = d_minus.exact_div(&d_minus2);
        let coef = -&(&d_star * &d_minus.derivative()).exact_div(&d_minus);
        let (b, c) = Poly::diophantine(&coef, &d_minus_star, &a)?;
        a = &c - &(&b.derivative() * &d_star).exact_div(&d_minus_star);
        h = &h + &RatFun::new(b, d_minus.clone())?;
        d_minus = d_minus2;
    }
    Ok(HermiteReduction {
        h,
        polynomial,
        proper: RatFun::new(a, d_star)?,
    })
}

/// Polynomial antiderivative with zero constant term.
pub fn integrate_poly(p: &Poly) -> Result<Poly> {
    let f = p.field();
    ensure_char_zero(f)?;
    let mut coeffs = vec![f.zero()];
    for (k, c) in p.coeffs().iter().enumerate() {
        coeffs.push(f.div(c, &f.from_i64(k as i64 + 1))?);
    }
    Ok(Poly::from_reduced(f, coeffs))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivativeCheck {
    pub is_derivative: bool,
    /// A function whose derivative is the input, when one exists.
    pub antiderivative: Option<RatFun>,
    pub reduction: HermiteReduction,
}

/// Whether `g = f'` for a rational function `f`.
pub fn is_derivative(g: &RatFun) -> Result<DerivativeCheck> {
    let reduction = hermite_reduce(g)?;
    let is_derivative = reduction.proper.is_zero();
    let antiderivative = if is_derivative {
        Some(&reduction.h + &RatFun::from_poly(integrate_poly(&reduction.polynomial)?))
    } else {
        None
    };
    Ok(DerivativeCheck {
        is_derivative,
        antiderivative,
        reduction,
    })
}
