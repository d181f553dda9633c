//! `f = sum_{j < p} z^j f_j^p` over a prime field.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ratfun::RatFun;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusSplit {
    /// `f_0, ..., f_{p-1}`.
    pub parts: Vec<RatFun>,
    /// Some `f_j` with `j >= 1` is nonzero, i.e. `f` is not in `k(z^p)`.
    pub in_d: bool,
}

impl FrobeniusSplit {
    /// `sum_j z^j f_j^p`.
    pub fn reassemble(&self) -> RatFun {
        let field = self.parts[0].field();
        let p = self.parts.len() as i32;
        let mut acc = RatFun::zero(field);
        let mut zj = RatFun::one(field);
        for part in &self.parts {
            acc = &acc + &(&zj * &part.pow(p).expect("nonnegative exponent"));
            zj = &zj * &RatFun::z(field);
        }
        acc
    }
}

pub fn frobenius_decompose(f: &RatFun) -> Result<FrobeniusSplit> {
    let field = f.field();
    if !field.is_finite() {
        return Err(Error::domain(
            "Frobenius decomposition needs characteristic p",
        ));
    }
    let p = field.characteristic() as usize;
    let den = f.den();
    // f = num den^(p-1) / den(z^p); on F_p coefficients are fixed by Frobenius
    let num = f.num() * &den.pow(p as u32 - 1);
    let mut buckets = vec![Vec::new(); p];
    for (k, c) in num.coeffs().iter().enumerate() {
        let bucket = &mut buckets[k % p];
        let slot = k / p;
        if bucket.len() <= slot {
            bucket.resize(slot + 1, field.zero());
        }
        bucket[slot] = c.clone();
    }
    let parts = buckets
        .into_iter()
        .map(|coeffs| RatFun::new(Poly::from_reduced(field, coeffs), den.clone()))
        .collect::<Result<Vec<_>>>()?;
    let in_d = parts[1..].iter().any(|g| !g.is_zero());
    Ok(FrobeniusSplit { parts, in_d })
}
