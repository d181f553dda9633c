//! Exhaustive solution of polynomial systems over `F_p[z]` with degree-bounded
//! unknowns.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::parse::parse_poly;
use crate::poly::Poly;

/// Default cap on the number of `(x, y)` candidates examined.
pub const DEFAULT_MAX_CANDIDATES: u64 = 1 << 20;

/// `coeff * x^e` for an exponent vector over `x_1..x_n, y_1..y_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub exponents: Vec<u32>,
    pub coeff: Poly,
}

/// A finite system `F_1 = ... = F_r = 0` in unknowns `x_1..x_n, y_1..y_m`
/// with coefficients in `F_p[z]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DioSystem {
    field: Field,
    n: usize,
    m: usize,
    polynomials: Vec<Vec<Term>>,
}

#[derive(Deserialize)]
struct RawTerm {
    exponents: Vec<u32>,
    coeff: String,
}

#[derive(Deserialize)]
struct RawSystem {
    p: u64,
    n: usize,
    m: usize,
    polynomials: Vec<Vec<RawTerm>>,
}

impl DioSystem {
    pub fn new(field: Field, n: usize, m: usize, polynomials: Vec<Vec<Term>>) -> Result<DioSystem> {
        if !field.is_finite() {
            return Err(Error::domain(
                "slice enumeration needs a finite coefficient field",
            ));
        }
        if polynomials.is_empty() {
            return Err(Error::Invalid(
                "system needs at least one polynomial".into(),
            ));
        }
        for term in polynomials.iter().flatten() {
            field.ensure_same(term.coeff.field())?;
            if term.exponents.len() != n + m {
                return Err(Error::Invalid(format!(
                    "exponent vector of length {} for {} variables",
                    term.exponents.len(),
                    n + m
                )));
            }
        }
        Ok(DioSystem {
            field,
            n,
            m,
            polynomials,
        })
    }

    /// Parses `{"p", "n", "m", "polynomials": [[{"exponents", "coeff"}]]}`.
    pub fn from_json(text: &str) -> Result<DioSystem> {
        let raw: RawSystem =
            serde_json::from_str(text).map_err(|e| Error::Invalid(format!("system JSON: {e}")))?;
        let field = Field::prime(raw.p)?;
        let polynomials = raw
            .polynomials
            .into_iter()
            .map(|terms| {
                terms
                    .into_iter()
                    .map(|t| {
                        Ok(Term {
                            exponents: t.exponents,
                            coeff: parse_poly(&t.coeff, field)?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        DioSystem::new(field, raw.n, raw.m, polynomials)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn x_count(&self) -> usize {
        self.n
    }

    pub fn y_count(&self) -> usize {
        self.m
    }

    pub fn polynomials(&self) -> &[Vec<Term>] {
        &self.polynomials
    }

    /// Value of every `F_j` at the given assignment.
    pub fn evaluate(&self, xs: &[Poly], ys: &[Poly]) -> Vec<Poly> {
        let values: Vec<&Poly> = xs.iter().chain(ys).collect();
        self.polynomials
            .iter()
            .map(|terms| {
                let mut acc = Poly::zero(self.field);
                for t in terms {
                    let mut prod = t.coeff.clone();
                    for (v, &e) in values.iter().zip(&t.exponents) {
                        if e > 0 {
                            prod = &prod * &v.pow(e);
                        }
                    }
                    acc = &acc + &prod;
                }
                acc
            })
            .collect()
    }

    pub fn is_solution(&self, xs: &[Poly], ys: &[Poly]) -> bool {
        self.evaluate(xs, ys).iter().all(Poly::is_zero)
    }
}

/// Solutions `G` of a system with `deg x <= alpha`, `deg y <= beta`, and
/// their projection onto the x-block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceResult {
    pub alpha: usize,
    pub beta: usize,
    pub solutions: BTreeSet<(Vec<Poly>, Vec<Poly>)>,
    pub projection: BTreeSet<Vec<Poly>>,
    /// Projection unchanged from `beta - 1` (false at `beta = 0`).
    pub stabilized: bool,
}

impl SliceResult {
    /// Projection of the solutions whose y-block has degree at most `beta`.
    pub fn projection_at(&self, beta: usize) -> BTreeSet<Vec<Poly>> {
        self.solutions
            .iter()
            .filter(|(_, ys)| ys.iter().all(|y| y.degree().is_none_or(|d| d <= beta)))
            .map(|(xs, _)| xs.clone())
            .collect()
    }
}

/// All polynomials of degree at most `max_deg` over a prime field.
pub fn polys_up_to(field: Field, max_deg: usize) -> Vec<Poly> {
    let elems: Vec<Scalar> = field.elements().expect("finite field").collect();
    let p = elems.len();
    let total = p.pow(max_deg as u32 + 1);
    (0..total)
        .map(|mut idx| {
            let coeffs = (0..=max_deg)
                .map(|_| {
                    let c = elems[idx % p].clone();
                    idx /= p;
                    c
                })
                .collect();
            Poly::from_reduced(field, coeffs)
        })
        .collect()
}

fn candidate_count(p: u64, alpha: usize, beta: usize, n: usize, m: usize) -> BigUint {
    let exp = (alpha + 1) * n + (beta + 1) * m;
    BigUint::from(p).pow(exp as u32)
}

/// Visits every tuple of `count` entries drawn from `pool`.
fn for_each_tuple(pool: &[Poly], count: usize, mut visit: impl FnMut(&[Poly])) {
    let mut idx = vec![0usize; count];
    let mut tuple: Vec<Poly> = (0..count).map(|_| pool[0].clone()).collect();
    loop {
        visit(&tuple);
        let mut k = 0;
        loop {
            if k == count {
                return;
            }
            idx[k] += 1;
            if idx[k] < pool.len() {
                tuple[k] = pool[idx[k]].clone();
                break;
            }
            idx[k] = 0;
            tuple[k] = pool[0].clone();
            k += 1;
        }
    }
}

pub fn enumerate_slice(
    sys: &DioSystem,
    alpha: usize,
    beta: usize,
    max_candidates: u64,
) -> Result<SliceResult> {
    let p = sys.field.characteristic();
    let needed = candidate_count(p, alpha, beta, sys.n, sys.m);
    if needed.to_u64().is_none_or(|c| c > max_candidates) {
        return Err(Error::Budget {
            required: needed.to_string(),
            unit: "candidates",
            limit: max_candidates,
        });
    }
    let x_pool = polys_up_to(sys.field, alpha);
    let y_pool = polys_up_to(sys.field, beta);
    let mut solutions = BTreeSet::new();
    for_each_tuple(&x_pool, sys.n, |xs| {
        for_each_tuple(&y_pool, sys.m, |ys| {
            if sys.is_solution(xs, ys) {
                solutions.insert((xs.to_vec(), ys.to_vec()));
            }
        });
    });
    let mut result = SliceResult {
        alpha,
        beta,
        projection: solutions.iter().map(|(xs, _)| xs.clone()).collect(),
        solutions,
        stabilized: false,
    };
    if beta > 0 {
        result.stabilized = result.projection_at(beta - 1) == result.projection;
    }
    Ok(result)
}

/// Union of the projections for `beta = 0..=beta_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceUnion {
    pub alpha: usize,
    pub beta_max: usize,
    pub union: BTreeSet<Vec<Poly>>,
    /// Projection sizes for each `beta`.
    pub sizes: Vec<usize>,
    /// Least `beta` whose projection equals the one at `beta + 1`.
    pub stabilized_at: Option<usize>,
}

pub fn slice_union(
    sys: &DioSystem,
    alpha: usize,
    beta_max: usize,
    max_candidates: u64,
) -> Result<SliceUnion> {
    let top = enumerate_slice(sys, alpha, beta_max, max_candidates)?;
    let layers: Vec<_> = (0..=beta_max).map(|b| top.projection_at(b)).collect();
    let stabilized_at = layers.windows(2).position(|w| w[0] == w[1]);
    Ok(SliceUnion {
        alpha,
        beta_max,
        sizes: layers.iter().map(BTreeSet::len).collect(),
        union: top.projection,
        stabilized_at,
    })
}

/// Elements of the finite field that are a root of some member of `set`.
pub fn zero_set(set: &[Poly], field: Field) -> Result<Vec<Scalar>> {
    let elems = field
        .elements()
        .ok_or_else(|| Error::domain("zero sets are enumerated over finite fields"))?;
    for f in set {
        field.ensure_same(f.field())?;
    }
    Ok(elems
        .filter(|a| set.iter().any(|f| f.eval(a) == field.zero()))
        .collect())
}
