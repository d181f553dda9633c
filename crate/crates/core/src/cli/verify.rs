//! Composite checks behind the `verify-*` subcommands.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

use super::{fibers_json, rat, s, tuple_json, Checks, Report};
use crate::analytic::{self, Coefficients};
use crate::divisor::{self, Divisor, Ell};
use crate::elliptic::{self, Curve, KodairaType};
use crate::error::Result;
use crate::field::{frac, int, Field};
use crate::lab::{self, DioSystem};
use crate::poly::Poly;
use crate::ratfun::{Point, RatFun};

pub(crate) const SQUARES_OVER_F2: &str = r#"{"p": 2, "n": 1, "m": 1,
    "polynomials": [[{"exponents": [1, 0], "coeff": "1"}, {"exponents": [0, 2], "coeff": "-1"}]]}"#;

pub(super) fn elliptic(r: &mut Report) -> Result<()> {
    let mut checks = Checks::new();
    let curve = Curve::default_curve();
    let p1 = Curve::default_point();

    let survey = elliptic::bad_fibers(&curve)?;
    let mut types: Vec<(String, u64)> = survey
        .types()
        .into_iter()
        .map(|(t, c)| (t.to_string(), c))
        .collect();
    types.sort();
    checks.record(
        "fibers_I1x3_IIIstar",
        types == vec![("I1".to_string(), 3), ("III*".to_string(), 1)],
    );
    let inf_ok = survey.fibers.iter().any(|f| {
        f.place == elliptic::FiberPlace::Infinity
            && f.kodaira == KodairaType::IIIStar
            && f.v_c4 == Some(3)
            && f.v_c6.is_none_or(|v| v >= 5)
            && f.v_delta == 9
    });
    checks.record("infinity_valuations", inf_ok);
    checks.record("delta_degree_12", survey.delta_degree == 12);
    let rank = survey.rank()?;
    checks.record("rank_1", rank == 1);
    r.output("fibers", fibers_json(&survey))
        .output("rank", s(rank));

    let band = (frac(45, 100), frac(55, 100));
    let mut estimates = Vec::new();
    for k in 1..=3 {
        let e = curve.canonical_height_estimate(&p1, k)?;
        checks.record(&format!("hhat_k{k}_in_band"), e >= band.0 && e <= band.1);
        estimates.push(rat(&e));
    }
    r.output("hhat_estimates", Value::Array(estimates));
    let two = curve.multiply(2, &p1)?;
    checks.record("height_2P_is_2", curve.naive_height(&two)? == 2);

    let rows = curve.degree_growth(&p1, 8)?;
    let band = (frac(85, 100), frac(115, 100));
    for row in rows.iter().filter(|row| row.n >= 6) {
        checks.record(
            &format!("growth_ratio_n{}", row.n),
            row.ratio >= band.0 && row.ratio <= band.1,
        );
    }
    let mut acc = elliptic::ECPoint::Identity;
    let mut agree = true;
    for n in 1..=8 {
        acc = curve.add(&acc, &p1)?;
        agree &= curve.multiply(n, &p1)? == acc;
    }
    checks.record("double_and_add_matches_repeated_addition", agree);
    r.output(
        "degrees",
        Value::Array(rows.iter().map(|row| s(row.degree)).collect()),
    );
    checks.finish(r);
    Ok(())
}

pub(super) fn analytic(r: &mut Report) -> Result<()> {
    let mut checks = Checks::new();
    let mut finite = true;
    for a in analytic::rational_enumeration().take(100) {
        analytic::eval_exact(&a)?;
        let m = analytic::square_index(&a).to_u64().expect("small index");
        let values = analytic::product_values(&a, m + 3);
        finite &= values[(m - 1) as usize..].iter().all(Zero::is_zero);
    }
    checks.record("first_100_exact_with_vanishing_tail", finite);

    let series = analytic::series_of_g(40)?;
    let odd_zero = series.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero);
    let even_pos = series
        .coeffs
        .iter()
        .skip(2)
        .step_by(2)
        .all(Signed::is_positive);
    checks.record("series_odd_coefficients_zero", odd_zero);
    checks.record("series_even_coefficients_positive", even_pos);
    checks.record("series_constant_term_zero", series.coeffs[0].is_zero());

    // a fixed grid of complex rationals x + iy
    let mut bound = true;
    for i in 0..10 {
        for j in 0..10 {
            let x = frac(i * 7 - 30, 4);
            let y = frac(j * 5 - 20, 3);
            bound &= analytic::bound_certificate_holds(&x, &y, 10);
        }
    }
    checks.record("coefficient_bound_certificate", bound);

    let bounds: Vec<BigInt> = Coefficients::new()
        .take(10)
        .map(|row| row.a_bound)
        .collect();
    r.output("a_bounds", Value::Array(bounds.iter().map(s).collect()));
    r.output(
        "f_values",
        Value::Array(
            analytic::graph_points(6)?
                .iter()
                .map(|(a, v)| Value::Array(vec![rat(a), rat(v)]))
                .collect(),
        ),
    );
    checks.finish(r);
    Ok(())
}

fn random_poly(rng: &mut StdRng, max_deg: usize) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-5..=5)).collect();
    Poly::from_i64s(Field::Rational, &coeffs)
}

fn random_nonzero(rng: &mut StdRng, max_deg: usize) -> Poly {
    loop {
        let p = random_poly(rng, max_deg);
        if !p.is_zero() {
            return p;
        }
    }
}

fn random_ratfun(rng: &mut StdRng) -> RatFun {
    // products of small powers of a few fixed factors give repeated poles
    let mut den = Poly::one(Field::Rational);
    for _ in 0..rng.gen_range(0..3) {
        let factor = random_nonzero(rng, 2);
        den = &den * &factor.pow(rng.gen_range(1..=3));
    }
    RatFun::new(random_nonzero(rng, 5), den).expect("nonzero denominator")
}

pub(super) fn divisors(r: &mut Report, seed: u64) -> Result<()> {
    let mut checks = Checks::new();
    let mut rng = StdRng::seed_from_u64(seed);

    let mut degree_ok = true;
    for _ in 0..200 {
        let f = random_ratfun(&mut rng);
        degree_ok &= divisor::pole_divisor(&f)?.geometric_degree() == f.map_degree() as u64;
    }
    checks.record("pole_degree_equals_map_degree", degree_ok);

    let mut chain_ok = true;
    let mut members = 0;
    for eps in [frac(1, 4), frac(1, 2), int(1)] {
        for _ in 0..200 {
            let f = random_ratfun(&mut rng);
            if divisor::veps_member(&f, &eps)? {
                members += 1;
                let at_inf = BigRational::from_integer(
                    divisor::pole_divisor(&f)?.mult_at(&Point::Infinity).into(),
                );
                chain_ok &= at_inf >= &eps * BigRational::from_integer(f.map_degree().into());
            }
        }
    }
    checks.record("veps_pole_at_infinity_bound", chain_ok && members > 0);

    let mut contradiction_ok = true;
    for _ in 0..50 {
        let f = random_ratfun(&mut rng);
        let p = divisor::pole_divisor(&f)?;
        let a = p.mult_at(&Point::Infinity) + rng.gen_range(0..3);
        let eps = frac(rng.gen_range(1..=8), 8);
        let rr = rng.gen_range(1..=4u64);
        let threshold = frac(a as i64, rr as i64) * (int(1) - &eps) / &eps;
        let m = threshold.floor().to_integer().to_u64().unwrap_or(0) + 1 + rng.gen_range(0..3);
        let q = Divisor::point(Field::Rational, &int(rng.gen_range(-9..=9)), rr * m);
        let e = p.add(&q);
        contradiction_ok &= !divisor::z_set_member(&e, &eps, p.geometric_degree() + rr * m);
    }
    checks.record("z_set_contradiction_above_threshold", contradiction_ok);

    let mut campana_ok = true;
    for _ in 0..200 {
        let f = random_ratfun(&mut rng);
        campana_ok &= divisor::campana_member(&f, &[], Ell::Finite(1))?;
        campana_ok &=
            divisor::campana_member(&f, &[Point::Infinity], Ell::Infinite)? == f.is_polynomial();
    }
    checks.record("campana_extremes", campana_ok);
    checks.finish(r);
    Ok(())
}

pub(super) fn slicer(r: &mut Report) -> Result<()> {
    let mut checks = Checks::new();
    let sys = DioSystem::from_json(SQUARES_OVER_F2)?;
    let f2 = Field::Prime(2);
    let union = lab::slice_union(&sys, 2, 3, lab::DEFAULT_MAX_CANDIDATES)?;
    let expected: BTreeSet<Vec<Poly>> = [
        Poly::zero(f2),
        Poly::one(f2),
        Poly::from_i64s(f2, &[0, 0, 1]),
        Poly::from_i64s(f2, &[1, 0, 1]),
    ]
    .into_iter()
    .map(|p| vec![p])
    .collect();
    checks.record("projection_is_squares", union.union == expected);
    checks.record("stabilizes_at_beta_1", union.stabilized_at == Some(1));
    let members: Vec<Poly> = union.union.iter().map(|t| t[0].clone()).collect();
    let zeros = lab::zero_set(&members, f2)?;
    checks.record("zero_set_is_0_1", zeros == vec![int(0), int(1)]);
    r.output(
        "projection",
        Value::Array(union.union.iter().map(|t| tuple_json(t)).collect()),
    )
    .output("stabilized_at", union.stabilized_at.map_or(Value::Null, s))
    .output("zeros", Value::Array(zeros.iter().map(rat).collect()));
    checks.finish(r);
    Ok(())
}
