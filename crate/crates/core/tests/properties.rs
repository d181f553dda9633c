use std::collections::BTreeSet;

use funcfield::analytic::{self, Interval};
use funcfield::divisor;
use funcfield::field::{frac, int, Field};
use funcfield::lab::{self, DioSystem};
use funcfield::{parse_poly, parse_ratfun, Point, Poly, RatFun};
use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use proptest::prelude::*;

const Q: Field = Field::Rational;

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Q),
        Just(Field::Prime(2)),
        Just(Field::Prime(3)),
        Just(Field::Prime(7))
    ]
}

fn coeffs(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-9i64..=9, 0..=max_len)
}

fn poly_in(field: Field, max_len: usize) -> impl Strategy<Value = Poly> {
    coeffs(max_len).prop_map(move |c| Poly::from_i64s(field, &c))
}

fn nonzero_poly_in(field: Field, max_len: usize) -> impl Strategy<Value = Poly> {
    poly_in(field, max_len).prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfun_in(field: Field) -> impl Strategy<Value = RatFun> {
    (poly_in(field, 5), nonzero_poly_in(field, 4)).prop_map(|(n, d)| RatFun::new(n, d).unwrap())
}

fn nonzero_ratfun_in(field: Field) -> impl Strategy<Value = RatFun> {
    ratfun_in(field).prop_filter("nonzero", |f| !f.is_zero())
}

fn rational_point() -> impl Strategy<Value = Point> {
    prop_oneof![
        1 => Just(Point::Infinity),
        4 => (-5i64..=5, 1i64..=3).prop_map(|(n, d)| Point::Finite(frac(n, d))),
    ]
}

/// Reduced numerator and denominator use only exponents divisible by `p`.
fn in_frobenius_image(f: &RatFun, p: usize) -> bool {
    [f.num(), f.den()].iter().all(|q| {
        q.coeffs()
            .iter()
            .enumerate()
            .all(|(k, c)| k % p == 0 || num_traits::Zero::is_zero(c))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn div_rem_random(field in field_strategy(), a in coeffs(8), b in coeffs(5)) {
        let a = Poly::from_i64s(field, &a);
        let b = Poly::from_i64s(field, &b);
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn gcd_divides_and_is_greatest(
        field in field_strategy(),
        a in coeffs(5), b in coeffs(5), c in coeffs(4),
    ) {
        let c = Poly::from_i64s(field, &c);
        prop_assume!(!c.is_zero());
        let a = &Poly::from_i64s(field, &a) * &c;
        let b = &Poly::from_i64s(field, &b) * &c;
        prop_assume!(!a.is_zero() || !b.is_zero());
        let g = a.gcd(&b).unwrap();
        prop_assert!(g.is_monic());
        prop_assert!(g.divides(&a) && g.divides(&b));
        prop_assert!(c.divides(&g));
        let (h, s, t) = Poly::ext_gcd(&a, &b);
        prop_assert_eq!(&(&s * &a) + &(&t * &b), h.clone());
        prop_assert_eq!(h, g);
    }

    #[test]
    fn field_axioms(
        (f, g, h) in field_strategy().prop_flat_map(|k| (ratfun_in(k), ratfun_in(k), ratfun_in(k))),
    ) {
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert!((&f - &f).is_zero());
        if !f.is_zero() {
            prop_assert_eq!(&f * &f.recip().unwrap(), RatFun::one(f.field()));
        }
    }

    #[test]
    fn leibniz_rule(
        (f, g) in field_strategy().prop_flat_map(|k| (ratfun_in(k), ratfun_in(k))),
    ) {
        let lhs = (&f * &g).derivative();
        let rhs = &(&f.derivative() * &g) + &(&f * &g.derivative());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn display_parse_roundtrip(f in field_strategy().prop_flat_map(ratfun_in)) {
        let text = f.to_string();
        prop_assert_eq!(parse_ratfun(&text, f.field()).unwrap(), f.clone());
        if f.is_polynomial() {
            prop_assert_eq!(&parse_poly(&f.num().to_string(), f.field()).unwrap(), f.num());
        }
    }

    #[test]
    fn valuation_is_additive(
        f in nonzero_ratfun_in(Q), g in nonzero_ratfun_in(Q), at in rational_point(),
    ) {
        let v = |h: &RatFun| h.valuation_at(&at).unwrap();
        prop_assert_eq!(v(&(&f * &g)), v(&f) + v(&g));
        prop_assert_eq!(v(&f.recip().unwrap()), -v(&f));
    }

    #[test]
    // small primes would admit inseparable blocks such as z^2 over F_2
    fn pole_divisor_degree_is_map_degree(
        f in prop_oneof![Just(Q), Just(Field::Prime(7))].prop_flat_map(nonzero_ratfun_in),
    ) {
        let poles = divisor::pole_divisor(&f).unwrap();
        prop_assert_eq!(poles.geometric_degree(), f.map_degree() as u64);
        let zeros = divisor::zero_divisor(&f).unwrap();
        prop_assert_eq!(zeros.geometric_degree(), f.map_degree() as u64);
        let poles_of_inverse = divisor::pole_divisor(&f.recip().unwrap()).unwrap();
        prop_assert_eq!(&poles_of_inverse, &zeros);
        prop_assert_eq!(
            poles.geometric_degree() + poles_of_inverse.geometric_degree(),
            2 * f.map_degree() as u64
        );
    }

    #[test]
    fn veps_is_monotone(f in nonzero_ratfun_in(Q), a in 1i64..=8, b in 1i64..=8) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let member = |k: i64| divisor::veps_member(&f, &frac(k, 8)).unwrap();
        prop_assert!(!member(hi) || member(lo));
    }

    #[test]
    fn hermite_identity_and_derivative_closure(f in ratfun_in(Q), g in ratfun_in(Q)) {
        let red = lab::hermite_reduce(&g).unwrap();
        prop_assert_eq!(&red.h.derivative() + &red.remainder(), g);
        let den = red.proper.den();
        prop_assert!(den.gcd(&den.derivative()).unwrap().is_constant());

        let check = lab::is_derivative(&f.derivative()).unwrap();
        prop_assert!(check.is_derivative);
        prop_assert_eq!(check.antiderivative.unwrap().derivative(), f.derivative());
    }

    #[test]
    fn frobenius_roundtrip(
        (p, f) in prop_oneof![Just(2u64), Just(3), Just(5)]
            .prop_flat_map(|p| (Just(p), ratfun_in(Field::Prime(p)))),
    ) {
        let split = lab::frobenius_decompose(&f).unwrap();
        prop_assert_eq!(split.parts.len(), p as usize);
        prop_assert_eq!(split.reassemble(), f.clone());
        prop_assert_eq!(split.in_d, !in_frobenius_image(&f, p as usize));
    }

    #[test]
    fn interval_enclosure_is_sound(n in -3i64..=3, d in 1i64..=3, w in 0i64..=2) {
        let x = frac(n, d);
        let iv = Interval::new(&x - &frac(w, 8), &x + &frac(w, 8)).unwrap();
        let enclosure = analytic::eval_interval(&iv, 16).unwrap();
        for point in [&x, &iv.lo, &iv.hi] {
            // exact values beyond the term budget are skipped, not failed
            if let Ok(value) = analytic::eval_exact_with_limit(point, 64) {
                prop_assert!(enclosure.contains(&value), "f({}) outside {}", point, enclosure);
            }
        }
    }

    #[test]
    fn slices_are_sound_and_monotone(
        exps in prop::collection::vec((0usize..=2, 0usize..=2, 0i64..=1), 1..=3),
    ) {
        let terms: Vec<String> = exps
            .iter()
            .map(|(i, j, c)| format!(r#"{{"exponents": [{i}, {j}], "coeff": "{}"}}"#, if *c == 0 { "1" } else { "z" }))
            .collect();
        let json = format!(r#"{{"p": 2, "n": 1, "m": 1, "polynomials": [[{}]]}}"#, terms.join(", "));
        let sys = DioSystem::from_json(&json).unwrap();
        let mut previous: BTreeSet<Vec<Poly>> = BTreeSet::new();
        for beta in 0..=2 {
            let slice = lab::enumerate_slice(&sys, 1, beta, lab::DEFAULT_MAX_CANDIDATES).unwrap();
            for (xs, ys) in &slice.solutions {
                prop_assert!(sys.is_solution(xs, ys));
                prop_assert!(xs.iter().all(|x| x.degree().is_none_or(|k| k <= 1)));
                prop_assert!(ys.iter().all(|y| y.degree().is_none_or(|k| k <= beta)));
            }
            prop_assert!(previous.is_subset(&slice.projection));
            previous = slice.projection;
        }
    }
}

#[test]
fn calkin_wilf_hits_every_small_rational_once() {
    for a in 1..=20i64 {
        for b in 1..=20i64 {
            if a.gcd(&b) != 1 {
                continue;
            }
            let r = frac(a, b);
            let i = analytic::calkin_wilf_index(&r).unwrap();
            assert_eq!(analytic::calkin_wilf(&i).unwrap(), r);
        }
    }
    let first: BTreeSet<BigRational> = (1..=10_000u32)
        .map(|i| analytic::calkin_wilf(&BigUint::from(i)).unwrap())
        .collect();
    assert_eq!(first.len(), 10_000);
}

#[test]
fn calkin_wilf_successor_formula() {
    // x -> 1 / (2 floor(x) - x + 1)
    let mut x = int(1);
    for i in 1..=2_000u32 {
        assert_eq!(analytic::calkin_wilf(&BigUint::from(i)).unwrap(), x);
        x = (int(2) * x.floor() - &x + int(1)).recip();
    }
}
