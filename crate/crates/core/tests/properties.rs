//! Randomised invariants across the arithmetic, quadratic, valuation and
//! oracle layers.

use cmfactor::arith::{
    factor, gcd, hilbert_symbol, kronecker, prime_divisors, rat_from_str, rat_to_string, Place, Rat,
};
use cmfactor::oracle::{heegner_points, j_product, j_product_with, start_precision, OracleConfig};
use cmfactor::quadratic::{
    class_number, count_a_enumerated, count_a_multiplicative, genus_k, make_disc, psi_p, reduced_forms, IdealLat,
};
use cmfactor::report::{admissible, discriminants_up_to, pair_report, Mode, ReportRecord, Row};
use cmfactor::valuation::{enumerate_x, support_prime, PairContext, Reading, Status, Term};
use num_bigint::BigInt;
use proptest::prelude::*;

fn discs(max: i64) -> impl Strategy<Value = i64> {
    prop::sample::select(discriminants_up_to(max))
}

fn pair(max: i64) -> impl Strategy<Value = (i64, i64)> {
    (discs(max), discs(max)).prop_filter("distinct", |(a, b)| a != b)
}

/// Class number from Dirichlet's formula for the fundamental part, lifted
/// to the order of conductor `f`.
fn analytic_class_number(d: i64) -> i64 {
    let disc = make_disc(d).unwrap();
    let d0 = disc.d_fund;
    let n = d0.abs();
    let s: i64 = (1..n).map(|k| i64::from(kronecker(d0, k)) * k).sum();
    let w0 = match d0 {
        -3 => 6,
        -4 => 4,
        _ => 2,
    };
    let h0 = -s * w0 / (2 * n);
    let mut num = h0 * disc.f;
    let mut den = 1;
    for p in prime_divisors(disc.f) {
        num *= p - i64::from(kronecker(d0, p));
        den *= p;
    }
    num * disc.w / (den * w0)
}

#[test]
fn class_numbers_match_dirichlet() {
    for d in discriminants_up_to(300) {
        let disc = make_disc(d).unwrap();
        let h = class_number(&disc);
        assert_eq!(h, analytic_class_number(d), "d = {d}");
        assert_eq!(heegner_points(&disc).len() as i64, h);
        assert_eq!(h % (1 << (genus_k(&disc) - 1)), 0, "genus count divides h for d = {d}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn kronecker_is_multiplicative(a in -500i64..500, b in -500i64..500, n in 1i64..400) {
        prop_assert_eq!(kronecker(a * b, n), kronecker(a, n) * kronecker(b, n));
    }

    #[test]
    fn hilbert_product_formula(a in -300i64..300, b in -300i64..300) {
        prop_assume!(a != 0 && b != 0);
        let mut ps = prime_divisors(2 * a * b);
        ps.sort_unstable();
        let prod: i32 = ps.iter().map(|&p| hilbert_symbol(a, b, Place::Finite(p))).product::<i32>()
            * hilbert_symbol(a, b, Place::Infinity);
        prop_assert_eq!(prod, 1);
    }

    #[test]
    fn psi_p_is_the_hilbert_symbol(d in discs(400), n in -200i64..200) {
        prop_assume!(n != 0);
        let disc = make_disc(d).unwrap();
        for p in prime_divisors(d).into_iter().filter(|p| disc.f % p != 0) {
            prop_assert_eq!(psi_p(&disc, p, n).unwrap(), hilbert_symbol(d, n, Place::Finite(p)));
        }
    }

    #[test]
    fn factorization_reconstructs(a in 1u64..1_000_000, b in 1u64..1_000_000, neg in any::<bool>()) {
        let mut n = BigInt::from(a) * BigInt::from(b);
        if neg {
            n = -n;
        }
        let f = factor(&n).unwrap();
        prop_assert_eq!(f.value(), n);
        prop_assert!(f.factors.windows(2).all(|w| w[0].0 < w[1].0));
    }

    #[test]
    fn rationals_round_trip(p in -10_000i64..10_000, q in 1i64..10_000) {
        let r = Rat::new(p, q);
        prop_assert_eq!(rat_from_str(&rat_to_string(&r)), Some(r));
    }

    #[test]
    fn ideal_norms_multiply(d in discs(300), i in 0usize..64, j in 0usize..64) {
        let disc = make_disc(d).unwrap();
        let forms = reduced_forms(&disc);
        let a = IdealLat::from_form(&disc, &forms[i % forms.len()]).unwrap();
        let b = IdealLat::from_form(&disc, &forms[j % forms.len()]).unwrap();
        prop_assert_eq!(a.mul(&b).norm(), a.norm() * b.norm());
        prop_assert!(a.mul(&b).is_invertible());
    }

    #[test]
    fn ideal_counts_agree(d in discs(150), n in 1i64..300, f2 in 1i64..12, l in prop::sample::select(vec![2i64, 3, 5, 7])) {
        let disc = make_disc(d).unwrap();
        prop_assume!(gcd(n, disc.f) == 1 && disc.f % l != 0);
        prop_assert_eq!(count_a_multiplicative(&disc, f2, l, n), count_a_enumerated(&disc, f2, l, n));
    }

    #[test]
    fn x_terms_are_consistent((d1, d2) in pair(300)) {
        let ctx = PairContext::new(d1, d2).unwrap();
        for t in enumerate_x(&ctx) {
            prop_assert_eq!(4 * t.m + t.x * t.x, d1 * d2);
            prop_assert!(t.m >= 0);
            prop_assert_eq!(t.mult, if t.x == 0 { 1 } else { 2 });
            // reciprocity always leaves an odd number of obstructions
            let s = support_prime(&ctx, t.m);
            prop_assert!(s.is_ok() || t.m == 0);
            if let Ok(Some(l)) = s {
                prop_assert!(t.m == 0 || t.m % l == 0);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn oracle_is_precision_stable((d1, d2) in pair(60), extra in 1u64..256) {
        let (a, b) = (make_disc(d1).unwrap(), make_disc(d2).unwrap());
        let base = j_product(&a, &b).unwrap();
        let cfg = OracleConfig { start_bits: Some(start_precision(&a, &b) + extra), ..OracleConfig::default() };
        prop_assert_eq!(j_product_with(&a, &b, &cfg).unwrap().value, base.value.clone());
        // J(d1, d2) and J(d2, d1) differ at most by sign
        let swapped = j_product(&b, &a).unwrap();
        prop_assert_eq!(num_traits::Signed::abs(&swapped.value), num_traits::Signed::abs(&base.value));
    }

    #[test]
    fn records_round_trip_through_json((d1, d2) in pair(40), mode in prop::sample::select(vec![Mode::Theorem, Mode::Conjecture, Mode::Classic])) {
        prop_assume!(admissible(d1, d2, mode));
        let rec = pair_report(d1, d2, mode, Reading::Consistent, &OracleConfig::default()).unwrap();
        let s = serde_json::to_string(&rec).unwrap();
        let back: ReportRecord = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, rec);
    }
}

#[test]
fn synthetic_record_round_trips() {
    let rec = ReportRecord {
        version: 1,
        mode: Mode::Theorem,
        d1: -3,
        d2: -12,
        j_sign: -1,
        j_abs: "123456789012345678901234567890".into(),
        precision_used: 256,
        rows: vec![Row {
            l: 2,
            v_formula: Some(Rat::new(8, 3)),
            v_oracle: Rat::new(8, 3),
            status: Status::Proved,
            terms: vec![Term { x: 6, m: 0, mult: 2, support: Some(2), value: None }],
        }],
        elapsed_ms: 3,
    };
    let s = serde_json::to_string(&rec).unwrap();
    assert!(s.contains("\"8/3\"") && s.contains("\"proved\"") && s.contains("\"theorem\""));
    assert_eq!(serde_json::from_str::<ReportRecord>(&s).unwrap(), rec);
}
