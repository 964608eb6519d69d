//! Property-based and exhaustive cross-module invariants at desk scale.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use proptest::prelude::*;

use markov_paths::contfrac::{
    cf_matrix, compare_cf, convergents, g_period, matching_number, numerator, rational_value,
    CfRef, CfSeq, PeriodicCf,
};
use markov_paths::orders::{shift_profile, verify_exchange_identity, verify_unique_max};
use markov_paths::paths::{corner_path, enumerate, PathWord, Step};
use markov_paths::quadratic::{
    eval_purely_periodic, lagrange_number, lagrange_number_via_shifts, shift_contribution, Surd,
};
use markov_paths::snake::{build_snake, count_perfect_matchings};

fn step_vec() -> impl Strategy<Value = Vec<Step>> {
    prop::collection::vec(prop::bool::ANY, 1..24)
        .prop_map(|bits| bits.into_iter().map(|b| if b { Step::U } else { Step::R }).collect())
}

fn entry_vec() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1u64..=4, 1..12)
}

fn small_surd() -> impl Strategy<Value = Surd> {
    (-20i64..=20, -8i64..=8, 1i64..=9, prop::sample::select(vec![0i64, 2, 3, 5, 6, 7, 10, 13]))
        .prop_map(|(x, y, z, d)| Surd::new(x, y, z, d).unwrap())
}

proptest! {
    #[test]
    fn word_roundtrips_through_text(steps in step_vec()) {
        let w = PathWord::from_steps(steps).unwrap();
        let again = PathWord::parse(&w.to_string()).unwrap();
        prop_assert_eq!(w, again);
    }

    #[test]
    fn blocks_partition_the_word(steps in step_vec()) {
        let w = PathWord::from_steps(steps).unwrap();
        let blocks = w.blocks();
        let total: usize = blocks.iter().map(|b| b.run).sum();
        prop_assert_eq!(total, w.len());
        for pair in blocks.windows(2) {
            prop_assert_ne!(pair[0].step, pair[1].step);
        }
    }

    #[test]
    fn determinant_alternates_with_length(entries in entry_vec()) {
        let cf = CfSeq::new(entries).unwrap();
        let expected = if cf.len() % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        prop_assert_eq!(cf_matrix(&cf).det(), expected);
    }

    #[test]
    fn matrix_columns_are_the_last_convergents(entries in entry_vec()) {
        let cf = CfSeq::new(entries).unwrap();
        let m = cf_matrix(&cf);
        let conv = convergents(&cf);
        let (p, q) = conv.last().unwrap().clone();
        prop_assert_eq!(&m.tl, &p);
        prop_assert_eq!(&m.bl, &q);
        if conv.len() >= 2 {
            let (p1, q1) = conv[conv.len() - 2].clone();
            prop_assert_eq!(&m.tr, &p1);
            prop_assert_eq!(&m.br, &q1);
        }
        prop_assert!(p.gcd(&q).is_one());
    }

    #[test]
    fn numerator_grows_when_an_entry_grows(entries in entry_vec(), pick in 0usize..12) {
        let cf = CfSeq::new(entries.clone()).unwrap();
        let before = numerator(&cf);
        let mut bumped = entries;
        let at = pick % bumped.len();
        bumped[at] += 1;
        let after = numerator(&CfSeq::new(bumped).unwrap());
        prop_assert!(after > before);
    }

    #[test]
    fn comparison_matches_rational_order(
        xs in prop::collection::vec(1u64..=2, 1..12),
        ys in prop::collection::vec(1u64..=2, 1..12),
    ) {
        let x = CfSeq::new(xs).unwrap();
        let y = CfSeq::new(ys).unwrap();
        prop_assert_eq!(
            compare_cf(CfRef::Finite(&x), CfRef::Finite(&y)),
            rational_value(&x).cmp(&rational_value(&y))
        );
    }

    #[test]
    fn surd_comparison_is_antisymmetric(a in small_surd(), b in small_surd()) {
        prop_assert_eq!(a.cmp_surd(&b), b.cmp_surd(&a).reverse());
    }

    #[test]
    fn surd_sum_respects_order(a in small_surd(), b in small_surd()) {
        // a <= b  iff  a - b <= 0, over a shared radicand.
        if let Ok(diff) = a.sub(&b) {
            prop_assert_eq!(a.cmp_surd(&b), diff.sign());
        }
    }

    #[test]
    fn surd_inverse_roundtrips(a in small_surd()) {
        if !a.is_zero() {
            let inv = a.inv().unwrap();
            prop_assert_eq!(a.mul(&inv).unwrap(), Surd::from_integer(1));
            prop_assert_eq!(inv.inv().unwrap(), a);
        }
    }

    #[test]
    fn periodic_value_is_fixed_by_its_matrix(entries in prop::collection::vec(1u64..=3, 1..8)) {
        let p = PeriodicCf::new(CfSeq::new(entries).unwrap());
        let value = eval_purely_periodic(&p);
        let m = cf_matrix(p.period());
        let num = value.scale_int(&m.tl).add(&Surd::from_integer(m.tr.clone())).unwrap();
        let den = value.scale_int(&m.bl).add(&Surd::from_integer(m.br.clone())).unwrap();
        let image = num.mul(&den.inv().unwrap()).unwrap();
        prop_assert_eq!(image, value);
    }
}

#[test]
fn matching_oracle_agrees_up_to_nine() {
    for a in 2..=8u64 {
        for b in 1..a {
            if a + b > 9 {
                continue;
            }
            for w in enumerate(a, b).unwrap() {
                let counted = count_perfect_matchings(&build_snake(&w).unwrap()).unwrap();
                assert_eq!(counted, matching_number(&w).unwrap(), "matchings of {w}");
            }
        }
    }
}

#[test]
fn lagrange_routes_agree_up_to_eleven() {
    // The canonical form scans only rotations starting with 2; the direct
    // route maximizes over every shift. Their agreement shows the
    // restriction loses nothing.
    for a in 2..=10u64 {
        for b in 1..a {
            if a + b > 11 {
                continue;
            }
            for w in enumerate(a, b).unwrap() {
                let canonical = lagrange_number(&w).unwrap().as_surd();
                let direct = lagrange_number_via_shifts(&w).unwrap();
                assert_eq!(canonical, direct, "Lagrange routes for {w}");
            }
        }
    }
}

#[test]
fn trace_and_determinant_are_rotation_invariant() {
    use markov_paths::contfrac::cf_matrix as matrix_of;
    for a in 2..=7u64 {
        for b in 1..a {
            for w in enumerate(a, b).unwrap() {
                let period = g_period(&w).unwrap();
                let base = matrix_of(period.period());
                let (trace, det) = (base.trace(), base.det());
                assert!(det.is_one(), "period determinant of {w}");
                for k in 1..period.period().len() {
                    let rotated =
                        cf_matrix(&CfSeq::new(period.rotation(k)).unwrap());
                    assert_eq!(rotated.trace(), trace, "trace drifts for {w} at {k}");
                    assert_eq!(rotated.det(), det, "det drifts for {w} at {k}");
                }
            }
        }
    }
}

#[test]
fn shift_split_constants_up_to_eight() {
    let five_halves = Surd::from_rational(5, 2).unwrap();
    let one_plus_sqrt3 = Surd::new(1, 1, 1, 3).unwrap();
    for a in 2..=7u64 {
        for b in 1..a {
            if a + b > 8 {
                continue;
            }
            for w in enumerate(a, b).unwrap() {
                let period = g_period(&w).unwrap();
                for (k, &entry) in period.period().entries().iter().enumerate() {
                    let contribution = shift_contribution(&period, k);
                    if entry == 1 {
                        assert_eq!(
                            contribution.cmp_surd(&five_halves),
                            Ordering::Less,
                            "1-entry of {w} at {k}"
                        );
                    } else {
                        assert_ne!(
                            contribution.cmp_surd(&one_plus_sqrt3),
                            Ordering::Less,
                            "2-entry of {w} at {k}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn corner_is_unique_maximum_up_to_nine() {
    for a in 2..=8u64 {
        for b in 1..a {
            if a + b > 9 {
                continue;
            }
            let report = verify_unique_max(a, b, 1_000_000).unwrap();
            assert!(report.holds(), "corner not maximal in D({a},{b})");
        }
    }
}

#[test]
fn exchange_identity_holds_everywhere_up_to_nine() {
    for a in 2..=8u64 {
        for b in 1..a {
            if a + b > 9 {
                continue;
            }
            for w in enumerate(a, b).unwrap() {
                for i in w.exchange_positions() {
                    let report = verify_exchange_identity(&w, i).unwrap();
                    assert!(report.holds, "identity fails for {w} at block {i}");
                    assert!(report.equality_clause_ok, "equality clause for {w} at {i}");
                    assert!(
                        report.difference >= BigInt::from(0),
                        "exchange decreased M for {w}"
                    );
                }
            }
        }
    }
}

#[test]
fn slope_rule_is_never_violated_at_desk_scale() {
    use markov_paths::markov::{slope_inequality_check, SlopeVerdict};
    let mut indices = Vec::new();
    for a in 2..=9u64 {
        for b in 1..a {
            if a + b <= 10 && gcd(a, b) == 1 {
                indices.push((a, b));
            }
        }
    }
    for (i, &(a, b)) in indices.iter().enumerate() {
        for &(a2, b2) in &indices[i + 1..] {
            let report = slope_inequality_check(a, b, a2, b2).unwrap();
            assert_ne!(
                report.as_given.verdict,
                SlopeVerdict::Violated,
                "({a},{b}) vs ({a2},{b2}) as given"
            );
            assert_ne!(
                report.flipped.verdict,
                SlopeVerdict::Violated,
                "({a},{b}) vs ({a2},{b2}) flipped"
            );
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[test]
fn profiles_are_dominated_by_the_corner() {
    for a in 2..=7u64 {
        for b in 1..a {
            let corner = corner_path(a, b).unwrap();
            for w in enumerate(a, b).unwrap() {
                let profile = shift_profile(&w).unwrap();
                if w == corner {
                    assert!(profile.contains(&(a, b)));
                    continue;
                }
                for &(i, j) in &profile {
                    assert!((i < a && j < b) || (i < b && j < a));
                }
            }
        }
    }
}
