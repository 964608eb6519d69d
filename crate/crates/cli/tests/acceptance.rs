//! Acceptance suite: one test per criterion, each printing a PASS line
//! (visible with `cargo test --test acceptance -- --nocapture`). Every
//! tolerance is zero; all comparisons are exact integer or surd arithmetic.

use std::cmp::Ordering;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use markov_paths::contfrac::{
    check_fib_identities, compare_cf, g_period, matching_number, rational_value, CfRef, CfSeq,
};
use markov_paths::markov::{
    lagrange_markov_identity, markov_number, verify_markov_membership,
};
use markov_paths::orders::{
    classify_pair, sup_convergence_rows, verify_exchange_identity, verify_numerator_difference,
    verify_unique_max, RelationClass,
};
use markov_paths::paths::{enumerate, PathWord};
use markov_paths::quadratic::{
    bounds_check_corner, shift_contribution, Surd,
};
use markov_paths::snake::{build_snake, count_perfect_matchings};
use markov_paths::BigInt;

fn bin_output(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_markov-paths"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
    )
}

/// Index pairs `a > b >= 1` with `a + b <= total`.
fn boxes(total: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for a in 2..=total {
        for b in 1..a {
            if a + b <= total {
                out.push((a, b));
            }
        }
    }
    out
}

#[test]
fn criterion_01_named_example_exactness() {
    let start = Instant::now();

    let (code, out) = bin_output(&["path", "RRRUURURU"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"M\":\"1115\""));
    assert!(out.contains("\"disc\":\"11390621\""));
    assert!(out.contains("\"q\":\"1055\""));

    let (code, out) = bin_output(&["path", "RRRUURRUU"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"M\":\"1177\""));
    assert!(out.contains("\"disc\":\"14130077\""));
    assert!(out.contains("\"q\":\"1177\""));

    // 14130077 = 17^2 * 48893, so sqrt(14130077)/1177 = 17 sqrt(48893)/1177.
    assert_eq!(BigInt::from(17 * 17 * 48893u64), BigInt::from(14130077u64));

    let w = PathWord::parse("RRRUURURU").unwrap();
    let wp = PathWord::parse("RRRUURRUU").unwrap();
    let class = classify_pair(&w, &wp).unwrap();
    assert_eq!(class.class, RelationClass::MupLdown);
    assert_eq!(class.first.path, w);

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("acceptance 1 PASS: named example exactness (M, L, classification) in {elapsed:?}");
}

#[test]
fn criterion_02_matching_oracle_equivalence() {
    let start = Instant::now();
    let mut checked = 0u64;
    for (a, b) in boxes(11) {
        for w in enumerate(a, b).unwrap() {
            let counted = count_perfect_matchings(&build_snake(&w).unwrap()).unwrap();
            assert_eq!(counted, matching_number(&w).unwrap(), "oracle mismatch for {w}");
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 300.0, "took {elapsed:?}");
    println!(
        "acceptance 2 PASS: snake-graph count equals numerator on {checked} paths (a+b <= 11) in {elapsed:?}"
    );
}

#[test]
fn criterion_03_corner_is_strict_unique_maximum() {
    let start = Instant::now();
    let mut boxes_checked = 0u64;
    for (a, b) in boxes(11) {
        let report = verify_unique_max(a, b, 1_000_000).unwrap();
        assert!(report.holds(), "corner not strictly maximal in D({a},{b})");
        boxes_checked += 1;
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 600.0, "took {elapsed:?}");
    println!(
        "acceptance 3 PASS: R^a U^b unique maximum under both orders in {boxes_checked} boxes (a+b <= 11) in {elapsed:?}"
    );
}

#[test]
fn criterion_04_exchange_identity_everywhere() {
    let start = Instant::now();
    let mut positions = 0u64;
    for (a, b) in boxes(11) {
        for w in enumerate(a, b).unwrap() {
            for i in w.exchange_positions() {
                let report = verify_exchange_identity(&w, i).unwrap();
                assert!(report.holds, "identity fails for {w} at block {i}");
                assert!(
                    report.equality_clause_ok,
                    "equality clause violated for {w} at block {i}"
                );
                positions += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    println!(
        "acceptance 4 PASS: exchange identity exact at {positions} positions (a+b <= 11) in {elapsed:?}"
    );
}

#[test]
fn criterion_05_numerator_difference_randomized() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d61726b6f76);
    let segment = |rng: &mut ChaCha8Rng| -> Vec<u64> {
        let len = rng.gen_range(0..=8);
        (0..len).map(|_| rng.gen_range(1..=3)).collect()
    };
    for trial in 0..10_000 {
        let prefix = segment(&mut rng);
        let middle = segment(&mut rng);
        let suffix = segment(&mut rng);
        let a = rng.gen_range(2..=3);
        let b = rng.gen_range(2..=3);
        let report = verify_numerator_difference(&prefix, a, &middle, b, &suffix).unwrap();
        assert!(
            report.holds,
            "closed form fails at trial {trial}: {:?} {a} {:?} {b} {:?}",
            prefix, middle, suffix
        );
    }
    let elapsed = start.elapsed();
    println!("acceptance 5 PASS: numerator-difference closed form exact on 10000 random instances in {elapsed:?}");
}

#[test]
fn criterion_06_shift_split_constants() {
    let start = Instant::now();
    let five_halves = Surd::from_rational(5, 2).unwrap();
    let one_plus_sqrt3 = Surd::new(1, 1, 1, 3).unwrap();
    let mut shifts = 0u64;
    for (a, b) in boxes(10) {
        for w in enumerate(a, b).unwrap() {
            let period = g_period(&w).unwrap();
            for (k, &entry) in period.period().entries().iter().enumerate() {
                let contribution = shift_contribution(&period, k);
                if entry == 1 {
                    assert_eq!(
                        contribution.cmp_surd(&five_halves),
                        Ordering::Less,
                        "1-entry contribution not below 5/2 for {w} at {k}"
                    );
                } else {
                    assert_ne!(
                        contribution.cmp_surd(&one_plus_sqrt3),
                        Ordering::Less,
                        "2-entry contribution below 1+sqrt(3) for {w} at {k}"
                    );
                }
                shifts += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    println!(
        "acceptance 6 PASS: split constants (1-shifts < 5/2, 2-shifts >= 1+sqrt3) on {shifts} shifts (a+b <= 10) in {elapsed:?}"
    );
}

#[test]
fn criterion_07_corner_bounds_and_convergence() {
    let start = Instant::now();
    for a in 2..=12u64 {
        for b in 1..a {
            let report = bounds_check_corner(a, b).unwrap();
            assert!(report.lower_ok, "lower bound fails at ({a},{b})");
            assert!(report.upper_ok, "upper bound fails at ({a},{b})");
        }
    }
    let rows = sup_convergence_rows(12, 12).unwrap();
    assert_eq!(rows.len(), 12);
    for row in &rows {
        // lower_ok is exactly: gap to 1+sqrt(5) below 5/2^{2n-1}.
        assert!(row.lower_ok, "gap bound fails at n={}", row.n);
        assert!(row.upper_ok, "upper bound not strict at n={}", row.n);
        assert!(row.increased, "not strictly increasing at n={}", row.n);
    }
    let elapsed = start.elapsed();
    println!(
        "acceptance 7 PASS: two-sided corner bounds (a > b, a <= 12) and monotone convergence table (n <= 12) in {elapsed:?}"
    );
}

#[test]
fn criterion_08_markov_cross_checks() {
    let start = Instant::now();
    let named = [(2u64, 1u64, 5u64), (3, 1, 13), (3, 2, 29), (4, 3, 169)];
    for (a, b, m) in named {
        assert_eq!(markov_number(a, b).unwrap(), BigInt::from(m));
    }
    let mut indices = 0u64;
    for (a, b) in boxes(12) {
        if num_gcd(a, b) != 1 {
            continue;
        }
        assert!(
            verify_markov_membership(a, b, 25).unwrap(),
            "markov number of ({a},{b}) not a tree maximum at depth 25"
        );
        let report = lagrange_markov_identity(a, b).unwrap();
        assert!(report.holds, "identity fails at ({a},{b})");
        indices += 1;
    }
    let elapsed = start.elapsed();
    println!(
        "acceptance 8 PASS: markov values 5/13/29/169, tree membership and disc*m^2 = (9m^2-4)q^2 on {indices} coprime indices (a+b <= 12) in {elapsed:?}"
    );
}

fn num_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[test]
fn criterion_09_fibonacci_identities_and_comparison() {
    let start = Instant::now();
    for s in 1..=20 {
        for t in 1..=20 {
            let check = check_fib_identities(s, t);
            assert!(check.all(), "identity fails at s={s}, t={t}");
        }
    }

    // Every {1,2}-sequence of length <= 12, with an independent u64 oracle.
    let mut seqs: Vec<Vec<u64>> = Vec::new();
    for len in 1..=12u32 {
        for mask in 0u32..(1 << len) {
            let seq: Vec<u64> = (0..len)
                .map(|i| if mask & (1 << i) != 0 { 2 } else { 1 })
                .collect();
            seqs.push(seq);
        }
    }
    let seqs: Vec<CfSeq> = seqs.into_iter().map(|v| CfSeq::new(v).unwrap()).collect();
    let fractions: Vec<(u64, u64)> = seqs
        .iter()
        .map(|s| {
            let (mut p1, mut p0) = (1u64, 0u64);
            let (mut q1, mut q0) = (0u64, 1u64);
            for &e in s.entries() {
                let p = e * p1 + p0;
                let q = e * q1 + q0;
                p0 = p1;
                p1 = p;
                q0 = q1;
                q1 = q;
            }
            (p1, q1)
        })
        .collect();
    // Spot-check the oracle against the library's exact rationals.
    for (s, &(p, q)) in seqs.iter().zip(&fractions).step_by(97) {
        let v = rational_value(s);
        assert_eq!(v.numer(), &BigInt::from(p));
        assert_eq!(v.denom(), &BigInt::from(q));
    }
    let mut compared = 0u64;
    for i in 0..seqs.len() {
        let (pi, qi) = fractions[i];
        for j in i..seqs.len() {
            let (pj, qj) = fractions[j];
            let expected = (pi as u128 * qj as u128).cmp(&(pj as u128 * qi as u128));
            let got = compare_cf(CfRef::Finite(&seqs[i]), CfRef::Finite(&seqs[j]));
            assert_eq!(got, expected, "mismatch for {} vs {}", seqs[i], seqs[j]);
            assert_eq!(
                compare_cf(CfRef::Finite(&seqs[j]), CfRef::Finite(&seqs[i])),
                expected.reverse()
            );
            compared += 2;
        }
    }
    let elapsed = start.elapsed();
    println!(
        "acceptance 9 PASS: Fibonacci identities (s,t <= 20) and entrywise comparison vs rationals on {compared} ordered pairs in {elapsed:?}"
    );
}

#[test]
fn criterion_10_parallel_enumeration_determinism() {
    let start = Instant::now();
    let (code1, sequential) = bin_output(&["enumerate", "7", "5", "--jobs", "1"]);
    let (code8, parallel) = bin_output(&["enumerate", "7", "5", "--jobs", "8"]);
    assert_eq!(code1, 0);
    assert_eq!(code8, 0);
    assert!(!sequential.is_empty());
    assert_eq!(sequential, parallel, "outputs differ between --jobs 1 and --jobs 8");
    let elapsed = start.elapsed();
    println!("acceptance 10 PASS: enumerate 7 5 byte-identical across --jobs 1 and --jobs 8 in {elapsed:?}");
}
