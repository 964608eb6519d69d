//! The matching order and the Lagrange order on below-diagonal paths:
//! exhaustive unique-maximum verification, the exchange and
//! numerator-difference identities, shift profiles, value-chain export, and
//! the convergence table toward `1 + sqrt(5)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::contfrac::{fibonacci, g_period, matching_number, path_to_cf, Mat2};
use crate::error::{Error, Result};
use crate::paths::{corner_path, count_below_diagonal, enumerate, PathWord, Step};
use crate::quadratic::{lagrange_number, one_plus_sqrt5, LagrangeValue, Surd};

/// Default ceiling on `|D(a, b)|` for exhaustive operations.
pub const DEFAULT_ENUM_GUARD: u64 = 1_000_000;

/// A path together with its two order keys.
#[derive(Clone, Debug)]
pub struct OrderedEntry {
    pub path: PathWord,
    pub m_value: BigInt,
    pub l_value: LagrangeValue,
}

impl OrderedEntry {
    pub fn evaluate(path: PathWord) -> Result<Self> {
        let m_value = matching_number(&path)?;
        let l_value = lagrange_number(&path)?;
        Ok(OrderedEntry {
            path,
            m_value,
            l_value,
        })
    }
}

/// Compares two paths by matching number.
pub fn cmp_m(w1: &PathWord, w2: &PathWord) -> Result<Ordering> {
    Ok(matching_number(w1)?.cmp(&matching_number(w2)?))
}

/// Compares two paths by Lagrange number.
pub fn cmp_l(w1: &PathWord, w2: &PathWord) -> Result<Ordering> {
    Ok(lagrange_number(w1)?.cmp_value(&lagrange_number(w2)?))
}

fn check_guard(a: u64, b: u64, guard: u64) -> Result<()> {
    let size = count_below_diagonal(a, b)?;
    if size > BigInt::from(guard) {
        return Err(Error::EnumerationGuard {
            size: size.to_string(),
            guard,
        });
    }
    Ok(())
}

/// Result of checking that `R^a U^b` strictly dominates every other path of
/// `D(a, b)` under both orders.
#[derive(Clone, Debug)]
pub struct UniqueMaxReport {
    pub a: u64,
    pub b: u64,
    pub count: u64,
    pub max_word: PathWord,
    pub max_m: BigInt,
    pub max_l: LagrangeValue,
    /// Largest matching number among the other paths, if any.
    pub runner_up_m: Option<(PathWord, BigInt)>,
    /// Largest Lagrange number among the other paths, if any.
    pub runner_up_l: Option<(PathWord, LagrangeValue)>,
    pub m_holds: bool,
    pub l_holds: bool,
}

impl UniqueMaxReport {
    pub fn holds(&self) -> bool {
        self.m_holds && self.l_holds
    }
}

pub fn verify_unique_max(a: u64, b: u64, guard: u64) -> Result<UniqueMaxReport> {
    check_guard(a, b, guard)?;
    let corner = corner_path(a, b)?;
    let max_m = matching_number(&corner)?;
    let max_l = lagrange_number(&corner)?;
    let mut count = 0u64;
    let mut runner_up_m: Option<(PathWord, BigInt)> = None;
    let mut runner_up_l: Option<(PathWord, LagrangeValue)> = None;
    let mut m_holds = true;
    let mut l_holds = true;
    for w in enumerate(a, b)? {
        count += 1;
        if w == corner {
            continue;
        }
        let m = matching_number(&w)?;
        let l = lagrange_number(&w)?;
        if m >= max_m {
            m_holds = false;
        }
        if l.cmp_value(&max_l) != Ordering::Less {
            l_holds = false;
        }
        if runner_up_m.as_ref().map_or(true, |(_, best)| m > *best) {
            runner_up_m = Some((w.clone(), m));
        }
        if runner_up_l
            .as_ref()
            .map_or(true, |(_, best)| l.cmp_value(best) == Ordering::Greater)
        {
            runner_up_l = Some((w, l));
        }
    }
    Ok(UniqueMaxReport {
        a,
        b,
        count,
        max_word: corner,
        max_m,
        max_l,
        runner_up_m,
        runner_up_l,
        m_holds,
        l_holds,
    })
}

/// Both sides of the exchange identity
/// `M(w') - M(w) = 2 F_{2u} F_{2r} (p_k s_l + p_{k-1} r_l + p_{k-1} s_l)`,
/// where the convergents come from the parts of the continued fraction
/// before and after the exchanged window.
#[derive(Clone, Debug)]
pub struct ExchangeReport {
    pub original: PathWord,
    pub exchanged: PathWord,
    pub u: u64,
    pub r: u64,
    pub m_original: BigInt,
    pub m_exchanged: BigInt,
    pub difference: BigInt,
    pub closed_form: BigInt,
    /// The convergent bracket `p_k s_l + p_{k-1} r_l + p_{k-1} s_l`.
    pub factor: BigInt,
    pub holds: bool,
    pub equality: bool,
    /// Equality may occur only when the part before the exchanged window is
    /// empty or the single letter `U`.
    pub equality_clause_ok: bool,
}

pub fn verify_exchange_identity(w: &PathWord, block_index: usize) -> Result<ExchangeReport> {
    let exchanged = w.exchange_move(block_index)?;
    let blocks = w.blocks();
    let u = blocks[block_index].run as u64;
    let r = blocks[block_index + 1].run as u64;
    let letters_before: usize = blocks[..block_index].iter().map(|blk| blk.run).sum();
    let t0 = letters_before - 1;
    let t1 = letters_before + (u + r) as usize;

    let steps = w.steps();
    let prefix_entries = segment_cf(&steps[..=t0]);
    let suffix_entries = segment_cf(&steps[t1..]);

    // Sanity: the full encoding splits as prefix ++ window ++ suffix with
    // window = [2, 1^{2u-2}, 2, 1^{2r-2}, 2].
    let mut window = vec![2u64];
    window.extend(std::iter::repeat(1).take(2 * (u as usize) - 2));
    window.push(2);
    window.extend(std::iter::repeat(1).take(2 * (r as usize) - 2));
    window.push(2);
    let mut rebuilt = prefix_entries.clone();
    rebuilt.extend_from_slice(&window);
    rebuilt.extend_from_slice(&suffix_entries);
    debug_assert_eq!(rebuilt, path_to_cf(w)?.entries());

    let pm = Mat2::from_entries(&prefix_entries);
    let sm = Mat2::from_entries(&suffix_entries);
    let factor = &pm.tl * &sm.bl + &pm.tr * &sm.tl + &pm.tr * &sm.bl;
    let closed_form = BigInt::from(2) * fibonacci(2 * u) * fibonacci(2 * r) * &factor;

    let m_original = matching_number(w)?;
    let m_exchanged = matching_number(&exchanged)?;
    let difference = &m_exchanged - &m_original;
    let holds = difference == closed_form;
    let equality = difference.is_zero();
    let prefix_is_empty = t0 == 0;
    let prefix_is_single_u = t0 == 1 && steps[0] == Step::U;
    let equality_clause_ok = !equality || prefix_is_empty || prefix_is_single_u;

    Ok(ExchangeReport {
        original: w.clone(),
        exchanged,
        u,
        r,
        m_original,
        m_exchanged,
        difference,
        closed_form,
        factor,
        holds,
        equality,
        equality_clause_ok,
    })
}

/// Continued-fraction entries of a subword, empty for a single letter.
fn segment_cf(steps: &[Step]) -> Vec<u64> {
    let mut entries = Vec::new();
    for pair in steps.windows(2) {
        if pair[0] == pair[1] {
            entries.push(1);
            entries.push(1);
        } else {
            entries.push(2);
        }
    }
    entries
}

/// Both sides of the general numerator-difference identity for
/// `alpha  = [prefix, A, middle, B, suffix]` versus
/// `alpha' = [prefix, A-1, 1, reverse(middle), 1, B-1, suffix]`.
#[derive(Clone, Debug)]
pub struct NumeratorDiffReport {
    pub alpha: Vec<u64>,
    pub alpha_prime: Vec<u64>,
    pub n_alpha: BigInt,
    pub n_alpha_prime: BigInt,
    pub difference: BigInt,
    pub closed_form: BigInt,
    pub holds: bool,
}

pub fn verify_numerator_difference(
    prefix: &[u64],
    window_a: u64,
    middle: &[u64],
    window_b: u64,
    suffix: &[u64],
) -> Result<NumeratorDiffReport> {
    for &v in [window_a, window_b].iter() {
        if v < 2 {
            return Err(Error::WindowEntryTooSmall { value: v });
        }
    }
    for (index, &e) in prefix.iter().chain(middle).chain(suffix).enumerate() {
        if e == 0 {
            return Err(Error::ZeroEntry { index });
        }
    }

    let mut alpha = prefix.to_vec();
    alpha.push(window_a);
    alpha.extend_from_slice(middle);
    alpha.push(window_b);
    alpha.extend_from_slice(suffix);

    let mut alpha_prime = prefix.to_vec();
    alpha_prime.push(window_a - 1);
    alpha_prime.push(1);
    alpha_prime.extend(middle.iter().rev());
    alpha_prime.push(1);
    alpha_prime.push(window_b - 1);
    alpha_prime.extend_from_slice(suffix);

    let n_alpha = Mat2::from_entries(&alpha).tl;
    let n_alpha_prime = Mat2::from_entries(&alpha_prime).tl;
    let difference = &n_alpha_prime - &n_alpha;

    let pm = Mat2::from_entries(prefix);
    let mm = Mat2::from_entries(middle);
    let sm = Mat2::from_entries(suffix);
    let a_big = BigInt::from(window_a);
    let b_big = BigInt::from(window_b);
    let factor1 = &mm.tr + &mm.bl + &mm.br;
    let factor2 = &pm.tl * &sm.tl * (&a_big * &b_big - &a_big - &b_big)
        + &pm.tl * &sm.bl * (&a_big - BigInt::one())
        + &pm.tr * &sm.tl * (&b_big - BigInt::one())
        + &pm.tr * &sm.bl;
    let closed_form = factor1 * factor2;
    let holds = difference == closed_form && !difference.is_negative();

    Ok(NumeratorDiffReport {
        alpha,
        alpha_prime,
        n_alpha,
        n_alpha_prime,
        difference,
        closed_form,
        holds,
    })
}

/// For each rotation of the path's period that begins with `2`, the pair
/// `(i, j)` where `2(i-1)` is the run of ones right after the leading `2`
/// and `2(j-1)` is the run of ones at the end. Returns the multiset, sorted.
pub fn shift_profile(w: &PathWord) -> Result<Vec<(u64, u64)>> {
    let period = g_period(w)?;
    let entries = period.period().entries();
    let mut out = Vec::new();
    for k in 0..entries.len() {
        if entries[k] != 2 {
            continue;
        }
        let rot = period.rotation(k);
        let leading = rot[1..].iter().take_while(|&&e| e == 1).count();
        let trailing = rot.iter().rev().take_while(|&&e| e == 1).count();
        debug_assert_eq!(leading % 2, 0);
        debug_assert_eq!(trailing % 2, 0);
        out.push((leading as u64 / 2 + 1, trailing as u64 / 2 + 1));
    }
    out.sort_unstable();
    Ok(out)
}

/// The five joint relation classes of an oriented pair, written with the
/// direction of each order: `Mup` means the first path is strictly smaller
/// under the matching order, `Meq` means the matching numbers tie, and
/// likewise for `L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RelationClass {
    MupLup,
    MupLdown,
    MupLeq,
    MeqLup,
    MeqLeq,
}

impl RelationClass {
    pub fn tag(&self) -> &'static str {
        match self {
            RelationClass::MupLup => "MupLup",
            RelationClass::MupLdown => "MupLdown",
            RelationClass::MupLeq => "MupLeq",
            RelationClass::MeqLup => "MeqLup",
            RelationClass::MeqLeq => "MeqLeq",
        }
    }
}

impl fmt::Display for RelationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// An unordered pair oriented so the first path is minimal (by matching
/// number, then Lagrange number, then lexicographically), with its class.
#[derive(Clone, Debug)]
pub struct PairClassification {
    pub first: OrderedEntry,
    pub second: OrderedEntry,
    pub class: RelationClass,
}

pub fn classify_pair(w1: &PathWord, w2: &PathWord) -> Result<PairClassification> {
    let mut first = OrderedEntry::evaluate(w1.clone())?;
    let mut second = OrderedEntry::evaluate(w2.clone())?;
    let orientation = first
        .m_value
        .cmp(&second.m_value)
        .then_with(|| first.l_value.cmp_value(&second.l_value))
        .then_with(|| first.path.cmp(&second.path));
    if orientation == Ordering::Greater {
        std::mem::swap(&mut first, &mut second);
    }
    let class = match (
        first.m_value.cmp(&second.m_value),
        first.l_value.cmp_value(&second.l_value),
    ) {
        (Ordering::Less, Ordering::Less) => RelationClass::MupLup,
        (Ordering::Less, Ordering::Greater) => RelationClass::MupLdown,
        (Ordering::Less, Ordering::Equal) => RelationClass::MupLeq,
        (Ordering::Equal, Ordering::Less) => RelationClass::MeqLup,
        (Ordering::Equal, Ordering::Equal) => RelationClass::MeqLeq,
        (Ordering::Greater, _) | (_, Ordering::Greater) => {
            unreachable!("orientation places the smaller entry first")
        }
    };
    Ok(PairClassification {
        first,
        second,
        class,
    })
}

/// Which of the two orders to chain by.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    Matching,
    Lagrange,
}

impl OrderKind {
    pub fn letter(&self) -> &'static str {
        match self {
            OrderKind::Matching => "M",
            OrderKind::Lagrange => "L",
        }
    }
}

/// One value-equivalence class of the chain.
#[derive(Clone, Debug)]
pub struct ChainClass {
    pub label: String,
    pub members: Vec<String>,
}

/// Since both orders are total on values, the covering structure exported
/// here is the chain of value-equivalence classes, labelled explicitly as a
/// value-chain.
#[derive(Clone, Debug)]
pub struct HasseChain {
    pub a: u64,
    pub b: u64,
    pub order: OrderKind,
    pub classes: Vec<ChainClass>,
}

impl HasseChain {
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph chain {{");
        let _ = writeln!(
            out,
            "  label=\"value-chain ({}) for D({},{})\";",
            self.order.letter(),
            self.a,
            self.b
        );
        let _ = writeln!(out, "  rankdir=BT;");
        let _ = writeln!(out, "  node [shape=box];");
        for (i, class) in self.classes.iter().enumerate() {
            let _ = writeln!(
                out,
                "  c{i} [label=\"{}\\n{}\"];",
                class.label,
                class.members.join("\\n")
            );
        }
        for i in 1..self.classes.len() {
            let _ = writeln!(out, "  c{} -> c{};", i - 1, i);
        }
        let _ = writeln!(out, "}}");
        out
    }
}

pub fn hasse_chain(a: u64, b: u64, order: OrderKind, guard: u64) -> Result<HasseChain> {
    check_guard(a, b, guard)?;
    let mut classes: Vec<ChainClass> = Vec::new();
    match order {
        OrderKind::Matching => {
            let mut grouped: BTreeMap<BigInt, Vec<String>> = BTreeMap::new();
            for w in enumerate(a, b)? {
                grouped
                    .entry(matching_number(&w)?)
                    .or_default()
                    .push(w.to_string());
            }
            for (value, members) in grouped {
                classes.push(ChainClass {
                    label: format!("M={value}"),
                    members,
                });
            }
        }
        OrderKind::Lagrange => {
            let mut grouped: BTreeMap<LagrangeValue, Vec<String>> = BTreeMap::new();
            for w in enumerate(a, b)? {
                grouped
                    .entry(lagrange_number(&w)?)
                    .or_default()
                    .push(w.to_string());
            }
            for (value, members) in grouped {
                classes.push(ChainClass {
                    label: format!("L={value}"),
                    members,
                });
            }
        }
    }
    Ok(HasseChain {
        a,
        b,
        order,
        classes,
    })
}

/// One row of the convergence table for `L(corner(n+1, n))`.
#[derive(Clone, Debug)]
pub struct SupRow {
    pub n: u64,
    pub value: LagrangeValue,
    pub approx: String,
    /// Decimal rendering of `1 + sqrt(5) - L`; display only.
    pub gap: String,
    /// `1 + sqrt(5) - 5/2^{2n-1} < L`, checked exactly.
    pub lower_ok: bool,
    /// `L < 1 + sqrt(5)`, checked exactly.
    pub upper_ok: bool,
    /// Strictly larger than the previous row, checked exactly.
    pub increased: bool,
}

/// Tabulates `L(corner(n+1, n))` for `n = 1..=n_max` with exact bound
/// verdicts and display-precision gaps.
pub fn sup_convergence_rows(n_max: u64, digits: u32) -> Result<Vec<SupRow>> {
    let limit = one_plus_sqrt5();
    let mut rows = Vec::new();
    let mut previous: Option<LagrangeValue> = None;
    for n in 1..=n_max {
        let w = corner_path(n + 1, n)?;
        let value = lagrange_number(&w)?;
        let surd = value.as_surd();
        let upper_ok = surd.cmp_surd(&limit) == Ordering::Less;
        // 1 + sqrt(5) - 5/2^{2n-1}, as (x + y sqrt(5))/z.
        let den = BigInt::one() << (2 * n as usize - 1);
        let lower = Surd::new(&den - BigInt::from(5), den.clone(), den, 5)?;
        let lower_ok = lower.cmp_surd(&surd) == Ordering::Less;
        let increased = previous
            .as_ref()
            .map_or(true, |prev| value.cmp_value(prev) == Ordering::Greater);
        rows.push(SupRow {
            n,
            approx: value.decimal(digits),
            gap: decimal_gap(&limit, &surd, digits),
            lower_ok,
            upper_ok,
            increased,
            value: value.clone(),
        });
        previous = Some(value);
    }
    Ok(rows)
}

/// Decimal rendering of `a - b` for display: both operands are floored at
/// eight guard digits, so the printed digits are reliable at any sane
/// precision but this string is never used in comparisons.
fn decimal_gap(a: &Surd, b: &Surd, digits: u32) -> String {
    let fa = a.floor_scaled(digits + 8);
    let fb = b.floor_scaled(digits + 8);
    let guard = BigInt::from(10u32).pow(8);
    let rounded = Integer::div_floor(&((fa - fb) + &guard / 2), &guard);
    crate::quadratic::format_scaled_decimal(&rounded, digits)
}

/// Exhaustive pair classification over `D(a, b)`.
#[derive(Clone, Debug)]
pub struct ClassScan {
    pub a: u64,
    pub b: u64,
    pub path_count: u64,
    pub pair_count: u64,
    pub mup_lup: u64,
    pub mup_ldown: u64,
    /// All pairs with equal Lagrange numbers but distinct matching numbers.
    pub mup_leq_pairs: Vec<(String, String)>,
    /// All pairs with equal matching numbers but distinct Lagrange numbers.
    pub meq_lup_pairs: Vec<(String, String)>,
    /// All pairs with both values equal.
    pub meq_leq_pairs: Vec<(String, String)>,
}

pub fn scan_classes(a: u64, b: u64, guard: u64) -> Result<ClassScan> {
    check_guard(a, b, guard)?;
    let entries: Vec<OrderedEntry> = enumerate(a, b)?
        .map(OrderedEntry::evaluate)
        .collect::<Result<_>>()?;
    let mut scan = ClassScan {
        a,
        b,
        path_count: entries.len() as u64,
        pair_count: 0,
        mup_lup: 0,
        mup_ldown: 0,
        mup_leq_pairs: Vec::new(),
        meq_lup_pairs: Vec::new(),
        meq_leq_pairs: Vec::new(),
    };
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            scan.pair_count += 1;
            let (x, y) = (&entries[i], &entries[j]);
            // Orient by M, then L (both already exact keys).
            let m_ord = x.m_value.cmp(&y.m_value);
            let l_ord = x.l_value.cmp_value(&y.l_value);
            let (m_ord, l_ord) = match m_ord.then(l_ord) {
                Ordering::Greater => (m_ord.reverse(), l_ord.reverse()),
                _ => (m_ord, l_ord),
            };
            let pair = (x.path.to_string(), y.path.to_string());
            match (m_ord, l_ord) {
                (Ordering::Less, Ordering::Less) => scan.mup_lup += 1,
                (Ordering::Less, Ordering::Greater) => scan.mup_ldown += 1,
                (Ordering::Less, Ordering::Equal) => scan.mup_leq_pairs.push(pair),
                (Ordering::Equal, Ordering::Less) | (Ordering::Equal, Ordering::Greater) => {
                    scan.meq_lup_pairs.push(pair)
                }
                (Ordering::Equal, Ordering::Equal) => scan.meq_leq_pairs.push(pair),
                (Ordering::Greater, _) => unreachable!("orientation fixed above"),
            }
        }
    }
    Ok(scan)
}
