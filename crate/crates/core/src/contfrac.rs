//! Finite and purely periodic continued fractions over big integers: the
//! path encoding, convergents, 2x2 matrix products, matching numbers,
//! Fibonacci identities, and exact entrywise comparison.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::paths::PathWord;

/// A finite continued fraction `[a_0, a_1, ..., a_t]` with positive entries.
/// Path-derived sequences have entries in `{1, 2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CfSeq {
    entries: Vec<u64>,
}

impl CfSeq {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyContinuedFraction);
        }
        validate_entries(&entries)?;
        Ok(CfSeq { entries })
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for CfSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

fn validate_entries(entries: &[u64]) -> Result<()> {
    for (index, &e) in entries.iter().enumerate() {
        if e == 0 {
            return Err(Error::ZeroEntry { index });
        }
    }
    Ok(())
}

/// A purely periodic continued fraction given by one period, repeated
/// forever.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicCf {
    period: CfSeq,
}

impl PeriodicCf {
    pub fn new(period: CfSeq) -> Self {
        PeriodicCf { period }
    }

    pub fn period(&self) -> &CfSeq {
        &self.period
    }

    /// The period rotated left by `k` places.
    pub fn rotation(&self, k: usize) -> Vec<u64> {
        let e = self.period.entries();
        let k = k % e.len();
        let mut out = Vec::with_capacity(e.len());
        out.extend_from_slice(&e[k..]);
        out.extend_from_slice(&e[..k]);
        out
    }
}

impl fmt::Display for PeriodicCf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[per {}]", self.period)
    }
}

/// 2x2 integer matrix `[[tl, tr], [bl, br]]`. For a continued fraction the
/// product of elementary factors holds the last two convergents as columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2 {
    pub tl: BigInt,
    pub tr: BigInt,
    pub bl: BigInt,
    pub br: BigInt,
}

impl Mat2 {
    pub fn identity() -> Self {
        Mat2 {
            tl: BigInt::one(),
            tr: BigInt::zero(),
            bl: BigInt::zero(),
            br: BigInt::one(),
        }
    }

    /// The elementary factor `[[a, 1], [1, 0]]`.
    pub fn elementary(a: u64) -> Self {
        Mat2 {
            tl: BigInt::from(a),
            tr: BigInt::one(),
            bl: BigInt::one(),
            br: BigInt::zero(),
        }
    }

    pub fn mul(&self, other: &Mat2) -> Mat2 {
        Mat2 {
            tl: &self.tl * &other.tl + &self.tr * &other.bl,
            tr: &self.tl * &other.tr + &self.tr * &other.br,
            bl: &self.bl * &other.tl + &self.br * &other.bl,
            br: &self.bl * &other.tr + &self.br * &other.br,
        }
    }

    pub fn det(&self) -> BigInt {
        &self.tl * &self.br - &self.tr * &self.bl
    }

    pub fn trace(&self) -> BigInt {
        &self.tl + &self.br
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2 {
            tl: self.tl.clone(),
            tr: self.bl.clone(),
            bl: self.tr.clone(),
            br: self.br.clone(),
        }
    }

    /// Product of elementary factors for the given entries; the empty slice
    /// yields the identity.
    pub fn from_entries(entries: &[u64]) -> Mat2 {
        let mut m = Mat2::identity();
        for &a in entries {
            m = m.mul(&Mat2::elementary(a));
        }
        m
    }
}

/// The continued-fraction encoding of a path word: for each adjacent pair of
/// steps, equal letters contribute `1, 1` and unequal letters contribute `2`.
/// Requires at least two steps.
pub fn path_to_cf(w: &PathWord) -> Result<CfSeq> {
    if w.len() < 2 {
        return Err(Error::PathTooShort { len: w.len() });
    }
    let steps = w.steps();
    let mut entries = Vec::with_capacity(2 * (steps.len() - 1));
    for pair in steps.windows(2) {
        if pair[0] == pair[1] {
            entries.push(1);
            entries.push(1);
        } else {
            entries.push(2);
        }
    }
    CfSeq::new(entries)
}

/// Convergents `p_i / q_i` of a finite continued fraction, from the
/// recurrence `p_i = a_i p_{i-1} + p_{i-2}` seeded with `p_{-1} = 1,
/// q_{-1} = 0` and `p_{-2} = 0, q_{-2} = 1`.
pub fn convergents(cf: &CfSeq) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::with_capacity(cf.len());
    let (mut p_prev, mut p_prev2) = (BigInt::one(), BigInt::zero());
    let (mut q_prev, mut q_prev2) = (BigInt::zero(), BigInt::one());
    for &a in cf.entries() {
        let p = BigInt::from(a) * &p_prev + &p_prev2;
        let q = BigInt::from(a) * &q_prev + &q_prev2;
        out.push((p.clone(), q.clone()));
        p_prev2 = std::mem::replace(&mut p_prev, p);
        q_prev2 = std::mem::replace(&mut q_prev, q);
    }
    out
}

/// Matrix representation: the product of elementary factors, whose upper-left
/// entry is the numerator.
pub fn cf_matrix(cf: &CfSeq) -> Mat2 {
    Mat2::from_entries(cf.entries())
}

/// Numerator of the continued fraction in lowest terms.
pub fn numerator(cf: &CfSeq) -> BigInt {
    cf_matrix(cf).tl
}

/// Exact value `p/q` of a finite continued fraction.
pub fn rational_value(cf: &CfSeq) -> BigRational {
    let m = cf_matrix(cf);
    BigRational::new(m.tl, m.bl)
}

/// The matching number `M` of a path: the numerator of its continued
/// fraction, which equals the number of perfect matchings of the path's
/// snake graph.
pub fn matching_number(w: &PathWord) -> Result<BigInt> {
    Ok(numerator(&path_to_cf(w)?))
}

/// The periodic continued fraction attached to a path: one period consists
/// of a leading `2` followed by the path's finite encoding. The period
/// length is always even.
pub fn g_period(w: &PathWord) -> Result<PeriodicCf> {
    let cf = path_to_cf(w)?;
    let mut entries = Vec::with_capacity(cf.len() + 1);
    entries.push(2);
    entries.extend_from_slice(cf.entries());
    debug_assert_eq!(entries.len() % 2, 0);
    Ok(PeriodicCf::new(CfSeq::new(entries)?))
}

/// Fibonacci numbers with `F_0 = 0, F_1 = F_2 = 1`.
pub fn fibonacci(t: u64) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..t {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// Outcome of checking the three Fibonacci evaluations:
/// `[1^t] = F_{t+1}/F_t`, `[2, 1^t] = F_{t+3}/F_{t+1}`, and
/// `[1^s, 2, 1^t] = (F_{s+1}F_{t+3} + F_s F_{t+1}) / (F_s F_{t+3} + F_{s-1} F_{t+1})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FibIdentityCheck {
    pub ones_run: bool,
    pub two_then_ones: bool,
    pub ones_two_ones: bool,
}

impl FibIdentityCheck {
    pub fn all(&self) -> bool {
        self.ones_run && self.two_then_ones && self.ones_two_ones
    }
}

/// Evaluates both sides of each identity exactly and reports agreement.
/// Requires `s, t >= 1`.
pub fn check_fib_identities(s: u64, t: u64) -> FibIdentityCheck {
    let ones = |n: u64| vec![1u64; n as usize];

    let m1 = Mat2::from_entries(&ones(t));
    let ones_run = m1.tl == fibonacci(t + 1) && m1.bl == fibonacci(t);

    let mut v2 = vec![2u64];
    v2.extend(ones(t));
    let m2 = Mat2::from_entries(&v2);
    let two_then_ones = m2.tl == fibonacci(t + 3) && m2.bl == fibonacci(t + 1);

    let mut v3 = ones(s);
    v3.push(2);
    v3.extend(ones(t));
    let m3 = Mat2::from_entries(&v3);
    let num = fibonacci(s + 1) * fibonacci(t + 3) + fibonacci(s) * fibonacci(t + 1);
    let den = fibonacci(s) * fibonacci(t + 3) + fibonacci(s - 1) * fibonacci(t + 1);
    let ones_two_ones = m3.tl == num && m3.bl == den;

    FibIdentityCheck {
        ones_run,
        two_then_ones,
        ones_two_ones,
    }
}

/// A continued fraction seen as an infinite entry stream for comparison:
/// either finite (padded with infinity past its end) or purely periodic.
#[derive(Clone, Copy, Debug)]
pub enum CfRef<'a> {
    Finite(&'a CfSeq),
    Periodic(&'a PeriodicCf),
}

/// Entry view that folds a trailing `1` of a finite sequence into its
/// predecessor, so each rational has one canonical expansion and the
/// alternating comparison rule is sound (`[1,1]` and `[2]` both denote 2).
struct EntryView<'a> {
    entries: &'a [u64],
    periodic: bool,
    folded_len: usize,
    folded_last: Option<u64>,
}

impl<'a> EntryView<'a> {
    fn new(cf: CfRef<'a>) -> Self {
        match cf {
            CfRef::Periodic(p) => EntryView {
                entries: p.period().entries(),
                periodic: true,
                folded_len: p.period().len(),
                folded_last: None,
            },
            CfRef::Finite(seq) => {
                let e = seq.entries();
                if e.len() >= 2 && *e.last().unwrap() == 1 {
                    EntryView {
                        entries: e,
                        periodic: false,
                        folded_len: e.len() - 1,
                        folded_last: Some(e[e.len() - 2] + 1),
                    }
                } else {
                    EntryView {
                        entries: e,
                        periodic: false,
                        folded_len: e.len(),
                        folded_last: None,
                    }
                }
            }
        }
    }

    /// Entry at position `i`, or `None` for the infinite tail of a finite
    /// sequence.
    fn get(&self, i: usize) -> Option<u64> {
        if self.periodic {
            return Some(self.entries[i % self.entries.len()]);
        }
        if i >= self.folded_len {
            return None;
        }
        if i == self.folded_len - 1 {
            if let Some(last) = self.folded_last {
                return Some(last);
            }
        }
        Some(self.entries[i])
    }

    fn period_len(&self) -> Option<usize> {
        self.periodic.then_some(self.entries.len())
    }

    fn finite_len(&self) -> Option<usize> {
        (!self.periodic).then_some(self.folded_len)
    }
}

/// Compares two continued-fraction values exactly by scanning entries: at
/// the first differing index `k`, the larger value has the larger entry when
/// `k` is even and the smaller entry when `k` is odd; a missing entry of a
/// finite sequence counts as infinity.
pub fn compare_cf(x: CfRef<'_>, y: CfRef<'_>) -> Ordering {
    let xv = EntryView::new(x);
    let yv = EntryView::new(y);
    // Two periodic streams agree everywhere iff they agree through one
    // common period; a finite stream must differ from any other stream by
    // the index just past its own end.
    let bound = match (xv.period_len(), yv.period_len()) {
        (Some(m), Some(n)) => m.lcm(&n),
        (Some(_), None) => yv.finite_len().unwrap() + 1,
        (None, Some(_)) => xv.finite_len().unwrap() + 1,
        (None, None) => xv.finite_len().unwrap().max(yv.finite_len().unwrap()) + 1,
    };
    for i in 0..bound {
        let (a, b) = (xv.get(i), yv.get(i));
        let ord = match (a, b) {
            (Some(u), Some(v)) => u.cmp(&v),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => Ordering::Equal,
        };
        if ord != Ordering::Equal {
            return if i % 2 == 0 { ord } else { ord.reverse() };
        }
    }
    Ordering::Equal
}

/// Upper bound `1 / 2^{k-2}` on the gap between two continued fractions that
/// first differ at index `k >= 1`.
pub fn gap_bound(k: u32) -> BigRational {
    if k >= 2 {
        BigRational::new(BigInt::one(), BigInt::one() << (k - 2))
    } else {
        BigRational::from_integer(BigInt::from(1) << (2 - k))
    }
}
