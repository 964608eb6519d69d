//! Exact arithmetic in real quadratic fields: surds `(x + y*sqrt(d))/z`,
//! evaluation of purely periodic continued fractions, shift maxima, and the
//! Lagrange number of a path in the pure-integer form `sqrt(disc)/q`.
//!
//! All comparisons are decided by integer sign analysis with at most two
//! squarings; no floating point is involved anywhere.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::contfrac::{g_period, Mat2, PeriodicCf};
use crate::error::{Error, Result};
use crate::paths::{corner_path, PathWord};

/// Primes whose squares are divided out of radicands at construction, so
/// small surds print in familiar form. Larger square factors are left in
/// place; comparisons do not depend on the representation.
const SQUARE_EXTRACTION_PRIMES: [u64; 18] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
];

/// An exact quadratic irrational `(x + y*sqrt(delta))/z` with `z > 0`,
/// `gcd(x, y, z) = 1`, and a perfect-square radicand folded away into the
/// rational part (so rationals always carry `y = 0, delta = 0`).
#[derive(Clone, Debug)]
pub struct Surd {
    x: BigInt,
    y: BigInt,
    z: BigInt,
    delta: BigInt,
}

impl Surd {
    pub fn new(
        x: impl Into<BigInt>,
        y: impl Into<BigInt>,
        z: impl Into<BigInt>,
        delta: impl Into<BigInt>,
    ) -> Result<Self> {
        Self::canonical(x.into(), y.into(), z.into(), delta.into())
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Surd {
            x: n.into(),
            y: BigInt::zero(),
            z: BigInt::one(),
            delta: BigInt::zero(),
        }
    }

    pub fn from_rational(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        Self::canonical(num.into(), BigInt::zero(), den.into(), BigInt::zero())
    }

    /// The square root of a nonnegative integer.
    pub fn sqrt_of(delta: impl Into<BigInt>) -> Result<Self> {
        Self::canonical(BigInt::zero(), BigInt::one(), BigInt::one(), delta.into())
    }

    fn canonical(mut x: BigInt, mut y: BigInt, mut z: BigInt, mut delta: BigInt) -> Result<Self> {
        if z.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if delta.is_negative() {
            return Err(Error::NegativeRadicand {
                radicand: delta.to_string(),
            });
        }
        if z.is_negative() {
            x = -x;
            y = -y;
            z = -z;
        }
        if y.is_zero() {
            delta = BigInt::zero();
        } else {
            let root = delta.sqrt();
            if &root * &root == delta {
                x += y * root;
                y = BigInt::zero();
                delta = BigInt::zero();
            } else {
                for p in SQUARE_EXTRACTION_PRIMES {
                    let p2 = BigInt::from(p * p);
                    while (&delta % &p2).is_zero() {
                        delta /= &p2;
                        y *= p;
                    }
                }
            }
        }
        let g = x.gcd(&y).gcd(&z);
        if !g.is_one() {
            x /= &g;
            y /= &g;
            z /= &g;
        }
        Ok(Surd { x, y, z, delta })
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    pub fn z(&self) -> &BigInt {
        &self.z
    }

    pub fn delta(&self) -> &BigInt {
        &self.delta
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    fn common_delta(&self, other: &Surd) -> Result<BigInt> {
        if self.y.is_zero() {
            Ok(other.delta.clone())
        } else if other.y.is_zero() || self.delta == other.delta {
            Ok(self.delta.clone())
        } else {
            Err(Error::RadicandMismatch {
                left: self.delta.to_string(),
                right: other.delta.to_string(),
            })
        }
    }

    /// Exact sum; both operands must live over the same radicand (rationals
    /// are compatible with everything).
    pub fn add(&self, other: &Surd) -> Result<Surd> {
        let delta = self.common_delta(other)?;
        Surd::canonical(
            &self.x * &other.z + &other.x * &self.z,
            &self.y * &other.z + &other.y * &self.z,
            &self.z * &other.z,
            delta,
        )
    }

    pub fn sub(&self, other: &Surd) -> Result<Surd> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Surd {
        Surd {
            x: -&self.x,
            y: -&self.y,
            z: self.z.clone(),
            delta: self.delta.clone(),
        }
    }

    /// Exact product over a shared radicand.
    pub fn mul(&self, other: &Surd) -> Result<Surd> {
        let delta = self.common_delta(other)?;
        Surd::canonical(
            &self.x * &other.x + &self.y * &other.y * &delta,
            &self.x * &other.y + &self.y * &other.x,
            &self.z * &other.z,
            delta,
        )
    }

    /// Exact reciprocal, by rationalizing the denominator.
    pub fn inv(&self) -> Result<Surd> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let den = &self.x * &self.x - &self.y * &self.y * &self.delta;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Surd::canonical(
            &self.z * &self.x,
            -(&self.z * &self.y),
            den,
            self.delta.clone(),
        )
    }

    pub fn scale_int(&self, k: &BigInt) -> Surd {
        Surd::canonical(&self.x * k, &self.y * k, self.z.clone(), self.delta.clone())
            .expect("scaling preserves validity")
    }

    /// Sign of the value: the sign of `x + y*sqrt(delta)` since `z > 0`.
    pub fn sign(&self) -> Ordering {
        sign_single(&self.x, &self.y, &self.delta)
    }

    /// Total order on values, across arbitrary radicands.
    pub fn cmp_surd(&self, other: &Surd) -> Ordering {
        // self - other = (A + B*sqrt(d1) + C*sqrt(d2)) / (z1 z2), z's > 0.
        let a = &self.x * &other.z - &other.x * &self.z;
        let b = &self.y * &other.z;
        let c = -(&other.y * &self.z);
        sign_pair(&a, &b, &self.delta, &c, &other.delta)
    }

    /// Exact floor of `value * 10^k`.
    pub fn floor_scaled(&self, k: u32) -> BigInt {
        let pow = BigInt::from(10u32).pow(k);
        let t = &self.x * &pow;
        if self.y.is_zero() {
            return t.div_floor(&self.z);
        }
        // value * 10^k = (t + sign(y) * sqrt(r)) / z with r = y^2 d 10^{2k}.
        let r = &self.y * &self.y * &self.delta * &pow * &pow;
        let s = r.sqrt();
        let le = |m: &BigInt| -> bool {
            // m <= value * 10^k  <=>  m z - t <= sign(y) sqrt(r)
            let lhs = m * &self.z - &t;
            if self.y.is_positive() {
                !lhs.is_positive() || &lhs * &lhs <= r
            } else {
                !lhs.is_positive() && &lhs * &lhs >= r
            }
        };
        let mut c = if self.y.is_positive() {
            (&t + &s).div_floor(&self.z)
        } else {
            (&t - &s).div_floor(&self.z)
        };
        while le(&(&c + 1)) {
            c += 1;
        }
        while !le(&c) {
            c -= 1;
        }
        c
    }

    /// Correctly rounded decimal rendering with `digits` fractional digits
    /// (ties, which only arise for rational values, round away from zero).
    pub fn decimal(&self, digits: u32) -> String {
        let scaled = if self.y.is_zero() {
            let pow = BigInt::from(10u32).pow(digits);
            BigRational::new(&self.x * pow, self.z.clone())
                .round()
                .to_integer()
        } else {
            // One guard digit decides rounding: the true value is irrational,
            // so its scaled fractional part never sits exactly on a boundary.
            Integer::div_floor(&(self.floor_scaled(digits + 1) + 5), &BigInt::from(10))
        };
        format_scaled_decimal(&scaled, digits)
    }
}

pub(crate) fn format_scaled_decimal(scaled: &BigInt, digits: u32) -> String {
    let pow = BigInt::from(10u32).pow(digits);
    let negative = scaled.is_negative();
    let magnitude = scaled.abs();
    let (int_part, frac_part) = magnitude.div_rem(&pow);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!(
            "{sign}{int_part}.{frac:0>width$}",
            frac = frac_part.to_string(),
            width = digits as usize
        )
    }
}

/// Sign of `a + b*sqrt(d)` for integers, `d >= 0`.
fn sign_single(a: &BigInt, b: &BigInt, d: &BigInt) -> Ordering {
    if b.is_zero() || d.is_zero() {
        return sign_of(a);
    }
    if a.is_zero() {
        return sign_of(b);
    }
    match (a.is_positive(), b.is_positive()) {
        (true, true) => Ordering::Greater,
        (false, false) => Ordering::Less,
        (true, false) => (a * a).cmp(&(b * b * d)),
        (false, true) => (b * b * d).cmp(&(a * a)),
    }
}

/// Sign of `a + b*sqrt(d1) + c*sqrt(d2)`, squaring through at most twice.
fn sign_pair(a: &BigInt, b: &BigInt, d1: &BigInt, c: &BigInt, d2: &BigInt) -> Ordering {
    if b.is_zero() || d1.is_zero() {
        return sign_single(a, c, d2);
    }
    if c.is_zero() || d2.is_zero() {
        return sign_single(a, b, d1);
    }
    // Sign of the pure root part b*sqrt(d1) + c*sqrt(d2).
    let roots = match (b.is_positive(), c.is_positive()) {
        (true, true) => Ordering::Greater,
        (false, false) => Ordering::Less,
        (true, false) => (b * b * d1).cmp(&(c * c * d2)),
        (false, true) => (c * c * d2).cmp(&(b * b * d1)),
    };
    if a.is_zero() {
        return roots;
    }
    let a_sign = sign_of(a);
    if roots == Ordering::Equal {
        return a_sign;
    }
    if a_sign == roots {
        return a_sign;
    }
    // Opposite signs: compare |a| with |b*sqrt(d1) + c*sqrt(d2)| via
    // a^2 - (b^2 d1 + c^2 d2 + 2bc sqrt(d1 d2)).
    let e = a * a - b * b * d1 - c * c * d2;
    let f = BigInt::from(-2) * b * c;
    let g = d1 * d2;
    match sign_single(&e, &f, &g) {
        Ordering::Greater => a_sign,
        Ordering::Less => roots,
        Ordering::Equal => Ordering::Equal,
    }
}

fn sign_of(v: &BigInt) -> Ordering {
    if v.is_positive() {
        Ordering::Greater
    } else if v.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

impl PartialEq for Surd {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_surd(other) == Ordering::Equal
    }
}

impl Eq for Surd {}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_surd(other))
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_surd(other)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            if self.z.is_one() {
                return write!(f, "{}", self.x);
            }
            return write!(f, "{}/{}", self.x, self.z);
        }
        let root = if self.y.is_one() {
            format!("\u{221a}{}", self.delta)
        } else if self.y == BigInt::from(-1) {
            format!("-\u{221a}{}", self.delta)
        } else {
            format!("{}\u{221a}{}", self.y, self.delta)
        };
        let body = if self.x.is_zero() {
            root
        } else if self.y.is_positive() {
            format!("{}+{}", self.x, root)
        } else {
            format!("{}{}", self.x, root)
        };
        if self.z.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{}", self.z)
        }
    }
}

/// Lagrange number of a path in canonical form `sqrt(disc)/q` with
/// `disc = trace^2 - 4` of the period matrix and `q` the smallest
/// lower-left matrix entry over period rotations starting with `2`.
#[derive(Clone, Debug)]
pub struct LagrangeValue {
    disc: BigInt,
    q: BigInt,
}

impl LagrangeValue {
    pub fn new(disc: BigInt, q: BigInt) -> Self {
        debug_assert!(disc.is_positive());
        debug_assert!(q.is_positive());
        LagrangeValue { disc, q }
    }

    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn as_surd(&self) -> Surd {
        Surd::new(0, 1, self.q.clone(), self.disc.clone()).expect("valid surd")
    }

    pub fn decimal(&self, digits: u32) -> String {
        self.as_surd().decimal(digits)
    }

    /// Pure-integer comparison: `sqrt(d1)/q1` vs `sqrt(d2)/q2` is decided by
    /// `d1 q2^2` vs `d2 q1^2`.
    pub fn cmp_value(&self, other: &LagrangeValue) -> Ordering {
        (&self.disc * &other.q * &other.q).cmp(&(&other.disc * &self.q * &self.q))
    }
}

impl PartialEq for LagrangeValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl Eq for LagrangeValue {}

impl PartialOrd for LagrangeValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl Ord for LagrangeValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
    }
}

impl fmt::Display for LagrangeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_one() {
            write!(f, "\u{221a}{}", self.disc)
        } else {
            write!(f, "\u{221a}{}/{}", self.disc, self.q)
        }
    }
}

/// Value of a purely periodic continued fraction: with period matrix
/// `[[A, B], [C, D]]` the value is the positive root of
/// `C x^2 + (D - A) x - B`, i.e. `((A - D) + sqrt(trace^2 - 4 det)) / (2C)`.
pub fn eval_purely_periodic(p: &PeriodicCf) -> Surd {
    let m = Mat2::from_entries(p.period().entries());
    let trace = m.trace();
    let disc = &trace * &trace - BigInt::from(4) * m.det();
    Surd::new(m.tl - m.br, BigInt::one(), BigInt::from(2) * m.bl, disc)
        .expect("period matrix has positive lower-left entry")
}

/// The shift difference at index `k`: the value of the rotated period minus
/// its algebraic conjugate, computed exactly. The conjugate is
/// `-1 / value(reversed rotation)`, and both live over the same radicand
/// because reversing a product of symmetric factors transposes the matrix.
pub fn shift_contribution(p: &PeriodicCf, k: usize) -> Surd {
    let rot = p.rotation(k);
    let forward = PeriodicCf::new(crate::contfrac::CfSeq::new(rot.clone()).expect("valid period"));
    let mut rev = rot;
    rev.reverse();
    let reversed = PeriodicCf::new(crate::contfrac::CfSeq::new(rev).expect("valid period"));
    let rho = eval_purely_periodic(&forward);
    let conj_negated = eval_purely_periodic(&reversed)
        .inv()
        .expect("periodic value is positive");
    rho.add(&conj_negated)
        .expect("forward and reversed rotations share a radicand")
}

/// Lagrange number of a path: over the rotations of its period that begin
/// with `2`, the trace is rotation-invariant and each shift difference is
/// `sqrt(trace^2 - 4)` over that rotation's lower-left matrix entry, so the
/// maximum is `sqrt(disc)` over the smallest such entry. Restricting to
/// rotations beginning with `2` loses nothing: contributions at `1`-entries
/// stay below 5/2 while every `2`-entry contributes at least `1 + sqrt(3)`.
pub fn lagrange_number(w: &PathWord) -> Result<LagrangeValue> {
    let period = g_period(w)?;
    let entries = period.period().entries().to_vec();
    let mut trace: Option<BigInt> = None;
    let mut min_q: Option<BigInt> = None;
    for (k, &entry) in entries.iter().enumerate() {
        if entry != 2 {
            continue;
        }
        let m = Mat2::from_entries(&period.rotation(k));
        assert!(m.det().is_one(), "even period must have determinant one");
        let t = m.trace();
        match &trace {
            None => trace = Some(t),
            Some(t0) => assert_eq!(*t0, t, "trace must be rotation-invariant"),
        }
        match &min_q {
            Some(q) if *q <= m.bl => {}
            _ => min_q = Some(m.bl),
        }
    }
    let trace = trace.expect("a path period always contains a 2");
    let q = min_q.expect("a path period always contains a 2");
    let disc = &trace * &trace - BigInt::from(4);
    Ok(LagrangeValue::new(disc, q))
}

/// Lagrange number by the direct route: the exact maximum of the shift
/// differences over all period indices. Equals
/// [`lagrange_number`](lagrange_number) as a value; kept available for
/// cross-checking.
pub fn lagrange_number_via_shifts(w: &PathWord) -> Result<Surd> {
    let period = g_period(w)?;
    let n = period.period().len();
    let mut best: Option<Surd> = None;
    for k in 0..n {
        let contribution = shift_contribution(&period, k);
        best = Some(match best {
            None => contribution,
            Some(b) if contribution.cmp_surd(&b) == Ordering::Greater => contribution,
            Some(b) => b,
        });
    }
    Ok(best.expect("period is nonempty"))
}

/// `1 + sqrt(5)`, the least upper bound of Lagrange numbers of paths.
pub fn one_plus_sqrt5() -> Surd {
    Surd::new(1, 1, 1, 5).expect("valid surd")
}

/// Outcome of the two-sided bound on the corner path `R^a U^b`:
/// `1 + sqrt(5) - (2^{3-2a} + 2^{3-2b}) < L < 1 + sqrt(5)`, both strict,
/// decided exactly.
#[derive(Clone, Debug)]
pub struct CornerBoundsReport {
    pub a: u64,
    pub b: u64,
    pub value: LagrangeValue,
    pub lower_ok: bool,
    pub upper_ok: bool,
}

impl CornerBoundsReport {
    pub fn holds(&self) -> bool {
        self.lower_ok && self.upper_ok
    }
}

/// The rational gap `2^{3-2a} + 2^{3-2b}`.
pub fn corner_gap(a: u64, b: u64) -> BigRational {
    pow2(3 - 2 * a as i64) + pow2(3 - 2 * b as i64)
}

fn pow2(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(BigInt::one() << e as u64)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-e) as u64)
    }
}

/// A rational plus `sqrt(5)` as a surd: `(r + sqrt(5))`.
fn rational_plus_sqrt5(r: &BigRational) -> Surd {
    let num = r.numer().clone();
    let den = r.denom().clone();
    Surd::new(num, den.clone(), den, 5).expect("valid surd")
}

/// Checks the two-sided corner bound exactly.
pub fn bounds_check_corner(a: u64, b: u64) -> Result<CornerBoundsReport> {
    let w = corner_path(a, b)?;
    let value = lagrange_number(&w)?;
    let surd = value.as_surd();
    let upper_ok = surd.cmp_surd(&one_plus_sqrt5()) == Ordering::Less;
    let lower = rational_plus_sqrt5(&(BigRational::from_integer(BigInt::one()) - corner_gap(a, b)));
    let lower_ok = lower.cmp_surd(&surd) == Ordering::Less;
    Ok(CornerBoundsReport {
        a,
        b,
        value,
        lower_ok,
        upper_ok,
    })
}
