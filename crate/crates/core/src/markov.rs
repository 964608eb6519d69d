//! Markov triples and numbers: the Vieta-exchange tree rooted at `(1,1,1)`,
//! tree membership of path-derived numbers, the exact identity linking a
//! Markov number to its Lagrange number, and slope-based inequality checks.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::contfrac::matching_number;
use crate::error::Result;
use crate::paths::christoffel;
use crate::quadratic::lagrange_number;

/// A sorted solution `x <= y <= z` of `x^2 + y^2 + z^2 = 3xyz`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MarkovTriple {
    x: BigInt,
    y: BigInt,
    z: BigInt,
}

impl MarkovTriple {
    /// Sorts the entries and checks the defining equation.
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Option<Self> {
        let mut v = [a, b, c];
        v.sort();
        let [x, y, z] = v;
        let lhs = &x * &x + &y * &y + &z * &z;
        let rhs = BigInt::from(3) * &x * &y * &z;
        (lhs == rhs).then_some(MarkovTriple { x, y, z })
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

    pub fn largest(&self) -> &BigInt {
        &self.z
    }

    /// The three Vieta exchanges; each replaces one coordinate by the other
    /// root of its quadratic.
    fn neighbors(&self) -> [MarkovTriple; 3] {
        let make = |a: &BigInt, b: &BigInt, c: &BigInt| {
            let new = BigInt::from(3) * a * b - c;
            MarkovTriple::new(a.clone(), b.clone(), new)
                .expect("Vieta exchange preserves the equation")
        };
        [
            make(&self.x, &self.y, &self.z),
            make(&self.x, &self.z, &self.y),
            make(&self.y, &self.z, &self.x),
        ]
    }
}

/// Breadth-first closure of `(1,1,1)` under Vieta exchanges, up to the given
/// number of layers, sorted and deduplicated.
pub fn markov_tree(depth: u32) -> Vec<MarkovTriple> {
    let root = MarkovTriple::new(BigInt::one(), BigInt::one(), BigInt::one())
        .expect("(1,1,1) solves the equation");
    let mut seen = BTreeSet::new();
    seen.insert(root.clone());
    let mut frontier = vec![root];
    for _ in 0..depth {
        let mut next = Vec::new();
        for triple in frontier {
            for neighbor in triple.neighbors() {
                if seen.insert(neighbor.clone()) {
                    next.push(neighbor);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    seen.into_iter().collect()
}

/// The Markov number attached to coprime indices `a > b >= 1`: the matching
/// number of the Christoffel path to `(a, b)`.
pub fn markov_number(a: u64, b: u64) -> Result<BigInt> {
    matching_number(&christoffel(a, b)?)
}

/// True iff `markov_number(a, b)` is the maximum of some triple within
/// `depth` layers of the tree. The search prunes triples already larger
/// than the target, which is sound because maxima strictly increase along
/// tree branches.
pub fn verify_markov_membership(a: u64, b: u64, depth: u32) -> Result<bool> {
    let target = markov_number(a, b)?;
    let root = MarkovTriple::new(BigInt::one(), BigInt::one(), BigInt::one()).unwrap();
    let mut seen = BTreeSet::new();
    seen.insert(root.clone());
    let mut frontier = vec![root];
    for _ in 0..=depth {
        for triple in &frontier {
            if *triple.largest() == target {
                return Ok(true);
            }
        }
        let mut next = Vec::new();
        for triple in frontier {
            for neighbor in triple.neighbors() {
                if *neighbor.largest() <= target && seen.insert(neighbor.clone()) {
                    next.push(neighbor);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(false)
}

/// The exact identity `disc * m^2 = (9 m^2 - 4) q^2` tying the Lagrange
/// number `sqrt(disc)/q` of a Christoffel path to its Markov number `m`,
/// i.e. `L = sqrt(9 - 4/m^2)`.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub a: u64,
    pub b: u64,
    pub m: BigInt,
    pub disc: BigInt,
    pub q: BigInt,
    pub holds: bool,
}

pub fn lagrange_markov_identity(a: u64, b: u64) -> Result<IdentityReport> {
    let m = markov_number(a, b)?;
    let l = lagrange_number(&christoffel(a, b)?)?;
    let m2 = &m * &m;
    let lhs = l.disc() * &m2;
    let rhs = (BigInt::from(9) * &m2 - BigInt::from(4)) * l.q() * l.q();
    Ok(IdentityReport {
        a,
        b,
        m,
        disc: l.disc().clone(),
        q: l.q().clone(),
        holds: lhs == rhs,
    })
}

/// Verdict of one slope comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlopeVerdict {
    /// The slope condition applied and the predicted strict inequality holds.
    Confirmed,
    /// The slope lies in the open gap `(-5/4, -8/7)` or is undefined, so no
    /// prediction is made.
    Inapplicable,
    /// The slope condition applied but the prediction failed.
    Violated,
}

impl SlopeVerdict {
    pub fn tag(&self) -> &'static str {
        match self {
            SlopeVerdict::Confirmed => "confirmed",
            SlopeVerdict::Inapplicable => "inapplicable",
            SlopeVerdict::Violated => "violated",
        }
    }
}

/// One orientation of the slope check.
#[derive(Clone, Debug)]
pub struct OrientationOutcome {
    /// Which reading of the index fractions was used.
    pub fractions: String,
    /// The slope as an exact rational, or `None` for a vertical line.
    pub slope: Option<BigRational>,
    pub verdict: SlopeVerdict,
}

/// Slope check for the pair of indices, reported under both index
/// orientations since the underlying fraction convention is ambiguous.
#[derive(Clone, Debug)]
pub struct SlopeReport {
    pub m_first: BigInt,
    pub m_second: BigInt,
    pub as_given: OrientationOutcome,
    pub flipped: OrientationOutcome,
}

/// Applies the slope rule to numerator/denominator index pairs `(p, q)` and
/// `(p2, q2)` with attached Markov numbers: a slope of at least `-8/7`
/// predicts that the larger-`p` number is strictly larger, a slope of at
/// most `-5/4` predicts it is strictly smaller, and the open gap in between
/// predicts nothing. A vertical line (equal `q`) counts as slope infinity
/// and takes the first branch.
fn orientation_verdict(
    p: &BigInt,
    q: &BigInt,
    m: &BigInt,
    p2: &BigInt,
    q2: &BigInt,
    m2: &BigInt,
    fractions: String,
) -> OrientationOutcome {
    if p == p2 {
        return OrientationOutcome {
            fractions,
            slope: None,
            verdict: SlopeVerdict::Inapplicable,
        };
    }
    // Orient so the first fraction has the larger numerator.
    let (p, q, m, p2, q2, m2) = if p > p2 {
        (p, q, m, p2, q2, m2)
    } else {
        (p2, q2, m2, p, q, m)
    };
    if q == q2 {
        let verdict = if m > m2 {
            SlopeVerdict::Confirmed
        } else {
            SlopeVerdict::Violated
        };
        return OrientationOutcome {
            fractions,
            slope: None,
            verdict,
        };
    }
    let slope = BigRational::new(p - p2, q - q2);
    let lo = BigRational::new(BigInt::from(-5), BigInt::from(4));
    let hi = BigRational::new(BigInt::from(-8), BigInt::from(7));
    let verdict = if slope >= hi {
        if m > m2 {
            SlopeVerdict::Confirmed
        } else {
            SlopeVerdict::Violated
        }
    } else if slope <= lo {
        if m < m2 {
            SlopeVerdict::Confirmed
        } else {
            SlopeVerdict::Violated
        }
    } else {
        SlopeVerdict::Inapplicable
    };
    OrientationOutcome {
        fractions,
        slope: Some(slope),
        verdict,
    }
}

pub fn slope_inequality_check(a: u64, b: u64, a2: u64, b2: u64) -> Result<SlopeReport> {
    let m_first = markov_number(a, b)?;
    let m_second = markov_number(a2, b2)?;
    let (ab, bb) = (BigInt::from(a), BigInt::from(b));
    let (ab2, bb2) = (BigInt::from(a2), BigInt::from(b2));
    let as_given = orientation_verdict(
        &ab,
        &bb,
        &m_first,
        &ab2,
        &bb2,
        &m_second,
        format!("{a}/{b} vs {a2}/{b2}"),
    );
    let flipped = orientation_verdict(
        &bb,
        &ab,
        &m_first,
        &bb2,
        &ab2,
        &m_second,
        format!("{b}/{a} vs {b2}/{a2}"),
    );
    Ok(SlopeReport {
        m_first,
        m_second,
        as_given,
        flipped,
    })
}
