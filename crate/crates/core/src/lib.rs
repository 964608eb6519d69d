//! Exact arithmetic for two orderings of below-diagonal lattice paths.
//!
//! A monotone lattice path from the origin to `(a, b)` that stays weakly
//! below the diagonal carries two order keys: its matching number `M` (the
//! number of perfect matchings of the path's snake graph, equal to the
//! numerator of the path's continued fraction) and its Lagrange number `L`
//! (computed from the periodic continued fraction obtained by prepending a
//! `2` to the path encoding). Everything here is exact: big integers for
//! matching numbers, quadratic surds for Lagrange numbers, and pure-integer
//! comparisons between them.
//!
//! The crate exposes the path machinery ([`paths`]), the continued-fraction
//! kernel ([`contfrac`]), a brute-force snake-graph matcher serving as an
//! independent oracle ([`snake`]), exact quadratic-irrational arithmetic
//! ([`quadratic`]), the order relations with their verifiers ([`orders`]),
//! and Markov-number cross checks ([`markov`]).

pub mod contfrac;
pub mod error;
pub mod markov;
pub mod orders;
pub mod paths;
pub mod quadratic;
pub mod snake;

pub use error::{Error, Result};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
