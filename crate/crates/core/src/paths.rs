//! Lattice-path words over `{R, U}`: below-diagonal membership, Christoffel
//! construction, block structure, lexicographic enumeration of the
//! below-diagonal set `D(a, b)`, and the block exchange move.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// One lattice step: right or up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    R,
    U,
}

impl Step {
    pub fn as_char(self) -> char {
        match self {
            Step::R => 'R',
            Step::U => 'U',
        }
    }
}

/// A finite word over `{R, U}` describing a monotone lattice path from the
/// origin to `(a, b)`, where `a` counts `R` steps and `b` counts `U` steps.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathWord {
    steps: Vec<Step>,
}

/// A maximal run of equal letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub step: Step,
    pub run: usize,
}

impl PathWord {
    /// Parses a path word from text. Accepts lower- and upper-case letters.
    pub fn parse(text: &str) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::EmptyWord);
        }
        let mut steps = Vec::with_capacity(text.len());
        for (index, ch) in text.chars().enumerate() {
            match ch {
                'R' | 'r' => steps.push(Step::R),
                'U' | 'u' => steps.push(Step::U),
                found => return Err(Error::InvalidStep { index, found }),
            }
        }
        Ok(PathWord { steps })
    }

    /// Builds a word from explicit steps; the word must be nonempty.
    pub fn from_steps(steps: Vec<Step>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(PathWord { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of `R` steps (the horizontal endpoint coordinate `a`).
    pub fn rights(&self) -> u64 {
        self.steps.iter().filter(|s| **s == Step::R).count() as u64
    }

    /// Number of `U` steps (the vertical endpoint coordinate `b`).
    pub fn ups(&self) -> u64 {
        self.steps.len() as u64 - self.rights()
    }

    /// Endpoint `(a, b)`.
    pub fn endpoint(&self) -> (u64, u64) {
        let a = self.rights();
        (a, self.steps.len() as u64 - a)
    }

    /// True iff every prefix point `(x, y)` satisfies `a*y <= b*x`, i.e. the
    /// path stays weakly below the diagonal through its own endpoint.
    pub fn is_below_diagonal(&self) -> bool {
        let (a, b) = self.endpoint();
        let (mut x, mut y) = (0u64, 0u64);
        for step in &self.steps {
            match step {
                Step::R => x += 1,
                Step::U => y += 1,
            }
            if a as u128 * y as u128 > b as u128 * x as u128 {
                return false;
            }
        }
        true
    }

    /// Maximal-run decomposition.
    pub fn blocks(&self) -> Vec<Block> {
        let mut out = Vec::new();
        for &step in &self.steps {
            match out.last_mut() {
                Some(Block { step: s, run }) if *s == step => *run += 1,
                _ => out.push(Block { step, run: 1 }),
            }
        }
        out
    }

    /// Exchanges the middle blocks around the `U`-block at `block_index`:
    /// a word of shape `[S1] R U^u R^r U [S2]` becomes
    /// `[S1] R^{r+1} U^{u+1} [S2]`. The endpoint is preserved and the block
    /// count drops by exactly two.
    pub fn exchange_move(&self, block_index: usize) -> Result<PathWord> {
        let blocks = self.blocks();
        let n = blocks.len();
        if block_index >= n {
            return Err(Error::ExchangeShape {
                block_index,
                reason: "block index out of range",
            });
        }
        if blocks[block_index].step != Step::U {
            return Err(Error::ExchangeShape {
                block_index,
                reason: "block is not a U-run",
            });
        }
        if block_index == 0 {
            return Err(Error::ExchangeShape {
                block_index,
                reason: "no R immediately before the U-run",
            });
        }
        if block_index + 2 >= n {
            return Err(Error::ExchangeShape {
                block_index,
                reason: "no interior U-run followed by an R-run and another U",
            });
        }
        let u = blocks[block_index].run;
        let r = blocks[block_index + 1].run;
        debug_assert_eq!(blocks[block_index + 1].step, Step::R);
        debug_assert_eq!(blocks[block_index + 2].step, Step::U);

        let mut steps = Vec::with_capacity(self.steps.len());
        for block in &blocks[..block_index - 1] {
            steps.extend(std::iter::repeat(block.step).take(block.run));
        }
        // One R of the preceding run is absorbed into the exchanged pair.
        steps.extend(std::iter::repeat(Step::R).take(blocks[block_index - 1].run - 1));
        steps.extend(std::iter::repeat(Step::R).take(r + 1));
        steps.extend(std::iter::repeat(Step::U).take(u + 1));
        // Likewise one U of the following run.
        steps.extend(std::iter::repeat(Step::U).take(blocks[block_index + 2].run - 1));
        for block in &blocks[block_index + 3..] {
            steps.extend(std::iter::repeat(block.step).take(block.run));
        }
        debug_assert_eq!(steps.len(), self.steps.len());
        Ok(PathWord { steps })
    }

    /// Block indices at which [`exchange_move`](Self::exchange_move) applies.
    pub fn exchange_positions(&self) -> Vec<usize> {
        let blocks = self.blocks();
        let n = blocks.len();
        (1..n.saturating_sub(2))
            .filter(|&i| blocks[i].step == Step::U)
            .collect()
    }
}

impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.steps {
            write!(f, "{}", step.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PathWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PathWord::parse(s)
    }
}

fn check_indices(a: u64, b: u64) -> Result<()> {
    if b == 0 || a <= b {
        return Err(Error::BadIndices { a, b });
    }
    Ok(())
}

/// The path `R^a U^b` hugging the lower-right corner of the `(a, b)` box.
pub fn corner_path(a: u64, b: u64) -> Result<PathWord> {
    check_indices(a, b)?;
    let mut steps = vec![Step::R; a as usize];
    steps.extend(std::iter::repeat(Step::U).take(b as usize));
    Ok(PathWord { steps })
}

/// The Christoffel path to `(a, b)`: go up whenever the path stays weakly
/// below the diagonal, otherwise go right. Requires coprime `a > b >= 1`.
pub fn christoffel(a: u64, b: u64) -> Result<PathWord> {
    check_indices(a, b)?;
    if a.gcd(&b) != 1 {
        return Err(Error::NotCoprime { a, b });
    }
    let mut steps = Vec::with_capacity((a + b) as usize);
    let (mut x, mut y) = (0u64, 0u64);
    while x < a || y < b {
        let up_ok = y < b && a as u128 * (y + 1) as u128 <= b as u128 * x as u128;
        if up_ok {
            y += 1;
            steps.push(Step::U);
        } else {
            x += 1;
            steps.push(Step::R);
        }
    }
    Ok(PathWord { steps })
}

/// Number of monotone paths from the origin to `(a, b)` staying weakly below
/// the diagonal, by dynamic programming over lattice points.
pub fn count_below_diagonal(a: u64, b: u64) -> Result<BigInt> {
    check_indices(a, b)?;
    let (aa, bb) = (a as usize, b as usize);
    let mut column = vec![BigInt::zero(); bb + 1];
    column[0] = BigInt::one();
    for x in 1..=aa {
        let mut next = vec![BigInt::zero(); bb + 1];
        for y in 0..=bb {
            if a as u128 * y as u128 > b as u128 * x as u128 {
                continue;
            }
            let mut total = column[y].clone();
            if y > 0 {
                total += &next[y - 1];
            }
            next[y] = total;
        }
        column = next;
    }
    Ok(column[bb].clone())
}

/// Lexicographic (R < U) enumeration of the below-diagonal paths to `(a, b)`.
///
/// Every feasible prefix extends to a full path (append the remaining `R`s,
/// then the remaining `U`s), so the depth-first walk never dead-ends.
pub struct PathEnumerator {
    a: u64,
    b: u64,
    word: Vec<Step>,
    started: bool,
    done: bool,
}

impl PathEnumerator {
    fn point(&self) -> (u64, u64) {
        let x = self.word.iter().filter(|s| **s == Step::R).count() as u64;
        (x, self.word.len() as u64 - x)
    }

    fn up_allowed(&self, x: u64, y: u64) -> bool {
        y < self.b && self.a as u128 * (y + 1) as u128 <= self.b as u128 * x as u128
    }

    /// Extends the current prefix with the lexicographically smallest
    /// feasible completion.
    fn descend(&mut self) {
        let (mut x, mut y) = self.point();
        while x < self.a || y < self.b {
            if x < self.a {
                x += 1;
                self.word.push(Step::R);
            } else {
                debug_assert!(self.up_allowed(x, y) || y < self.b);
                y += 1;
                self.word.push(Step::U);
            }
        }
    }

    /// Backtracks to the next unexplored branch: replace the last `R` that
    /// can be flipped to a feasible `U`.
    fn advance(&mut self) -> bool {
        while let Some(last) = self.word.pop() {
            if last == Step::U {
                continue;
            }
            let (x, y) = self.point();
            if self.up_allowed(x, y) {
                // Flipping R -> U must leave enough R steps to finish.
                let remaining_r = self.a - x;
                let remaining_u = self.b - y;
                if remaining_r >= 1 && remaining_u >= 1 {
                    self.word.push(Step::U);
                    self.descend();
                    return true;
                }
            }
        }
        false
    }
}

impl Iterator for PathEnumerator {
    type Item = PathWord;

    fn next(&mut self) -> Option<PathWord> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.descend();
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        Some(PathWord {
            steps: self.word.clone(),
        })
    }
}

/// Streams the below-diagonal paths to `(a, b)` in lexicographic order with
/// `R < U`. Coprimality is not required; `a > b >= 1` is.
pub fn enumerate(a: u64, b: u64) -> Result<PathEnumerator> {
    check_indices(a, b)?;
    Ok(PathEnumerator {
        a,
        b,
        word: Vec::with_capacity((a + b) as usize),
        started: false,
        done: false,
    })
}
