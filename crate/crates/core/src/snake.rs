//! Snake graphs of lattice paths, built from half-lattice points in doubled
//! integer coordinates, and a deliberately naive backtracking counter for
//! their perfect matchings. The counter is the independent oracle against
//! the continued-fraction numerator.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::paths::{PathWord, Step};

/// Default bound on the number of tiles the backtracking matcher accepts.
pub const DEFAULT_TILE_CAP: usize = 40;

/// One half-unit tile, identified by its anchor half-lattice point `(i, j)`
/// stored as doubled coordinates `(2i, 2j)`. The tile occupies
/// `[i - 1/2, i] x [j, j + 1/2]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Tile {
    pub anchor: (i64, i64),
}

impl Tile {
    /// The four corners in doubled coordinates.
    fn corners(&self) -> [(i64, i64); 4] {
        let (px, py) = self.anchor;
        [(px - 1, py), (px, py), (px - 1, py + 1), (px, py + 1)]
    }

    /// The four boundary edges, endpoints ordered.
    fn sides(&self) -> [((i64, i64), (i64, i64)); 4] {
        let (px, py) = self.anchor;
        [
            ((px - 1, py), (px, py)),
            ((px - 1, py + 1), (px, py + 1)),
            ((px - 1, py), (px - 1, py + 1)),
            ((px, py), (px, py + 1)),
        ]
    }
}

/// Union of the tiles anchored along a path: deduplicated vertices and
/// edges, with tiles kept in traversal order so the spine is recoverable.
#[derive(Clone, Debug)]
pub struct SnakeGraph {
    vertices: Vec<(i64, i64)>,
    edges: Vec<((i64, i64), (i64, i64))>,
    tiles: Vec<Tile>,
}

impl SnakeGraph {
    pub fn vertices(&self) -> &[(i64, i64)] {
        &self.vertices
    }

    pub fn edges(&self) -> &[((i64, i64), (i64, i64))] {
        &self.edges
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    /// DOT rendering with one cluster per tile; node names are the doubled
    /// coordinates, listed in sorted order.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph snake {{");
        let _ = writeln!(out, "  label=\"{name}\";");
        let _ = writeln!(out, "  node [shape=point];");
        for (t, tile) in self.tiles.iter().enumerate() {
            let _ = writeln!(
                out,
                "  subgraph cluster_{t} {{ label=\"({},{})\";",
                tile.anchor.0, tile.anchor.1
            );
            let mut corners = tile.corners();
            corners.sort();
            for (x, y) in corners {
                let _ = writeln!(out, "    \"{x},{y}\";");
            }
            let _ = writeln!(out, "  }}");
        }
        for ((ax, ay), (bx, by)) in &self.edges {
            let _ = writeln!(out, "  \"{ax},{ay}\" -- \"{bx},{by}\";");
        }
        let _ = writeln!(out, "}}");
        out
    }
}

/// Builds the snake graph of a path: one tile for every half-lattice point
/// `(i, j)` on the path with `i >= 1` and `j <= b - 1`, where `b` is the
/// path's vertical endpoint.
pub fn build_snake(w: &PathWord) -> Result<SnakeGraph> {
    if w.len() < 2 {
        return Err(Error::PathTooShort { len: w.len() });
    }
    let (_, b) = w.endpoint();
    let b2 = 2 * b as i64;

    // Half-lattice points along the path, doubled, in traversal order.
    let mut points = vec![(0i64, 0i64)];
    let (mut x, mut y) = (0i64, 0i64);
    for step in w.steps() {
        match step {
            Step::R => {
                points.push((x + 1, y));
                points.push((x + 2, y));
                x += 2;
            }
            Step::U => {
                points.push((x, y + 1));
                points.push((x, y + 2));
                y += 2;
            }
        }
    }

    let mut tiles = Vec::new();
    let mut vertex_set = BTreeSet::new();
    let mut edge_set = BTreeSet::new();
    for (px, py) in points {
        if px >= 2 && py <= b2 - 2 {
            let tile = Tile { anchor: (px, py) };
            for corner in tile.corners() {
                vertex_set.insert(corner);
            }
            for side in tile.sides() {
                edge_set.insert(side);
            }
            tiles.push(tile);
        }
    }
    Ok(SnakeGraph {
        vertices: vertex_set.into_iter().collect(),
        edges: edge_set.into_iter().collect(),
        tiles,
    })
}

/// Counts perfect matchings by backtracking with the default tile cap.
pub fn count_perfect_matchings(g: &SnakeGraph) -> Result<BigInt> {
    count_perfect_matchings_capped(g, DEFAULT_TILE_CAP)
}

/// Counts perfect matchings exactly: branch on the lowest-index uncovered
/// vertex. An odd vertex count yields zero; a graph with more than `cap`
/// tiles is refused.
pub fn count_perfect_matchings_capped(g: &SnakeGraph, cap: usize) -> Result<BigInt> {
    if g.tiles.len() > cap {
        return Err(Error::TileCapExceeded {
            tiles: g.tiles.len(),
            cap,
        });
    }
    let n = g.vertices.len();
    if n % 2 != 0 {
        return Ok(BigInt::zero());
    }
    let index_of = |v: &(i64, i64)| g.vertices.binary_search(v).expect("edge endpoint missing");
    let mut adj = vec![Vec::new(); n];
    for (va, vb) in &g.edges {
        let (ia, ib) = (index_of(va), index_of(vb));
        adj[ia].push(ib);
        adj[ib].push(ia);
    }
    for neighbors in &mut adj {
        neighbors.sort_unstable();
    }

    fn recurse(adj: &[Vec<usize>], covered: &mut [bool], from: usize, count: &mut BigInt) {
        let mut v = from;
        while v < covered.len() && covered[v] {
            v += 1;
        }
        if v == covered.len() {
            *count += BigInt::one();
            return;
        }
        covered[v] = true;
        for &u in &adj[v] {
            if !covered[u] {
                covered[u] = true;
                recurse(adj, covered, v + 1, count);
                covered[u] = false;
            }
        }
        covered[v] = false;
    }

    let mut count = BigInt::zero();
    let mut covered = vec![false; n];
    recurse(&adj, &mut covered, 0, &mut count);
    Ok(count)
}
