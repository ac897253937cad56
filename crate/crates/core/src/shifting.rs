//! The (x, y)-shift operator on bipartite graphs and its fixpoint.
//!
//! A shift migrates every edge at the higher-labeled vertex `y` down to
//! `x` unless the target edge already exists. Sweeping all same-part
//! pairs to a fixpoint yields a bi-shifted graph, whose biadjacency is
//! a downward-closed staircase.

use crate::bigraph::BipartiteGraph;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ShiftError {
    #[error("shift pair ({x}, {y}) straddles the bipartition")]
    SamePartViolation { x: usize, y: usize },
    #[error("shift pair ({x}, {y}) must satisfy x < y within the label range")]
    InvalidPair { x: usize, y: usize },
}

/// An ordered same-part vertex pair `x < y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShiftPair {
    pub x: usize,
    pub y: usize,
}

impl ShiftPair {
    pub fn new(x: usize, y: usize) -> Self {
        ShiftPair { x, y }
    }

    fn validate(&self, g: &BipartiteGraph) -> Result<(), ShiftError> {
        let ShiftPair { x, y } = *self;
        if x >= y || y >= g.vertex_count() {
            return Err(ShiftError::InvalidPair { x, y });
        }
        if g.is_x(x) != g.is_x(y) {
            return Err(ShiftError::SamePartViolation { x, y });
        }
        Ok(())
    }
}

/// All same-part pairs of `g` in sweep order: X pairs lexicographically,
/// then Y pairs.
pub fn same_part_pairs(g: &BipartiteGraph) -> Vec<ShiftPair> {
    let mut pairs = Vec::new();
    for x in 0..g.n_x() {
        for y in x + 1..g.n_x() {
            pairs.push(ShiftPair::new(x, y));
        }
    }
    for x in g.n_x()..g.vertex_count() {
        for y in x + 1..g.vertex_count() {
            pairs.push(ShiftPair::new(x, y));
        }
    }
    pairs
}

/// Apply one (x, y)-shift: every edge at `y` whose counterpart at `x`
/// is absent moves to `x`. Preserves the edge count and the parts.
pub fn shift_xy(g: &BipartiteGraph, p: ShiftPair) -> Result<BipartiteGraph, ShiftError> {
    p.validate(g)?;
    let mut edges = g.edges();
    if g.is_x(p.x) {
        for e in edges.iter_mut() {
            if e.0 == p.y && !g.has_edge(p.x, e.1) {
                e.0 = p.x;
            }
        }
    } else {
        for e in edges.iter_mut() {
            if e.1 == p.y && !g.has_edge(e.0, p.x) {
                e.1 = p.x;
            }
        }
    }
    Ok(BipartiteGraph::new(g.n_x(), g.n_y(), &edges).expect("shift keeps labels in range"))
}

/// Iterate full sweeps of all same-part shifts until a clean pass.
///
/// Termination: any move strictly decreases the sum of endpoint labels
/// over the edge set. The result satisfies [`is_bi_shifted`].
pub fn bi_shift(g: &BipartiteGraph) -> BipartiteGraph {
    let pairs = same_part_pairs(g);
    let mut current = g.clone();
    loop {
        let mut moved = false;
        for &p in &pairs {
            let next = shift_xy(&current, p).expect("sweep pairs are valid");
            if next != current {
                current = next;
                moved = true;
            }
        }
        if !moved {
            return current;
        }
    }
}

/// Staircase test: an edge (x2, y2) forces every (x1, y1) with
/// `x1 <= x2`, `y1 <= y2`. Equivalent to no shift changing the graph.
pub fn is_bi_shifted(g: &BipartiteGraph) -> bool {
    // Downward-closed biadjacency: each row is a prefix mask and rows
    // shrink as the X label grows.
    let mut prev = u64::MAX;
    for u in 0..g.n_x() {
        let row = g.row(u);
        let d = row.count_ones();
        let prefix = if d == 0 { 0 } else { (1u64 << d) - 1 };
        if row != prefix || row & !prev != 0 {
            return false;
        }
        prev = row;
    }
    true
}
