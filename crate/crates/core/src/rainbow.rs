//! Graph families and exact rainbow Hamilton path/cycle search.
//!
//! A rainbow Hamilton structure draws each of its edges from a distinct
//! member of the family: the edge-to-member assignment is a bijection
//! onto the family indices, with members usable in any order. Searches
//! are exhaustive backtracking, deterministic (vertices and member
//! indices ascending, first witness returned).

use crate::bigraph::{parse_graph_block, BipartiteGraph, ParseError};
use crate::shifting::{same_part_pairs, shift_xy};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum RainbowError {
    #[error("family of {actual} graphs cannot carry this structure (expected {expected})")]
    FamilySizeMismatch { expected: usize, actual: usize },
    #[error("a family must contain at least one graph")]
    EmptyFamily,
    #[error("family members disagree on the bipartition: ({0}, {1}) vs ({2}, {3})")]
    HeterogeneousParts(usize, usize, usize, usize),
}

/// An ordered, non-empty list of bipartite graphs sharing one
/// bipartition; the list position is the member index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFamily {
    graphs: Vec<BipartiteGraph>,
}

impl GraphFamily {
    pub fn new(graphs: Vec<BipartiteGraph>) -> Result<Self, RainbowError> {
        let first = graphs.first().ok_or(RainbowError::EmptyFamily)?;
        let (n_x, n_y) = (first.n_x(), first.n_y());
        for g in &graphs {
            if g.n_x() != n_x || g.n_y() != n_y {
                return Err(RainbowError::HeterogeneousParts(n_x, n_y, g.n_x(), g.n_y()));
            }
        }
        Ok(GraphFamily { graphs })
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn n_x(&self) -> usize {
        self.graphs[0].n_x()
    }

    pub fn n_y(&self) -> usize {
        self.graphs[0].n_y()
    }

    pub fn vertex_count(&self) -> usize {
        self.graphs[0].vertex_count()
    }

    pub fn graphs(&self) -> &[BipartiteGraph] {
        &self.graphs
    }

    pub fn is_constant(&self) -> bool {
        self.graphs.iter().all(|g| *g == self.graphs[0])
    }
}

/// A vertex sequence plus an injective edge-to-member assignment. For
/// cycles the wrap-around edge is the last assignment entry; the first
/// vertex is not repeated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RainbowSubgraph {
    pub vertices: Vec<usize>,
    pub assignment: Vec<usize>,
}

/// First violated clause of a rainbow Hamilton witness, for diagnostics.
#[derive(Debug, Error, PartialEq)]
pub enum WitnessViolation {
    #[error("witness covers {got} vertices, the family graphs have {want}")]
    WrongCoverage { want: usize, got: usize },
    #[error("vertex {0} is repeated")]
    RepeatedVertex(usize),
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("consecutive vertices {0} and {1} lie in the same part")]
    NoAlternation(usize, usize),
    #[error("expected {want} assignment entries, got {got}")]
    WrongAssignmentLength { want: usize, got: usize },
    #[error("assignment index {0} is out of range")]
    AssignmentOutOfRange(usize),
    #[error("member {0} is assigned to two edges")]
    AssignmentNotInjective(usize),
    #[error("edge ({0}, {1}) is missing from assigned member {2}")]
    EdgeNotInMember(usize, usize, usize),
}

/// Check a rainbow Hamilton path (or cycle, when `closed`) witness
/// against the family, reporting the first violated clause.
pub fn check_rainbow(
    family: &GraphFamily,
    w: &RainbowSubgraph,
    closed: bool,
) -> Result<(), WitnessViolation> {
    let total = family.vertex_count();
    if w.vertices.len() != total {
        return Err(WitnessViolation::WrongCoverage { want: total, got: w.vertices.len() });
    }
    let mut seen = vec![false; total];
    for &v in &w.vertices {
        if v >= total {
            return Err(WitnessViolation::VertexOutOfRange(v));
        }
        if seen[v] {
            return Err(WitnessViolation::RepeatedVertex(v));
        }
        seen[v] = true;
    }
    let edge_count = if closed { total } else { total - 1 };
    if w.assignment.len() != edge_count {
        return Err(WitnessViolation::WrongAssignmentLength {
            want: edge_count,
            got: w.assignment.len(),
        });
    }
    let mut used = vec![false; family.len()];
    for (i, &member) in w.assignment.iter().enumerate() {
        let a = w.vertices[i];
        let b = w.vertices[(i + 1) % total];
        if family.graphs[0].is_x(a) == family.graphs[0].is_x(b) {
            return Err(WitnessViolation::NoAlternation(a, b));
        }
        if member >= family.len() {
            return Err(WitnessViolation::AssignmentOutOfRange(member));
        }
        if used[member] {
            return Err(WitnessViolation::AssignmentNotInjective(member));
        }
        used[member] = true;
        if !family.graphs[member].has_edge(a, b) {
            return Err(WitnessViolation::EdgeNotInMember(a, b, member));
        }
    }
    Ok(())
}

pub fn verify_rainbow(family: &GraphFamily, w: &RainbowSubgraph, closed: bool) -> bool {
    check_rainbow(family, w, closed).is_ok()
}

/// Validity of a not-necessarily-spanning rainbow path (distinct
/// alternating vertices, injective assignment, membership).
pub fn is_rainbow_path(family: &GraphFamily, w: &RainbowSubgraph) -> bool {
    if w.vertices.is_empty() || w.assignment.len() + 1 != w.vertices.len() {
        return false;
    }
    let total = family.vertex_count();
    let mut seen = vec![false; total];
    for &v in &w.vertices {
        if v >= total || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    let mut used = vec![false; family.len()];
    for (i, &member) in w.assignment.iter().enumerate() {
        let (a, b) = (w.vertices[i], w.vertices[i + 1]);
        if member >= family.len() || used[member] || !family.graphs[member].has_edge(a, b) {
            return false;
        }
        used[member] = true;
    }
    true
}

struct Search<'a> {
    family: &'a GraphFamily,
    total: usize,
    /// Per-member mask of vertices with positive degree.
    support: Vec<u64>,
    path: Vec<usize>,
    assignment: Vec<usize>,
    visited: u64,
    used: u64,
}

impl<'a> Search<'a> {
    fn new(family: &'a GraphFamily) -> Self {
        let total = family.vertex_count();
        assert!(total <= 64, "searches track visited vertices in a u64 mask");
        let support = family
            .graphs
            .iter()
            .map(|g| {
                let mut mask = 0u64;
                for v in 0..total {
                    if g.degree(v) > 0 {
                        mask |= 1u64 << v;
                    }
                }
                mask
            })
            .collect();
        Search {
            family,
            total,
            support,
            path: Vec::with_capacity(total),
            assignment: Vec::with_capacity(total),
            visited: 0,
            used: 0,
        }
    }

    /// A vertex isolated in every unused member can never be covered.
    fn branch_is_dead(&self) -> bool {
        let mut covered = self.visited;
        for (i, &s) in self.support.iter().enumerate() {
            if self.used >> i & 1 == 0 {
                covered |= s;
            }
        }
        covered.count_ones() as usize != self.total
    }

    fn dfs_path(&mut self) -> bool {
        if self.path.len() == self.total {
            return true;
        }
        if self.branch_is_dead() {
            return false;
        }
        let last = *self.path.last().unwrap();
        for next in 0..self.total {
            if self.visited >> next & 1 == 1 {
                continue;
            }
            for member in 0..self.family.len() {
                if self.used >> member & 1 == 1 {
                    continue;
                }
                if !self.family.graphs[member].has_edge(last, next) {
                    continue;
                }
                self.path.push(next);
                self.assignment.push(member);
                self.visited |= 1u64 << next;
                self.used |= 1u64 << member;
                if self.dfs_path() {
                    return true;
                }
                self.used &= !(1u64 << member);
                self.visited &= !(1u64 << next);
                self.assignment.pop();
                self.path.pop();
            }
        }
        false
    }

    fn dfs_cycle(&mut self) -> bool {
        if self.path.len() == self.total {
            let last = *self.path.last().unwrap();
            // Direction symmetry: keep the orientation whose second
            // vertex is below the last one.
            if self.path[1] > last {
                return false;
            }
            let member = (!self.used).trailing_zeros() as usize;
            if member < self.family.len() && self.family.graphs[member].has_edge(last, self.path[0])
            {
                self.assignment.push(member);
                return true;
            }
            return false;
        }
        if self.branch_is_dead() {
            return false;
        }
        let last = *self.path.last().unwrap();
        for next in 1..self.total {
            if self.visited >> next & 1 == 1 {
                continue;
            }
            for member in 0..self.family.len() {
                if self.used >> member & 1 == 1 {
                    continue;
                }
                if !self.family.graphs[member].has_edge(last, next) {
                    continue;
                }
                self.path.push(next);
                self.assignment.push(member);
                self.visited |= 1u64 << next;
                self.used |= 1u64 << member;
                if self.dfs_cycle() {
                    return true;
                }
                self.used &= !(1u64 << member);
                self.visited &= !(1u64 << next);
                self.assignment.pop();
                self.path.pop();
            }
        }
        false
    }
}

/// Exhaustive search for a rainbow Hamilton path. The family must have
/// exactly `n_x + n_y - 1` members; parts differing by more than one
/// admit no alternating spanning path, so the search returns `None`
/// immediately.
pub fn find_rainbow_hamilton_path(
    family: &GraphFamily,
) -> Result<Option<RainbowSubgraph>, RainbowError> {
    let total = family.vertex_count();
    if family.len() + 1 != total {
        return Err(RainbowError::FamilySizeMismatch { expected: total - 1, actual: family.len() });
    }
    let imbalance = family.n_x().abs_diff(family.n_y());
    if imbalance > 1 {
        return Ok(None);
    }
    let mut search = Search::new(family);
    for start in 0..total {
        search.path.push(start);
        search.visited = 1u64 << start;
        if search.dfs_path() {
            let w = RainbowSubgraph {
                vertices: search.path.clone(),
                assignment: search.assignment.clone(),
            };
            debug_assert!(verify_rainbow(family, &w, false));
            return Ok(Some(w));
        }
        search.path.clear();
        search.visited = 0;
    }
    Ok(None)
}

/// Exhaustive search for a rainbow Hamilton cycle; needs `n_x + n_y`
/// members and balanced parts (start vertex fixed at label 0).
pub fn find_rainbow_hamilton_cycle(
    family: &GraphFamily,
) -> Result<Option<RainbowSubgraph>, RainbowError> {
    let total = family.vertex_count();
    if family.len() != total {
        return Err(RainbowError::FamilySizeMismatch { expected: total, actual: family.len() });
    }
    if family.n_x() != family.n_y() || family.n_x() < 2 {
        return Ok(None);
    }
    let mut search = Search::new(family);
    search.path.push(0);
    search.visited = 1;
    if search.dfs_cycle() {
        let w = RainbowSubgraph {
            vertices: search.path.clone(),
            assignment: search.assignment.clone(),
        };
        debug_assert!(verify_rainbow(family, &w, true));
        return Ok(Some(w));
    }
    Ok(None)
}

/// Maximum-edge rainbow path by exhaustive search; the assignment is
/// injective into the family but need not use every member. Ties break
/// to the lexicographically smallest vertex sequence, which the
/// ascending search order yields for free. An all-empty family gives a
/// single vertex and no edges.
pub fn longest_rainbow_path(family: &GraphFamily) -> RainbowSubgraph {
    let total = family.vertex_count();
    let mut best = RainbowSubgraph { vertices: vec![0], assignment: Vec::new() };
    if total == 0 {
        return RainbowSubgraph { vertices: Vec::new(), assignment: Vec::new() };
    }
    let mut search = Search::new(family);
    for start in 0..total {
        search.path.push(start);
        search.visited = 1u64 << start;
        longest_dfs(&mut search, &mut best);
        search.path.clear();
        search.visited = 0;
        search.assignment.clear();
        search.used = 0;
    }
    debug_assert!(is_rainbow_path(family, &best));
    best
}

fn longest_dfs(search: &mut Search, best: &mut RainbowSubgraph) {
    // A longer path wins; an equal-length one wins only if its vertex
    // sequence is lexicographically smaller (distinct assignment orders
    // can reach the same prefix at different times, so the visit order
    // alone does not settle ties).
    if search.path.len() > best.vertices.len()
        || (search.path.len() == best.vertices.len() && search.path < best.vertices)
    {
        best.vertices = search.path.clone();
        best.assignment = search.assignment.clone();
    }
    let last = *search.path.last().unwrap();
    for next in 0..search.total {
        if search.visited >> next & 1 == 1 {
            continue;
        }
        for member in 0..search.family.len() {
            if search.used >> member & 1 == 1 {
                continue;
            }
            if !search.family.graphs[member].has_edge(last, next) {
                continue;
            }
            search.path.push(next);
            search.assignment.push(member);
            search.visited |= 1u64 << next;
            search.used |= 1u64 << member;
            longest_dfs(search, best);
            search.used &= !(1u64 << member);
            search.visited &= !(1u64 << next);
            search.assignment.pop();
            search.path.pop();
        }
    }
}

/// Apply the common sweep schedule of same-part shifts to every member
/// simultaneously, iterating until no member moves. Every output member
/// is bi-shifted; part sizes and per-member edge counts are preserved.
pub fn bi_shift_family(family: &GraphFamily) -> GraphFamily {
    let pairs = same_part_pairs(&family.graphs[0]);
    let mut graphs = family.graphs.clone();
    loop {
        let mut moved = false;
        for &p in &pairs {
            for g in graphs.iter_mut() {
                let next = shift_xy(g, p).expect("sweep pairs are valid");
                if next != *g {
                    *g = next;
                    moved = true;
                }
            }
        }
        if !moved {
            return GraphFamily { graphs };
        }
    }
}

/// BFAM encoding: header `p bfam <n_x> <n_y> <k>`, then k BGF blocks
/// separated by `---` lines.
pub fn encode_family(family: &GraphFamily) -> String {
    let mut out = format!("p bfam {} {} {}\n", family.n_x(), family.n_y(), family.len());
    for (i, g) in family.graphs.iter().enumerate() {
        if i > 0 {
            out.push_str("---\n");
        }
        out.push_str(&crate::bigraph::encode_graph(g));
    }
    out
}

pub fn decode_family(text: &str) -> Result<GraphFamily, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l)).peekable();
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| ParseError { line: 1, message: "missing BFAM header".into() })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 5 || fields[0] != "p" || fields[1] != "bfam" {
        return Err(ParseError {
            line: header_line,
            message: format!("expected `p bfam <n_x> <n_y> <k>`, got {header:?}"),
        });
    }
    let parse_num = |line: usize, s: &str| -> Result<usize, ParseError> {
        s.parse::<usize>()
            .map_err(|_| ParseError { line, message: format!("invalid number {s:?}") })
    };
    let n_x = parse_num(header_line, fields[2])?;
    let n_y = parse_num(header_line, fields[3])?;
    let k = parse_num(header_line, fields[4])?;
    if k == 0 {
        return Err(ParseError { line: header_line, message: "family must be non-empty".into() });
    }
    let mut graphs = Vec::with_capacity(k);
    for i in 0..k {
        if i > 0 {
            match lines.next() {
                Some((_, sep)) if sep.trim() == "---" => {}
                Some((line, other)) => {
                    return Err(ParseError {
                        line,
                        message: format!("expected `---` separator, got {other:?}"),
                    })
                }
                None => {
                    return Err(ParseError {
                        line: header_line,
                        message: format!("expected {k} BGF blocks"),
                    })
                }
            }
        }
        let g = parse_graph_block(&mut lines)?;
        if g.n_x() != n_x || g.n_y() != n_y {
            return Err(ParseError {
                line: header_line,
                message: format!(
                    "member {i} has parts ({}, {}) but the family header says ({n_x}, {n_y})",
                    g.n_x(),
                    g.n_y()
                ),
            });
        }
        graphs.push(g);
    }
    for (line, rest) in lines {
        if !rest.trim().is_empty() {
            return Err(ParseError { line, message: format!("unexpected trailing content {rest:?}") });
        }
    }
    Ok(GraphFamily { graphs })
}

/// One-line witness form: `path|cycle v0 v1 ... ; g a0 a1 ...`.
pub fn format_witness(w: &RainbowSubgraph, closed: bool) -> String {
    let kind = if closed { "cycle" } else { "path" };
    let vs: Vec<String> = w.vertices.iter().map(|v| v.to_string()).collect();
    let gs: Vec<String> = w.assignment.iter().map(|g| g.to_string()).collect();
    format!("{kind} {} ; g {}", vs.join(" "), gs.join(" "))
}
