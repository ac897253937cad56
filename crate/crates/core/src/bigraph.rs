//! Labeled bipartite graphs with a fixed ordered bipartition.
//!
//! Vertices carry global labels `0..n_x+n_y`: the X side occupies
//! `0..n_x`, the Y side `n_x..n_x+n_y`. Only the biadjacency matrix is
//! stored, so edges inside a part cannot be represented at all. The
//! module also provides the quasi-complement, the bipartite join, the
//! five named extremal constructions, part-respecting isomorphism,
//! exhaustive enumeration, and the BGF text codec.

use thiserror::Error;

/// Hard cap on `n_x * n_y` for exhaustive enumeration.
pub const MAX_ENUM_BITS: usize = 36;

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("edge ({u}, {v}) is out of range for parts ({n_x}, {n_y})")]
    InvalidEdge { u: usize, v: usize, n_x: usize, n_y: usize },
    #[error("edge ({u}, {v}) has both endpoints in the same part")]
    SamePartEdge { u: usize, v: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("enumeration space of {bits} potential edges exceeds the {MAX_ENUM_BITS}-bit cap")]
    EnumerationTooLarge { bits: usize },
}

/// Text-format parse failure, with a 1-based line number.
#[derive(Debug, Error, PartialEq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, message: message.into() }
    }
}

/// A labeled bipartite graph on parts of sizes `n_x` and `n_y`.
///
/// The biadjacency matrix is kept as one `u64` neighbor mask per X
/// vertex (bit `j` of `rows[i]` is the edge between X vertex `i` and Y
/// vertex `n_x + j`), which caps `n_y` at 64. Values are immutable
/// after construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    n_x: usize,
    n_y: usize,
    rows: Vec<u64>,
}

impl std::fmt::Debug for BipartiteGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BipartiteGraph({}, {}; {:?})", self.n_x, self.n_y, self.edges())
    }
}

fn low_mask(bits: usize) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

impl BipartiteGraph {
    /// Build a graph from global-label edge pairs. Duplicate edges are
    /// merged silently; `(u, v)` must have `u` in X and `v` in Y.
    pub fn new(n_x: usize, n_y: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n_x, n_y)?;
        for &(u, v) in edges {
            let total = n_x + n_y;
            if u >= total || v >= total {
                return Err(GraphError::InvalidEdge { u, v, n_x, n_y });
            }
            if (u < n_x) == (v < n_x) {
                return Err(GraphError::SamePartEdge { u, v });
            }
            if u >= n_x {
                return Err(GraphError::InvalidEdge { u, v, n_x, n_y });
            }
            g.rows[u] |= 1u64 << (v - n_x);
        }
        Ok(g)
    }

    /// The edgeless graph on the given parts.
    pub fn empty(n_x: usize, n_y: usize) -> Result<Self, GraphError> {
        if n_y > 64 {
            return Err(GraphError::InvalidParameter(format!(
                "Y part of size {n_y} exceeds the 64-vertex row limit"
            )));
        }
        Ok(BipartiteGraph { n_x, n_y, rows: vec![0; n_x] })
    }

    /// The complete bipartite graph K_{n_x, n_y}.
    pub fn complete(n_x: usize, n_y: usize) -> Result<Self, GraphError> {
        let mut g = Self::empty(n_x, n_y)?;
        let full = low_mask(n_y);
        for row in &mut g.rows {
            *row = full;
        }
        Ok(g)
    }

    pub fn n_x(&self) -> usize {
        self.n_x
    }

    pub fn n_y(&self) -> usize {
        self.n_y
    }

    pub fn vertex_count(&self) -> usize {
        self.n_x + self.n_y
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_x(&self, label: usize) -> bool {
        label < self.n_x
    }

    /// Neighbor mask of X vertex `u` over Y-local indices.
    pub fn row(&self, u: usize) -> u64 {
        self.rows[u]
    }

    /// Neighbor mask of Y vertex `n_x + j` over X indices.
    pub fn column(&self, j: usize) -> u64 {
        let mut col = 0u64;
        for (u, row) in self.rows.iter().enumerate() {
            col |= ((row >> j) & 1) << u;
        }
        col
    }

    /// Edge test on global labels, in either endpoint order. Same-part
    /// pairs are simply non-adjacent.
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let (x, y) = if a < self.n_x { (a, b) } else { (b, a) };
        if x >= self.n_x || y < self.n_x || y >= self.vertex_count() {
            return false;
        }
        (self.rows[x] >> (y - self.n_x)) & 1 == 1
    }

    pub fn degree(&self, label: usize) -> usize {
        if label < self.n_x {
            self.rows[label].count_ones() as usize
        } else {
            self.column(label - self.n_x).count_ones() as usize
        }
    }

    /// Edges as global-label pairs, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, row) in self.rows.iter().enumerate() {
            let mut bits = *row;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                out.push((u, self.n_x + j));
                bits &= bits - 1;
            }
        }
        out
    }

    /// Quasi-complement: edge present iff absent here, parts unchanged.
    pub fn quasi_complement(&self) -> Self {
        let full = low_mask(self.n_y);
        BipartiteGraph {
            n_x: self.n_x,
            n_y: self.n_y,
            rows: self.rows.iter().map(|r| !r & full).collect(),
        }
    }

    /// Bipartite join: disjoint copies plus all X1-Y2 and Y1-X2 edges.
    /// X1 labels precede X2 within X, likewise Y1 before Y2.
    pub fn join(&self, other: &Self) -> Result<Self, GraphError> {
        let n_x = self.n_x + other.n_x;
        let n_y = self.n_y + other.n_y;
        if n_y > 64 {
            return Err(GraphError::InvalidParameter(format!(
                "joined Y part of size {n_y} exceeds the 64-vertex row limit"
            )));
        }
        let y1_full = low_mask(self.n_y);
        let y2_full = low_mask(other.n_y) << self.n_y;
        let mut rows = Vec::with_capacity(n_x);
        for &r in &self.rows {
            rows.push(r | y2_full);
        }
        for &r in &other.rows {
            rows.push((r << self.n_y) | y1_full);
        }
        Ok(BipartiteGraph { n_x, n_y, rows })
    }

    /// The same graph with the two parts exchanged; needs `n_x <= 64`.
    pub fn swap_parts(&self) -> Self {
        let mut g =
            Self::empty(self.n_y, self.n_x).expect("X part exceeds the 64-vertex row limit");
        for j in 0..self.n_y {
            g.rows[j] = self.column(j);
        }
        g
    }

    /// Row-major biadjacency bitmask; requires `n_x * n_y <= 64`.
    pub fn to_bitmask(&self) -> u64 {
        assert!(self.n_x * self.n_y <= 64, "bitmask view needs at most 64 potential edges");
        let mut mask = 0u64;
        for (u, row) in self.rows.iter().enumerate() {
            mask |= row << (u * self.n_y);
        }
        mask
    }

    /// Inverse of [`to_bitmask`](Self::to_bitmask).
    pub fn from_bitmask(n_x: usize, n_y: usize, mask: u64) -> Self {
        assert!(n_x * n_y <= 64, "bitmask view needs at most 64 potential edges");
        let full = low_mask(n_y);
        let rows = (0..n_x).map(|u| (mask >> (u * n_y)) & full).collect();
        BipartiteGraph { n_x, n_y, rows }
    }

    /// Connected components as sorted global-label lists; isolated
    /// vertices form singleton components.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let total = self.vertex_count();
        let mut seen = vec![false; total];
        let mut out = Vec::new();
        for start in 0..total {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = vec![start];
            while let Some(v) = queue.pop() {
                let neighbors: Vec<usize> = if v < self.n_x {
                    let mut bits = self.rows[v];
                    let mut ns = Vec::new();
                    while bits != 0 {
                        ns.push(self.n_x + bits.trailing_zeros() as usize);
                        bits &= bits - 1;
                    }
                    ns
                } else {
                    let mut bits = self.column(v - self.n_x);
                    let mut ns = Vec::new();
                    while bits != 0 {
                        ns.push(bits.trailing_zeros() as usize);
                        bits &= bits - 1;
                    }
                    ns
                };
                for w in neighbors {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.components().len() == 1
    }
}

/// Tags for the five named constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyTag {
    Q,
    R,
    S,
    T,
    B,
}

impl std::fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let c = match self {
            FamilyTag::Q => 'Q',
            FamilyTag::R => 'R',
            FamilyTag::S => 'S',
            FamilyTag::T => 'T',
            FamilyTag::B => 'B',
        };
        write!(f, "{c}")
    }
}

impl std::str::FromStr for FamilyTag {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Q" | "q" => Ok(FamilyTag::Q),
            "R" | "r" => Ok(FamilyTag::R),
            "S" | "s" => Ok(FamilyTag::S),
            "T" | "t" => Ok(FamilyTag::T),
            "B" | "b" => Ok(FamilyTag::B),
            other => Err(GraphError::InvalidParameter(format!("unknown family tag {other:?}"))),
        }
    }
}

/// A named construction `tag^k_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilyName {
    pub tag: FamilyTag,
    pub k: usize,
    pub n: usize,
}

impl FamilyName {
    pub fn new(tag: FamilyTag, k: usize, n: usize) -> Self {
        FamilyName { tag, k, n }
    }

    /// Parameter-range check. Q, S and T need `k <= n-1` so that the
    /// `n-k-1` block is well defined; R and B accept `k <= n`.
    pub fn validate(&self) -> Result<(), GraphError> {
        let FamilyName { tag, k, n } = *self;
        if n == 0 {
            return Err(GraphError::InvalidParameter(format!("{tag}^{k}_{n}: n must be positive")));
        }
        let k_max = match tag {
            FamilyTag::Q | FamilyTag::S | FamilyTag::T => n - 1,
            FamilyTag::R | FamilyTag::B => n,
        };
        if k > k_max {
            return Err(GraphError::InvalidParameter(format!(
                "{tag}^{k}_{n}: k must be at most {k_max}"
            )));
        }
        Ok(())
    }
}

impl std::fmt::Display for FamilyName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}^{}_{}", self.tag, self.k, self.n)
    }
}

/// Build the named extremal graph as a join of a complete block with a
/// quasi-complemented (hence empty) block.
pub fn construct(name: FamilyName) -> Result<BipartiteGraph, GraphError> {
    name.validate()?;
    let FamilyName { tag, k, n } = name;
    let c = BipartiteGraph::complete;
    let e = BipartiteGraph::empty;
    match tag {
        FamilyTag::Q => c(k, n - k - 1)?.join(&e(n - k, k + 1)?),
        FamilyTag::R => c(k, k)?.join(&e(n - k, n - k)?),
        FamilyTag::S => c(k, n - k - 1)?.join(&e(n - k, k)?),
        FamilyTag::T => c(k, n - k - 1)?.join(&e(n - k - 1, k + 1)?),
        FamilyTag::B => c(k, n - k)?.join(&e(n - k, k)?),
    }
}

/// Part-respecting isomorphism for small graphs, allowing the part swap
/// when the parts have equal sizes. A size mismatch is `false`, not an
/// error.
pub fn is_isomorphic(a: &BipartiteGraph, b: &BipartiteGraph) -> bool {
    if a.n_x != b.n_x || a.n_y != b.n_y {
        return false;
    }
    if iso_part_preserving(a, b) {
        return true;
    }
    a.n_x == a.n_y && iso_part_preserving(&a.swap_parts(), b)
}

/// Backtracking over X bijections with degree-multiset pruning; a
/// complete X assignment is accepted iff the remapped column multiset
/// matches, which settles the Y side without enumerating it.
fn iso_part_preserving(a: &BipartiteGraph, b: &BipartiteGraph) -> bool {
    debug_assert_eq!((a.n_x, a.n_y), (b.n_x, b.n_y));
    if a.edge_count() != b.edge_count() {
        return false;
    }
    let deg_multiset = |g: &BipartiteGraph, x_side: bool| -> Vec<usize> {
        let mut d: Vec<usize> = if x_side {
            (0..g.n_x).map(|u| g.degree(u)).collect()
        } else {
            (0..g.n_y).map(|j| g.degree(g.n_x + j)).collect()
        };
        d.sort_unstable();
        d
    };
    if deg_multiset(a, true) != deg_multiset(b, true)
        || deg_multiset(a, false) != deg_multiset(b, false)
    {
        return false;
    }

    let mut b_cols: Vec<u64> = (0..b.n_y).map(|j| b.column(j)).collect();
    b_cols.sort_unstable();
    let mut assign = vec![usize::MAX; a.n_x];
    let mut used = vec![false; b.n_x];
    extend_x_map(a, b, &b_cols, &mut assign, &mut used, 0)
}

fn extend_x_map(
    a: &BipartiteGraph,
    b: &BipartiteGraph,
    b_cols_sorted: &[u64],
    assign: &mut [usize],
    used: &mut [bool],
    u: usize,
) -> bool {
    if u == a.n_x {
        // Columns of `a` with X indices remapped through the assignment.
        let mut cols: Vec<u64> = (0..a.n_y)
            .map(|j| {
                let mut col = 0u64;
                for (src, &dst) in assign.iter().enumerate() {
                    col |= ((a.rows[src] >> j) & 1) << dst;
                }
                col
            })
            .collect();
        cols.sort_unstable();
        return cols == b_cols_sorted;
    }
    let du = a.rows[u].count_ones();
    for t in 0..b.n_x {
        if used[t] || b.rows[t].count_ones() != du {
            continue;
        }
        assign[u] = t;
        used[t] = true;
        if extend_x_map(a, b, b_cols_sorted, assign, used, u + 1) {
            return true;
        }
        used[t] = false;
    }
    assign[u] = usize::MAX;
    false
}

/// All `2^(n_x * n_y)` labeled graphs in increasing bitmask order.
pub fn enumerate_graphs(
    n_x: usize,
    n_y: usize,
) -> Result<impl Iterator<Item = BipartiteGraph>, GraphError> {
    let bits = n_x * n_y;
    if bits > MAX_ENUM_BITS {
        return Err(GraphError::EnumerationTooLarge { bits });
    }
    Ok((0..1u64 << bits).map(move |mask| BipartiteGraph::from_bitmask(n_x, n_y, mask)))
}

/// Canonical BGF encoding: header `p bgf <n_x> <n_y> <m>` followed by
/// `m` lines `e <u> <v>` sorted lexicographically, LF-terminated.
pub fn encode_graph(g: &BipartiteGraph) -> String {
    let mut out = format!("p bgf {} {} {}\n", g.n_x, g.n_y, g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}

pub fn decode_graph(text: &str) -> Result<BipartiteGraph, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let g = parse_graph_block(&mut lines)?;
    for (line, rest) in lines {
        if !rest.trim().is_empty() {
            return Err(ParseError::new(line, format!("unexpected trailing content {rest:?}")));
        }
    }
    Ok(g)
}

/// Consume one BGF block (header plus its edge lines) from a numbered
/// line stream. Shared with the BFAM family codec.
pub(crate) fn parse_graph_block<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
) -> Result<BipartiteGraph, ParseError> {
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "missing BGF header".to_string()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 5 || fields[0] != "p" || fields[1] != "bgf" {
        return Err(ParseError::new(header_line, format!("expected `p bgf <n_x> <n_y> <m>`, got {header:?}")));
    }
    let parse_num = |line: usize, s: &str| -> Result<usize, ParseError> {
        s.parse::<usize>().map_err(|_| ParseError::new(line, format!("invalid number {s:?}")))
    };
    let n_x = parse_num(header_line, fields[2])?;
    let n_y = parse_num(header_line, fields[3])?;
    let m = parse_num(header_line, fields[4])?;
    let mut g = BipartiteGraph::empty(n_x, n_y)
        .map_err(|e| ParseError::new(header_line, e.to_string()))?;
    for _ in 0..m {
        let (line, raw) = lines
            .next()
            .ok_or_else(|| ParseError::new(header_line, format!("expected {m} edge lines")))?;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        if fields.len() != 3 || fields[0] != "e" {
            return Err(ParseError::new(line, format!("expected `e <u> <v>`, got {raw:?}")));
        }
        let u = parse_num(line, fields[1])?;
        let v = parse_num(line, fields[2])?;
        if u >= n_x || v < n_x || v >= n_x + n_y {
            return Err(ParseError::new(
                line,
                format!("edge ({u}, {v}) violates u < {n_x} <= v < {}", n_x + n_y),
            ));
        }
        g.rows[u] |= 1u64 << (v - n_x);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k22() -> BipartiteGraph {
        BipartiteGraph::complete(2, 2).unwrap()
    }

    #[test]
    fn make_graph_examples() {
        let empty = BipartiteGraph::new(2, 2, &[]).unwrap();
        assert_eq!(empty.edge_count(), 0);

        let g = BipartiteGraph::new(2, 2, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert_eq!(g, k22());
        assert_eq!(g.edge_count(), 4);

        assert_eq!(
            BipartiteGraph::new(2, 2, &[(0, 2), (1, 0)]),
            Err(GraphError::SamePartEdge { u: 1, v: 0 })
        );
        assert!(matches!(
            BipartiteGraph::new(2, 2, &[(0, 7)]),
            Err(GraphError::InvalidEdge { .. })
        ));
        // Duplicates merge silently.
        let d = BipartiteGraph::new(2, 2, &[(0, 2), (0, 2)]).unwrap();
        assert_eq!(d.edge_count(), 1);
    }

    #[test]
    fn quasi_complement_examples() {
        assert_eq!(k22().quasi_complement().edge_count(), 0);
        let e32 = BipartiteGraph::empty(3, 2).unwrap();
        assert_eq!(e32.quasi_complement(), BipartiteGraph::complete(3, 2).unwrap());
    }

    #[test]
    fn join_examples() {
        let k11 = BipartiteGraph::complete(1, 1).unwrap();
        let e11 = BipartiteGraph::empty(1, 1).unwrap();
        let j = k11.join(&e11).unwrap();
        assert_eq!((j.n_x(), j.n_y(), j.edge_count()), (2, 2, 3));
        assert_eq!(j, construct(FamilyName::new(FamilyTag::B, 1, 2)).unwrap());

        let g = BipartiteGraph::new(2, 3, &[(0, 2), (1, 4)]).unwrap();
        let neutral = BipartiteGraph::empty(0, 0).unwrap().join(&g).unwrap();
        assert_eq!(neutral, g);

        // |E(K_{k,n-k-1} join empty(n-k, k+1))| = nk + (n-k)(n-k-1)
        for n in 2..=12usize {
            for k in 0..n {
                let j = BipartiteGraph::complete(k, n - k - 1)
                    .unwrap()
                    .join(&BipartiteGraph::empty(n - k, k + 1).unwrap())
                    .unwrap();
                assert_eq!(j.edge_count(), n * k + (n - k) * (n - k - 1));
            }
        }
    }

    #[test]
    fn construct_examples() {
        let q03 = construct(FamilyName::new(FamilyTag::Q, 0, 3)).unwrap();
        assert_eq!((q03.n_x(), q03.n_y(), q03.edge_count()), (3, 3, 6));
        // K_{3,2} union K_1: one isolated vertex, the rest form K_{3,2}.
        assert_eq!((0..6).filter(|&v| q03.degree(v) == 0).count(), 1);

        let t04 = construct(FamilyName::new(FamilyTag::T, 0, 4)).unwrap();
        assert_eq!((t04.n_x(), t04.n_y(), t04.edge_count()), (3, 4, 9));
        assert_eq!((0..7).filter(|&v| t04.degree(v) == 0).count(), 1);
        // K_{3,3} plus one isolated Y vertex.
        let k33_edges: Vec<(usize, usize)> =
            (0..3).flat_map(|u| (3..6).map(move |v| (u, v))).collect();
        let k33_plus_k1 = BipartiteGraph::new(3, 4, &k33_edges).unwrap();
        assert!(is_isomorphic(&t04, &k33_plus_k1));

        let b12 = construct(FamilyName::new(FamilyTag::B, 1, 2)).unwrap();
        assert_eq!((b12.vertex_count(), b12.edge_count()), (4, 3));
        assert_eq!(b12.edges(), vec![(0, 2), (0, 3), (1, 2)]);

        assert!(matches!(
            construct(FamilyName::new(FamilyTag::Q, 3, 3)),
            Err(GraphError::InvalidParameter(_))
        ));
    }

    #[test]
    fn construct_edge_count_formulas_up_to_n50() {
        for n in 3..=50usize {
            for k in 1..=n - 2 {
                let q = construct(FamilyName::new(FamilyTag::Q, k, n)).unwrap();
                assert_eq!(q.edge_count(), n * k + (n - k) * (n - k - 1), "Q^{k}_{n}");
                let t = construct(FamilyName::new(FamilyTag::T, k, n)).unwrap();
                assert_eq!(t.edge_count(), n * k + (n - k - 1) * (n - k - 1), "T^{k}_{n}");
                let b = construct(FamilyName::new(FamilyTag::B, k, n)).unwrap();
                assert_eq!(b.edge_count(), n * k + (n - k) * (n - k), "B^{k}_{n}");
            }
        }
    }

    #[test]
    fn constructions_have_expected_part_sizes() {
        for n in 2..=8usize {
            for k in 0..n {
                let q = construct(FamilyName::new(FamilyTag::Q, k, n)).unwrap();
                assert_eq!((q.n_x(), q.n_y()), (n, n));
                let s = construct(FamilyName::new(FamilyTag::S, k, n)).unwrap();
                assert_eq!((s.n_x(), s.n_y()), (n, n - 1));
                let t = construct(FamilyName::new(FamilyTag::T, k, n)).unwrap();
                assert_eq!((t.n_x(), t.n_y()), (n - 1, n));
            }
            for k in 0..=n {
                let r = construct(FamilyName::new(FamilyTag::R, k, n)).unwrap();
                assert_eq!((r.n_x(), r.n_y()), (n, n));
                let b = construct(FamilyName::new(FamilyTag::B, k, n)).unwrap();
                assert_eq!((b.n_x(), b.n_y()), (n, n));
            }
        }
    }

    #[test]
    fn isomorphism_examples() {
        // Q^0_2 with the isolated vertex relabeled within X.
        let a = BipartiteGraph::new(2, 2, &[(0, 2), (0, 3)]).unwrap(); // vertex 1 isolated
        let b = BipartiteGraph::new(2, 2, &[(1, 2), (1, 3)]).unwrap(); // vertex 0 isolated
        assert!(is_isomorphic(&a, &b));

        let b12 = construct(FamilyName::new(FamilyTag::B, 1, 2)).unwrap();
        assert!(!is_isomorphic(&k22(), &b12));

        // B^1_n is K_{n,n} minus a K_{n-1,1} star.
        let b13 = construct(FamilyName::new(FamilyTag::B, 1, 3)).unwrap();
        let k33 = BipartiteGraph::complete(3, 3).unwrap();
        let star: Vec<(usize, usize)> = k33
            .edges()
            .into_iter()
            .filter(|e| !b13.has_edge(e.0, e.1))
            .collect();
        let star_graph = BipartiteGraph::new(3, 3, &star).unwrap();
        assert!(is_isomorphic(&b13, &star_graph.quasi_complement()));

        // Part swap applies only to square graphs.
        let g = BipartiteGraph::new(2, 2, &[(0, 2), (0, 3)]).unwrap();
        assert!(is_isomorphic(&g, &g.swap_parts()));
        let h = BipartiteGraph::complete(2, 3).unwrap();
        assert!(!is_isomorphic(&h, &h.swap_parts()));
    }

    #[test]
    fn isomorphism_is_an_equivalence_on_2x2() {
        let graphs: Vec<BipartiteGraph> = enumerate_graphs(2, 2).unwrap().collect();
        for a in &graphs {
            assert!(is_isomorphic(a, a));
        }
        for a in &graphs {
            for b in &graphs {
                assert_eq!(is_isomorphic(a, b), is_isomorphic(b, a));
            }
        }
        for a in &graphs {
            for b in &graphs {
                if !is_isomorphic(a, b) {
                    continue;
                }
                for c in &graphs {
                    if is_isomorphic(b, c) {
                        assert!(is_isomorphic(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_graphs(2, 2).unwrap().count(), 16);
        assert_eq!(enumerate_graphs(2, 1).unwrap().count(), 4);
        let q03 = construct(FamilyName::new(FamilyTag::Q, 0, 3)).unwrap();
        let copies = enumerate_graphs(3, 3)
            .unwrap()
            .filter(|g| is_isomorphic(g, &q03))
            .count();
        assert_eq!(copies, 6);
        assert!(matches!(
            enumerate_graphs(7, 6),
            Err(GraphError::EnumerationTooLarge { bits: 42 })
        ));
    }

    #[test]
    fn enumeration_masks_are_distinct() {
        let masks: std::collections::HashSet<u64> =
            enumerate_graphs(3, 3).unwrap().map(|g| g.to_bitmask()).collect();
        assert_eq!(masks.len(), 512);
    }

    #[test]
    fn quasi_complement_involution_exhaustive_3x3() {
        for g in enumerate_graphs(3, 3).unwrap() {
            assert_eq!(g.quasi_complement().quasi_complement(), g);
            assert_eq!(g.edge_count() + g.quasi_complement().edge_count(), 9);
        }
    }

    #[test]
    fn bgf_examples() {
        let e11 = BipartiteGraph::empty(1, 1).unwrap();
        assert_eq!(encode_graph(&e11), "p bgf 1 1 0\n");
        let k11 = BipartiteGraph::complete(1, 1).unwrap();
        assert_eq!(encode_graph(&k11), "p bgf 1 1 1\ne 0 1\n");

        for g in enumerate_graphs(3, 3).unwrap() {
            assert_eq!(decode_graph(&encode_graph(&g)).unwrap(), g);
        }
    }

    #[test]
    fn bgf_errors_carry_line_numbers() {
        assert_eq!(decode_graph("p xyz 1 1 0\n").unwrap_err().line, 1);
        assert_eq!(decode_graph("p bgf 2 2 1\nq 0 2\n").unwrap_err().line, 2);
        assert_eq!(decode_graph("p bgf 2 2 2\ne 0 2\ne 0 1\n").unwrap_err().line, 3);
        assert_eq!(decode_graph("p bgf 2 2 0\ne 0 2\n").unwrap_err().line, 2);
        // Missing edge lines blame the header.
        assert_eq!(decode_graph("p bgf 2 2 2\ne 0 2\n").unwrap_err().line, 1);
    }

    proptest! {
        #[test]
        fn quasi_complement_is_an_involution(mask in 0u64..(1 << 12)) {
            let g = BipartiteGraph::from_bitmask(3, 4, mask);
            prop_assert_eq!(g.quasi_complement().quasi_complement(), g.clone());
            prop_assert_eq!(g.edge_count() + g.quasi_complement().edge_count(), 12);
        }

        #[test]
        fn bgf_round_trip(mask in 0u64..(1 << 12), n_x in 1usize..=4) {
            let n_y = 12 / n_x;
            let g = BipartiteGraph::from_bitmask(n_x, n_y, mask & low_mask(n_x * n_y));
            prop_assert_eq!(decode_graph(&encode_graph(&g)).unwrap(), g);
        }
    }
}
