//! Simple undirected graphs on dense vertex ids `0..n`, bitset vertex sets,
//! text formats and instance generators.
//!
//! Induced subgraphs are never materialized: every search takes a
//! [`VertexMask`] of deleted vertices alongside the host graph.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use thiserror::Error;

/// Maximum number of vertices supported by the bitset representation.
pub const MAX_VERTICES: usize = 128;

/// A set of vertex ids out of `0..128`, backed by a `u128`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(pub u128);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u128 << v)
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }

    /// All vertices `0..n`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u128::MAX)
        } else {
            VertexSet((1u128 << n) - 1)
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        (self.0 >> v) & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u128 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u128 << v);
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn union(&self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(&self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(&self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_disjoint(&self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(&self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Ascending iterator over members.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn min(&self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn to_sorted_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Forbidden-vertex mask: represents the induced subgraph `G - forbidden`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Debug)]
pub struct VertexMask {
    pub forbidden: VertexSet,
}

impl VertexMask {
    pub const NONE: VertexMask = VertexMask {
        forbidden: VertexSet::EMPTY,
    };

    pub fn of(forbidden: VertexSet) -> Self {
        VertexMask { forbidden }
    }

    pub fn allows(&self, v: usize) -> bool {
        !self.forbidden.contains(v)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: malformed input: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: self-loop at vertex {v}")]
    SelfLoop { line: usize, v: usize },
    #[error("line {line}: vertex {v} out of range (n = {n})")]
    OutOfRange { line: usize, v: usize, n: usize },
    #[error("edge count mismatch: header says {expected}, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("graph too large: {n} vertices (limit {max})", max = MAX_VERTICES)]
    TooLarge { n: usize },
    #[error("{0}")]
    Invalid(String),
}

/// Immutable simple undirected graph with vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Builds a graph from an edge list; duplicate edges are ignored.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge { n });
        }
        let mut adj = vec![VertexSet::EMPTY; n];
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop { line: 0, v: u });
            }
            if u >= n || v >= n {
                return Err(GraphError::OutOfRange {
                    line: 0,
                    v: u.max(v),
                    n,
                });
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph { n, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].contains(v)
    }

    /// Sorted edge list, (min, max) per edge.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Neighbors of `v` that survive the mask.
    pub fn masked_neighbors(&self, v: usize, mask: VertexMask) -> VertexSet {
        self.adj[v].difference(mask.forbidden)
    }

    /// True if the graph is connected (the empty graph and a single vertex count as connected).
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = VertexSet::singleton(0);
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            for u in self.adj[v].iter() {
                if !seen.contains(u) {
                    seen.insert(u);
                    stack.push(u);
                }
            }
        }
        seen == VertexSet::full(self.n)
    }

    /// Serializes as edge-list text with an `n=<k>` header; edges sorted
    /// (min endpoint, max endpoint), one per line, '\n' terminated.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n={}", self.n);
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{} {}", u, v);
        }
        out
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.n, self.edge_count(), self.edges())
    }
}

/// Parses edge-list text: lines "u v" (0-indexed), '#' comments, optional
/// "n=<k>" header. Without a header, n defaults to 1 + max id.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut explicit_n: Option<usize> = None;
    let mut max_id: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("n=") {
            let n: usize = rest.trim().parse().map_err(|_| GraphError::Parse {
                line: lineno,
                msg: format!("bad vertex count '{rest}'"),
            })?;
            explicit_n = Some(n);
            continue;
        }
        let mut it = line.split_whitespace();
        let (a, b) = match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(GraphError::Parse {
                    line: lineno,
                    msg: format!("expected 'u v', got '{line}'"),
                })
            }
        };
        let u: usize = a.parse().map_err(|_| GraphError::Parse {
            line: lineno,
            msg: format!("bad vertex id '{a}'"),
        })?;
        let v: usize = b.parse().map_err(|_| GraphError::Parse {
            line: lineno,
            msg: format!("bad vertex id '{b}'"),
        })?;
        if u == v {
            return Err(GraphError::SelfLoop { line: lineno, v: u });
        }
        max_id = Some(max_id.unwrap_or(0).max(u).max(v));
        edges.push((u, v));
    }
    let n = match explicit_n {
        Some(n) => {
            if let Some(m) = max_id {
                if m >= n {
                    return Err(GraphError::OutOfRange { line: 0, v: m, n });
                }
            }
            n
        }
        None => max_id.map_or(0, |m| m + 1),
    };
    Graph::from_edges(n, &edges)
}

/// Parses DIMACS edge format: one "p edge n m" line, then m lines "e u v"
/// with 1-indexed vertices. Output vertices are 0-indexed.
pub fn parse_dimacs(text: &str) -> Result<Graph, GraphError> {
    let mut n: Option<usize> = None;
    let mut expected_m = 0usize;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 3 || parts[0] != "edge" {
                return Err(GraphError::Parse {
                    line: lineno,
                    msg: format!("bad problem line '{line}'"),
                });
            }
            let nv: usize = parts[1].parse().map_err(|_| GraphError::Parse {
                line: lineno,
                msg: format!("bad vertex count '{}'", parts[1]),
            })?;
            let m: usize = parts[2].parse().map_err(|_| GraphError::Parse {
                line: lineno,
                msg: format!("bad edge count '{}'", parts[2]),
            })?;
            n = Some(nv);
            expected_m = m;
            continue;
        }
        if let Some(rest) = line.strip_prefix('e') {
            let nv = n.ok_or(GraphError::Parse {
                line: lineno,
                msg: "edge before problem line".into(),
            })?;
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(GraphError::Parse {
                    line: lineno,
                    msg: format!("bad edge line '{line}'"),
                });
            }
            let u: usize = parts[0].parse().map_err(|_| GraphError::Parse {
                line: lineno,
                msg: format!("bad vertex id '{}'", parts[0]),
            })?;
            let v: usize = parts[1].parse().map_err(|_| GraphError::Parse {
                line: lineno,
                msg: format!("bad vertex id '{}'", parts[1]),
            })?;
            if u == 0 || v == 0 || u > nv || v > nv {
                return Err(GraphError::OutOfRange {
                    line: lineno,
                    v: u.max(v),
                    n: nv,
                });
            }
            if u == v {
                return Err(GraphError::SelfLoop { line: lineno, v: u - 1 });
            }
            edges.push((u - 1, v - 1));
            continue;
        }
        return Err(GraphError::Parse {
            line: lineno,
            msg: format!("unrecognized line '{line}'"),
        });
    }
    let n = n.ok_or(GraphError::Parse {
        line: 0,
        msg: "missing problem line".into(),
    })?;
    if edges.len() != expected_m {
        return Err(GraphError::EdgeCount {
            expected: expected_m,
            found: edges.len(),
        });
    }
    Graph::from_edges(n, &edges)
}

/// Complete graph K_n.
pub fn gen_complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).expect("K_n is simple")
}

/// Cycle C_n, n >= 3.
pub fn gen_cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::Invalid(format!("cycle needs n >= 3, got {n}")));
    }
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

/// Disjoint union; g2's vertex ids are shifted by g1.n().
pub fn gen_disjoint_union(g1: &Graph, g2: &Graph) -> Result<Graph, GraphError> {
    let shift = g1.n();
    let mut edges = g1.edges();
    for (u, v) in g2.edges() {
        edges.push((u + shift, v + shift));
    }
    Graph::from_edges(shift + g2.n(), &edges)
}

/// Erdős–Rényi G(n, p); deterministic for a fixed seed.
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::Invalid(format!("p must be in [0,1], got {p}")));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}
