//! Constrained path search and the threshold-2 vertex-Menger subroutine:
//! between two vertex sets, under a deleted-vertex mask and a
//! forbidden-internal set, find one path, find two fully disjoint paths, or
//! produce a single cut vertex.

use crate::geometry::OrientedCycle;
use crate::graph::{Graph, VertexMask, VertexSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("query invalid: {0}")]
    BadQuery(String),
}

/// Simple path as a vertex sequence; endpoints are first and last.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PathWitness {
    vertices: Vec<usize>,
}

impl PathWitness {
    pub fn new(vertices: Vec<usize>) -> Self {
        assert!(!vertices.is_empty());
        let set = VertexSet::from_iter(vertices.iter().copied());
        assert_eq!(set.len(), vertices.len(), "path vertices must be distinct");
        PathWitness { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    /// Edge count.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::from_iter(self.vertices.iter().copied())
    }

    pub fn internal_set(&self) -> VertexSet {
        if self.vertices.len() <= 2 {
            VertexSet::EMPTY
        } else {
            VertexSet::from_iter(self.vertices[1..self.vertices.len() - 1].iter().copied())
        }
    }

    pub fn is_valid_in(&self, g: &Graph) -> bool {
        self.vertices.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }
}

/// A constrained (A,B)-path class: endpoints in `source`/`target`, internal
/// vertices outside `source ∪ target ∪ forbidden_internal`, all vertices
/// outside `mask`.
#[derive(Clone, Copy, Debug)]
pub struct PathQuery {
    pub source: VertexSet,
    pub target: VertexSet,
    pub mask: VertexMask,
    pub forbidden_internal: VertexSet,
}

impl PathQuery {
    pub fn validate(&self) -> Result<(), PathError> {
        if !self.source.is_disjoint(self.target) {
            return Err(PathError::BadQuery("source and target intersect".into()));
        }
        if !self.source.is_disjoint(self.mask.forbidden)
            || !self.target.is_disjoint(self.mask.forbidden)
        {
            return Err(PathError::BadQuery("endpoint set meets the mask".into()));
        }
        Ok(())
    }

    /// Vertices usable as internal path vertices.
    fn internal_allowed(&self, g: &Graph) -> VertexSet {
        g.vertices()
            .difference(self.mask.forbidden)
            .difference(self.source)
            .difference(self.target)
            .difference(self.forbidden_internal)
    }

    /// True if `p` satisfies this query.
    pub fn admits(&self, g: &Graph, p: &PathWitness) -> bool {
        p.vertices().len() >= 2
            && p.is_valid_in(g)
            && self.source.contains(p.start())
            && self.target.contains(p.end())
            && p.internal_set().is_subset(self.internal_allowed(g))
    }
}

/// Result of the threshold-2 disjoint-path question.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MengerResult {
    /// Two satisfying paths sharing no vertex at all, endpoints included.
    TwoPaths(PathWitness, PathWitness),
    /// A single vertex meeting every satisfying path (at least one exists).
    CutVertex(usize),
    /// No satisfying path exists.
    NoPath,
}

/// A shortest satisfying path (edge count), or `None`; among shortest, the
/// one with smallest start and then lexicographically smallest sequence.
pub fn find_path(g: &Graph, q: &PathQuery) -> Option<PathWitness> {
    q.validate().ok()?;
    if q.source.is_empty() || q.target.is_empty() {
        return None;
    }
    let internal = q.internal_allowed(g);
    // Backward BFS from the target set through allowed internal vertices.
    let n = g.n();
    let mut dist = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for b in q.target.to_sorted_vec() {
        dist[b] = 0;
        queue.push_back(b);
    }
    while let Some(u) = queue.pop_front() {
        for v in g.neighbors(u).to_sorted_vec() {
            if dist[v] != usize::MAX {
                continue;
            }
            if internal.contains(v) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            } else if q.source.contains(v) {
                dist[v] = dist[u] + 1;
                // sources terminate a path; do not expand
            }
        }
    }
    let start = q
        .source
        .iter()
        .filter(|&a| dist[a] != usize::MAX)
        .min_by_key(|&a| (dist[a], a))?;
    // Greedy forward walk: smallest admissible next vertex at each level.
    let mut path = vec![start];
    let mut current = start;
    let mut d = dist[start];
    while d > 0 {
        let next = g
            .neighbors(current)
            .iter()
            .filter(|&v| {
                dist[v] == d - 1 && (internal.contains(v) || (d == 1 && q.target.contains(v)))
            })
            .min()
            .expect("backward BFS guarantees a predecessor");
        path.push(next);
        current = next;
        d -= 1;
    }
    Some(PathWitness::new(path))
}

/// Unit-capacity flow network over split vertices, specialized to the
/// threshold-2 question.
struct SplitFlow {
    /// adj[node] = list of arc ids leaving node
    adj: Vec<Vec<usize>>,
    /// arcs: (to, capacity-left, reverse arc id)
    to: Vec<usize>,
    cap: Vec<u8>,
    n_nodes: usize,
}

const SOURCE: usize = 0;
const SINK: usize = 1;

impl SplitFlow {
    fn node_in(v: usize) -> usize {
        2 + 2 * v
    }
    fn node_out(v: usize) -> usize {
        3 + 2 * v
    }

    fn new(n: usize) -> Self {
        let n_nodes = 2 + 2 * n;
        SplitFlow {
            adj: vec![Vec::new(); n_nodes],
            to: Vec::new(),
            cap: Vec::new(),
            n_nodes,
        }
    }

    fn add_arc(&mut self, from: usize, to: usize) {
        let id = self.to.len();
        self.to.push(to);
        self.cap.push(1);
        self.adj[from].push(id);
        self.to.push(from);
        self.cap.push(0);
        self.adj[to].push(id + 1);
    }

    /// One round of BFS augmentation; returns true if a unit was pushed.
    fn augment(&mut self) -> bool {
        let mut prev_arc = vec![usize::MAX; self.n_nodes];
        let mut seen = vec![false; self.n_nodes];
        seen[SOURCE] = true;
        let mut queue = std::collections::VecDeque::from([SOURCE]);
        while let Some(u) = queue.pop_front() {
            if u == SINK {
                break;
            }
            for &arc in &self.adj[u] {
                let v = self.to[arc];
                if self.cap[arc] > 0 && !seen[v] {
                    seen[v] = true;
                    prev_arc[v] = arc;
                    queue.push_back(v);
                }
            }
        }
        if !seen[SINK] {
            return false;
        }
        let mut node = SINK;
        while node != SOURCE {
            let arc = prev_arc[node];
            self.cap[arc] -= 1;
            self.cap[arc ^ 1] += 1;
            node = self.to[arc ^ 1];
        }
        true
    }

    /// Extracts one unit of flow as a vertex path and removes it.
    fn extract_path(&mut self) -> Vec<usize> {
        let mut path = Vec::new();
        let mut node = SOURCE;
        loop {
            // flow on a forward arc shows up as residual on its reverse
            let arc = *self.adj[node]
                .iter()
                .filter(|&&a| a % 2 == 0 && self.cap[a ^ 1] > 0)
                .min_by_key(|&&a| self.to[a])
                .expect("flow conservation");
            self.cap[arc ^ 1] -= 1;
            node = self.to[arc];
            if node == SINK {
                return path;
            }
            if node >= 2 && node % 2 == 0 {
                path.push((node - 2) / 2);
            }
        }
    }
}

/// TwoPaths if two fully vertex-disjoint satisfying paths exist; else
/// CutVertex z (a single vertex meeting every satisfying path) if at least
/// one exists; else NoPath.
pub fn two_disjoint_paths_or_cut(g: &Graph, q: &PathQuery) -> Result<MengerResult, PathError> {
    q.validate()?;
    let first = match find_path(g, q) {
        Some(p) => p,
        None => return Ok(MengerResult::NoPath),
    };
    let internal = q.internal_allowed(g);
    let mut net = SplitFlow::new(g.n());
    for v in 0..g.n() {
        let usable_out = |u: usize| internal.contains(u) || q.target.contains(u);
        if q.source.contains(v) {
            net.add_arc(SOURCE, SplitFlow::node_in(v));
            net.add_arc(SplitFlow::node_in(v), SplitFlow::node_out(v));
            for u in g.neighbors(v).to_sorted_vec() {
                if usable_out(u) {
                    net.add_arc(SplitFlow::node_out(v), SplitFlow::node_in(u));
                }
            }
        } else if internal.contains(v) {
            net.add_arc(SplitFlow::node_in(v), SplitFlow::node_out(v));
            for u in g.neighbors(v).to_sorted_vec() {
                if usable_out(u) {
                    net.add_arc(SplitFlow::node_out(v), SplitFlow::node_in(u));
                }
            }
        } else if q.target.contains(v) {
            net.add_arc(SplitFlow::node_in(v), SplitFlow::node_out(v));
            net.add_arc(SplitFlow::node_out(v), SINK);
        }
    }
    let mut flow = 0;
    while flow < 2 && net.augment() {
        flow += 1;
    }
    if flow >= 2 {
        let a = PathWitness::new(net.extract_path());
        let b = PathWitness::new(net.extract_path());
        debug_assert!(q.admits(g, &a) && q.admits(g, &b));
        debug_assert!(a.vertex_set().is_disjoint(b.vertex_set()));
        return Ok(MengerResult::TwoPaths(a, b));
    }
    // Max flow is 1: by Menger some single vertex meets every satisfying
    // path, and any such vertex lies on the path we already found. Prefer
    // proper internal cut vertices (smallest id first); fall back to an
    // endpoint cut (e.g. when the source is a single vertex).
    let endpoints = q.source.union(q.target);
    let mut candidates = first.vertex_set().difference(endpoints).to_sorted_vec();
    candidates.extend(first.vertex_set().intersection(endpoints).to_sorted_vec());
    for v in candidates {
        let mut blocked = *q;
        blocked.mask.forbidden.insert(v);
        blocked.source.remove(v);
        blocked.target.remove(v);
        if find_path(g, &blocked).is_none() {
            return Ok(MengerResult::CutVertex(v));
        }
    }
    unreachable!("max flow 1 implies a cut vertex on the first path");
}

/// The minimal suffix of `p` (walking from the target end backwards) whose
/// internal vertices avoid the cycle: the chord actually usable when
/// stitching claim cycles.
pub fn normalize_chord(p: &PathWitness, c: &OrientedCycle) -> PathWitness {
    let verts = p.vertices();
    let mut cut = 0;
    for (i, &v) in verts.iter().enumerate().take(verts.len() - 1).skip(1) {
        if c.contains(v) {
            cut = i;
        }
    }
    PathWitness::new(verts[cut..].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_gnp, Graph};
    use proptest::prelude::*;

    fn path_graph(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn query(a: &[usize], b: &[usize]) -> PathQuery {
        PathQuery {
            source: VertexSet::from_iter(a.iter().copied()),
            target: VertexSet::from_iter(b.iter().copied()),
            mask: VertexMask::NONE,
            forbidden_internal: VertexSet::EMPTY,
        }
    }

    #[test]
    fn find_path_basics() {
        let g = path_graph(3);
        let q = query(&[0], &[2]);
        assert_eq!(find_path(&g, &q).unwrap().vertices(), &[0, 1, 2]);

        let mut q2 = q;
        q2.forbidden_internal = VertexSet::singleton(1);
        assert_eq!(find_path(&g, &q2), None);

        let c4 = crate::graph::gen_cycle(4).unwrap();
        let mut q3 = query(&[0], &[2]);
        q3.forbidden_internal = VertexSet::singleton(1);
        assert_eq!(find_path(&c4, &q3).unwrap().vertices(), &[0, 3, 2]);
    }

    #[test]
    fn menger_path_graph_cut() {
        let g = path_graph(3);
        let r = two_disjoint_paths_or_cut(&g, &query(&[0], &[2])).unwrap();
        assert_eq!(r, MengerResult::CutVertex(1));
    }

    #[test]
    fn menger_two_paths() {
        let g = Graph::from_edges(4, &[(0, 2), (1, 3)]).unwrap();
        match two_disjoint_paths_or_cut(&g, &query(&[0, 1], &[2, 3])).unwrap() {
            MengerResult::TwoPaths(p, q) => {
                assert!(p.vertex_set().is_disjoint(q.vertex_set()));
                assert_eq!(p.vertices(), &[0, 2]);
                assert_eq!(q.vertices(), &[1, 3]);
            }
            other => panic!("expected TwoPaths, got {other:?}"),
        }
    }

    #[test]
    fn menger_star_cut() {
        let g = Graph::from_edges(5, &[(0, 4), (1, 4), (4, 2), (4, 3)]).unwrap();
        let r = two_disjoint_paths_or_cut(&g, &query(&[0, 1], &[2, 3])).unwrap();
        assert_eq!(r, MengerResult::CutVertex(4));
    }

    #[test]
    fn menger_singleton_source_never_two_paths() {
        // with |A| = 1 the two paths would share their start
        let c4 = crate::graph::gen_cycle(4).unwrap();
        let r = two_disjoint_paths_or_cut(&c4, &query(&[0], &[2])).unwrap();
        assert_eq!(r, MengerResult::CutVertex(0));
    }

    #[test]
    fn menger_rejects_overlapping_endpoints() {
        let g = path_graph(3);
        assert!(two_disjoint_paths_or_cut(&g, &query(&[0, 1], &[1, 2])).is_err());
    }

    #[test]
    fn menger_no_path() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let r = two_disjoint_paths_or_cut(&g, &query(&[0], &[3])).unwrap();
        assert_eq!(r, MengerResult::NoPath);
    }

    #[test]
    fn chord_normalization() {
        let c = OrientedCycle::new(vec![0, 1, 2, 3, 4, 5]);
        let p = PathWitness::new(vec![0, 6, 2, 7, 9]);
        assert_eq!(normalize_chord(&p, &c).vertices(), &[2, 7, 9]);
        let p2 = PathWitness::new(vec![1, 8, 3]);
        assert_eq!(normalize_chord(&p2, &c).vertices(), &[1, 8, 3]);
        let p3 = PathWitness::new(vec![0, 6]);
        assert_eq!(normalize_chord(&p3, &c).vertices(), &[0, 6]);
    }

    /// Exhaustive enumeration of satisfying simple paths (test oracle).
    pub(crate) fn all_satisfying_paths(g: &Graph, q: &PathQuery) -> Vec<PathWitness> {
        fn rec(
            g: &Graph,
            q: &PathQuery,
            internal: VertexSet,
            path: &mut Vec<usize>,
            used: VertexSet,
            out: &mut Vec<PathWitness>,
        ) {
            let current = *path.last().unwrap();
            for v in g.neighbors(current).to_sorted_vec() {
                if used.contains(v) {
                    continue;
                }
                if q.target.contains(v) {
                    path.push(v);
                    out.push(PathWitness::new(path.clone()));
                    path.pop();
                } else if internal.contains(v) {
                    path.push(v);
                    rec(g, q, internal, path, used.union(VertexSet::singleton(v)), out);
                    path.pop();
                }
            }
        }
        let internal = q.internal_allowed(g);
        let mut out = Vec::new();
        for a in q.source.to_sorted_vec() {
            rec(g, q, internal, &mut vec![a], VertexSet::singleton(a), &mut out);
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        /// Flow/cut tag agrees with brute-force path enumeration, and a
        /// reported cut vertex separates.
        #[test]
        fn menger_matches_bruteforce(seed in any::<u64>(), pick in any::<u64>()) {
            let g = gen_gnp(10, 0.3, seed).unwrap();
            // derive a random disjoint query from `pick`
            let mut bits = pick;
            let mut a = VertexSet::EMPTY;
            let mut b = VertexSet::EMPTY;
            let mut f = VertexSet::EMPTY;
            for v in 0..g.n() {
                match bits % 5 {
                    0 => a.insert(v),
                    1 => b.insert(v),
                    2 => f.insert(v),
                    _ => {}
                }
                bits /= 5;
            }
            prop_assume!(!a.is_empty() && !b.is_empty());
            let q = PathQuery { source: a, target: b, mask: VertexMask::NONE, forbidden_internal: f };
            prop_assume!(q.validate().is_ok());
            let paths = all_satisfying_paths(&g, &q);
            let has_disjoint_pair = paths.iter().enumerate().any(|(i, p)| {
                paths[i + 1..].iter().any(|r| p.vertex_set().is_disjoint(r.vertex_set()))
            });
            match two_disjoint_paths_or_cut(&g, &q).unwrap() {
                MengerResult::TwoPaths(p, r) => {
                    prop_assert!(has_disjoint_pair);
                    prop_assert!(q.admits(&g, &p) && q.admits(&g, &r));
                    prop_assert!(p.vertex_set().is_disjoint(r.vertex_set()));
                }
                MengerResult::CutVertex(z) => {
                    prop_assert!(!paths.is_empty());
                    prop_assert!(!has_disjoint_pair);
                    prop_assert!(paths.iter().all(|p| p.vertex_set().contains(z)));
                }
                MengerResult::NoPath => prop_assert!(paths.is_empty()),
            }
        }

        /// find_path returns a shortest satisfying path with the stated
        /// tie-breaks.
        #[test]
        fn find_path_is_shortest_lex(seed in any::<u64>(), pick in any::<u64>()) {
            let g = gen_gnp(9, 0.35, seed).unwrap();
            let mut bits = pick;
            let mut a = VertexSet::EMPTY;
            let mut b = VertexSet::EMPTY;
            for v in 0..g.n() {
                match bits % 4 {
                    0 => a.insert(v),
                    1 => b.insert(v),
                    _ => {}
                }
                bits /= 4;
            }
            prop_assume!(!a.is_empty() && !b.is_empty() && a.is_disjoint(b));
            let q = PathQuery { source: a, target: b, mask: VertexMask::NONE, forbidden_internal: VertexSet::EMPTY };
            let all = all_satisfying_paths(&g, &q);
            let expect = all.iter().min_by(|p, r| {
                (p.len(), p.vertices()).cmp(&(r.len(), r.vertices()))
            });
            match (find_path(&g, &q), expect) {
                (None, None) => {}
                (Some(got), Some(want)) => {
                    prop_assert_eq!(got.len(), want.len());
                    prop_assert_eq!(got.vertices(), want.vertices());
                }
                (got, want) => prop_assert!(false, "mismatch: {:?} vs {:?}", got, want),
            }
        }
    }
}
