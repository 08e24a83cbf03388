//! Exact long-cycle searches and brute-force ground-truth oracles.
//!
//! A cycle is *long* if its length (= vertex count = edge count) is at
//! least `ell`. All searches here are exact backtracking over simple
//! paths with feasibility pruning; no heuristics.

use crate::graph::{Graph, VertexMask, VertexSet};

/// A simple cycle in canonical form: rotated so the smallest id is first,
/// then oriented so the second entry is the smaller of the two cycle
/// neighbors of the first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CycleWitness {
    vertices: Vec<usize>,
}

impl CycleWitness {
    /// Canonicalizes an arbitrary rotation/orientation of a simple cycle.
    pub fn canonical(seq: &[usize]) -> CycleWitness {
        assert!(seq.len() >= 3, "cycle needs >= 3 vertices");
        let k = seq.len();
        let (pos, _) = seq
            .iter()
            .enumerate()
            .min_by_key(|&(_, v)| v)
            .expect("nonempty");
        let mut rotated: Vec<usize> = Vec::with_capacity(k);
        for i in 0..k {
            rotated.push(seq[(pos + i) % k]);
        }
        if rotated[1] > rotated[k - 1] {
            rotated[1..].reverse();
        }
        CycleWitness { vertices: rotated }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::from_iter(self.vertices.iter().copied())
    }

    /// Checks that this really is a simple cycle of `g` avoiding `mask`.
    pub fn is_valid_in(&self, g: &Graph, mask: VertexMask) -> bool {
        let k = self.vertices.len();
        if k < 3 || self.vertex_set().len() != k {
            return false;
        }
        for i in 0..k {
            let u = self.vertices[i];
            let v = self.vertices[(i + 1) % k];
            if u >= g.n() || !mask.allows(u) || !g.has_edge(u, v) {
                return false;
            }
        }
        true
    }
}

/// Search control returned by the cycle visitor.
enum Flow {
    Continue,
    Stop,
}

/// Core canonical-cycle DFS. Visits each simple cycle of `G - mask` with
/// length >= `ell` exactly once, as a canonical vertex sequence (start =
/// minimum id, second entry < last entry). Start vertices ascend, neighbors
/// ascend, so the visit order is deterministic.
///
/// `max_len`: cycles longer than this are neither reported nor explored
/// (pass `usize::MAX` for no limit). The caller may shrink the limit
/// between visits via the returned value of `visit`.
struct CycleDfs<'a, F: FnMut(&[usize]) -> (Flow, usize)> {
    g: &'a Graph,
    allowed: VertexSet,
    ell: usize,
    max_len: usize,
    visit: F,
    path: Vec<usize>,
    on_path: VertexSet,
    stopped: bool,
}

impl<'a, F: FnMut(&[usize]) -> (Flow, usize)> CycleDfs<'a, F> {
    fn run(g: &'a Graph, mask: VertexMask, ell: usize, max_len: usize, visit: F) {
        let allowed = g.vertices().difference(mask.forbidden);
        let mut dfs = CycleDfs {
            g,
            allowed,
            ell,
            max_len,
            visit,
            path: Vec::new(),
            on_path: VertexSet::EMPTY,
            stopped: false,
        };
        for start in allowed.to_sorted_vec() {
            if dfs.stopped {
                return;
            }
            dfs.path.clear();
            dfs.path.push(start);
            dfs.on_path = VertexSet::singleton(start);
            dfs.extend(start, start);
        }
    }

    /// Upper bound on the final cycle length from the current path, plus
    /// whether the start vertex is still closable through the remainder.
    fn feasible(&self, current: usize, start: usize) -> bool {
        let free = self
            .allowed
            .difference(self.on_path)
            .difference(VertexSet::full(start + 1).difference(VertexSet::singleton(start)));
        // BFS over free vertices (all > start) from `current`.
        let mut reach = VertexSet::EMPTY;
        let mut frontier = self.g.neighbors(current).intersection(free);
        while !frontier.is_empty() {
            reach = reach.union(frontier);
            let mut next = VertexSet::EMPTY;
            for v in frontier.iter() {
                next = next.union(self.g.neighbors(v).intersection(free));
            }
            frontier = next.difference(reach);
        }
        let bound = self.path.len() + reach.len();
        if bound < self.ell || self.path.len() + 1 > self.max_len {
            return false;
        }
        // The cycle must close back at `start` through some future vertex.
        !self.g.neighbors(start).intersection(reach).is_empty()
    }

    fn extend(&mut self, current: usize, start: usize) {
        if self.stopped {
            return;
        }
        // Close the cycle if possible.
        if self.path.len() >= 3
            && self.path.len() >= self.ell
            && self.path.len() <= self.max_len
            && self.g.has_edge(current, start)
            && self.path[1] < *self.path.last().unwrap()
        {
            let (flow, new_max) = (self.visit)(&self.path);
            self.max_len = new_max;
            if matches!(flow, Flow::Stop) {
                self.stopped = true;
                return;
            }
        }
        if self.path.len() + 1 > self.max_len {
            return;
        }
        if !self.feasible(current, start) {
            return;
        }
        let candidates = self
            .g
            .neighbors(current)
            .intersection(self.allowed)
            .difference(self.on_path)
            .difference(VertexSet::full(start + 1));
        for v in candidates.to_sorted_vec() {
            if self.stopped {
                return;
            }
            self.path.push(v);
            self.on_path.insert(v);
            self.extend(v, start);
            self.path.pop();
            self.on_path.remove(v);
        }
    }
}

/// True iff `G - mask` contains a cycle of length >= `ell`. Exact.
pub fn has_long_cycle(g: &Graph, mask: VertexMask, ell: usize) -> bool {
    let mut found = false;
    CycleDfs::run(g, mask, ell, usize::MAX, |_| {
        found = true;
        (Flow::Stop, usize::MAX)
    });
    found
}

/// A cycle of minimum length among cycles of length >= `ell` in `G - mask`;
/// ties broken by lexicographically smallest canonical vertex sequence.
pub fn shortest_long_cycle(g: &Graph, mask: VertexMask, ell: usize) -> Option<CycleWitness> {
    let mut best: Option<Vec<usize>> = None;
    CycleDfs::run(g, mask, ell, usize::MAX, |path| {
        let better = match &best {
            None => true,
            Some(b) => (path.len(), path) < (b.len(), b.as_slice()),
        };
        if better {
            best = Some(path.to_vec());
        }
        (Flow::Continue, best.as_ref().map_or(usize::MAX, |b| b.len()))
    });
    best.map(|seq| CycleWitness { vertices: seq })
}

/// Distinct long cycles of `G - mask`, in deterministic DFS order, stopping
/// once `cap` cycles have been found. `max_len` bounds the cycle length
/// (use `usize::MAX` for all lengths).
pub fn enumerate_long_cycles_bounded(
    g: &Graph,
    mask: VertexMask,
    ell: usize,
    cap: usize,
    max_len: usize,
) -> Vec<CycleWitness> {
    let mut out = Vec::new();
    if cap == 0 {
        return out;
    }
    CycleDfs::run(g, mask, ell, max_len, |path| {
        out.push(CycleWitness {
            vertices: path.to_vec(),
        });
        if out.len() >= cap {
            (Flow::Stop, max_len)
        } else {
            (Flow::Continue, max_len)
        }
    });
    out
}

/// Distinct long cycles of `G - mask`, stopping once `cap` found.
pub fn enumerate_long_cycles(
    g: &Graph,
    mask: VertexMask,
    ell: usize,
    cap: usize,
) -> Vec<CycleWitness> {
    enumerate_long_cycles_bounded(g, mask, ell, cap, usize::MAX)
}

/// True iff `x` hits every cycle of length >= `ell` in `g`.
pub fn is_transversal(g: &Graph, ell: usize, x: VertexSet) -> bool {
    !has_long_cycle(g, VertexMask::of(x), ell)
}

/// Minimum-cardinality transversal of the long cycles, searched by
/// increasing cardinality up to `budget`; `None` if every set within the
/// budget leaves a long cycle. Tie-break: lexicographically smallest sorted
/// vertex set of the minimum size.
pub fn min_transversal_bruteforce(
    g: &Graph,
    ell: usize,
    budget: usize,
) -> Option<(usize, VertexSet)> {
    // Greedy upper bound: hit some long cycle by its smallest vertex, repeat.
    let mut greedy = VertexSet::EMPTY;
    while let Some(c) = shortest_long_cycle(g, VertexMask::of(greedy), ell) {
        greedy.insert(c.vertices()[0]);
    }
    let limit = budget.min(greedy.len());
    let n = g.n();
    for k in 0..=limit {
        if let Some(set) = first_transversal_of_size(g, ell, n, k) {
            return Some((k, set));
        }
    }
    None
}

/// Lexicographically first k-subset of 0..n that is a transversal, if any.
fn first_transversal_of_size(g: &Graph, ell: usize, n: usize, k: usize) -> Option<VertexSet> {
    if k > n {
        return None;
    }
    let mut combo: Vec<usize> = (0..k).collect();
    loop {
        let set = VertexSet::from_iter(combo.iter().copied());
        if is_transversal(g, ell, set) {
            return Some(set);
        }
        // next combination in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if combo[i] != i + n - k {
                break;
            }
            if i == 0 {
                return None;
            }
        }
        combo[i] += 1;
        for j in (i + 1)..k {
            combo[j] = combo[j - 1] + 1;
        }
    }
}

/// Two vertex-disjoint cycles of length >= `ell`, or `None` if no such pair
/// exists. Exact. The first cycle is the earliest (in canonical enumeration
/// order) long cycle whose complement still holds a long cycle.
pub fn find_disjoint_long_pair_bruteforce(
    g: &Graph,
    ell: usize,
) -> Option<(CycleWitness, CycleWitness)> {
    let n = g.n();
    // A disjoint pair needs at least 2*ell vertices.
    if n < 2 * ell {
        return None;
    }
    // Only cycles leaving >= ell vertices can be the first of a pair.
    let mut result = None;
    CycleDfs::run(g, VertexMask::NONE, ell, n - ell, |path| {
        let c1 = CycleWitness {
            vertices: path.to_vec(),
        };
        if let Some(c2) = shortest_long_cycle(g, VertexMask::of(c1.vertex_set()), ell) {
            result = Some((c1, c2));
            (Flow::Stop, n - ell)
        } else {
            (Flow::Continue, n - ell)
        }
    });
    result
}
