//! Arithmetic on oriented cycles: segments, blocks, containing arcs, cycle
//! distance, and the parallel/crossing classification of chord pairs.
//!
//! Orientation is positional: the stored index order of the vertex sequence.
//! Reversal produces a new value.

use crate::cycles::CycleWitness;
use crate::graph::{Graph, VertexSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("vertex {0} is not on the cycle")]
    NotOnCycle(usize),
    #[error("empty vertex set")]
    EmptySet,
    #[error("chord pair invalid: {0}")]
    BadChordPair(String),
}

/// Cyclic sequence of distinct vertices with a fixed traversal direction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrientedCycle {
    vertices: Vec<usize>,
}

/// Parallel/crossing classification of two disjoint (C,C)-paths.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ChordClass {
    Parallel,
    Crossing,
}

impl OrientedCycle {
    pub fn new(vertices: Vec<usize>) -> Self {
        assert!(vertices.len() >= 3, "cycle needs >= 3 vertices");
        let set = VertexSet::from_iter(vertices.iter().copied());
        assert_eq!(set.len(), vertices.len(), "cycle vertices must be distinct");
        OrientedCycle { vertices }
    }

    pub fn from_witness(w: &CycleWitness) -> Self {
        OrientedCycle::new(w.vertices().to_vec())
    }

    pub fn to_witness(&self) -> CycleWitness {
        CycleWitness::canonical(&self.vertices)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::from_iter(self.vertices.iter().copied())
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    pub fn position(&self, v: usize) -> Result<usize, GeometryError> {
        self.vertices
            .iter()
            .position(|&u| u == v)
            .ok_or(GeometryError::NotOnCycle(v))
    }

    pub fn at(&self, pos: usize) -> usize {
        self.vertices[pos % self.vertices.len()]
    }

    /// Consecutive vertices (cyclically) are adjacent in `g`.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        self.to_witness().is_valid_in(g, crate::graph::VertexMask::NONE)
    }

    pub fn reversed(&self) -> OrientedCycle {
        let mut v = self.vertices.clone();
        v[1..].reverse();
        OrientedCycle { vertices: v }
    }

    /// Edge count of the segment x -> y along the orientation.
    pub fn forward_len(&self, x: usize, y: usize) -> Result<usize, GeometryError> {
        let px = self.position(x)?;
        let py = self.position(y)?;
        Ok((py + self.len() - px) % self.len())
    }

    /// Ordered vertices of the segment xCy (inclusive); x = y gives a
    /// single-vertex segment.
    pub fn segment_vertices(&self, x: usize, y: usize) -> Result<Vec<usize>, GeometryError> {
        let px = self.position(x)?;
        let steps = self.forward_len(x, y)?;
        Ok((0..=steps).map(|i| self.at(px + i)).collect())
    }

    /// The segment of minimum vertex count whose vertex set contains `s`;
    /// equivalently the complement of the longest gap between consecutive
    /// s-vertices. Ties broken by smallest start vertex id.
    pub fn shortest_containing_segment(
        &self,
        s: VertexSet,
    ) -> Result<(usize, usize), GeometryError> {
        if s.is_empty() {
            return Err(GeometryError::EmptySet);
        }
        let members: Vec<usize> = s.to_sorted_vec();
        for &v in &members {
            self.position(v)?;
        }
        let mut best: Option<(usize, usize, usize)> = None; // (count, start_id, end)
        for &start in &members {
            let pstart = self.position(start)?;
            let max_off = members
                .iter()
                .map(|&w| self.forward_len(start, w).expect("member on cycle"))
                .max()
                .expect("nonempty");
            // Containing all of s from this start requires reaching offset max_off.
            let count = max_off + 1;
            let end = self.at(pstart + max_off);
            let cand = (count, start, end);
            best = Some(match best {
                None => cand,
                Some(b) => {
                    if (cand.0, cand.1) < (b.0, b.1) {
                        cand
                    } else {
                        b
                    }
                }
            });
        }
        let (_, start, end) = best.expect("nonempty");
        Ok((start, end))
    }

    /// The k vertices strictly before `x` against the orientation, reported
    /// in orientation order.
    pub fn block_preceding(&self, x: usize, k: usize) -> Result<Vec<usize>, GeometryError> {
        let px = self.position(x)?;
        assert!(k <= self.len() - 1, "block size out of range");
        let l = self.len();
        Ok((0..k).map(|i| self.at(px + l - k + i)).collect())
    }

    /// The k vertices strictly after `y`, in orientation order.
    pub fn block_following(&self, y: usize, k: usize) -> Result<Vec<usize>, GeometryError> {
        let py = self.position(y)?;
        assert!(k <= self.len() - 1, "block size out of range");
        Ok((1..=k).map(|i| self.at(py + i)).collect())
    }

    /// min(edge-length of xCy, edge-length of yCx).
    pub fn dist_on_cycle(&self, x: usize, y: usize) -> Result<usize, GeometryError> {
        let f = self.forward_len(x, y)?;
        Ok(f.min(self.len() - f))
    }

    /// Unchanged if xCy is already the short arc (ties keep the original
    /// orientation), otherwise reversed.
    pub fn reorient_shortest_first(&self, x: usize, y: usize) -> Result<OrientedCycle, GeometryError> {
        let f = self.forward_len(x, y)?;
        if f <= self.len() - f {
            Ok(self.clone())
        } else {
            Ok(self.reversed())
        }
    }
}

/// Contiguous arc x -> y of an oriented cycle following its orientation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Segment {
    pub start: usize,
    pub end: usize,
}

impl Segment {
    pub fn vertices(&self, c: &OrientedCycle) -> Result<Vec<usize>, GeometryError> {
        c.segment_vertices(self.start, self.end)
    }

    pub fn vertex_set(&self, c: &OrientedCycle) -> Result<VertexSet, GeometryError> {
        Ok(VertexSet::from_iter(self.vertices(c)?))
    }
}

/// Classifies two vertex-disjoint (C,C)-paths by whether their endpoint
/// pairs interleave around the cycle. Each path is given as its vertex
/// sequence; endpoints are the first and last entries.
pub fn classify_pair(
    c: &OrientedCycle,
    p: &[usize],
    q: &[usize],
) -> Result<ChordClass, GeometryError> {
    if p.len() < 2 || q.len() < 2 {
        return Err(GeometryError::BadChordPair("path too short".into()));
    }
    let pset = VertexSet::from_iter(p.iter().copied());
    let qset = VertexSet::from_iter(q.iter().copied());
    if !pset.is_disjoint(qset) {
        return Err(GeometryError::BadChordPair("paths share a vertex".into()));
    }
    let ends = [p[0], *p.last().unwrap(), q[0], *q.last().unwrap()];
    let mut positions = [0usize; 4];
    for (i, &e) in ends.iter().enumerate() {
        positions[i] = c.position(e)?;
    }
    if VertexSet::from_iter(ends).len() != 4 {
        return Err(GeometryError::BadChordPair("endpoints not distinct".into()));
    }
    for path in [p, q] {
        for &v in &path[1..path.len() - 1] {
            if c.contains(v) {
                return Err(GeometryError::BadChordPair(format!(
                    "internal vertex {v} lies on the cycle"
                )));
            }
        }
    }
    Ok(interleaving(positions[0], positions[1], positions[2], positions[3]))
}

/// Interleave test on cyclic positions: do {a1,a2} separate {b1,b2}?
pub(crate) fn interleaving(a1: usize, a2: usize, b1: usize, b2: usize) -> ChordClass {
    let (lo, hi) = if a1 < a2 { (a1, a2) } else { (a2, a1) };
    let inside1 = lo < b1 && b1 < hi;
    let inside2 = lo < b2 && b2 < hi;
    if inside1 != inside2 {
        ChordClass::Crossing
    } else {
        ChordClass::Parallel
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c6() -> OrientedCycle {
        OrientedCycle::new(vec![0, 1, 2, 3, 4, 5])
    }

    #[test]
    fn segment_basics() {
        let c = c6();
        assert_eq!(c.segment_vertices(1, 3).unwrap(), vec![1, 2, 3]);
        assert_eq!(c.segment_vertices(4, 1).unwrap(), vec![4, 5, 0, 1]);
        assert_eq!(c.segment_vertices(2, 2).unwrap(), vec![2]);
        assert!(c.segment_vertices(0, 9).is_err());
    }

    #[test]
    fn segments_partition_edges() {
        let c = c6();
        let a = c.segment_vertices(1, 4).unwrap();
        let b = c.segment_vertices(4, 1).unwrap();
        let sa = VertexSet::from_iter(a.iter().copied());
        let sb = VertexSet::from_iter(b.iter().copied());
        assert_eq!(sa.intersection(sb).to_sorted_vec(), vec![1, 4]);
        assert_eq!(sa.union(sb), c.vertex_set());
        assert_eq!((a.len() - 1) + (b.len() - 1), c.len());
    }

    #[test]
    fn shortest_containing() {
        let c = c6();
        assert_eq!(
            c.shortest_containing_segment(VertexSet::from_iter([1, 3])).unwrap(),
            (1, 3)
        );
        assert_eq!(
            c.shortest_containing_segment(VertexSet::from_iter([5, 0, 1])).unwrap(),
            (5, 1)
        );
        // two arcs of 4 vertices; tie-break picks start 0
        assert_eq!(
            c.shortest_containing_segment(VertexSet::from_iter([0, 3])).unwrap(),
            (0, 3)
        );
        assert!(c.shortest_containing_segment(VertexSet::EMPTY).is_err());
    }

    #[test]
    fn blocks() {
        let c = c6();
        assert_eq!(c.block_preceding(0, 1).unwrap(), vec![5]);
        assert_eq!(c.block_preceding(0, 2).unwrap(), vec![4, 5]);
        assert_eq!(c.block_following(0, 1).unwrap(), vec![1]);
        assert_eq!(c.block_following(5, 2).unwrap(), vec![0, 1]);
        assert_eq!(c.block_following(2, 0).unwrap(), Vec::<usize>::new());
        // block size for l=5 is ceil(5/2)-1 = 2
        assert_eq!((5usize + 1) / 2 - 1, 2);
    }

    #[test]
    fn classification() {
        let c = c6();
        assert_eq!(
            classify_pair(&c, &[0, 7, 3], &[1, 8, 2]).unwrap(),
            ChordClass::Parallel
        );
        assert_eq!(
            classify_pair(&c, &[0, 7, 2], &[1, 8, 3]).unwrap(),
            ChordClass::Crossing
        );
        assert_eq!(
            classify_pair(&c, &[0, 7, 1], &[2, 8, 3]).unwrap(),
            ChordClass::Parallel
        );
        // shared vertex
        assert!(classify_pair(&c, &[0, 7, 3], &[1, 7, 2]).is_err());
        // internal vertex on cycle
        assert!(classify_pair(&c, &[0, 4, 3], &[1, 8, 2]).is_err());
    }

    #[test]
    fn distances_and_reorient() {
        let c = c6();
        assert_eq!(c.dist_on_cycle(0, 3).unwrap(), 3);
        assert_eq!(c.dist_on_cycle(0, 1).unwrap(), 1);
        assert_eq!(c.dist_on_cycle(2, 2).unwrap(), 0);
        assert_eq!(c.reorient_shortest_first(0, 2).unwrap(), c);
        assert_eq!(c.reorient_shortest_first(0, 4).unwrap(), c.reversed());
        assert_eq!(c.reorient_shortest_first(0, 3).unwrap(), c); // tie
    }

    #[test]
    fn reversal_keeps_start() {
        let c = OrientedCycle::new(vec![2, 5, 7, 9]);
        assert_eq!(c.reversed().vertices(), &[2, 9, 7, 5]);
        assert_eq!(c.reversed().reversed(), c);
    }

    proptest! {
        /// classify_pair is symmetric and invariant under reversal/rotation.
        #[test]
        fn classification_invariances(
            (len, e) in (4usize..10).prop_flat_map(|len| {
                (Just(len), proptest::sample::subsequence((0..len).collect::<Vec<usize>>(), 4))
            }),
            rot in 0usize..10,
            pairing in 0usize..3,
        ) {
            let base: Vec<usize> = (0..len).collect();
            let c = OrientedCycle::new(base.clone());
            // e is sorted; pick one of the three ways to pair the four
            // endpoints so both classes are exercised
            let (pa, pb, qa, qb) = match pairing {
                0 => (e[0], e[2], e[1], e[3]),
                1 => (e[0], e[1], e[2], e[3]),
                _ => (e[0], e[3], e[1], e[2]),
            };
            // off-cycle connector vertices
            let p = vec![pa, 100, pb];
            let q = vec![qa, 101, qb];
            let class = classify_pair(&c, &p, &q).unwrap();
            prop_assert_eq!(classify_pair(&c, &q, &p).unwrap(), class);
            let mut rotated = base.clone();
            rotated.rotate_left(rot % len);
            let cr = OrientedCycle::new(rotated);
            prop_assert_eq!(classify_pair(&cr, &p, &q).unwrap(), class);
            prop_assert_eq!(classify_pair(&c.reversed(), &p, &q).unwrap(), class);
        }

        /// Blocks around a vertex are disjoint when they fit.
        #[test]
        fn blocks_distinct(len in 3usize..12, xpos in 0usize..12, k1 in 0usize..5, k2 in 0usize..5) {
            prop_assume!(xpos < len && k1 + k2 + 1 <= len);
            let c = OrientedCycle::new((0..len).collect());
            let x = c.at(xpos);
            let before = c.block_preceding(x, k1).unwrap();
            let after = c.block_following(x, k2).unwrap();
            let mut all: Vec<usize> = before.iter().chain(after.iter()).copied().collect();
            all.push(x);
            let set = VertexSet::from_iter(all.iter().copied());
            prop_assert_eq!(set.len(), k1 + k2 + 1);
        }
    }
}
