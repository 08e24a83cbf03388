//! Long-cycle packing/covering toolkit: for a graph G and a threshold l,
//! find either two vertex-disjoint cycles of length at least l or a small
//! set of vertices meeting every such cycle, together with machinery to
//! verify, serialize and stress-test the certificates.

pub mod cert;
pub mod cycles;
pub mod fixtures;
pub mod geometry;
pub mod graph;
pub mod paths;
pub mod solver;
pub mod sweep;
