//! Combinatorial maps: ribbon digraphs and ribbon graphs.
//!
//! A ribbon structure is a cyclic order of the incident arc-ends (or
//! half-edges) around every vertex, read in the positive direction of the
//! surface the graph is cellularly embedded in. Everything geometric in this
//! crate (faces, genus, duals, medial digraphs, separating curves) is derived
//! from these cyclic orders alone.

mod construct;
mod digraph;
mod graph;
mod surface;

pub use construct::{bidirect, dual, medial};
pub use digraph::{ArcEnd, DigraphDiagnostic, End, RawRibbonDigraph, RibbonDigraph};
pub use graph::{FaceSet, GraphDiagnostic, RawRibbonGraph, RibbonGraph};
pub use surface::{complement_components, cycle_is_separating, Layer, SurfaceCut, Subtransversal};

use std::fmt;

/// Index of a vertex in its graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

/// Index of an arc in a ribbon digraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcId(pub usize);

/// Index of an edge in a ribbon graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

/// One end of an undirected edge. Half-edge `2e + s` is side `s` of edge `e`;
/// side 0 sits at the first endpoint listed for the edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdge(pub usize);

impl HalfEdge {
    pub fn new(edge: EdgeId, side: u8) -> Self {
        debug_assert!(side < 2);
        HalfEdge(2 * edge.0 + side as usize)
    }

    pub fn edge(self) -> EdgeId {
        EdgeId(self.0 / 2)
    }

    pub fn side(self) -> u8 {
        (self.0 % 2) as u8
    }

    /// The other end of the same edge.
    pub fn opposite(self) -> Self {
        HalfEdge(self.0 ^ 1)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v#{}", self.0)
    }
}

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a#{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e#{}", self.0)
    }
}

/// Small union-find used for connectivity checks throughout the crate.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }

    pub(crate) fn count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }
}
