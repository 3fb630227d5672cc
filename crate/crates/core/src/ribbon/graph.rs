use std::collections::{HashMap, HashSet};
use std::fmt;

use super::{EdgeId, HalfEdge, UnionFind, VertexId};
use crate::error::{Error, Result};

/// A violated ribbon-graph invariant, as reported by [`RawRibbonGraph::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphDiagnostic {
    DuplicateVertex(String),
    DuplicateEdge(String),
    UnknownEndpoint { edge: String, vertex: String },
    UnknownRotationEdge { vertex: String, edge: String },
    BadSide { vertex: String, edge: String, side: u8 },
    DuplicateRotationEntry { vertex: String, edge: String, side: u8 },
    MisplacedHalfEdge { vertex: String, edge: String, side: u8 },
    MissingHalfEdge { vertex: String, edge: String, side: u8 },
    Disconnected,
}

impl fmt::Display for GraphDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GraphDiagnostic::*;
        match self {
            DuplicateVertex(v) => write!(f, "duplicate vertex `{v}`"),
            DuplicateEdge(e) => write!(f, "duplicate edge `{e}`"),
            UnknownEndpoint { edge, vertex } => {
                write!(f, "edge `{edge}` refers to unknown vertex `{vertex}`")
            }
            UnknownRotationEdge { vertex, edge } => {
                write!(f, "rotation of `{vertex}` refers to unknown edge `{edge}`")
            }
            BadSide { vertex, edge, side } => {
                write!(f, "side tag {side} of `{edge}` at vertex `{vertex}` must be 0 or 1")
            }
            DuplicateRotationEntry { vertex, edge, side } => {
                write!(f, "duplicate rotation entry: {edge}:{side} at vertex `{vertex}`")
            }
            MisplacedHalfEdge { vertex, edge, side } => {
                write!(f, "half-edge misplaced: {edge}:{side} listed at vertex `{vertex}`")
            }
            MissingHalfEdge { vertex, edge, side } => {
                write!(f, "half-edge missing: {edge}:{side} not in rotation of vertex `{vertex}`")
            }
            Disconnected => write!(f, "graph is disconnected"),
        }
    }
}

/// Name-level description of a ribbon graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawRibbonGraph {
    pub vertices: Vec<(String, Vec<(String, u8)>)>,
    pub edges: Vec<(String, String, String)>,
}

impl RawRibbonGraph {
    pub fn validate(&self) -> Vec<GraphDiagnostic> {
        match self.resolve() {
            Ok((names, edges, rotation)) => check_structure(&names, &edges, &rotation),
            Err(diags) => diags,
        }
    }

    pub fn build(&self) -> Result<RibbonGraph> {
        let (names, edges, rotation) = self.resolve().map_err(join_diagnostics)?;
        RibbonGraph::new(names, edges, rotation)
    }

    #[allow(clippy::type_complexity)]
    fn resolve(
        &self,
    ) -> std::result::Result<(Vec<String>, Vec<(String, VertexId, VertexId)>, Vec<Vec<HalfEdge>>), Vec<GraphDiagnostic>>
    {
        let mut diags = Vec::new();
        let mut vindex = HashMap::new();
        for (i, (name, _)) in self.vertices.iter().enumerate() {
            if vindex.insert(name.as_str(), VertexId(i)).is_some() {
                diags.push(GraphDiagnostic::DuplicateVertex(name.clone()));
            }
        }
        let mut eindex = HashMap::new();
        let mut edges = Vec::new();
        for (i, (name, a, b)) in self.edges.iter().enumerate() {
            if eindex.insert(name.as_str(), EdgeId(i)).is_some() {
                diags.push(GraphDiagnostic::DuplicateEdge(name.clone()));
            }
            let mut lookup = |v: &String| match vindex.get(v.as_str()) {
                Some(&id) => id,
                None => {
                    diags.push(GraphDiagnostic::UnknownEndpoint { edge: name.clone(), vertex: v.clone() });
                    VertexId(0)
                }
            };
            let (a, b) = (lookup(a), lookup(b));
            edges.push((name.clone(), a, b));
        }
        let mut rotation = Vec::new();
        for (vname, entries) in &self.vertices {
            let mut rot = Vec::new();
            for (ename, side) in entries {
                match eindex.get(ename.as_str()) {
                    Some(_) if *side > 1 => diags.push(GraphDiagnostic::BadSide {
                        vertex: vname.clone(),
                        edge: ename.clone(),
                        side: *side,
                    }),
                    Some(&e) => rot.push(HalfEdge::new(e, *side)),
                    None => diags.push(GraphDiagnostic::UnknownRotationEdge {
                        vertex: vname.clone(),
                        edge: ename.clone(),
                    }),
                }
            }
            rotation.push(rot);
        }
        if diags.is_empty() {
            Ok((self.vertices.iter().map(|(n, _)| n.clone()).collect(), edges, rotation))
        } else {
            Err(diags)
        }
    }
}

fn join_diagnostics<D: fmt::Display>(diags: Vec<D>) -> Error {
    Error::Invalid(diags.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))
}

fn check_structure(
    names: &[String],
    edges: &[(String, VertexId, VertexId)],
    rotation: &[Vec<HalfEdge>],
) -> Vec<GraphDiagnostic> {
    let mut diags = Vec::new();
    let mut seen = vec![0usize; 2 * edges.len()];
    for (v, rot) in rotation.iter().enumerate() {
        for &h in rot {
            let (ename, a, b) = &edges[h.edge().0];
            let expected = if h.side() == 0 { *a } else { *b };
            let (vertex, edge, side) = (names[v].clone(), ename.clone(), h.side());
            if expected.0 != v {
                diags.push(GraphDiagnostic::MisplacedHalfEdge { vertex, edge, side });
                continue;
            }
            seen[h.0] += 1;
            if seen[h.0] == 2 {
                diags.push(GraphDiagnostic::DuplicateRotationEntry { vertex, edge, side });
            }
        }
    }
    for (i, (ename, a, b)) in edges.iter().enumerate() {
        for (side, v) in [(0u8, a), (1u8, b)] {
            if seen[2 * i + side as usize] == 0 {
                diags.push(GraphDiagnostic::MissingHalfEdge {
                    vertex: names[v.0].clone(),
                    edge: ename.clone(),
                    side,
                });
            }
        }
    }
    let mut uf = UnionFind::new(names.len());
    for (_, a, b) in edges {
        uf.union(a.0, b.0);
    }
    if names.len() > 1 && uf.count() > 1 {
        diags.push(GraphDiagnostic::Disconnected);
    }
    diags
}

/// Faces of a ribbon graph.
///
/// The corner `h` is the sector at `vertex(h)` between `h` and `next(h)`.
/// A face is an orbit of `h -> opposite(next(h))` on corners; the walk
/// crosses the edge of `next(h)` with the face on its left. Faces are listed
/// in order of their least corner and each walk starts at that corner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSet {
    pub faces: Vec<Vec<HalfEdge>>,
    pub genus: usize,
    face_of: Vec<usize>,
}

impl FaceSet {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// The face containing corner `h`.
    pub fn face_of(&self, h: HalfEdge) -> usize {
        self.face_of[h.0]
    }
}

/// A connected graph with a cyclic order of half-edges around each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonGraph {
    vertex_names: Vec<String>,
    edge_names: Vec<String>,
    ends: Vec<[VertexId; 2]>,
    rotation: Vec<Vec<HalfEdge>>,
    // position of each half-edge within its vertex rotation
    slot: Vec<usize>,
}

impl RibbonGraph {
    /// Builds a ribbon graph. Half-edge side 0 of edge `i` must sit at
    /// `edges[i].1`, side 1 at `edges[i].2`.
    pub fn new(
        vertex_names: Vec<String>,
        edges: Vec<(String, VertexId, VertexId)>,
        rotation: Vec<Vec<HalfEdge>>,
    ) -> Result<Self> {
        let n = vertex_names.len();
        if n == 0 {
            return Err(Error::Invalid("a graph needs at least one vertex".into()));
        }
        if rotation.len() != n {
            return Err(Error::Invalid("one rotation per vertex required".into()));
        }
        if edges.iter().any(|(_, a, b)| a.0 >= n || b.0 >= n) {
            return Err(Error::Invalid("edge endpoint out of range".into()));
        }
        if rotation.iter().flatten().any(|h| h.edge().0 >= edges.len()) {
            return Err(Error::Invalid("rotation entry out of range".into()));
        }
        let mut diags = check_structure(&vertex_names, &edges, &rotation);
        let mut set = HashSet::new();
        diags.extend(vertex_names.iter().filter(|v| !set.insert(*v)).map(|v| GraphDiagnostic::DuplicateVertex(v.clone())));
        let mut set = HashSet::new();
        diags.extend(edges.iter().filter(|e| !set.insert(&e.0)).map(|e| GraphDiagnostic::DuplicateEdge(e.0.clone())));
        if !diags.is_empty() {
            return Err(join_diagnostics(diags));
        }
        let mut slot = vec![0; 2 * edges.len()];
        for rot in &rotation {
            for (i, h) in rot.iter().enumerate() {
                slot[h.0] = i;
            }
        }
        Ok(RibbonGraph {
            vertex_names,
            edge_names: edges.iter().map(|e| e.0.clone()).collect(),
            ends: edges.iter().map(|e| [e.1, e.2]).collect(),
            rotation,
            slot,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_names.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count()).map(VertexId)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edge_count()).map(EdgeId)
    }

    pub fn half_edges(&self) -> impl Iterator<Item = HalfEdge> + '_ {
        (0..2 * self.edge_count()).map(HalfEdge)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edge_names[e.0]
    }

    pub fn vertex_id(&self, name: &str) -> Result<VertexId> {
        self.vertex_names
            .iter()
            .position(|n| n == name)
            .map(VertexId)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edge_id(&self, name: &str) -> Result<EdgeId> {
        self.edge_names
            .iter()
            .position(|n| n == name)
            .map(EdgeId)
            .ok_or_else(|| Error::UnknownEdge(name.to_string()))
    }

    /// Endpoints of `e` as (side 0, side 1).
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        (self.ends[e.0][0], self.ends[e.0][1])
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        self.ends[e.0][0] == self.ends[e.0][1]
    }

    pub fn has_loops(&self) -> bool {
        self.edges().any(|e| self.is_loop(e))
    }

    pub fn vertex(&self, h: HalfEdge) -> VertexId {
        self.ends[h.edge().0][h.side() as usize]
    }

    pub fn rotation(&self, v: VertexId) -> &[HalfEdge] {
        &self.rotation[v.0]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation[v.0].len()
    }

    /// The half-edge following `h` in the rotation at its vertex.
    pub fn next(&self, h: HalfEdge) -> HalfEdge {
        let rot = &self.rotation[self.vertex(h).0];
        rot[(self.slot[h.0] + 1) % rot.len()]
    }

    pub fn prev(&self, h: HalfEdge) -> HalfEdge {
        let rot = &self.rotation[self.vertex(h).0];
        rot[(self.slot[h.0] + rot.len() - 1) % rot.len()]
    }

    pub fn faces(&self) -> FaceSet {
        let m = 2 * self.edge_count();
        let mut face_of = vec![usize::MAX; m];
        let mut faces = Vec::new();
        for start in 0..m {
            if face_of[start] != usize::MAX {
                continue;
            }
            let mut walk = Vec::new();
            let mut h = HalfEdge(start);
            while face_of[h.0] == usize::MAX {
                face_of[h.0] = faces.len();
                walk.push(h);
                h = self.next(h).opposite();
            }
            faces.push(walk);
        }
        if m == 0 {
            // the lone vertex sits in a sphere with one face
            faces.push(Vec::new());
        }
        let euler = self.vertex_count() as i64 - self.edge_count() as i64 + faces.len() as i64;
        debug_assert!(euler <= 2 && euler % 2 == 0);
        FaceSet { faces, genus: ((2 - euler) / 2) as usize, face_of }
    }

    pub fn genus(&self) -> usize {
        self.faces().genus
    }

    /// Subgraph connectivity check: true iff `edges` forms a spanning tree.
    pub fn is_spanning_tree(&self, edges: &[EdgeId]) -> bool {
        if edges.len() + 1 != self.vertex_count() {
            return false;
        }
        let mut uf = UnionFind::new(self.vertex_count());
        edges.iter().all(|&e| {
            let (a, b) = self.endpoints(e);
            uf.union(a.0, b.0)
        })
    }

    pub fn to_raw(&self) -> RawRibbonGraph {
        RawRibbonGraph {
            vertices: self
                .vertices()
                .map(|v| {
                    let rot = self.rotation(v).iter().map(|h| (self.edge_name(h.edge()).to_string(), h.side())).collect();
                    (self.vertex_name(v).to_string(), rot)
                })
                .collect(),
            edges: self
                .edges()
                .map(|e| {
                    let (a, b) = self.endpoints(e);
                    (self.edge_name(e).to_string(), self.vertex_name(a).to_string(), self.vertex_name(b).to_string())
                })
                .collect(),
        }
    }
}
