use std::collections::HashMap;
use std::fmt;

use super::{ArcId, EdgeId, HalfEdge, RibbonGraph, UnionFind, VertexId};
use crate::error::{Error, Result};

/// Which end of an arc an entry of a rotation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Tail,
    Head,
}

impl End {
    fn index(self) -> usize {
        match self {
            End::Tail => 0,
            End::Head => 1,
        }
    }
}

impl fmt::Display for End {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            End::Tail => "tail",
            End::Head => "head",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcEnd {
    pub arc: ArcId,
    pub end: End,
}

impl ArcEnd {
    pub fn tail(arc: ArcId) -> Self {
        ArcEnd { arc, end: End::Tail }
    }

    pub fn head(arc: ArcId) -> Self {
        ArcEnd { arc, end: End::Head }
    }
}

/// A violated ribbon-digraph invariant, as reported by [`RawRibbonDigraph::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DigraphDiagnostic {
    DuplicateVertex(String),
    DuplicateArc(String),
    UnknownEndpoint { arc: String, vertex: String },
    UnknownRotationArc { vertex: String, arc: String },
    DuplicateRotationEntry { vertex: String, arc: String, end: End },
    MisplacedArcEnd { vertex: String, arc: String, end: End },
    MissingArcEnd { vertex: String, arc: String, end: End },
    Disconnected,
}

impl fmt::Display for DigraphDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use DigraphDiagnostic::*;
        match self {
            DuplicateVertex(v) => write!(f, "duplicate vertex `{v}`"),
            DuplicateArc(a) => write!(f, "duplicate arc `{a}`"),
            UnknownEndpoint { arc, vertex } => {
                write!(f, "arc `{arc}` refers to unknown vertex `{vertex}`")
            }
            UnknownRotationArc { vertex, arc } => {
                write!(f, "rotation of `{vertex}` refers to unknown arc `{arc}`")
            }
            DuplicateRotationEntry { vertex, arc, end } => {
                write!(f, "duplicate rotation entry: {arc}:{end} at vertex `{vertex}`")
            }
            MisplacedArcEnd { vertex, arc, end } => {
                write!(f, "arc-end misplaced: {arc}:{end} listed at vertex `{vertex}`")
            }
            MissingArcEnd { vertex, arc, end } => {
                write!(f, "arc-end missing: {arc}:{end} not in rotation of vertex `{vertex}`")
            }
            Disconnected => write!(f, "underlying graph is disconnected"),
        }
    }
}

/// Name-level description of a ribbon digraph, as read from a file. Nothing
/// is checked until [`validate`](Self::validate) or [`build`](Self::build).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawRibbonDigraph {
    pub vertices: Vec<(String, Vec<(String, End)>)>,
    pub arcs: Vec<(String, String, String)>,
}

impl RawRibbonDigraph {
    pub fn validate(&self) -> Vec<DigraphDiagnostic> {
        match self.resolve() {
            Ok(parts) => check_structure(&parts.0, &parts.1, &parts.2),
            Err(diags) => diags,
        }
    }

    pub fn build(&self) -> Result<RibbonDigraph> {
        let (names, arcs, rotation) = self.resolve().map_err(join_diagnostics)?;
        RibbonDigraph::new(names, arcs, rotation)
    }

    #[allow(clippy::type_complexity)]
    fn resolve(
        &self,
    ) -> std::result::Result<(Vec<String>, Vec<(String, VertexId, VertexId)>, Vec<Vec<ArcEnd>>), Vec<DigraphDiagnostic>>
    {
        let mut diags = Vec::new();
        let mut vindex = HashMap::new();
        for (i, (name, _)) in self.vertices.iter().enumerate() {
            if vindex.insert(name.as_str(), VertexId(i)).is_some() {
                diags.push(DigraphDiagnostic::DuplicateVertex(name.clone()));
            }
        }
        let mut aindex = HashMap::new();
        let mut arcs = Vec::new();
        for (i, (name, t, h)) in self.arcs.iter().enumerate() {
            if aindex.insert(name.as_str(), ArcId(i)).is_some() {
                diags.push(DigraphDiagnostic::DuplicateArc(name.clone()));
            }
            let mut lookup = |v: &String| match vindex.get(v.as_str()) {
                Some(&id) => id,
                None => {
                    diags.push(DigraphDiagnostic::UnknownEndpoint { arc: name.clone(), vertex: v.clone() });
                    VertexId(0)
                }
            };
            let (t, h) = (lookup(t), lookup(h));
            arcs.push((name.clone(), t, h));
        }
        let mut rotation = Vec::new();
        for (vname, entries) in &self.vertices {
            let mut rot = Vec::new();
            for (aname, end) in entries {
                match aindex.get(aname.as_str()) {
                    Some(&arc) => rot.push(ArcEnd { arc, end: *end }),
                    None => diags.push(DigraphDiagnostic::UnknownRotationArc {
                        vertex: vname.clone(),
                        arc: aname.clone(),
                    }),
                }
            }
            rotation.push(rot);
        }
        if diags.is_empty() {
            Ok((self.vertices.iter().map(|(n, _)| n.clone()).collect(), arcs, rotation))
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
    arcs: &[(String, VertexId, VertexId)],
    rotation: &[Vec<ArcEnd>],
) -> Vec<DigraphDiagnostic> {
    let mut diags = Vec::new();
    let mut seen = vec![[0usize; 2]; arcs.len()];
    for (v, rot) in rotation.iter().enumerate() {
        for e in rot {
            let (aname, t, h) = &arcs[e.arc.0];
            let expected = if e.end == End::Tail { *t } else { *h };
            if expected.0 != v {
                diags.push(DigraphDiagnostic::MisplacedArcEnd {
                    vertex: names[v].clone(),
                    arc: aname.clone(),
                    end: e.end,
                });
                continue;
            }
            seen[e.arc.0][e.end.index()] += 1;
            if seen[e.arc.0][e.end.index()] == 2 {
                diags.push(DigraphDiagnostic::DuplicateRotationEntry {
                    vertex: names[v].clone(),
                    arc: aname.clone(),
                    end: e.end,
                });
            }
        }
    }
    for (i, (aname, t, h)) in arcs.iter().enumerate() {
        for (end, v) in [(End::Tail, t), (End::Head, h)] {
            if seen[i][end.index()] == 0 {
                diags.push(DigraphDiagnostic::MissingArcEnd {
                    vertex: names[v.0].clone(),
                    arc: aname.clone(),
                    end,
                });
            }
        }
    }
    let mut uf = UnionFind::new(names.len());
    for (_, t, h) in arcs {
        uf.union(t.0, h.0);
    }
    if names.len() > 1 && uf.count() > 1 {
        diags.push(DigraphDiagnostic::Disconnected);
    }
    diags
}

/// A digraph with a cyclic order of the arc-ends around every vertex.
///
/// Invariants (checked on construction): every arc's tail-end occurs exactly
/// once in its tail's rotation and its head-end exactly once in its head's
/// rotation, and the underlying graph is connected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonDigraph {
    vertex_names: Vec<String>,
    arc_names: Vec<String>,
    ends: Vec<[VertexId; 2]>,
    rotation: Vec<Vec<ArcEnd>>,
    out_arcs: Vec<Vec<ArcId>>,
    out_pos: Vec<usize>,
    in_degree: Vec<usize>,
}

impl RibbonDigraph {
    pub fn new(
        vertex_names: Vec<String>,
        arcs: Vec<(String, VertexId, VertexId)>,
        rotation: Vec<Vec<ArcEnd>>,
    ) -> Result<Self> {
        if rotation.len() != vertex_names.len() {
            return Err(Error::Invalid("one rotation per vertex required".into()));
        }
        if let Some(&(_, t, h)) = arcs.iter().find(|(_, t, h)| t.0 >= vertex_names.len() || h.0 >= vertex_names.len()) {
            return Err(Error::Invalid(format!("arc endpoint out of range ({t}, {h})")));
        }
        let mut diags = check_structure(&vertex_names, &arcs, &rotation);
        for (kind, names) in [("vertex", &vertex_names), ("arc", &arcs.iter().map(|a| a.0.clone()).collect())] {
            let mut set = std::collections::HashSet::new();
            for n in names.iter() {
                if !set.insert(n) {
                    diags.push(if kind == "vertex" {
                        DigraphDiagnostic::DuplicateVertex(n.clone())
                    } else {
                        DigraphDiagnostic::DuplicateArc(n.clone())
                    });
                }
            }
        }
        if !diags.is_empty() {
            return Err(join_diagnostics(diags));
        }
        let n = vertex_names.len();
        let mut out_arcs = vec![Vec::new(); n];
        let mut out_pos = vec![0; arcs.len()];
        let mut in_degree = vec![0; n];
        for (v, rot) in rotation.iter().enumerate() {
            for e in rot {
                match e.end {
                    End::Tail => {
                        out_pos[e.arc.0] = out_arcs[v].len();
                        out_arcs[v].push(e.arc);
                    }
                    End::Head => in_degree[v] += 1,
                }
            }
        }
        Ok(RibbonDigraph {
            vertex_names,
            arc_names: arcs.iter().map(|a| a.0.clone()).collect(),
            ends: arcs.iter().map(|a| [a.1, a.2]).collect(),
            rotation,
            out_arcs,
            out_pos,
            in_degree,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_names.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count()).map(VertexId)
    }

    pub fn arcs(&self) -> impl Iterator<Item = ArcId> + '_ {
        (0..self.arc_count()).map(ArcId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn arc_name(&self, a: ArcId) -> &str {
        &self.arc_names[a.0]
    }

    pub fn vertex_id(&self, name: &str) -> Result<VertexId> {
        self.vertex_names
            .iter()
            .position(|n| n == name)
            .map(VertexId)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arc_id(&self, name: &str) -> Result<ArcId> {
        self.arc_names
            .iter()
            .position(|n| n == name)
            .map(ArcId)
            .ok_or_else(|| Error::UnknownArc(name.to_string()))
    }

    pub fn tail(&self, a: ArcId) -> VertexId {
        self.ends[a.0][0]
    }

    pub fn head(&self, a: ArcId) -> VertexId {
        self.ends[a.0][1]
    }

    pub fn rotation(&self, v: VertexId) -> &[ArcEnd] {
        &self.rotation[v.0]
    }

    /// Out-arcs of `v` in rotation order.
    pub fn out_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.out_arcs[v.0]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_arcs[v.0].len()
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_degree[v.0]
    }

    /// Position of `a` among the out-arcs of its tail.
    pub fn out_position(&self, a: ArcId) -> usize {
        self.out_pos[a.0]
    }

    /// `nextout(tail(a), a)`: the out-arc following `a` around its tail.
    pub fn next_out(&self, a: ArcId) -> ArcId {
        let outs = &self.out_arcs[self.tail(a).0];
        outs[(self.out_pos[a.0] + 1) % outs.len()]
    }

    /// `prevout(tail(a), a)`.
    pub fn prev_out(&self, a: ArcId) -> ArcId {
        let outs = &self.out_arcs[self.tail(a).0];
        outs[(self.out_pos[a.0] + outs.len() - 1) % outs.len()]
    }

    pub fn is_eulerian(&self) -> bool {
        self.vertices().all(|v| self.in_degree(v) == self.out_degree(v))
    }

    pub fn require_eulerian(&self) -> Result<()> {
        match self.vertices().find(|&v| self.in_degree(v) != self.out_degree(v)) {
            Some(v) => Err(Error::NotEulerian(self.vertex_name(v).to_string())),
            None => Ok(()),
        }
    }

    /// Eulerian with in- and out-arcs alternating around every vertex.
    pub fn is_balanced(&self) -> bool {
        self.is_eulerian()
            && self.rotation.iter().all(|rot| {
                (0..rot.len()).all(|i| rot[i].end != rot[(i + 1) % rot.len()].end)
            })
    }

    /// The ribbon graph obtained by forgetting arc directions. Edge `i` is
    /// arc `i`; side 0 is the tail end and side 1 the head end.
    pub fn underlying(&self) -> RibbonGraph {
        let edges = self
            .arc_names
            .iter()
            .zip(&self.ends)
            .map(|(n, e)| (n.clone(), e[0], e[1]))
            .collect();
        let rotation = self
            .rotation
            .iter()
            .map(|rot| {
                rot.iter()
                    .map(|e| HalfEdge::new(EdgeId(e.arc.0), e.end.index() as u8))
                    .collect()
            })
            .collect();
        RibbonGraph::new(self.vertex_names.clone(), edges, rotation)
            .expect("underlying graph of a valid ribbon digraph is valid")
    }

    pub fn genus(&self) -> usize {
        self.underlying().faces().genus
    }

    pub fn to_raw(&self) -> RawRibbonDigraph {
        RawRibbonDigraph {
            vertices: self
                .vertices()
                .map(|v| {
                    let rot = self.rotation(v).iter().map(|e| (self.arc_name(e.arc).to_string(), e.end)).collect();
                    (self.vertex_name(v).to_string(), rot)
                })
                .collect(),
            arcs: self
                .arcs()
                .map(|a| {
                    (
                        self.arc_name(a).to_string(),
                        self.vertex_name(self.tail(a)).to_string(),
                        self.vertex_name(self.head(a)).to_string(),
                    )
                })
                .collect(),
        }
    }
}
