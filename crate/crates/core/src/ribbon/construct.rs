//! Derived ribbon structures: the bidirected double, the dual and the medial
//! digraph.

use super::{ArcEnd, ArcId, HalfEdge, RibbonDigraph, RibbonGraph, VertexId};

/// The bidirected double. Edge `e` yields arc `2e` (named `e+`, from its
/// side-0 end to its side-1 end) and arc `2e + 1` (named `e-`, reversed).
/// In the rotation, each half-edge is replaced by the out-arc leaving there
/// followed by the in-arc entering there.
pub fn bidirect(g: &RibbonGraph) -> RibbonDigraph {
    let mut arcs = Vec::with_capacity(2 * g.edge_count());
    for e in g.edges() {
        let (a, b) = g.endpoints(e);
        let name = g.edge_name(e);
        arcs.push((format!("{name}+"), a, b));
        arcs.push((format!("{name}-"), b, a));
    }
    let rotation = g
        .vertices()
        .map(|v| {
            g.rotation(v)
                .iter()
                .flat_map(|h| {
                    let out = ArcId(2 * h.edge().0 + h.side() as usize);
                    let inn = ArcId(2 * h.edge().0 + 1 - h.side() as usize);
                    [ArcEnd::tail(out), ArcEnd::head(inn)]
                })
                .collect()
        })
        .collect();
    let names = g.vertices().map(|v| g.vertex_name(v).to_string()).collect();
    RibbonDigraph::new(names, arcs, rotation).expect("bidirected double is a valid ribbon digraph")
}

/// The dual ribbon graph. Vertex `i` is face `i` of [`RibbonGraph::faces`]
/// (named `f{i}`); edge `i` is `e*` for edge `i` of `g`, with side `s` lying
/// in the face of corner `(e, s)`. The rotation at a face lists its corners
/// in reverse walk order.
pub fn dual(g: &RibbonGraph) -> RibbonGraph {
    let faces = g.faces();
    let names = (0..faces.len()).map(|i| format!("f{i}")).collect();
    let edges = g
        .edges()
        .map(|e| {
            let f0 = faces.face_of(HalfEdge::new(e, 0));
            let f1 = faces.face_of(HalfEdge::new(e, 1));
            (format!("{}*", g.edge_name(e)), VertexId(f0), VertexId(f1))
        })
        .collect();
    let rotation = faces.faces.iter().map(|walk| walk.iter().rev().copied().collect()).collect();
    RibbonGraph::new(names, edges, rotation).expect("dual of a valid ribbon graph is valid")
}

/// The medial digraph. Node `i` is edge `i` of `g` (same name). Arc `h`
/// (named `{edge}.{side}`) runs from `edge(h)` to `edge(next(h))`, turning
/// around `vertex(h)`. At a node the rotation is
/// `[in from prev(h0), out along h1, in from prev(h1), out along h0]`.
pub fn medial(g: &RibbonGraph) -> RibbonDigraph {
    let arcs = g
        .half_edges()
        .map(|h| {
            let name = format!("{}.{}", g.edge_name(h.edge()), h.side());
            (name, VertexId(h.edge().0), VertexId(g.next(h).edge().0))
        })
        .collect();
    let rotation = g
        .edges()
        .map(|e| {
            let h0 = HalfEdge::new(e, 0);
            let h1 = HalfEdge::new(e, 1);
            vec![
                ArcEnd::head(ArcId(g.prev(h0).0)),
                ArcEnd::tail(ArcId(h1.0)),
                ArcEnd::head(ArcId(g.prev(h1).0)),
                ArcEnd::tail(ArcId(h0.0)),
            ]
        })
        .collect();
    let names = g.edges().map(|e| g.edge_name(e).to_string()).collect();
    RibbonDigraph::new(names, arcs, rotation).expect("medial digraph is a valid ribbon digraph")
}
