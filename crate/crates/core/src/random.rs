//! Seeded generators for the verification batteries.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::jacobian::EmbeddedGraph;
use crate::ribbon::{ArcEnd, ArcId, EdgeId, HalfEdge, RibbonDigraph, RibbonGraph, VertexId};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A weakly connected Eulerian ribbon digraph with `2..=max_vertices`
/// vertices and at most `max_arcs` arcs, built as a spanning directed cycle
/// plus random closed walks, with random rotations.
pub fn random_eulerian_digraph<R: Rng>(rng: &mut R, max_vertices: usize, max_arcs: usize) -> RibbonDigraph {
    assert!(max_vertices >= 2 && max_arcs >= max_vertices);
    let n = rng.gen_range(2..=max_vertices);
    let target = rng.gen_range(n..=max_arcs);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut arcs: Vec<(usize, usize)> = (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();
    while arcs.len() < target {
        let len = rng.gen_range(1..=(target - arcs.len()).min(n));
        let walk: Vec<usize> = (0..len).map(|_| rng.gen_range(0..n)).collect();
        if len == 1 && rng.gen_bool(0.7) {
            // keep loops rare
            continue;
        }
        for i in 0..len {
            arcs.push((walk[i], walk[(i + 1) % len]));
        }
    }
    let mut rotation: Vec<Vec<ArcEnd>> = vec![Vec::new(); n];
    for (i, &(t, h)) in arcs.iter().enumerate() {
        rotation[t].push(ArcEnd::tail(ArcId(i)));
        rotation[h].push(ArcEnd::head(ArcId(i)));
    }
    for rot in &mut rotation {
        rot.shuffle(rng);
    }
    let names = (0..n).map(|v| format!("v{v}")).collect();
    let arcs = arcs.iter().enumerate().map(|(i, &(t, h))| (format!("a{i}"), VertexId(t), VertexId(h))).collect();
    RibbonDigraph::new(names, arcs, rotation).expect("generated digraph is valid")
}

/// A connected ribbon graph with `vertices` vertices and `edges` edges
/// (`edges >= vertices - 1`): a random tree plus random extra edges, loops
/// only if allowed, and random rotations.
pub fn random_ribbon_graph<R: Rng>(rng: &mut R, vertices: usize, edges: usize, allow_loops: bool) -> RibbonGraph {
    assert!(vertices >= 1 && edges + 1 >= vertices);
    assert!(allow_loops || vertices >= 2 || edges == 0);
    let mut ends = Vec::new();
    for v in 1..vertices {
        ends.push((rng.gen_range(0..v), v));
    }
    while ends.len() < edges {
        let a = rng.gen_range(0..vertices);
        let b = rng.gen_range(0..vertices);
        if a != b || allow_loops {
            ends.push((a, b));
        }
    }
    let mut rotation = vec![Vec::new(); vertices];
    for (i, &(a, b)) in ends.iter().enumerate() {
        rotation[a].push(HalfEdge::new(EdgeId(i), 0));
        rotation[b].push(HalfEdge::new(EdgeId(i), 1));
    }
    let names = (0..vertices).map(|v| format!("v{v}")).collect();
    let edges = ends.iter().enumerate().map(|(i, &(a, b))| (format!("e{}", i + 1), VertexId(a), VertexId(b))).collect();
    let base = RibbonGraph::new(names, edges, rotation).expect("generated graph is valid");
    shuffle_rotations(rng, &base)
}

/// The same graph with every rotation shuffled.
pub fn shuffle_rotations<R: Rng>(rng: &mut R, g: &RibbonGraph) -> RibbonGraph {
    let rotation = g
        .vertices()
        .map(|v| {
            let mut rot = g.rotation(v).to_vec();
            rot.shuffle(rng);
            rot
        })
        .collect();
    let names = g.vertices().map(|v| g.vertex_name(v).to_string()).collect();
    let edges = g
        .edges()
        .map(|e| {
            let (a, b) = g.endpoints(e);
            (g.edge_name(e).to_string(), a, b)
        })
        .collect();
    RibbonGraph::new(names, edges, rotation).expect("reshuffled graph is valid")
}

/// A random ribbon graph with a random reference orientation.
pub fn random_embedded_graph<R: Rng>(rng: &mut R, vertices: usize, edges: usize, allow_loops: bool) -> EmbeddedGraph {
    let g = random_ribbon_graph(rng, vertices, edges, allow_loops);
    let tails = (0..g.edge_count()).map(|_| rng.gen_range(0..2u8)).collect();
    EmbeddedGraph::new(g, tails).expect("generated graph has edges")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_digraphs_are_eulerian() {
        let mut r = rng(7);
        for _ in 0..50 {
            let d = random_eulerian_digraph(&mut r, 6, 12);
            assert!(d.is_eulerian());
            assert!(d.arc_count() <= 12 && d.vertex_count() <= 6);
        }
    }

    #[test]
    fn generated_graphs_are_connected() {
        let mut r = rng(3);
        for _ in 0..50 {
            let g = random_ribbon_graph(&mut r, 4, 6, false);
            assert!(!g.has_loops());
            assert_eq!(g.edge_count(), 6);
            let h = shuffle_rotations(&mut r, &g);
            assert_eq!(h.to_raw().edges, g.to_raw().edges);
        }
    }

    #[test]
    fn same_seed_same_graph() {
        let a = random_eulerian_digraph(&mut rng(11), 5, 10);
        let b = random_eulerian_digraph(&mut rng(11), 5, 10);
        assert_eq!(a, b);
    }
}
