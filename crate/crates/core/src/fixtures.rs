//! The bundled example graphs.

use crate::format::{parse_digraph, parse_embedded, parse_graph};
use crate::jacobian::EmbeddedGraph;
use crate::ribbon::{RibbonDigraph, RibbonGraph};

/// A directed triangle.
pub const C3: &str = include_str!("../fixtures/c3.ribbon");
/// A planar Eulerian ribbon digraph on four vertices and nine arcs.
pub const FIG1: &str = include_str!("../fixtures/fig1.ribbon");
/// `K4` with a planar rotation system.
pub const K4P: &str = include_str!("../fixtures/k4p.ribbon");
/// Two vertices, two parallel edges and two loops, embedded in the torus.
pub const TORUS: &str = include_str!("../fixtures/torus.ribbon");

/// Fixture text by name, with or without the `.ribbon` suffix.
pub fn by_name(name: &str) -> Option<&'static str> {
    match name.strip_suffix(".ribbon").unwrap_or(name) {
        "c3" => Some(C3),
        "fig1" => Some(FIG1),
        "k4p" => Some(K4P),
        "torus" => Some(TORUS),
        _ => None,
    }
}

pub fn c3() -> RibbonDigraph {
    parse_digraph(C3).expect("bundled fixture parses")
}

pub fn fig1() -> RibbonDigraph {
    parse_digraph(FIG1).expect("bundled fixture parses")
}

pub fn k4p() -> RibbonGraph {
    parse_graph(K4P).expect("bundled fixture parses")
}

pub fn torus() -> EmbeddedGraph {
    parse_embedded(TORUS).expect("bundled fixture parses")
}
