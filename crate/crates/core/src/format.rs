//! The line-oriented text format.
//!
//! ```text
//! ribbon_digraph
//! vertex <vid> rotation <arcid>:<tail|head> ...
//! arc <arcid> <tail-vid> <head-vid>
//! ```
//!
//! or
//!
//! ```text
//! ribbon_graph
//! vertex <vid> rotation <eid>:<0|1> ...
//! edge <eid> <vid> <vid>
//! orient <eid> <tail-vid> <head-vid>
//! ```
//!
//! Blank lines and `#` comments are ignored. Side `0` of an edge sits at the
//! first vertex of its `edge` line. For a loop, `orient` makes side 0 the
//! tail.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::jacobian::{EmbeddedGraph, Orientation};
use crate::ribbon::{
    ArcId, EdgeId, End, RawRibbonDigraph, RawRibbonGraph, RibbonDigraph, RibbonGraph, VertexId,
};
use crate::rotor::{Arborescence, RotorConfig};
use crate::sandpile::ChipConfig;
use crate::tours::EulerianTour;

/// A parsed file, names unresolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Digraph(RawRibbonDigraph),
    Graph {
        graph: RawRibbonGraph,
        /// `(edge, tail, head)` triples from `orient` lines.
        orientation: Vec<(String, String, String)>,
    },
}

fn strip(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

pub fn parse(text: &str) -> Result<Document> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, strip(l))).filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
    let err = |line: usize, msg: String| Error::Parse { line, msg };
    match header {
        "ribbon_digraph" => {
            let mut raw = RawRibbonDigraph::default();
            for (n, line) in lines {
                let words: Vec<&str> = line.split_whitespace().collect();
                match words.as_slice() {
                    ["vertex", v, "rotation", entries @ ..] => {
                        let rot = entries
                            .iter()
                            .map(|e| {
                                let (a, end) = e.rsplit_once(':').ok_or_else(|| err(n, format!("expected <arc>:<tail|head>, got `{e}`")))?;
                                let end = match end {
                                    "tail" => End::Tail,
                                    "head" => End::Head,
                                    _ => return Err(err(n, format!("arc-end tag must be tail or head, got `{end}`"))),
                                };
                                Ok((a.to_string(), end))
                            })
                            .collect::<Result<_>>()?;
                        raw.vertices.push((v.to_string(), rot));
                    }
                    ["arc", a, t, h] => raw.arcs.push((a.to_string(), t.to_string(), h.to_string())),
                    _ => return Err(err(n, format!("unrecognised ribbon_digraph record `{line}`"))),
                }
            }
            Ok(Document::Digraph(raw))
        }
        "ribbon_graph" => {
            let mut graph = RawRibbonGraph::default();
            let mut orientation = Vec::new();
            for (n, line) in lines {
                let words: Vec<&str> = line.split_whitespace().collect();
                match words.as_slice() {
                    ["vertex", v, "rotation", entries @ ..] => {
                        let rot = entries
                            .iter()
                            .map(|e| {
                                let (a, side) = e.rsplit_once(':').ok_or_else(|| err(n, format!("expected <edge>:<0|1>, got `{e}`")))?;
                                let side = match side {
                                    "0" => 0,
                                    "1" => 1,
                                    _ => return Err(err(n, format!("side tag must be 0 or 1, got `{side}`"))),
                                };
                                Ok((a.to_string(), side))
                            })
                            .collect::<Result<_>>()?;
                        graph.vertices.push((v.to_string(), rot));
                    }
                    ["edge", e, a, b] => graph.edges.push((e.to_string(), a.to_string(), b.to_string())),
                    ["orient", e, t, h] => orientation.push((e.to_string(), t.to_string(), h.to_string())),
                    _ => return Err(err(n, format!("unrecognised ribbon_graph record `{line}`"))),
                }
            }
            Ok(Document::Graph { graph, orientation })
        }
        other => Err(err(hline, format!("expected `ribbon_digraph` or `ribbon_graph`, got `{other}`"))),
    }
}

pub fn parse_digraph(text: &str) -> Result<RibbonDigraph> {
    match parse(text)? {
        Document::Digraph(raw) => raw.build(),
        Document::Graph { .. } => Err(Error::Invalid("expected a ribbon_digraph".into())),
    }
}

pub fn parse_graph(text: &str) -> Result<RibbonGraph> {
    match parse(text)? {
        Document::Graph { graph, .. } => graph.build(),
        Document::Digraph(_) => Err(Error::Invalid("expected a ribbon_graph".into())),
    }
}

/// A ribbon graph with its reference orientation. Edges without an `orient`
/// line are directed from their side-0 end.
pub fn parse_embedded(text: &str) -> Result<EmbeddedGraph> {
    match parse(text)? {
        Document::Graph { graph, orientation } => {
            let g = graph.build()?;
            let tails = resolve_orientation(&g, &orientation)?;
            EmbeddedGraph::new(g, tails)
        }
        Document::Digraph(_) => Err(Error::Invalid("expected a ribbon_graph".into())),
    }
}

pub fn resolve_orientation(g: &RibbonGraph, orient: &[(String, String, String)]) -> Result<Vec<u8>> {
    let mut tails = vec![0u8; g.edge_count()];
    for (e, t, h) in orient {
        let id = g.edge_id(e)?;
        let (a, b) = g.endpoints(id);
        let (t, h) = (g.vertex_id(t)?, g.vertex_id(h)?);
        tails[id.0] = if (t, h) == (a, b) {
            0
        } else if (t, h) == (b, a) {
            1
        } else {
            return Err(Error::Invalid(format!("orientation of `{e}` does not match its endpoints")));
        };
    }
    Ok(tails)
}

pub fn write_digraph(d: &RibbonDigraph) -> String {
    let raw = d.to_raw();
    let mut s = String::from("ribbon_digraph\n");
    for (v, rot) in &raw.vertices {
        let _ = write!(s, "vertex {v} rotation");
        for (a, end) in rot {
            let _ = write!(s, " {a}:{end}");
        }
        s.push('\n');
    }
    for (a, t, h) in &raw.arcs {
        let _ = writeln!(s, "arc {a} {t} {h}");
    }
    s
}

pub fn write_graph(g: &RibbonGraph) -> String {
    let raw = g.to_raw();
    let mut s = String::from("ribbon_graph\n");
    for (v, rot) in &raw.vertices {
        let _ = write!(s, "vertex {v} rotation");
        for (e, side) in rot {
            let _ = write!(s, " {e}:{side}");
        }
        s.push('\n');
    }
    for (e, a, b) in &raw.edges {
        let _ = writeln!(s, "edge {e} {a} {b}");
    }
    s
}

pub fn write_embedded(eg: &EmbeddedGraph) -> String {
    let g = eg.graph();
    let mut s = write_graph(g);
    for e in g.edges() {
        let (t, h) = eg.endpoints(e);
        let _ = writeln!(s, "orient {} {} {}", g.edge_name(e), g.vertex_name(t), g.vertex_name(h));
    }
    s
}

/// Splits a list given as `a,b c` into its items.
pub fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(|c: char| c == ',' || c.is_whitespace()).filter(|w| !w.is_empty())
}

/// Reads `name=value` assignments; unnamed vertices get zero chips. The
/// `names` closure maps a name to its index.
pub fn parse_chips(s: &str, n: usize, index: impl Fn(&str) -> Result<usize>) -> Result<ChipConfig> {
    let mut x = ChipConfig::zero(n);
    for item in split_list(s.strip_prefix("chips").unwrap_or(s)) {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| Error::Parse { line: 1, msg: format!("expected <vertex>=<int>, got `{item}`") })?;
        let value: i64 = value
            .parse()
            .map_err(|_| Error::Parse { line: 1, msg: format!("`{value}` is not an integer") })?;
        x.0[index(name)?] += value;
    }
    Ok(x)
}

pub fn write_chips(names: impl Fn(usize) -> String, x: &ChipConfig) -> String {
    let items: Vec<String> = x.0.iter().enumerate().map(|(i, v)| format!("{}={v}", names(i))).collect();
    format!("chips {}", items.join(" "))
}

pub fn parse_tour(d: &RibbonDigraph, s: &str) -> Result<EulerianTour> {
    let arcs = split_list(s.strip_prefix("tour").unwrap_or(s)).map(|a| d.arc_id(a)).collect::<Result<Vec<_>>>()?;
    EulerianTour::new(d, arcs)
}

pub fn write_tour(d: &RibbonDigraph, t: &EulerianTour) -> String {
    let names: Vec<&str> = t.arcs().iter().map(|&a| d.arc_name(a)).collect();
    format!("tour {}", names.join(" "))
}

pub fn parse_edges(g: &RibbonGraph, s: &str, prefix: &str) -> Result<Vec<EdgeId>> {
    let mut edges = split_list(s.strip_prefix(prefix).unwrap_or(s)).map(|e| g.edge_id(e)).collect::<Result<Vec<_>>>()?;
    edges.sort();
    Ok(edges)
}

pub fn write_edges(g: &RibbonGraph, prefix: &str, edges: &[EdgeId]) -> String {
    let mut s = String::from(prefix);
    for &e in edges {
        s.push(' ');
        s.push_str(g.edge_name(e));
    }
    s
}

pub fn write_rotors(d: &RibbonDigraph, r: &RotorConfig) -> String {
    let mut s = String::from("rotors");
    for v in d.vertices() {
        if let Some(a) = r.get(v) {
            let _ = write!(s, " {}={}", d.vertex_name(v), d.arc_name(a));
        }
    }
    s
}

pub fn parse_rotors(d: &RibbonDigraph, s: &str) -> Result<RotorConfig> {
    let mut rotors = vec![None; d.vertex_count()];
    for item in split_list(s.strip_prefix("rotors").unwrap_or(s)) {
        let (v, a) = item
            .split_once('=')
            .ok_or_else(|| Error::Parse { line: 1, msg: format!("expected <vertex>=<arc>, got `{item}`") })?;
        rotors[d.vertex_id(v)?.0] = Some(d.arc_id(a)?);
    }
    RotorConfig::new(d, rotors)
}

/// Reads `[arb] root=<vid> <vid>=<arcid> ...`.
pub fn parse_arborescence(d: &RibbonDigraph, s: &str) -> Result<Arborescence> {
    let mut root = None;
    let mut arcs = Vec::new();
    for item in split_list(s.strip_prefix("arb").unwrap_or(s)) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Parse { line: 1, msg: format!("expected <key>=<value>, got `{item}`") })?;
        if k == "root" {
            root = Some(d.vertex_id(v)?);
        } else {
            let a = d.arc_id(v)?;
            if d.tail(a) != d.vertex_id(k)? {
                return Err(Error::NotArborescence(format!("arc `{v}` does not leave `{k}`")));
            }
            arcs.push(a);
        }
    }
    let root = root.ok_or_else(|| Error::Parse { line: 1, msg: "missing root=<vertex>".into() })?;
    Arborescence::new(d, root, &arcs)
}

pub fn write_arborescence(d: &RibbonDigraph, t: &Arborescence) -> String {
    let mut s = format!("arb root={}", d.vertex_name(t.root()));
    for v in d.vertices() {
        if let Some(a) = t.arc(v) {
            let _ = write!(s, " {}={}", d.vertex_name(v), d.arc_name(a));
        }
    }
    s
}

pub fn write_orientation(g: &RibbonGraph, o: &Orientation) -> String {
    let mut s = String::from("orientation");
    for e in g.edges() {
        let sign = if o.0[e.0] > 0 { "" } else { "-" };
        let _ = write!(s, " {}={sign}1/2", g.edge_name(e));
    }
    s
}

pub fn write_invariants(factors: &[num_bigint::BigInt]) -> String {
    let mut s = String::from("invariants");
    for d in factors {
        let _ = write!(s, " {d}");
    }
    s
}

/// Looks up a vertex of `d`, accepting an index-free name.
pub fn vertex_index(d: &RibbonDigraph) -> impl Fn(&str) -> Result<usize> + '_ {
    move |name| d.vertex_id(name).map(|v: VertexId| v.0)
}

pub fn arc_names(d: &RibbonDigraph, arcs: &[ArcId]) -> Vec<String> {
    arcs.iter().map(|&a| d.arc_name(a).to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn round_trip_fixtures() {
        let d = fixtures::fig1();
        assert_eq!(parse_digraph(&write_digraph(&d)).unwrap(), d);
        let t = fixtures::torus();
        assert_eq!(parse_embedded(&write_embedded(&t)).unwrap(), t);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "# header comment\nribbon_digraph\nvertex a rotation x:tail\narc x a\n";
        assert_eq!(parse(text).unwrap_err(), Error::Parse { line: 4, msg: "unrecognised ribbon_digraph record `arc x a`".into() });
        let text = "ribbon_graph\nvertex a rotation e:2\n";
        assert!(matches!(parse(text), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse("graph\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn missing_arc_end_is_reported() {
        let mut raw = match parse(fixtures::FIG1).unwrap() {
            Document::Digraph(raw) => raw,
            _ => unreachable!(),
        };
        assert!(raw.validate().is_empty());
        let rot = &mut raw.vertices.iter_mut().find(|(v, _)| v == "1").unwrap().1;
        rot.retain(|(a, end)| !(a == "e1" && *end == End::Tail));
        let diags = raw.validate();
        assert_eq!(diags.len(), 1);
        assert!(diags[0].to_string().starts_with("arc-end missing"));
    }

    #[test]
    fn chips_lists() {
        let d = fixtures::c3();
        let x = parse_chips("0=1, 1=-1", 3, vertex_index(&d)).unwrap();
        assert_eq!(x.0, vec![1, -1, 0]);
        assert_eq!(write_chips(|i| d.vertex_name(VertexId(i)).to_string(), &x), "chips 0=1 1=-1 2=0");
    }
}
